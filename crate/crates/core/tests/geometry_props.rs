mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{
    brute_force_connection, change_basis, fixture, invertible, named_algebra, numeric, random_metric, random_spec,
    FIXTURES,
};
use soliton_forge::connection::{koszul_connection, Connection};
use soliton_forge::curvature::{ricci_orthonormal, CurvatureBundle};
use soliton_forge::frame::{CheckStatus, FrameSpec};
use soliton_forge::tensor::{Matrix, VectorField};

const RANDOM_SPECS: u64 = 120;

fn check_identities(spec: &FrameSpec, label: &str) -> (Connection, CurvatureBundle) {
    assert!(spec.jacobi_violations().is_empty(), "{label}: Jacobi");
    let conn = koszul_connection(spec).unwrap();
    assert!(conn.torsion(spec).is_zero(), "{label}: torsion");
    assert!(conn.nonmetricity(spec).is_zero(), "{label}: metric compatibility");
    let curv = CurvatureBundle::compute(spec, &conn);
    assert!(curv.antisymmetry_defects().is_empty(), "{label}: R(X,Y) = -R(Y,X)");
    assert!(curv.bianchi_defects().is_empty(), "{label}: first Bianchi");
    assert!(curv.lowered_symmetry_defects().is_empty(), "{label}: lowered skew and pair symmetry");
    assert!(curv.ricci_asymmetry().is_empty(), "{label}: Ricci symmetry");
    if let Some(s) = ricci_orthonormal(spec, &curv.lowered) {
        assert_eq!(s, curv.ricci, "{label}: Ricci by orthonormal contraction");
    }
    (conn, curv)
}

#[test]
fn fixtures_satisfy_identities() {
    for name in FIXTURES {
        check_identities(&fixture(name), name);
    }
    let (_, flat) = check_identities(&fixture("minkowski4"), "minkowski4");
    assert!(flat.is_flat());
    assert!(flat.ricci.is_zero() && flat.r_signed.is_zero() && flat.r_unsigned.is_zero());
}

#[test]
fn random_specs_satisfy_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for seed in 0..RANDOM_SPECS {
        let spec = random_spec(&mut rng);
        let report = spec.validate();
        assert_eq!(report.check("jacobi").unwrap().status, CheckStatus::Pass, "spec {seed}");
        check_identities(&spec, &format!("random spec {seed}"));
    }
}

#[test]
fn abelian_frames_are_flat() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 2..=4 {
        for _ in 0..5 {
            let structure = change_basis(&named_algebra(n, 0), &invertible(n, &mut rng));
            let spec = FrameSpec::new(
                random_metric(n, &mut rng),
                structure,
                Matrix::identity(n),
                VectorField::basis(n, 0),
                Default::default(),
            )
            .unwrap();
            let (conn, curv) = check_identities(&spec, "abelian");
            assert!(conn.gamma().is_zero());
            assert!(curv.is_flat() && curv.riem.is_zero() && curv.ricci.is_zero());
        }
    }
}

#[test]
fn koszul_matches_linear_system() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0_c1e);
    let mut specs: Vec<FrameSpec> = vec![fixture("heisenberg3"), fixture("so3_frame")];
    while specs.len() < 40 {
        let s = random_spec(&mut rng);
        if s.dim() <= 3 {
            specs.push(s);
        }
    }
    for (t, spec) in specs.iter().enumerate() {
        let n = spec.dim();
        let conn = koszul_connection(spec).unwrap();
        let oracle = brute_force_connection(spec);
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(
                        numeric(conn.coefficient(k, i, j)),
                        oracle[(k * n + i) * n + j],
                        "spec {t}: Γ^{k}_{i}{j}"
                    );
                }
            }
        }
    }
}
