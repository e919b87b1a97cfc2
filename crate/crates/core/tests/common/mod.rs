#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use soliton_forge::algebra::ScalarExpr;
use soliton_forge::frame::FrameSpec;
use soliton_forge::spec_file::parse_spec;
use soliton_forge::tensor::{Matrix, Tensor3, VectorField};

pub const FIXTURES: [&str; 4] = ["lps_example", "minkowski4", "heisenberg3", "so3_frame"];

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.spec"))
}

pub fn fixture(name: &str) -> FrameSpec {
    parse_spec(&fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn q(n: i64, d: i64) -> ScalarExpr {
    ScalarExpr::rational(n, d)
}

fn small(rng: &mut ChaCha8Rng) -> ScalarExpr {
    q(rng.gen_range(-3..=3), rng.gen_range(1..=3))
}

/// Structure constants `c[k][i][j]` of a Lie algebra, given by its
/// non-zero brackets `(i, j, [(k, coeff)])` with `i < j`.
fn from_brackets(n: usize, brackets: &[(usize, usize, Vec<(usize, ScalarExpr)>)]) -> Tensor3 {
    let mut t = Tensor3::zeros(n);
    for (i, j, terms) in brackets {
        for (k, c) in terms {
            t.set(*k, *i, *j, c.clone());
            t.set(*k, *j, *i, -c.clone());
        }
    }
    t
}

/// A few Lie algebras of dimension `n`, indexed by `which`.
pub fn named_algebra(n: usize, which: usize) -> Tensor3 {
    let one = ScalarExpr::one;
    let two = || ScalarExpr::int(2);
    match (n, which % 4) {
        (_, 0) => Tensor3::zeros(n),
        (2, _) => from_brackets(2, &[(0, 1, vec![(1, one())])]),
        (3, 1) => from_brackets(3, &[(0, 1, vec![(2, one())])]),
        (3, 2) => from_brackets(
            3,
            &[(0, 1, vec![(2, one())]), (1, 2, vec![(0, one())]), (0, 2, vec![(1, -one())])],
        ),
        (3, _) => from_brackets(
            3,
            &[(0, 1, vec![(1, two())]), (0, 2, vec![(2, -two())]), (1, 2, vec![(0, one())])],
        ),
        (4, 1) => from_brackets(4, &[(0, 1, vec![(2, one())])]),
        (4, 2) => from_brackets(4, &[(0, 1, vec![(1, one())]), (2, 3, vec![(3, one())])]),
        (4, _) => from_brackets(
            4,
            &[(0, 1, vec![(2, one())]), (1, 2, vec![(0, one())]), (0, 2, vec![(1, -one())])],
        ),
        _ => Tensor3::zeros(n),
    }
}

/// `R^{n-1} ⋊ R`: `[f_n, f_i] = Σ_k M_ki f_k` for `i < n`, any matrix `M`.
pub fn semidirect(n: usize, rng: &mut ChaCha8Rng) -> Tensor3 {
    let mut t = Tensor3::zeros(n);
    let last = n - 1;
    for i in 0..last {
        for k in 0..last {
            let c = if rng.gen_bool(0.5) { small(rng) } else { ScalarExpr::zero() };
            t.set(k, last, i, c.clone());
            t.set(k, i, last, -c);
        }
    }
    t
}

/// Random invertible rational matrix.
pub fn invertible(n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let m = Matrix::from_fn(n, |i, j| {
            if i == j {
                q(rng.gen_range(1..=3), 1) * q(if rng.gen_bool(0.5) { 1 } else { -1 }, 1)
            } else if rng.gen_bool(0.4) {
                small(rng)
            } else {
                ScalarExpr::zero()
            }
        });
        if !m.determinant().is_zero() {
            return m;
        }
    }
}

/// Structure constants in the basis `e'_i = Σ_a P_ai e_a`.
pub fn change_basis(c: &Tensor3, p: &Matrix) -> Tensor3 {
    let n = c.dim();
    let pinv = p.inverse().expect("invertible");
    Tensor3::from_fn(n, |k, i, j| {
        let mut s = ScalarExpr::zero();
        for a in 0..n {
            for b in 0..n {
                let pab = p.get(a, i) * p.get(b, j);
                if pab.is_zero() {
                    continue;
                }
                for m in 0..n {
                    let cm = c.get(m, a, b);
                    if !cm.is_zero() {
                        s = s + &(pinv.get(k, m) * cm) * &pab;
                    }
                }
            }
        }
        s
    })
}

/// Random non-degenerate symmetric rational metric `L D Lᵀ`.
pub fn random_metric(n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let l = Matrix::from_fn(n, |i, j| {
        if i == j {
            ScalarExpr::one()
        } else if i > j && rng.gen_bool(0.5) {
            small(rng)
        } else {
            ScalarExpr::zero()
        }
    });
    let d = Matrix::diagonal(
        &(0..n)
            .map(|_| {
                let v = q(rng.gen_range(1..=4), rng.gen_range(1..=3));
                if rng.gen_bool(0.3) {
                    -v
                } else {
                    v
                }
            })
            .collect::<Vec<_>>(),
    );
    l.mul(&d).mul(&l.transpose())
}

pub fn random_spec(rng: &mut ChaCha8Rng) -> FrameSpec {
    let n = rng.gen_range(2..=4);
    let base = if rng.gen_bool(0.5) {
        semidirect(n, rng)
    } else {
        named_algebra(n, rng.gen_range(0..4))
    };
    let structure = change_basis(&base, &invertible(n, rng));
    let metric = random_metric(n, rng);
    let phi = Matrix::diagonal(
        &(0..n)
            .map(|i| if i + 1 < n { ScalarExpr::one() } else { ScalarExpr::zero() })
            .collect::<Vec<_>>(),
    );
    FrameSpec::new(metric, structure, phi, VectorField::basis(n, n - 1), BTreeSet::new()).unwrap()
}

/// Solves `a x = b` over the rationals; `None` unless the solution is unique.
pub fn solve_unique(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let cols = a.first().map_or(0, Vec::len);
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        b.swap(r, p);
        let inv = BigRational::from_integer(BigInt::from(1)) / a[r][c].clone();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        b[r] = &b[r] * &inv;
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let d = &f * &a[r][j];
                    a[i][j] = &a[i][j] - &d;
                }
                let d = &f * &b[r];
                b[i] = &b[i] - &d;
            }
        }
        pivots.push(c);
        r += 1;
    }
    if pivots.len() < cols || (r..rows).any(|i| !b[i].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (row, c) in pivots.into_iter().enumerate() {
        x[c] = b[row].clone();
    }
    Some(x)
}

pub fn numeric(e: &ScalarExpr) -> BigRational {
    e.as_rational().expect("numeric spec")
}

/// Γ from the torsion-free and metric-compatible conditions, solved as a
/// linear system in the n³ unknowns `Γ^k_ij`.
pub fn brute_force_connection(spec: &FrameSpec) -> Vec<BigRational> {
    let n = spec.dim();
    let idx = |k: usize, i: usize, j: usize| (k * n + i) * n + j;
    let unknowns = n * n * n;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                // ∇_i f_j - ∇_j f_i = [f_i, f_j]
                let mut row = vec![BigRational::zero(); unknowns];
                row[idx(k, i, j)] += BigRational::from_integer(1.into());
                row[idx(k, j, i)] -= BigRational::from_integer(1.into());
                rows.push(row);
                rhs.push(numeric(spec.structure().get(k, i, j)));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                // g(∇_i f_j, f_l) + g(f_j, ∇_i f_l) = 0 for a constant metric
                let mut row = vec![BigRational::zero(); unknowns];
                for k in 0..n {
                    row[idx(k, i, j)] += numeric(spec.metric().get(k, l));
                    row[idx(k, i, l)] += numeric(spec.metric().get(j, k));
                }
                rows.push(row);
                rhs.push(BigRational::zero());
            }
        }
    }
    solve_unique(rows, rhs).expect("Levi-Civita connection is unique")
}
