//! The Lorentzian para-Sasakian structure identities, evaluated on the frame.

use std::collections::BTreeSet;

use crate::algebra::{AlgebraError, Bindings, PolyCondition, ScalarExpr, Sym};
use crate::connection::{covariant_derivative_eta, Connection};
use crate::curvature::CurvatureBundle;
use crate::frame::FrameSpec;
use crate::tensor::VectorField;

use super::{classify, Residual, Verdict};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomRecord {
    pub id: &'static str,
    pub statement: &'static str,
    pub status: Verdict,
    pub residuals: Vec<Residual>,
    pub condition: Option<PolyCondition>,
    pub notes: Vec<String>,
}

impl AxiomRecord {
    fn new(id: &'static str, statement: &'static str, residuals: Vec<Residual>, nonzero: &BTreeSet<Sym>) -> Self {
        let values: Vec<ScalarExpr> = residuals.iter().map(|r| r.value.clone()).collect();
        let (status, condition) = classify(&values, nonzero);
        AxiomRecord {
            id,
            statement,
            status,
            residuals,
            condition,
            notes: Vec::new(),
        }
    }

    fn note(mut self, n: impl Into<String>) -> Self {
        self.notes.push(n.into());
        self
    }

    /// Re-evaluates the record after binding symbols in its residuals.
    pub fn substitute(&self, b: &Bindings, nonzero: &BTreeSet<Sym>) -> Result<AxiomRecord, AlgebraError> {
        let mut residuals = Vec::new();
        for r in &self.residuals {
            let value = r.value.substitute(b)?;
            if !value.is_zero() {
                residuals.push(Residual { at: r.at.clone(), value });
            }
        }
        let mut out = AxiomRecord::new(self.id, self.statement, residuals, nonzero);
        out.notes = self.notes.clone();
        Ok(out)
    }
}

#[derive(Default)]
struct Residuals(Vec<Residual>);

impl Residuals {
    fn push(&mut self, at: &[usize], value: ScalarExpr) {
        if !value.is_zero() {
            self.0.push(Residual {
                at: at.iter().map(|i| i + 1).collect(),
                value,
            });
        }
    }

    fn push_vector(&mut self, at: &[usize], v: &VectorField) {
        for (l, c) in v.0.iter().enumerate() {
            let mut idx = at.to_vec();
            idx.push(l);
            self.push(&idx, c.clone());
        }
    }
}

/// `R(X,Y)Z` for frame-constant arguments.
fn curvature_apply(curv: &CurvatureBundle, x: &VectorField, y: &VectorField, z: &VectorField) -> VectorField {
    let n = curv.dim();
    let mut out = VectorField::zero(n);
    for i in 0..n {
        if x.0[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if y.0[j].is_zero() {
                continue;
            }
            for k in 0..n {
                if z.0[k].is_zero() {
                    continue;
                }
                let w = &(&x.0[i] * &y.0[j]) * &z.0[k];
                for l in 0..n {
                    let r = curv.riem.get(l, k, i, j);
                    if !r.is_zero() {
                        out.0[l] = &out.0[l] + &(&w * r);
                    }
                }
            }
        }
    }
    out
}

/// One record per structure identity; residuals are `lhs - rhs` on frame
/// vectors.
pub fn lps_axiom_battery(spec: &FrameSpec, conn: &Connection, curv: &CurvatureBundle) -> Vec<AxiomRecord> {
    let n = spec.dim();
    let nz = spec.assume_nonzero();
    let xi = spec.xi();
    let eta = spec.eta();
    let f = |i: usize| spec.basis(i);
    let phi_f: Vec<VectorField> = (0..n).map(|i| spec.apply_phi(&f(i))).collect();
    let n1 = ScalarExpr::int(n as i64 - 1);
    let mut out = Vec::new();

    let mut r = Residuals::default();
    r.push_vector(&[], &spec.apply_phi(xi));
    out.push(AxiomRecord::new("phi-xi", "phi xi = 0", r.0, nz));

    let mut r = Residuals::default();
    for i in 0..n {
        r.push(&[i], eta.apply(&phi_f[i]));
    }
    out.push(AxiomRecord::new("eta-phi", "eta(phi X) = 0", r.0, nz));

    let mut r = Residuals::default();
    r.push(&[], &eta.apply(xi) + &ScalarExpr::one());
    out.push(AxiomRecord::new("eta-xi", "eta(xi) = -1", r.0, nz));

    let mut r = Residuals::default();
    for i in 0..n {
        let lhs = spec.apply_phi(&phi_f[i]);
        let rhs = f(i).add(&xi.scale(&eta.0[i]));
        r.push_vector(&[i], &lhs.sub(&rhs));
    }
    out.push(AxiomRecord::new("phi-squared", "phi^2 X = X + eta(X) xi", r.0, nz));

    let mut r = Residuals::default();
    for i in 0..n {
        for j in 0..n {
            let lhs = spec.g(&phi_f[i], &phi_f[j]);
            let rhs = spec.metric().get(i, j) + &(&eta.0[i] * &eta.0[j]);
            r.push(&[i, j], lhs - rhs);
        }
    }
    out.push(
        AxiomRecord::new("phi-metric", "g(phi X, phi Y) = g(X, Y) + eta(X) eta(Y)", r.0, nz).note(
            "with eta(xi) = -1 the compatible sign is +eta(X)eta(Y); the minus sign variant cannot hold at X = Y = xi",
        ),
    );

    let mut r = Residuals::default();
    for i in 0..n {
        for j in 0..n {
            r.push(&[i, j], spec.g(&f(i), &phi_f[j]) - spec.g(&phi_f[i], &f(j)));
        }
    }
    out.push(
        AxiomRecord::new("phi-symmetric", "g(X, phi Y) = g(phi X, Y)", r.0, nz)
            .note("phi is g-symmetric in the Lorentzian para-contact setting; skew-symmetry would force phi = 0 on the example"),
    );

    let mut r = Residuals::default();
    for i in 0..n {
        let lhs = conn.covariant_derivative(&f(i), xi);
        r.push_vector(&[i], &lhs.sub(&phi_f[i]));
    }
    out.push(AxiomRecord::new("nabla-xi", "nabla_X xi = phi X", r.0, nz));

    let lie = spec.lie_derivative_metric(xi);
    let mut r = Residuals::default();
    for ((i, j), v) in lie.entries() {
        r.push(&[i, j], v.clone());
    }
    let mut killing = AxiomRecord::new("killing-xi", "(L_xi g)(X, Y) = 0", r.0, nz);
    if killing.status != Verdict::Holds {
        killing = killing.note("xi is not a Killing field away from the reported condition");
    }
    out.push(killing);

    let rank = spec.phi().generic_rank();
    let mut r = Residuals::default();
    r.push(&[], ScalarExpr::int(rank as i64 - (n as i64 - 1)));
    out.push(AxiomRecord::new("phi-rank", "rank phi = n - 1", r.0, nz).note(format!("generic rank of phi is {rank}")));

    let deta = covariant_derivative_eta(spec, conn);
    let mut r = Residuals::default();
    for i in 0..n {
        let nabla_xi = conn.covariant_derivative(&f(i), xi);
        for j in 0..n {
            r.push(&[i, j], deta.get(i, j) - &spec.g(&f(j), &nabla_xi));
        }
    }
    out.push(AxiomRecord::new("nabla-eta-compat", "(nabla_X eta)(Y) = g(Y, nabla_X xi)", r.0, nz));

    let mut r = Residuals::default();
    for i in 0..n {
        for j in 0..n {
            r.push(&[i, j], deta.get(i, j) - &spec.g(&f(j), &phi_f[i]));
        }
    }
    out.push(AxiomRecord::new("nabla-eta-phi", "(nabla_X eta)(Y) = g(Y, phi X)", r.0, nz));

    let g = spec.metric();
    let mut r = Residuals::default();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let lhs = eta.apply(&curvature_apply(curv, &f(i), &f(j), &f(k)));
                let rhs = &(g.get(j, k) * &eta.0[i]) - &(g.get(i, k) * &eta.0[j]);
                r.push(&[i, j, k], lhs - rhs);
            }
        }
    }
    out.push(AxiomRecord::new(
        "curvature-eta",
        "eta(R(X, Y) Z) = g(Y, Z) eta(X) - g(X, Z) eta(Y)",
        r.0,
        nz,
    ));

    let mut r = Residuals::default();
    for i in 0..n {
        for j in 0..n {
            let lhs = curvature_apply(curv, xi, &f(i), &f(j));
            let rhs = xi.scale(g.get(i, j)).sub(&f(i).scale(&eta.0[j]));
            r.push_vector(&[i, j], &lhs.sub(&rhs));
        }
    }
    out.push(AxiomRecord::new("curvature-xi-left", "R(xi, X) Y = g(X, Y) xi - eta(Y) X", r.0, nz));

    let mut r = Residuals::default();
    for i in 0..n {
        for j in 0..n {
            let lhs = curvature_apply(curv, &f(i), &f(j), xi);
            let rhs = f(i).scale(&eta.0[j]).sub(&f(j).scale(&eta.0[i]));
            r.push_vector(&[i, j], &lhs.sub(&rhs));
        }
    }
    out.push(AxiomRecord::new("curvature-xi", "R(X, Y) xi = eta(Y) X - eta(X) Y", r.0, nz));

    let mut r = Residuals::default();
    for i in 0..n {
        let lhs = curvature_apply(curv, xi, &f(i), xi);
        let rhs = f(i).add(&xi.scale(&eta.0[i]));
        r.push_vector(&[i], &lhs.sub(&rhs));
    }
    out.push(AxiomRecord::new("curvature-xi-xi", "R(xi, X) xi = X + eta(X) xi", r.0, nz));

    let s = &curv.ricci;
    let mut r = Residuals::default();
    for i in 0..n {
        r.push(&[i], s.pair(&f(i), xi) - &n1 * &eta.0[i]);
    }
    out.push(AxiomRecord::new("ricci-xi", "S(X, xi) = (n - 1) eta(X)", r.0, nz));

    let mut r = Residuals::default();
    for i in 0..n {
        for j in 0..n {
            let lhs = s.pair(&phi_f[i], &phi_f[j]);
            let rhs = s.get(i, j) + &(&n1 * &(&eta.0[i] * &eta.0[j]));
            r.push(&[i, j], lhs - rhs);
        }
    }
    out.push(AxiomRecord::new(
        "ricci-phi",
        "S(phi X, phi Y) = S(X, Y) + (n - 1) eta(X) eta(Y)",
        r.0,
        nz,
    ));

    out
}
