//! (α,β)-Ricci-Yamabe solitons on frame-presented almost-contact manifolds:
//! the structure axiom battery, soliton residuals, fluid models and the
//! symbolic identity suite.

mod axioms;
mod fluid;
mod rys;
mod theorems;

use std::collections::BTreeSet;

use serde::Serialize;

pub use axioms::{lps_axiom_battery, AxiomRecord};
pub use fluid::{
    dust_energy_tensor, dust_trace_relation, dust_vacuum_check, efe_residual, flow_lambda, perfect_fluid_energy_tensor,
    q_norm_formulas, soliton_energy_coefficient, soliton_energy_tensor, stated_flow_lambda, DustBranch, DustRecord,
    DustTrace, QNormRecord,
};
pub use rys::{
    closedness_defect, consistency_condition, einstein_quantities, grys_residual, hessian, rys_residual,
    solve_lambda_einstein, EinsteinQuantities, NotEinstein,
};
pub use theorems::{theorem_identity_checks, TheoremRecord};

use crate::algebra::{parse_expr, AlgebraError, Bindings, PolyCondition, ScalarExpr, Sym};
use crate::curvature::RConvention;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolitonParams {
    pub alpha: ScalarExpr,
    pub beta: ScalarExpr,
    pub lambda: ScalarExpr,
    pub r_convention: RConvention,
}

impl Default for SolitonParams {
    fn default() -> Self {
        SolitonParams {
            alpha: ScalarExpr::sym("alpha"),
            beta: ScalarExpr::sym("beta"),
            lambda: ScalarExpr::sym("lambda"),
            r_convention: RConvention::Signed,
        }
    }
}

impl SolitonParams {
    pub fn with_convention(mut self, c: RConvention) -> Self {
        self.r_convention = c;
        self
    }

    pub fn with_lambda(mut self, lambda: ScalarExpr) -> Self {
        self.lambda = lambda;
        self
    }

    /// Einstein factor `(βr - 2λ)/(2α)` forced by a soliton with Killing field.
    pub fn einstein_factor(&self, r: &ScalarExpr) -> Result<ScalarExpr, AlgebraError> {
        let num = &(&self.beta * r) - &self.lambda.scale_int(2);
        num.try_div(&self.alpha.scale_int(2))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FluidParams {
    pub tau: ScalarExpr,
    pub rho: ScalarExpr,
    pub p: ScalarExpr,
    pub mu: ScalarExpr,
}

impl Default for FluidParams {
    fn default() -> Self {
        FluidParams {
            tau: ScalarExpr::sym("tau"),
            rho: ScalarExpr::sym("rho"),
            p: ScalarExpr::sym("p"),
            mu: ScalarExpr::sym("mu"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    Conditional,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Conditional => "conditional",
        })
    }
}

/// One non-zero residual, at 1-based frame indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residual {
    pub at: Vec<usize>,
    pub value: ScalarExpr,
}

/// Holds when every residual is zero, conditional when their numerators
/// share a factor that is not a declared non-zero symbol, fails otherwise.
pub fn classify(residuals: &[ScalarExpr], nonzero: &BTreeSet<Sym>) -> (Verdict, Option<PolyCondition>) {
    if residuals.iter().all(ScalarExpr::is_zero) {
        return (Verdict::Holds, None);
    }
    match PolyCondition::common(residuals, nonzero) {
        Some(c) => (Verdict::Conditional, Some(c)),
        None => (Verdict::Fails, None),
    }
}

/// Solution of `e = 0` for `sym` when the numerator of `e` is linear in it.
pub fn solve_linear(e: &ScalarExpr, sym: &str) -> Option<ScalarExpr> {
    let s = Sym::from(sym);
    let coeffs = e.numer().coefficients_in(&s);
    if coeffs.len() != 2 {
        return None;
    }
    let b = ScalarExpr::from_poly(coeffs[0].clone());
    let a = ScalarExpr::from_poly(coeffs[1].clone());
    (-b).try_div(&a).ok()
}

pub(crate) fn ex(s: &str) -> ScalarExpr {
    parse_expr(s).expect("well-formed constant expression")
}

pub(crate) fn bind(pairs: &[(&str, &ScalarExpr)]) -> Bindings {
    pairs.iter().map(|(k, v)| (Sym::from(*k), (*v).clone())).collect()
}

pub(crate) fn subst(e: &ScalarExpr, pairs: &[(&str, &ScalarExpr)]) -> ScalarExpr {
    e.substitute(&bind(pairs)).expect("substitution keeps denominators non-zero")
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Sym;

    #[test]
    fn linear_solve() {
        assert_eq!(solve_linear(&ex("2*alpha - n*beta"), "alpha"), Some(ex("n*beta/2")));
        assert_eq!(solve_linear(&ex("(x - 1)/y"), "x"), Some(ex("1")));
        assert_eq!(solve_linear(&ex("x^2 - 1"), "x"), None);
        assert_eq!(solve_linear(&ex("y"), "x"), None);
    }

    #[test]
    fn classification() {
        let nz: BTreeSet<Sym> = [Sym::from("beta")].into_iter().collect();
        assert_eq!(classify(&[ex("0")], &nz).0, Verdict::Holds);
        let (v, c) = classify(&[ex("6*beta - 6*beta*a^2"), ex("a^2 - 1")], &nz);
        assert_eq!(v, Verdict::Conditional);
        assert_eq!(c.unwrap().to_string(), "a^2 - 1 = 0");
        assert_eq!(classify(&[ex("2")], &nz).0, Verdict::Fails);
        assert_eq!(classify(&[ex("beta")], &nz).0, Verdict::Fails);
    }
}
