//! Field equations with perfect fluid and dust matter along the flow `ξ`.

use crate::algebra::{AlgebraError, PolyCondition, ScalarExpr};
use crate::curvature::{CurvatureBundle, RConvention};
use crate::frame::FrameSpec;
use crate::tensor::Matrix;

use super::{ex, solve_linear, subst, FluidParams, SolitonParams};

/// `T_ij = (ρ - p) η_i η_j + p g_ij`.
pub fn perfect_fluid_energy_tensor(spec: &FrameSpec, fluid: &FluidParams) -> Matrix {
    let eta = spec.eta();
    let flow = &fluid.rho - &fluid.p;
    Matrix::from_fn(spec.dim(), |i, j| {
        &(&flow * &(&eta.0[i] * &eta.0[j])) + &(&fluid.p * spec.metric().get(i, j))
    })
}

/// `T_ij = ρ η_i η_j`.
pub fn dust_energy_tensor(spec: &FrameSpec, rho: &ScalarExpr) -> Matrix {
    let eta = spec.eta();
    Matrix::from_fn(spec.dim(), |i, j| rho * &(&eta.0[i] * &eta.0[j]))
}

/// `S - (r/2) g [+ μ g] - τ T`.
pub fn efe_residual(
    spec: &FrameSpec,
    curv: &CurvatureBundle,
    convention: RConvention,
    fluid: &FluidParams,
    t: &Matrix,
    with_cosmological: bool,
) -> Matrix {
    let half_r = curv.r(convention) * &ex("1/2");
    let shift = if with_cosmological {
        &fluid.mu - &half_r
    } else {
        -half_r
    };
    curv.ricci.add(&spec.metric().scale(&shift)).sub(&t.scale(&fluid.tau))
}

/// `(4μ - r + 2λ/β)/(4τ)`, the energy tensor coefficient of a spacetime
/// soliton once `α = 2β`.
pub fn soliton_energy_coefficient(
    params: &SolitonParams,
    fluid: &FluidParams,
    r: &ScalarExpr,
) -> Result<ScalarExpr, AlgebraError> {
    let inner = &(&fluid.mu.scale_int(4) - r) + &params.lambda.scale_int(2).try_div(&params.beta)?;
    inner.try_div(&fluid.tau.scale_int(4))
}

pub fn soliton_energy_tensor(
    spec: &FrameSpec,
    params: &SolitonParams,
    fluid: &FluidParams,
    r: &ScalarExpr,
) -> Result<Matrix, AlgebraError> {
    Ok(spec.metric().scale(&soliton_energy_coefficient(params, fluid, r)?))
}

/// Solves for `λ` so that the soliton energy tensor and the perfect fluid
/// tensor agree on `(ξ, ξ)`.
pub fn flow_lambda(spec: &FrameSpec, params: &SolitonParams, fluid: &FluidParams, r: &ScalarExpr) -> Option<ScalarExpr> {
    let p = params.clone().with_lambda(ScalarExpr::sym("lambda"));
    let xi = spec.xi();
    let lhs = soliton_energy_tensor(spec, &p, fluid, r).ok()?.pair(xi, xi);
    let rhs = perfect_fluid_energy_tensor(spec, fluid).pair(xi, xi);
    solve_linear(&(lhs - rhs), "lambda")
}

/// `λ = (β/2)(4τ(2p - ρ) + r - 4μ)`.
pub fn stated_flow_lambda(beta: &ScalarExpr, fluid: &FluidParams, r: &ScalarExpr) -> ScalarExpr {
    let inner = &(&(&fluid.tau.scale_int(4) * &(&fluid.p.scale_int(2) - &fluid.rho)) + r) - &fluid.mu.scale_int(4);
    &(beta * &inner) * &ex("1/2")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QNormRecord {
    pub id: &'static str,
    pub expr: ScalarExpr,
    pub check: String,
    pub holds: bool,
}

/// Closed forms for `‖Q‖²` in the perfect fluid, radiation and dust models,
/// each with the substitution check tying it to the others.
pub fn q_norm_formulas(params: &SolitonParams, fluid: &FluidParams) -> Result<Vec<QNormRecord>, AlgebraError> {
    let (beta, lambda, tau, rho, p) = (&params.beta, &params.lambda, &fluid.tau, &fluid.rho, &fluid.p);
    let sixteenth = ex("1/16");
    let perfect_inner = &(tau * &(rho - &p.scale_int(3))) - &lambda.scale_int(3).try_div(beta)?;
    let perfect = &sixteenth * &perfect_inner.pow(2)?;
    let radiation = lambda.scale_int(3).try_div(&beta.scale_int(4))?.pow(2)?;
    let dust_inner = &(tau * rho) - &lambda.scale_int(2).try_div(beta)?;
    let dust = &sixteenth * &dust_inner.pow(2)?;

    let mut out = Vec::new();
    let rho_sym = rho.symbols().into_iter().next();
    let reduced = match &rho_sym {
        Some(s) if *rho == ScalarExpr::from_sym(s.clone()) => Some(subst(&perfect, &[(s.name(), &p.scale_int(3))])),
        _ => None,
    };
    out.push(QNormRecord {
        id: "q-norm-perfect-fluid",
        expr: perfect.clone(),
        check: "rho = 3*p gives the radiation value".into(),
        holds: reduced.as_ref() == Some(&radiation),
    });
    out.push(QNormRecord {
        id: "q-norm-radiation",
        expr: radiation,
        check: "equals the perfect fluid form at rho = 3*p".into(),
        holds: reduced.is_some(),
    });
    let lam_sym = lambda.symbols().into_iter().next();
    let dust_zero = match &lam_sym {
        Some(s) if *lambda == ScalarExpr::from_sym(s.clone()) => {
            let at = &(&(beta * tau) * rho) * &ex("1/2");
            subst(&dust, &[(s.name(), &at)]).is_zero()
        }
        _ => false,
    };
    out.push(QNormRecord {
        id: "q-norm-dust",
        expr: dust,
        check: "vanishes at lambda = beta*tau*rho/2".into(),
        holds: dust_zero,
    });
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DustTrace {
    /// `g^{ij} (S - (r/2) g - τ ρ η⊗η)_ij`.
    pub trace: ScalarExpr,
    /// Whether the trace equals `τρ - r`, i.e. whether the vanishing of the
    /// residual forces `r = τρ` under the chosen convention.
    pub reproduces: bool,
}

pub fn dust_trace_relation(
    spec: &FrameSpec,
    curv: &CurvatureBundle,
    convention: RConvention,
    fluid: &FluidParams,
) -> Result<DustTrace, AlgebraError> {
    let t = dust_energy_tensor(spec, &fluid.rho);
    let fl = FluidParams {
        mu: ScalarExpr::zero(),
        ..fluid.clone()
    };
    let res = efe_residual(spec, curv, convention, &fl, &t, false);
    let ginv = spec.inverse_metric().map_err(|_| AlgebraError::DivisionByZero)?;
    let trace = ginv.mul(&res).trace();
    let expected = &(&fluid.tau * &fluid.rho) - curv.r(convention);
    Ok(DustTrace {
        reproduces: trace == expected,
        trace,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DustBranch {
    pub factor: String,
    pub conclusion: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DustRecord {
    /// `η(ξ)`, the value of `A·A` in the contractions.
    pub flow_norm: ScalarExpr,
    /// `r` from the metric trace of the dust equation.
    pub r_trace: ScalarExpr,
    /// `r` from contracting the dust equation with `A`.
    pub r_flow: ScalarExpr,
    /// `r` from the flow contraction with `A·A = +1`.
    pub r_flow_unit: ScalarExpr,
    pub difference: ScalarExpr,
    pub difference_unit: ScalarExpr,
    pub condition: Option<PolyCondition>,
    pub condition_unit: Option<PolyCondition>,
    pub branches: Vec<DustBranch>,
    pub vacuum: bool,
}

/// With `S = c g`, the dust field equation reads `(c - r/2) g = τρ A⊗A`.
/// Solving it for `r` by the metric trace and by contraction with `A`
/// gives two expressions whose difference must vanish.
pub fn dust_vacuum_check(spec: &FrameSpec, params: &SolitonParams, fluid: &FluidParams) -> Result<DustRecord, AlgebraError> {
    let r = ScalarExpr::sym("r");
    let n = ScalarExpr::int(spec.dim() as i64);
    let k = &params.einstein_factor(&r)? - &(&r * &ex("1/2"));
    let flow_norm = spec.eta().apply(spec.xi());
    let tr = &fluid.tau * &fluid.rho;
    let solve = |e: ScalarExpr| solve_linear(&e, "r").ok_or(AlgebraError::DivisionByZero);
    let r_trace = solve(&(&n * &k) - &(&tr * &flow_norm))?;
    let r_flow = solve(&k - &(&tr * &flow_norm))?;
    let r_flow_unit = solve(&k - &tr)?;
    let nz = spec.assume_nonzero();
    let difference = &r_trace - &r_flow;
    let difference_unit = &r_trace - &r_flow_unit;
    let condition = PolyCondition::from_poly(difference.numer(), &Default::default());
    let condition_unit = PolyCondition::from_poly(difference_unit.numer(), &Default::default());

    let mut branches = Vec::new();
    let mut vacuum = false;
    if let Some(c) = &condition {
        let mono = c.poly.monomial_content();
        let rest = c.poly.div_exact(&crate::algebra::Poly::term(num_traits::One::one(), mono.clone()));
        let residual_is_unit = rest.as_ref().map(|p| p.is_constant()).unwrap_or(false);
        let rho_syms = fluid.rho.symbols();
        let mut rho_factor = false;
        let mut open = false;
        for (s, _) in mono.factors() {
            let conclusion = if nz.contains(s) {
                "excluded: declared non-zero".to_string()
            } else if rho_syms.contains(s) {
                rho_factor = true;
                "T = 0 (vacuum)".to_string()
            } else {
                open = true;
                "no conclusion about the density".to_string()
            };
            branches.push(DustBranch {
                factor: format!("{s} = 0"),
                conclusion,
            });
        }
        if !residual_is_unit {
            open = true;
            branches.push(DustBranch {
                factor: format!("{} = 0", rest.map(|p| p.to_string()).unwrap_or_default()),
                conclusion: "no conclusion about the density".into(),
            });
        }
        vacuum = rho_factor && !open;
    }
    Ok(DustRecord {
        flow_norm,
        r_trace,
        r_flow,
        r_flow_unit,
        difference,
        difference_unit,
        condition,
        condition_unit,
        branches,
        vacuum,
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::{e, example, flat};
    use super::*;
    use crate::connection::koszul_connection;

    fn curv(s: &FrameSpec) -> CurvatureBundle {
        CurvatureBundle::compute(s, &koszul_connection(s).unwrap())
    }

    #[test]
    fn perfect_fluid_components() {
        let s = example();
        let fl = FluidParams::default();
        let t = perfect_fluid_energy_tensor(&s, &fl);
        assert_eq!(t.get(3, 3), &e("rho - 2*p"));
        assert_eq!(t.get(0, 0), &e("p"));
        let stiff = FluidParams {
            rho: e("p"),
            ..FluidParams::default()
        };
        assert_eq!(perfect_fluid_energy_tensor(&s, &stiff), s.metric().scale(&e("p")));
        let dust = FluidParams {
            p: e("0"),
            ..FluidParams::default()
        };
        assert_eq!(perfect_fluid_energy_tensor(&s, &dust), dust_energy_tensor(&s, &e("rho")));
    }

    #[test]
    fn flat_vacuum_residual() {
        let s = flat();
        let c = curv(&s);
        let fl = FluidParams {
            mu: e("0"),
            ..FluidParams::default()
        };
        assert!(efe_residual(&s, &c, RConvention::Signed, &fl, &Matrix::zeros(4), true).is_zero());
    }

    #[test]
    fn soliton_energy() {
        let p = SolitonParams::default();
        let fl = FluidParams::default();
        let r = e("r");
        assert_eq!(
            soliton_energy_coefficient(&p, &fl, &r).unwrap(),
            e("(4*mu - r + 2*lambda/beta)/(4*tau)")
        );
        let vac = p.clone().with_lambda(e("beta*(r - 4*mu)/2"));
        assert!(soliton_energy_coefficient(&vac, &fl, &r).unwrap().is_zero());
        let steady = SolitonParams::default().with_lambda(e("0"));
        let fl4 = FluidParams {
            mu: e("r/4"),
            ..FluidParams::default()
        };
        assert!(soliton_energy_coefficient(&steady, &fl4, &r).unwrap().is_zero());
    }

    #[test]
    fn flow_lambda_matches_closed_form() {
        let s = example();
        let fl = FluidParams::default();
        let r = e("r");
        let p = SolitonParams::default();
        assert_eq!(flow_lambda(&s, &p, &fl, &r), Some(stated_flow_lambda(&e("beta"), &fl, &r)));
        let at = stated_flow_lambda(&e("beta"), &fl, &r);
        let t = soliton_energy_tensor(&s, &p.clone().with_lambda(at), &fl, &r).unwrap();
        let diff = t.sub(&perfect_fluid_energy_tensor(&s, &fl));
        assert!(diff.pair(s.xi(), s.xi()).is_zero());
        let off = soliton_energy_tensor(&s, &p.with_lambda(e("0")), &fl, &r).unwrap();
        assert!(!off.sub(&perfect_fluid_energy_tensor(&s, &fl)).pair(s.xi(), s.xi()).is_zero());
    }

    #[test]
    fn q_norms() {
        let recs = q_norm_formulas(&SolitonParams::default(), &FluidParams::default()).unwrap();
        assert!(recs.iter().all(|r| r.holds));
        assert_eq!(recs[1].expr, e("9*lambda^2/(16*beta^2)"));
        let zero = q_norm_formulas(
            &SolitonParams::default().with_lambda(e("0")),
            &FluidParams {
                rho: e("0"),
                ..FluidParams::default()
            },
        )
        .unwrap();
        assert!(zero[2].expr.is_zero());
    }

    #[test]
    fn dust_trace_needs_signed_r() {
        let s = example();
        let c = curv(&s);
        let fl = FluidParams::default();
        let signed = dust_trace_relation(&s, &c, RConvention::Signed, &fl).unwrap();
        assert!(signed.reproduces);
        assert_eq!(signed.trace, e("tau*rho - 12*a^2"));
        let unsigned = dust_trace_relation(&s, &c, RConvention::Unsigned, &fl).unwrap();
        assert!(!unsigned.reproduces);
        assert_eq!(unsigned.trace, e("tau*rho"));
    }

    #[test]
    fn dust_is_vacuum() {
        let rec = dust_vacuum_check(&example(), &SolitonParams::default(), &FluidParams::default()).unwrap();
        assert_eq!(rec.flow_norm, e("-1"));
        assert_eq!(rec.r_trace, e("(4*lambda - alpha*tau*rho)/(2*(beta - alpha))"));
        assert_eq!(rec.r_flow, e("2*(lambda - alpha*tau*rho)/(beta - alpha)"));
        assert_eq!(rec.r_flow_unit, e("2*(lambda + alpha*tau*rho)/(beta - alpha)"));
        assert_eq!(rec.difference, e("3*alpha*tau*rho/(2*(beta - alpha))"));
        assert_eq!(rec.difference_unit, e("-5*alpha*tau*rho/(2*(beta - alpha))"));
        assert_eq!(rec.condition.as_ref().unwrap().to_string(), "alpha*rho*tau = 0");
        assert_eq!(rec.condition_unit, rec.condition);
        assert!(rec.vacuum);
        assert_eq!(rec.branches.len(), 3);
    }

    #[test]
    fn dust_alpha_branch_open() {
        let s = example();
        let spec = FrameSpec::new(
            s.metric().clone(),
            s.structure().clone(),
            s.phi().clone(),
            s.xi().clone(),
            ["tau".into()].into_iter().collect(),
        )
        .unwrap();
        let rec = dust_vacuum_check(&spec, &SolitonParams::default(), &FluidParams::default()).unwrap();
        assert!(!rec.vacuum);
        let alpha = rec.branches.iter().find(|b| b.factor == "alpha = 0").unwrap();
        assert_eq!(alpha.conclusion, "no conclusion about the density");
    }
}
