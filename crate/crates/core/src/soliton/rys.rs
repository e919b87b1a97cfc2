//! Soliton residuals, the Einstein reduction and the gradient variant.

use crate::algebra::{AlgebraError, PolyCondition, ScalarExpr};
use crate::connection::Connection;
use crate::curvature::{einstein_factor, CurvatureBundle};
use crate::frame::FrameSpec;
use crate::tensor::{CoVector, Matrix, VectorField};

use super::{ex, subst, SolitonParams};

/// `(L_V g) + 2α S + (2λ - βr) g`; zero iff `(g, V, λ, α, β)` is a soliton.
pub fn rys_residual(spec: &FrameSpec, curv: &CurvatureBundle, v: &VectorField, params: &SolitonParams) -> Matrix {
    let r = curv.r(params.r_convention);
    let lie = spec.lie_derivative_metric(v);
    let two_alpha = params.alpha.scale_int(2);
    let coeff = &params.lambda.scale_int(2) - &(&params.beta * r);
    lie.add(&curv.ricci.scale(&two_alpha)).add(&spec.metric().scale(&coeff))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotEinstein {
    /// Non-zero entries of `S - c g`, 0-based.
    pub components: Vec<([usize; 2], ScalarExpr)>,
}

/// With `S = c g`, a soliton with Killing field has `λ = (βr - 2αc)/2`.
pub fn solve_lambda_einstein(
    spec: &FrameSpec,
    curv: &CurvatureBundle,
    params: &SolitonParams,
) -> Result<ScalarExpr, NotEinstein> {
    let c = einstein_factor(spec, &curv.ricci).map_err(|components| NotEinstein { components })?;
    let r = curv.r(params.r_convention);
    let lambda = &(&params.beta * r) - &(&params.alpha.scale_int(2) * &c);
    Ok(lambda * ScalarExpr::rational(1, 2))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EinsteinQuantities {
    /// `c = (βr - 2λ)/(2α)`, the coefficient of `S(X, ξ) = c η(X)` and `QX = cX`.
    pub factor: ScalarExpr,
    /// `S(ξ,ξ) = c η(ξ)`.
    pub s_xi_xi_via_eta: ScalarExpr,
    /// `S(ξ,ξ) = c g(ξ,ξ)`.
    pub s_xi_xi_via_metric: ScalarExpr,
    /// `(2λ - βr)/(2α)`.
    pub s_xi_xi_closed: ScalarExpr,
    /// `S(ξ,ξ)` from the computed Ricci tensor.
    pub s_xi_xi_curvature: ScalarExpr,
    /// `n c`, the trace of `Q = c Id`.
    pub soliton_scalar: ScalarExpr,
}

impl EinsteinQuantities {
    pub fn consistent(&self) -> bool {
        self.s_xi_xi_via_eta == self.s_xi_xi_closed && self.s_xi_xi_via_metric == self.s_xi_xi_closed
    }
}

pub fn einstein_quantities(
    spec: &FrameSpec,
    curv: &CurvatureBundle,
    params: &SolitonParams,
) -> Result<EinsteinQuantities, AlgebraError> {
    let r = curv.r(params.r_convention);
    let c = params.einstein_factor(r)?;
    let xi = spec.xi();
    let eta_xi = spec.eta().apply(xi);
    let closed = (&params.lambda.scale_int(2) - &(&params.beta * r)).try_div(&params.alpha.scale_int(2))?;
    Ok(EinsteinQuantities {
        s_xi_xi_via_eta: &c * &eta_xi,
        s_xi_xi_via_metric: &c * &spec.g(xi, xi),
        s_xi_xi_closed: closed,
        s_xi_xi_curvature: curv.ricci.pair(xi, xi),
        soliton_scalar: Matrix::identity(spec.dim()).scale(&c).trace(),
        factor: c,
    })
}

/// Condition on the frame parameters under which the Einstein value of `λ`
/// (with `α = nβ/2`) agrees with `λ = β(r - n(n-1))/2`. `None` when the two
/// agree identically, or when the Ricci tensor is not Einstein.
pub fn consistency_condition(
    spec: &FrameSpec,
    curv: &CurvatureBundle,
    params: &SolitonParams,
) -> Option<(ScalarExpr, ScalarExpr, Option<PolyCondition>)> {
    let lambda = solve_lambda_einstein(spec, curv, params).ok()?;
    let n = ScalarExpr::int(spec.dim() as i64);
    let alpha = &(&n * &params.beta) * &ScalarExpr::rational(1, 2);
    let lambda = subst_alpha(&lambda, params, &alpha);
    let r = curv.r(params.r_convention);
    let stated = &(&params.beta * &(r - &n * &(&n - &ScalarExpr::one()))) * &ScalarExpr::rational(1, 2);
    let diff = &lambda - &stated;
    let cond = PolyCondition::from_poly(diff.numer(), spec.assume_nonzero());
    Some((lambda, stated, cond))
}

fn subst_alpha(e: &ScalarExpr, params: &SolitonParams, alpha: &ScalarExpr) -> ScalarExpr {
    match params.alpha.symbols().into_iter().next() {
        Some(s) if params.alpha == ScalarExpr::from_sym(s.clone()) => subst(e, &[(s.name(), alpha)]),
        _ => e.clone(),
    }
}

/// `Hess(f)_ij = -Σ_k Γ^k_ij (df)_k` for frame-constant `df`.
pub fn hessian(conn: &Connection, df: &CoVector) -> Matrix {
    let n = conn.dim();
    Matrix::from_fn(n, |i, j| {
        -(0..n)
            .filter(|&k| !df.0[k].is_zero())
            .map(|k| conn.coefficient(k, i, j) * &df.0[k])
            .sum::<ScalarExpr>()
    })
}

/// `d(df)(f_i, f_j) = -Σ_k C^k_ij (df)_k`; a frame-constant one-form is
/// closed, and the Hessian symmetric, iff this vanishes.
pub fn closedness_defect(spec: &FrameSpec, df: &CoVector) -> Matrix {
    let n = spec.dim();
    let c = spec.structure();
    Matrix::from_fn(n, |i, j| -(0..n).map(|k| c.get(k, i, j) * &df.0[k]).sum::<ScalarExpr>())
}

/// `Hess(f) + αS + (λ - βr/2) g`, half the soliton residual for `V = Df`
/// since `L_{Df} g = 2 Hess(f)`.
pub fn grys_residual(
    spec: &FrameSpec,
    conn: &Connection,
    curv: &CurvatureBundle,
    df: &CoVector,
    params: &SolitonParams,
) -> Matrix {
    let r = curv.r(params.r_convention);
    let shift = &params.lambda - &(&(&params.beta * r) * &ex("1/2"));
    hessian(conn, df)
        .add(&curv.ricci.scale(&params.alpha))
        .add(&spec.metric().scale(&shift))
}
