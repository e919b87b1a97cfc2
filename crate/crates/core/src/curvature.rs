//! Riemann, Ricci and scalar curvature, the Ricci operator and `∇S`.
//!
//! Conventions: `R(X,Y)Z = ∇_X ∇_Y Z - ∇_Y ∇_X Z - ∇_{[X,Y]} Z` and
//! `S(Y,Z) = trace(X ↦ R(X,Y)Z)`. With these the four-dimensional example
//! frame has `S = diag(3a², 3a², 3a², -3a²)`.
//!
//! Two scalar curvatures are always produced: `r_signed = g^{jk} S_jk` (the
//! metric contraction) and `r_unsigned = Σ_j S_jj` (the plain trace of the
//! component matrix). They differ whenever the frame has timelike vectors.

use serde::Serialize;

use crate::algebra::ScalarExpr;
use crate::connection::Connection;
use crate::frame::FrameSpec;
use crate::tensor::{Matrix, Tensor3, Tensor4};

/// Which scalar curvature feeds the soliton and fluid formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RConvention {
    #[default]
    Signed,
    Unsigned,
}

impl std::str::FromStr for RConvention {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "signed" => Ok(RConvention::Signed),
            "unsigned" => Ok(RConvention::Unsigned),
            other => Err(format!("unknown r convention `{other}` (expected signed|unsigned)")),
        }
    }
}

impl std::fmt::Display for RConvention {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RConvention::Signed => "signed",
            RConvention::Unsigned => "unsigned",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvatureBundle {
    /// `riem.get(l, k, i, j)` is `R^l_kij` with `R(f_i,f_j)f_k = Σ_l R^l_kij f_l`.
    pub riem: Tensor4,
    /// `lowered.get(l, k, i, j) = g(R(f_i,f_j)f_k, f_l)`.
    pub lowered: Tensor4,
    pub ricci: Matrix,
    pub r_signed: ScalarExpr,
    pub r_unsigned: ScalarExpr,
    /// `q.get(i, j)` is `Q^i_j = Σ_k g^{ik} S_kj`.
    pub q: Matrix,
    /// `‖Q‖² = g^{ik} g^{jl} S_ij S_kl`.
    pub q_norm_sq: ScalarExpr,
    /// `nabla_s.get(k, i, j)` is `(∇_k S)_ij`.
    pub nabla_s: Tensor3,
}

impl CurvatureBundle {
    pub fn compute(spec: &FrameSpec, conn: &Connection) -> Self {
        let riem = riemann(spec, conn);
        let lowered = lower_riemann(spec, &riem);
        let ricci = ricci(conn.inverse_metric(), &lowered);
        let (r_signed, r_unsigned) = scalar_curvatures(conn.inverse_metric(), &ricci);
        let (q, q_norm_sq) = ricci_operator(conn.inverse_metric(), &ricci);
        let nabla_s = covariant_derivative_ricci(conn, &ricci);
        CurvatureBundle {
            riem,
            lowered,
            ricci,
            r_signed,
            r_unsigned,
            q,
            q_norm_sq,
            nabla_s,
        }
    }

    pub fn dim(&self) -> usize {
        self.ricci.dim()
    }

    pub fn r(&self, convention: RConvention) -> &ScalarExpr {
        match convention {
            RConvention::Signed => &self.r_signed,
            RConvention::Unsigned => &self.r_unsigned,
        }
    }

    /// Non-zero `R^l_kij + R^l_kji`.
    pub fn antisymmetry_defects(&self) -> Vec<([usize; 4], ScalarExpr)> {
        let n = self.dim();
        let mut out = Vec::new();
        for_each4(n, |l, k, i, j| {
            let s = self.riem.get(l, k, i, j) + self.riem.get(l, k, j, i);
            if !s.is_zero() {
                out.push(([l, k, i, j], s));
            }
        });
        out
    }

    /// Non-zero components of `R(f_i,f_j)f_k + R(f_j,f_k)f_i + R(f_k,f_i)f_j`.
    pub fn bianchi_defects(&self) -> Vec<([usize; 4], ScalarExpr)> {
        let n = self.dim();
        let mut out = Vec::new();
        for_each4(n, |l, k, i, j| {
            let s = &(self.riem.get(l, k, i, j) + self.riem.get(l, i, j, k)) + self.riem.get(l, j, k, i);
            if !s.is_zero() {
                out.push(([l, k, i, j], s));
            }
        });
        out
    }

    /// Non-zero defects of `R_lkij = -R_klij` and `R_lkij = R_jilk` for the
    /// lowered tensor `R_lkij = g(R(f_i,f_j)f_k, f_l)`.
    pub fn lowered_symmetry_defects(&self) -> Vec<([usize; 4], ScalarExpr)> {
        let n = self.dim();
        let t = &self.lowered;
        let mut out = Vec::new();
        for_each4(n, |l, k, i, j| {
            let skew = t.get(l, k, i, j) + t.get(k, l, i, j);
            if !skew.is_zero() {
                out.push(([l, k, i, j], skew));
            }
            // g(R(f_i,f_j)f_k,f_l) = g(R(f_k,f_l)f_i,f_j)
            let pair = t.get(l, k, i, j) - t.get(j, i, k, l);
            if !pair.is_zero() {
                out.push(([l, k, i, j], pair));
            }
        });
        out
    }

    pub fn ricci_asymmetry(&self) -> Vec<([usize; 2], ScalarExpr)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let d = self.ricci.get(i, j) - self.ricci.get(j, i);
                if !d.is_zero() {
                    out.push(([i, j], d));
                }
            }
        }
        out
    }

    pub fn is_flat(&self) -> bool {
        self.riem.is_zero()
    }
}

fn for_each4(n: usize, mut f: impl FnMut(usize, usize, usize, usize)) {
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    f(a, b, c, d);
                }
            }
        }
    }
}

/// `R^l_kij = Σ_m (Γ^m_jk Γ^l_im - Γ^m_ik Γ^l_jm - C^m_ij Γ^l_mk)`.
pub fn riemann(spec: &FrameSpec, conn: &Connection) -> Tensor4 {
    let n = spec.dim();
    let c = spec.structure();
    let g = conn.gamma();
    Tensor4::from_fn(n, |l, k, i, j| {
        let mut acc = ScalarExpr::zero();
        for m in 0..n {
            let (a, b) = (g.get(m, j, k), g.get(l, i, m));
            if !a.is_zero() && !b.is_zero() {
                acc = &acc + &(a * b);
            }
            let (a, b) = (g.get(m, i, k), g.get(l, j, m));
            if !a.is_zero() && !b.is_zero() {
                acc = &acc - &(a * b);
            }
            let (a, b) = (c.get(m, i, j), g.get(l, m, k));
            if !a.is_zero() && !b.is_zero() {
                acc = &acc - &(a * b);
            }
        }
        acc
    })
}

/// `R_lkij = Σ_m g_lm R^m_kij`.
pub fn lower_riemann(spec: &FrameSpec, riem: &Tensor4) -> Tensor4 {
    let n = spec.dim();
    let g = spec.metric();
    Tensor4::from_fn(n, |l, k, i, j| {
        (0..n)
            .filter(|&m| !g.get(l, m).is_zero())
            .map(|m| g.get(l, m) * riem.get(m, k, i, j))
            .sum()
    })
}

/// `S_jk = Σ_il g^{il} R_lkij`, the metric contraction of the lowered tensor.
pub fn ricci(ginv: &Matrix, lowered: &Tensor4) -> Matrix {
    let n = ginv.dim();
    Matrix::from_fn(n, |j, k| {
        let mut acc = ScalarExpr::zero();
        for i in 0..n {
            for l in 0..n {
                let h = ginv.get(i, l);
                if !h.is_zero() {
                    acc = &acc + &(h * lowered.get(l, k, i, j));
                }
            }
        }
        acc
    })
}

/// `S_jk = Σ_i ε_i g(R(f_i,f_j)f_k, f_i)` for a pseudo-orthonormal frame
/// (`g = diag(ε_1, …, ε_n)`, `ε_i = ±1`); `None` for any other metric.
pub fn ricci_orthonormal(spec: &FrameSpec, lowered: &Tensor4) -> Option<Matrix> {
    let n = spec.dim();
    let g = spec.metric();
    let mut eps = Vec::with_capacity(n);
    for i in 0..n {
        for j in 0..n {
            if i != j && !g.get(i, j).is_zero() {
                return None;
            }
        }
        let d = g.get(i, i);
        if *d != ScalarExpr::one() && *d != ScalarExpr::int(-1) {
            return None;
        }
        eps.push(d.clone());
    }
    Some(Matrix::from_fn(n, |j, k| {
        (0..n).map(|i| &eps[i] * lowered.get(i, k, i, j)).sum()
    }))
}

pub fn scalar_curvatures(ginv: &Matrix, ricci: &Matrix) -> (ScalarExpr, ScalarExpr) {
    let n = ricci.dim();
    let mut signed = ScalarExpr::zero();
    for j in 0..n {
        for k in 0..n {
            let h = ginv.get(j, k);
            if !h.is_zero() {
                signed = &signed + &(h * ricci.get(j, k));
            }
        }
    }
    (signed, ricci.trace())
}

/// Ricci operator `Q^i_j = Σ_k g^{ik} S_kj` and `‖Q‖² = tr(Q²)`.
pub fn ricci_operator(ginv: &Matrix, ricci: &Matrix) -> (Matrix, ScalarExpr) {
    let q = ginv.mul(ricci);
    let norm = q.mul(&q).trace();
    (q, norm)
}

/// `(∇_k S)_ij = -Σ_m (Γ^m_ki S_mj + Γ^m_kj S_im)` for frame-constant `S`.
pub fn covariant_derivative_ricci(conn: &Connection, ricci: &Matrix) -> Tensor3 {
    let n = ricci.dim();
    Tensor3::from_fn(n, |k, i, j| {
        let mut acc = ScalarExpr::zero();
        for m in 0..n {
            let a = conn.coefficient(m, k, i);
            if !a.is_zero() {
                acc = &acc + &(a * ricci.get(m, j));
            }
            let b = conn.coefficient(m, k, j);
            if !b.is_zero() {
                acc = &acc + &(b * ricci.get(i, m));
            }
        }
        -acc
    })
}

/// Non-zero components of a rank-3 array, 0-based indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefectList {
    pub components: Vec<([usize; 3], ScalarExpr)>,
}

impl DefectList {
    pub fn holds(&self) -> bool {
        self.components.is_empty()
    }
}

/// `D_kij = (∇_k S)_ij - (∇_j S)_ki`; empty iff `∇S` is a Codazzi tensor.
pub fn codazzi_defect(nabla_s: &Tensor3) -> DefectList {
    let n = nabla_s.dim();
    let d = Tensor3::from_fn(n, |k, i, j| nabla_s.get(k, i, j) - nabla_s.get(j, k, i));
    DefectList {
        components: d.nonzero().map(|(idx, v)| (idx, v.clone())).collect(),
    }
}

/// Every non-zero `g((∇_k Q) f_i, f_j) = (∇_k S)_ij`. The condition is
/// imposed for all arguments, not only those orthogonal to `ξ`.
pub fn eta_parallel_defect(nabla_s: &Tensor3) -> DefectList {
    DefectList {
        components: nabla_s.nonzero().map(|(idx, v)| (idx, v.clone())).collect(),
    }
}

/// `Ok(c)` when `S = c g`, otherwise the non-zero entries of `S - c g` for
/// the candidate `c` read off the first non-zero metric entry.
pub fn einstein_factor(spec: &FrameSpec, ricci: &Matrix) -> Result<ScalarExpr, Vec<([usize; 2], ScalarExpr)>> {
    let g = spec.metric();
    let ((i0, j0), g0) = g
        .entries()
        .find(|(_, v)| !v.is_zero())
        .expect("non-degenerate metric has a non-zero entry");
    let c = ricci.get(i0, j0) / g0;
    let diff = ricci.sub(&g.scale(&c));
    let bad: Vec<_> = diff
        .entries()
        .filter(|(_, v)| !v.is_zero())
        .map(|((i, j), v)| ([i, j], v.clone()))
        .collect();
    if bad.is_empty() {
        Ok(c)
    } else {
        Err(bad)
    }
}
