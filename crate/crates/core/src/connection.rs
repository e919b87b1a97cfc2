//! Levi-Civita connection of a frame-presented manifold.
//!
//! With constant frame metric the Koszul formula loses its derivative terms:
//!
//! ```text
//! 2 g(∇_{f_i} f_j, f_k) = g([f_i,f_j],f_k) - g([f_j,f_k],f_i) + g([f_k,f_i],f_j)
//! ```
//!
//! so `Γ^m_ij = ½ Σ_k g^{mk} (C_ijk - C_jki + C_kij)` with
//! `C_ijk = Σ_l C^l_ij g_lk`. Frames whose metric components vary are out of
//! scope.

use crate::algebra::ScalarExpr;
use crate::frame::{FrameSpec, SpecError};
use crate::tensor::{Matrix, Tensor3, VectorField};

/// `gamma.get(k, i, j)` is `Γ^k_ij` with `∇_{f_i} f_j = Σ_k Γ^k_ij f_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connection {
    gamma: Tensor3,
    inverse_metric: Matrix,
}

impl Connection {
    pub fn from_coefficients(gamma: Tensor3, inverse_metric: Matrix) -> Self {
        Connection { gamma, inverse_metric }
    }

    pub fn gamma(&self) -> &Tensor3 {
        &self.gamma
    }

    pub fn coefficient(&self, k: usize, i: usize, j: usize) -> &ScalarExpr {
        self.gamma.get(k, i, j)
    }

    pub fn inverse_metric(&self) -> &Matrix {
        &self.inverse_metric
    }

    pub fn dim(&self) -> usize {
        self.gamma.dim()
    }

    /// `∇_{f_i} f_j`.
    pub fn nabla_basis(&self, i: usize, j: usize) -> VectorField {
        VectorField((0..self.dim()).map(|k| self.gamma.get(k, i, j).clone()).collect())
    }

    /// `(∇_X Y)^k = Σ_ij X^i Y^j Γ^k_ij` for frame-constant `X`, `Y`.
    pub fn covariant_derivative(&self, x: &VectorField, y: &VectorField) -> VectorField {
        let n = self.dim();
        let mut out = VectorField::zero(n);
        for i in 0..n {
            if x.0[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y.0[j].is_zero() {
                    continue;
                }
                let xy = &x.0[i] * &y.0[j];
                for k in 0..n {
                    let g = self.gamma.get(k, i, j);
                    if !g.is_zero() {
                        out.0[k] = &out.0[k] + &(&xy * g);
                    }
                }
            }
        }
        out
    }

    /// Torsion residuals `Γ^k_ij - Γ^k_ji - C^k_ij`.
    pub fn torsion(&self, spec: &FrameSpec) -> Tensor3 {
        let c = spec.structure();
        Tensor3::from_fn(self.dim(), |k, i, j| {
            &(self.gamma.get(k, i, j) - self.gamma.get(k, j, i)) - c.get(k, i, j)
        })
    }

    /// Metric-compatibility residuals `Σ_m (Γ^m_ik g_mj + Γ^m_ij g_mk)`,
    /// indexed `(i, j, k)`.
    pub fn nonmetricity(&self, spec: &FrameSpec) -> Tensor3 {
        let g = spec.metric();
        let n = self.dim();
        Tensor3::from_fn(n, |i, j, k| {
            (0..n)
                .map(|m| &(self.gamma.get(m, i, k) * g.get(m, j)) + &(self.gamma.get(m, i, j) * g.get(m, k)))
                .sum()
        })
    }
}

/// Levi-Civita connection through the constant-metric Koszul formula.
pub fn koszul_connection(spec: &FrameSpec) -> Result<Connection, SpecError> {
    let n = spec.dim();
    let ginv = spec.inverse_metric()?;
    let g = spec.metric();
    let c = spec.structure();
    // lowered[i][j][k] = C_ijk = g([f_i, f_j], f_k)
    let lowered = Tensor3::from_fn(n, |i, j, k| (0..n).map(|l| c.get(l, i, j) * g.get(l, k)).sum());
    // koszul[i][j][k] = 2 g(∇_i f_j, f_k)
    let koszul = Tensor3::from_fn(n, |i, j, k| {
        &(lowered.get(i, j, k) - lowered.get(j, k, i)) + lowered.get(k, i, j)
    });
    let half = ScalarExpr::rational(1, 2);
    let gamma = Tensor3::from_fn(n, |m, i, j| {
        let s: ScalarExpr = (0..n)
            .filter(|&k| !ginv.get(m, k).is_zero())
            .map(|k| ginv.get(m, k) * koszul.get(i, j, k))
            .sum();
        &s * &half
    });
    Ok(Connection {
        gamma,
        inverse_metric: ginv,
    })
}

/// `(∇_i η)_j = -Σ_k Γ^k_ij η_k` for the frame-constant one-form `η`.
pub fn covariant_derivative_eta(spec: &FrameSpec, conn: &Connection) -> Matrix {
    let eta = spec.eta();
    let n = spec.dim();
    Matrix::from_fn(n, |i, j| -(0..n).map(|k| conn.coefficient(k, i, j) * &eta.0[k]).sum::<ScalarExpr>())
}
