//! Manifolds presented by a frame with constant metric components and
//! constant structure constants, together with the almost-contact data
//! `(phi, xi, eta)`.
//!
//! Every component the engine handles is constant in the frame. Directional
//! derivatives of metric components therefore vanish, which is what makes
//! the Koszul formula purely algebraic in the bracket constants.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, ScalarExpr, Sym};
use crate::tensor::{CoVector, Matrix, Tensor3, VectorField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("{field}: expected {expected} entries, found {found}")]
    Dimension {
        field: String,
        expected: usize,
        found: usize,
    },
    #[error("dimension must be at least 2, found {0}")]
    TooSmall(usize),
    #[error("invalid spec ({check}): {detail}")]
    Invalid { check: String, detail: String },
    #[error("metric is singular")]
    SingularMetric,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Warn,
    Unchecked,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.status == CheckStatus::Fail)
    }

    /// Converts the first failed check into a [`SpecError`].
    pub fn into_result(self) -> Result<ValidationReport, SpecError> {
        match self.first_failure() {
            Some(c) => Err(SpecError::Invalid {
                check: c.name.to_string(),
                detail: c.detail.clone(),
            }),
            None => Ok(self),
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = match c.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Warn => "WARN",
                CheckStatus::Unchecked => "SKIP",
            };
            writeln!(f, "{tag:<5}{:<15}{}", c.name, c.detail)?;
        }
        Ok(())
    }
}

/// A frame-presented manifold `(M^n, phi, xi, eta, g)`.
///
/// `eta` is never stored; it is always derived from `g` and `xi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameSpec {
    name: Option<String>,
    metric: Matrix,
    /// `structure.get(k, i, j)` is `C^k_ij` with `[f_i, f_j] = sum_k C^k_ij f_k`.
    structure: Tensor3,
    /// `phi.get(i, j)` is `phi^i_j` with `phi f_j = sum_i phi^i_j f_i`.
    phi: Matrix,
    xi: VectorField,
    assume_nonzero: BTreeSet<Sym>,
}

impl FrameSpec {
    /// Assembles a spec, checking only that every piece has dimension `n`.
    pub fn new(
        metric: Matrix,
        structure: Tensor3,
        phi: Matrix,
        xi: VectorField,
        assume_nonzero: BTreeSet<Sym>,
    ) -> Result<Self, SpecError> {
        let n = metric.dim();
        if n < 2 {
            return Err(SpecError::TooSmall(n));
        }
        let dims = [
            ("structure constants", structure.dim()),
            ("phi", phi.dim()),
            ("xi", xi.dim()),
        ];
        for (field, found) in dims {
            if found != n {
                return Err(SpecError::Dimension {
                    field: field.to_string(),
                    expected: n,
                    found,
                });
            }
        }
        Ok(FrameSpec {
            name: None,
            metric,
            structure,
            phi,
            xi,
            assume_nonzero,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.metric.dim()
    }

    pub fn metric(&self) -> &Matrix {
        &self.metric
    }

    pub fn structure(&self) -> &Tensor3 {
        &self.structure
    }

    pub fn phi(&self) -> &Matrix {
        &self.phi
    }

    pub fn xi(&self) -> &VectorField {
        &self.xi
    }

    pub fn assume_nonzero(&self) -> &BTreeSet<Sym> {
        &self.assume_nonzero
    }

    pub fn with_xi(mut self, xi: VectorField) -> Self {
        assert_eq!(xi.dim(), self.dim());
        self.xi = xi;
        self
    }

    /// Every symbol that appears in the spec.
    pub fn symbols(&self) -> BTreeSet<Sym> {
        let n = self.dim();
        let mut out = BTreeSet::new();
        for (_, v) in self.metric.entries().chain(self.phi.entries()) {
            out.extend(v.symbols());
        }
        for (_, v) in self.structure.nonzero() {
            out.extend(v.symbols());
        }
        for i in 0..n {
            out.extend(self.xi.0[i].symbols());
        }
        out
    }

    pub fn basis(&self, i: usize) -> VectorField {
        VectorField::basis(self.dim(), i)
    }

    /// `[f_i, f_j]` as a frame vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> VectorField {
        VectorField((0..self.dim()).map(|k| self.structure.get(k, i, j).clone()).collect())
    }

    /// `[X, Y]^k = sum_ij X^i Y^j C^k_ij` for frame-constant fields.
    pub fn lie_bracket(&self, x: &VectorField, y: &VectorField) -> VectorField {
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
                    let c = self.structure.get(k, i, j);
                    if !c.is_zero() {
                        out.0[k] = &out.0[k] + &(&xy * c);
                    }
                }
            }
        }
        out
    }

    pub fn g(&self, x: &VectorField, y: &VectorField) -> ScalarExpr {
        self.metric.pair(x, y)
    }

    pub fn apply_phi(&self, x: &VectorField) -> VectorField {
        self.phi.apply(x)
    }

    /// `eta_i = g(f_i, xi) = sum_j g_ij xi^j`.
    pub fn eta(&self) -> CoVector {
        let n = self.dim();
        CoVector(
            (0..n)
                .map(|i| (0..n).map(|j| self.metric.get(i, j) * &self.xi.0[j]).sum())
                .collect(),
        )
    }

    /// `(L_V g)_ij = -g([V, f_i], f_j) - g(f_i, [V, f_j])`; the metric
    /// components are constant so no derivative term appears.
    pub fn lie_derivative_metric(&self, v: &VectorField) -> Matrix {
        let n = self.dim();
        let brackets: Vec<VectorField> = (0..n).map(|i| self.lie_bracket(v, &self.basis(i))).collect();
        let lowered: Vec<Vec<ScalarExpr>> = brackets
            .iter()
            .map(|b| (0..n).map(|j| self.g(b, &self.basis(j))).collect())
            .collect();
        Matrix::from_fn(n, |i, j| -(&lowered[i][j] + &lowered[j][i]))
    }

    pub fn inverse_metric(&self) -> Result<Matrix, SpecError> {
        self.metric.inverse().ok_or(SpecError::SingularMetric)
    }

    /// Jacobi sum `sum_m (C^m_ij C^l_mk + C^m_jk C^l_mi + C^m_ki C^l_mj)`
    /// for every `(i, j, k, l)` where it does not vanish.
    pub fn jacobi_violations(&self) -> Vec<([usize; 4], ScalarExpr)> {
        let n = self.dim();
        let c = &self.structure;
        let mut out = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    for l in 0..n {
                        let mut s = ScalarExpr::zero();
                        for m in 0..n {
                            for (a, b, d) in [(i, j, k), (j, k, i), (k, i, j)] {
                                let x = c.get(m, a, b);
                                let y = c.get(l, m, d);
                                if !x.is_zero() && !y.is_zero() {
                                    s = &s + &(x * y);
                                }
                            }
                        }
                        if !s.is_zero() {
                            out.push(([i, j, k, l], s));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn validate(&self) -> ValidationReport {
        let n = self.dim();
        let mut checks = Vec::new();

        let asym: Vec<String> = (0..n)
            .flat_map(|i| (i..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.metric.get(i, j) != self.metric.get(j, i))
            .map(|(i, j)| format!("g[{}][{}] != g[{}][{}]", i + 1, j + 1, j + 1, i + 1))
            .collect();
        checks.push(verdict("symmetry", asym, "metric is symmetric"));

        let det = self.metric.determinant();
        checks.push(if det.is_zero() {
            Check {
                name: "nondegeneracy",
                status: CheckStatus::Fail,
                detail: "det(g) = 0".into(),
            }
        } else {
            Check {
                name: "nondegeneracy",
                status: CheckStatus::Pass,
                detail: format!("det(g) = {det}"),
            }
        });

        let mut bad = Vec::new();
        for k in 0..n {
            for i in 0..n {
                for j in i..n {
                    let s = self.structure.get(k, i, j) + self.structure.get(k, j, i);
                    if !s.is_zero() {
                        bad.push(format!("C^{}_{}{} + C^{}_{}{} = {s}", k + 1, i + 1, j + 1, k + 1, j + 1, i + 1));
                    }
                }
            }
        }
        checks.push(verdict("antisymmetry", bad, "C^k_ij = -C^k_ji"));

        let jac: Vec<String> = self
            .jacobi_violations()
            .into_iter()
            .map(|([i, j, k, l], s)| format!("(i,j,k,l)=({},{},{},{}): {s}", i + 1, j + 1, k + 1, l + 1))
            .collect();
        checks.push(verdict("jacobi", jac, "Jacobi identity holds"));

        checks.push(self.signature_check(&det));
        checks.push(self.phi_rank_check());

        ValidationReport { checks }
    }

    fn signature_check(&self, det: &ScalarExpr) -> Check {
        if det.is_zero() {
            return Check {
                name: "signature",
                status: CheckStatus::Unchecked,
                detail: "metric is degenerate".into(),
            };
        }
        match signature(&self.metric) {
            Some((pos, neg)) if neg == 1 => Check {
                name: "signature",
                status: CheckStatus::Pass,
                detail: format!("Lorentzian ({pos},{neg})"),
            },
            Some((pos, neg)) => Check {
                name: "signature",
                status: CheckStatus::Warn,
                detail: format!("signature ({pos},{neg}) is not Lorentzian"),
            },
            None => Check {
                name: "signature",
                status: CheckStatus::Warn,
                detail: "symbolic metric entries; signature not checked".into(),
            },
        }
    }

    fn phi_rank_check(&self) -> Check {
        let n = self.dim();
        match numeric_rank(&self.phi) {
            Some(r) if r + 1 == n => Check {
                name: "phi_rank",
                status: CheckStatus::Pass,
                detail: format!("rank phi = {r} = n-1"),
            },
            Some(r) => Check {
                name: "phi_rank",
                status: CheckStatus::Warn,
                detail: format!("rank phi = {r}, expected {}", n - 1),
            },
            None => Check {
                name: "phi_rank",
                status: CheckStatus::Unchecked,
                detail: "symbolic phi entries; rank unchecked".into(),
            },
        }
    }

    /// Validates and returns the report, failing on the first hard violation.
    pub fn validated(&self) -> Result<ValidationReport, SpecError> {
        self.validate().into_result()
    }
}

fn verdict(name: &'static str, failures: Vec<String>, ok: &str) -> Check {
    if failures.is_empty() {
        Check {
            name,
            status: CheckStatus::Pass,
            detail: ok.to_string(),
        }
    } else {
        Check {
            name,
            status: CheckStatus::Fail,
            detail: failures.join("; "),
        }
    }
}

fn numeric(m: &Matrix) -> Option<Vec<Vec<BigRational>>> {
    let n = m.dim();
    (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j).as_rational()).collect())
        .collect()
}

/// Characteristic polynomial coefficients `c_0..c_n` (monic) of a rational
/// matrix by Faddeev-LeVerrier.
pub fn characteristic_polynomial(a: &[Vec<BigRational>]) -> Vec<BigRational> {
    let n = a.len();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::from_integer(1.into());
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = BigRational::zero();
                for t in 0..n {
                    s += &a[i][t] * &m[t][j];
                }
                if i == j {
                    s += &coeffs[n - k + 1];
                }
                next[i][j] = s;
            }
        }
        m = next;
        let mut tr = BigRational::zero();
        for i in 0..n {
            for t in 0..n {
                tr += &a[i][t] * &m[t][i];
            }
        }
        coeffs[n - k] = -tr / BigRational::from_integer((k as i64).into());
    }
    coeffs
}

fn sign_changes<'a>(coeffs: impl Iterator<Item = &'a BigRational>) -> usize {
    let mut last = 0;
    let mut changes = 0;
    for c in coeffs {
        let s = if c.is_positive() {
            1
        } else if c.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

/// `(positive, negative)` eigenvalue counts of a numeric symmetric matrix.
/// The characteristic polynomial of a real symmetric matrix has only real
/// roots, so Descartes' rule of signs counts them exactly.
pub fn signature(m: &Matrix) -> Option<(usize, usize)> {
    let a = numeric(m)?;
    let p = characteristic_polynomial(&a);
    let pos = sign_changes(p.iter());
    let flipped: Vec<BigRational> = p
        .iter()
        .enumerate()
        .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
        .collect();
    let neg = sign_changes(flipped.iter());
    Some((pos, neg))
}

/// Rank of a numeric matrix by exact Gaussian elimination.
pub fn numeric_rank(m: &Matrix) -> Option<usize> {
    let mut a = numeric(m)?;
    let n = a.len();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..n).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in 0..n {
            if r != rank && !a[r][col].is_zero() {
                let f = &a[r][col] / &a[rank][col];
                for c in col..n {
                    let v = &a[rank][c] * &f;
                    a[r][c] -= v;
                }
            }
        }
        rank += 1;
    }
    Some(rank)
}
