//! Dense square arrays of [`ScalarExpr`] indexed by frame indices.

use std::fmt;

use crate::algebra::{AlgebraError, Bindings, ScalarExpr};

/// Frame components `v^i` of a vector field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VectorField(pub Vec<ScalarExpr>);

/// Frame components `w_i = w(f_i)` of a one-form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoVector(pub Vec<ScalarExpr>);

impl VectorField {
    pub fn zero(n: usize) -> Self {
        VectorField(vec![ScalarExpr::zero(); n])
    }

    /// The frame vector `f_i` (0-based).
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = VectorField::zero(n);
        v.0[i] = ScalarExpr::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(ScalarExpr::is_zero)
    }

    pub fn scale(&self, c: &ScalarExpr) -> Self {
        VectorField(self.0.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, other: &VectorField) -> Self {
        VectorField(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &VectorField) -> Self {
        VectorField(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl CoVector {
    pub fn zero(n: usize) -> Self {
        CoVector(vec![ScalarExpr::zero(); n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, v: &VectorField) -> ScalarExpr {
        self.0.iter().zip(&v.0).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, c: &ScalarExpr) -> Self {
        CoVector(self.0.iter().map(|x| x * c).collect())
    }
}

/// Row-major `n x n` matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    n: usize,
    data: Vec<ScalarExpr>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![ScalarExpr::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, |i, j| if i == j { ScalarExpr::one() } else { ScalarExpr::zero() })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> ScalarExpr) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<ScalarExpr>>) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(Matrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn diagonal(entries: &[ScalarExpr]) -> Self {
        Matrix::from_fn(entries.len(), |i, j| {
            if i == j {
                entries[i].clone()
            } else {
                ScalarExpr::zero()
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &ScalarExpr {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: ScalarExpr) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<ScalarExpr>> {
        self.data.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(ScalarExpr::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        Matrix::from_fn(self.n, |i, j| (0..self.n).map(|k| self.get(i, k) * other.get(k, j)).sum())
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        Matrix::from_fn(self.n, |i, j| self.get(i, j) + other.get(i, j))
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        Matrix::from_fn(self.n, |i, j| self.get(i, j) - other.get(i, j))
    }

    pub fn scale(&self, c: &ScalarExpr) -> Matrix {
        Matrix::from_fn(self.n, |i, j| self.get(i, j) * c)
    }

    pub fn trace(&self) -> ScalarExpr {
        (0..self.n).map(|i| self.get(i, i).clone()).sum()
    }

    /// `M v`, i.e. `(M v)^i = sum_j M[i][j] v^j`.
    pub fn apply(&self, v: &VectorField) -> VectorField {
        VectorField((0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j) * &v.0[j]).sum()).collect())
    }

    /// Bilinear form `sum_ij M[i][j] x^i y^j`.
    pub fn pair(&self, x: &VectorField, y: &VectorField) -> ScalarExpr {
        let mut acc = ScalarExpr::zero();
        for i in 0..self.n {
            if x.0[i].is_zero() {
                continue;
            }
            for j in 0..self.n {
                if y.0[j].is_zero() {
                    continue;
                }
                acc = &acc + &(&(&x.0[i] * self.get(i, j)) * &y.0[j]);
            }
        }
        acc
    }

    pub fn is_numeric(&self) -> bool {
        self.data.iter().all(ScalarExpr::is_constant)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &ScalarExpr)> {
        self.data.iter().enumerate().map(|(k, v)| ((k / self.n, k % self.n), v))
    }

    /// Exact determinant by cofactor expansion.
    pub fn determinant(&self) -> ScalarExpr {
        let idx: Vec<usize> = (0..self.n).collect();
        det_minor(self, 0, &idx)
    }

    /// Exact inverse through the adjugate; `None` for a singular matrix.
    pub fn inverse(&self) -> Option<Matrix> {
        let det = self.determinant();
        if det.is_zero() {
            return None;
        }
        let n = self.n;
        if n == 1 {
            return Some(Matrix::from_fn(1, |_, _| ScalarExpr::one() / &det));
        }
        let diagonal = (0..n).all(|i| (0..n).all(|j| i == j || self.get(i, j).is_zero()));
        if diagonal {
            return Some(Matrix::from_fn(n, |i, j| {
                if i == j {
                    ScalarExpr::one() / self.get(i, i)
                } else {
                    ScalarExpr::zero()
                }
            }));
        }
        Some(Matrix::from_fn(n, |i, j| {
            // inverse[i][j] = cofactor(j, i) / det
            let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            let minor = Matrix::from_fn(n - 1, |a, b| self.get(rows[a], cols[b]).clone());
            let c = minor.determinant();
            let c = if (i + j) % 2 == 0 { c } else { -c };
            &c / &det
        }))
    }

    /// Rank over the field of rational functions in the entry symbols, i.e.
    /// for generic values of the symbols.
    pub fn generic_rank(&self) -> usize {
        let n = self.n;
        let mut rows = self.rows();
        let mut rank = 0;
        for col in 0..n {
            let Some(p) = (rank..n).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank][col].clone();
            for r in (rank + 1)..n {
                if rows[r][col].is_zero() {
                    continue;
                }
                let f = &rows[r][col] / &pivot;
                for c in col..n {
                    let v = &rows[r][c] - &(&f * &rows[rank][c]);
                    rows[r][c] = v;
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn substitute(&self, b: &Bindings) -> Result<Matrix, AlgebraError> {
        Ok(Matrix {
            n: self.n,
            data: self.data.iter().map(|x| x.substitute(b)).collect::<Result<_, _>>()?,
        })
    }
}

fn det_minor(m: &Matrix, row: usize, cols: &[usize]) -> ScalarExpr {
    if cols.is_empty() {
        return ScalarExpr::one();
    }
    if cols.len() == 1 {
        return m.get(row, cols[0]).clone();
    }
    let mut acc = ScalarExpr::zero();
    for (k, &c) in cols.iter().enumerate() {
        let entry = m.get(row, c);
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = entry * &det_minor(m, row + 1, &rest);
        acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows().iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Rank-3 array `T[a][b][c]`, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tensor3 {
    n: usize,
    data: Vec<ScalarExpr>,
}

impl Tensor3 {
    pub fn zeros(n: usize) -> Self {
        Tensor3 {
            n,
            data: vec![ScalarExpr::zero(); n * n * n],
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize) -> ScalarExpr) -> Self {
        let mut data = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    data.push(f(a, b, c));
                }
            }
        }
        Tensor3 { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> &ScalarExpr {
        &self.data[(a * self.n + b) * self.n + c]
    }

    pub fn set(&mut self, a: usize, b: usize, c: usize, v: ScalarExpr) {
        self.data[(a * self.n + b) * self.n + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(ScalarExpr::is_zero)
    }

    /// Non-zero entries with their (0-based) indices in lexicographic order.
    pub fn nonzero(&self) -> impl Iterator<Item = ([usize; 3], &ScalarExpr)> {
        let n = self.n;
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(k, v)| ([k / (n * n), (k / n) % n, k % n], v))
    }

    pub fn substitute(&self, b: &Bindings) -> Result<Tensor3, AlgebraError> {
        Ok(Tensor3 {
            n: self.n,
            data: self.data.iter().map(|x| x.substitute(b)).collect::<Result<_, _>>()?,
        })
    }
}

/// Rank-4 array `T[a][b][c][d]`, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tensor4 {
    n: usize,
    data: Vec<ScalarExpr>,
}

impl Tensor4 {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize, usize) -> ScalarExpr) -> Self {
        let mut data = Vec::with_capacity(n.pow(4));
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        data.push(f(a, b, c, d));
                    }
                }
            }
        }
        Tensor4 { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, a: usize, b: usize, c: usize, d: usize) -> &ScalarExpr {
        &self.data[((a * self.n + b) * self.n + c) * self.n + d]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(ScalarExpr::is_zero)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = ([usize; 4], &ScalarExpr)> {
        let n = self.n;
        self.data.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(move |(k, v)| {
            ([k / (n * n * n), (k / (n * n)) % n, (k / n) % n, k % n], v)
        })
    }

    pub fn substitute(&self, b: &Bindings) -> Result<Tensor4, AlgebraError> {
        Ok(Tensor4 {
            n: self.n,
            data: self.data.iter().map(|x| x.substitute(b)).collect::<Result<_, _>>()?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_expr;

    fn m(rows: &[&[&str]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|s| parse_expr(s).unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn determinant_and_inverse() {
        let g = m(&[&["2", "1", "0"], &["1", "3", "1"], &["0", "1", "4"]]);
        assert_eq!(g.determinant(), ScalarExpr::int(18));
        let inv = g.inverse().unwrap();
        assert_eq!(g.mul(&inv), Matrix::identity(3));
    }

    #[test]
    fn symbolic_inverse() {
        let g = m(&[&["a", "b"], &["b", "c"]]);
        let inv = g.inverse().unwrap();
        assert_eq!(inv.mul(&g), Matrix::identity(2));
        assert_eq!(inv.get(0, 1), &parse_expr("-b/(a*c - b^2)").unwrap());
    }

    #[test]
    fn singular_has_no_inverse() {
        assert!(m(&[&["1", "2"], &["2", "4"]]).inverse().is_none());
    }

    #[test]
    fn generic_rank_counts() {
        assert_eq!(m(&[&["1", "2"], &["2", "4"]]).generic_rank(), 1);
        assert_eq!(m(&[&["a", "0"], &["0", "0"]]).generic_rank(), 1);
        assert_eq!(m(&[&["a", "b"], &["b", "a"]]).generic_rank(), 2);
        assert_eq!(Matrix::zeros(3).generic_rank(), 0);
    }
}
