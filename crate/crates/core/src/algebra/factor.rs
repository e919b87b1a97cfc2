//! Vanishing conditions for families of residuals.
//!
//! A family of residual expressions vanishes simultaneously wherever the gcd
//! of their numerators does. After dropping powers of symbols that are
//! declared non-zero, that gcd is the reported condition; when it is
//! univariate its rational roots are listed as well.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::expr::ScalarExpr;
use super::gcd::gcd;
use super::poly::{Monomial, Poly, Sym};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyCondition {
    /// Primitive integer polynomial; the condition is `poly = 0`.
    pub poly: Poly,
    /// Rational roots when `poly` involves exactly one symbol.
    pub roots: Option<(Sym, Vec<BigRational>)>,
}

impl PolyCondition {
    /// Common vanishing condition of all `residuals`, ignoring factors that
    /// are powers of symbols in `nonzero`. `None` if the residuals are all
    /// zero or share no non-trivial factor.
    pub fn common(residuals: &[ScalarExpr], nonzero: &BTreeSet<Sym>) -> Option<PolyCondition> {
        let mut g = Poly::zero();
        for r in residuals.iter().filter(|r| !r.is_zero()) {
            g = gcd(&g, r.numer());
            if g.is_one() {
                return None;
            }
        }
        if g.is_zero() {
            return None;
        }
        PolyCondition::from_poly(&g, nonzero)
    }

    /// Condition `p = 0` after removing declared non-zero monomial factors.
    pub fn from_poly(p: &Poly, nonzero: &BTreeSet<Sym>) -> Option<PolyCondition> {
        let mc = p.monomial_content();
        let strip = Monomial::from_pairs(
            mc.factors()
                .iter()
                .filter(|(s, _)| nonzero.contains(s))
                .cloned(),
        );
        let g = p
            .div_exact(&Poly::term(BigRational::one(), strip))
            .expect("monomial content divides")
            .primitive_normalized();
        if g.is_constant() {
            return None;
        }
        let syms = g.symbols();
        let roots = (syms.len() == 1).then(|| {
            let s = syms.into_iter().next().expect("one symbol");
            let r = rational_roots(&g, &s);
            (s, r)
        });
        Some(PolyCondition { poly: g, roots })
    }

    /// True if each residual vanishes at every listed root.
    pub fn roots_annihilate(&self, residuals: &[ScalarExpr]) -> bool {
        let Some((s, roots)) = &self.roots else {
            return true;
        };
        roots.iter().all(|root| {
            let mut b = BTreeMap::new();
            b.insert(s.clone(), ScalarExpr::from_rational(root.clone()));
            residuals
                .iter()
                .all(|r| r.substitute(&b).map(|v| v.is_zero()).unwrap_or(false))
        })
    }
}

impl fmt::Display for PolyCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = 0", self.poly)
    }
}

/// Distinct rational roots of a univariate polynomial in `sym`, ascending.
pub fn rational_roots(p: &Poly, sym: &Sym) -> Vec<BigRational> {
    let p = p.primitive_normalized();
    if p.is_zero() || p.symbols().iter().any(|s| s != sym) {
        return Vec::new();
    }
    let coeffs: Vec<BigInt> = p
        .coefficients_in(sym)
        .into_iter()
        .map(|c| c.as_constant().expect("univariate").to_integer())
        .collect();
    let mut roots = Vec::new();
    let lowest = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if lowest > 0 {
        roots.push(BigRational::zero());
    }
    let coeffs = &coeffs[lowest..];
    if coeffs.len() > 1 {
        let c0 = coeffs[0].abs();
        let cn = coeffs[coeffs.len() - 1].abs();
        for num in divisors(&c0) {
            for den in divisors(&cn) {
                if !num.gcd(&den).is_one() {
                    continue;
                }
                for sign in [1, -1] {
                    let cand = BigRational::new(&num * BigInt::from(sign), den.clone());
                    if horner(coeffs, &cand).is_zero() && !roots.contains(&cand) {
                        roots.push(cand);
                    }
                }
            }
        }
    }
    roots.sort();
    roots
}

fn horner(coeffs: &[BigInt], x: &BigRational) -> BigRational {
    coeffs
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
}

/// Positive divisors. Candidates are only enumerated for moderately sized
/// values; larger coefficients yield no candidate roots.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let Some(n) = n.to_u64().filter(|n| *n > 0 && *n <= 1 << 40) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_expr, parse_poly};

    fn nz(names: &[&str]) -> BTreeSet<Sym> {
        names.iter().map(|n| Sym::new(n)).collect()
    }

    #[test]
    fn roots_of_univariate() {
        let a = Sym::new("a");
        let r = rational_roots(&parse_poly("a^2 - 1").unwrap(), &a);
        assert_eq!(r, vec![BigRational::from_integer((-1).into()), BigRational::one()]);
        let r = rational_roots(&parse_poly("2*a^3 - a^2").unwrap(), &a);
        assert_eq!(r, vec![BigRational::zero(), BigRational::new(1.into(), 2.into())]);
        assert!(rational_roots(&parse_poly("a^2 + 1").unwrap(), &a).is_empty());
    }

    #[test]
    fn common_condition_strips_nonzero_symbols() {
        let res = vec![parse_expr("6*beta - 6*beta*a^2").unwrap()];
        let c = PolyCondition::common(&res, &nz(&["beta"])).unwrap();
        assert_eq!(c.to_string(), "a^2 - 1 = 0");
        assert!(c.roots_annihilate(&res));
    }

    #[test]
    fn condition_on_monomial_residual() {
        let res = vec![parse_expr("2*a").unwrap(), parse_expr("-2*a").unwrap()];
        let c = PolyCondition::common(&res, &nz(&[])).unwrap();
        assert_eq!(c.to_string(), "a = 0");
        assert!(PolyCondition::common(&res, &nz(&["a"])).is_none());
    }

    #[test]
    fn coprime_residuals_have_no_condition() {
        let res = vec![parse_expr("a - 1").unwrap(), parse_expr("a + 1").unwrap()];
        assert!(PolyCondition::common(&res, &nz(&[])).is_none());
        assert!(PolyCondition::common(&[ScalarExpr::int(2)], &nz(&[])).is_none());
    }

    #[test]
    fn multivariate_condition_has_no_roots() {
        let res = vec![parse_expr("(a - b)*c").unwrap(), parse_expr("(a - b)/d").unwrap()];
        let c = PolyCondition::common(&res, &nz(&[])).unwrap();
        assert_eq!(c.to_string(), "a - b = 0");
        assert!(c.roots.is_none());
    }
}
