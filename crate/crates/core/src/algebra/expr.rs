use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::gcd::gcd;
use super::poly::{Monomial, Poly, Sym};
use super::AlgebraError;

/// Simultaneous substitution map.
pub type Bindings = BTreeMap<Sym, ScalarExpr>;

/// A rational function `num / den` over the rationals, kept canonical:
///
/// * `num` and `den` are coprime (true multivariate gcd);
/// * both have integer coefficients whose joint content is one;
/// * the leading coefficient of `den` in graded-lex order is positive;
/// * zero is `0 / 1`.
///
/// Structural equality is therefore mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ScalarExpr {
    num: Poly,
    den: Poly,
}

impl ScalarExpr {
    pub fn zero() -> Self {
        ScalarExpr {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        ScalarExpr::int(1)
    }

    pub fn int(n: i64) -> Self {
        ScalarExpr::from_poly(Poly::from_int(n))
    }

    pub fn rational(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        ScalarExpr::from_poly(Poly::constant(BigRational::new(numer.into(), denom.into())))
    }

    pub fn from_rational(c: BigRational) -> Self {
        ScalarExpr::from_poly(Poly::constant(c))
    }

    pub fn sym(name: &str) -> Self {
        ScalarExpr::from_poly(Poly::var(Sym::new(name)))
    }

    pub fn from_sym(sym: Sym) -> Self {
        ScalarExpr::from_poly(Poly::var(sym))
    }

    pub fn from_poly(p: Poly) -> Self {
        ScalarExpr::canonical(p, Poly::one())
    }

    /// Builds `num / den` in canonical form.
    pub fn from_parts(num: Poly, den: Poly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(ScalarExpr::canonical(num, den))
    }

    fn canonical(num: Poly, den: Poly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return ScalarExpr::zero();
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        let lcm = num.denominator_lcm().lcm(&den.denominator_lcm());
        let num = num.scale(&BigRational::from_integer(lcm.clone()));
        let den = den.scale(&BigRational::from_integer(lcm));
        let content = num.numerator_gcd().gcd(&den.numerator_gcd());
        let mut factor = BigRational::new(BigInt::one(), content);
        if den.leading_coeff().is_some_and(|c| c.is_negative()) {
            factor = -factor;
        }
        ScalarExpr {
            num: num.scale(&factor),
            den: den.scale(&factor),
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n / d)
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn symbols(&self) -> BTreeSet<Sym> {
        let mut s = self.num.symbols();
        s.extend(self.den.symbols());
        s
    }

    pub fn try_div(&self, rhs: &ScalarExpr) -> Result<ScalarExpr, AlgebraError> {
        if rhs.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(ScalarExpr::canonical(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn recip(&self) -> Result<ScalarExpr, AlgebraError> {
        ScalarExpr::one().try_div(self)
    }

    pub fn pow(&self, e: i32) -> Result<ScalarExpr, AlgebraError> {
        let p = ScalarExpr::canonical(self.num.pow(e.unsigned_abs()), self.den.pow(e.unsigned_abs()));
        if e < 0 {
            p.recip()
        } else {
            Ok(p)
        }
    }

    pub fn scale_int(&self, k: i64) -> ScalarExpr {
        self * &ScalarExpr::int(k)
    }

    /// Simultaneous substitution of symbols by expressions.
    pub fn substitute(&self, bindings: &Bindings) -> Result<ScalarExpr, AlgebraError> {
        if bindings.is_empty() || self.symbols().iter().all(|s| !bindings.contains_key(s)) {
            return Ok(self.clone());
        }
        let num = substitute_poly(&self.num, bindings);
        let den = substitute_poly(&self.den, bindings);
        num.try_div(&den)
    }
}

fn substitute_poly(p: &Poly, bindings: &Bindings) -> ScalarExpr {
    let mut acc = ScalarExpr::zero();
    for (m, c) in p.terms() {
        let mut rest = Vec::new();
        let mut term = ScalarExpr::from_rational(c.clone());
        for (s, e) in m.factors() {
            match bindings.get(s) {
                Some(v) => {
                    term = &term * &v.pow(*e as i32).expect("non-negative power");
                }
                None => rest.push((s.clone(), *e)),
            }
        }
        if !rest.is_empty() {
            term = &term * &ScalarExpr::from_poly(Poly::term(BigRational::one(), Monomial::from_pairs(rest)));
        }
        acc = &acc + &term;
    }
    acc
}

impl Default for ScalarExpr {
    fn default() -> Self {
        ScalarExpr::zero()
    }
}

impl From<i64> for ScalarExpr {
    fn from(n: i64) -> Self {
        ScalarExpr::int(n)
    }
}

impl From<Poly> for ScalarExpr {
    fn from(p: Poly) -> Self {
        ScalarExpr::from_poly(p)
    }
}

fn needs_parens(p: &Poly) -> bool {
    if p.num_terms() > 1 {
        return true;
    }
    match p.leading_term() {
        Some((m, c)) => !(m.is_one() || (c.is_one() && m.factors().len() == 1)),
        None => false,
    }
}

/// `num`, `num/d` for an integer denominator, or `(num)/(den)`; numerators
/// are parenthesized only when they have several terms and denominators only
/// when they are more than a single power of one symbol.
impl fmt::Display for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.num_terms() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if needs_parens(&self.den) {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}

impl fmt::Debug for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

impl Add for &ScalarExpr {
    type Output = ScalarExpr;
    fn add(self, rhs: &ScalarExpr) -> ScalarExpr {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return ScalarExpr {
                    num: &self.num + &rhs.num,
                    den: Poly::one(),
                };
            }
            return ScalarExpr::canonical(&self.num + &rhs.num, self.den.clone());
        }
        ScalarExpr::canonical(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &ScalarExpr {
    type Output = ScalarExpr;
    fn sub(self, rhs: &ScalarExpr) -> ScalarExpr {
        self + &(-rhs)
    }
}

impl Mul for &ScalarExpr {
    type Output = ScalarExpr;
    fn mul(self, rhs: &ScalarExpr) -> ScalarExpr {
        if self.is_zero() || rhs.is_zero() {
            return ScalarExpr::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return ScalarExpr {
                num: &self.num * &rhs.num,
                den: Poly::one(),
            };
        }
        ScalarExpr::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Panics on a zero divisor; use [`ScalarExpr::try_div`] when the divisor
/// may vanish.
impl Div for &ScalarExpr {
    type Output = ScalarExpr;
    fn div(self, rhs: &ScalarExpr) -> ScalarExpr {
        self.try_div(rhs).expect("division by the zero expression")
    }
}

impl Neg for &ScalarExpr {
    type Output = ScalarExpr;
    fn neg(self) -> ScalarExpr {
        ScalarExpr {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for ScalarExpr {
    type Output = ScalarExpr;
    fn neg(self) -> ScalarExpr {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for ScalarExpr {
            type Output = ScalarExpr;
            fn $f(self, rhs: ScalarExpr) -> ScalarExpr {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&ScalarExpr> for ScalarExpr {
            type Output = ScalarExpr;
            fn $f(self, rhs: &ScalarExpr) -> ScalarExpr {
                (&self).$f(rhs)
            }
        }
        impl $tr<ScalarExpr> for &ScalarExpr {
            type Output = ScalarExpr;
            fn $f(self, rhs: ScalarExpr) -> ScalarExpr {
                self.$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl std::iter::Sum for ScalarExpr {
    fn sum<I: Iterator<Item = ScalarExpr>>(iter: I) -> ScalarExpr {
        iter.fold(ScalarExpr::zero(), |a, b| &a + &b)
    }
}
