//! Multivariate polynomial gcd over the rationals.
//!
//! Recursive primitive PRS: pick the alphabetically first symbol as main
//! variable, split off the content (gcd of coefficients, computed
//! recursively in one fewer variable) and run a primitive pseudo-remainder
//! sequence on the primitive parts. The result is the true gcd, normalized
//! to integer coefficients with unit content and positive leading
//! coefficient, so reduced fractions are unique.

use num_rational::BigRational;
use num_traits::One;

use super::poly::{Poly, Sym};

pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.primitive_normalized();
    }
    if b.is_zero() {
        return a.primitive_normalized();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let mc = a.monomial_content().gcd(&b.monomial_content());
    let (a, b) = if mc.is_one() {
        (a.clone(), b.clone())
    } else {
        let m = Poly::term(BigRational::one(), mc.clone());
        (
            a.div_exact(&m).expect("monomial content divides"),
            b.div_exact(&m).expect("monomial content divides"),
        )
    };
    let g = gcd_no_monomial(&a, &b);
    g.mul_monomial(&mc).primitive_normalized()
}

fn gcd_no_monomial(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.primitive_normalized();
    }
    if b.is_zero() {
        return a.primitive_normalized();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a == b {
        return a.primitive_normalized();
    }
    let sa = a.symbols();
    let sb = b.symbols();
    let v = sa.union(&sb).next().expect("non-constant").clone();
    match (sa.contains(&v), sb.contains(&v)) {
        (true, false) => return gcd_with_coefficients(b, a, &v),
        (false, true) => return gcd_with_coefficients(a, b, &v),
        _ => {}
    }
    let ca = content_in(a, &v);
    let cb = content_in(b, &v);
    let c = gcd_no_monomial(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let g = primitive_prs(pa, pb, &v);
    (&c * &g).primitive_normalized()
}

/// gcd of `free` (which does not involve `v`) with `other`: this is the gcd
/// of `free` with every coefficient of `other` in `v`.
fn gcd_with_coefficients(free: &Poly, other: &Poly, v: &Sym) -> Poly {
    let mut g = free.clone();
    for c in other.coefficients_in(v) {
        if c.is_zero() {
            continue;
        }
        g = gcd_no_monomial(&g, &c);
        if g.is_constant() {
            return Poly::one();
        }
    }
    g.primitive_normalized()
}

/// gcd of the coefficients of `p` viewed as a polynomial in `v`.
pub fn content_in(p: &Poly, v: &Sym) -> Poly {
    let mut g = Poly::zero();
    for c in p.coefficients_in(v) {
        if c.is_zero() {
            continue;
        }
        g = if g.is_zero() {
            c.primitive_normalized()
        } else {
            gcd_no_monomial(&g, &c)
        };
        if g.is_constant() {
            return Poly::one();
        }
    }
    g
}

fn primitive_part_in(p: &Poly, v: &Sym) -> Poly {
    let c = content_in(p, v);
    p.div_exact(&c).expect("content divides").primitive_normalized()
}

fn primitive_prs(a: Poly, b: Poly, v: &Sym) -> Poly {
    let (mut a, mut b) = if a.degree_in(v) >= b.degree_in(v) {
        (a, b)
    } else {
        (b, a)
    };
    loop {
        let r = pseudo_remainder(&a, &b, v);
        if r.is_zero() {
            return primitive_part_in(&b, v);
        }
        if r.degree_in(v) == 0 {
            return Poly::one();
        }
        a = b;
        b = primitive_part_in(&r, v);
    }
}

/// Pseudo-remainder of `a` by `b` with respect to `v`.
pub fn pseudo_remainder(a: &Poly, b: &Poly, v: &Sym) -> Poly {
    let db = b.degree_in(v);
    let lb = b.leading_coeff_in(v);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = r.leading_coeff_in(v);
        let shift = super::poly::Monomial::var(v.clone(), dr - db);
        r = &(&lb * &r) - &(&lr * &b.mul_monomial(&shift));
    }
    r
}
