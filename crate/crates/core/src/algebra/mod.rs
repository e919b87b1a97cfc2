//! Exact arithmetic for multivariate rational functions over the rationals.
//!
//! [`ScalarExpr`] is the only scalar type the engine uses. Every value is
//! held in a canonical reduced form (full multivariate gcd, not just content
//! and monomial factors), so `==` decides mathematical equality and
//! [`ScalarExpr::is_zero`] decides whether an identity holds.

mod expr;
mod factor;
mod gcd;
mod parse;
mod poly;

use thiserror::Error;

pub use expr::{Bindings, ScalarExpr};
pub use factor::{rational_roots, PolyCondition};
pub use gcd::gcd;
pub use parse::{parse_expr, parse_poly};
pub use poly::{Monomial, Poly, Sym};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },
}
