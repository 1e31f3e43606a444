//! Exact polynomial and polynomial-matrix arithmetic over the rationals.

mod gcd;
mod matrix;
mod monomial;
mod poly;

pub use gcd::{gcd, gcd_many};
pub(crate) use gcd::pseudo_remainder;
pub use matrix::{mat_inverse, PolyMatrix};
pub use monomial::{Monomial, Ring, MAX_VARS};
pub use poly::Poly;

use num_rational::BigRational;
use thiserror::Error;

/// Exact rational scalar, always in lowest terms with positive denominator.
pub type Scalar = BigRational;

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(v.into())
}

pub fn ratio(n: i64, d: i64) -> Scalar {
    Scalar::new(n.into(), d.into())
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("undefined gcd of zero family")]
    ZeroGcd,
    #[error("degree {degree} exceeds homogenization degree {target}")]
    DegreeTooHigh { degree: u32, target: u32 },
    #[error("not invertible over the polynomial ring")]
    NotInvertible,
    #[error("matrix is not square")]
    NotSquare,
}

/// `u^d p(s/u, t/u)`: lifts a polynomial in k[s,t] to a form of degree `d`
/// in k[s,t,u].
pub fn homogenize(p: &Poly, d: u32) -> Result<Poly, ArithError> {
    assert_eq!(p.ring(), Ring::St, "homogenize expects a polynomial in s, t");
    if let Some(deg) = p.degree() {
        if deg > d {
            return Err(ArithError::DegreeTooHigh { degree: deg, target: d });
        }
    }
    Ok(Poly::from_terms(
        Ring::Stu,
        p.terms().iter().map(|(m, c)| {
            let e = m.exponents();
            (Monomial::new(&[e[0], e[1], d - m.degree()]), c.clone())
        }),
    ))
}

/// Sets u = 1.
pub fn dehomogenize(p: &Poly) -> Poly {
    assert_eq!(p.ring(), Ring::Stu, "dehomogenize expects a polynomial in s, t, u");
    Poly::from_terms(
        Ring::St,
        p.terms().iter().map(|(m, c)| {
            let e = m.exponents();
            (Monomial::new(&[e[0], e[1]]), c.clone())
        }),
    )
}

pub fn dehomogenize_matrix(m: &PolyMatrix) -> PolyMatrix {
    let mut out = PolyMatrix::zeros(Ring::St, m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.set(i, j, dehomogenize(m.get(i, j)));
        }
    }
    out
}
