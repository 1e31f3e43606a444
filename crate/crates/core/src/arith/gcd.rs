//! Multivariate gcd over the rationals by recursive content / primitive-part
//! reduction and primitive pseudo-remainder sequences.

use num_traits::Zero;

use super::poly::Poly;
use super::{ArithError, Scalar};

/// Monic gcd of two polynomials. `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    assert_eq!(a.ring(), b.ring(), "ring mismatch in gcd");
    let vars: Vec<usize> = (0..a.ring().nvars())
        .filter(|&v| a.uses_var(v) || b.uses_var(v))
        .collect();
    gcd_in(a, b, &vars).monic()
}

/// Gcd of a nonempty family; the result is monic under grevlex.
pub fn gcd_many(ps: &[Poly]) -> Result<Poly, ArithError> {
    let first = ps.first().ok_or(ArithError::ZeroGcd)?;
    let mut g = Poly::zero(first.ring());
    for p in ps {
        if g.is_one() {
            break;
        }
        g = gcd(&g, p);
    }
    if g.is_zero() {
        return Err(ArithError::ZeroGcd);
    }
    Ok(g)
}

fn gcd_in(a: &Poly, b: &Poly, vars: &[usize]) -> Poly {
    let ring = a.ring();
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(ring);
    }
    let Some(pos) = vars.iter().position(|&v| a.uses_var(v) || b.uses_var(v)) else {
        return Poly::one(ring);
    };
    let v = vars[pos];
    let rest: Vec<usize> = vars[pos + 1..].to_vec();

    if !a.uses_var(v) {
        return gcd_in(a, &content(b, v, &rest), &rest);
    }
    if !b.uses_var(v) {
        return gcd_in(&content(a, v, &rest), b, &rest);
    }

    let ca = content(a, v, &rest);
    let cb = content(b, v, &rest);
    let c = gcd_in(&ca, &cb, &rest);
    if !rest.is_empty() && coprime_after_specializing(a, b, v, &rest) {
        return c;
    }
    let mut pa = a.div_exact(&ca).expect("content divides");
    let mut pb = b.div_exact(&cb).expect("content divides");
    if pa.degree_in(v) < pb.degree_in(v) {
        std::mem::swap(&mut pa, &mut pb);
    }
    loop {
        let r = pseudo_remainder(&pa, &pb, v);
        if r.is_zero() {
            break;
        }
        if r.degree_in(v) == Some(0) {
            pb = Poly::one(ring);
            break;
        }
        pa = pb;
        pb = primitive_part(&r, v, &rest);
    }
    &c * &pb
}

/// True when some specialization of the variables in `rest` that keeps the
/// degree of `a` in `v` leaves `a` and `b` coprime in `v`. Then any common
/// factor is free of `v` and the gcd is the gcd of the contents.
fn coprime_after_specializing(a: &Poly, b: &Poly, v: usize, rest: &[usize]) -> bool {
    let lc = a.leading_coefficient_in(v);
    for k in 1..=6i64 {
        let point: Vec<(usize, Scalar)> =
            rest.iter().enumerate().map(|(j, &x)| (x, Scalar::from_integer(((k * (j as i64 + 2)) % 7 - 3).into()))).collect();
        let at = |p: &Poly| point.iter().fold(p.clone(), |q, (x, c)| q.evaluate_var(*x, c));
        if at(&lc).is_zero() {
            continue;
        }
        let (sa, sb) = (at(a), at(b));
        return gcd_in(&sa, &sb, &[v]).degree_in(v) == Some(0);
    }
    false
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
pub(crate) fn content(p: &Poly, v: usize, rest: &[usize]) -> Poly {
    let mut g = Poly::zero(p.ring());
    for c in p.coefficients_in(v) {
        if c.is_zero() {
            continue;
        }
        g = gcd_in(&g, &c, rest);
        if g.is_constant() {
            return Poly::one(p.ring());
        }
    }
    g.monic()
}

fn primitive_part(p: &Poly, v: usize, rest: &[usize]) -> Poly {
    let c = content(p, v, rest);
    let q = p.div_exact(&c).expect("content divides");
    // keep integer-ish growth in check: normalize the leading coefficient scale
    let lc = q.lc().cloned().unwrap_or_else(Scalar::zero);
    if lc.is_zero() {
        q
    } else {
        q.scale(&lc.recip())
    }
}

/// `lc_v(b)^k * a mod b` in the variable `v`, for a suitable k.
pub(crate) fn pseudo_remainder(a: &Poly, b: &Poly, v: usize) -> Poly {
    let db = b.degree_in(v).unwrap_or(0);
    let lb = b.leading_coefficient_in(v);
    let mut r = a.clone();
    while let Some(dr) = r.degree_in(v) {
        if r.is_zero() || dr < db {
            break;
        }
        let lr = r.leading_coefficient_in(v);
        let shift = Poly::term(r.ring(), super::Monomial::var_pow(v, dr - db), Scalar::from_integer(1.into()));
        r = &(&lb * &r) - &(&(&lr * &shift) * b);
    }
    r
}
