//! Quillen patching for a unimodular column over k[s][t] whose first entry
//! is monic in t: produces `M` with `M v(t) = v(0)`.
//!
//! For each local datum `r in k[s]` we build `V(t)` with `V(t) v(t) = r e_1`
//! and `V(t) W(t) = r^2 I`, where `r` is a resultant of the first entry and a
//! random combination of the others. Once the `r` have gcd one, a Bezout
//! relation `sum a_k r_k^2 = 1` defines the points `b_k = t sum_{h<=k} a_h r_h^2`
//! and `E_k = W(b_{k-1}) V(b_k) / r_k^2` has polynomial entries, determinant
//! one, and maps `v(b_k)` to `v(b_{k-1})`.

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::transform::Transform;
use super::QsError;
use crate::arith::{gcd_many, pseudo_remainder, Poly, PolyMatrix, Ring, Scalar};

const T: usize = 1;

struct Local {
    r: Poly,
    v: PolyMatrix,
    w: PolyMatrix,
}

/// Remainder modulo `f`, monic in t.
fn rem_t(g: &Poly, f: &Poly) -> Poly {
    pseudo_remainder(g, f, T)
}

fn local_datum(vec: &[Poly], lambda: &Scalar) -> Option<Local> {
    let ring = vec[0].ring();
    let k = vec.len();
    let f = &vec[0];
    let d = f.degree_in(T).unwrap() as usize;
    // g = v_2 + lambda v_3 + lambda^2 v_4 + ...
    let mut g = Poly::zero(ring);
    let mut pw = Scalar::one();
    let mut weights = Vec::with_capacity(k);
    for x in &vec[1..] {
        g = &g + &x.scale(&pw);
        weights.push(pw.clone());
        pw = &pw * lambda;
    }
    let g_red = rem_t(&g, f);
    if g_red.is_zero() {
        return None;
    }
    let c = (&g - &g_red).div_exact(f).expect("remainder by a monic divisor");

    // multiplication by g on k[s][t]/(f), basis 1, t, ..., t^(d-1)
    let mut mg = PolyMatrix::zeros(ring, d, d);
    let mut h = g_red.clone();
    let tv = Poly::var(ring, T);
    for j in 0..d {
        let coeffs = h.coefficients_in(T);
        for (i, cf) in coeffs.into_iter().enumerate() {
            mg.set(i, j, cf);
        }
        h = rem_t(&(&h * &tv), f);
    }
    let r = mg.det();
    if r.is_zero() {
        return None;
    }
    let adj = mg.adjugate();
    let q = Poly::from_coefficients_in(ring, T, &adj.column(0));
    let p = (&r - &(&q * &g_red)).div_exact(f)?;
    debug_assert!((&(&p * f) + &(&q * &g_red)) == r);

    // E1: row 2 becomes g_red
    let mut e1 = Transform::identity(ring, k);
    for (i, wgt) in weights.iter().enumerate().skip(1) {
        e1.add_row(1, i + 1, &Poly::constant(ring, wgt.clone()));
    }
    e1.add_row(1, 0, &-&c);
    // D = diag([[p, q], [-r g, r f]], r I), D' = diag([[r f, -q], [r g, p]], r I)
    let mut dm = PolyMatrix::zeros(ring, k, k);
    let mut dinv = PolyMatrix::zeros(ring, k, k);
    dm.set(0, 0, p.clone());
    dm.set(0, 1, q.clone());
    dm.set(1, 0, -&(&r * &g_red));
    dm.set(1, 1, &r * f);
    dinv.set(0, 0, &r * f);
    dinv.set(0, 1, -&q);
    dinv.set(1, 0, &r * &g_red);
    dinv.set(1, 1, p);
    for i in 2..k {
        dm.set(i, i, r.clone());
        dinv.set(i, i, r.clone());
    }
    // E3 clears the remaining entries of (r, 0, r v_3, ...)
    let mut e3 = Transform::identity(ring, k);
    for i in 2..k {
        e3.add_row(i, 0, &-&vec[i]);
    }
    let v = &(&e3.m * &dm) * &e1.m;
    let w = &(&e1.inv * &dinv) * &e3.inv;
    Some(Local { r, v, w })
}

/// Extended gcd in k[x] for univariate inputs: `(g, a, b)` with `a x + b y = g`.
pub(crate) fn ext_gcd(x: &Poly, y: &Poly) -> (Poly, Poly, Poly) {
    let ring = x.ring();
    let (mut r0, mut r1) = (x.clone(), y.clone());
    let (mut a0, mut a1) = (Poly::one(ring), Poly::zero(ring));
    let (mut b0, mut b1) = (Poly::zero(ring), Poly::one(ring));
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        r0 = std::mem::replace(&mut r1, r);
        let a2 = &a0 - &(&q * &a1);
        a0 = std::mem::replace(&mut a1, a2);
        let b2 = &b0 - &(&q * &b1);
        b0 = std::mem::replace(&mut b1, b2);
    }
    if let Some(lc) = r0.lc().cloned() {
        let inv = lc.recip();
        return (r0.scale(&inv), a0.scale(&inv), b0.scale(&inv));
    }
    (r0, a0, b0)
}

fn exact_div_matrix(m: &PolyMatrix, d: &Poly) -> Option<PolyMatrix> {
    let mut out = PolyMatrix::zeros(m.ring(), m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.set(i, j, m.get(i, j).div_exact(d)?);
        }
    }
    Some(out)
}

pub(crate) fn patch(vec: &[Poly], rng: &mut ChaCha8Rng) -> Result<Transform, QsError> {
    let ring: Ring = vec[0].ring();
    let k = vec.len();
    let f = &vec[0];
    if !f.leading_coefficient_in(T).is_one() || f.degree_in(T).unwrap_or(0) == 0 {
        return Err(QsError::CompletionFailed("first entry is not monic in t".into()));
    }
    if k == 1 {
        return Err(QsError::NotUnimodular);
    }
    let mut locals: Vec<Local> = Vec::new();
    let mut g = Poly::zero(ring);
    for attempt in 0..40i64 {
        let bound = 2 + attempt;
        let lambda = Scalar::from_integer(rng.gen_range(-bound..=bound).into());
        let Some(loc) = local_datum(vec, &lambda) else { continue };
        if locals.iter().any(|l| l.r == loc.r) {
            continue;
        }
        g = if locals.is_empty() { loc.r.monic() } else { gcd_many(&[g.clone(), loc.r.clone()]).unwrap() };
        locals.push(loc);
        if g.is_one() {
            break;
        }
    }
    if !g.is_one() {
        return Err(QsError::CompletionFailed("local resultants keep a common factor".into()));
    }
    // drop locals that are not needed for the Bezout relation
    let squares: Vec<Poly> = locals.iter().map(|l| &l.r * &l.r).collect();
    let mut coeffs: Vec<Poly> = vec![Poly::zero(ring); squares.len()];
    let mut acc = squares[0].clone();
    coeffs[0] = Poly::one(ring);
    for i in 1..squares.len() {
        let (gg, a, b) = ext_gcd(&acc, &squares[i]);
        for c in coeffs.iter_mut().take(i) {
            *c = &*c * &a;
        }
        coeffs[i] = b;
        acc = gg;
    }
    let inv = acc.constant_value().filter(|c| !c.is_zero()).ok_or_else(|| {
        QsError::CompletionFailed("Bezout relation for the squared resultants failed".into())
    })?;
    let coeffs: Vec<Poly> = coeffs.iter().map(|c| c.scale(&inv.recip())).collect();

    let tv = Poly::var(ring, T);
    let mut m = Transform::identity(ring, k);
    let mut prev_b = Poly::zero(ring);
    let mut partial = Poly::zero(ring);
    for (loc, (sq, a)) in locals.iter().zip(squares.iter().zip(&coeffs)) {
        if a.is_zero() {
            continue;
        }
        partial = &partial + &(a * sq);
        let b = &tv * &partial;
        let e = exact_div_matrix(&(&loc.w.substitute(T, &prev_b) * &loc.v.substitute(T, &b)), sq);
        let einv = exact_div_matrix(&(&loc.w.substitute(T, &b) * &loc.v.substitute(T, &prev_b)), sq);
        let (Some(e), Some(einv)) = (e, einv) else {
            return Err(QsError::CompletionFailed("patching matrix is not polynomial".into()));
        };
        // M = E_1 E_2 ... E_N, built left to right
        m.m = &m.m * &e;
        m.inv = &einv * &m.inv;
        prev_b = b;
    }
    if prev_b != tv {
        return Err(QsError::CompletionFailed("patching points do not reach t".into()));
    }
    Ok(m)
}
