//! Reduction of a single unimodular column to the first standard basis
//! vector.

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::patching::patch;
use super::transform::{Transform, Work};
use super::QsError;
use crate::arith::{Monomial, Poly, Scalar};
use crate::grobner::lift;

/// Cofactor degrees tried by linear algebra before Gröbner lifting.
const MAX_COFACTOR_DEGREE: u32 = 8;

/// Any solution of `a x = b` over the rationals.
pub(crate) fn solve_rational(a: &[Vec<Scalar>], b: &[Scalar]) -> Option<Vec<Scalar>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<Scalar>> = a
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..=cols {
                    let d = &f * &m[row][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if m[row..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Scalar::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Some(x)
}

/// Constants `c` with `sum c_i v_i = 1`, if any.
fn constant_combination(v: &[Poly]) -> Option<Vec<Scalar>> {
    let mut monos: Vec<Monomial> = v.iter().flat_map(|p| p.terms().iter().map(|(m, _)| *m)).collect();
    monos.push(Monomial::ONE);
    monos.sort();
    monos.dedup();
    let a: Vec<Vec<Scalar>> = monos
        .iter()
        .map(|m| {
            v.iter()
                .map(|p| p.terms().iter().find(|(n, _)| n == m).map_or_else(Scalar::zero, |t| t.1.clone()))
                .collect()
        })
        .collect();
    let b: Vec<Scalar> = monos.iter().map(|m| if m.is_one() { Scalar::one() } else { Scalar::zero() }).collect();
    solve_rational(&a, &b)
}

fn coefficient(p: &Poly, m: &Monomial) -> Scalar {
    p.terms().iter().find(|(n, _)| n == m).map_or_else(Scalar::zero, |t| t.1.clone())
}

/// Cofactors of least degree: `c v_i0 + sum_{i != i0} h_i v_i = 1` with `c`
/// constant and `deg h_i <= delta`, found by linear algebra over the
/// rationals. Returns `(i0, c, h)` with `h[i0] = 0`.
fn low_degree_bezout(v: &[Poly], delta: u32) -> Option<(usize, Scalar, Vec<Poly>)> {
    let ring = v[0].ring();
    let k = v.len();
    let top = v.iter().filter_map(|p| p.degree()).max()? + delta;
    let rows: Vec<Monomial> = (0..=top).flat_map(|d| Monomial::all_of_degree(2, d)).collect();
    let shifts: Vec<Monomial> = (0..=delta).flat_map(|d| Monomial::all_of_degree(2, d)).collect();
    let mut order: Vec<usize> = (0..k).filter(|&i| !v[i].is_zero()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse((v[i].degree(), v[i].len())));
    for i0 in order {
        let others: Vec<usize> = (0..k).filter(|&i| i != i0).collect();
        // unknowns: c, then the coefficients of h_i for i in others
        let a: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|nu| {
                let mut row = vec![coefficient(&v[i0], nu)];
                for &i in &others {
                    for mu in &shifts {
                        row.push(nu.div(mu).map_or_else(Scalar::zero, |q| coefficient(&v[i], &q)));
                    }
                }
                row
            })
            .collect();
        let b: Vec<Scalar> = rows.iter().map(|m| if m.is_one() { Scalar::one() } else { Scalar::zero() }).collect();
        let Some(x) = solve_rational(&a, &b) else { continue };
        let mut h = vec![Poly::zero(ring); k];
        for (n, &i) in others.iter().enumerate() {
            let terms: Vec<_> = shifts.iter().enumerate().map(|(j, mu)| (*mu, x[1 + n * shifts.len() + j].clone())).collect();
            h[i] = Poly::from_terms(ring, terms);
        }
        return Some((i0, x[0].clone(), h));
    }
    None
}

/// Makes one entry equal to one with the cofactors of [`low_degree_bezout`].
fn apply_bezout(w: &mut Work, i0: usize, c: &Scalar, h: &[Poly]) {
    let ring = w.ring();
    if c.is_zero() {
        let factor = &Poly::one(ring) - &w.v[i0];
        for (i, hi) in h.iter().enumerate() {
            if !hi.is_zero() {
                w.add_row(i0, i, &(&factor * hi));
            }
        }
    } else {
        w.scale(i0, c);
        for (i, hi) in h.iter().enumerate() {
            if !hi.is_zero() {
                w.add_row(i0, i, hi);
            }
        }
    }
    debug_assert!(w.v[i0].is_one());
}

/// Finishes when some entry is a nonzero constant.
fn finish_with_constant(w: &mut Work) -> bool {
    let Some(i) = w.v.iter().position(|p| !p.is_zero() && p.is_constant()) else {
        return false;
    };
    w.swap(0, i);
    let c = w.v[0].constant_value().unwrap();
    if !c.is_one() {
        w.scale(0, &c.recip());
    }
    for j in 1..w.v.len() {
        let f = -&w.v[j];
        w.add_row(j, 0, &f);
    }
    true
}

/// Euclid's algorithm when every entry lies in k[x] for one variable x.
fn euclid(w: &mut Work) -> Result<(), QsError> {
    loop {
        if finish_with_constant(w) {
            return Ok(());
        }
        let Some(i) = (0..w.v.len()).filter(|&i| !w.v[i].is_zero()).min_by_key(|&i| w.v[i].degree()) else {
            return Err(QsError::NotUnimodular);
        };
        let mut progress = false;
        for j in 0..w.v.len() {
            if j == i || w.v[j].is_zero() {
                continue;
            }
            let (q, _) = w.v[j].div_rem(&w.v[i]);
            if !q.is_zero() {
                w.add_row(j, i, &-q);
                progress = true;
            }
        }
        if !progress {
            return Err(QsError::NotUnimodular);
        }
    }
}

fn univariate_var(v: &[Poly]) -> Option<Option<usize>> {
    let used: Vec<usize> = (0..2).filter(|&x| v.iter().any(|p| p.uses_var(x))).collect();
    match used.len() {
        0 => Some(None),
        1 => Some(Some(used[0])),
        _ => None,
    }
}

/// The entries other than `i0` generate the unit ideal: make entry `i0` equal
/// to one with a single elementary operation.
fn unit_subfamily(w: &mut Work) -> Result<bool, QsError> {
    let k = w.v.len();
    let ring = w.ring();
    let mut order: Vec<usize> = (0..k).collect();
    // dropping a high-degree entry keeps the cofactors small
    order.sort_by_key(|&i| std::cmp::Reverse(w.v[i].degree()));
    for i0 in order {
        let others: Vec<usize> = (0..k).filter(|&i| i != i0 && !w.v[i].is_zero()).collect();
        if others.is_empty() {
            continue;
        }
        let gens: Vec<Vec<Poly>> = others.iter().map(|&i| vec![w.v[i].clone()]).collect();
        let Some(h) = lift(&[Poly::one(ring)], &gens)? else { continue };
        let factor = &Poly::one(ring) - &w.v[i0];
        for (c, &i) in h.iter().zip(&others) {
            let f = &factor * c;
            w.add_row(i0, i, &f);
        }
        debug_assert!(w.v[i0].is_one());
        return Ok(true);
    }
    Ok(false)
}

fn bezout_pair(w: &mut Work) -> Result<(), QsError> {
    let ring = w.ring();
    let gens = vec![vec![w.v[0].clone()], vec![w.v[1].clone()]];
    let h = lift(&[Poly::one(ring)], &gens)?.ok_or(QsError::NotUnimodular)?;
    let (v1, v2) = (w.v[0].clone(), w.v[1].clone());
    let u = crate::arith::PolyMatrix::from_rows(ring, vec![vec![h[0].clone(), h[1].clone()], vec![-&v2, v1.clone()]]);
    let uinv = crate::arith::PolyMatrix::from_rows(ring, vec![vec![v1, -&h[1]], vec![v2, h[0].clone()]]);
    w.apply(&Transform { m: u, inv: uinv });
    Ok(())
}

/// A transform `T` over k[s,t] with `T.m * v = e_1`.
pub(crate) fn complete_vector(v: &[Poly], rng: &mut ChaCha8Rng) -> Result<Transform, QsError> {
    let ring = v[0].ring();
    let mut w = Work::new(v.to_vec());
    if finish_with_constant(&mut w) {
        return Ok(w.tr);
    }
    if let Some(c) = constant_combination(&w.v) {
        let i0 = c.iter().position(|x| !x.is_zero()).unwrap();
        let c0 = c[i0].clone();
        w.scale(i0, &c0);
        for (i, ci) in c.iter().enumerate() {
            if i != i0 && !ci.is_zero() {
                w.add_row(i0, i, &Poly::constant(ring, ci.clone()));
            }
        }
        finish_with_constant(&mut w);
        return Ok(w.tr);
    }
    if let Some(var) = univariate_var(&w.v) {
        if var.is_none() {
            return Err(QsError::NotUnimodular);
        }
        euclid(&mut w)?;
        return Ok(w.tr);
    }
    if w.v.len() == 2 {
        bezout_pair(&mut w)?;
        return Ok(w.tr);
    }
    let max_deg = w.v.iter().filter_map(|p| p.degree()).max().unwrap_or(0);
    for delta in 1..=(2 * max_deg).min(MAX_COFACTOR_DEGREE) {
        if let Some((i0, c, h)) = low_degree_bezout(&w.v, delta) {
            apply_bezout(&mut w, i0, &c, &h);
            finish_with_constant(&mut w);
            return Ok(w.tr);
        }
    }
    if unit_subfamily(&mut w)? {
        finish_with_constant(&mut w);
        return Ok(w.tr);
    }
    general(v, rng)
}

/// Patching route: make one entry monic in t by `s -> s + lambda t`, move
/// the column to its value at t = 0, finish over k[s] by Euclid and undo
/// the change of variables.
fn general(v: &[Poly], rng: &mut ChaCha8Rng) -> Result<Transform, QsError> {
    let ring = v[0].ring();
    let s = Poly::var(ring, 0);
    let t = Poly::var(ring, 1);
    let fi = (0..v.len())
        .filter(|&i| !v[i].is_zero())
        .min_by_key(|&i| (v[i].degree(), v[i].len()))
        .ok_or(QsError::NotUnimodular)?;
    let f = &v[fi];
    let deg = f.degree().unwrap();
    let top: Vec<(Monomial, Scalar)> =
        f.terms().iter().filter(|(m, _)| m.degree() == deg).cloned().collect();
    let mut lambda = Scalar::zero();
    for attempt in 0..64i64 {
        let cand = if attempt == 0 { 0 } else { rng.gen_range(-(attempt + 2)..=(attempt + 2)) };
        let l = Scalar::from_integer(cand.into());
        // coefficient of t^deg in f(s + l t, t) is the top form at (l, 1)
        let lead: Scalar = top
            .iter()
            .map(|(m, c)| c * num_traits::pow::pow(l.clone(), m.exponent(0) as usize))
            .fold(Scalar::zero(), |a, b| a + b);
        if !lead.is_zero() {
            lambda = l;
            break;
        }
        if attempt == 63 {
            return Err(QsError::CompletionFailed("no monic change of variables found".into()));
        }
    }
    let shift = &s + &t.scale(&lambda);
    let back = &s - &t.scale(&lambda);
    let vphi: Vec<Poly> = v.iter().map(|p| p.substitute(0, &shift)).collect();
    let mut w = Work::new(vphi);
    w.swap(0, fi);
    let lc = w.v[0].leading_coefficient_in(1).constant_value().expect("monic after change of variables");
    w.scale(0, &lc.recip());
    let p = patch(&w.v, rng)?;
    w.apply(&p);
    if w.v.iter().any(|x| x.uses_var(1)) {
        return Err(QsError::CompletionFailed("patching left t in the column".into()));
    }
    euclid(&mut w)?;
    Ok(w.tr.substitute(0, &back))
}
