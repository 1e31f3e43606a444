//! Pairwise coprime elements of an ideal generated by coprime polynomials.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::arith::{gcd, gcd_many, int, Poly};
use crate::grobner::{ideal_basis, GrobnerError};

/// Elements of the recursive construction are kept below this degree; the
/// products in it double the degree at every step.
const DEGREE_CAP: u32 = 30;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoprimeError {
    #[error("need at least one nonzero polynomial")]
    Empty,
    #[error("generators have the common factor {0}")]
    NotCoprime(String),
    #[error("could not find {0} pairwise coprime elements")]
    TooFew(usize),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Grobner(#[from] GrobnerError),
}

fn deg(p: &Poly) -> u32 {
    p.degree().unwrap_or(0)
}

/// The recursive construction: `h1 = f_m`, `g1 = gcd(f_1..f_{m-1})` and
/// `h_{k+1} = h1 ⋯ hk + g_k h'_j`, `g_{k+1} = g_k h'_j`, where the `h'` come
/// from the same construction on `f_i / g` and `j` is the first index with
/// `gcd(h1 ⋯ hk, h'_j) = 1`. Stops early once the degree cap is reached.
pub fn recursive_sequence(f: &[Poly], n: usize) -> Vec<Poly> {
    let f: Vec<Poly> = f.iter().filter(|p| !p.is_zero()).cloned().collect();
    let Some(first) = f.first() else { return Vec::new() };
    let ring = first.ring();
    if f.len() == 1 {
        // the unit ideal: units are pairwise coprime
        return vec![Poly::one(ring); n];
    }
    let m = f.len();
    let g = gcd_many(&f[..m - 1]).expect("nonzero family");
    let reduced: Vec<Poly> = f[..m - 1].iter().map(|p| p.div_exact(&g).expect("gcd divides")).collect();
    let inner = recursive_sequence(&reduced, n + 4);

    let mut h = vec![f[m - 1].clone()];
    let mut gk = g;
    let mut product = f[m - 1].clone();
    while h.len() < n {
        let Some(hj) = inner.iter().find(|x| gcd(&product, x).is_one()) else { break };
        let step = &gk * hj;
        let next = &product + &step;
        if next.is_zero() || deg(&next) > DEGREE_CAP {
            break;
        }
        product = &product * &next;
        h.push(next);
        gk = step;
    }
    h
}

fn random_member(f: &[Poly], rng: &mut ChaCha8Rng) -> Poly {
    let ring = f[0].ring();
    let mut h = Poly::zero(ring);
    for p in f {
        let mut c = Poly::from_int(ring, rng.gen_range(-5..=5));
        for v in 0..ring.nvars() {
            c = &c + &Poly::var(ring, v).scale(&int(rng.gen_range(-3..=3)));
        }
        h = &h + &(&c * p);
    }
    h
}

/// `n` pairwise coprime elements of the ideal generated by `f`, verified by
/// pairwise gcds and ideal membership.
///
/// The first elements come from the recursive construction; when its
/// degrees grow past the cap the sequence is extended by random combinations
/// `sum (c_i + linear form) f_i` that are coprime to all earlier elements.
pub fn coprime_sequence(f: &[Poly], n: usize, seed: u64) -> Result<Vec<Poly>, CoprimeError> {
    let nonzero: Vec<Poly> = f.iter().filter(|p| !p.is_zero()).cloned().collect();
    if nonzero.is_empty() {
        return Err(CoprimeError::Empty);
    }
    let g = gcd_many(&nonzero).map_err(|_| CoprimeError::Empty)?;
    if !g.is_one() {
        return Err(CoprimeError::NotCoprime(g.to_string()));
    }
    let mut out = recursive_sequence(&nonzero, n);
    out.truncate(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tries = 0;
    while out.len() < n {
        tries += 1;
        if tries > 200 * n {
            return Err(CoprimeError::TooFew(n));
        }
        let h = random_member(&nonzero, &mut rng);
        if !h.is_zero() && out.iter().all(|x| gcd(x, &h).is_one()) {
            out.push(h);
        }
    }

    let gb = ideal_basis(&nonzero)?;
    for (i, x) in out.iter().enumerate() {
        if !gb.normal_form_poly(x).is_zero() {
            return Err(CoprimeError::Verification(format!("element {i} is not in the ideal")));
        }
        for (j, y) in out.iter().enumerate().skip(i + 1) {
            if !gcd(x, y).is_one() {
                return Err(CoprimeError::Verification(format!("elements {i} and {j} share a factor")));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Ring;

    fn st() -> (Poly, Poly) {
        (Poly::var(Ring::St, 0), Poly::var(Ring::St, 1))
    }

    #[test]
    fn two_variables() {
        let (s, t) = st();
        let h = coprime_sequence(&[s, t], 3, 0).unwrap();
        assert_eq!(h.len(), 3);
    }

    #[test]
    fn unit_ideal() {
        let (s, _) = st();
        let h = coprime_sequence(&[s, Poly::one(Ring::St)], 5, 0).unwrap();
        assert_eq!(h.len(), 5);
    }

    #[test]
    fn first_step_by_hand() {
        // h1 = st + 1, g1 = s^2, h' = 1, so h2 = st + 1 + s^2
        let (s, t) = st();
        let one = Poly::one(Ring::St);
        let f = vec![&s * &s, &(&s * &t) + &one];
        let h = recursive_sequence(&f, 2);
        assert_eq!(h[0], f[1]);
        assert_eq!(h[1], &f[1] + &f[0]);
        assert!(gcd(&h[0], &h[1]).is_one());
        let checked = coprime_sequence(&f, 2, 0).unwrap();
        assert_eq!(checked, h);
    }

    #[test]
    fn common_factor_is_rejected() {
        let (s, t) = st();
        let e = coprime_sequence(&[&s * &t, s.clone()], 2, 0).unwrap_err();
        assert_eq!(e, CoprimeError::NotCoprime("s".into()));
    }

    #[test]
    fn three_generators_ten_elements() {
        let (s, t) = st();
        let one = Poly::one(Ring::St);
        let f = vec![&s * &t, &(&s * &s) - &one, &t * &t];
        let h = coprime_sequence(&f, 10, 3).unwrap();
        assert_eq!(h.len(), 10);
    }
}
