#![allow(dead_code)]

use mubasis::arith::{gcd_many, int, Monomial, Poly, Ring};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// A random polynomial in `ring` of degree at most `deg`; each monomial is
/// present with probability one half, coefficients in `[-c, c]`.
pub fn random_poly(ring: Ring, deg: u32, c: i64, rng: &mut ChaCha8Rng) -> Poly {
    let mut terms = Vec::new();
    for k in 0..=deg {
        for m in Monomial::all_of_degree(ring.nvars(), k) {
            if rng.gen_bool(0.5) {
                let x = rng.gen_range(-c..=c);
                if x != 0 {
                    terms.push((m, int(x)));
                }
            }
        }
    }
    Poly::from_terms(ring, terms)
}

/// A random form of degree `deg` in s, t, u with every coefficient drawn from
/// `[-c, c]`.
pub fn random_form(deg: u32, c: i64, rng: &mut ChaCha8Rng) -> Poly {
    let terms: Vec<_> = Monomial::all_of_degree(3, deg).into_iter().map(|m| (m, int(rng.gen_range(-c..=c)))).collect();
    Poly::from_terms(Ring::Stu, terms)
}

/// Four polynomials of degree at most `max_deg` with coefficients in
/// `[-3, 3]`, redrawn until their gcd is one and one of them has positive
/// degree.
pub fn random_parametrization(max_deg: u32, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    loop {
        let a: Vec<Poly> = (0..4)
            .map(|_| {
                let d = rng.gen_range(0..=max_deg);
                random_poly(Ring::St, d, 3, rng)
            })
            .collect();
        if a.iter().all(|p| p.degree().unwrap_or(0) == 0) {
            continue;
        }
        if gcd_many(&a).map_or(false, |g| g.is_one()) {
            return a;
        }
    }
}
