//! Linkage of a height-3 almost complete intersection to a Gorenstein ideal
//! through a complete intersection it contains.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{int, Poly, Ring};
use crate::grobner::{height, ideal_basis, ideal_quotient, krull_dimension, quotient_hilbert_function, FreeResolution, GrobnerError};

const MAX_RETRIES: usize = 20;

/// True iff the shifts are those of a general almost complete intersection
/// of type (d,d,d,d): generators `d^4`, first syzygies `(2d-1)^d, (2d)^3`,
/// second syzygies `(2d+1)^d`.
pub fn general_aci_shape_check(res: &FreeResolution, d: u32) -> bool {
    let d = d as i64;
    let sorted = |v: &[i64]| {
        let mut v = v.to_vec();
        v.sort();
        v
    };
    let mut q = vec![2 * d - 1; d as usize];
    q.extend([2 * d; 3]);
    sorted(&res.first_shifts) == vec![d; 4] && sorted(&res.q) == q && sorted(&res.p) == vec![2 * d + 1; d as usize]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SocleReport {
    pub applicable: bool,
    pub reason: Option<String>,
    pub d: u32,
    pub expected_socle_degree: i64,
    /// The complete intersection `h1, h2, h3` and `h4`.
    pub h: Vec<Poly>,
    pub attempts: usize,
    /// Generators of `G = K : J`.
    pub linked: Vec<Poly>,
    pub artinian: bool,
    pub socle_degree: Option<i64>,
    /// `H_{S/G}(t)` for `t = 0..=3d-3`.
    pub hilbert: Vec<u64>,
    pub identity_holds: bool,
    pub symmetric: bool,
}

impl SocleReport {
    fn not_applicable(d: u32, reason: &str) -> Self {
        SocleReport {
            applicable: false,
            reason: Some(reason.to_string()),
            d,
            expected_socle_degree: 2 * d as i64 - 3,
            h: Vec::new(),
            attempts: 0,
            linked: Vec::new(),
            artinian: false,
            socle_degree: None,
            hilbert: Vec::new(),
            identity_holds: false,
            symmetric: false,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.applicable
            && self.artinian
            && self.socle_degree == Some(self.expected_socle_degree)
            && self.identity_holds
            && self.symmetric
    }
}

fn qh(gens: &[Poly], k: i64) -> Result<u64, GrobnerError> {
    if k < 0 {
        Ok(0)
    } else {
        quotient_hilbert_function(gens, k as u32)
    }
}

fn triangular(g: &[Poly], rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let mut h = g.to_vec();
    for i in 0..4 {
        for j in i + 1..4 {
            let mut a = 0i64;
            while a == 0 {
                a = rng.gen_range(-10..=10);
            }
            h[i] = &h[i] + &g[j].scale(&int(a));
        }
    }
    h
}

/// Links `J = (g1..g4)` to `G = K : J` through a complete intersection
/// `K = (h1, h2, h3)` and checks the Hilbert function of `S/G`.
pub fn socle_check(g: &[Poly], seed: u64) -> Result<SocleReport, GrobnerError> {
    let d = g.first().and_then(|x| x.degree()).unwrap_or(0);
    if g.len() != 4 || g.iter().any(|x| x.ring() != Ring::Stu || !x.is_homogeneous() || x.degree() != Some(d)) {
        return Ok(SocleReport::not_applicable(d, "needs four forms of one degree in s, t, u"));
    }
    if height(g)? != 3 {
        return Ok(SocleReport::not_applicable(d, "ideal does not have height 3"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found = None;
    let mut attempts = 0;
    for _ in 0..MAX_RETRIES {
        attempts += 1;
        let h = triangular(g, &mut rng);
        if height(&h[..3])? != 3 {
            continue;
        }
        if ideal_basis(&h[..3])?.normal_form_poly(&h[3]).is_zero() {
            continue;
        }
        found = Some(h);
        break;
    }
    let Some(h) = found else {
        return Ok(SocleReport::not_applicable(d, "no complete intersection with h4 outside it was found"));
    };
    let k = &h[..3];
    let linked = ideal_quotient(k, g)?;
    let top = 3 * d as i64 - 3;
    let hilbert: Vec<u64> = (0..=top).map(|t| qh(&linked, t)).collect::<Result<_, _>>()?;
    let artinian = krull_dimension(&linked)? == 0;
    let socle_degree = (0..=top).rev().find(|&t| hilbert[t as usize] > 0);
    let mut identity_holds = true;
    for t in 0..=top {
        let rhs = qh(k, top - t)? as i64 - qh(g, top - t)? as i64;
        if hilbert[t as usize] as i64 != rhs {
            identity_holds = false;
        }
    }
    let symmetric = match socle_degree {
        Some(s) => (0..=s).all(|t| hilbert[t as usize] == hilbert[(s - t) as usize]),
        None => false,
    };
    Ok(SocleReport {
        applicable: true,
        reason: None,
        d,
        expected_socle_degree: 2 * d as i64 - 3,
        h,
        attempts,
        linked,
        artinian,
        socle_degree,
        hilbert,
        identity_holds,
        symmetric,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grobner::free_resolution;

    fn v(i: usize) -> Poly {
        Poly::var(Ring::Stu, i)
    }

    #[test]
    fn quadrics() {
        // s^2, t^2, u^2 and a fourth quadric outside them
        let g = vec![v(0).pow(2), v(1).pow(2), v(2).pow(2), &(&v(0) * &v(1)) + &(&v(1) * &v(2))];
        let rep = socle_check(&g, 1).unwrap();
        assert!(rep.applicable);
        assert_eq!(rep.expected_socle_degree, 1);
        assert!(rep.all_pass(), "{rep:?}");
    }

    #[test]
    fn not_applicable() {
        let g = vec![v(0), v(1), v(0), v(1)];
        assert!(!socle_check(&g, 0).unwrap().applicable);
    }

    #[test]
    fn shape_of_squares_is_koszul() {
        let s2 = v(0).pow(2);
        let u2 = v(2).pow(2);
        let gens = vec![s2.clone(), v(1).pow(2), &s2 - &u2, &s2 + &u2];
        let res = free_resolution(&gens, false).unwrap();
        assert!(!general_aci_shape_check(&res, 2));
    }
}
