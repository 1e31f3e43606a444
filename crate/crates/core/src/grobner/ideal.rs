use super::buchberger::{ideal_basis, syzygy_generators_graded};
use super::GrobnerError;
use crate::arith::{Monomial, Poly};

fn check_homogeneous(gens: &[Poly]) -> Result<(), GrobnerError> {
    if gens.iter().all(|g| g.is_homogeneous()) {
        Ok(())
    } else {
        Err(GrobnerError::NotHomogeneous)
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `dim_k J_k` for the ideal `J` generated by homogeneous `gens`.
pub fn hilbert_function(gens: &[Poly], k: u32) -> Result<u64, GrobnerError> {
    check_homogeneous(gens)?;
    let Some(first) = gens.first() else { return Ok(0) };
    let nvars = first.ring().nvars();
    let nonzero: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if nonzero.is_empty() {
        return Ok(0);
    }
    let leads: Vec<Monomial> = ideal_basis(&nonzero)?.leading_terms().into_iter().map(|(_, m)| m).collect();
    let count = Monomial::all_of_degree(nvars, k)
        .into_iter()
        .filter(|m| leads.iter().any(|l| l.divides(m)))
        .count();
    Ok(count as u64)
}

/// `dim_k (S/J)_k`.
pub fn quotient_hilbert_function(gens: &[Poly], k: u32) -> Result<u64, GrobnerError> {
    let Some(first) = gens.first() else { return Err(GrobnerError::EmptyInput) };
    let nvars = first.ring().nvars() as u64;
    let total = binomial(k as u64 + nvars - 1, nvars - 1);
    Ok(total - hilbert_function(gens, k)?)
}

/// Krull dimension of `R/J` from a maximal independent set of variables
/// modulo the leading-term ideal. The unit ideal gets −1.
pub fn krull_dimension(gens: &[Poly]) -> Result<i32, GrobnerError> {
    let Some(first) = gens.first() else { return Err(GrobnerError::EmptyInput) };
    let nvars = first.ring().nvars();
    let nonzero: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if nonzero.is_empty() {
        return Ok(nvars as i32);
    }
    let leads: Vec<Monomial> = ideal_basis(&nonzero)?.leading_terms().into_iter().map(|(_, m)| m).collect();
    if leads.iter().any(|m| m.is_one()) {
        return Ok(-1);
    }
    let mut best = 0;
    for mask in 0u32..(1 << nvars) {
        let size = mask.count_ones() as i32;
        if size <= best {
            continue;
        }
        let independent = leads.iter().all(|m| m.support().any(|v| mask & (1 << v) == 0));
        if independent {
            best = size;
        }
    }
    Ok(best)
}

/// `nvars − dim(R/J)`; the polynomial rings involved are Cohen-Macaulay, so
/// this is also the grade.
pub fn height(gens: &[Poly]) -> Result<i32, GrobnerError> {
    let nvars = gens.first().ok_or(GrobnerError::EmptyInput)?.ring().nvars() as i32;
    Ok(nvars - krull_dimension(gens)?)
}

/// Generators (a reduced Gröbner basis) of `K : J`.
pub fn ideal_quotient(k: &[Poly], j: &[Poly]) -> Result<Vec<Poly>, GrobnerError> {
    let ring = k.iter().chain(j).next().ok_or(GrobnerError::EmptyInput)?.ring();
    let js: Vec<&Poly> = j.iter().filter(|p| !p.is_zero()).collect();
    if js.is_empty() {
        return Ok(vec![Poly::one(ring)]);
    }
    let ks: Vec<&Poly> = k.iter().filter(|p| !p.is_zero()).collect();
    if ks.is_empty() {
        return Ok(Vec::new());
    }
    let m = js.len();
    // a * (j_1..j_m) + sum b_il k_i e_l = 0  <=>  a j_l in K for every l
    let mut vectors: Vec<Vec<Poly>> = vec![js.iter().map(|p| (*p).clone()).collect()];
    for kk in &ks {
        for l in 0..m {
            let mut v = vec![Poly::zero(ring); m];
            v[l] = (*kk).clone();
            vectors.push(v);
        }
    }
    let shifts: Vec<i64> = js.iter().map(|p| -(p.degree().unwrap() as i64)).collect();
    let firsts: Vec<Poly> = syzygy_generators_graded(&vectors, shifts)?
        .into_iter()
        .map(|s| s[0].clone())
        .filter(|p| !p.is_zero())
        .collect();
    if firsts.is_empty() {
        return Ok(Vec::new());
    }
    Ok(ideal_basis(&firsts)?.polys())
}
