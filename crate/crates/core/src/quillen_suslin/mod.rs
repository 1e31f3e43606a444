//! Unimodularity tests and completion of unimodular matrices over k[s,t].

mod patching;
mod transform;
mod vector;

use num_bigint::BigUint;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::arith::{Poly, PolyMatrix, Ring, Scalar};
use crate::grobner::{buchberger, buchberger_tracked, GrobnerError, ModuleOrder};
use transform::Transform;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QsError {
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("completion failed: {0}")]
    CompletionFailed(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Grobner(#[from] GrobnerError),
}

/// `M` with `M F = [I_n; 0]`, its inverse, and degree information.
#[derive(Clone, Debug)]
pub struct CompletionCertificate {
    pub m: PolyMatrix,
    pub m_inv: PolyMatrix,
    pub det: Scalar,
    pub deg_m: u32,
    pub bound: BigUint,
    pub within_bound: bool,
}

/// True when the maximal minors of the `m x n` matrix (`m >= n`) generate
/// the unit ideal, i.e. when the rows generate the whole of `R^n`.
pub fn is_unimodular(f: &PolyMatrix) -> bool {
    let (m, n) = (f.rows(), f.cols());
    if n == 0 || m < n {
        return false;
    }
    let rows: Vec<Vec<Poly>> = (0..m).map(|i| f.row(i)).collect();
    buchberger(&rows, &ModuleOrder::unshifted(n)).map(|gb| gb.is_whole_module()).unwrap_or(false)
}

/// `H` (n x m) with `H F = I_n`.
pub fn left_inverse(f: &PolyMatrix) -> Result<PolyMatrix, QsError> {
    let (m, n) = (f.rows(), f.cols());
    let ring = f.ring();
    let rows: Vec<Vec<Poly>> = (0..m).map(|i| f.row(i)).collect();
    let gb = buchberger_tracked(&rows, &ModuleOrder::unshifted(n))?;
    let mut h = PolyMatrix::zeros(ring, n, m);
    for i in 0..n {
        let e: Vec<Poly> = (0..n).map(|j| if i == j { Poly::one(ring) } else { Poly::zero(ring) }).collect();
        let c = gb.lift(&e).ok_or(QsError::NotUnimodular)?;
        for (j, x) in c.into_iter().enumerate() {
            h.set(i, j, x);
        }
    }
    if !(&h * f).is_identity() {
        return Err(QsError::CompletionFailed("left inverse check failed".into()));
    }
    Ok(h)
}

/// `2D(1+2D)(1+D^4)(1+D)^4` for `D = n_or_m (1 + deg_f)`.
pub fn qs_degree_bound(n_or_m: u64, deg_f: u64) -> BigUint {
    qs_bound_for(n_or_m * (1 + deg_f))
}

/// The same formula as a function of `D` directly.
pub fn qs_bound_for(d: u64) -> BigUint {
    let d = BigUint::from(d);
    let one = BigUint::from(1u32);
    let two = BigUint::from(2u32);
    &two * &d * (&one + &two * &d) * (&one + d.pow(4)) * (&one + &d).pow(4)
}

fn unit_stack(ring: Ring, m: usize, n: usize) -> PolyMatrix {
    let mut e = PolyMatrix::zeros(ring, m, n);
    for i in 0..n {
        e.set(i, i, Poly::one(ring));
    }
    e
}

/// Completion with an explicit generator; see [`complete_columns`].
pub fn complete_columns_with(f: &PolyMatrix, rng: &mut ChaCha8Rng) -> Result<CompletionCertificate, QsError> {
    let (m, n) = (f.rows(), f.cols());
    let ring = f.ring();
    if ring != Ring::St {
        return Err(QsError::Precondition("completion works over k[s,t]".into()));
    }
    if m <= n {
        return Err(QsError::Precondition(format!("need more rows than columns, got {m} x {n}")));
    }
    if !is_unimodular(f) {
        return Err(QsError::NotUnimodular);
    }
    let mut tr = Transform::identity(ring, m);
    let mut a = f.clone();
    for j in 0..n {
        let col: Vec<Poly> = (j..m).map(|i| a.get(i, j).clone()).collect();
        let step = vector::complete_vector(&col, rng)?.embed(j);
        a = &step.m * &a;
        tr.then_transform(&step);
        for i in 0..j {
            let x = a.get(i, j).clone();
            if !x.is_zero() {
                a.add_row_multiple(i, j, &-&x);
                tr.add_row(i, j, &-&x);
            }
        }
    }
    certify(f, tr.m, tr.inv)
}

/// `M` invertible over k[s,t] with `M F = [I_n; 0]`, for an `m x n` unimodular
/// `F` with `m > n`. Deterministic for a fixed seed.
pub fn complete_columns(f: &PolyMatrix, seed: u64) -> Result<CompletionCertificate, QsError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    complete_columns_with(f, &mut rng)
}

fn certify(f: &PolyMatrix, m: PolyMatrix, m_inv: PolyMatrix) -> Result<CompletionCertificate, QsError> {
    let ring = f.ring();
    let (rows, n) = (f.rows(), f.cols());
    if &m * f != unit_stack(ring, rows, n) {
        return Err(QsError::CompletionFailed("M F is not [I; 0]".into()));
    }
    if !(&m * &m_inv).is_identity() {
        return Err(QsError::CompletionFailed("M M^-1 is not the identity".into()));
    }
    let det = m
        .det()
        .constant_value()
        .filter(|c| !c.is_zero())
        .ok_or_else(|| QsError::CompletionFailed("determinant is not a nonzero constant".into()))?;
    let deg_m = m.degree().unwrap_or(0);
    let bound = qs_degree_bound(n as u64, f.degree().unwrap_or(0) as u64);
    let within_bound = BigUint::from(deg_m) <= bound;
    Ok(CompletionCertificate { m, m_inv, det, deg_m, bound, within_bound })
}

/// For a unimodular row-oriented `F` (`r x m`, `r < m`) returns an invertible
/// `M` with `F M = F` evaluated at `var = 0`.
pub fn variable_elimination_step(f: &PolyMatrix, var: usize, seed: u64) -> Result<PolyMatrix, QsError> {
    let ring = f.ring();
    if var >= ring.nvars() {
        return Err(QsError::Precondition(format!("no variable with index {var}")));
    }
    let m = f.cols();
    let f0 = f.map(|p| p.evaluate_var(var, &Scalar::zero()));
    if !f.entries().iter().any(|p| p.uses_var(var)) {
        return Ok(PolyMatrix::identity(ring, m));
    }
    let result = if f.rows() == 1 {
        match (0..m).find(|&j| f.get(0, j).is_constant() && !f.get(0, j).is_zero()) {
            Some(j) => {
                // col_i += (F(0)_i - F_i) / u * col_j
                let u = f.get(0, j).constant_value().unwrap().recip();
                let mut mm = PolyMatrix::identity(ring, m);
                for i in (0..m).filter(|&i| i != j) {
                    mm.set(j, i, (f0.get(0, i) - f.get(0, i)).scale(&u));
                }
                mm
            }
            None => compose_completions(f, &f0, seed)?,
        }
    } else {
        compose_completions(f, &f0, seed)?
    };
    if f * &result != f0 {
        return Err(QsError::CompletionFailed("F M differs from F at zero".into()));
    }
    Ok(result)
}

fn compose_completions(f: &PolyMatrix, f0: &PolyMatrix, seed: u64) -> Result<PolyMatrix, QsError> {
    let c1 = complete_columns(&f.transpose(), seed)?;
    let c0 = complete_columns(&f0.transpose(), seed)?;
    Ok(&c1.m.transpose() * &c0.m_inv.transpose())
}
