use num_traits::Zero;
use thiserror::Error;

use crate::arith::{Poly, PolyMatrix, Ring, Scalar};
use crate::grobner::{buchberger, poly_syzygies, GrobnerError, ModuleOrder};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("not a syzygy (vector {0})")]
    NotSyzygy(usize),
    #[error("outer product not proportional")]
    NotProportional,
    #[error("α = 0 (degenerate triple)")]
    Degenerate,
    #[error("does not generate Syz")]
    DoesNotGenerate,
    #[error("expected three vectors of length four")]
    Shape,
    #[error(transparent)]
    Grobner(#[from] GrobnerError),
}

/// The signed 3x3 minors of the 3x4 matrix with rows `p, q, r`, obtained by
/// deleting columns 1..4 in turn, with signs `+, -, +, -`.
pub fn outer_product(p: &[Poly], q: &[Poly], r: &[Poly]) -> Vec<Poly> {
    let ring = p[0].ring();
    let m = PolyMatrix::from_rows(ring, vec![p.to_vec(), q.to_vec(), r.to_vec()]);
    (0..4)
        .map(|i| {
            let cols: Vec<usize> = (0..4).filter(|&c| c != i).collect();
            let minor = m.select(&[0, 1, 2], &cols).det();
            if i % 2 == 1 {
                -minor
            } else {
                minor
            }
        })
        .collect()
}

fn dot(v: &[Poly], a: &[Poly]) -> Poly {
    v.iter().zip(a).fold(Poly::zero(a[0].ring()), |acc, (x, y)| &acc + &(x * y))
}

/// Checks that `basis` is a μ-basis of the parametrization `a` and returns α
/// with `[p, q, r] = α a`.
pub fn verify_mu_basis(basis: &[Vec<Poly>], a: &[Poly]) -> Result<Scalar, VerifyError> {
    if basis.len() != 3 || a.len() != 4 || basis.iter().any(|v| v.len() != 4) {
        return Err(VerifyError::Shape);
    }
    let ring: Ring = a[0].ring();
    for (i, v) in basis.iter().enumerate() {
        if !dot(v, a).is_zero() {
            return Err(VerifyError::NotSyzygy(i));
        }
    }
    let op = outer_product(&basis[0], &basis[1], &basis[2]);
    if op.iter().all(|p| p.is_zero()) {
        return Err(VerifyError::Degenerate);
    }
    let i = a.iter().position(|p| !p.is_zero()).ok_or(VerifyError::NotProportional)?;
    let alpha = op[i]
        .div_exact(&a[i])
        .and_then(|q| if q.is_zero() { Some(Scalar::zero()) } else { q.constant_value() })
        .ok_or(VerifyError::NotProportional)?;
    if alpha.is_zero() {
        return Err(VerifyError::Degenerate);
    }
    if op.iter().zip(a).any(|(x, y)| *x != y.scale(&alpha)) {
        return Err(VerifyError::NotProportional);
    }
    let cols: Vec<usize> = (0..4).filter(|&c| c != i).collect();
    for w in poly_syzygies(a)? {
        if !in_span(basis, &w, &cols) {
            return Err(VerifyError::DoesNotGenerate);
        }
    }
    debug_assert_eq!(ring, basis[0][0].ring());
    Ok(alpha)
}

/// Membership of `w` in the span of three independent vectors, by Cramer's
/// rule on the columns `cols` (whose minor must be nonzero).
fn in_span(basis: &[Vec<Poly>], w: &[Poly], cols: &[usize]) -> bool {
    let ring = w[0].ring();
    let minor = |rows: Vec<Vec<Poly>>| PolyMatrix::from_rows(ring, rows).select(&[0, 1, 2], cols).det();
    let delta = minor(basis.to_vec());
    let mut acc = vec![Poly::zero(ring); 4];
    for k in 0..3 {
        let mut rows = basis.to_vec();
        rows[k] = w.to_vec();
        let Some(x) = minor(rows).div_exact(&delta) else { return false };
        for (a, b) in acc.iter_mut().zip(&basis[k]) {
            *a = &*a + &(&x * b);
        }
    }
    acc == w
}

/// True when the two families span the same submodule of `R^4`.
pub fn same_module(x: &[Vec<Poly>], y: &[Vec<Poly>]) -> Result<bool, GrobnerError> {
    let order = ModuleOrder::unshifted(4);
    let gx = buchberger(x, &order)?;
    let gy = buchberger(y, &order)?;
    Ok(y.iter().all(|v| gx.contains(v)) && x.iter().all(|v| gy.contains(v)))
}
