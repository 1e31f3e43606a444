//! Invertible matrices built from row operations, kept together with their
//! inverses.

use crate::arith::{Poly, PolyMatrix, Ring, Scalar};

#[derive(Clone, Debug)]
pub(crate) struct Transform {
    pub m: PolyMatrix,
    pub inv: PolyMatrix,
}

impl Transform {
    pub fn identity(ring: Ring, k: usize) -> Self {
        Transform { m: PolyMatrix::identity(ring, k), inv: PolyMatrix::identity(ring, k) }
    }

    pub fn size(&self) -> usize {
        self.m.rows()
    }

    /// row[dst] += f * row[src]
    pub fn add_row(&mut self, dst: usize, src: usize, f: &Poly) {
        self.m.add_row_multiple(dst, src, f);
        self.inv.add_col_multiple(src, dst, &-f);
    }

    pub fn swap(&mut self, a: usize, b: usize) {
        self.m.swap_rows(a, b);
        self.inv.swap_cols(a, b);
    }

    pub fn scale(&mut self, i: usize, c: &Scalar) {
        self.m.scale_row(i, c);
        self.inv.scale_col(i, &c.recip());
    }

    /// Left-multiplies by `u` (with inverse `uinv`).
    pub fn then(&mut self, u: &PolyMatrix, uinv: &PolyMatrix) {
        self.m = u * &self.m;
        self.inv = &self.inv * uinv;
    }

    pub fn then_transform(&mut self, t: &Transform) {
        self.then(&t.m, &t.inv);
    }

    /// `diag(I_j, self)`
    pub fn embed(&self, j: usize) -> Transform {
        let k = self.size();
        let ring = self.m.ring();
        let mut out = Transform::identity(ring, j + k);
        for a in 0..k {
            for b in 0..k {
                out.m.set(j + a, j + b, self.m.get(a, b).clone());
                out.inv.set(j + a, j + b, self.inv.get(a, b).clone());
            }
        }
        out
    }

    pub fn substitute(&self, var: usize, value: &Poly) -> Transform {
        Transform { m: self.m.substitute(var, value), inv: self.inv.substitute(var, value) }
    }
}

/// A vector together with the transform that has been applied to it.
pub(crate) struct Work {
    pub v: Vec<Poly>,
    pub tr: Transform,
}

impl Work {
    pub fn new(v: Vec<Poly>) -> Self {
        let ring = v[0].ring();
        let k = v.len();
        Work { v, tr: Transform::identity(ring, k) }
    }

    pub fn ring(&self) -> Ring {
        self.v[0].ring()
    }

    pub fn add_row(&mut self, dst: usize, src: usize, f: &Poly) {
        if f.is_zero() {
            return;
        }
        self.v[dst] = &self.v[dst] + &(f * &self.v[src]);
        self.tr.add_row(dst, src, f);
    }

    pub fn swap(&mut self, a: usize, b: usize) {
        if a != b {
            self.v.swap(a, b);
            self.tr.swap(a, b);
        }
    }

    pub fn scale(&mut self, i: usize, c: &Scalar) {
        self.v[i] = self.v[i].scale(c);
        self.tr.scale(i, c);
    }

    pub fn apply(&mut self, t: &Transform) {
        self.v = t.m.mul_vec(&self.v);
        self.tr.then_transform(t);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn inverse_is_maintained() {
        let r = Ring::St;
        let s = Poly::var(r, 0);
        let t = Poly::var(r, 1);
        let mut w = Work::new(vec![s.clone(), t.clone(), Poly::one(r)]);
        w.add_row(0, 2, &-&s);
        w.swap(0, 2);
        w.scale(1, &int(3));
        w.add_row(1, 0, &(&s * &t));
        assert!((&w.tr.m * &w.tr.inv).is_identity());
        assert_eq!(w.tr.m.mul_vec(&[s, t.clone(), Poly::one(r)]), w.v);
    }
}
