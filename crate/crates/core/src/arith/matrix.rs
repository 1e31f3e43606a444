use std::fmt;
use std::ops::Mul;

use num_traits::Zero;

use super::poly::Poly;
use super::{ArithError, Ring, Scalar};

/// Dense row-major matrix of polynomials sharing one ring.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Self {
        PolyMatrix { ring, rows, cols, data: vec![Poly::zero(ring); rows * cols] }
    }

    pub fn identity(ring: Ring, n: usize) -> Self {
        let mut m = PolyMatrix::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, Poly::one(ring));
        }
        m
    }

    pub fn from_rows(ring: Ring, rows: Vec<Vec<Poly>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        let data: Vec<Poly> = rows.into_iter().flatten().collect();
        assert!(data.iter().all(|p| p.ring() == ring), "ring mismatch");
        PolyMatrix { ring, rows: nrows, cols: ncols, data }
    }

    pub fn from_columns(ring: Ring, nrows: usize, cols: &[Vec<Poly>]) -> Self {
        let mut m = PolyMatrix::zeros(ring, nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), nrows, "column length mismatch");
            for (i, p) in c.iter().enumerate() {
                m.set(i, j, p.clone());
            }
        }
        m
    }

    pub fn from_ints(ring: Ring, rows: &[&[i64]]) -> Self {
        PolyMatrix::from_rows(
            ring,
            rows.iter().map(|r| r.iter().map(|&x| Poly::from_int(ring, x)).collect()).collect(),
        )
    }

    #[inline]
    pub fn ring(&self) -> Ring {
        self.ring
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        debug_assert_eq!(p.ring(), self.ring);
        self.data[i * self.cols + j] = p;
    }

    pub fn entries(&self) -> &[Poly] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<Poly> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<Poly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Poly>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn map<F: Fn(&Poly) -> Poly>(&self, f: F) -> PolyMatrix {
        let data: Vec<Poly> = self.data.iter().map(f).collect();
        let ring = data.first().map_or(self.ring, |p| p.ring());
        PolyMatrix { ring, rows: self.rows, cols: self.cols, data }
    }

    /// Matrix degree: maximum entry degree, `None` when every entry is zero.
    pub fn degree(&self) -> Option<u32> {
        self.data.iter().filter_map(|p| p.degree()).max()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|p| p.is_zero())
    }

    pub fn mul_vec(&self, v: &[Poly]) -> Vec<Poly> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Poly::zero(self.ring);
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += factor * row[src]
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &Poly) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let add = factor * self.get(src, j);
            let v = self.get(dst, j) + &add;
            self.set(dst, j, v);
        }
    }

    /// col[dst] += factor * col[src]
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &Poly) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let add = self.get(i, src) * factor;
            let v = self.get(i, dst) + &add;
            self.set(i, dst, v);
        }
    }

    pub fn scale_row(&mut self, i: usize, c: &Scalar) {
        for j in 0..self.cols {
            let v = self.get(i, j).scale(c);
            self.set(i, j, v);
        }
    }

    pub fn scale_col(&mut self, j: usize, c: &Scalar) {
        for i in 0..self.rows {
            let v = self.get(i, j).scale(c);
            self.set(i, j, v);
        }
    }

    /// Submatrix keeping the listed rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(self.ring, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    /// Fraction-free (Bareiss) determinant.
    pub fn det(&self) -> Poly {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Poly::one(self.ring);
        }
        let mut a = self.clone();
        let mut sign = false;
        let mut prev = Poly::one(self.ring);
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = !sign;
                    }
                    None => return Poly::zero(self.ring),
                }
            }
            let pivot = a.get(k, k).clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&pivot * a.get(i, j)) - &(a.get(i, k) * a.get(k, j));
                    let v = num.div_exact(&prev).expect("Bareiss division is exact");
                    a.set(i, j, v);
                }
                a.set(i, k, Poly::zero(self.ring));
            }
            prev = pivot;
        }
        let d = a.get(n - 1, n - 1).clone();
        if sign {
            -d
        } else {
            d
        }
    }

    /// Adjugate (transpose of the cofactor matrix).
    pub fn adjugate(&self) -> PolyMatrix {
        assert_eq!(self.rows, self.cols, "adjugate of a non-square matrix");
        let n = self.rows;
        let mut adj = PolyMatrix::zeros(self.ring, n, n);
        if n == 1 {
            adj.set(0, 0, Poly::one(self.ring));
            return adj;
        }
        for i in 0..n {
            let rows: Vec<usize> = (0..n).filter(|&r| r != i).collect();
            for j in 0..n {
                let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
                let minor = self.select(&rows, &cols).det();
                let cof = if (i + j) % 2 == 1 { -minor } else { minor };
                adj.set(j, i, cof);
            }
        }
        adj
    }

    /// Inverse over the polynomial ring via the adjugate. Succeeds exactly
    /// when the determinant is a nonzero constant; the product with the
    /// input is checked before returning.
    pub fn inverse(&self) -> Result<(PolyMatrix, Scalar), ArithError> {
        if self.rows != self.cols {
            return Err(ArithError::NotSquare);
        }
        let det = self.det();
        let c = match det.constant_value() {
            Some(c) if !c.is_zero() => c,
            _ => return Err(ArithError::NotInvertible),
        };
        let inv = self.adjugate().map(|p| p.scale(&c.recip()));
        if !(&inv * self).is_identity() || !(self * &inv).is_identity() {
            return Err(ArithError::NotInvertible);
        }
        Ok((inv, c))
    }

    pub fn substitute(&self, var: usize, value: &Poly) -> PolyMatrix {
        self.map(|p| p.substitute(var, value))
    }
}

/// Wrapper returning `(N, det)` as in the public contract.
pub fn mat_inverse(m: &PolyMatrix) -> Result<(PolyMatrix, Scalar), ArithError> {
    m.inverse()
}

impl<'a> Mul<&'a PolyMatrix> for &'a PolyMatrix {
    type Output = PolyMatrix;
    fn mul(self, rhs: &'a PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out = PolyMatrix::zeros(self.ring, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j) + &(a * b);
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|p| p.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
