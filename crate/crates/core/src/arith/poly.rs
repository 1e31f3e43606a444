use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, Ring};
use super::Scalar;

/// Sparse polynomial over the rationals.
///
/// Terms are kept sorted in grevlex-descending order with no zero
/// coefficients, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    ring: Ring,
    terms: Vec<(Monomial, Scalar)>,
}

impl Poly {
    pub fn zero(ring: Ring) -> Self {
        Poly { ring, terms: Vec::new() }
    }

    pub fn one(ring: Ring) -> Self {
        Poly::constant(ring, Scalar::one())
    }

    pub fn constant(ring: Ring, c: Scalar) -> Self {
        if c.is_zero() {
            Poly::zero(ring)
        } else {
            Poly { ring, terms: vec![(Monomial::ONE, c)] }
        }
    }

    pub fn from_int(ring: Ring, c: i64) -> Self {
        Poly::constant(ring, Scalar::from_integer(c.into()))
    }

    pub fn var(ring: Ring, i: usize) -> Self {
        assert!(i < ring.nvars(), "variable index out of range for ring");
        Poly { ring, terms: vec![(Monomial::var(i), Scalar::one())] }
    }

    pub fn term(ring: Ring, m: Monomial, c: Scalar) -> Self {
        if c.is_zero() {
            Poly::zero(ring)
        } else {
            Poly { ring, terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms<I>(ring: Ring, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (m, c) in terms {
            debug_assert!(m.exponents()[ring.nvars()..].iter().all(|&e| e == 0));
            *acc.entry(m).or_insert_with(Scalar::zero) += c;
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Poly { ring, terms }
    }

    /// Caller guarantees descending order, distinct monomials and no zeros.
    pub(crate) fn from_sorted(ring: Ring, terms: Vec<(Monomial, Scalar)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Poly { ring, terms }
    }

    #[inline]
    pub fn ring(&self) -> Ring {
        self.ring
    }

    #[inline]
    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn lm(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn lc(&self) -> Option<&Scalar> {
        self.terms.first().map(|(_, c)| c)
    }

    /// True for zero and for nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// The value of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<Scalar> {
        match self.terms.as_slice() {
            [] => Some(Scalar::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self.terms.as_slice(), [(m, c)] if m.is_one() && c.is_one())
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => {
                let d = m.degree();
                self.terms.iter().all(|(m, _)| m.degree() == d)
            }
        }
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exponent(var) > 0)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.ring);
        }
        Poly {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.ring);
        }
        Poly {
            ring: self.ring,
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect(),
        }
    }

    /// `self + c * m * g`, by a single merge pass.
    pub fn add_scaled(&self, c: &Scalar, m: &Monomial, g: &Poly) -> Poly {
        if c.is_zero() || g.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        let mut j = 0;
        let a = &self.terms;
        let b = &g.terms;
        while i < a.len() && j < b.len() {
            let mb = b[j].0.mul(m);
            match a[i].0.cmp(&mb) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((mb, &b[j].1 * c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let v = &a[i].1 + &b[j].1 * c;
                    if !v.is_zero() {
                        out.push((mb, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            out.push((t.0.mul(m), &t.1 * c));
        }
        Poly { ring: self.ring, terms: out }
    }

    pub fn monic(&self) -> Poly {
        match self.lc() {
            None => self.clone(),
            Some(c) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.exponent(var)).max()
    }

    /// Coefficients with respect to `var`: entry k is the coefficient of var^k.
    pub fn coefficients_in(&self, var: usize) -> Vec<Poly> {
        let Some(deg) = self.degree_in(var) else {
            return Vec::new();
        };
        let mut buckets: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); deg as usize + 1];
        for (m, c) in &self.terms {
            buckets[m.exponent(var) as usize].push((m.without(var), c.clone()));
        }
        buckets
            .into_iter()
            .map(|mut ts| {
                // removing one variable can break grevlex order
                ts.sort_by(|a, b| b.0.cmp(&a.0));
                Poly { ring: self.ring, terms: ts }
            })
            .collect()
    }

    pub fn leading_coefficient_in(&self, var: usize) -> Poly {
        self.coefficients_in(var).pop().unwrap_or_else(|| Poly::zero(self.ring))
    }

    pub fn from_coefficients_in(ring: Ring, var: usize, coeffs: &[Poly]) -> Poly {
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            let vk = Monomial::var_pow(var, k as u32);
            for (m, a) in c.terms() {
                terms.push((m.mul(&vk), a.clone()));
            }
        }
        Poly::from_terms(ring, terms)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one(self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Replaces `var` by `value` (Horner scheme in `var`).
    pub fn substitute(&self, var: usize, value: &Poly) -> Poly {
        assert_eq!(self.ring, value.ring, "ring mismatch in substitution");
        if !self.uses_var(var) {
            return self.clone();
        }
        let coeffs = self.coefficients_in(var);
        let mut acc = Poly::zero(self.ring);
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    pub fn evaluate_var(&self, var: usize, value: &Scalar) -> Poly {
        let mut powers: Vec<Scalar> = vec![Scalar::one()];
        Poly::from_terms(
            self.ring,
            self.terms.iter().map(|(m, c)| {
                let k = m.exponent(var) as usize;
                while powers.len() <= k {
                    let next = powers.last().unwrap() * value;
                    powers.push(next);
                }
                (m.without(var), c * &powers[k])
            }),
        )
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Scalar {
        let mut total = Scalar::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, x) in point.iter().enumerate().take(self.ring.nvars()) {
                let e = m.exponent(i);
                if e > 0 {
                    v *= num_traits::pow::pow(x.clone(), e as usize);
                }
            }
            total += v;
        }
        total
    }

    /// Division by a single polynomial under grevlex: returns (quotient, remainder).
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let (dm, dc) = d.leading_term().unwrap();
        let dc_inv = dc.recip();
        let mut q = Vec::new();
        let mut r = Vec::new();
        let mut p = self.clone();
        while let Some((m, c)) = p.terms.first().cloned() {
            match m.div(dm) {
                Some(qm) => {
                    let qc = &c * &dc_inv;
                    p = p.add_scaled(&-&qc, &qm, d);
                    q.push((qm, qc));
                }
                None => {
                    r.push(p.terms.remove(0));
                }
            }
        }
        (Poly::from_terms(self.ring, q), Poly::from_sorted(self.ring, r))
    }

    /// Exact quotient, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (dm, dc) = d.leading_term()?;
        let dc_inv = dc.recip();
        let mut q = Vec::new();
        let mut p = self.clone();
        while let Some((m, c)) = p.terms.first().cloned() {
            let qm = m.div(dm)?;
            let qc = &c * &dc_inv;
            p = p.add_scaled(&-&qc, &qm, d);
            q.push((qm, qc));
        }
        Some(Poly::from_sorted(self.ring, q))
    }

    /// Reinterprets the polynomial in another ring; panics if a dropped
    /// variable occurs.
    pub fn in_ring(&self, ring: Ring) -> Poly {
        for v in ring.nvars()..self.ring.nvars() {
            assert!(!self.uses_var(v), "variable {} occurs", self.ring.var_name(v));
        }
        Poly { ring, terms: self.terms.clone() }
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()))
    }

    /// `(terms with integer coefficients, D)` such that `self = terms / D`.
    pub fn integer_form(&self) -> (Vec<(Monomial, BigInt)>, BigInt) {
        let den = self.denominator_lcm();
        let ts = self
            .terms
            .iter()
            .map(|(m, c)| (*m, c.numer() * (&den / c.denom())))
            .collect();
        (ts, den)
    }

    pub fn to_string_canonical(&self) -> String {
        format!("{}", self)
    }
}

fn mul_polys(a: &Poly, b: &Poly) -> Poly {
    assert_eq!(a.ring, b.ring, "ring mismatch in multiplication");
    if a.is_zero() || b.is_zero() {
        return Poly::zero(a.ring);
    }
    if a.len() == 1 {
        let (m, c) = &a.terms[0];
        return b.mul_term(m, c);
    }
    if b.len() == 1 {
        let (m, c) = &b.terms[0];
        return a.mul_term(m, c);
    }
    // integer products avoid a gcd per coefficient multiplication
    let (ia, da) = a.integer_form();
    let (ib, db) = b.integer_form();
    let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(a.len() * b.len() / 2 + 1);
    for (ma, ca) in &ia {
        for (mb, cb) in &ib {
            let e = acc.entry(ma.mul(mb)).or_insert_with(BigInt::zero);
            *e += ca * cb;
        }
    }
    let den = da * db;
    let mut terms: Vec<(Monomial, Scalar)> = acc
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(m, c)| (m, Scalar::new(c, den.clone())))
        .collect();
    terms.sort_by(|x, y| y.0.cmp(&x.0));
    Poly { ring: a.ring, terms }
}

fn add_polys(a: &Poly, b: &Poly, negate_b: bool) -> Poly {
    assert_eq!(a.ring, b.ring, "ring mismatch in addition");
    let sign = if negate_b { -Scalar::one() } else { Scalar::one() };
    a.add_scaled(&sign, &Monomial::ONE, b)
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        add_polys(self, rhs, false)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        add_polys(self, rhs, true)
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        mul_polys(self, rhs)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        add_polys(&self, &rhs, false)
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        add_polys(&self, &rhs, true)
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        mul_polys(&self, &rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

fn fmt_scalar_abs(c: &Scalar) -> String {
    let a = c.abs();
    if a.is_integer() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

/// Canonical text: grevlex-descending terms, reduced coefficients,
/// explicit `*` between factors, `0` for the zero polynomial.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let abs_one = c.abs().is_one();
            if m.is_one() {
                write!(f, "{}", fmt_scalar_abs(c))?;
            } else if abs_one {
                write!(f, "{}", m.display(self.ring))?;
            } else {
                write!(f, "{}*{}", fmt_scalar_abs(c), m.display(self.ring))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
