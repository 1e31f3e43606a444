//! Sorted sparse vectors in a free module, the working representation of
//! the Buchberger engine.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::order::ModuleOrder;
use crate::arith::{Monomial, Poly, Ring, Scalar};

pub(crate) type Term = (usize, Monomial, Scalar);

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct MVec {
    pub terms: Vec<Term>,
}

impl MVec {
    pub fn zero() -> Self {
        MVec { terms: Vec::new() }
    }

    pub fn from_polys(v: &[Poly], order: &ModuleOrder) -> Self {
        let mut terms: Vec<Term> = Vec::new();
        for (pos, p) in v.iter().enumerate() {
            for (m, c) in p.terms() {
                terms.push((pos, *m, c.clone()));
            }
        }
        terms.sort_by(|a, b| order.cmp_terms((b.0, &b.1), (a.0, &a.1)));
        MVec { terms }
    }

    pub fn to_polys(&self, ring: Ring, rank: usize) -> Vec<Poly> {
        let mut buckets: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); rank];
        for (pos, m, c) in &self.terms {
            buckets[*pos].push((*m, c.clone()));
        }
        buckets.into_iter().map(|ts| Poly::from_terms(ring, ts)).collect()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Largest weighted degree among the terms.
    pub fn max_weight(&self, order: &ModuleOrder) -> i64 {
        self.terms.iter().map(|(p, m, _)| order.weight(*p, m)).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Scalar) -> MVec {
        if c.is_zero() {
            return MVec::zero();
        }
        MVec { terms: self.terms.iter().map(|(p, m, a)| (*p, *m, a * c)).collect() }
    }

    pub fn monic(&self) -> MVec {
        match self.lead() {
            Some((_, _, c)) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    /// `self + c * m * g`; multiplication by a monomial preserves the order,
    /// so this is a single merge.
    pub fn add_scaled(&self, c: &Scalar, m: &Monomial, g: &MVec, order: &ModuleOrder) -> MVec {
        if c.is_zero() || g.is_zero() {
            return self.clone();
        }
        let a = &self.terms;
        let b = &g.terms;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let mb = b[j].1.mul(m);
            match order.cmp_terms((a[i].0, &a[i].1), (b[j].0, &mb)) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0, mb, &b[j].2 * c));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = &a[i].2 + &b[j].2 * c;
                    if !v.is_zero() {
                        out.push((a[i].0, mb, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            out.push((t.0, t.1.mul(m), &t.2 * c));
        }
        MVec { terms: out }
    }
}
