use std::cmp::Ordering;

use crate::arith::Monomial;

/// Term order on a free module `R^r`. A term is a pair (position, monomial).
///
/// `Graded` compares the shifted degree `deg(m) + shift[pos]` first, then
/// grevlex on the monomials, then prefers the lower position. With a single
/// zero shift it is plain grevlex on the ring.
///
/// `Schreyer` is induced by a list of leading terms `(pos_i, m_i)` in another
/// module: `(i, n)` is compared through `(pos_i, n * m_i)` in `base`, ties
/// broken by preferring the lower index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleOrder {
    Graded { shifts: Vec<i64> },
    Schreyer { leads: Vec<(usize, Monomial)>, base: Box<ModuleOrder> },
}

impl ModuleOrder {
    /// Grevlex on the ring itself (rank one, no shift).
    pub fn grevlex() -> Self {
        ModuleOrder::Graded { shifts: vec![0] }
    }

    pub fn graded(shifts: Vec<i64>) -> Self {
        ModuleOrder::Graded { shifts }
    }

    pub fn unshifted(rank: usize) -> Self {
        ModuleOrder::Graded { shifts: vec![0; rank] }
    }

    pub fn rank(&self) -> usize {
        match self {
            ModuleOrder::Graded { shifts } => shifts.len(),
            ModuleOrder::Schreyer { leads, .. } => leads.len(),
        }
    }

    /// Weighted degree of a term, used for the sugar strategy.
    pub fn weight(&self, pos: usize, m: &Monomial) -> i64 {
        match self {
            ModuleOrder::Graded { shifts } => m.degree() as i64 + shifts[pos],
            ModuleOrder::Schreyer { leads, base } => {
                let (p, lm) = &leads[pos];
                base.weight(*p, &m.mul(lm))
            }
        }
    }

    pub fn cmp_terms(&self, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
        match self {
            ModuleOrder::Graded { shifts } => {
                let wa = a.1.degree() as i64 + shifts[a.0];
                let wb = b.1.degree() as i64 + shifts[b.0];
                wa.cmp(&wb)
                    .then_with(|| a.1.grevlex_cmp(b.1))
                    .then_with(|| b.0.cmp(&a.0))
            }
            ModuleOrder::Schreyer { leads, base } => {
                let (pa, la) = &leads[a.0];
                let (pb, lb) = &leads[b.0];
                base.cmp_terms((*pa, &a.1.mul(la)), (*pb, &b.1.mul(lb)))
                    .then_with(|| b.0.cmp(&a.0))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_position_tiebreak() {
        let o = ModuleOrder::unshifted(2);
        let s = Monomial::var(0);
        assert_eq!(o.cmp_terms((0, &s), (1, &s)), Ordering::Greater);
        let shifted = ModuleOrder::graded(vec![0, 5]);
        assert_eq!(shifted.cmp_terms((0, &s), (1, &Monomial::ONE)), Ordering::Less);
    }

    #[test]
    fn schreyer_uses_lead_products() {
        let s = Monomial::var(0);
        let t = Monomial::var(1);
        let o = ModuleOrder::Schreyer {
            leads: vec![(0, s.mul(&s)), (0, t)],
            base: Box::new(ModuleOrder::grevlex()),
        };
        // e_1 * t maps to s^2 t, e_2 * s^2 also to s^2 t: tie goes to e_1
        assert_eq!(o.cmp_terms((0, &t), (1, &s.mul(&s))), Ordering::Greater);
        assert_eq!(o.cmp_terms((0, &Monomial::ONE), (1, &s)), Ordering::Greater);
    }
}
