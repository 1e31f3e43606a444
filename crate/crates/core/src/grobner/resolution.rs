use std::collections::BTreeMap;

use super::buchberger::{buchberger, syzygy_generators_graded};
use super::mvec::MVec;
use super::order::ModuleOrder;
use super::GrobnerError;
use crate::arith::{Monomial, Poly, PolyMatrix, Ring};

/// Graded free resolution `0 -> F2 -> F1 -> F0 -> J -> 0` of an ideal in
/// at most three variables. Shifts are recorded as positive degrees, so a
/// summand `S(-q)` is stored as `q`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    pub target_degree: u32,
    pub fixed_first_map: bool,
    /// The first map, as a row of generators.
    pub generators: Vec<Poly>,
    pub first_shifts: Vec<i64>,
    pub q: Vec<i64>,
    pub p: Vec<i64>,
    /// `r0 x r1`
    pub d1: PolyMatrix,
    /// `r1 x r2`
    pub d2: PolyMatrix,
}

impl FreeResolution {
    pub fn ranks(&self) -> (usize, usize, usize) {
        (self.first_shifts.len(), self.q.len(), self.p.len())
    }

    pub fn ring(&self) -> Ring {
        self.d1.ring()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    /// `(homological index, internal degree) -> multiplicity`
    pub entries: BTreeMap<(usize, i64), usize>,
    pub totals: Vec<usize>,
    /// Regularity of the ideal, `reg(S/J) + 1`.
    pub regularity: i64,
}

impl BettiTable {
    pub fn get(&self, i: usize, p: i64) -> usize {
        self.entries.get(&(i, p)).copied().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionInvariants {
    pub betti: BettiTable,
    pub a: usize,
    pub gamma1: Option<u32>,
    pub gamma2: Option<u32>,
}

fn vector_weight(v: &[Poly], shifts: &[i64]) -> Result<Option<i64>, GrobnerError> {
    let mut w = None;
    for (pos, p) in v.iter().enumerate() {
        for (m, _) in p.terms() {
            let x = m.degree() as i64 + shifts[pos];
            match w {
                None => w = Some(x),
                Some(y) if y != x => return Err(GrobnerError::NotHomogeneous),
                _ => {}
            }
        }
    }
    Ok(w)
}

/// Echelon form over the field, rows keyed by their leading (position, monomial).
struct Echelon {
    order: ModuleOrder,
    rows: Vec<MVec>,
}

impl Echelon {
    fn coefficient(v: &MVec, pos: usize, m: &Monomial) -> Option<crate::arith::Scalar> {
        v.terms.iter().find(|(p, n, _)| *p == pos && n == m).map(|t| t.2.clone())
    }

    /// Inserts `v` unless it is in the span; rows stay fully reduced, so a
    /// single pass eliminates every pivot.
    fn insert(&mut self, mut v: MVec) -> bool {
        for r in &self.rows {
            let (rp, rm, _) = r.lead().unwrap();
            if let Some(c) = Self::coefficient(&v, *rp, rm) {
                v = v.add_scaled(&-c, &Monomial::ONE, r, &self.order);
            }
        }
        if v.is_zero() {
            return false;
        }
        let v = v.monic();
        let (vp, vm, _) = v.lead().unwrap().clone();
        for r in self.rows.iter_mut() {
            if let Some(c) = Self::coefficient(r, vp, &vm) {
                *r = r.add_scaled(&-c, &Monomial::ONE, &v, &self.order);
            }
        }
        self.rows.push(v);
        true
    }
}

/// A minimal homogeneous generating set of the module spanned by `vectors`
/// in the graded free module with the given shifts, in ascending degree.
pub fn minimal_generators(vectors: &[Vec<Poly>], shifts: &[i64]) -> Result<Vec<Vec<Poly>>, GrobnerError> {
    let order = ModuleOrder::graded(shifts.to_vec());
    let mut graded: Vec<(i64, Vec<Poly>)> = Vec::new();
    for v in vectors {
        if v.len() != shifts.len() {
            return Err(GrobnerError::RankMismatch { expected: shifts.len(), found: v.len() });
        }
        if let Some(w) = vector_weight(v, shifts)? {
            graded.push((w, v.clone()));
        }
    }
    graded.sort_by_key(|(w, _)| *w);
    let mut kept: Vec<Vec<Poly>> = Vec::new();
    let mut i = 0;
    while i < graded.len() {
        let w = graded[i].0;
        let gb = if kept.is_empty() { None } else { Some(buchberger(&kept, &order)?) };
        let mut ech = Echelon { order: order.clone(), rows: Vec::new() };
        let mut chosen = Vec::new();
        while i < graded.len() && graded[i].0 == w {
            let v = &graded[i].1;
            let nf = match &gb {
                Some(g) => g.normal_form(v),
                None => v.clone(),
            };
            if ech.insert(MVec::from_polys(&nf, &order)) {
                chosen.push(v.clone());
            }
            i += 1;
        }
        kept.extend(chosen);
    }
    Ok(kept)
}

fn weights(cols: &[Vec<Poly>], shifts: &[i64]) -> Result<Vec<i64>, GrobnerError> {
    cols.iter()
        .map(|c| vector_weight(c, shifts).map(|w| w.expect("nonzero column")))
        .collect()
}

fn matrix_times_columns(rows: &[Vec<Poly>], cols: &[Vec<Poly>]) -> bool {
    // checks that every column is a relation among `rows` (given as columns of the left map)
    cols.iter().all(|c| {
        let n = rows.first().map_or(0, |r| r.len());
        (0..n).all(|i| {
            let mut acc = Poly::zero(c[0].ring());
            for (k, r) in rows.iter().enumerate() {
                acc = &acc + &(&r[i] * &c[k]);
            }
            acc.is_zero()
        })
    })
}

/// Graded free resolution of the ideal generated by homogeneous `gens`.
///
/// With `fixed_first_map` the first map is exactly the given row of
/// generators (zero generators included, with shift equal to the maximal
/// degree); the later maps are chosen minimal. Otherwise the generators are
/// minimized first and the whole resolution is minimal.
pub fn free_resolution(gens: &[Poly], fixed_first_map: bool) -> Result<FreeResolution, GrobnerError> {
    let ring = gens.first().ok_or(GrobnerError::EmptyInput)?.ring();
    if gens.iter().any(|g| !g.is_homogeneous()) {
        return Err(GrobnerError::NotHomogeneous);
    }
    if gens.iter().all(|g| g.is_zero()) {
        return Err(GrobnerError::EmptyInput);
    }
    let d = gens.iter().filter_map(|g| g.degree()).max().unwrap_or(0);
    let first: Vec<Poly> = if fixed_first_map {
        gens.to_vec()
    } else {
        let vs: Vec<Vec<Poly>> = gens.iter().map(|g| vec![g.clone()]).collect();
        minimal_generators(&vs, &[0])?.into_iter().map(|mut v| v.pop().unwrap()).collect()
    };
    let first_shifts: Vec<i64> = first.iter().map(|g| g.degree().unwrap_or(d) as i64).collect();
    let r0 = first.len();

    let as_vectors: Vec<Vec<Poly>> = first.iter().map(|g| vec![g.clone()]).collect();
    let syz1 = syzygy_generators_graded(&as_vectors, vec![0])?;
    let d1cols = minimal_generators(&syz1, &first_shifts)?;
    let q = weights(&d1cols, &first_shifts)?;

    let (d2cols, p) = if d1cols.is_empty() {
        (Vec::new(), Vec::new())
    } else {
        let syz2 = syzygy_generators_graded(&d1cols, first_shifts.clone())?;
        let d2cols = minimal_generators(&syz2, &q)?;
        let p = weights(&d2cols, &q)?;
        (d2cols, p)
    };

    if !d2cols.is_empty() {
        let syz3 = syzygy_generators_graded(&d2cols, q.clone())?;
        if !syz3.is_empty() {
            return Err(GrobnerError::NotExact("third syzygy module is nonzero".into()));
        }
    }
    let row: Vec<Vec<Poly>> = first.iter().map(|g| vec![g.clone()]).collect();
    if !matrix_times_columns(&row, &d1cols) || !matrix_times_columns(&d1cols, &d2cols) {
        return Err(GrobnerError::NotExact("consecutive maps do not compose to zero".into()));
    }
    if r0 as i64 - d1cols.len() as i64 + d2cols.len() as i64 != 1 {
        return Err(GrobnerError::NotExact("alternating rank sum differs from 1".into()));
    }
    let d1 = PolyMatrix::from_columns(ring, r0, &d1cols);
    let d2 = PolyMatrix::from_columns(ring, d1cols.len(), &d2cols);
    Ok(FreeResolution {
        target_degree: d,
        fixed_first_map,
        generators: first,
        first_shifts,
        q,
        p,
        d1,
        d2,
    })
}

/// Betti numbers, regularity and the degree data of a resolution. The
/// regularity and graded Betti numbers are meaningful for minimal
/// resolutions; for a fixed first map they describe the given complex.
pub fn resolution_invariants(res: &FreeResolution) -> ResolutionInvariants {
    let mut entries = BTreeMap::new();
    let modules = [&res.first_shifts, &res.q, &res.p];
    let mut regularity = i64::MIN;
    for (i, shifts) in modules.iter().enumerate() {
        for &x in shifts.iter() {
            *entries.entry((i, x)).or_insert(0) += 1;
            regularity = regularity.max(x - i as i64);
        }
    }
    let totals = modules.iter().map(|m| m.len()).collect();
    ResolutionInvariants {
        betti: BettiTable { entries, totals, regularity },
        a: res.p.len(),
        gamma1: res.d1.degree(),
        gamma2: res.d2.degree(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grobner::buchberger::{buchberger, syzygy_generators};

    fn v(i: usize) -> Poly {
        Poly::var(Ring::Stu, i)
    }

    fn surface_ideal() -> Vec<Poly> {
        let s2 = v(0).pow(2);
        let u2 = v(2).pow(2);
        vec![s2.clone(), v(1).pow(2), &s2 - &u2, &s2 + &u2]
    }

    #[test]
    fn koszul_linear() {
        let res = free_resolution(&[v(0), v(1), v(2)], false).unwrap();
        assert_eq!(res.first_shifts, vec![1, 1, 1]);
        assert_eq!(res.q, vec![2, 2, 2]);
        assert_eq!(res.p, vec![3]);
        let inv = resolution_invariants(&res);
        assert_eq!(inv.betti.totals, vec![3, 3, 1]);
        assert_eq!(inv.betti.regularity, 1);
    }

    #[test]
    fn koszul_squares() {
        let gens: Vec<Poly> = (0..3).map(|i| v(i).pow(2)).collect();
        let res = free_resolution(&gens, false).unwrap();
        assert_eq!(res.q, vec![4, 4, 4]);
        assert_eq!(res.p, vec![6]);
        assert_eq!(resolution_invariants(&res).betti.regularity, 4);
    }

    #[test]
    fn two_variables() {
        let res = free_resolution(&[v(0), v(1)], false).unwrap();
        assert_eq!(res.ranks(), (2, 1, 0));
        assert_eq!(res.q, vec![2]);
    }

    #[test]
    fn surface_example_fixed_first_map() {
        let res = free_resolution(&surface_ideal(), true).unwrap();
        assert_eq!(res.ranks(), (4, 4, 1));
        let mut q = res.q.clone();
        q.sort();
        assert_eq!(q, vec![2, 4, 4, 4]);
        assert_eq!(res.p, vec![6]);
        let inv = resolution_invariants(&res);
        assert_eq!((inv.a, inv.gamma1, inv.gamma2), (1, Some(2), Some(2)));
        // im(d2) has no constant entries
        assert!(res.d2.entries().iter().all(|p| !p.terms().iter().any(|(m, _)| m.is_one())));

        // d1 spans the same module as the displayed matrix (columns listed)
        let (s2, t2, u2) = (v(0).pow(2), v(1).pow(2), v(2).pow(2));
        let z = || Poly::zero(Ring::Stu);
        let c = |k: i64| Poly::from_int(Ring::Stu, k);
        let reference = vec![
            vec![c(-2), z(), c(1), c(1)],
            vec![-&t2, u2.clone(), t2.clone(), z()],
            vec![-&t2, s2.clone(), z(), z()],
            vec![&u2 - &s2, z(), s2.clone(), z()],
        ];
        let order = ModuleOrder::graded(res.first_shifts.clone());
        let ours = buchberger(&res.d1.columns(), &order).unwrap();
        let theirs = buchberger(&reference, &order).unwrap();
        for col in &reference {
            assert!(ours.contains(col));
        }
        for col in res.d1.columns() {
            assert!(theirs.contains(&col));
        }
        // and d2 spans the relations among the displayed columns
        let rel = vec![z(), s2.clone(), -&u2, -&t2];
        for (i, _) in reference[0].iter().enumerate() {
            let sum = (0..4).fold(z(), |acc, k| &acc + &(&reference[k][i] * &rel[k]));
            assert!(sum.is_zero());
        }
    }

    #[test]
    fn minimal_generators_drop_redundancy() {
        let gens = vec![vec![v(0)], vec![v(1)], vec![&v(0) + &v(1)], vec![&v(0) * &v(2)]];
        let min = minimal_generators(&gens, &[0]).unwrap();
        assert_eq!(min.len(), 2);
    }

    #[test]
    fn syzygies_of_surface_generators_are_relations() {
        let g = surface_ideal();
        let vs: Vec<Vec<Poly>> = g.iter().map(|p| vec![p.clone()]).collect();
        for w in syzygy_generators(&vs).unwrap() {
            let sum = w.iter().zip(&g).fold(Poly::zero(Ring::Stu), |acc, (a, b)| &acc + &(a * b));
            assert!(sum.is_zero());
        }
    }
}
