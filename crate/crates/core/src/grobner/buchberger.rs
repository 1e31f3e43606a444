use std::collections::HashMap;


use super::mvec::MVec;
use super::order::ModuleOrder;
use super::GrobnerError;
use crate::arith::{Monomial, Poly, Ring, Scalar};

/// A Gröbner basis of an ideal (rank one) or of a submodule of `R^rank`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    rank: usize,
    order: ModuleOrder,
    elems: Vec<MVec>,
    // row k expresses element k in terms of the original generators
    transforms: Option<Vec<Vec<Poly>>>,
    reduced: bool,
}

struct Elem {
    v: MVec,
    sugar: i64,
    track: Option<Vec<Poly>>,
}

enum Item {
    Input(usize),
    Pair { i: usize, j: usize, lcm: Monomial },
}

struct Pending {
    item: Item,
    pos: usize,
    sugar: i64,
}

type Quotients = HashMap<usize, Vec<(Monomial, Scalar)>>;

pub(crate) struct Run {
    pub gb: GroebnerBasis,
    pub syzygies: Vec<Vec<Poly>>,
}

fn check_input(gens: &[Vec<Poly>], order: &ModuleOrder) -> Result<Ring, GrobnerError> {
    let rank = order.rank();
    let mut ring = None;
    for g in gens {
        if g.len() != rank {
            return Err(GrobnerError::RankMismatch { expected: rank, found: g.len() });
        }
        for p in g {
            match ring {
                None => ring = Some(p.ring()),
                Some(r) if r != p.ring() => return Err(GrobnerError::MixedRings),
                _ => {}
            }
        }
    }
    ring.ok_or(GrobnerError::EmptyInput)
}

fn reduce(
    elems: &[Elem],
    mut v: MVec,
    skip: Option<usize>,
    order: &ModuleOrder,
) -> (MVec, Quotients) {
    let mut quo: Quotients = HashMap::new();
    let mut idx = 0;
    while idx < v.terms.len() {
        let (pos, m) = (v.terms[idx].0, v.terms[idx].1);
        let mut best: Option<(usize, Monomial)> = None;
        for (k, e) in elems.iter().enumerate() {
            if Some(k) == skip {
                continue;
            }
            let Some((gp, gm, _)) = e.v.lead() else { continue };
            if *gp != pos {
                continue;
            }
            if let Some(q) = m.div(gm) {
                if best.map_or(true, |(b, _)| e.v.len() < elems[b].v.len()) {
                    best = Some((k, q));
                }
            }
        }
        match best {
            Some((k, q)) => {
                let g = &elems[k].v;
                let c = &v.terms[idx].2 / &g.terms[0].2;
                v = v.add_scaled(&-&c, &q, g, order);
                quo.entry(k).or_default().push((q, c));
            }
            None => idx += 1,
        }
    }
    (v, quo)
}

/// `track - sum_k q_k * T_k`
fn apply_quotients(ring: Ring, track: &mut [Poly], quo: &Quotients, elems: &[Elem]) {
    for (k, ts) in quo {
        let q = Poly::from_terms(ring, ts.iter().cloned());
        let tk = elems[*k].track.as_ref().expect("tracking enabled");
        for (x, y) in track.iter_mut().zip(tk.iter()) {
            if !y.is_zero() {
                *x = &*x - &(&q * y);
            }
        }
    }
}

fn lead_pos_mono(v: &MVec) -> (usize, Monomial) {
    let (p, m, _) = v.lead().expect("nonzero element");
    (*p, *m)
}

pub(crate) fn run(gens: &[Vec<Poly>], order: &ModuleOrder, tracking: bool) -> Result<Run, GrobnerError> {
    let ring = check_input(gens, order)?;
    let rank = order.rank();
    let n = gens.len();
    let inputs: Vec<MVec> = gens.iter().map(|g| MVec::from_polys(g, order)).collect();
    let mut elems: Vec<Elem> = Vec::new();
    let mut syz: Vec<Vec<Poly>> = Vec::new();
    let mut queue: Vec<Pending> = inputs
        .iter()
        .enumerate()
        .map(|(l, v)| Pending {
            item: Item::Input(l),
            pos: v.lead().map_or(0, |t| t.0),
            sugar: v.max_weight(order),
        })
        .collect();
    let unit = |l: usize| -> Vec<Poly> {
        (0..n).map(|i| if i == l { Poly::one(ring) } else { Poly::zero(ring) }).collect()
    };

    while !queue.is_empty() {
        let pick = (0..queue.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&queue[a], &queue[b]);
                pa.sugar.cmp(&pb.sugar).then_with(|| match (&pa.item, &pb.item) {
                    (Item::Input(x), Item::Input(y)) => x.cmp(y),
                    (Item::Input(_), _) => std::cmp::Ordering::Less,
                    (_, Item::Input(_)) => std::cmp::Ordering::Greater,
                    (Item::Pair { lcm: la, .. }, Item::Pair { lcm: lb, .. }) => {
                        order.cmp_terms((pa.pos, la), (pb.pos, lb))
                    }
                })
            })
            .unwrap();
        let Pending { item, pos, sugar } = queue.swap_remove(pick);

        let (v, track) = match item {
            Item::Input(l) => {
                let track = if tracking { Some(unit(l)) } else { None };
                (inputs[l].clone(), track)
            }
            Item::Pair { i, j, lcm } => {
                let (_, mi) = lead_pos_mono(&elems[i].v);
                let (_, mj) = lead_pos_mono(&elems[j].v);
                if rank == 1 && mi.is_coprime(&mj) {
                    if tracking {
                        let gi = elems[i].v.to_polys(ring, 1).pop().unwrap();
                        let gj = elems[j].v.to_polys(ring, 1).pop().unwrap();
                        let ti = elems[i].track.as_ref().unwrap();
                        let tj = elems[j].track.as_ref().unwrap();
                        syz.push(ti.iter().zip(tj).map(|(a, b)| &(&gj * a) - &(&gi * b)).collect());
                    }
                    continue;
                }
                let chain = elems.iter().enumerate().any(|(k, e)| {
                    if k == i || k == j {
                        return false;
                    }
                    let (pk, mk) = lead_pos_mono(&e.v);
                    pk == pos && mk.divides(&lcm) && mi.lcm(&mk) != lcm && mj.lcm(&mk) != lcm
                });
                if chain {
                    continue;
                }
                let qi = lcm.div(&mi).unwrap();
                let qj = lcm.div(&mj).unwrap();
                let one = Scalar::from_integer(1.into());
                let s = MVec::zero()
                    .add_scaled(&one, &qi, &elems[i].v, order)
                    .add_scaled(&-&one, &qj, &elems[j].v, order);
                let track = if tracking {
                    let ti = elems[i].track.as_ref().unwrap();
                    let tj = elems[j].track.as_ref().unwrap();
                    Some(
                        ti.iter()
                            .zip(tj)
                            .map(|(a, b)| &a.mul_term(&qi, &one) - &b.mul_term(&qj, &one))
                            .collect(),
                    )
                } else {
                    None
                };
                (s, track)
            }
        };

        let (r, quo) = reduce(&elems, v, None, order);
        let track = track.map(|mut t| {
            apply_quotients(ring, &mut t, &quo, &elems);
            t
        });
        if r.is_zero() {
            if let Some(t) = track {
                if t.iter().any(|p| !p.is_zero()) {
                    syz.push(t);
                }
            }
            continue;
        }
        let lc_inv = r.lead().unwrap().2.recip();
        let r = r.scale(&lc_inv);
        let track = track.map(|t| t.iter().map(|p| p.scale(&lc_inv)).collect());
        let (pk, mk) = lead_pos_mono(&r);
        let k = elems.len();
        let sugar_k = sugar.max(r.max_weight(order));
        for (i, e) in elems.iter().enumerate() {
            let (pi, mi) = lead_pos_mono(&e.v);
            if pi != pk {
                continue;
            }
            let lcm = mi.lcm(&mk);
            let s1 = e.sugar + (lcm.degree() - mi.degree()) as i64;
            let s2 = sugar_k + (lcm.degree() - mk.degree()) as i64;
            queue.push(Pending { item: Item::Pair { i, j: k, lcm }, pos: pk, sugar: s1.max(s2) });
        }
        elems.push(Elem { v: r, sugar: sugar_k, track });
    }

    // minimize: drop elements whose lead is divisible by another lead
    let leads: Vec<(usize, Monomial)> = elems.iter().map(|e| lead_pos_mono(&e.v)).collect();
    let keep: Vec<usize> = (0..elems.len())
        .filter(|&k| {
            !(0..elems.len()).any(|j| {
                j != k
                    && leads[j].0 == leads[k].0
                    && leads[j].1.divides(&leads[k].1)
                    && (leads[j].1 != leads[k].1 || j < k)
            })
        })
        .collect();
    let mut kept: Vec<Elem> = Vec::with_capacity(keep.len());
    for k in keep.into_iter().rev() {
        kept.push(elems.swap_remove(k));
    }
    kept.reverse();
    // inter-reduce the tails
    for k in 0..kept.len() {
        let v = kept[k].v.clone();
        let (r, quo) = reduce(&kept, v, Some(k), order);
        if tracking {
            let mut t = kept[k].track.clone().unwrap();
            apply_quotients(ring, &mut t, &quo, &kept);
            kept[k].track = Some(t);
        }
        kept[k].v = r;
    }
    kept.sort_by(|a, b| {
        let (pa, ma, _) = a.v.lead().unwrap();
        let (pb, mb, _) = b.v.lead().unwrap();
        order.cmp_terms((*pb, mb), (*pa, ma))
    });

    let transforms = if tracking {
        Some(kept.iter().map(|e| e.track.clone().unwrap()).collect())
    } else {
        None
    };
    let gb = GroebnerBasis {
        ring,
        rank,
        order: order.clone(),
        elems: kept.into_iter().map(|e| e.v).collect(),
        transforms,
        reduced: true,
    };
    Ok(Run { gb, syzygies: syz })
}

impl GroebnerBasis {
    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> &ModuleOrder {
        &self.order
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn generators(&self) -> Vec<Vec<Poly>> {
        self.elems.iter().map(|e| e.to_polys(self.ring, self.rank)).collect()
    }

    /// Generators of a rank-one basis as polynomials.
    pub fn polys(&self) -> Vec<Poly> {
        assert_eq!(self.rank, 1, "not an ideal basis");
        self.elems.iter().map(|e| e.to_polys(self.ring, 1).pop().unwrap()).collect()
    }

    pub fn leading_terms(&self) -> Vec<(usize, Monomial)> {
        self.elems.iter().map(lead_pos_mono).collect()
    }

    /// True when the basis generates the whole free module.
    pub fn is_whole_module(&self) -> bool {
        (0..self.rank).all(|p| self.leading_terms().iter().any(|(q, m)| *q == p && m.is_one()))
    }

    fn as_elems(&self) -> Vec<Elem> {
        self.elems
            .iter()
            .enumerate()
            .map(|(k, v)| Elem {
                v: v.clone(),
                sugar: 0,
                track: self.transforms.as_ref().map(|t| t[k].clone()),
            })
            .collect()
    }

    pub fn normal_form(&self, v: &[Poly]) -> Vec<Poly> {
        assert_eq!(v.len(), self.rank, "rank mismatch in normal form");
        let elems = self.as_elems();
        let (r, _) = reduce(&elems, MVec::from_polys(v, &self.order), None, &self.order);
        r.to_polys(self.ring, self.rank)
    }

    pub fn normal_form_poly(&self, p: &Poly) -> Poly {
        self.normal_form(std::slice::from_ref(p)).pop().unwrap()
    }

    pub fn contains(&self, v: &[Poly]) -> bool {
        self.normal_form(v).iter().all(|p| p.is_zero())
    }

    /// Coefficients `c` with `v = sum c_l * gens_l` over the generators the
    /// basis was built from, when `v` lies in the module.
    pub fn lift(&self, v: &[Poly]) -> Option<Vec<Poly>> {
        let t = self.transforms.as_ref().expect("basis built without tracking");
        let n = t.first().map_or(0, |r| r.len());
        let elems = self.as_elems();
        let (r, quo) = reduce(&elems, MVec::from_polys(v, &self.order), None, &self.order);
        if !r.is_zero() {
            return None;
        }
        let mut acc = vec![Poly::zero(self.ring); n];
        apply_quotients(self.ring, &mut acc, &quo, &elems);
        Some(acc.into_iter().map(|p| -p).collect())
    }
}

/// Reduced Gröbner basis of a submodule under `order`.
pub fn buchberger(gens: &[Vec<Poly>], order: &ModuleOrder) -> Result<GroebnerBasis, GrobnerError> {
    Ok(run(gens, order, false)?.gb)
}

/// Reduced Gröbner basis that also remembers how each element is built from
/// the generators, so that [`GroebnerBasis::lift`] is available.
pub fn buchberger_tracked(gens: &[Vec<Poly>], order: &ModuleOrder) -> Result<GroebnerBasis, GrobnerError> {
    Ok(run(gens, order, true)?.gb)
}

/// Grevlex Gröbner basis of an ideal.
pub fn ideal_basis(gens: &[Poly]) -> Result<GroebnerBasis, GrobnerError> {
    let vs: Vec<Vec<Poly>> = gens.iter().map(|g| vec![g.clone()]).collect();
    buchberger(&vs, &ModuleOrder::grevlex())
}

pub fn normal_form(f: &[Poly], gb: &GroebnerBasis) -> Vec<Poly> {
    gb.normal_form(f)
}

/// Generators of `Syz(v_1, ..., v_k)`, using the given shifts for the term
/// order of the ambient free module.
pub fn syzygy_generators_graded(vectors: &[Vec<Poly>], shifts: Vec<i64>) -> Result<Vec<Vec<Poly>>, GrobnerError> {
    let order = ModuleOrder::graded(shifts);
    let mut out: Vec<Vec<Poly>> = Vec::new();
    for s in run(vectors, &order, true)?.syzygies {
        if s.iter().all(|p| p.is_zero()) || out.contains(&s) {
            continue;
        }
        out.push(s);
    }
    Ok(out)
}

/// Generators of the syzygy module of a list of vectors (or, for vectors of
/// length one, of polynomials).
pub fn syzygy_generators(vectors: &[Vec<Poly>]) -> Result<Vec<Vec<Poly>>, GrobnerError> {
    let rank = vectors.first().map_or(0, |v| v.len());
    syzygy_generators_graded(vectors, vec![0; rank])
}

pub fn poly_syzygies(ps: &[Poly]) -> Result<Vec<Vec<Poly>>, GrobnerError> {
    let vs: Vec<Vec<Poly>> = ps.iter().map(|p| vec![p.clone()]).collect();
    syzygy_generators(&vs)
}

/// `Some(c)` with `v = sum c_l * gens_l`, or `None` if `v` is not in the span.
pub fn lift(v: &[Poly], gens: &[Vec<Poly>]) -> Result<Option<Vec<Poly>>, GrobnerError> {
    let gb = buchberger_tracked(gens, &ModuleOrder::unshifted(v.len()))?;
    Ok(gb.lift(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(r: Ring, i: usize) -> Poly {
        Poly::var(r, i)
    }

    #[test]
    fn small_ideal_bases() {
        let r = Ring::St;
        let (s, t) = (v(r, 0), v(r, 1));
        assert_eq!(ideal_basis(&[s.clone(), t.clone()]).unwrap().polys(), vec![s.clone(), t.clone()]);
        let s2 = &s * &s;
        let t2 = &t * &t;
        assert_eq!(ideal_basis(&[&s2 + &t2, t2.clone()]).unwrap().polys(), vec![s2, t2]);
        assert_eq!(ideal_basis(&[s.clone()]).unwrap().polys(), vec![s]);
    }

    #[test]
    fn normal_forms() {
        let r = Ring::Stu;
        let (s, t, u) = (v(r, 0), v(r, 1), v(r, 2));
        let gb = ideal_basis(&[&s * &s, &t * &t]).unwrap();
        assert!(gb.normal_form_poly(&(&(&s * &s) * &t)).is_zero());
        let gb = ideal_basis(&[s.clone()]).unwrap();
        assert_eq!(gb.normal_form_poly(&(&s + &t)), t.clone());
        let gb = ideal_basis(&[&s * &s, &t * &t, &u * &u]).unwrap();
        let stu = &(&s * &t) * &u;
        assert_eq!(gb.normal_form_poly(&stu), stu);
    }

    #[test]
    fn koszul_and_unit_syzygies() {
        let r = Ring::St;
        let (s, t) = (v(r, 0), v(r, 1));
        let syz = poly_syzygies(&[s.clone(), t.clone()]).unwrap();
        assert_eq!(syz.len(), 1);
        let w = &syz[0];
        assert!((&(&w[0] * &s) + &(&w[1] * &t)).is_zero());
        assert!(w[0] == t || w[0] == -&t);

        let f = &(&s * &t) + &Poly::from_int(r, 3);
        let syz = poly_syzygies(&[Poly::one(r), f.clone()]).unwrap();
        let gb = buchberger(&syz, &ModuleOrder::unshifted(2)).unwrap();
        assert!(gb.contains(&[f.clone(), -Poly::one(r)]));
        for w in &syz {
            assert!((&w[0] + &(&w[1] * &f)).is_zero());
        }
    }

    #[test]
    fn lifting_recovers_combination() {
        let r = Ring::St;
        let (s, t) = (v(r, 0), v(r, 1));
        let gens = vec![vec![s.clone()], vec![&Poly::one(r) - &s]];
        let c = lift(&[Poly::one(r)], &gens).unwrap().unwrap();
        assert!((&(&c[0] * &s) + &(&c[1] * &(&Poly::one(r) - &s))).is_one());
        assert!(lift(&[Poly::one(r)], &[vec![s.clone()], vec![t.clone()]]).unwrap().is_none());
    }

    #[test]
    fn schreyer_generators_form_a_basis() {
        // the Schreyer order induced by the reduced basis makes the
        // syzygies among its elements a Gröbner basis
        let r = Ring::Stu;
        let (s, t, u) = (v(r, 0), v(r, 1), v(r, 2));
        let gens = vec![&(&s * &s) - &(&t * &u), &(&t * &t) - &(&s * &u), &(&u * &u) - &(&s * &t)];
        let gb = ideal_basis(&gens).unwrap();
        let g = gb.polys();
        let order = ModuleOrder::Schreyer { leads: gb.leading_terms(), base: Box::new(ModuleOrder::grevlex()) };
        let syz = poly_syzygies(&g).unwrap();
        let sgb = buchberger(&syz, &order).unwrap();
        let lead_span = |w: &Vec<Poly>| -> bool {
            let mv = MVec::from_polys(w, &order);
            let (p, m, _) = mv.lead().unwrap();
            sgb.leading_terms().iter().any(|(q, n)| q == p && n.divides(m))
        };
        for w in &syz {
            assert!(sgb.contains(w));
            assert!(lead_span(w));
        }
    }
}
