//! The μ-basis pipeline: validate, homogenize, resolve, specialize at u = 1,
//! complete, extract and verify.

mod verify;

use std::time::Instant;

use thiserror::Error;

use crate::arith::{dehomogenize_matrix, gcd_many, homogenize, Poly, PolyMatrix, Ring, Scalar};
use crate::bounds::{evaluate_pipeline_bounds, BoundsReport};
use crate::grobner::{buchberger, free_resolution, FreeResolution, GrobnerError, ModuleOrder};
use crate::quillen_suslin::{complete_columns, QsError};

pub use verify::{outer_product, same_module, verify_mu_basis, VerifyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MuError {
    #[error("expected four polynomials, got {0}")]
    Arity(usize),
    #[error("polynomials must be in the variables s, t")]
    WrongRing,
    #[error("all four polynomials are zero")]
    AllZero,
    #[error("common factor {0}")]
    CommonFactor(String),
    #[error("resolution failed: {0}")]
    Resolution(#[from] GrobnerError),
    #[error(transparent)]
    Completion(#[from] QsError),
    #[error("verification failed: {0}")]
    Verification(#[from] VerifyError),
    #[error("internal error: {0}")]
    Internal(String),
}

#[derive(Clone, Debug)]
pub struct Parametrization {
    pub a: Vec<Poly>,
    pub d: u32,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuBasis {
    pub p: Vec<Poly>,
    pub q: Vec<Poly>,
    pub r: Vec<Poly>,
    pub alpha: Scalar,
    pub degrees: [u32; 3],
    pub degree_sum: u32,
}

impl MuBasis {
    pub fn vectors(&self) -> Vec<Vec<Poly>> {
        vec![self.p.clone(), self.q.clone(), self.r.clone()]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Pd1,
    Pd2,
}

impl Branch {
    pub fn name(self) -> &'static str {
        match self {
            Branch::Pd1 => "pd1",
            Branch::Pd2 => "pd2",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CompletionSummary {
    pub deg_m: u32,
    pub det: Scalar,
    pub bound: String,
    pub within_bound: bool,
}

#[derive(Clone, Debug)]
pub struct PipelineReport {
    pub branch: Branch,
    pub d: u32,
    pub gamma1: Option<u32>,
    pub gamma2: Option<u32>,
    pub beta2: usize,
    pub q_shifts: Vec<i64>,
    pub p_shifts: Vec<i64>,
    pub mu: Option<Vec<i64>>,
    /// Degrees of the maps after setting u = 1.
    pub deg_d1: Option<u32>,
    pub deg_d2: Option<u32>,
    pub completion: Option<CompletionSummary>,
    pub bounds: BoundsReport,
    pub resolution: FreeResolution,
    pub warnings: Vec<String>,
    pub timings: Vec<(String, f64)>,
}

#[derive(Clone, Copy, Debug)]
pub struct PipelineOptions {
    pub seed: u64,
    pub inter_reduce: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions { seed: 0, inter_reduce: true }
    }
}

pub fn validate(a: &[Poly]) -> Result<Parametrization, MuError> {
    if a.len() != 4 {
        return Err(MuError::Arity(a.len()));
    }
    if a.iter().any(|p| p.ring() != Ring::St) {
        return Err(MuError::WrongRing);
    }
    if a.iter().all(|p| p.is_zero()) {
        return Err(MuError::AllZero);
    }
    let g = gcd_many(a).map_err(|_| MuError::AllZero)?;
    if !g.is_one() {
        return Err(MuError::CommonFactor(g.to_string()));
    }
    let mut warnings = Vec::new();
    for (i, p) in a.iter().enumerate() {
        if p.is_zero() {
            warnings.push(format!("component a{} is zero", i + 1));
        }
    }
    if a.iter().all(|p| p.is_constant()) {
        warnings.push("all components are constant".to_string());
    }
    let d = a.iter().filter_map(|p| p.degree()).max().unwrap_or(0);
    Ok(Parametrization { a: a.to_vec(), d, warnings })
}

/// `b_i = u^d a_i(s/u, t/u)`; the b_i are checked to be coprime.
pub fn homogenize_ideal(p: &Parametrization) -> Result<(Vec<Poly>, u32), MuError> {
    let b: Vec<Poly> = p
        .a
        .iter()
        .map(|x| homogenize(x, p.d).map_err(|e| MuError::Internal(e.to_string())))
        .collect::<Result<_, _>>()?;
    let g = gcd_many(&b).map_err(|e| MuError::Internal(e.to_string()))?;
    if !g.is_one() {
        return Err(MuError::Internal(format!("homogenized generators share the factor {g}")));
    }
    Ok((b, p.d))
}

/// `p, q, r = G N e_{n+1}, G N e_{n+2}, G N e_{n+3}`.
pub fn extract_basis(g: &PolyMatrix, n_mat: &PolyMatrix, n: usize) -> Result<Vec<Vec<Poly>>, MuError> {
    let m = n_mat.rows();
    if n_mat.cols() != m || g.cols() != m || m != n + 3 {
        return Err(MuError::Internal(format!("shape mismatch: G is {}x{}, N is {}x{}, n = {n}", g.rows(), g.cols(), m, n_mat.cols())));
    }
    let gn = g * n_mat;
    if (0..n).any(|j| gn.column(j).iter().any(|p| !p.is_zero())) {
        return Err(MuError::Internal("the first columns of G N are not zero".into()));
    }
    Ok((n..n + 3).map(|j| gn.column(j)).collect())
}

fn vector_degree(v: &[Poly]) -> u32 {
    v.iter().filter_map(|p| p.degree()).max().unwrap_or(0)
}

/// Replaces a vector by its normal form modulo the other two whenever that
/// lowers its degree. The span, and hence α, is unchanged.
fn inter_reduce(basis: &mut [Vec<Poly>]) -> Result<(), MuError> {
    let order = ModuleOrder::unshifted(4);
    for _ in 0..6 {
        let mut changed = false;
        for i in 0..basis.len() {
            let others: Vec<Vec<Poly>> = (0..basis.len()).filter(|&j| j != i).map(|j| basis[j].clone()).collect();
            let gb = buchberger(&others, &order)?;
            let nf = gb.normal_form(&basis[i]);
            if nf.iter().any(|p| !p.is_zero()) && vector_degree(&nf) < vector_degree(&basis[i]) {
                basis[i] = nf;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Ok(())
}

pub fn compute_mu_basis(p: &Parametrization, opts: PipelineOptions) -> Result<(MuBasis, PipelineReport), MuError> {
    let mut timings = Vec::new();
    let clock = Instant::now();
    let (b, d) = homogenize_ideal(p)?;
    let res = free_resolution(&b, true)?;
    timings.push(("resolution".to_string(), clock.elapsed().as_secs_f64()));
    let (r0, r1, r2) = res.ranks();
    if r0 as i64 - r1 as i64 + r2 as i64 != 1 {
        return Err(MuError::Internal("rank of the ideal is not one".into()));
    }
    let g = dehomogenize_matrix(&res.d1);
    let f = dehomogenize_matrix(&res.d2);
    let deg_d1 = g.degree();
    let deg_d2 = f.degree();
    if d >= 1 {
        if deg_d1.map_or(false, |x| x > 2 * d - 1) || deg_d2.map_or(false, |x| x > 2 * d) {
            return Err(MuError::Internal("specialized maps exceed degrees 2d-1 / 2d".into()));
        }
    }

    let clock = Instant::now();
    let (branch, mut basis, mu, completion) = if r2 == 0 {
        if r1 != 3 {
            return Err(MuError::Internal(format!("free syzygy module of rank {r1}")));
        }
        let mu: Vec<i64> = res.q.iter().map(|q| q - d as i64).collect();
        (Branch::Pd1, g.columns(), Some(mu), None)
    } else {
        let cert = complete_columns(&f, opts.seed)?;
        let basis = extract_basis(&g, &cert.m_inv, r2)?;
        let summary = CompletionSummary {
            deg_m: cert.deg_m,
            det: cert.det.clone(),
            bound: cert.bound.to_string(),
            within_bound: cert.within_bound,
        };
        (Branch::Pd2, basis, None, Some(summary))
    };
    timings.push(("completion".to_string(), clock.elapsed().as_secs_f64()));

    let clock = Instant::now();
    if opts.inter_reduce {
        inter_reduce(&mut basis)?;
    }
    let alpha = verify_mu_basis(&basis, &p.a)?;
    timings.push(("verification".to_string(), clock.elapsed().as_secs_f64()));

    let degrees = [vector_degree(&basis[0]), vector_degree(&basis[1]), vector_degree(&basis[2])];
    let mut it = basis.into_iter();
    let mb = MuBasis {
        p: it.next().unwrap(),
        q: it.next().unwrap(),
        r: it.next().unwrap(),
        alpha,
        degrees,
        degree_sum: degrees.iter().sum(),
    };
    let bounds = evaluate_pipeline_bounds(&b, &res, deg_d1, deg_d2, *degrees.iter().max().unwrap())?;
    let report = PipelineReport {
        branch,
        d,
        gamma1: res.d1.degree(),
        gamma2: res.d2.degree(),
        beta2: r2,
        q_shifts: res.q.clone(),
        p_shifts: res.p.clone(),
        mu,
        deg_d1,
        deg_d2,
        completion,
        bounds,
        resolution: res,
        warnings: p.warnings.clone(),
        timings,
    };
    Ok((mb, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use crate::arith::int;

    fn st() -> (Poly, Poly) {
        (Poly::var(Ring::St, 0), Poly::var(Ring::St, 1))
    }

    fn c(k: i64) -> Poly {
        Poly::from_int(Ring::St, k)
    }

    fn surface() -> Vec<Poly> {
        let (s, t) = st();
        let s2 = &s * &s;
        vec![s2.clone(), &t * &t, &s2 - &c(1), &s2 + &c(1)]
    }

    fn reference_basis() -> Vec<Vec<Poly>> {
        let (s, t) = st();
        let s2 = &s * &s;
        let t2 = &t * &t;
        vec![
            vec![-&t2, c(1), t2.clone(), c(0)],
            vec![c(-2), c(0), c(1), c(1)],
            vec![&c(1) - &s2, c(0), s2, c(0)],
        ]
    }

    #[test]
    fn validation() {
        let (s, _) = st();
        let p = validate(&surface()).unwrap();
        assert_eq!(p.d, 2);
        assert_eq!(validate(&[s.clone(), s.clone(), s.clone(), s]).unwrap_err(), MuError::CommonFactor("s".into()));
        let p = validate(&[c(1), c(0), c(0), c(0)]).unwrap();
        assert_eq!(p.d, 0);
        assert!(!p.warnings.is_empty());
        assert_eq!(validate(&[c(0), c(0), c(0), c(0)]).unwrap_err(), MuError::AllZero);
    }

    #[test]
    fn homogenized_generators() {
        let (b, d) = homogenize_ideal(&validate(&surface()).unwrap()).unwrap();
        assert_eq!(d, 2);
        let names: Vec<String> = b.iter().map(|x| x.to_string()).collect();
        assert_eq!(names, vec!["s^2", "t^2", "s^2 - u^2", "s^2 + u^2"]);
        let (s, t) = st();
        let (b, d) = homogenize_ideal(&validate(&[s, t, c(1), c(1)]).unwrap()).unwrap();
        assert_eq!(d, 1);
        assert_eq!(b[2].to_string(), "u");
    }

    #[test]
    fn outer_products() {
        let e = |i: usize| -> Vec<Poly> { (0..4).map(|j| c((i == j) as i64)).collect() };
        assert_eq!(outer_product(&e(0), &e(1), &e(2)), vec![c(0), c(0), c(0), c(-1)]);
        let pb = reference_basis();
        let minus_p: Vec<Poly> = surface().iter().map(|x| -x).collect();
        assert_eq!(outer_product(&pb[0], &pb[1], &pb[2]), minus_p);
        assert!(outer_product(&pb[0], &pb[0], &pb[2]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn verification() {
        let pb = reference_basis();
        assert_eq!(verify_mu_basis(&pb, &surface()).unwrap(), int(-1));
        let doubled = vec![pb[0].iter().map(|x| x.scale(&int(2))).collect(), pb[1].clone(), pb[2].clone()];
        assert_eq!(verify_mu_basis(&doubled, &surface()).unwrap(), int(-2));
        let degenerate = vec![pb[0].clone(), pb[0].clone(), pb[2].clone()];
        assert_eq!(verify_mu_basis(&degenerate, &surface()).unwrap_err(), VerifyError::Degenerate);
        let bad = vec![vec![c(1), c(0), c(0), c(0)], pb[1].clone(), pb[2].clone()];
        assert_eq!(verify_mu_basis(&bad, &surface()).unwrap_err(), VerifyError::NotSyzygy(0));
    }

    #[test]
    fn surface_extraction() {
        let (s, t) = st();
        let s2 = &s * &s;
        let t2 = &t * &t;
        let g = PolyMatrix::from_rows(
            Ring::St,
            vec![
                vec![c(-2), -&t2, -&t2, &c(1) - &s2],
                vec![c(0), c(1), s2.clone(), c(0)],
                vec![c(1), t2.clone(), c(0), s2.clone()],
                vec![c(1), c(0), c(0), c(0)],
            ],
        );
        let n = PolyMatrix::from_rows(
            Ring::St,
            vec![
                vec![c(0), c(0), c(1), c(0)],
                vec![s2.clone(), c(1), c(0), c(0)],
                vec![c(-1), c(0), c(0), c(0)],
                vec![t2.clone(), c(0), c(0), c(1)],
            ],
        );
        assert!(n.det().is_one());
        // the displayed N has t^2 where the column to complete has -t^2, so
        // G N e_1 is not zero; the three extracted columns still match
        let gn = &g * &n;
        let got: Vec<Vec<Poly>> = (1..4).map(|j| gn.column(j)).collect();
        assert_eq!(got, reference_basis());
        let fixed = {
            let mut m = n.clone();
            m.set(3, 0, -&t2);
            m
        };
        assert_eq!(extract_basis(&g, &fixed, 1).unwrap(), reference_basis());
        let id = PolyMatrix::identity(Ring::St, 3);
        let g3 = g.select(&[0, 1, 2, 3], &[1, 2, 3]);
        assert_eq!(extract_basis(&g3, &id, 0).unwrap(), g3.columns());
    }

    #[test]
    fn pipeline_on_surface_example() {
        let p = validate(&surface()).unwrap();
        let (mb, rep) = compute_mu_basis(&p, PipelineOptions::default()).unwrap();
        assert_eq!(rep.branch, Branch::Pd2);
        assert_eq!(rep.beta2, 1);
        assert_eq!((rep.gamma1, rep.gamma2), (Some(2), Some(2)));
        assert!(rep.q_shifts.iter().all(|&q| q <= 5));
        assert!(rep.p_shifts.iter().all(|&p| p <= 6));
        assert!(!mb.alpha.is_zero());
        assert!(same_module(&mb.vectors(), &reference_basis()).unwrap());
    }

    #[test]
    fn pipeline_small_cases() {
        let (s, t) = st();
        let p = validate(&[c(1), s.clone(), t.clone(), &s * &t]).unwrap();
        let (mb, _) = compute_mu_basis(&p, PipelineOptions::default()).unwrap();
        assert!(mb.degrees.iter().all(|&x| x <= 1));
        let expected = vec![
            vec![-&s, c(1), c(0), c(0)],
            vec![-&t, c(0), c(1), c(0)],
            vec![c(0), -&t, c(0), c(1)],
        ];
        assert!(same_module(&mb.vectors(), &expected).unwrap());

        let p = validate(&[c(1), c(0), c(0), c(0)]).unwrap();
        let (mb, rep) = compute_mu_basis(&p, PipelineOptions::default()).unwrap();
        assert_eq!(rep.branch, Branch::Pd1);
        assert!(mb.alpha == int(1) || mb.alpha == int(-1));
        let units: Vec<Vec<Poly>> = (1..4).map(|i| (0..4).map(|j| c((i == j) as i64)).collect()).collect();
        assert!(same_module(&mb.vectors(), &units).unwrap());
    }
}
