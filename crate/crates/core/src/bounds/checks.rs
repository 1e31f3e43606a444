use num_bigint::BigInt;

use super::liaison::general_aci_shape_check;
use super::{binomial, evaluate_bounds, lazard_bound, reg_bound, case_value, BoundsReport, BasisCase, Verdict, VerdictKind};
use crate::arith::{Poly, Ring};
use crate::grobner::{free_resolution, height, hilbert_function, resolution_invariants, FreeResolution, GrobnerError};

fn h(gens: &[Poly], k: i64) -> Result<u64, GrobnerError> {
    if k < 0 {
        Ok(0)
    } else {
        hilbert_function(gens, k as u32)
    }
}

/// Evaluates the regularity, Betti-number and shift inequalities on `res`.
///
/// For a minimal resolution these are the regularity and Betti bounds; for a
/// resolution with a fixed first map, the shift bounds `q_i ≤ 3d − 1` and
/// `p_i ≤ 3d`. `m` is the number of nonzero generators the ideal was given by.
pub fn check_resolution_bounds(res: &FreeResolution, d: u32, m: u32) -> Result<Vec<Verdict>, GrobnerError> {
    let mut out = Vec::new();
    let d64 = d as i64;
    if res.fixed_first_map {
        let qmax = res.q.iter().copied().max().unwrap_or(0);
        let pmax = res.p.iter().copied().max().unwrap_or(0);
        out.push(Verdict::proved("max q_i <= 3d-1", 3 * d64 - 1, qmax));
        out.push(Verdict::proved("max p_i <= 3d", 3 * d64, pmax));
        return Ok(out);
    }
    let inv = resolution_invariants(res);
    let gens = &res.generators;
    let reg = inv.betti.regularity;
    let beta1 = res.q.len() as u64;
    let beta2 = res.p.len() as u64;
    out.push(Verdict::proved("reg <= 3d-2", reg_bound(d), reg));
    out.push(Verdict::proved("beta1 <= beta2+m-1", beta2 + m as u64 - 1, beta1));
    let h_reg = h(gens, reg)?;
    out.push(Verdict::proved("beta2 <= H(reg)", h_reg, beta2));
    out.push(Verdict::proved("H(reg) <= H(3d-2)", h(gens, 3 * d64 - 2)?, h_reg));
    out.push(Verdict::proved("beta2 <= C(3d,2)", BigInt::from(binomial(3 * d as u64, 2)), beta2));
    let mut degrees: Vec<i64> = res.p.clone();
    degrees.sort();
    degrees.dedup();
    for p in degrees {
        let graded = res.p.iter().filter(|&&x| x == p).count() as i64;
        let bound = h(gens, p - 2)? as i64 - h(gens, p - 3)? as i64;
        out.push(Verdict::proved(&format!("beta2,{p} <= H({})-H({})", p - 2, p - 3), bound, graded));
    }
    let equal_degree = gens.iter().all(|g| g.degree() == Some(d));
    if equal_degree {
        let bound = BigInt::from(m) * BigInt::from(binomial(2 * d as u64, 2));
        out.push(Verdict::proved("beta2 <= m C(2d,2)", bound, beta2));
        if res.ring() == Ring::Stu && height(gens)? == 3 {
            out.push(Verdict::proved("height 3: beta1 <= 2d+2", 2 * d64 + 2, beta1));
            out.push(Verdict::proved("height 3: beta2 <= 2d-1", 2 * d64 - 1, beta2));
        }
    }
    Ok(out)
}

/// The strongest case of the existence theorem that applies.
pub fn classify_case(fixed: &FreeResolution, minimal: &FreeResolution, d: u32) -> Result<BasisCase, GrobnerError> {
    if fixed.p.is_empty() {
        return Ok(BasisCase::Pd1);
    }
    if height(&minimal.generators)? == 3 {
        if general_aci_shape_check(minimal, d) {
            return Ok(BasisCase::GeneralAci);
        }
        return Ok(BasisCase::Height3);
    }
    Ok(BasisCase::General)
}

/// All bound checks for one pipeline run. `b` are the homogenized
/// generators, `fixed` their resolution with the first map fixed, `deg_d1`
/// and `deg_d2` the degrees of its maps after setting u = 1.
pub fn evaluate_pipeline_bounds(
    b: &[Poly],
    fixed: &FreeResolution,
    deg_d1: Option<u32>,
    deg_d2: Option<u32>,
    basis_degree: u32,
) -> Result<BoundsReport, GrobnerError> {
    let d = fixed.target_degree;
    let nonzero: Vec<Poly> = b.iter().filter(|x| !x.is_zero()).cloned().collect();
    let m = nonzero.len() as u32;
    let minimal = free_resolution(&nonzero, false)?;
    let a = fixed.p.len() as u32;
    let data = (a > 0).then(|| (a, deg_d1.unwrap_or(0), deg_d2.unwrap_or(0)));
    let mut report = evaluate_bounds(d, m, data);

    let mut verdicts = check_resolution_bounds(&minimal, d, m)?;
    verdicts.extend(check_resolution_bounds(fixed, d, m)?);
    let beta2 = minimal.p.len() as u32;
    verdicts.push(Verdict::proved("a <= beta2", beta2, a));
    verdicts.push(Verdict::proved("beta2 <= a", a, beta2));
    if a > 0 {
        if d >= 1 {
            verdicts.push(Verdict::proved("deg d1 <= 2d-1", 2 * d - 1, deg_d1.unwrap_or(0)));
        }
        verdicts.push(Verdict::proved("deg d2 <= 2d", 2 * d, deg_d2.unwrap_or(0)));
    }
    if d >= 1 {
        verdicts.push(Verdict::new("deg d1 <= 2d-min(2,d)", lazard_bound(d), deg_d1.unwrap_or(0), VerdictKind::Informational));
    }
    let case = classify_case(fixed, &minimal, d)?;
    verdicts.push(Verdict::proved(
        &format!("basis degree <= case {} value", case.label()),
        BigInt::from(case_value(case, d)),
        basis_degree,
    ));
    if let Some(eb) = &report.extraction_bound {
        verdicts.push(Verdict::new(
            "basis degree <= gamma1 (beta2+2) qs(D)",
            BigInt::from(eb.clone()),
            basis_degree,
            VerdictKind::Informational,
        ));
    }
    report.case = Some(case);
    report.verdicts = verdicts;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: usize) -> Poly {
        Poly::var(Ring::Stu, i)
    }

    fn find<'a>(vs: &'a [Verdict], name: &str) -> &'a Verdict {
        vs.iter().find(|x| x.name == name).unwrap()
    }

    #[test]
    fn squares_meet_the_regularity_bound() {
        let s2 = v(0).pow(2);
        let u2 = v(2).pow(2);
        let gens = vec![s2.clone(), v(1).pow(2), &s2 - &u2, &s2 + &u2];
        let minimal = free_resolution(&gens, false).unwrap();
        let vs = check_resolution_bounds(&minimal, 2, 4).unwrap();
        assert!(vs.iter().all(|x| x.pass()));
        let reg = find(&vs, "reg <= 3d-2");
        assert_eq!((reg.bound.clone(), reg.observed.clone()), (4.into(), 4.into()));
        assert!(vs.iter().any(|x| x.name.starts_with("height 3")));

        let fixed = free_resolution(&gens, true).unwrap();
        let vs = check_resolution_bounds(&fixed, 2, 4).unwrap();
        assert!(vs.iter().all(|x| x.pass()));
        let b2 = find(&check_resolution_bounds(&minimal, 2, 4).unwrap(), "beta2 <= C(3d,2)").clone();
        assert_eq!(b2.bound, 15.into());
        assert_eq!(b2.observed, 1.into());
    }

    #[test]
    fn linear_fixed_map() {
        let gens = vec![v(0), v(1), v(2), v(2)];
        let fixed = free_resolution(&gens, true).unwrap();
        let vs = check_resolution_bounds(&fixed, 1, 4).unwrap();
        let q = find(&vs, "max q_i <= 3d-1");
        assert!(q.pass());
        assert_eq!(q.bound, 2.into());
    }

    #[test]
    fn pipeline_case_for_squares() {
        let s2 = v(0).pow(2);
        let u2 = v(2).pow(2);
        let gens = vec![s2.clone(), v(1).pow(2), &s2 - &u2, &s2 + &u2];
        let fixed = free_resolution(&gens, true).unwrap();
        let rep = evaluate_pipeline_bounds(&gens, &fixed, Some(2), Some(2), 2).unwrap();
        assert_eq!(rep.case, Some(BasisCase::Height3));
        assert!(rep.all_pass(), "{:?}", rep.failures());
    }
}
