//! Closed-form degree, regularity and Betti-number bounds, and checks of
//! those bounds against computed resolutions.

mod checks;
mod coprime;
mod liaison;

use num_bigint::{BigInt, BigUint};

use crate::quillen_suslin::qs_bound_for;

pub use checks::{check_resolution_bounds, classify_case, evaluate_pipeline_bounds};
pub use coprime::{coprime_sequence, recursive_sequence, CoprimeError};
pub use liaison::{general_aci_shape_check, socle_check, SocleReport};

/// Cases of the existence theorem for a basis of bounded degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum BasisCase {
    /// Any parametrization.
    General,
    /// The homogenized ideal has height 3.
    Height3,
    /// The homogenized ideal is a general almost complete intersection.
    GeneralAci,
    /// Projective dimension one.
    Pd1,
}

impl BasisCase {
    pub const ALL: [BasisCase; 4] = [BasisCase::General, BasisCase::Height3, BasisCase::GeneralAci, BasisCase::Pd1];

    pub fn label(self) -> &'static str {
        match self {
            BasisCase::General => "i",
            BasisCase::Height3 => "ii",
            BasisCase::GeneralAci => "iii",
            BasisCase::Pd1 => "iv",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictKind {
    /// A theorem; failing it on valid input is a bug.
    Proved,
    /// Reported for comparison only.
    Informational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub name: String,
    pub bound: BigInt,
    pub observed: BigInt,
    pub kind: VerdictKind,
}

impl Verdict {
    pub fn new(name: &str, bound: impl Into<BigInt>, observed: impl Into<BigInt>, kind: VerdictKind) -> Self {
        Verdict { name: name.to_string(), bound: bound.into(), observed: observed.into(), kind }
    }

    pub fn proved(name: &str, bound: impl Into<BigInt>, observed: impl Into<BigInt>) -> Self {
        Self::new(name, bound, observed, VerdictKind::Proved)
    }

    pub fn pass(&self) -> bool {
        self.observed <= self.bound
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsReport {
    pub d: u32,
    pub m: u32,
    pub reg_bound: i64,
    pub beta2_bound: BigUint,
    /// `m C(2d, 2)`, valid when all generators have degree d.
    pub beta2_equal_degree_bound: BigUint,
    /// `β₂ + m − 1`, once β₂ is known.
    pub beta1_bound: Option<BigUint>,
    pub height3_beta1_bound: u32,
    pub height3_beta2_bound: u32,
    pub lazard: u32,
    /// `qs(D)` with `D = β₂(1 + γ₂)`, when the data are known.
    pub qs_bound: Option<BigUint>,
    /// Basis degree bound from the completion, with the observed data.
    pub extraction_bound: Option<BigUint>,
    pub case_values: [BigUint; 4],
    pub case: Option<BasisCase>,
    pub verdicts: Vec<Verdict>,
}

impl BoundsReport {
    pub fn case_value(&self, case: BasisCase) -> &BigUint {
        &self.case_values[case as usize]
    }

    pub fn failures(&self) -> Vec<&Verdict> {
        self.verdicts.iter().filter(|v| v.kind == VerdictKind::Proved && !v.pass()).collect()
    }

    pub fn all_pass(&self) -> bool {
        self.failures().is_empty()
    }
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    (0..k).fold(BigUint::from(1u32), |acc, i| acc * BigUint::from(n - i) / BigUint::from(i + 1))
}

pub fn reg_bound(d: u32) -> i64 {
    3 * d as i64 - 2
}

pub fn lazard_bound(d: u32) -> u32 {
    2 * d - d.min(2)
}

/// `γ₁ (β₂ + 2) qs(D)` with `D = β₂ (1 + γ₂)`.
pub fn extraction_bound(gamma1: u64, beta2: u64, gamma2: u64) -> BigUint {
    BigUint::from(gamma1) * BigUint::from(beta2 + 2) * qs_bound_for(beta2 * (1 + gamma2))
}

pub fn case_value(case: BasisCase, d: u32) -> BigUint {
    let d = d as u64;
    if d == 0 {
        return BigUint::from(0u32);
    }
    match case {
        BasisCase::General => {
            let beta2 = u64::try_from(binomial(3 * d, 2)).expect("small binomial");
            extraction_bound(2 * d - 1, beta2, 2 * d)
        }
        BasisCase::Height3 => extraction_bound(2 * d - 1, 2 * d - 1, 2 * d),
        BasisCase::GeneralAci => extraction_bound(d, d, 2),
        BasisCase::Pd1 => BigUint::from(d),
    }
}

/// The closed-form values for degree `d`, `m` generators and, when known,
/// the resolution data `β₂, γ₁, γ₂`.
pub fn evaluate_bounds(d: u32, m: u32, data: Option<(u32, u32, u32)>) -> BoundsReport {
    let d64 = d as u64;
    let beta1_bound = data.map(|(b2, _, _)| BigUint::from((b2 as u64 + m as u64).saturating_sub(1)));
    let qs_bound = data.map(|(b2, _, g2)| qs_bound_for(b2 as u64 * (1 + g2 as u64)));
    let extraction_bound = data.map(|(b2, g1, g2)| extraction_bound(g1 as u64, b2 as u64, g2 as u64));
    BoundsReport {
        d,
        m,
        reg_bound: reg_bound(d),
        beta2_bound: binomial(3 * d64, 2),
        beta2_equal_degree_bound: BigUint::from(m) * binomial(2 * d64, 2),
        beta1_bound,
        height3_beta1_bound: 2 * d + 2,
        height3_beta2_bound: (2 * d).saturating_sub(1),
        lazard: lazard_bound(d),
        qs_bound,
        extraction_bound,
        case_values: BasisCase::ALL.map(|c| case_value(c, d)),
        case: None,
        verdicts: Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        assert_eq!(case_value(BasisCase::Pd1, 7), BigUint::from(7u32));
        assert_eq!(extraction_bound(2, 1, 2), BigUint::from(5289984u64));
        assert_eq!(reg_bound(1), 1);
        assert_eq!(binomial(6, 2), BigUint::from(15u32));
        assert_eq!(lazard_bound(1), 1);
        assert_eq!(lazard_bound(5), 8);
        let r = evaluate_bounds(2, 4, Some((1, 2, 2)));
        assert_eq!(r.beta2_bound, BigUint::from(15u32));
        assert_eq!(r.beta2_equal_degree_bound, BigUint::from(24u32));
        assert_eq!(r.beta1_bound, Some(BigUint::from(4u32)));
        assert_eq!(r.qs_bound, Some(BigUint::from(881664u64)));
        assert_eq!(r.height3_beta2_bound, 3);
    }

    #[test]
    fn case_values_grow_with_d() {
        for case in BasisCase::ALL {
            for d in 1..6 {
                assert!(case_value(case, d) <= case_value(case, d + 1));
            }
        }
        assert!(case_value(BasisCase::GeneralAci, 3) < case_value(BasisCase::Height3, 3));
        assert!(case_value(BasisCase::Height3, 3) < case_value(BasisCase::General, 3));
    }

    #[test]
    fn verdicts() {
        let v = Verdict::proved("reg", 4, 4);
        assert!(v.pass());
        assert!(!Verdict::proved("reg", 3, 4).pass());
    }
}
