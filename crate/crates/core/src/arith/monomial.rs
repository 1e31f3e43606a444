use std::cmp::Ordering;
use std::fmt;

/// Maximum number of indeterminates supported by the kernel (s, t, u).
pub const MAX_VARS: usize = 3;

/// The polynomial ring a value lives in: k[s,t] or k[s,t,u].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    /// k[s,t]
    St,
    /// k[s,t,u]
    Stu,
}

impl Ring {
    pub fn nvars(self) -> usize {
        match self {
            Ring::St => 2,
            Ring::Stu => 3,
        }
    }

    pub fn var_name(self, i: usize) -> &'static str {
        ["s", "t", "u"][i]
    }
}

/// Exponent vector. Unused trailing slots are always zero, so the same
/// representation serves both rings.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u32; MAX_VARS],
}

impl Monomial {
    pub const ONE: Monomial = Monomial { exps: [0; MAX_VARS] };

    pub fn new(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "at most {MAX_VARS} variables");
        let mut e = [0; MAX_VARS];
        e[..exps.len()].copy_from_slice(exps);
        Monomial { exps: e }
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; MAX_VARS];
        e[i] = 1;
        Monomial { exps: e }
    }

    pub fn var_pow(i: usize, k: u32) -> Self {
        let mut e = [0; MAX_VARS];
        e[i] = k;
        Monomial { exps: e }
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i]
    }

    #[inline]
    pub fn exponents(&self) -> &[u32; MAX_VARS] {
        &self.exps
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.exps == [0; MAX_VARS]
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.exps;
        for (x, y) in e.iter_mut().zip(other.exps.iter()) {
            *x += y;
        }
        Monomial { exps: e }
    }

    /// `self / other`, if `other` divides `self`.
    #[inline]
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = [0; MAX_VARS];
        for i in 0..MAX_VARS {
            e[i] = self.exps[i].checked_sub(other.exps[i])?;
        }
        Some(Monomial { exps: e })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut e = self.exps;
        for (x, y) in e.iter_mut().zip(other.exps.iter()) {
            *x = (*x).max(*y);
        }
        Monomial { exps: e }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut e = self.exps;
        for (x, y) in e.iter_mut().zip(other.exps.iter()) {
            *x = (*x).min(*y);
        }
        Monomial { exps: e }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Removes the exponent of variable `i`.
    pub fn without(&self, i: usize) -> Monomial {
        let mut e = self.exps;
        e[i] = 0;
        Monomial { exps: e }
    }

    /// Variables with a positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..MAX_VARS).filter(move |&i| self.exps[i] > 0)
    }

    /// Graded reverse lexicographic comparison with s > t > u.
    #[inline]
    pub fn grevlex_cmp(&self, other: &Monomial) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in (0..MAX_VARS).rev() {
            match self.exps[i].cmp(&other.exps[i]) {
                Ordering::Equal => continue,
                // smaller exponent in the last differing variable wins
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }

    /// All monomials of total degree `deg` in the first `nvars` variables,
    /// in grevlex-descending order.
    pub fn all_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        match nvars {
            0 => {
                if deg == 0 {
                    out.push(Monomial::ONE)
                }
            }
            1 => out.push(Monomial::new(&[deg])),
            2 => {
                for a in 0..=deg {
                    out.push(Monomial::new(&[a, deg - a]));
                }
            }
            3 => {
                for a in 0..=deg {
                    for b in 0..=deg - a {
                        out.push(Monomial::new(&[a, b, deg - a - b]));
                    }
                }
            }
            _ => unreachable!(),
        }
        out.sort_by(|a, b| b.grevlex_cmp(a));
        out
    }

    pub fn display(&self, ring: Ring) -> String {
        let mut parts = Vec::new();
        for i in 0..ring.nvars() {
            match self.exps[i] {
                0 => {}
                1 => parts.push(ring.var_name(i).to_string()),
                k => parts.push(format!("{}^{}", ring.var_name(i), k)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grevlex_cmp(other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display(Ring::Stu))
    }
}
