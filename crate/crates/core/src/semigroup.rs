//! Numerical semigroups: input validation, membership, Apéry sets and the
//! Frobenius number.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::WeightedGrading;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Generator {
    M0,
    M1,
    M2,
    N,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Generator::M0 => "m0",
            Generator::M1 => "m1",
            Generator::M2 => "m2",
            Generator::N => "n",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("entries must be positive")]
    NonPositive,
    #[error("m0 < m1 < m2 must be an arithmetic progression")]
    NotArithmetic,
    #[error("gcd(m0, m1, m2, n) must be 1")]
    GcdNotOne,
    #[error("NotMinimal({0}): generator lies in the semigroup of the others")]
    NotMinimal(Generator),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("generators have a common factor")]
    GcdNotOne,
}

/// A validated almost arithmetic sequence `(m0, m1, m2, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SequenceSpec {
    pub m0: u64,
    pub m1: u64,
    pub m2: u64,
    pub n: u64,
}

impl SequenceSpec {
    pub fn as_array(&self) -> [u64; 4] {
        [self.m0, self.m1, self.m2, self.n]
    }

    /// Common difference of the progression.
    pub fn d(&self) -> u64 {
        self.m1 - self.m0
    }

    pub fn grading(&self) -> WeightedGrading {
        WeightedGrading::new(self.m0, self.m1, self.m2, self.n)
    }

    /// Γ = ⟨m0, m1, m2, n⟩.
    pub fn gamma(&self) -> SubSemigroup {
        SubSemigroup::new(&self.as_array())
    }

    /// Γ₁ = ⟨m0, m1, m2⟩.
    pub fn gamma1(&self) -> SubSemigroup {
        SubSemigroup::new(&[self.m0, self.m1, self.m2])
    }
}

impl fmt::Display for SequenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.m0, self.m1, self.m2, self.n)
    }
}

pub fn validate_sequence(m0: u64, m1: u64, m2: u64, n: u64) -> Result<SequenceSpec, SequenceError> {
    if [m0, m1, m2, n].contains(&0) {
        return Err(SequenceError::NonPositive);
    }
    if !(m0 < m1 && m1 < m2 && m1 - m0 == m2 - m1) {
        return Err(SequenceError::NotArithmetic);
    }
    if m0.gcd(&m1).gcd(&m2).gcd(&n) != 1 {
        return Err(SequenceError::GcdNotOne);
    }
    let all = [m0, m1, m2, n];
    let names = [Generator::M0, Generator::M1, Generator::M2, Generator::N];
    for k in 0..4 {
        let others: Vec<u64> = (0..4).filter(|&i| i != k).map(|i| all[i]).collect();
        if SubSemigroup::new(&others).contains(all[k]) {
            return Err(SequenceError::NotMinimal(names[k]));
        }
    }
    Ok(SequenceSpec { m0, m1, m2, n })
}

/// The submonoid of ℕ generated by a finite list of positive integers.
///
/// Membership is tabulated for the generators divided by their gcd `g`, up
/// to `min·max` of those reduced generators; beyond that bound every
/// multiple of `g` is a member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubSemigroup {
    generators: Vec<u64>,
    gcd: u64,
    table: Vec<bool>,
}

impl SubSemigroup {
    pub fn new(generators: &[u64]) -> Self {
        assert!(
            !generators.is_empty() && generators.iter().all(|&g| g > 0),
            "generators must be a nonempty list of positive integers"
        );
        let gcd = generators.iter().fold(0u64, |a, &b| a.gcd(&b));
        let reduced: Vec<usize> = generators.iter().map(|&g| (g / gcd) as usize).collect();
        let lo = *reduced.iter().min().unwrap();
        let hi = *reduced.iter().max().unwrap();
        let bound = lo * hi;
        let mut table = vec![false; bound + 1];
        table[0] = true;
        for s in 1..=bound {
            table[s] = reduced.iter().any(|&g| g <= s && table[s - g]);
        }
        SubSemigroup {
            generators: generators.to_vec(),
            gcd,
            table,
        }
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn contains(&self, s: u64) -> bool {
        if s % self.gcd != 0 {
            return false;
        }
        let t = (s / self.gcd) as usize;
        t >= self.table.len() || self.table[t]
    }

    /// Least member in each residue class modulo the generator `a`.
    pub fn apery_set(&self, a: u64) -> Vec<u64> {
        assert!(self.generators.contains(&a), "{a} is not a generator");
        let mut out = vec![None; a as usize];
        let mut missing = a as usize;
        let mut s = 0u64;
        // every residue class meets the semigroup only when gcd = 1; for
        // gcd > 1 only the classes of multiples of the gcd are reachable
        let reachable = (0..a).filter(|r| r % self.gcd == 0).count();
        missing -= a as usize - reachable;
        while missing > 0 {
            let r = (s % a) as usize;
            if out[r].is_none() && self.contains(s) {
                out[r] = Some(s);
                missing -= 1;
            }
            s += 1;
        }
        out.into_iter().flatten().collect()
    }

    /// Largest integer outside the semigroup, or −1 when it is all of ℕ.
    pub fn frobenius(&self) -> Result<i64, SemigroupError> {
        if self.gcd != 1 {
            return Err(SemigroupError::GcdNotOne);
        }
        Ok(self
            .table
            .iter()
            .rposition(|&b| !b)
            .map_or(-1, |i| i as i64))
    }
}

/// Least `t ≥ 1` with `t·n ∈ S`.
pub fn min_multiple_in(n: u64, s: &SubSemigroup) -> u64 {
    (1..).find(|&t| s.contains(t * n)).unwrap()
}

/// Indicator coefficients of Γ up to degree `len`.
pub fn gamma_series_truncation(spec: &SequenceSpec, len: usize) -> Vec<i64> {
    let g = spec.gamma();
    (0..=len as u64).map(|s| g.contains(s) as i64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn validation_examples() {
        assert!(validate_sequence(5, 7, 9, 11).is_ok());
        assert_eq!(
            validate_sequence(4, 6, 8, 5),
            Err(SequenceError::NotMinimal(Generator::M2))
        );
        assert_eq!(
            validate_sequence(2, 4, 6, 3),
            Err(SequenceError::NotMinimal(Generator::M1))
        );
        assert_eq!(validate_sequence(4, 6, 8, 10), Err(SequenceError::GcdNotOne));
        assert_eq!(validate_sequence(5, 7, 10, 11), Err(SequenceError::NotArithmetic));
        assert_eq!(validate_sequence(5, 7, 9, 0), Err(SequenceError::NonPositive));
        assert_eq!(
            validate_sequence(5, 7, 9, 12),
            Err(SequenceError::NotMinimal(Generator::N))
        );
    }

    #[test]
    fn membership() {
        let g1 = SubSemigroup::new(&[5, 7, 9]);
        assert!(!g1.contains(11));
        assert!(g1.contains(22));
        assert!(g1.contains(0));
        let even = SubSemigroup::new(&[4, 6]);
        assert!(!even.contains(1001));
        assert!(even.contains(1000));
        assert!(!even.contains(2));
    }

    #[test]
    fn apery() {
        let mut a = SubSemigroup::new(&[3, 4, 5]).apery_set(3);
        a.sort();
        assert_eq!(a, vec![0, 4, 5]);
        assert_eq!(SubSemigroup::new(&[1]).apery_set(1), vec![0]);
        let mut a = SubSemigroup::new(&[5, 7, 9]).apery_set(5);
        a.sort();
        assert_eq!(a, vec![0, 7, 9, 16, 18]);
    }

    #[test]
    fn frobenius_numbers() {
        assert_eq!(SubSemigroup::new(&[3, 4, 5]).frobenius(), Ok(2));
        assert_eq!(SubSemigroup::new(&[5, 7, 9, 11]).frobenius(), Ok(13));
        assert_eq!(SubSemigroup::new(&[1]).frobenius(), Ok(-1));
        assert_eq!(
            SubSemigroup::new(&[4, 6]).frobenius(),
            Err(SemigroupError::GcdNotOne)
        );
    }

    #[test]
    fn min_multiples() {
        assert_eq!(min_multiple_in(11, &SubSemigroup::new(&[5, 7, 9])), 2);
        assert_eq!(min_multiple_in(5, &SubSemigroup::new(&[4, 6, 8])), 2);
        assert_eq!(min_multiple_in(10, &SubSemigroup::new(&[5, 7, 9])), 1);
    }

    #[test]
    fn series() {
        let spec = validate_sequence(5, 7, 9, 11).unwrap();
        assert_eq!(gamma_series_truncation(&spec, 6), vec![1, 0, 0, 0, 0, 1, 0]);
        assert_eq!(gamma_series_truncation(&spec, 0), vec![1]);
        let s = gamma_series_truncation(&spec, 14);
        let members: Vec<usize> = (0..=14).filter(|&i| s[i] == 1).collect();
        assert_eq!(members, vec![0, 5, 7, 9, 10, 11, 12, 14]);
    }

    fn arb_spec() -> impl Strategy<Value = SequenceSpec> {
        (2u64..20, 1u64..10, 2u64..40)
            .prop_filter_map("invalid", |(m0, d, n)| {
                validate_sequence(m0, m0 + d, m0 + 2 * d, n).ok()
            })
    }

    proptest! {
        #[test]
        fn above_frobenius_all_members(spec in arb_spec()) {
            let g = spec.gamma();
            let f = g.frobenius().unwrap();
            prop_assert!(f >= 0 && !g.contains(f as u64));
            let start = (f + 1) as u64;
            for s in start..=start + spec.m2 {
                prop_assert!(g.contains(s));
            }
        }

        #[test]
        fn apery_properties(spec in arb_spec()) {
            let g = spec.gamma();
            let a = g.apery_set(spec.m0);
            prop_assert_eq!(a.len() as u64, spec.m0);
            let mut residues: Vec<u64> = a.iter().map(|x| x % spec.m0).collect();
            residues.sort();
            residues.dedup();
            prop_assert_eq!(residues.len() as u64, spec.m0);
            for &x in &a {
                prop_assert!(x < spec.m0 || !g.contains(x - spec.m0));
            }
        }

        #[test]
        fn min_multiple_is_least(spec in arb_spec()) {
            let g1 = spec.gamma1();
            let v = min_multiple_in(spec.n, &g1);
            prop_assert!(g1.contains(v * spec.n));
            if v >= 2 {
                prop_assert!(!g1.contains((v - 1) * spec.n));
            }
        }

        #[test]
        fn progression_forces_xi(spec in arb_spec()) {
            prop_assert_eq!(2 * spec.m1, spec.m0 + spec.m2);
        }
    }
}
