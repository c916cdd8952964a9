//! Weighted gradings and the monomial orders built on them.

use std::cmp::Ordering;

use super::monomial::{Monomial, Var, NVARS};

/// Positive integer weight per variable.
///
/// The ring variables get the weights `m0, m1, m2, n`; the elimination
/// variable `T` always has weight 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WeightedGrading {
    weights: [u64; NVARS],
}

impl WeightedGrading {
    pub fn new(m0: u64, m1: u64, m2: u64, n: u64) -> Self {
        assert!(m0 > 0 && m1 > 0 && m2 > 0 && n > 0, "weights must be positive");
        WeightedGrading {
            weights: [m0, m1, m2, n, 1],
        }
    }

    /// Standard grading: every variable has weight 1.
    pub fn standard() -> Self {
        WeightedGrading { weights: [1; NVARS] }
    }

    pub fn weight(&self, v: Var) -> u64 {
        self.weights[v.index()]
    }

    pub fn weights(&self) -> [u64; 4] {
        [self.weights[0], self.weights[1], self.weights[2], self.weights[3]]
    }

    pub fn degree(&self, m: &Monomial) -> u64 {
        m.0.iter()
            .zip(self.weights.iter())
            .map(|(&e, &w)| e as u64 * w)
            .sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    /// Weighted degree, ties broken reverse-lexicographically with
    /// `X0 > X1 > X2 > Y > T`.
    WeightedGrevlex,
    /// Weighted degree, ties broken reverse-lexicographically with the ring
    /// variables ranked `Y > X2 > X1 > X0`: the smaller `X0` exponent wins
    /// first.
    WeightedGrevlexYFirst,
    /// `T` exponent first, then weighted grevlex on the ring variables.
    Elimination,
}

/// A monomial order on `k[X0, X1, X2, Y, T]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub grading: WeightedGrading,
}

impl MonomialOrder {
    pub fn grevlex(grading: WeightedGrading) -> Self {
        MonomialOrder {
            kind: OrderKind::WeightedGrevlex,
            grading,
        }
    }

    pub fn grevlex_y_first(grading: WeightedGrading) -> Self {
        MonomialOrder {
            kind: OrderKind::WeightedGrevlexYFirst,
            grading,
        }
    }

    pub fn elimination(grading: WeightedGrading) -> Self {
        MonomialOrder {
            kind: OrderKind::Elimination,
            grading,
        }
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::WeightedGrevlex => grevlex(&self.grading, a, b),
            OrderKind::WeightedGrevlexYFirst => grevlex_y_first(&self.grading, a, b),
            OrderKind::Elimination => a
                .exp(Var::T)
                .cmp(&b.exp(Var::T))
                .then_with(|| grevlex(&self.grading, a, b)),
        }
    }

    pub fn degree(&self, m: &Monomial) -> u64 {
        self.grading.degree(m)
    }
}

fn grevlex(g: &WeightedGrading, a: &Monomial, b: &Monomial) -> Ordering {
    match g.degree(a).cmp(&g.degree(b)) {
        Ordering::Equal => {}
        o => return o,
    }
    // last variable with differing exponent: the smaller exponent wins
    for i in (0..NVARS).rev() {
        match a.0[i].cmp(&b.0[i]) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

fn grevlex_y_first(g: &WeightedGrading, a: &Monomial, b: &Monomial) -> Ordering {
    match g.degree(a).cmp(&g.degree(b)) {
        Ordering::Equal => {}
        o => return o,
    }
    const SCAN: [usize; NVARS] = [4, 0, 1, 2, 3];
    for i in SCAN {
        match a.0[i].cmp(&b.0[i]) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}
