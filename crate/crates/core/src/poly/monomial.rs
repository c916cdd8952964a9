//! Exponent vectors over the fixed variable set `X0, X1, X2, Y, T`.

use std::fmt;

/// Number of variables, including the elimination variable `T`.
pub const NVARS: usize = 5;

/// Number of variables of the coordinate ring `k[X0, X1, X2, Y]`.
pub const RING_VARS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X0 = 0,
    X1 = 1,
    X2 = 2,
    Y = 3,
    T = 4,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::X0, Var::X1, Var::X2, Var::Y, Var::T];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X0 => "X0",
            Var::X1 => "X1",
            Var::X2 => "X2",
            Var::Y => "Y",
            Var::T => "T",
        }
    }

    /// `X0`, `X1` or `X2` by subscript.
    pub fn x(i: usize) -> Var {
        match i {
            0 => Var::X0,
            1 => Var::X1,
            2 => Var::X2,
            _ => panic!("no variable X{i}"),
        }
    }
}

/// A monomial, stored as its exponent vector.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn new(exps: [u32; NVARS]) -> Self {
        Monomial(exps)
    }

    /// Monomial in the ring variables only.
    pub fn ring(x0: u32, x1: u32, x2: u32, y: u32) -> Self {
        Monomial([x0, x1, x2, y, 0])
    }

    pub fn var(v: Var, e: u32) -> Self {
        let mut m = Monomial::ONE;
        m.0[v.index()] = e;
        m
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn exps(&self) -> &[u32; NVARS] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = [0u32; NVARS];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[i]
                .checked_add(other.0[i])
                .expect("exponent overflow");
        }
        Monomial(out)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = [0u32; NVARS];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[i].checked_sub(other.0[i])?;
        }
        Some(Monomial(out))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = [0u32; NVARS];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[i].max(other.0[i]);
        }
        Monomial(out)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = [0u32; NVARS];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[i].min(other.0[i]);
        }
        Monomial(out)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn pow(&self, k: u32) -> Monomial {
        let mut out = [0u32; NVARS];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[i].checked_mul(k).expect("exponent overflow");
        }
        Monomial(out)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for v in Var::ALL {
            let e = self.exp(v);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", v.name())?;
            } else {
                write!(f, "{}^{}", v.name(), e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = Monomial::ring(1, 2, 0, 3);
        let b = Monomial::ring(0, 1, 4, 0);
        assert_eq!(a.mul(&b), Monomial::ring(1, 3, 4, 3));
        assert_eq!(a.lcm(&b), Monomial::ring(1, 2, 4, 3));
        assert_eq!(a.gcd(&b), Monomial::ring(0, 1, 0, 0));
        assert!(Monomial::ring(0, 1, 0, 0).divides(&a));
        assert_eq!(a.div(&b), None);
        assert_eq!(a.to_string(), "X0*X1^2*Y^3");
        assert_eq!(Monomial::ONE.to_string(), "1");
    }
}
