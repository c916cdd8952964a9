//! Exact rational coefficients.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, Zero};

/// An exact rational number.
///
/// Backed by a reduced `i128` fraction. Every operation is checked; an
/// overflow aborts the computation instead of producing a wrong answer.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coeff(Ratio<i128>);

impl Coeff {
    pub const ZERO: Coeff = Coeff(Ratio::new_raw(0, 1));
    pub const ONE: Coeff = Coeff(Ratio::new_raw(1, 1));
    pub const MINUS_ONE: Coeff = Coeff(Ratio::new_raw(-1, 1));

    pub fn new(numer: i128, denom: i128) -> Self {
        assert!(denom != 0, "zero denominator");
        Coeff(Ratio::new(numer, denom))
    }

    pub fn int(n: i128) -> Self {
        Coeff(Ratio::from_integer(n))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Coeff(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero coefficient");
        Coeff(self.0.recip())
    }

    /// Integer value, if the coefficient is integral and fits in `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            i64::try_from(self.numer()).ok()
        } else {
            None
        }
    }
}

impl Default for Coeff {
    fn default() -> Self {
        Coeff::ZERO
    }
}

impl From<i64> for Coeff {
    fn from(n: i64) -> Self {
        Coeff::int(n as i128)
    }
}

impl Add for Coeff {
    type Output = Coeff;
    fn add(self, rhs: Coeff) -> Coeff {
        Coeff(self.0.checked_add(&rhs.0).expect("coefficient overflow"))
    }
}

impl Sub for Coeff {
    type Output = Coeff;
    fn sub(self, rhs: Coeff) -> Coeff {
        Coeff(self.0.checked_sub(&rhs.0).expect("coefficient overflow"))
    }
}

impl Mul for Coeff {
    type Output = Coeff;
    fn mul(self, rhs: Coeff) -> Coeff {
        Coeff(self.0.checked_mul(&rhs.0).expect("coefficient overflow"))
    }
}

impl Div for Coeff {
    type Output = Coeff;
    fn div(self, rhs: Coeff) -> Coeff {
        assert!(!rhs.is_zero(), "division by zero coefficient");
        Coeff(self.0.checked_div(&rhs.0).expect("coefficient overflow"))
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff(Ratio::new_raw(
            self.numer().checked_neg().expect("coefficient overflow"),
            self.denom(),
        ))
    }
}

impl AddAssign for Coeff {
    fn add_assign(&mut self, rhs: Coeff) {
        *self = *self + rhs;
    }
}

impl SubAssign for Coeff {
    fn sub_assign(&mut self, rhs: Coeff) {
        *self = *self - rhs;
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
