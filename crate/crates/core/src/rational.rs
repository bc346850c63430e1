//! Exact rational scalars over `i128`.
//!
//! Values are kept reduced with a positive denominator. Arithmetic that would
//! overflow `i128` panics (`checked_*` variants return `None` instead); it never
//! wraps.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// A reduced fraction `numer / denom` with `denom > 0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    numer: i128,
    denom: i128,
}

pub(crate) fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    pub const ZERO: Rational = Rational { numer: 0, denom: 1 };
    pub const ONE: Rational = Rational { numer: 1, denom: 1 };

    /// Builds `numer / denom` in lowest terms. Panics on a zero denominator.
    pub fn new(numer: i128, denom: i128) -> Self {
        Self::checked_new(numer, denom).expect("rational with zero denominator or overflow")
    }

    pub fn checked_new(numer: i128, denom: i128) -> Option<Self> {
        if denom == 0 {
            return None;
        }
        let g = gcd(numer, denom).max(1);
        let (mut n, mut d) = (numer / g, denom / g);
        if d < 0 {
            n = n.checked_neg()?;
            d = d.checked_neg()?;
        }
        Some(Rational { numer: n, denom: d })
    }

    pub const fn from_integer(n: i128) -> Self {
        Rational { numer: n, denom: 1 }
    }

    pub fn numer(&self) -> i128 {
        self.numer
    }

    pub fn denom(&self) -> i128 {
        self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.numer == 0
    }

    pub fn is_integer(&self) -> bool {
        self.denom == 1
    }

    pub fn abs(&self) -> Self {
        if self.numer < 0 {
            -*self
        } else {
            *self
        }
    }

    pub fn signum(&self) -> i32 {
        self.numer.signum() as i32
    }

    pub fn recip(&self) -> Option<Self> {
        Self::checked_new(self.denom, self.numer)
    }

    pub fn to_f64(&self) -> f64 {
        self.numer as f64 / self.denom as f64
    }

    pub fn checked_add(&self, rhs: &Self) -> Option<Self> {
        // (a/b) + (c/d) over the lcm of b and d keeps intermediates small
        let g = gcd(self.denom, rhs.denom);
        let lhs_scale = rhs.denom / g;
        let rhs_scale = self.denom / g;
        let numer = self.numer.checked_mul(lhs_scale)?.checked_add(rhs.numer.checked_mul(rhs_scale)?)?;
        let denom = self.denom.checked_mul(lhs_scale)?;
        Self::checked_new(numer, denom)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Option<Self> {
        self.checked_add(&rhs.checked_neg()?)
    }

    pub fn checked_neg(&self) -> Option<Self> {
        Some(Rational { numer: self.numer.checked_neg()?, denom: self.denom })
    }

    pub fn checked_mul(&self, rhs: &Self) -> Option<Self> {
        let g1 = gcd(self.numer, rhs.denom).max(1);
        let g2 = gcd(rhs.numer, self.denom).max(1);
        let numer = (self.numer / g1).checked_mul(rhs.numer / g2)?;
        let denom = (self.denom / g2).checked_mul(rhs.denom / g1)?;
        Self::checked_new(numer, denom)
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        self.checked_mul(&rhs.recip()?)
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::ZERO
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n as i128)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational::from_integer(n as i128)
    }
}

impl From<i128> for Rational {
    fn from(n: i128) -> Self {
        Rational::from_integer(n)
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        // denominators are positive, so cross-multiplication preserves order
        let lhs = self.numer.checked_mul(other.denom);
        let rhs = other.numer.checked_mul(self.denom);
        match (lhs, rhs) {
            (Some(l), Some(r)) => l.cmp(&r),
            _ => self.to_f64().partial_cmp(&other.to_f64()).unwrap_or(Ordering::Equal),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident, $assign_trait:ident, $assign:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$checked(&rhs).expect(concat!("rational overflow in ", stringify!($method)))
            }
        }
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                self.$checked(rhs).expect(concat!("rational overflow in ", stringify!($method)))
            }
        }
        impl $assign_trait for Rational {
            fn $assign(&mut self, rhs: Rational) {
                *self = $trait::$method(*self, rhs);
            }
        }
    };
}

binop!(Add, add, checked_add, AddAssign, add_assign);
binop!(Sub, sub, checked_sub, SubAssign, sub_assign);
binop!(Mul, mul, checked_mul, MulAssign, mul_assign);

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "rational division by zero");
        self.checked_div(&rhs).expect("rational overflow in div")
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.checked_neg().expect("rational overflow in neg")
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::ZERO, |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::ONE, |acc, x| acc * x)
    }
}

/// Prints `p` for integers and `p/q` otherwise.
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom == 1 {
            write!(f, "{}", self.numer)
        } else {
            write!(f, "{}/{}", self.numer, self.denom)
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let invalid = || ParseRationalError::Invalid(s.to_string());
        let (numer, denom) = match s.split_once('/') {
            Some((n, d)) => {
                (n.trim().parse::<i128>().map_err(|_| invalid())?, d.trim().parse::<i128>().map_err(|_| invalid())?)
            }
            None => (s.parse::<i128>().map_err(|_| invalid())?, 1),
        };
        if denom == 0 {
            return Err(ParseRationalError::ZeroDenominator(s.to_string()));
        }
        Rational::checked_new(numer, denom).ok_or_else(invalid)
    }
}
