//! Coefficient scalars: exact rationals and dual numbers over them.
//!
//! Every quantity in this crate is computed over an exact coefficient
//! domain.  `Rat` is an arbitrary-precision rational; `Dual<T>` is the ring
//! T[ε]/(ε²) used for exact forward differentiation in the generation
//! parameters.  The [`Scalar`] trait is the small interface the polynomial
//! and linear-algebra code needs; it is implemented exactly twice, for `Rat`
//! and for `Dual<Rat>`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number: reduced fraction of big integers, positive
/// denominator.  `num_rational::BigRational` maintains both invariants.
pub type Rat = BigRational;

/// `p/q` as a `Rat`. Panics on `q == 0`.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Integer embedded as a `Rat`.
pub fn rat_int(p: i64) -> Rat {
    Rat::from_integer(BigInt::from(p))
}

/// Renders `r` as `p/q` (always with the slash, so the form round-trips).
pub fn rat_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let numer: BigInt = p
        .trim()
        .parse()
        .map_err(|_| Error::Schema(format!("bad rational `{s}`")))?;
    let denom: BigInt = q
        .trim()
        .parse()
        .map_err(|_| Error::Schema(format!("bad rational `{s}`")))?;
    if denom.is_zero() {
        return Err(Error::Schema(format!("zero denominator in `{s}`")));
    }
    Ok(Rat::new(numer, denom))
}

/// Minimal coefficient interface for generic polynomial and linear algebra.
///
/// `inv` returns `None` on non-invertible elements; for a field that means
/// zero only, for dual numbers it also covers pure-infinitesimal elements.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;

    fn div(&self, other: &Self) -> Result<Self> {
        let i = other.inv().ok_or(Error::Field)?;
        Ok(self.clone() * i)
    }
}

impl Scalar for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_int(n: i64) -> Self {
        rat_int(n)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Dual number `val + ε·eps` with `ε² = 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Dual<T> {
    pub val: T,
    pub eps: T,
}

pub type DualRat = Dual<Rat>;

impl<T: Scalar> Dual<T> {
    pub fn new(val: T, eps: T) -> Self {
        Dual { val, eps }
    }

    /// Embeds a plain value (zero infinitesimal part).
    pub fn constant(val: T) -> Self {
        Dual {
            val,
            eps: T::zero(),
        }
    }

    /// `val + ε`: the seed for differentiating with respect to this value.
    pub fn variable(val: T) -> Self {
        Dual {
            val,
            eps: T::one(),
        }
    }
}

impl<T: Scalar> Add for Dual<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Dual {
            val: self.val + rhs.val,
            eps: self.eps + rhs.eps,
        }
    }
}

impl<T: Scalar> Sub for Dual<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Dual {
            val: self.val - rhs.val,
            eps: self.eps - rhs.eps,
        }
    }
}

impl<T: Scalar> Mul for Dual<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Dual {
            val: self.val.clone() * rhs.val.clone(),
            eps: self.val * rhs.eps + self.eps * rhs.val,
        }
    }
}

impl<T: Scalar> Neg for Dual<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual {
            val: -self.val,
            eps: -self.eps,
        }
    }
}

impl<T: Scalar> fmt::Display for Dual<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + ε·{}", self.val, self.eps)
    }
}

impl<T: Scalar> Scalar for Dual<T> {
    fn zero() -> Self {
        Dual::constant(T::zero())
    }
    fn one() -> Self {
        Dual::constant(T::one())
    }
    fn from_int(n: i64) -> Self {
        Dual::constant(T::from_int(n))
    }
    fn is_zero(&self) -> bool {
        self.val.is_zero() && self.eps.is_zero()
    }
    /// `(a + εb)⁻¹ = a⁻¹ − ε·b·a⁻²`, defined iff the value part is invertible.
    fn inv(&self) -> Option<Self> {
        let vi = self.val.inv()?;
        Some(Dual {
            val: vi.clone(),
            eps: -(self.eps.clone() * vi.clone() * vi),
        })
    }
}

/// True when `r` is an integer (denominator 1 after reduction).
pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Absolute value helper used by a few tests and displays.
pub fn rat_abs(r: &Rat) -> Rat {
    r.abs()
}
