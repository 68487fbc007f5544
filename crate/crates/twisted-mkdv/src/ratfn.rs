//! Rational functions of x with exact rational coefficients.
//!
//! Canonical form everywhere: numerator and denominator coprime, denominator
//! monic and nonzero.  Equality is therefore plain structural comparison,
//! which the identity checks in the rest of the crate rely on.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{Dual, Rat, Scalar};

type P = Poly<Rat>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFn {
    num: P,
    den: P,
}

impl RatFn {
    /// Builds `num/den` in canonical form. Errors on a zero denominator.
    pub fn new(num: P, den: P) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(RatFn {
                num: P::zero(),
                den: P::one(),
            });
        }
        let g = num.gcd(&den)?;
        let (mut num, mut den) = if g.is_constant() {
            (num, den)
        } else {
            (num.exact_div(&g)?, den.exact_div(&g)?)
        };
        let lead = den.leading().unwrap().clone();
        if lead != Rat::one() {
            let li = lead.inv().ok_or(Error::Field)?;
            num = num.scale(&li);
            den = den.scale(&li);
        }
        Ok(RatFn { num, den })
    }

    pub fn from_poly(p: P) -> Self {
        RatFn { num: p, den: P::one() }
    }

    pub fn zero() -> Self {
        RatFn::from_poly(P::zero())
    }

    pub fn one() -> Self {
        RatFn::from_poly(P::one())
    }

    pub fn constant(c: Rat) -> Self {
        RatFn::from_poly(P::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        RatFn::constant(crate::scalar::rat_int(n))
    }

    pub fn num(&self) -> &P {
        &self.num
    }

    pub fn den(&self) -> &P {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// True for a constant (degree-zero numerator over denominator one).
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The constant value if this is a constant function.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn scale(&self, k: &Rat) -> Self {
        if k.is_zero() {
            return RatFn::zero();
        }
        RatFn {
            num: self.num.scale(k),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("inverse of the zero function".into()));
        }
        RatFn::new(self.den.clone(), self.num.clone())
    }

    /// Derivative in x by the quotient rule, reduced.
    pub fn derivative(&self) -> Self {
        if self.is_polynomial() {
            let d = self.den.coeff(0);
            let di = d.inv().expect("monic nonzero denominator");
            return RatFn::from_poly(self.num.derivative().scale(&di));
        }
        let w = self.num.derivative() * self.den.clone() - self.num.clone() * self.den.derivative();
        RatFn::new(w, self.den.clone() * self.den.clone()).expect("denominator square nonzero")
    }

    /// Evaluation at a rational point; a vanishing denominator is a pole.
    pub fn eval(&self, at: &Rat) -> Result<Rat> {
        let d = self.den.eval(at);
        if d.is_zero() {
            return Err(Error::Pole);
        }
        Ok(self.num.eval(at) * d.inv().unwrap())
    }
}

/// Logarithmic derivative `ln′ f = f′/f` of a nonzero polynomial, reduced.
pub fn log_deriv(f: &P) -> Result<RatFn> {
    if f.is_zero() {
        return Err(Error::Domain("log derivative of the zero polynomial".into()));
    }
    RatFn::new(f.derivative(), f.clone())
}

/// Logarithmic derivative of a dual-coefficient polynomial as a dual-valued
/// rational function: `ln′(f₀+εf₁) = f₀′/f₀ + ε·(f₁′f₀ − f₀′f₁)/f₀²`.
pub fn dual_log_deriv(f: &Poly<Dual<Rat>>) -> Result<Dual<RatFn>> {
    let (f0, f1) = crate::poly::dual_parts(f);
    if f0.is_zero() {
        return Err(Error::Pole);
    }
    let val = log_deriv(&f0)?;
    let w = f1.derivative() * f0.clone() - f0.derivative() * f1;
    let eps = RatFn::new(w, f0.clone() * f0)?;
    Ok(Dual::new(val, eps))
}

impl Add for RatFn {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        // Cross-reduce through the gcd of the denominators so the final
        // reduction only ever sees small common factors.
        let g = self.den.gcd(&rhs.den).expect("gcd over the rationals");
        if g.is_constant() {
            let num = self.num * rhs.den.clone() + rhs.num * self.den.clone();
            let den = self.den * rhs.den;
            return RatFn::new(num, den).expect("nonzero denominator");
        }
        let a1 = self.den.exact_div(&g).unwrap();
        let b1 = rhs.den.exact_div(&g).unwrap();
        let t = self.num * b1.clone() + rhs.num * a1.clone();
        if t.is_zero() {
            return RatFn::zero();
        }
        let g2 = t.gcd(&g).expect("gcd over the rationals");
        let num = t.exact_div(&g2).unwrap();
        let den = self.den.exact_div(&g2).unwrap() * b1;
        RatFn::new(num, den).expect("nonzero denominator")
    }
}

impl Sub for RatFn {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for RatFn {
    type Output = Self;
    fn neg(self) -> Self {
        RatFn {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Mul for RatFn {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return RatFn::zero();
        }
        // (a/b)(c/d) with cross-reduction of (a,d) and (c,b); the result is
        // then already in lowest terms.
        let g1 = self.num.gcd(&rhs.den).expect("gcd over the rationals");
        let g2 = rhs.num.gcd(&self.den).expect("gcd over the rationals");
        let a = self.num.exact_div(&g1).unwrap();
        let d = rhs.den.exact_div(&g1).unwrap();
        let c = rhs.num.exact_div(&g2).unwrap();
        let b = self.den.exact_div(&g2).unwrap();
        RatFn::new(a * c, b * d).expect("nonzero denominator")
    }
}

impl Div for RatFn {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self * rhs.recip().expect("division by the zero function")
    }
}

impl Scalar for RatFn {
    fn zero() -> Self {
        RatFn::zero()
    }
    fn one() -> Self {
        RatFn::one()
    }
    fn from_int(n: i64) -> Self {
        RatFn::from_int(n)
    }
    fn is_zero(&self) -> bool {
        RatFn::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        self.recip().ok()
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// Value and derivative parts of a dual-valued rational function.
pub fn dual_ratfn_parts(d: &Dual<RatFn>) -> (RatFn, RatFn) {
    (d.val.clone(), d.eps.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    fn over(num: &[i64], den: &[i64]) -> RatFn {
        RatFn::new(P::from_ints(num), P::from_ints(den)).unwrap()
    }

    #[test]
    fn log_deriv_reduces() {
        // ln′((x+2)³) = 3/(x+2)
        let f = P::x_plus(rat_int(2)).pow(3);
        assert_eq!(log_deriv(&f).unwrap(), over(&[3], &[2, 1]));
        // ln′(5) = 0
        assert!(log_deriv(&P::constant(rat_int(5))).unwrap().is_zero());
        // ln′(x²(x+1)) = (3x+2)/(x²+x)
        let f = P::monomial(rat_int(1), 2) * P::x_plus(rat_int(1));
        assert_eq!(log_deriv(&f).unwrap(), over(&[2, 3], &[0, 1, 1]));
    }

    #[test]
    fn field_ops_cancel() {
        // 1/(x+c) + (−1)/(x+c) = 0 with c = 3
        let a = over(&[1], &[3, 1]);
        let b = over(&[-1], &[3, 1]);
        assert!((a.clone() + b).is_zero());
        // derivative of 1/(x+3) is −1/(x+3)²
        assert_eq!(a.derivative(), over(&[-1], &[9, 6, 1]));
        // (a/b)·b = a
        let f = over(&[1, 2], &[5, 0, 1]);
        let g = over(&[7, 1], &[-2, 1]);
        assert_eq!(f.clone() * g.clone() / g, f);
    }

    #[test]
    fn eval_and_poles() {
        let f = over(&[2], &[1, 1]); // 2/(x+1)
        assert_eq!(f.eval(&rat_int(1)).unwrap(), rat_int(1));
        assert!(matches!(f.eval(&rat_int(-1)), Err(Error::Pole)));
    }

    #[test]
    fn log_deriv_is_multiplicative() {
        let f = P::from_ints(&[1, 3, 1]);
        let g = P::from_ints(&[-2, 1]);
        let lhs = log_deriv(&(f.clone() * g.clone())).unwrap();
        let rhs = log_deriv(&f).unwrap() + log_deriv(&g).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn dual_log_deriv_matches_hand_computation() {
        // f = x + (c+ε) at c = 2: ln′ f = 1/(x+2) − ε/(x+2)²
        let f: Poly<Dual<Rat>> = Poly::new(vec![Dual::variable(rat_int(2)), Dual::one()]);
        let ld = dual_log_deriv(&f).unwrap();
        assert_eq!(ld.val, over(&[1], &[2, 1]));
        assert_eq!(ld.eps, over(&[-1], &[4, 4, 1]));
        let _ = rat(1, 2);
    }
}
