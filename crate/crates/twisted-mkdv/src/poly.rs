//! Dense univariate polynomials over an exact coefficient scalar.
//!
//! Coefficients are stored lowest degree first with no trailing zeros, so
//! structural equality is mathematical equality.  Degrees stay small here
//! (tens at most), which is why a dense representation is the right one.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{Dual, Rat, Scalar};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: Scalar> Poly<F> {
    /// Builds a polynomial from coefficients (lowest first), trimming
    /// trailing zeros.
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Poly::new(vec![c])
    }

    /// The variable x.
    pub fn x() -> Self {
        Poly::new(vec![F::zero(), F::one()])
    }

    /// `c·x^d`.
    pub fn monomial(c: F, d: usize) -> Self {
        let mut coeffs = vec![F::zero(); d + 1];
        coeffs[d] = c;
        Poly::new(coeffs)
    }

    /// Monic linear polynomial `x + c`.
    pub fn x_plus(c: F) -> Self {
        Poly::new(vec![c, F::one()])
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Poly::new(cs.iter().map(|&c| F::from_int(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the stored length).
    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map_or(false, |c| *c == F::one())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, at: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at.clone() + c.clone();
        }
        acc
    }

    pub fn scale(&self, k: &F) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.clone() * k.clone()).collect())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c.clone() * F::from_int(i as i64 + 1))
                .collect(),
        )
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }

    /// Divides by the leading coefficient. Errors when it is not invertible.
    pub fn make_monic(&self) -> Result<Self> {
        match self.leading() {
            None => Ok(Poly::zero()),
            Some(l) => {
                let li = l.inv().ok_or(Error::Field)?;
                Ok(self.scale(&li))
            }
        }
    }

    /// Euclidean division; requires an invertible leading coefficient of
    /// the divisor.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d
            .degree()
            .ok_or_else(|| Error::Domain("division by the zero polynomial".into()))?;
        let li = d.leading().unwrap().inv().ok_or(Error::Field)?;
        let mut rem = self.coeffs.clone();
        if rem.len() < dd + 1 {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![F::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let q = rem[i].clone() * li.clone();
            if q.is_zero() {
                continue;
            }
            quot[i - dd] = q.clone();
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i - dd + j] = rem[i - dd + j].clone() - q.clone() * dc.clone();
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Exact division; a nonzero remainder is an error.
    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Divisibility)
        }
    }

    /// Monic greatest common divisor by the Euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        let mut a = self.make_monic()?;
        let mut b = other.make_monic()?;
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r.make_monic()?;
        }
        Ok(a)
    }

    /// True when the polynomial has no repeated roots (gcd with its
    /// derivative is constant). The zero polynomial is not squarefree.
    pub fn is_squarefree(&self) -> Result<bool> {
        if self.is_zero() {
            return Ok(false);
        }
        if self.is_constant() {
            return Ok(true);
        }
        Ok(self.gcd(&self.derivative())?.is_constant())
    }

    pub fn coprime_with(&self, other: &Self) -> Result<bool> {
        Ok(self.gcd(other)?.is_constant())
    }
}

/// Wronskian determinant `Wr(f, g) = f·g′ − f′·g`.
pub fn wronskian<F: Scalar>(f: &Poly<F>, g: &Poly<F>) -> Poly<F> {
    f.clone() * g.derivative() - f.derivative() * g.clone()
}

impl<F: Scalar> Add for Poly<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (mut long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self.coeffs, rhs.coeffs)
        } else {
            (rhs.coeffs, self.coeffs)
        };
        for (i, c) in short.into_iter().enumerate() {
            long[i] = long[i].clone() + c;
        }
        Poly::new(long)
    }
}

impl<F: Scalar> Sub for Poly<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<F: Scalar> Neg for Poly<F> {
    type Output = Self;
    fn neg(self) -> Self {
        Poly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl<F: Scalar> Mul for Poly<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<F: Scalar> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Splits a dual-coefficient polynomial into its value and infinitesimal
/// parts, each an ordinary polynomial.
pub fn dual_parts(p: &Poly<Dual<Rat>>) -> (Poly<Rat>, Poly<Rat>) {
    let val = Poly::new(p.coeffs().iter().map(|c| c.val.clone()).collect());
    let eps = Poly::new(p.coeffs().iter().map(|c| c.eps.clone()).collect());
    (val, eps)
}

/// Embeds an ordinary polynomial as a dual-coefficient one.
pub fn to_dual(p: &Poly<Rat>) -> Poly<Dual<Rat>> {
    Poly::new(p.coeffs().iter().cloned().map(Dual::constant).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    type P = Poly<Rat>;

    #[test]
    fn product_expansion() {
        // (x+1)·(x−1) = x² − 1
        let p = P::x_plus(rat_int(1)) * P::x_plus(rat_int(-1));
        assert_eq!(p, P::from_ints(&[-1, 0, 1]));
    }

    #[test]
    fn gcd_is_monic() {
        // gcd(x²−1, x−1) = x−1
        let a = P::from_ints(&[-1, 0, 1]);
        let b = P::from_ints(&[-1, 1]);
        assert_eq!(a.gcd(&b).unwrap(), b);
        // gcd divides both arguments exactly
        let g = a.gcd(&b).unwrap();
        assert!(a.exact_div(&g).is_ok());
        assert!(b.exact_div(&g).is_ok());
    }

    #[test]
    fn derivative_of_cube() {
        let p = P::monomial(rat_int(1), 3);
        assert_eq!(p.derivative(), P::from_ints(&[0, 0, 3]));
    }

    #[test]
    fn exact_divide_rejects_remainder() {
        let a = P::from_ints(&[1, 0, 1]); // x² + 1
        let b = P::from_ints(&[-1, 1]); // x − 1
        assert!(matches!(a.exact_div(&b), Err(Error::Divisibility)));
    }

    #[test]
    fn wronskian_edge_cases() {
        // Wr(x, 1) = −1
        let w = wronskian(&P::x(), &P::one());
        assert_eq!(w, P::from_ints(&[-1]));
        // Wr(f, f) = 0
        let f = P::from_ints(&[2, 5, 1]);
        assert!(wronskian(&f, &f).is_zero());
        // Wr(x²+1, x) = 1 − x²
        let w = wronskian(&P::from_ints(&[1, 0, 1]), &P::x());
        assert_eq!(w, P::from_ints(&[1, 0, -1]));
    }

    #[test]
    fn dual_eval_is_forward_derivative() {
        // evaluating p at a+ε puts p′(a) in the infinitesimal slot
        let p = P::from_ints(&[5, -3, 0, 2]); // 2x³ − 3x + 5
        let a = rat(7, 3);
        let pd = to_dual(&p);
        let out = pd.eval(&Dual::variable(a.clone()));
        assert_eq!(out.val, p.eval(&a));
        assert_eq!(out.eps, p.derivative().eval(&a));
    }

    #[test]
    fn squarefree_detection() {
        let sq = P::x() * P::x();
        assert!(!sq.is_squarefree().unwrap());
        assert!(P::x_plus(rat_int(4)).is_squarefree().unwrap());
    }
}
