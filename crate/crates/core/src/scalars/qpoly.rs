//! Dense univariate polynomials over the rationals, used to build cyclotomic
//! polynomials and to invert residues modulo them.

use super::Rational;
use crate::error::{Error, Result};

/// Coefficients in ascending powers, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        QPoly::new(coeffs.iter().map(|&c| Rational::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        QPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        QPoly::from_ints(&[1])
    }

    /// `x^n - 1`
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut c = vec![Rational::zero(); n + 1];
        c[0] = Rational::from_int(-1);
        c[n] = Rational::one();
        QPoly::new(c)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Rational::zero();
        QPoly::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).unwrap_or(&zero);
                    let b = other.coeffs.get(i).unwrap_or(&zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        QPoly::new(out)
    }

    pub fn scale(&self, c: &Rational) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &QPoly) -> Result<(QPoly, QPoly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = divisor.coeffs[dd].inv()?;
        let mut rem = self.coeffs.clone();
        let Some(ds) = self.degree() else {
            return Ok((QPoly::zero(), QPoly::zero()));
        };
        if ds < dd {
            return Ok((QPoly::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); ds - dd + 1];
        for k in (dd..=ds).rev() {
            let c = &rem[k] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + i] = &rem[k - dd + i] - &(&c * d);
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        Ok((QPoly::new(quot), QPoly::new(rem)))
    }

    /// Exact division; errors if the remainder is nonzero.
    pub fn exact_div(&self, divisor: &QPoly) -> Result<QPoly> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::InvalidParameter("polynomial division is not exact".into()));
        }
        Ok(q)
    }

    /// Returns `u` with `self * u = 1 (mod modulus)`, assuming the two are coprime.
    pub fn inverse_mod(&self, modulus: &QPoly) -> Result<QPoly> {
        // extended Euclid tracking only the coefficient of `self`
        let (_, a) = self.div_rem(modulus)?;
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (mut r0, mut r1) = (modulus.clone(), a);
        let (mut s0, mut s1) = (QPoly::zero(), QPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s = s0.sub(&q.mul(&s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r0 is the gcd; it must be a nonzero constant
        if r0.degree() != Some(0) {
            return Err(Error::DivisionByZero);
        }
        let c = r0.coeffs[0].inv()?;
        let (_, u) = s0.scale(&c).div_rem(modulus)?;
        Ok(u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_round_trip() {
        let a = QPoly::from_ints(&[1, 2, 0, 3, 5]);
        let b = QPoly::from_ints(&[-1, 0, 2]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn inverse_modulo() {
        let m = QPoly::from_ints(&[1, 1, 1]);
        let a = QPoly::from_ints(&[1, 1]);
        let u = a.inverse_mod(&m).unwrap();
        let (_, r) = a.mul(&u).div_rem(&m).unwrap();
        assert_eq!(r, QPoly::one());
        assert!(QPoly::zero().inverse_mod(&m).is_err());
        // x - 1 shares the root 1 with x^2 - 1
        assert!(QPoly::from_ints(&[-1, 1]).inverse_mod(&QPoly::from_ints(&[-1, 0, 1])).is_err());
    }
}
