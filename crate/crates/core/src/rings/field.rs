use rand::Rng;

use super::{CyclotomicAlgebra, Ring, SampleRing};
use crate::scalars::{CyclotomicField, Rational, Scalar};

impl Ring for CyclotomicField {
    type Elem = Scalar;

    fn describe(&self) -> String {
        if self.degree() == 1 {
            "Q".into()
        } else {
            format!("Q(zeta_{})", self.order())
        }
    }

    fn zero(&self) -> Scalar {
        CyclotomicField::zero(self)
    }

    fn one(&self) -> Scalar {
        CyclotomicField::one(self)
    }

    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        CyclotomicField::add(self, a, b)
    }

    fn neg(&self, a: &Scalar) -> Scalar {
        CyclotomicField::neg(self, a)
    }

    fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        CyclotomicField::sub(self, a, b)
    }

    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        CyclotomicField::mul(self, a, b)
    }

    fn is_zero(&self, a: &Scalar) -> bool {
        a.is_zero()
    }

    fn from_rational(&self, q: &Rational) -> Scalar {
        CyclotomicField::from_rational(self, q.clone())
    }

    fn contains(&self, a: &Scalar) -> bool {
        CyclotomicField::contains(self, a)
    }

    fn is_central(&self, _a: &Scalar) -> bool {
        true
    }

    fn try_invert(&self, a: &Scalar) -> Option<Scalar> {
        self.inv(a).ok()
    }

    fn is_non_zero_divisor(&self, a: &Scalar) -> Option<bool> {
        Some(!a.is_zero())
    }

    fn lie_nilpotent_of_index(&self, k: usize) -> Option<bool> {
        Some(k >= 1)
    }

    fn pow(&self, a: &Scalar, e: usize) -> Scalar {
        CyclotomicField::pow(self, a, e as u64)
    }

    fn scale(&self, a: &Scalar, q: &Rational) -> Scalar {
        CyclotomicField::scale(self, a, q)
    }
}

impl SampleRing for CyclotomicField {
    fn random_element<G: Rng + ?Sized>(&self, rng: &mut G) -> Scalar {
        let coeffs = (0..self.degree()).map(|_| Rational::from_int(rng.gen_range(-3..=3))).collect();
        self.from_coeffs(coeffs)
    }

    fn random_unit<G: Rng + ?Sized>(&self, rng: &mut G) -> Scalar {
        loop {
            let num = rng.gen_range(-5..=5);
            let den = rng.gen_range(1..=4);
            let mut coeffs: Vec<Rational> = (0..self.degree()).map(|_| Rational::from_int(rng.gen_range(-2..=2))).collect();
            coeffs[0] = Rational::new(num, den).expect("nonzero denominator");
            let s = self.from_coeffs(coeffs);
            if !s.is_zero() {
                return s;
            }
        }
    }
}

impl CyclotomicAlgebra for CyclotomicField {
    fn scalar_field(&self) -> &CyclotomicField {
        self
    }

    fn from_scalar(&self, c: &Scalar) -> Scalar {
        c.clone()
    }

    fn spanning_set(&self) -> crate::error::Result<Vec<Scalar>> {
        Ok(vec![CyclotomicField::one(self)])
    }
}
