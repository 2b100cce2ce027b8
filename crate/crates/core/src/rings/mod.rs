//! The unital ring contract shared by every algebra in the crate, together
//! with commutators, Lie nilpotency checks and ring endomorphisms.
//!
//! Rings are context objects: an element is a plain value and every
//! operation goes through the ring that owns it. Elements of different
//! contexts are kept apart by [`Ring::contains`], which the fallible entry
//! points check before doing any arithmetic.

mod endo;
mod field;
mod oracle;
mod poly;

pub use endo::{fixed_ring_member, Endomorphism};
pub use oracle::{classical_adjugate, classical_det, MPoly, OracleRing};
pub use poly::{extend_endomorphism_to_poly, PolyRing, RPoly};

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::scalars::{CyclotomicField, Rational, Scalar};

/// A unital ring which is also an algebra over the rationals.
#[allow(clippy::wrong_self_convention)]
pub trait Ring: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync + 'static;

    /// Short human-readable description, used in error messages.
    fn describe(&self) -> String;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Image of a rational under the structure map `Q -> Z(R)`.
    fn from_rational(&self, q: &Rational) -> Self::Elem;

    /// Whether `a` is a well-formed element of this context.
    fn contains(&self, a: &Self::Elem) -> bool;

    /// `a` lies in the centre `Z(R)`.
    fn is_central(&self, a: &Self::Elem) -> bool;

    /// Inverse of `a` if this context can exhibit one, `None` otherwise.
    fn try_invert(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// Exact answer to "is `a` a non-zero divisor", or `None` when the
    /// context cannot decide.
    fn is_non_zero_divisor(&self, a: &Self::Elem) -> Option<bool> {
        if self.is_zero(a) {
            Some(false)
        } else if self.try_invert(a).is_some() {
            Some(true)
        } else {
            None
        }
    }

    /// Exact answer to "does the left-normed commutator of length `k + 1`
    /// vanish identically", or `None` when the context cannot decide.
    fn lie_nilpotent_of_index(&self, _k: usize) -> Option<bool> {
        None
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn add_assign(&self, acc: &mut Self::Elem, b: &Self::Elem) {
        *acc = self.add(acc, b);
    }

    fn from_int(&self, n: i64) -> Self::Elem {
        self.from_rational(&Rational::from_int(n))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, e: usize) -> Self::Elem {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Multiplication by a rational scalar (central, so side does not matter).
    fn scale(&self, a: &Self::Elem, q: &Rational) -> Self::Elem {
        self.mul(a, &self.from_rational(q))
    }

    fn check(&self, a: &Self::Elem) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::ContextMismatch(self.describe()))
        }
    }
}

/// Algebras over a cyclotomic field that embed the field centrally.
#[allow(clippy::wrong_self_convention)]
pub trait CyclotomicAlgebra: Ring {
    fn scalar_field(&self) -> &CyclotomicField;

    fn from_scalar(&self, c: &Scalar) -> Self::Elem;

    /// A spanning set over the scalar field; errors when it is too large to list.
    fn spanning_set(&self) -> Result<Vec<Self::Elem>>;
}

/// Rings that can draw random elements for property checks.
pub trait SampleRing: Ring {
    fn random_element<G: Rng + ?Sized>(&self, rng: &mut G) -> Self::Elem;

    /// A random element which is invertible in the ring.
    fn random_unit<G: Rng + ?Sized>(&self, rng: &mut G) -> Self::Elem;
}

/// `xy - yx`
pub fn commutator<R: Ring>(ring: &R, x: &R::Elem, y: &R::Elem) -> Result<R::Elem> {
    ring.check(x)?;
    ring.check(y)?;
    Ok(ring.sub(&ring.mul(x, y), &ring.mul(y, x)))
}

/// `[[...[[x1, x2], x3], ...], xm]`; a single element is returned unchanged.
pub fn left_normed_commutator<R: Ring>(ring: &R, xs: &[R::Elem]) -> Result<R::Elem> {
    let (first, rest) = xs.split_first().ok_or_else(|| Error::InvalidParameter("empty commutator".into()))?;
    ring.check(first)?;
    rest.iter().try_fold(first.clone(), |acc, x| commutator(ring, &acc, x))
}

/// Lie nilpotency of index `k` tested on the supplied `(k + 1)`-tuples: true
/// iff every left-normed commutator of a tuple vanishes.
pub fn is_lie_nilpotent_index<R: Ring>(ring: &R, k: usize, witnesses: &[Vec<R::Elem>]) -> Result<bool> {
    if k == 0 {
        return Err(Error::InvalidParameter("Lie nilpotency index must be positive".into()));
    }
    for tuple in witnesses {
        if tuple.len() != k + 1 {
            return Err(Error::InvalidParameter(format!(
                "index {k} needs tuples of {} elements, got {}",
                k + 1,
                tuple.len()
            )));
        }
        if !ring.is_zero(&left_normed_commutator(ring, tuple)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::Grassmann;

    #[test]
    fn commutators_in_grassmann() {
        let e = Grassmann::rational(3);
        let (v1, v2) = (e.generator(1), e.generator(2));
        assert!(e.is_zero(&commutator(&e, &v1, &v1).unwrap()));
        let expected = e.scale(&e.monomial(&[1, 2]), &Rational::from_int(2));
        assert_eq!(commutator(&e, &v1, &v2).unwrap(), expected);
    }

    #[test]
    fn context_mismatch_is_rejected() {
        let e3 = Grassmann::rational(3);
        let e2 = Grassmann::rational(2);
        assert!(matches!(commutator(&e2, &e3.generator(1), &e2.generator(1)), Err(Error::ContextMismatch(_))));
    }

    #[test]
    fn lie_nilpotency_witnesses() {
        let e = Grassmann::rational(3);
        let (v1, v2, v3) = (e.generator(1), e.generator(2), e.generator(3));
        assert!(!is_lie_nilpotent_index(&e, 1, &[vec![v1.clone(), v2.clone()]]).unwrap());
        assert!(is_lie_nilpotent_index(&e, 2, &[vec![v1.clone(), v2.clone(), v3.clone()]]).unwrap());
        assert!(is_lie_nilpotent_index(&e, 2, &[vec![v1.clone()]]).is_err());
        let oracle = OracleRing::new(&["a", "b"]);
        let (a, b) = (oracle.var(0), oracle.var(1));
        assert!(is_lie_nilpotent_index(&oracle, 1, &[vec![a, b]]).unwrap());
    }

    #[test]
    fn left_normed_convention() {
        // [[x, y], z] with x = v1, y = v2, z = v1 + v3 in E: [v1, v2] = 2 v1v2
        // is even and central, so the outer bracket vanishes
        let e = Grassmann::rational(3);
        let xs = vec![e.generator(1), e.generator(2), e.add(&e.generator(1), &e.generator(3))];
        assert!(e.is_zero(&left_normed_commutator(&e, &xs).unwrap()));
        assert_eq!(left_normed_commutator(&e, &xs[..1]).unwrap(), xs[0]);
    }
}
