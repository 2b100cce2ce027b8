use std::fmt;
use std::sync::Arc;

use super::Ring;
use crate::error::{Error, Result};

type Action<E> = Arc<dyn Fn(&E) -> E + Send + Sync>;

/// A named unital ring endomorphism `delta: R -> R`.
///
/// The action is an arbitrary closure; [`Endomorphism::validate`] checks the
/// ring laws on a caller-supplied generating set and sample elements.
pub struct Endomorphism<R: Ring> {
    name: String,
    action: Action<R::Elem>,
}

impl<R: Ring> Clone for Endomorphism<R> {
    fn clone(&self) -> Self {
        Endomorphism {
            name: self.name.clone(),
            action: Arc::clone(&self.action),
        }
    }
}

impl<R: Ring> fmt::Debug for Endomorphism<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Endomorphism({})", self.name)
    }
}

impl<R: Ring> Endomorphism<R> {
    pub fn new(name: impl Into<String>, action: impl Fn(&R::Elem) -> R::Elem + Send + Sync + 'static) -> Self {
        Endomorphism {
            name: name.into(),
            action: Arc::new(action),
        }
    }

    pub fn identity() -> Self {
        Endomorphism::new("id", |x: &R::Elem| x.clone())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn apply(&self, x: &R::Elem) -> R::Elem {
        (self.action)(x)
    }

    /// `delta^k(x)`
    pub fn apply_pow(&self, x: &R::Elem, k: usize) -> R::Elem {
        (0..k).fold(x.clone(), |acc, _| self.apply(&acc))
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &Endomorphism<R>) -> Endomorphism<R> {
        let (outer, inner) = (Arc::clone(&self.action), Arc::clone(&first.action));
        Endomorphism {
            name: format!("{}∘{}", self.name, first.name),
            action: Arc::new(move |x| outer(&inner(x))),
        }
    }

    /// Checks `delta(1) = 1`, additivity and multiplicativity on every pair
    /// drawn from `samples`, reporting the first failure.
    pub fn validate(&self, ring: &R, samples: &[R::Elem]) -> Result<()> {
        if !ring.is_one(&self.apply(&ring.one())) {
            return Err(Error::CheckFailed(format!("{}: image of 1 is not 1", self.name)));
        }
        for (i, x) in samples.iter().enumerate() {
            ring.check(x)?;
            let dx = self.apply(x);
            for (j, y) in samples.iter().enumerate() {
                let dy = self.apply(y);
                if self.apply(&ring.add(x, y)) != ring.add(&dx, &dy) {
                    return Err(Error::CheckFailed(format!("{}: not additive on samples {i}, {j}", self.name)));
                }
                if self.apply(&ring.mul(x, y)) != ring.mul(&dx, &dy) {
                    return Err(Error::CheckFailed(format!("{}: not multiplicative on samples {i}, {j}", self.name)));
                }
            }
        }
        Ok(())
    }

    /// Whether `delta^n` fixes every element of `samples`.
    pub fn power_is_identity_on(&self, n: usize, samples: &[R::Elem]) -> bool {
        samples.iter().all(|x| self.apply_pow(x, n) == *x)
    }

    pub fn fixes(&self, x: &R::Elem) -> bool {
        self.apply(x) == *x
    }
}

/// `x` lies in the fixed ring `Fix(delta)`.
pub fn fixed_ring_member<R: Ring>(delta: &Endomorphism<R>, x: &R::Elem) -> bool {
    delta.fixes(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::{epsilon, Grassmann};

    #[test]
    fn epsilon_fixed_ring() {
        let e = Grassmann::rational(3);
        let eps = epsilon(&e);
        assert!(fixed_ring_member(&eps, &e.monomial(&[1, 2])));
        assert!(!fixed_ring_member(&eps, &e.generator(1)));
        assert!(fixed_ring_member(&eps, &e.one()));
        assert!(fixed_ring_member(&Endomorphism::<Grassmann>::identity(), &e.generator(2)));
    }

    #[test]
    fn validation_catches_broken_maps() {
        let e = Grassmann::rational(2);
        let samples = vec![e.generator(1), e.generator(2), e.one()];
        // doubling is additive but neither unital nor multiplicative
        let ring = e.clone();
        let doubling = Endomorphism::<Grassmann>::new("double", move |x| ring.add(x, x));
        assert!(doubling.validate(&e, &samples).is_err());
        assert!(epsilon(&e).validate(&e, &samples).is_ok());
    }

    #[test]
    fn powers_and_composition() {
        let e = Grassmann::rational(3);
        let eps = epsilon(&e);
        let x = e.add(&e.generator(1), &e.monomial(&[1, 2]));
        assert_eq!(eps.apply_pow(&x, 2), x);
        assert!(eps.power_is_identity_on(2, std::slice::from_ref(&x)));
        assert!(!eps.power_is_identity_on(1, std::slice::from_ref(&x)));
        assert_eq!(eps.compose(&eps).apply(&x), x);
    }
}
