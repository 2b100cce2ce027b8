use super::{Endomorphism, Ring};
use crate::scalars::Rational;

/// Polynomial in a central indeterminate `z`; `coeffs[i]` multiplies `z^i`.
/// Trailing zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct RPoly<E> {
    coeffs: Vec<E>,
}

impl<E> RPoly<E> {
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
}

/// The ring `R[z]` with `z` commuting with every coefficient.
#[derive(Clone, Debug)]
pub struct PolyRing<R: Ring> {
    base: R,
}

impl<R: Ring> PolyRing<R> {
    pub fn new(base: R) -> Self {
        PolyRing { base }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn poly(&self, mut coeffs: Vec<R::Elem>) -> RPoly<R::Elem> {
        while coeffs.last().is_some_and(|c| self.base.is_zero(c)) {
            coeffs.pop();
        }
        RPoly { coeffs }
    }

    pub fn constant(&self, c: R::Elem) -> RPoly<R::Elem> {
        self.poly(vec![c])
    }

    /// The indeterminate `z`.
    pub fn z(&self) -> RPoly<R::Elem> {
        self.poly(vec![self.base.zero(), self.base.one()])
    }

    /// Coefficient of `z^i` (zero past the degree).
    pub fn coeff(&self, p: &RPoly<R::Elem>, i: usize) -> R::Elem {
        p.coeffs.get(i).cloned().unwrap_or_else(|| self.base.zero())
    }

    /// Applies `f` to every coefficient.
    pub fn map(&self, p: &RPoly<R::Elem>, f: impl Fn(&R::Elem) -> R::Elem) -> RPoly<R::Elem> {
        self.poly(p.coeffs.iter().map(f).collect())
    }
}

impl<R: Ring> Ring for PolyRing<R> {
    type Elem = RPoly<R::Elem>;

    fn describe(&self) -> String {
        format!("{}[z]", self.base.describe())
    }

    fn zero(&self) -> Self::Elem {
        RPoly { coeffs: vec![] }
    }

    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out = a.clone();
        self.add_assign(&mut out, b);
        out
    }

    fn add_assign(&self, acc: &mut Self::Elem, b: &Self::Elem) {
        if acc.coeffs.len() < b.coeffs.len() {
            acc.coeffs.resize(b.coeffs.len(), self.base.zero());
        }
        for (x, y) in acc.coeffs.iter_mut().zip(&b.coeffs) {
            self.base.add_assign(x, y);
        }
        while acc.coeffs.last().is_some_and(|c| self.base.is_zero(c)) {
            acc.coeffs.pop();
        }
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        RPoly {
            coeffs: a.coeffs.iter().map(|c| self.base.neg(c)).collect(),
        }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.coeffs.is_empty() || b.coeffs.is_empty() {
            return self.zero();
        }
        let mut out = vec![self.base.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !self.base.is_zero(y) {
                    let p = self.base.mul(x, y);
                    self.base.add_assign(&mut out[i + j], &p);
                }
            }
        }
        self.poly(out)
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.coeffs.is_empty()
    }

    fn from_rational(&self, q: &Rational) -> Self::Elem {
        self.constant(self.base.from_rational(q))
    }

    fn contains(&self, a: &Self::Elem) -> bool {
        a.coeffs.iter().all(|c| self.base.contains(c)) && a.coeffs.last().is_none_or(|c| !self.base.is_zero(c))
    }

    fn is_central(&self, a: &Self::Elem) -> bool {
        a.coeffs.iter().all(|c| self.base.is_central(c))
    }

    /// Only constants with an invertible coefficient are inverted.
    fn try_invert(&self, a: &Self::Elem) -> Option<Self::Elem> {
        match a.coeffs.as_slice() {
            [c] => self.base.try_invert(c).map(|i| self.constant(i)),
            _ => None,
        }
    }

    fn lie_nilpotent_of_index(&self, k: usize) -> Option<bool> {
        // commutators are multilinear and z is central
        self.base.lie_nilpotent_of_index(k)
    }

    fn scale(&self, a: &Self::Elem, q: &Rational) -> Self::Elem {
        self.map(a, |c| self.base.scale(c, q))
    }
}

/// `delta_z`: `delta` applied coefficientwise, fixing `z`.
pub fn extend_endomorphism_to_poly<R: Ring + 'static>(ring: &PolyRing<R>, delta: &Endomorphism<R>) -> Endomorphism<PolyRing<R>> {
    let (ring, delta) = (ring.clone(), delta.clone());
    Endomorphism::new(format!("{}_z", delta.name()), move |p: &RPoly<R::Elem>| ring.map(p, |c| delta.apply(c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::{epsilon, Grassmann};
    use crate::rings::OracleRing;

    #[test]
    fn product_keeps_coefficient_order() {
        let e = Grassmann::rational(3);
        let rz = PolyRing::new(e.clone());
        let (a, d) = (e.generator(1), e.generator(2));
        let z_minus = |c: &crate::grassmann::GrassmannElement| rz.sub(&rz.z(), &rz.constant(c.clone()));
        let p = rz.mul(&z_minus(&a), &z_minus(&d));
        let q = rz.mul(&z_minus(&d), &z_minus(&a));
        assert_eq!(p.degree(), Some(2));
        assert_eq!(rz.coeff(&p, 2), e.one());
        assert_eq!(rz.coeff(&p, 1), e.neg(&e.add(&a, &d)));
        assert_eq!(rz.coeff(&p, 0), e.mul(&a, &d));
        assert_eq!(rz.coeff(&q, 0), e.mul(&d, &a));
        assert_ne!(p, q);
    }

    #[test]
    fn commutative_expansion() {
        let o = OracleRing::new(&["a", "d"]);
        let rz = PolyRing::new(o.clone());
        let p = rz.mul(&rz.sub(&rz.z(), &rz.constant(o.var(0))), &rz.sub(&rz.z(), &rz.constant(o.var(1))));
        assert_eq!(rz.coeff(&p, 1), o.neg(&o.add(&o.var(0), &o.var(1))));
        assert_eq!(rz.coeff(&p, 0), o.mul(&o.var(0), &o.var(1)));
        assert_eq!(rz.mul(&p, &rz.one()), p);
        assert!(rz.is_zero(&rz.sub(&p, &p)));
    }

    #[test]
    fn extended_epsilon() {
        let e = Grassmann::rational(3);
        let rz = PolyRing::new(e.clone());
        let eps_z = extend_endomorphism_to_poly(&rz, &epsilon(&e));
        assert_eq!(eps_z.apply(&rz.z()), rz.z());
        let v1 = e.generator(1);
        let v12 = e.monomial(&[1, 2]);
        let p = rz.poly(vec![v1.clone(), v12.clone()]);
        assert_eq!(eps_z.apply(&p), rz.poly(vec![e.neg(&v1), v12]));
        assert_eq!(eps_z.apply(&rz.constant(v1.clone())), rz.constant(e.neg(&v1)));
    }
}
