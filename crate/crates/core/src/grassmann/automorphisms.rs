use super::{monomial_indices, Grassmann, GrassmannElement};
use crate::error::{Error, Result};
use crate::rings::{Endomorphism, Ring};
use crate::scalars::Scalar;

/// `epsilon`: negates the odd part.
pub fn epsilon(ring: &Grassmann) -> Endomorphism<Grassmann> {
    let r = ring.clone();
    Endomorphism::new("epsilon", move |x: &GrassmannElement| {
        r.scale_by_degree(x, |k| if k % 2 == 0 { r.field().one() } else { r.field().from_int(-1) })
    })
}

/// `rho_e`: scales the length-`k` component by `e^k`, i.e. substitutes
/// `e v_i` for every generator. `e` must be a root of unity of the field.
pub fn rho(ring: &Grassmann, e: &Scalar) -> Result<Endomorphism<Grassmann>> {
    let field = ring.field();
    if !field.contains(e) {
        return Err(Error::ContextMismatch(field.describe()));
    }
    let order = field
        .root_order(e)
        .ok_or_else(|| Error::InvalidParameter(format!("{} is not a root of unity", field.format(e))))?;
    let powers: Vec<Scalar> = (0..=ring.generators()).map(|k| field.pow(e, k as u64)).collect();
    let r = ring.clone();
    Ok(Endomorphism::new(format!("rho_e:{order}"), move |x: &GrassmannElement| {
        r.scale_by_degree(x, |k| powers[k as usize].clone())
    }))
}

/// `rho_e` for the distinguished primitive `n`-th root of unity of the field.
pub fn rho_e(ring: &Grassmann, n: usize) -> Result<(Endomorphism<Grassmann>, Scalar)> {
    let e = ring
        .field()
        .primitive_root(n)
        .ok_or_else(|| Error::InvalidParameter(format!("{} has no primitive {n}-th root of unity", ring.field().describe())))?;
    Ok((rho(ring, &e)?, e))
}

/// Inner automorphism `x -> u x u^{-1}`.
pub fn conjugation(ring: &Grassmann, name: &str, u: &GrassmannElement) -> Result<Endomorphism<Grassmann>> {
    ring.check(u)?;
    let u_inv = ring.try_invert(u).ok_or_else(|| Error::NotInvertible(ring.pretty(u)))?;
    let (r, u) = (ring.clone(), u.clone());
    Ok(Endomorphism::new(name, move |x: &GrassmannElement| r.mul(&r.mul(&u, x), &u_inv)))
}

/// `sigma(x) = (1 + v1) x (1 - v1)`.
pub fn sigma(ring: &Grassmann) -> Result<Endomorphism<Grassmann>> {
    if ring.generators() == 0 {
        return Err(Error::InvalidParameter("sigma needs at least one generator".into()));
    }
    conjugation(ring, "sigma", &ring.add(&ring.one(), &ring.generator(1)))
}

/// Conjugation by `1 - v1`, the inverse of [`sigma`].
pub fn sigma_inverse(ring: &Grassmann) -> Result<Endomorphism<Grassmann>> {
    if ring.generators() == 0 {
        return Err(Error::InvalidParameter("sigma needs at least one generator".into()));
    }
    conjugation(ring, "sigma^-1", &ring.sub(&ring.one(), &ring.generator(1)))
}

/// The endomorphism sending `v_i` to `images[i - 1]`. Such a map extends to
/// the whole algebra exactly when the images pairwise anticommute and
/// square to zero, which is checked here.
pub fn generator_images(ring: &Grassmann, images: Vec<GrassmannElement>) -> Result<Endomorphism<Grassmann>> {
    if images.len() != ring.generators() as usize {
        return Err(Error::DimensionMismatch(format!(
            "{} generator images for {} generators",
            images.len(),
            ring.generators()
        )));
    }
    for x in &images {
        ring.check(x)?;
    }
    for (i, x) in images.iter().enumerate() {
        for (j, y) in images.iter().enumerate().skip(i) {
            let anti = ring.add(&ring.mul(x, y), &ring.mul(y, x));
            if !anti.is_zero() {
                return Err(Error::CheckFailed(format!("images of v{} and v{} do not anticommute", i + 1, j + 1)));
            }
        }
    }
    let r = ring.clone();
    Ok(Endomorphism::new("generator_images", move |x: &GrassmannElement| {
        let mut out = r.zero();
        for (m, c) in x.terms() {
            let prod = monomial_indices(*m).iter().fold(r.one(), |acc, &i| r.mul(&acc, &images[i as usize - 1]));
            r.add_assign(&mut out, &r.scale_by(&prod, c));
        }
        out
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::SampleRing;
    use crate::scalars::CyclotomicField;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn samples(ring: &Grassmann, seed: u64, count: usize) -> Vec<GrassmannElement> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out: Vec<_> = (1..=ring.generators()).map(|i| ring.generator(i)).collect();
        out.extend((0..count).map(|_| ring.random_element(&mut rng)));
        out
    }

    #[test]
    fn epsilon_laws() {
        let r = Grassmann::rational(5);
        let eps = epsilon(&r);
        assert_eq!(eps.apply(&r.generator(1)), r.neg(&r.generator(1)));
        assert_eq!(eps.apply(&r.monomial(&[1, 2])), r.monomial(&[1, 2]));
        let s = samples(&r, 1, 20);
        eps.validate(&r, &s).unwrap();
        assert!(eps.power_is_identity_on(2, &s));
    }

    #[test]
    fn rho_laws() {
        let f = CyclotomicField::new(3).unwrap();
        let r = Grassmann::new(5, f.clone()).unwrap();
        let (rho3, e) = rho_e(&r, 3).unwrap();
        let v12 = r.monomial(&[1, 2]);
        assert_eq!(rho3.apply(&v12), r.scale_by(&v12, &f.pow(&e, 2)));
        assert_eq!(rho3.apply(&r.one()), r.one());
        let s = samples(&r, 2, 20);
        rho3.validate(&r, &s).unwrap();
        assert!(rho3.power_is_identity_on(3, &s));
        assert!(!rho3.power_is_identity_on(1, &s));
        // rho_{-1} is epsilon
        let (rho2, minus_one) = rho_e(&r, 2).unwrap();
        assert_eq!(minus_one, f.from_int(-1));
        let eps = epsilon(&r);
        assert!(s.iter().all(|x| rho2.apply(x) == eps.apply(x)));
        assert!(rho(&r, &f.from_int(2)).is_err());
        assert!(rho_e(&Grassmann::rational(2), 3).is_err());
    }

    #[test]
    fn sigma_laws() {
        let r = Grassmann::rational(5);
        let s = sigma(&r).unwrap();
        let expected = r.add(&r.generator(2), &r.scale_by(&r.monomial(&[1, 2]), &r.field().from_int(2)));
        assert_eq!(s.apply(&r.generator(2)), expected);
        assert_eq!(s.apply(&r.generator(1)), r.generator(1));
        assert_eq!(s.apply(&r.one()), r.one());
        let xs = samples(&r, 3, 20);
        s.validate(&r, &xs).unwrap();
        let back = sigma_inverse(&r).unwrap().compose(&s);
        assert!(xs.iter().all(|x| back.apply(x) == *x));
        assert!(sigma(&Grassmann::rational(0)).is_err());
    }

    #[test]
    fn generator_image_maps() {
        let r = Grassmann::rational(3);
        // swapping v1 and v2 is an automorphism
        let swap = generator_images(&r, vec![r.generator(2), r.generator(1), r.generator(3)]).unwrap();
        assert_eq!(swap.apply(&r.monomial(&[1, 2])), r.neg(&r.monomial(&[1, 2])));
        swap.validate(&r, &samples(&r, 4, 10)).unwrap();
        // v1 -> 1 does not square to zero
        assert!(generator_images(&r, vec![r.one(), r.generator(2), r.generator(3)]).is_err());
        assert!(generator_images(&r, vec![r.generator(1)]).is_err());
        // negating every generator reproduces epsilon
        let neg = generator_images(&r, (1..=3).map(|i| r.neg(&r.generator(i))).collect()).unwrap();
        let eps = epsilon(&r);
        assert!(samples(&r, 5, 10).iter().all(|x| neg.apply(x) == eps.apply(x)));
    }
}
