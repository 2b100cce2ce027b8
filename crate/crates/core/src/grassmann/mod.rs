//! The Grassmann algebra on finitely many anticommuting generators.
//!
//! Monomials are bitmasks: bit `i - 1` set means `v_i` occurs. A product of
//! two monomials vanishes when they share a generator; otherwise its sign is
//! the parity of the pairs `(i, j)` with `v_i` in the left factor, `v_j` in
//! the right factor and `i > j`.

mod automorphisms;
mod basis;

pub use automorphisms::{conjugation, epsilon, generator_images, rho, rho_e, sigma, sigma_inverse};
pub use basis::{
    graded_component_basis, omega_characterization, omega_containment, sigma_fixed_basis, solve_constraint, solve_constraint_with_cap, ComponentBasis,
    DEFAULT_SOLVER_CAP,
};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::rings::{CyclotomicAlgebra, Ring, SampleRing};
use crate::scalars::{CyclotomicField, Rational, Scalar};

pub const MAX_GENERATORS: u32 = 64;

/// Bitmask of a monomial given by 1-based generator indices.
pub fn monomial_mask(indices: &[u32]) -> u64 {
    indices.iter().fold(0u64, |m, &i| m | (1u64 << (i - 1)))
}

/// 1-based generator indices of a monomial, ascending.
pub fn monomial_indices(mask: u64) -> Vec<u32> {
    (0..64).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

/// Sign of `a * b` for disjoint monomials.
fn merge_sign(a: u64, b: u64) -> bool {
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        inversions += a.checked_shr(j + 1).unwrap_or(0).count_ones();
    }
    inversions % 2 == 1
}

/// Product of two basis monomials: `None` if it vanishes, else the merged
/// monomial and whether the sign is negative.
pub fn monomial_product(a: u64, b: u64) -> Option<(u64, bool)> {
    (a & b == 0).then(|| (a | b, merge_sign(a, b)))
}

/// Sort key putting monomials in ascending degree, then lexicographically by
/// index list.
fn display_order(mask: u64) -> (u32, Vec<u32>) {
    (mask.count_ones(), monomial_indices(mask))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GrassmannElement {
    g: u32,
    terms: BTreeMap<u64, Scalar>,
}

impl GrassmannElement {
    pub fn generator_count(&self) -> u32 {
        self.g
    }

    /// Nonzero terms keyed by monomial bitmask.
    pub fn terms(&self) -> &BTreeMap<u64, Scalar> {
        &self.terms
    }

    pub fn coeff(&self, mask: u64) -> Option<&Scalar> {
        self.terms.get(&mask)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether every monomial has even length.
    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|m| m.count_ones() % 2 == 0)
    }

    pub fn is_odd(&self) -> bool {
        self.terms.keys().all(|m| m.count_ones() % 2 == 1)
    }
}

impl fmt::Debug for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E{}(", self.g)?;
        let mut keys: Vec<u64> = self.terms.keys().copied().collect();
        keys.sort_by_key(|m| display_order(*m));
        for (i, m) in keys.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{:?}", self.terms[m])?;
            for idx in monomial_indices(*m) {
                write!(f, "v{idx}")?;
            }
        }
        write!(f, ")")
    }
}

/// The Grassmann algebra `E` on `g` generators over a cyclotomic field.
#[derive(Clone, Debug, PartialEq)]
pub struct Grassmann {
    g: u32,
    field: CyclotomicField,
}

impl Grassmann {
    pub fn new(g: u32, field: CyclotomicField) -> Result<Self> {
        if g > MAX_GENERATORS {
            return Err(Error::CapExceeded {
                what: "generator count",
                got: g as usize,
                cap: MAX_GENERATORS as usize,
            });
        }
        Ok(Grassmann { g, field })
    }

    /// `g` generators over `Q`.
    pub fn rational(g: u32) -> Self {
        Grassmann::new(g, CyclotomicField::rationals()).expect("generator count within range")
    }

    pub fn generators(&self) -> u32 {
        self.g
    }

    pub fn field(&self) -> &CyclotomicField {
        &self.field
    }

    /// Bitmask with every generator set.
    pub fn full_mask(&self) -> u64 {
        if self.g == 64 {
            u64::MAX
        } else {
            (1u64 << self.g) - 1
        }
    }

    /// Dimension `2^g` over the field, when it fits.
    pub fn dimension(&self) -> Option<u64> {
        1u64.checked_shl(self.g)
    }

    fn element(&self, terms: BTreeMap<u64, Scalar>) -> GrassmannElement {
        GrassmannElement { g: self.g, terms }
    }

    /// `c` times the monomial `mask`.
    pub fn term(&self, mask: u64, c: Scalar) -> GrassmannElement {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mask, c);
        }
        self.element(terms)
    }

    pub fn from_terms(&self, terms: impl IntoIterator<Item = (u64, Scalar)>) -> Result<GrassmannElement> {
        let mut out = self.zero();
        for (m, c) in terms {
            if m & !self.full_mask() != 0 {
                return Err(Error::InvalidParameter(format!("monomial {m:#b} uses a generator beyond v{}", self.g)));
            }
            if !self.field.contains(&c) {
                return Err(Error::ContextMismatch(self.field.describe()));
            }
            self.add_assign(&mut out, &self.term(m, c));
        }
        Ok(out)
    }

    /// The generator `v_i` (1-based). Panics outside `1..=g`.
    pub fn generator(&self, i: u32) -> GrassmannElement {
        assert!((1..=self.g).contains(&i), "generator v{i} outside 1..={}", self.g);
        self.term(1u64 << (i - 1), self.field.one())
    }

    /// The monomial `v_{i1} v_{i2} ...` in the given order, with its sign.
    pub fn monomial(&self, indices: &[u32]) -> GrassmannElement {
        indices.iter().fold(self.one(), |acc, &i| self.mul(&acc, &self.generator(i)))
    }

    pub fn from_scalar(&self, c: Scalar) -> GrassmannElement {
        self.term(0, c)
    }

    pub fn scalar_part(&self, x: &GrassmannElement) -> Scalar {
        x.terms.get(&0).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Multiplication by a field element.
    pub fn scale_by(&self, x: &GrassmannElement, c: &Scalar) -> GrassmannElement {
        if c.is_zero() {
            return self.zero();
        }
        self.element(x.terms.iter().map(|(m, a)| (*m, self.field.mul(a, c))).collect())
    }

    fn filter(&self, x: &GrassmannElement, keep: impl Fn(u64) -> bool) -> GrassmannElement {
        self.element(x.terms.iter().filter(|(m, _)| keep(**m)).map(|(m, c)| (*m, c.clone())).collect())
    }

    /// The part of `x` supported on monomials of length `k`.
    pub fn homogeneous_component(&self, x: &GrassmannElement, k: u32) -> GrassmannElement {
        self.filter(x, |m| m.count_ones() == k)
    }

    pub fn even_part(&self, x: &GrassmannElement) -> GrassmannElement {
        self.filter(x, |m| m.count_ones() % 2 == 0)
    }

    pub fn odd_part(&self, x: &GrassmannElement) -> GrassmannElement {
        self.filter(x, |m| m.count_ones() % 2 == 1)
    }

    /// Multiplies the length-`k` component by `f(k)` for every `k`.
    pub fn scale_by_degree(&self, x: &GrassmannElement, f: impl Fn(u32) -> Scalar) -> GrassmannElement {
        let factors: Vec<Scalar> = (0..=self.g).map(f).collect();
        let terms = x
            .terms
            .iter()
            .map(|(m, c)| (*m, self.field.mul(c, &factors[m.count_ones() as usize])))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        self.element(terms)
    }

    /// Exhaustive Lie nilpotency test on basis monomials. Commutators are
    /// multilinear and the commutator of two monomials is a multiple of a
    /// single monomial, so it is enough to track which monomials survive
    /// each bracketing step. `None` when `2^g` exceeds the enumeration cap.
    pub fn lie_nilpotent_exhaustive(&self, k: usize) -> Option<bool> {
        if k == 0 {
            return Some(false);
        }
        if self.g > 10 {
            return None;
        }
        let all: Vec<u64> = (0..=self.full_mask()).collect();
        let mut level: BTreeSet<u64> = all.iter().copied().collect();
        for _ in 0..k {
            let mut next = BTreeSet::new();
            for &a in &level {
                for &b in &all {
                    let c = commutator_monomials(a, b);
                    if let Some(m) = c {
                        next.insert(m);
                    }
                }
            }
            if next.is_empty() {
                return Some(true);
            }
            level = next;
        }
        Some(false)
    }

    /// Renders `x` as `3/2 + 2·v1v3 - v1v2v4`, monomials in ascending degree.
    pub fn pretty(&self, x: &GrassmannElement) -> String {
        if x.terms.is_empty() {
            return "0".into();
        }
        let mut keys: Vec<u64> = x.terms.keys().copied().collect();
        keys.sort_by_key(|m| display_order(*m));
        let mut out = String::new();
        for (i, m) in keys.iter().enumerate() {
            let c = &x.terms[m];
            let mono: String = monomial_indices(*m).iter().map(|i| format!("v{i}")).collect();
            let (neg, coeff) = match c.as_rational() {
                Some(q) => (q.signum() < 0, if q.abs().is_one() && *m != 0 { String::new() } else { q.abs().to_string() }),
                None => (false, self.field.format(c)),
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&coeff);
            if *m != 0 {
                if !coeff.is_empty() {
                    out.push('·');
                }
                out.push_str(&mono);
            }
        }
        out
    }
}

/// Monomial supporting `[a, b]`, if the commutator of the basis monomials
/// `a` and `b` is nonzero. `ab` and `ba` agree up to the sign
/// `(-1)^{|a||b|}`, so the bracket survives exactly when the monomials are
/// disjoint and both odd.
fn commutator_monomials(a: u64, b: u64) -> Option<u64> {
    let odd = |m: u64| m.count_ones() % 2 == 1;
    (a & b == 0 && odd(a) && odd(b)).then_some(a | b)
}

impl CyclotomicAlgebra for Grassmann {
    fn scalar_field(&self) -> &CyclotomicField {
        &self.field
    }

    fn from_scalar(&self, c: &Scalar) -> GrassmannElement {
        self.term(0, c.clone())
    }

    /// All monomials, for up to [`DEFAULT_SOLVER_CAP`] generators.
    fn spanning_set(&self) -> Result<Vec<GrassmannElement>> {
        if self.g > DEFAULT_SOLVER_CAP {
            return Err(Error::CapExceeded {
                what: "generators",
                got: self.g as usize,
                cap: DEFAULT_SOLVER_CAP as usize,
            });
        }
        Ok((0..=self.full_mask()).map(|m| self.term(m, self.field.one())).collect())
    }
}

impl Ring for Grassmann {
    type Elem = GrassmannElement;

    fn describe(&self) -> String {
        format!("E{} over {}", self.g, self.field.describe())
    }

    fn zero(&self) -> GrassmannElement {
        self.element(BTreeMap::new())
    }

    fn one(&self) -> GrassmannElement {
        self.from_scalar(self.field.one())
    }

    fn add(&self, a: &GrassmannElement, b: &GrassmannElement) -> GrassmannElement {
        let mut out = a.clone();
        self.add_assign(&mut out, b);
        out
    }

    fn add_assign(&self, acc: &mut GrassmannElement, b: &GrassmannElement) {
        for (m, c) in &b.terms {
            match acc.terms.get_mut(m) {
                Some(x) => {
                    *x = self.field.add(x, c);
                    if x.is_zero() {
                        acc.terms.remove(m);
                    }
                }
                None => {
                    acc.terms.insert(*m, c.clone());
                }
            }
        }
    }

    fn neg(&self, a: &GrassmannElement) -> GrassmannElement {
        self.element(a.terms.iter().map(|(m, c)| (*m, self.field.neg(c))).collect())
    }

    fn mul(&self, a: &GrassmannElement, b: &GrassmannElement) -> GrassmannElement {
        let mut products: Vec<(u64, Scalar)> = Vec::with_capacity(a.terms.len() * b.terms.len());
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                if let Some((m, negative)) = monomial_product(*ma, *mb) {
                    let c = self.field.mul(ca, cb);
                    products.push((m, if negative { self.field.neg(&c) } else { c }));
                }
            }
        }
        products.sort_by_key(|(m, _)| *m);
        let mut terms = BTreeMap::new();
        let mut it = products.into_iter().peekable();
        while let Some((m, mut c)) = it.next() {
            while let Some((_, d)) = it.next_if(|(k, _)| *k == m) {
                c = self.field.add(&c, &d);
            }
            if !c.is_zero() {
                terms.insert(m, c);
            }
        }
        self.element(terms)
    }

    fn is_zero(&self, a: &GrassmannElement) -> bool {
        a.terms.is_empty()
    }

    fn from_rational(&self, q: &Rational) -> GrassmannElement {
        self.from_scalar(self.field.from_rational(q.clone()))
    }

    fn contains(&self, a: &GrassmannElement) -> bool {
        a.g == self.g
            && a.terms
                .iter()
                .all(|(m, c)| m & !self.full_mask() == 0 && !c.is_zero() && self.field.contains(c))
    }

    /// Central iff it commutes with every generator.
    fn is_central(&self, a: &GrassmannElement) -> bool {
        (1..=self.g).all(|i| {
            let v = self.generator(i);
            self.mul(a, &v) == self.mul(&v, a)
        })
    }

    /// `x = c(1 + n)` with `n` nilpotent is inverted by the terminating
    /// series `c^{-1}(1 - n + n^2 - ...)`.
    fn try_invert(&self, a: &GrassmannElement) -> Option<GrassmannElement> {
        let c = self.scalar_part(a);
        let c_inv = self.field.inv(&c).ok()?;
        let n = self.sub(&self.scale_by(a, &c_inv), &self.one());
        let minus_n = self.neg(&n);
        let mut sum = self.one();
        let mut power = self.one();
        loop {
            power = self.mul(&power, &minus_n);
            if power.is_zero() {
                break;
            }
            self.add_assign(&mut sum, &power);
        }
        Some(self.scale_by(&sum, &c_inv))
    }

    /// Zero divisors are exactly the elements with vanishing scalar part.
    fn is_non_zero_divisor(&self, a: &GrassmannElement) -> Option<bool> {
        Some(!self.scalar_part(a).is_zero())
    }

    /// Exhaustive on basis monomials up to ten generators. Beyond that the
    /// answer is read off from the infinite algebra, of which this one is a
    /// subalgebra: index 2 always holds, index 1 needs fewer than two
    /// generators.
    fn lie_nilpotent_of_index(&self, k: usize) -> Option<bool> {
        self.lie_nilpotent_exhaustive(k).or(Some(k >= 2 || (k == 1 && self.g < 2)))
    }

    fn scale(&self, a: &GrassmannElement, q: &Rational) -> GrassmannElement {
        self.scale_by(a, &self.field.from_rational(q.clone()))
    }
}

impl SampleRing for Grassmann {
    /// Up to six terms on random monomials with coefficients in `[-3, 3]`.
    fn random_element<G: Rng + ?Sized>(&self, rng: &mut G) -> GrassmannElement {
        let mut out = self.zero();
        for _ in 0..rng.gen_range(0..=6) {
            let m = rng.gen::<u64>() & self.full_mask();
            let c = self.field.random_element(rng);
            self.add_assign(&mut out, &self.term(m, c));
        }
        out
    }

    fn random_unit<G: Rng + ?Sized>(&self, rng: &mut G) -> GrassmannElement {
        let x = self.random_element(rng);
        let nilpotent = self.sub(&x, &self.from_scalar(self.scalar_part(&x)));
        self.add(&nilpotent, &self.from_scalar(self.field.random_unit(rng)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn e(g: u32) -> Grassmann {
        Grassmann::rational(g)
    }

    #[test]
    fn anticommutation_exhaustive() {
        let r = e(5);
        for i in 1..=5 {
            assert!(r.mul(&r.generator(i), &r.generator(i)).is_zero());
            for j in 1..=5 {
                let (vi, vj) = (r.generator(i), r.generator(j));
                assert_eq!(r.mul(&vi, &vj), r.neg(&r.mul(&vj, &vi)));
            }
        }
    }

    #[test]
    fn small_products() {
        let r = e(3);
        let (v1, v2) = (r.generator(1), r.generator(2));
        assert_eq!(r.mul(&v1, &v2), r.term(0b11, r.field().one()));
        assert_eq!(r.mul(&v2, &v1), r.term(0b11, r.field().from_int(-1)));
        let p = r.mul(&r.add(&r.one(), &v1), &r.sub(&r.one(), &v1));
        assert_eq!(p, r.one());
        // v3 v1 v2 = v1 v2 v3 (two transpositions)
        assert_eq!(r.monomial(&[3, 1, 2]), r.monomial(&[1, 2, 3]));
        assert_eq!(r.monomial(&[2, 1, 3]), r.neg(&r.monomial(&[1, 2, 3])));
    }

    #[test]
    fn sign_matches_bubble_sort() {
        // independent sign: count inversions of the concatenated index list
        for a in 0u64..32 {
            for b in 0u64..32 {
                if a & b != 0 {
                    assert!(monomial_product(a, b).is_none());
                    continue;
                }
                let list: Vec<u32> = monomial_indices(a).into_iter().chain(monomial_indices(b)).collect();
                let inv = (0..list.len())
                    .flat_map(|i| (i + 1..list.len()).map(move |j| (i, j)))
                    .filter(|&(i, j)| list[i] > list[j])
                    .count();
                assert_eq!(monomial_product(a, b), Some((a | b, inv % 2 == 1)));
            }
        }
    }

    #[test]
    fn associativity_random() {
        let r = e(6);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let (x, y, z) = (r.random_element(&mut rng), r.random_element(&mut rng), r.random_element(&mut rng));
            assert_eq!(r.mul(&r.mul(&x, &y), &z), r.mul(&x, &r.mul(&y, &z)));
        }
    }

    #[test]
    fn homogeneous_components() {
        let r = e(3);
        let x = r.add(&r.add(&r.from_int(3), &r.generator(1)), &r.monomial(&[1, 2]));
        assert_eq!(r.homogeneous_component(&x, 2), r.monomial(&[1, 2]));
        assert_eq!(r.homogeneous_component(&r.from_int(5), 0), r.from_int(5));
        assert!(r.homogeneous_component(&x, 4).is_zero());
        let sum = (0..=3).fold(r.zero(), |acc, k| r.add(&acc, &r.homogeneous_component(&x, k)));
        assert_eq!(sum, x);
    }

    #[test]
    fn inverses_and_zero_divisors() {
        let r = e(4);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let u = r.random_unit(&mut rng);
            let inv = r.try_invert(&u).expect("unit");
            assert_eq!(r.mul(&u, &inv), r.one());
            assert_eq!(r.mul(&inv, &u), r.one());
        }
        assert!(r.try_invert(&r.generator(1)).is_none());
        assert_eq!(r.is_non_zero_divisor(&r.generator(2)), Some(false));
        assert_eq!(r.is_non_zero_divisor(&r.add(&r.one(), &r.generator(2))), Some(true));
    }

    #[test]
    fn centre() {
        let r = e(4);
        assert!(r.is_central(&r.monomial(&[1, 2])));
        assert!(!r.is_central(&r.generator(1)));
        // an odd monomial anticommutes with any generator it misses
        assert!(!r.is_central(&r.monomial(&[1, 2, 3])));
        // the top monomial of odd length is central in the truncation
        let r3 = e(3);
        assert!(r3.is_central(&r3.monomial(&[1, 2, 3])));
    }

    #[test]
    fn lie_nilpotency_exhaustive() {
        for g in 0..=6 {
            let r = e(g);
            assert_eq!(r.lie_nilpotent_exhaustive(2), Some(true), "g = {g}");
            assert_eq!(r.lie_nilpotent_exhaustive(1), Some(g < 2), "g = {g}");
        }
        assert_eq!(e(20).lie_nilpotent_of_index(2), Some(true));
        assert_eq!(e(20).lie_nilpotent_of_index(1), Some(false));
    }

    #[test]
    fn bracket_shortcut_agrees_with_products() {
        let r = e(4);
        for a in 0u64..16 {
            for b in 0u64..16 {
                let (x, y) = (r.term(a, r.field().one()), r.term(b, r.field().one()));
                let c = r.sub(&r.mul(&x, &y), &r.mul(&y, &x));
                assert_eq!(c.terms().keys().next().copied(), commutator_monomials(a, b));
            }
        }
    }

    #[test]
    fn pretty_form() {
        let r = e(4);
        let x = r
            .from_terms([
                (monomial_mask(&[1, 2, 4]), r.field().from_int(-1)),
                (0, r.field().from_rational(Rational::new(3, 2).unwrap())),
                (monomial_mask(&[1, 3]), r.field().from_int(2)),
            ])
            .unwrap();
        assert_eq!(r.pretty(&x), "3/2 + 2·v1v3 - v1v2v4");
        assert_eq!(r.pretty(&r.zero()), "0");
        assert_eq!(r.pretty(&r.neg(&r.generator(2))), "-v2");
        assert!(r.from_terms([(1u64 << 5, r.field().one())]).is_err());
    }
}
