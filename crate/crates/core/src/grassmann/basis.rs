//! Subspaces of a Grassmann algebra given by bases: graded components and
//! solution sets of linear constraints `delta(x) = t x`.

use rand::Rng;

use super::{Grassmann, GrassmannElement};
use crate::error::{Error, Result};
use crate::linalg::{kernel, Echelon, SparseVec};
use crate::rings::{Endomorphism, Ring};
use crate::scalars::Rational;

/// Default limit on the generator count for dense constraint solving.
pub const DEFAULT_SOLVER_CAP: u32 = 12;

fn to_vec(x: &GrassmannElement) -> SparseVec {
    x.terms().clone()
}

fn check_cap(ring: &Grassmann, cap: u32) -> Result<()> {
    if ring.generators() > cap {
        return Err(Error::CapExceeded {
            what: "generator count",
            got: ring.generators() as usize,
            cap: cap as usize,
        });
    }
    Ok(())
}

/// A subspace of `E` held in reduced row echelon form, so two bases of the
/// same subspace produce identical [`ComponentBasis::basis`] output.
#[derive(Clone, Debug)]
pub struct ComponentBasis {
    ring: Grassmann,
    echelon: Echelon,
}

impl ComponentBasis {
    /// The span of `elems`.
    pub fn span(ring: &Grassmann, elems: &[GrassmannElement]) -> Result<Self> {
        let mut echelon = Echelon::new(ring.field().clone());
        for x in elems {
            ring.check(x)?;
            echelon.insert(&to_vec(x));
        }
        Ok(ComponentBasis { ring: ring.clone(), echelon })
    }

    /// The span of the monomials selected by `keep`.
    pub fn monomials(ring: &Grassmann, keep: impl Fn(u64) -> bool) -> Self {
        let elems: Vec<_> = (0..=ring.full_mask()).filter(|m| keep(*m)).map(|m| ring.term(m, ring.field().one())).collect();
        ComponentBasis::span(ring, &elems).expect("monomials belong to the ring")
    }

    pub fn ring(&self) -> &Grassmann {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    /// Canonical basis: reduced echelon rows, ascending by pivot monomial.
    pub fn basis(&self) -> Vec<GrassmannElement> {
        self.echelon
            .rows()
            .map(|row| self.ring.from_terms(row.iter().map(|(m, c)| (*m, c.clone()))).expect("rows stay in the ring"))
            .collect()
    }

    pub fn contains(&self, x: &GrassmannElement) -> bool {
        self.ring.contains(x) && self.echelon.contains(&to_vec(x))
    }

    pub fn is_subspace_of(&self, other: &ComponentBasis) -> bool {
        self.echelon.rows().all(|row| other.echelon.contains(row))
    }

    /// Equal rank and mutual containment.
    pub fn same_subspace(&self, other: &ComponentBasis) -> bool {
        self.dim() == other.dim() && self.is_subspace_of(other) && other.is_subspace_of(self)
    }

    /// A random combination of the basis with integer coefficients in `[-3, 3]`.
    pub fn random_member<G: Rng + ?Sized>(&self, rng: &mut G) -> GrassmannElement {
        let mut out = self.ring.zero();
        for b in self.basis() {
            let c = rng.gen_range(-3..=3);
            if c != 0 {
                out = self.ring.add(&out, &self.ring.scale(&b, &Rational::from_int(c)));
            }
        }
        out
    }
}

/// `E_{m,n}`: the span of monomials whose length is congruent to `m` mod `n`.
pub fn graded_component_basis(ring: &Grassmann, m: usize, n: usize) -> Result<ComponentBasis> {
    if n == 0 || m >= n {
        return Err(Error::InvalidParameter(format!("graded component needs 0 <= m < n, got m = {m}, n = {n}")));
    }
    check_cap(ring, DEFAULT_SOLVER_CAP)?;
    Ok(ComponentBasis::monomials(ring, |mask| mask.count_ones() as usize % n == m))
}

/// Basis of `{x in E : delta(x) = t x}` with the default generator cap.
pub fn solve_constraint(ring: &Grassmann, delta: &Endomorphism<Grassmann>, t: &GrassmannElement) -> Result<ComponentBasis> {
    solve_constraint_with_cap(ring, delta, t, DEFAULT_SOLVER_CAP)
}

/// Kernel of the linear map `x -> delta(x) - t x`, assembled column by
/// column from the images of the `2^g` basis monomials.
pub fn solve_constraint_with_cap(ring: &Grassmann, delta: &Endomorphism<Grassmann>, t: &GrassmannElement, cap: u32) -> Result<ComponentBasis> {
    check_cap(ring, cap)?;
    ring.check(t)?;
    let images: Vec<SparseVec> = (0..=ring.full_mask())
        .map(|m| {
            let x = ring.term(m, ring.field().one());
            to_vec(&ring.sub(&delta.apply(&x), &ring.mul(t, &x)))
        })
        .collect();
    let ker = kernel(ring.field(), &images);
    let elems: Vec<GrassmannElement> = ker.into_iter().map(|v| ring.from_terms(v)).collect::<Result<_>>()?;
    ComponentBasis::span(ring, &elems)
}

/// `E0 + E0 v1`: even monomials together with odd monomials containing `v1`.
pub fn sigma_fixed_basis(ring: &Grassmann) -> Result<ComponentBasis> {
    check_cap(ring, DEFAULT_SOLVER_CAP)?;
    Ok(ComponentBasis::monomials(ring, |m| m.count_ones() % 2 == 0 || m & 1 == 1))
}

/// `{g0 + g1 : g0 in E0, g1 in E1, 2 g1 - s v2 g0 in E0 v1}`, computed as a
/// kernel directly from the description, for `s = +-1`. This is the
/// solution set of `sigma(x) = (1 + s v1v2) x`. The element `2 g1 - s v2 g0`
/// is odd, and the odd part of `E0 v1` is spanned by the odd monomials
/// containing `v1`, so membership means its coefficients on monomials
/// without `v1` vanish.
pub fn omega_characterization(ring: &Grassmann, s: i64) -> Result<ComponentBasis> {
    if s != 1 && s != -1 {
        return Err(Error::InvalidParameter(format!("sign must be 1 or -1, got {s}")));
    }
    if ring.generators() < 2 {
        return Err(Error::InvalidParameter("the characterization needs at least two generators".into()));
    }
    check_cap(ring, DEFAULT_SOLVER_CAP)?;
    let v2 = ring.generator(2);
    let images: Vec<SparseVec> = (0..=ring.full_mask())
        .map(|m| {
            let x = ring.term(m, ring.field().one());
            let w = if m.count_ones() % 2 == 0 {
                ring.scale(&ring.mul(&v2, &x), &Rational::from_int(-s))
            } else {
                ring.scale(&x, &Rational::from_int(2))
            };
            w.terms().iter().filter(|(k, _)| *k & 1 == 0).map(|(k, c)| (*k, c.clone())).collect()
        })
        .collect();
    let elems: Vec<GrassmannElement> = kernel(ring.field(), &images).into_iter().map(|v| ring.from_terms(v)).collect::<Result<_>>()?;
    ComponentBasis::span(ring, &elems)
}

/// Whether `basis` lies in `E0 + E0 v1 + E0 v2`, the span of the even
/// monomials and the odd monomials containing `v1` or `v2`.
pub fn omega_containment(basis: &ComponentBasis) -> Result<bool> {
    let ring = basis.ring();
    check_cap(ring, DEFAULT_SOLVER_CAP)?;
    let target = ComponentBasis::monomials(ring, |m| m.count_ones() % 2 == 0 || m & 0b11 != 0);
    Ok(basis.is_subspace_of(&target))
}
