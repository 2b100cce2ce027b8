//! Supermatrix algebras over the Grassmann algebra: per-entry shapes,
//! random members, and three standard families.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::SuperAlgebraSpec;
use crate::error::{Error, Result};
use crate::grassmann::{
    epsilon, graded_component_basis, omega_characterization, omega_containment, rho_e, sigma, sigma_fixed_basis, solve_constraint, ComponentBasis, Grassmann,
    GrassmannElement,
};
use crate::matrices::{Matrix, TransitiveMatrix};
use crate::rings::Ring;
use crate::scalars::CyclotomicField;

/// The subspace allowed in each entry of a supermatrix algebra.
#[derive(Clone, Debug)]
pub struct Shape {
    n: usize,
    bases: Vec<ComponentBasis>,
}

impl Shape {
    /// Entry `(i, j)` is `{x : delta(x) = t_ij x}`, solved once per distinct `t_ij`.
    pub fn solve(spec: &SuperAlgebraSpec<Grassmann>) -> Result<Self> {
        let n = spec.n();
        let mut solved: Vec<(GrassmannElement, ComponentBasis)> = Vec::new();
        let mut bases = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let t = spec.transitive().get(i, j);
                let basis = match solved.iter().find(|(u, _)| u == t) {
                    Some((_, b)) => b.clone(),
                    None => {
                        let b = solve_constraint(spec.ring(), spec.delta(), t)?;
                        solved.push((t.clone(), b.clone()));
                        b
                    }
                };
                bases.push(basis);
            }
        }
        Ok(Shape { n, bases })
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize, usize) -> ComponentBasis) -> Self {
        Shape {
            n,
            bases: Matrix::from_fn(n, n, f).into_entries(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &ComponentBasis {
        &self.bases[i * self.n + j]
    }

    /// Independent random combinations of each entry's basis.
    pub fn sample<G: Rng + ?Sized>(&self, rng: &mut G) -> Matrix<GrassmannElement> {
        let n = self.n;
        Matrix::from_fn(n, n, |i, j| self.get(i, j).random_member(rng))
    }

    /// Entrywise equality of subspaces.
    pub fn same_as(&self, other: &Shape) -> bool {
        self.n == other.n && self.bases.iter().zip(&other.bases).all(|(a, b)| a.same_subspace(b))
    }
}

/// A random member of the algebra, reproducible from `seed`.
pub fn sample_supermatrix(spec: &SuperAlgebraSpec<Grassmann>, seed: u64) -> Result<Matrix<GrassmannElement>> {
    let shape = Shape::solve(spec)?;
    Ok(shape.sample(&mut ChaCha8Rng::seed_from_u64(seed)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExampleKind {
    /// `M_n(E, epsilon, P(d, n))`: even entries in the diagonal blocks, odd
    /// entries off them.
    EvenOdd,
    /// `M_n(E, rho_e, P^(e))` over `Q(zeta_n)`: entry `(i, j)` in
    /// `E_{(i - j) mod n, n}`.
    RootOfUnity,
    /// `M_n(E, sigma, Q(d, n))` with `Q = [[1, 1 + v1v2], [1 - v1v2, 1]]`.
    Conjugation,
}

impl ExampleKind {
    /// Accepts `5.1`, `5.2`, `5.3` or the descriptive names.
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "5.1" | "even-odd" => Ok(ExampleKind::EvenOdd),
            "5.2" | "root-of-unity" => Ok(ExampleKind::RootOfUnity),
            "5.3" | "conjugation" => Ok(ExampleKind::Conjugation),
            _ => Err(Error::InvalidParameter(format!("unknown example `{s}`; expected 5.1, 5.2 or 5.3"))),
        }
    }

    pub fn id(&self) -> &'static str {
        match self {
            ExampleKind::EvenOdd => "5.1",
            ExampleKind::RootOfUnity => "5.2",
            ExampleKind::Conjugation => "5.3",
        }
    }
}

/// One of the standard algebras with its solver-computed shape and the
/// shape predicted by the description of its entries.
#[derive(Clone, Debug)]
pub struct ExampleAlgebra {
    pub kind: ExampleKind,
    pub spec: SuperAlgebraSpec<Grassmann>,
    pub shape: Shape,
    pub reference: Shape,
    /// Name of the predicted subspace of each entry, row-major.
    pub labels: Vec<String>,
    /// For the conjugation family: whether the computed off-diagonal
    /// subspaces lie in `E0 + E0v1 + E0v2`.
    pub omega_containment: Option<bool>,
}

impl ExampleAlgebra {
    pub fn shape_matches(&self) -> bool {
        self.shape.same_as(&self.reference)
    }

    pub fn label(&self, i: usize, j: usize) -> &str {
        &self.labels[i * self.spec.n() + j]
    }
}

fn block_of(d: usize, p: usize) -> usize {
    usize::from(p >= d)
}

fn check_blocks(n: usize, d: usize) -> Result<()> {
    if n < 2 || d == 0 || d >= n {
        return Err(Error::InvalidParameter(format!("need 1 <= d < n, got n = {n}, d = {d}")));
    }
    Ok(())
}

/// Builds one of the standard algebras on `g` generators. `d` is the size
/// of the first diagonal block and is ignored by the root-of-unity family.
pub fn example_algebra(kind: ExampleKind, n: usize, d: usize, g: u32) -> Result<ExampleAlgebra> {
    match kind {
        ExampleKind::EvenOdd => {
            check_blocks(n, d)?;
            let e = Grassmann::rational(g);
            let p = TransitiveMatrix::powers_of(&e, &e.from_int(-1), 2)?.blow_up(&e, &[d, n])?;
            let spec = SuperAlgebraSpec::new(e.clone(), epsilon(&e), p)?;
            let (even, odd) = (graded_component_basis(&e, 0, 2)?, graded_component_basis(&e, 1, 2)?);
            let same = |i, j| block_of(d, i) == block_of(d, j);
            let reference = Shape::from_fn(n, |i, j| if same(i, j) { even.clone() } else { odd.clone() });
            let labels = Matrix::from_fn(n, n, |i, j| if same(i, j) { "E0".to_string() } else { "E1".to_string() }).into_entries();
            Ok(ExampleAlgebra {
                kind,
                shape: Shape::solve(&spec)?,
                spec,
                reference,
                labels,
                omega_containment: None,
            })
        }
        ExampleKind::RootOfUnity => {
            if n == 0 {
                return Err(Error::InvalidParameter("n must be positive".into()));
            }
            let e = Grassmann::new(g, CyclotomicField::new(n)?)?;
            let (rho, root) = rho_e(&e, n)?;
            let p = TransitiveMatrix::powers_of(&e, &e.from_scalar(root), n)?;
            let spec = SuperAlgebraSpec::new(e.clone(), rho, p)?;
            let components: Vec<ComponentBasis> = (0..n).map(|m| graded_component_basis(&e, m, n)).collect::<Result<_>>()?;
            let m_of = |i: usize, j: usize| (i + n - j) % n;
            let reference = Shape::from_fn(n, |i, j| components[m_of(i, j)].clone());
            let labels = Matrix::from_fn(n, n, |i, j| format!("E_{{{},{}}}", m_of(i, j), n)).into_entries();
            Ok(ExampleAlgebra {
                kind,
                shape: Shape::solve(&spec)?,
                spec,
                reference,
                labels,
                omega_containment: None,
            })
        }
        ExampleKind::Conjugation => {
            check_blocks(n, d)?;
            if g < 2 {
                return Err(Error::InvalidParameter("the conjugation family needs at least two generators".into()));
            }
            let e = Grassmann::rational(g);
            let v12 = e.monomial(&[1, 2]);
            let q = Matrix::from_rows(&e, vec![vec![e.one(), e.add(&e.one(), &v12)], vec![e.sub(&e.one(), &v12), e.one()]])?;
            let q = TransitiveMatrix::certify(&e, q)?;
            let q = q.blow_up(&e, &[d, n])?;
            if !q.matrix().entries().iter().all(GrassmannElement::is_even) {
                return Err(Error::CheckFailed("Q(d, n) has an entry outside E0".into()));
            }
            let spec = SuperAlgebraSpec::new(e.clone(), sigma(&e)?, q)?;
            let fixed = sigma_fixed_basis(&e)?;
            let (upper, lower) = (omega_characterization(&e, 1)?, omega_characterization(&e, -1)?);
            let pick = |i: usize, j: usize| match (block_of(d, i), block_of(d, j)) {
                (a, b) if a == b => (fixed.clone(), "E0+E0v1"),
                (0, _) => (upper.clone(), "Omega(1+v1v2)"),
                _ => (lower.clone(), "Omega(1-v1v2)"),
            };
            let reference = Shape::from_fn(n, |i, j| pick(i, j).0);
            let labels = Matrix::from_fn(n, n, |i, j| pick(i, j).1.to_string()).into_entries();
            let shape = Shape::solve(&spec)?;
            let contained = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .map(|(i, j)| omega_containment(shape.get(i, j)))
                .collect::<Result<Vec<_>>>()?;
            Ok(ExampleAlgebra {
                kind,
                shape,
                spec,
                reference,
                labels,
                omega_containment: Some(contained.into_iter().all(|c| c)),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn even_odd_shape() {
        let ex = example_algebra(ExampleKind::EvenOdd, 2, 1, 3).unwrap();
        assert!(ex.shape_matches());
        assert_eq!(ex.label(0, 0), "E0");
        assert_eq!(ex.label(0, 1), "E1");
        let ex = example_algebra(ExampleKind::EvenOdd, 3, 1, 3).unwrap();
        assert!(ex.shape_matches());
        assert_eq!(ex.label(1, 2), "E0");
        assert!(example_algebra(ExampleKind::EvenOdd, 2, 2, 3).is_err());
    }

    #[test]
    fn root_of_unity_shape() {
        let ex = example_algebra(ExampleKind::RootOfUnity, 3, 0, 5).unwrap();
        assert!(ex.shape_matches());
        assert_eq!(ex.label(0, 1), "E_{2,3}");
        assert_eq!(ex.label(2, 0), "E_{2,3}");
        assert_eq!(ex.label(1, 0), "E_{1,3}");
        // n = 2 agrees with the even/odd family
        let two = example_algebra(ExampleKind::RootOfUnity, 2, 0, 4).unwrap();
        let eo = example_algebra(ExampleKind::EvenOdd, 2, 1, 4).unwrap();
        assert!(two.shape.same_as(&eo.shape));
    }

    #[test]
    fn conjugation_shape() {
        for (n, d) in [(2, 1), (3, 1), (3, 2)] {
            let ex = example_algebra(ExampleKind::Conjugation, n, d, 4).unwrap();
            assert!(ex.shape_matches(), "n = {n}, d = {d}");
            assert_eq!(ex.omega_containment, Some(true));
        }
        assert!(example_algebra(ExampleKind::Conjugation, 2, 1, 1).is_err());
    }

    #[test]
    fn samples_are_members() {
        for (kind, n, d, g) in [
            (ExampleKind::EvenOdd, 3, 2, 4),
            (ExampleKind::RootOfUnity, 3, 0, 4),
            (ExampleKind::Conjugation, 2, 1, 4),
        ] {
            let ex = example_algebra(kind, n, d, g).unwrap();
            for seed in 0..10 {
                let a = sample_supermatrix(&ex.spec, seed).unwrap();
                assert!(ex.spec.is_supermatrix(&a).unwrap());
                assert_eq!(a, sample_supermatrix(&ex.spec, seed).unwrap());
            }
        }
    }

    #[test]
    fn parse_names() {
        assert_eq!(ExampleKind::parse("5.2").unwrap(), ExampleKind::RootOfUnity);
        assert!(ExampleKind::parse("5.4").is_err());
    }
}
