//! Characteristic polynomials `rdet_(k)(zI - A)` / `ldet_(k)(zI - A)`,
//! Cayley–Hamilton residuals and integrality certificates.

use super::{check_k, side_det};
use crate::error::{Error, Result};
use crate::matrices::{Matrix, TransitiveMatrix};
use crate::perm::factorial;
use crate::rings::{extend_endomorphism_to_poly, CyclotomicAlgebra, Endomorphism, PolyRing, Ring};
use crate::scalars::Rational;
use crate::supermatrix::SuperAlgebraSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Right,
    Left,
}

impl Side {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "right" => Ok(Side::Right),
            "left" => Ok(Side::Left),
            _ => Err(Error::InvalidParameter(format!("side must be `right` or `left`, got `{s}`"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Side::Right => "right",
            Side::Left => "left",
        }
    }
}

/// `n ((n-1)!)^(1 + n + ... + n^(k-1))`
pub fn leading_coefficient_closed_form(n: usize, k: usize) -> Rational {
    let exponent: u32 = (0..k).map(|j| n.pow(j as u32) as u32).sum();
    &Rational::from_int(n as i64) * &Rational::from_int(factorial(n.saturating_sub(1)) as i64).pow(exponent)
}

/// The `k`-th right (`p_{A,k}`) or left (`q_{A,k}`) characteristic
/// polynomial; `coeffs[i]` multiplies `z^i`, with `n^k + 1` entries.
#[derive(Clone, Debug, PartialEq)]
pub struct CharPoly<E> {
    pub side: Side,
    pub k: usize,
    pub n: usize,
    pub coeffs: Vec<E>,
}

impl<E: Clone + PartialEq> CharPoly<E> {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &E {
        self.coeffs.last().expect("nonempty")
    }

    /// Whether the degree is `n^k` and the top coefficient is the closed form.
    pub fn leading_matches<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        self.degree() == self.n.pow(self.k as u32) && *self.leading() == ring.from_rational(&leading_coefficient_closed_form(self.n, self.k))
    }

    /// Whether `delta` extended to `R[z]` fixes the polynomial.
    pub fn coefficients_fixed<R: Ring<Elem = E>>(&self, ring: &R, delta: &Endomorphism<R>) -> bool {
        let rz = PolyRing::new(ring.clone());
        let p = rz.poly(self.coeffs.clone());
        extend_endomorphism_to_poly(&rz, delta).apply(&p) == p
    }
}

pub fn charpoly<R: Ring>(ring: &R, a: &Matrix<R::Elem>, k: usize, side: Side) -> Result<CharPoly<R::Elem>> {
    let n = a.square_size()?;
    check_k(k)?;
    let rz = PolyRing::new(ring.clone());
    let entries = a
        .entries()
        .iter()
        .enumerate()
        .map(|(idx, x)| {
            let c = rz.constant(ring.neg(x));
            if idx / n == idx % n {
                rz.add(&rz.z(), &c)
            } else {
                c
            }
        })
        .collect();
    let lifted = Matrix::from_entries(&rz, n, n, entries)?;
    let p = side_det(&rz, &lifted, k, side)?;
    let top = n.pow(k as u32);
    let coeffs = (0..=top).map(|i| rz.coeff(&p, i)).collect();
    Ok(CharPoly { side, k, n, coeffs })
}

/// `sum_i A^i c_i` for the right polynomial, `sum_i c_i A^i` for the left.
pub fn cayley_hamilton_residual<R: Ring>(ring: &R, a: &Matrix<R::Elem>, p: &CharPoly<R::Elem>) -> Result<Matrix<R::Elem>> {
    let n = a.square_size()?;
    let mut power = Matrix::identity(ring, n);
    let mut acc = Matrix::zeros(ring, n, n);
    for (i, c) in p.coeffs.iter().enumerate() {
        if i > 0 {
            power = power.mul(ring, a)?;
        }
        let term = match p.side {
            Side::Right => power.mul_scalar_right(ring, c),
            Side::Left => power.mul_scalar_left(ring, c),
        };
        acc = acc.add(ring, &term)?;
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChReport<E> {
    pub charpoly: CharPoly<E>,
    pub residual: Matrix<E>,
    /// Lie nilpotency of index `k` as decided by the ring; `None` when
    /// the ring cannot decide it.
    pub lie_nilpotent: Option<bool>,
}

impl<E: Clone + PartialEq + std::fmt::Debug> ChReport<E> {
    pub fn residual_is_zero<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        self.residual.is_zero(ring)
    }
}

/// Evaluates the Cayley–Hamilton identity of `p_{A,k}` (right) or
/// `q_{A,k}` (left). Refuses rings known not to be Lie nilpotent of index `k`.
pub fn cayley_hamilton_check<R: Ring>(ring: &R, a: &Matrix<R::Elem>, k: usize, side: Side) -> Result<ChReport<R::Elem>> {
    let lie_nilpotent = ring.lie_nilpotent_of_index(k);
    if lie_nilpotent == Some(false) {
        return Err(Error::Precondition(format!("{} is not Lie nilpotent of index {k}", ring.describe())));
    }
    let charpoly = charpoly(ring, a, k, side)?;
    let residual = cayley_hamilton_residual(ring, a, &charpoly)?;
    Ok(ChReport {
        charpoly,
        residual,
        lie_nilpotent,
    })
}

/// One side of an integrality certificate: the monic coefficients
/// `c_0, ..., c_{N-1}` (the top one is 1) and the value of the relation at `r`.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegralitySide<E> {
    pub coeffs: Vec<E>,
    pub fixed: bool,
    pub residual: E,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IntegralityCertificate<E> {
    pub n: usize,
    pub k: usize,
    /// `c_0 + r c_1 + ... + r^{N-1} c_{N-1} + r^N`
    pub right: IntegralitySide<E>,
    /// `c_0 + c_1 r + ... + c_{N-1} r^{N-1} + r^N`
    pub left: IntegralitySide<E>,
}

impl<E> IntegralityCertificate<E> {
    pub fn holds<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        [&self.right, &self.left].iter().all(|s| s.fixed && ring.is_zero(&s.residual))
    }
}

/// Embeds `r` into `M_n(R, delta, P^(e))` for a primitive `n`-th root of
/// unity `e`, takes the `k`-th right and left characteristic polynomials of
/// the image, makes them monic and substitutes `r` back.
pub fn integrality_certificate<R: CyclotomicAlgebra>(
    ring: &R,
    delta: &Endomorphism<R>,
    r: &R::Elem,
    n: usize,
    k: usize,
) -> Result<IntegralityCertificate<R::Elem>> {
    check_k(k)?;
    ring.check(r)?;
    let e = ring
        .scalar_field()
        .primitive_root(n)
        .ok_or_else(|| Error::Precondition(format!("{} has no primitive {n}-th root of unity", ring.scalar_field().describe())))?;
    if ring.lie_nilpotent_of_index(k) != Some(true) {
        return Err(Error::Precondition(format!(
            "{} is not known to be Lie nilpotent of index {k}",
            ring.describe()
        )));
    }
    let samples = ring.spanning_set()?;
    let p = TransitiveMatrix::powers_of(ring, &ring.from_scalar(&e), n)?;
    let spec = SuperAlgebraSpec::new(ring.clone(), delta.clone(), p)?;
    let conditions = spec.embedding_conditions(&samples);
    if !conditions.regime3() {
        return Err(Error::Precondition(format!("embedding conditions fail for {} with n = {n}", delta.name())));
    }
    let image = spec.embed(r)?;
    let side = |side: Side| -> Result<IntegralitySide<R::Elem>> {
        let cp = charpoly(ring, &image, k, side)?;
        let inv = ring
            .try_invert(cp.leading())
            .ok_or_else(|| Error::NotInvertible("leading coefficient".into()))?;
        let top = cp.degree();
        let coeffs: Vec<R::Elem> = cp.coeffs[..top].iter().map(|c| ring.mul(c, &inv)).collect();
        let fixed = coeffs.iter().all(|c| delta.fixes(c));
        let mut residual = ring.pow(r, top);
        for (i, c) in coeffs.iter().enumerate() {
            let ri = ring.pow(r, i);
            let term = match side {
                Side::Right => ring.mul(&ri, c),
                Side::Left => ring.mul(c, &ri),
            };
            ring.add_assign(&mut residual, &term);
        }
        Ok(IntegralitySide { coeffs, fixed, residual })
    };
    Ok(IntegralityCertificate {
        n,
        k,
        right: side(Side::Right)?,
        left: side(Side::Left)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::{epsilon, Grassmann};
    use crate::rings::{classical_det, OracleRing, SampleRing};
    use crate::supermatrix::{example_algebra, sample_supermatrix, ExampleKind};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn closed_form_values() {
        assert_eq!(leading_coefficient_closed_form(2, 1), Rational::from_int(2));
        assert_eq!(leading_coefficient_closed_form(2, 2), Rational::from_int(2));
        assert_eq!(leading_coefficient_closed_form(3, 1), Rational::from_int(6));
        // 3 * 2^(1 + 3)
        assert_eq!(leading_coefficient_closed_form(3, 2), Rational::from_int(48));
        assert_eq!(leading_coefficient_closed_form(1, 2), Rational::from_int(1));
    }

    #[test]
    fn two_by_two_first_polynomial() {
        let e = Grassmann::rational(4);
        let (a, b, c, d) = (e.generator(1), e.generator(2), e.generator(3), e.generator(4));
        let m = Matrix::from_rows(&e, vec![vec![a.clone(), b.clone()], vec![c.clone(), d.clone()]]).unwrap();
        let p = charpoly(&e, &m, 1, Side::Right).unwrap();
        let sd = e.sub(&e.add(&e.mul(&a, &d), &e.mul(&d, &a)), &e.add(&e.mul(&b, &c), &e.mul(&c, &b)));
        assert_eq!(p.coeffs, vec![sd, e.scale(&e.add(&a, &d), &Rational::from_int(-2)), e.from_int(2)]);
        assert!(p.leading_matches(&e));
        let one = Matrix::from_rows(&e, vec![vec![a.clone()]]).unwrap();
        assert_eq!(charpoly(&e, &one, 1, Side::Left).unwrap().coeffs, vec![e.neg(&a), e.one()]);
    }

    #[test]
    fn leading_coefficients() {
        let e = Grassmann::rational(4);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (n, k) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
            let a = Matrix::from_fn(n, n, |_, _| e.random_element(&mut rng));
            for side in [Side::Right, Side::Left] {
                assert!(charpoly(&e, &a, k, side).unwrap().leading_matches(&e), "n = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn oracle_cayley_hamilton() {
        for n in 1..=3 {
            let o = OracleRing::matrix_variables(n);
            let a = o.symbolic_matrix(n).unwrap();
            let report = cayley_hamilton_check(&o, &a, 1, Side::Right).unwrap();
            assert!(report.residual_is_zero(&o));
            let p = report.charpoly;
            let det = classical_det(&o, &a).unwrap();
            let sign = if n % 2 == 0 { 1 } else { -1 };
            let expected = o.scale(&det, &(&Rational::from_int(sign) * &Rational::from_int(factorial(n) as i64)));
            assert_eq!(p.coeffs[0], expected);
        }
    }

    #[test]
    fn supermatrix_cayley_hamilton() {
        let ex = example_algebra(ExampleKind::EvenOdd, 2, 1, 4).unwrap();
        let e = ex.spec.ring();
        for seed in 0..5 {
            let a = sample_supermatrix(&ex.spec, seed).unwrap();
            for side in [Side::Right, Side::Left] {
                let report = cayley_hamilton_check(e, &a, 2, side).unwrap();
                assert!(report.residual_is_zero(e), "seed {seed}, {side:?}");
                assert!(report.charpoly.coefficients_fixed(e, ex.spec.delta()));
            }
        }
        let zero = Matrix::zeros(e, 2, 2);
        assert!(cayley_hamilton_check(e, &zero, 2, Side::Right).unwrap().residual_is_zero(e));
    }

    #[test]
    fn refuses_commutative_index_on_grassmann() {
        let e = Grassmann::rational(4);
        let a = Matrix::identity(&e, 2);
        assert!(matches!(cayley_hamilton_check(&e, &a, 1, Side::Right), Err(Error::Precondition(_))));
    }

    #[test]
    fn integrality_of_generator_and_fixed_element() {
        let e = Grassmann::rational(4);
        let eps = epsilon(&e);
        let cert = integrality_certificate(&e, &eps, &e.generator(1), 2, 2).unwrap();
        assert_eq!(cert.right.coeffs.len(), 4);
        assert!(cert.holds(&e));
        let fixed = e.add(&e.from_int(3), &e.monomial(&[1, 2]));
        assert!(integrality_certificate(&e, &eps, &fixed, 2, 2).unwrap().holds(&e));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..3 {
            let r = e.random_element(&mut rng);
            let cert = integrality_certificate(&e, &eps, &r, 2, 2).unwrap();
            assert!(cert.right.coeffs.iter().chain(&cert.left.coeffs).all(|c| c.is_even()));
            assert!(cert.holds(&e));
        }
    }

    #[test]
    fn integrality_needs_root_and_period() {
        let e = Grassmann::rational(3);
        // no primitive cube root of unity in Q
        assert!(matches!(
            integrality_certificate(&e, &epsilon(&e), &e.generator(1), 3, 2),
            Err(Error::Precondition(_))
        ));
        // epsilon^3 is not the identity
        let e3 = Grassmann::new(3, crate::scalars::CyclotomicField::new(3).unwrap()).unwrap();
        assert!(matches!(
            integrality_certificate(&e3, &epsilon(&e3), &e3.generator(1), 3, 2),
            Err(Error::Precondition(_))
        ));
    }
}
