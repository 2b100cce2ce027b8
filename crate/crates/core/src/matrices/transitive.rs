//! Transitive matrices (`t_ii = 1`, `t_ij t_jk = t_ik`), Hadamard products
//! and the Hadamard automorphism `A -> T * A`.

use super::Matrix;
use crate::error::{Error, Result};
use crate::rings::{Endomorphism, Ring};

/// `A * B = [a_ij b_ij]`
pub fn hadamard<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>> {
    a.zip_with(b, |x, y| ring.mul(x, y))
}

/// `H_n`, the all-ones matrix.
pub fn hadamard_identity<R: Ring>(ring: &R, n: usize) -> Matrix<R::Elem> {
    Matrix::from_fn(n, n, |_, _| ring.one())
}

/// First index triple `(i, j, k)` with `t_ij t_jk != t_ik`, or `(i, i, i)`
/// for a diagonal entry different from one. `None` for transitive matrices.
pub fn transitivity_violation<R: Ring>(ring: &R, t: &Matrix<R::Elem>) -> Result<Option<(usize, usize, usize)>> {
    let n = t.square_size()?;
    if let Some(i) = (0..n).find(|&i| !ring.is_one(t.get(i, i))) {
        return Ok(Some((i, i, i)));
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if ring.mul(t.get(i, j), t.get(j, k)) != *t.get(i, k) {
                    return Ok(Some((i, j, k)));
                }
            }
        }
    }
    Ok(None)
}

/// Exhaustive check of the diagonal and all `n^3` triples.
pub fn is_transitive<R: Ring>(ring: &R, t: &Matrix<R::Elem>) -> bool {
    matches!(transitivity_violation(ring, t), Ok(None))
}

/// A transitive matrix together with units `g_i` and their inverses such
/// that `t_ij = g_i g_j^{-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TransitiveMatrix<E> {
    matrix: Matrix<E>,
    units: Vec<E>,
    inverses: Vec<E>,
}

impl<E: Clone + PartialEq + std::fmt::Debug> TransitiveMatrix<E> {
    /// Certifies `t`. The units are read off the first column: `g_i = t_i1`,
    /// whose inverse is `t_1i` because `t_i1 t_1i = t_ii = 1` and
    /// `t_1i t_i1 = t_11 = 1`.
    pub fn certify<R: Ring<Elem = E>>(ring: &R, t: Matrix<E>) -> Result<Self> {
        let n = t.square_size()?;
        for x in t.entries() {
            ring.check(x)?;
        }
        if let Some((i, j, k)) = transitivity_violation(ring, &t)? {
            return Err(Error::NotTransitive(if i == j && j == k {
                format!("diagonal entry ({}, {}) is not 1", i + 1, i + 1)
            } else {
                format!("t_{0}{1} t_{1}{2} != t_{0}{2}", i + 1, j + 1, k + 1)
            }));
        }
        let units = (0..n).map(|i| t.get(i, 0).clone()).collect();
        let inverses = (0..n).map(|i| t.get(0, i).clone()).collect();
        Ok(TransitiveMatrix { matrix: t, units, inverses })
    }

    /// `[g_i g_j^{-1}]`; fails if some `g_i` has no inverse.
    pub fn from_units<R: Ring<Elem = E>>(ring: &R, units: &[E]) -> Result<Self> {
        if units.is_empty() {
            return Err(Error::InvalidParameter("need at least one unit".into()));
        }
        let mut inverses = Vec::with_capacity(units.len());
        for (i, g) in units.iter().enumerate() {
            ring.check(g)?;
            inverses.push(ring.try_invert(g).ok_or_else(|| Error::NotInvertible(format!("g_{} = {:?}", i + 1, g)))?);
        }
        let n = units.len();
        let matrix = Matrix::from_fn(n, n, |i, j| ring.mul(&units[i], &inverses[j]));
        if let Some((i, j, k)) = transitivity_violation(ring, &matrix)? {
            return Err(Error::CheckFailed(format!(
                "unit construction broke transitivity at ({}, {}, {})",
                i + 1,
                j + 1,
                k + 1
            )));
        }
        Ok(TransitiveMatrix {
            matrix,
            units: units.to_vec(),
            inverses,
        })
    }

    /// `P^(u)` with `p_ij = u^{i-j}`, from the units `1, u, ..., u^{n-1}`.
    pub fn powers_of<R: Ring<Elem = E>>(ring: &R, u: &E, n: usize) -> Result<Self> {
        let units: Vec<E> = (0..n).map(|i| ring.pow(u, i)).collect();
        TransitiveMatrix::from_units(ring, &units)
    }

    /// The Hadamard identity `H_n`.
    pub fn ones<R: Ring<Elem = E>>(ring: &R, n: usize) -> Result<Self> {
        TransitiveMatrix::from_units(ring, &vec![ring.one(); n])
    }

    pub fn matrix(&self) -> &Matrix<E> {
        &self.matrix
    }

    pub fn size(&self) -> usize {
        self.units.len()
    }

    pub fn units(&self) -> &[E] {
        &self.units
    }

    pub fn inverses(&self) -> &[E] {
        &self.inverses
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        self.matrix.get(i, j)
    }

    /// The factorization `g_i = t_i1` of the first column.
    pub fn factor(&self) -> Vec<E> {
        (0..self.size()).map(|i| self.matrix.get(i, 0).clone()).collect()
    }

    /// `S = [t_ij^{-1}]`; by transitivity `t_ij^{-1} = t_ji`.
    pub fn entrywise_inverse(&self) -> Matrix<E> {
        let n = self.size();
        Matrix::from_fn(n, n, |i, j| self.matrix.get(j, i).clone())
    }

    /// Errors with the first entry outside the centre.
    pub fn require_central<R: Ring<Elem = E>>(&self, ring: &R) -> Result<()> {
        let n = self.size();
        for i in 0..n {
            for j in 0..n {
                if !ring.is_central(self.matrix.get(i, j)) {
                    return Err(Error::NonCentral { row: i + 1, col: j + 1 });
                }
            }
        }
        Ok(())
    }

    /// `T^2`, checked against `n T`.
    pub fn square<R: Ring<Elem = E>>(&self, ring: &R) -> Result<Matrix<E>> {
        let sq = self.matrix.mul(ring, &self.matrix)?;
        let n_t = self.matrix.map(|x| ring.mul(&ring.from_int(self.size() as i64), x));
        if sq != n_t {
            return Err(Error::CheckFailed("T^2 != nT".into()));
        }
        Ok(sq)
    }

    /// The `m x m` matrix with constant blocks: entry `(p, q)` is `t_ij` when
    /// `d_{i-1} < p <= d_i` and `d_{j-1} < q <= d_j`. `cuts` lists
    /// `d_1 < ... < d_n = m`; `d_0 = 0` is implicit.
    pub fn blow_up<R: Ring<Elem = E>>(&self, ring: &R, cuts: &[usize]) -> Result<Self> {
        if cuts.len() != self.size() {
            return Err(Error::InvalidCuts(format!("{} cuts for a {}x{} matrix", cuts.len(), self.size(), self.size())));
        }
        let mut prev = 0;
        for &d in cuts {
            if d <= prev {
                return Err(Error::InvalidCuts(format!("cut sequence {cuts:?} is not strictly increasing from 0")));
            }
            prev = d;
        }
        let block: Vec<usize> = (0..prev).map(|p| cuts.iter().position(|&d| p < d).expect("p < d_n")).collect();
        let units: Vec<E> = block.iter().map(|&i| self.units[i].clone()).collect();
        let inverses: Vec<E> = block.iter().map(|&i| self.inverses[i].clone()).collect();
        let matrix = Matrix::from_fn(prev, prev, |p, q| self.matrix.get(block[p], block[q]).clone());
        if !is_transitive(ring, &matrix) {
            return Err(Error::CheckFailed("blow-up is not transitive".into()));
        }
        Ok(TransitiveMatrix { matrix, units, inverses })
    }
}

/// `Some(c)` with `h_i = g_i c` for every `i`, if such a constant exists.
pub fn right_constant<R: Ring>(ring: &R, g: &[R::Elem], h: &[R::Elem]) -> Option<R::Elem> {
    if g.len() != h.len() || g.is_empty() {
        return None;
    }
    let c = ring.mul(&ring.try_invert(&g[0])?, &h[0]);
    g.iter().zip(h).all(|(gi, hi)| ring.mul(gi, &c) == *hi).then_some(c)
}

/// `Theta_T(A) = T * A`; every entry of `T` must be central.
pub fn theta<R: Ring>(ring: &R, t: &TransitiveMatrix<R::Elem>, a: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>> {
    t.require_central(ring)?;
    hadamard(ring, t.matrix(), a)
}

/// `Theta_T^{-1}(A) = S * A` with `S = [t_ij^{-1}]`.
pub fn theta_inverse<R: Ring>(ring: &R, t: &TransitiveMatrix<R::Elem>, a: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>> {
    t.require_central(ring)?;
    hadamard(ring, &t.entrywise_inverse(), a)
}

/// How Hadamard multiplication by a non-transitive matrix fails to be a
/// unital ring endomorphism.
#[derive(Clone, Debug, PartialEq)]
pub enum ThetaFailure<E> {
    /// `T * I != I` at a diagonal entry that is idempotent but not 1, which
    /// no product of matrix units can expose.
    NotUnital { index: usize },
    /// `T * (E_ij E_jk) = t_ik E_ik` differs from
    /// `(T * E_ij)(T * E_jk) = t_ij t_jk E_ik`.
    NotMultiplicative {
        i: usize,
        j: usize,
        k: usize,
        lhs: Matrix<E>,
        rhs: Matrix<E>,
    },
}

/// A witness that `A -> T * A` is not a unital endomorphism, or `None` if
/// `T` is transitive. Indices in the witness are 0-based.
pub fn theta_counterexample<R: Ring>(ring: &R, t: &Matrix<R::Elem>) -> Result<Option<ThetaFailure<R::Elem>>> {
    let n = t.square_size()?;
    let Some((i, j, k)) = transitivity_violation(ring, t)? else {
        return Ok(None);
    };
    if i == j && j == k {
        let tii = t.get(i, i);
        // t_ii t_ii = t_ii for an idempotent diagonal entry, so the unit
        // products cannot separate it; T * I != I does.
        if ring.mul(tii, tii) == *tii {
            let lhs = hadamard(ring, t, &Matrix::identity(ring, n))?;
            debug_assert!(lhs != Matrix::identity(ring, n));
            return Ok(Some(ThetaFailure::NotUnital { index: i }));
        }
    }
    let eij = Matrix::unit(ring, n, i, j);
    let ejk = Matrix::unit(ring, n, j, k);
    let lhs = hadamard(ring, t, &eij.mul(ring, &ejk)?)?;
    let rhs = hadamard(ring, t, &eij)?.mul(ring, &hadamard(ring, t, &ejk)?)?;
    debug_assert!(lhs != rhs);
    Ok(Some(ThetaFailure::NotMultiplicative { i, j, k, lhs, rhs }))
}

/// `delta_n`: `delta` applied entrywise.
pub fn delta_n<R: Ring>(delta: &Endomorphism<R>, a: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    a.map(|x| delta.apply(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::{epsilon, Grassmann};
    use crate::rings::{OracleRing, SampleRing};
    use crate::scalars::CyclotomicField;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q() -> CyclotomicField {
        CyclotomicField::rationals()
    }

    fn p_matrix(f: &CyclotomicField) -> TransitiveMatrix<crate::scalars::Scalar> {
        TransitiveMatrix::powers_of(f, &f.from_int(-1), 2).unwrap()
    }

    fn ints(f: &CyclotomicField, rows: &[&[i64]]) -> Matrix<crate::scalars::Scalar> {
        Matrix::from_rows(f, rows.iter().map(|r| r.iter().map(|&x| f.from_int(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn recognises_transitive_matrices() {
        let f = q();
        let p = p_matrix(&f);
        assert_eq!(p.matrix(), &ints(&f, &[&[1, -1], &[-1, 1]]));
        assert!(is_transitive(&f, p.matrix()));
        assert!(!is_transitive(&f, &ints(&f, &[&[1, 1], &[0, 1]])));
        assert!(is_transitive(&f, TransitiveMatrix::ones(&f, 4).unwrap().matrix()));
        assert!(matches!(
            TransitiveMatrix::certify(&f, ints(&f, &[&[1, 1], &[0, 1]])),
            Err(Error::NotTransitive(_))
        ));
    }

    #[test]
    fn hadamard_products() {
        let f = q();
        let p = p_matrix(&f);
        assert_eq!(hadamard(&f, p.matrix(), p.matrix()).unwrap(), hadamard_identity(&f, 2));
        let a = ints(&f, &[&[1, 2], &[3, 4]]);
        assert_eq!(hadamard(&f, &hadamard_identity(&f, 2), &a).unwrap(), a);
        assert_eq!(hadamard(&f, &a, &Matrix::zeros(&f, 2, 2)).unwrap(), Matrix::zeros(&f, 2, 2));
    }

    #[test]
    fn squares() {
        let f = q();
        assert_eq!(p_matrix(&f).square(&f).unwrap(), ints(&f, &[&[2, -2], &[-2, 2]]));
        let h3 = TransitiveMatrix::ones(&f, 3).unwrap();
        assert_eq!(h3.square(&f).unwrap(), Matrix::from_fn(3, 3, |_, _| f.from_int(3)));
        let one = TransitiveMatrix::ones(&f, 1).unwrap();
        assert_eq!(one.square(&f).unwrap(), Matrix::identity(&f, 1));
    }

    #[test]
    fn factor_round_trip_and_uniqueness() {
        let f = CyclotomicField::new(3).unwrap();
        let u = f.generator();
        let pu = TransitiveMatrix::powers_of(&f, &u, 3).unwrap();
        let g = pu.factor();
        assert_eq!(g, vec![f.one(), u.clone(), f.mul(&u, &u)]);
        let rebuilt = TransitiveMatrix::from_units(&f, &g).unwrap();
        assert_eq!(rebuilt.matrix(), pu.matrix());
        let c = f.from_int(5);
        let h: Vec<_> = g.iter().map(|x| f.mul(x, &c)).collect();
        assert_eq!(right_constant(&f, &g, &h), Some(c));
        assert_eq!(TransitiveMatrix::from_units(&f, &h).unwrap().matrix(), pu.matrix());
        let mut bad = h.clone();
        bad[2] = f.one();
        assert_eq!(right_constant(&f, &g, &bad), None);
        assert!(TransitiveMatrix::from_units(&f, &[f.one(), f.zero()]).is_err());
    }

    #[test]
    fn noncommutative_units() {
        let e = Grassmann::rational(4);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let units: Vec<_> = (0..3).map(|_| e.random_unit(&mut rng)).collect();
            let t = TransitiveMatrix::from_units(&e, &units).unwrap();
            t.square(&e).unwrap();
            let again = TransitiveMatrix::certify(&e, t.matrix().clone()).unwrap();
            let c = right_constant(&e, &units, again.units()).unwrap();
            assert_eq!(e.mul(&units[0], &c), again.units()[0]);
        }
    }

    #[test]
    fn blow_ups() {
        let f = q();
        let p = p_matrix(&f);
        let b = p.blow_up(&f, &[1, 3]).unwrap();
        assert_eq!(b.matrix(), &ints(&f, &[&[1, -1, -1], &[-1, 1, 1], &[-1, 1, 1]]));
        let t = TransitiveMatrix::powers_of(&f, &f.from_int(2), 3).unwrap();
        assert_eq!(t.blow_up(&f, &[1, 2, 3]).unwrap(), t);
        assert!(matches!(p.blow_up(&f, &[2, 2]), Err(Error::InvalidCuts(_))));
        assert!(matches!(p.blow_up(&f, &[0, 2]), Err(Error::InvalidCuts(_))));
        assert!(matches!(p.blow_up(&f, &[3]), Err(Error::InvalidCuts(_))));
        let big = p.blow_up(&f, &[2, 5]).unwrap();
        for r in 0..5 {
            for s in 0..5 {
                let same = (r < 2) == (s < 2);
                assert_eq!(big.get(r, s), &f.from_int(if same { 1 } else { -1 }));
            }
        }
    }

    #[test]
    fn theta_on_symbolic_matrix() {
        let o = OracleRing::new(&["a", "b", "c", "d"]);
        let a = Matrix::from_entries(&o, 2, 2, (0..4).map(|i| o.var(i)).collect()).unwrap();
        let p = TransitiveMatrix::powers_of(&o, &o.from_int(-1), 2).unwrap();
        let th = theta(&o, &p, &a).unwrap();
        let expected = Matrix::from_entries(&o, 2, 2, vec![o.var(0), o.neg(&o.var(1)), o.neg(&o.var(2)), o.var(3)]).unwrap();
        assert_eq!(th, expected);
        assert_eq!(theta_inverse(&o, &p, &th).unwrap(), a);
        let h = TransitiveMatrix::ones(&o, 2).unwrap();
        assert_eq!(theta(&o, &h, &a).unwrap(), a);
    }

    #[test]
    fn theta_needs_central_entries() {
        let e = Grassmann::rational(3);
        let u = e.add(&e.one(), &e.generator(1));
        let t = TransitiveMatrix::from_units(&e, &[e.one(), u]).unwrap();
        let a = Matrix::identity(&e, 2);
        assert!(matches!(theta(&e, &t, &a), Err(Error::NonCentral { .. })));
    }

    #[test]
    fn theta_counterexamples() {
        let f = q();
        let bad = ints(&f, &[&[1, 2], &[3, 1]]);
        match theta_counterexample(&f, &bad).unwrap() {
            Some(ThetaFailure::NotMultiplicative { lhs, rhs, .. }) => assert_ne!(lhs, rhs),
            other => panic!("unexpected {other:?}"),
        }
        let zero_diag = ints(&f, &[&[0, 0], &[0, 0]]);
        assert!(matches!(
            theta_counterexample(&f, &zero_diag).unwrap(),
            Some(ThetaFailure::NotUnital { index: 0 })
        ));
        let two_diag = ints(&f, &[&[2, 1], &[1, 1]]);
        assert!(matches!(
            theta_counterexample(&f, &two_diag).unwrap(),
            Some(ThetaFailure::NotMultiplicative { .. })
        ));
        assert!(theta_counterexample(&f, p_matrix(&f).matrix()).unwrap().is_none());
    }

    #[test]
    fn entrywise_delta() {
        let e = Grassmann::rational(2);
        let eps = epsilon(&e);
        let a = Matrix::from_rows(&e, vec![vec![e.generator(1), e.one()], vec![e.monomial(&[1, 2]), e.generator(2)]]).unwrap();
        let expected = Matrix::from_rows(
            &e,
            vec![vec![e.neg(&e.generator(1)), e.one()], vec![e.monomial(&[1, 2]), e.neg(&e.generator(2))]],
        )
        .unwrap();
        assert_eq!(delta_n(&eps, &a), expected);
        assert_eq!(delta_n(&eps, &Matrix::identity(&e, 2)), Matrix::identity(&e, 2));
    }
}
