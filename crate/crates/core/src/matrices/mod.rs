//! Dense matrices over a ring context, and the matrix ring `M_n(R)`.

mod transitive;

pub use transitive::{
    delta_n, hadamard, hadamard_identity, is_transitive, right_constant, theta, theta_counterexample, theta_inverse, transitivity_violation, ThetaFailure,
    TransitiveMatrix,
};

use crate::error::{Error, Result};
use crate::rings::Ring;
use crate::scalars::Rational;

/// Row-major `rows x cols` matrix. Arithmetic goes through the owning ring,
/// with entry products taken in row-times-column order.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    entries: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    /// Checked constructor: entry count and ring membership are verified.
    pub fn from_entries<R: Ring<Elem = E>>(ring: &R, rows: usize, cols: usize, entries: Vec<E>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch("matrices must have at least one row and column".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        for x in &entries {
            ring.check(x)?;
        }
        Ok(Matrix { rows, cols, entries })
    }

    pub fn from_rows<R: Ring<Elem = E>>(ring: &R, rows: Vec<Vec<E>>) -> Result<Self> {
        let (r, c) = (rows.len(), rows.first().map_or(0, Vec::len));
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("rows of unequal length".into()));
        }
        Matrix::from_entries(ring, r, c, rows.into_iter().flatten().collect())
    }

    /// Unchecked constructor for entries produced by ring operations.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix { rows, cols, entries }
    }

    pub fn zeros<R: Ring<Elem = E>>(ring: &R, rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| ring.zero())
    }

    pub fn identity<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        Matrix::scalar(ring, n, ring.one())
    }

    /// `c I_n`
    pub fn scalar<R: Ring<Elem = E>>(ring: &R, n: usize, c: E) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { c.clone() } else { ring.zero() })
    }

    /// The matrix unit `E_{i,j}` (0-based).
    pub fn unit<R: Ring<Elem = E>>(ring: &R, n: usize, i: usize, j: usize) -> Self {
        Matrix::from_fn(n, n, |a, b| if (a, b) == (i, j) { ring.one() } else { ring.zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn square_size(&self) -> Result<usize> {
        if self.rows == self.cols {
            Ok(self.rows)
        } else {
            Err(Error::DimensionMismatch(format!("expected a square matrix, got {}x{}", self.rows, self.cols)))
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[E] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<E> {
        self.entries
    }

    pub fn map<F: Clone>(&self, f: impl FnMut(&E) -> F) -> Matrix<F> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if (self.rows, self.cols) == (other.rows, other.cols) {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )))
        }
    }

    /// Entrywise combination of two matrices of equal shape.
    pub fn zip_with(&self, other: &Self, mut f: impl FnMut(&E, &E) -> E) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| ring.add(a, b))
    }

    pub fn sub<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| ring.sub(a, b))
    }

    pub fn neg<R: Ring<Elem = E>>(&self, ring: &R) -> Self {
        self.map(|a| ring.neg(a))
    }

    pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = ring.zero();
            for l in 0..self.cols {
                let (a, b) = (self.get(i, l), other.get(l, j));
                if !ring.is_zero(a) && !ring.is_zero(b) {
                    ring.add_assign(&mut acc, &ring.mul(a, b));
                }
            }
            acc
        }))
    }

    /// `A c`: every entry multiplied by `c` on the right.
    pub fn mul_scalar_right<R: Ring<Elem = E>>(&self, ring: &R, c: &E) -> Self {
        self.map(|a| ring.mul(a, c))
    }

    /// `c A`
    pub fn mul_scalar_left<R: Ring<Elem = E>>(&self, ring: &R, c: &E) -> Self {
        self.map(|a| ring.mul(c, a))
    }

    pub fn scale<R: Ring<Elem = E>>(&self, ring: &R, q: &Rational) -> Self {
        self.map(|a| ring.scale(a, q))
    }

    pub fn trace<R: Ring<Elem = E>>(&self, ring: &R) -> Result<E> {
        let n = self.square_size()?;
        let mut acc = ring.zero();
        for i in 0..n {
            ring.add_assign(&mut acc, self.get(i, i));
        }
        Ok(acc)
    }

    /// The matrix with row `row` and column `col` deleted (0-based).
    pub fn minor(&self, row: usize, col: usize) -> Result<Self> {
        if self.rows < 2 || self.cols < 2 || row >= self.rows || col >= self.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot delete row {row} and column {col} of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let entries = (0..self.rows)
            .filter(|&i| i != row)
            .flat_map(|i| (0..self.cols).filter(move |&j| j != col).map(move |j| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        Ok(Matrix {
            rows: self.rows - 1,
            cols: self.cols - 1,
            entries,
        })
    }

    pub fn pow<R: Ring<Elem = E>>(&self, ring: &R, e: usize) -> Result<Self> {
        let n = self.square_size()?;
        let mut acc = Matrix::identity(ring, n);
        for _ in 0..e {
            acc = acc.mul(ring, self)?;
        }
        Ok(acc)
    }

    pub fn is_zero<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        self.entries.iter().all(|a| ring.is_zero(a))
    }
}

/// The ring `M_n(R)`.
#[derive(Clone, Debug)]
pub struct MatrixRing<R: Ring> {
    base: R,
    n: usize,
}

impl<R: Ring> MatrixRing<R> {
    pub fn new(base: R, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("matrix size must be positive".into()));
        }
        Ok(MatrixRing { base, n })
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn size(&self) -> usize {
        self.n
    }
}

impl<R: Ring> Ring for MatrixRing<R> {
    type Elem = Matrix<R::Elem>;

    fn describe(&self) -> String {
        format!("M_{}({})", self.n, self.base.describe())
    }

    fn zero(&self) -> Self::Elem {
        Matrix::zeros(&self.base, self.n, self.n)
    }

    fn one(&self) -> Self::Elem {
        Matrix::identity(&self.base, self.n)
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.add(&self.base, b).expect("shapes fixed by the context")
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.neg(&self.base)
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.mul(&self.base, b).expect("shapes fixed by the context")
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero(&self.base)
    }

    fn from_rational(&self, q: &Rational) -> Self::Elem {
        Matrix::scalar(&self.base, self.n, self.base.from_rational(q))
    }

    fn contains(&self, a: &Self::Elem) -> bool {
        a.rows == self.n && a.cols == self.n && a.entries.iter().all(|x| self.base.contains(x))
    }

    /// The centre of `M_n(R)` is `Z(R) I_n`.
    fn is_central(&self, a: &Self::Elem) -> bool {
        let c = a.get(0, 0);
        self.base.is_central(c) && *a == Matrix::scalar(&self.base, self.n, c.clone())
    }

    /// Diagonal matrices with invertible diagonal entries.
    fn try_invert(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let n = self.n;
        let diagonal = (0..n).all(|i| (0..n).all(|j| i == j || self.base.is_zero(a.get(i, j))));
        if !diagonal {
            return None;
        }
        let inv: Vec<R::Elem> = (0..n).map(|i| self.base.try_invert(a.get(i, i))).collect::<Option<_>>()?;
        Some(Matrix::from_fn(n, n, |i, j| if i == j { inv[i].clone() } else { self.base.zero() }))
    }

    /// For `n >= 2`, `[... [[E12, E21], E12], ..., E12] = +-2^m E12` never
    /// vanishes in characteristic zero.
    fn lie_nilpotent_of_index(&self, k: usize) -> Option<bool> {
        if self.n == 1 {
            self.base.lie_nilpotent_of_index(k)
        } else {
            Some(false)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::Grassmann;
    use crate::rings::{is_lie_nilpotent_index, MPoly, OracleRing};

    fn abcd() -> (OracleRing, Matrix<MPoly>) {
        let o = OracleRing::new(&["a", "b", "c", "d"]);
        let m = Matrix::from_entries(&o, 2, 2, (0..4).map(|i| o.var(i)).collect()).unwrap();
        (o, m)
    }

    #[test]
    fn basic_operations() {
        let (o, a) = abcd();
        let i = Matrix::identity(&o, 2);
        assert_eq!(i.mul(&o, &a).unwrap(), a);
        assert_eq!(a.trace(&o).unwrap(), o.add(&o.var(0), &o.var(3)));
        let m = a.minor(1, 0).unwrap();
        assert_eq!(m.entries(), &[o.var(1)]);
        assert!(a.minor(2, 0).is_err());
        assert!(Matrix::from_entries(&o, 2, 2, vec![o.one()]).is_err());
        assert_eq!(a.sub(&o, &a).unwrap(), Matrix::zeros(&o, 2, 2));
    }

    #[test]
    fn noncommutative_product_order() {
        let e = Grassmann::rational(4);
        let a = Matrix::from_rows(&e, vec![vec![e.generator(1), e.zero()], vec![e.zero(), e.one()]]).unwrap();
        let b = Matrix::from_rows(&e, vec![vec![e.generator(2), e.zero()], vec![e.zero(), e.one()]]).unwrap();
        let ab = a.mul(&e, &b).unwrap();
        let ba = b.mul(&e, &a).unwrap();
        assert_eq!(ab.get(0, 0), &e.monomial(&[1, 2]));
        assert_eq!(ba.get(0, 0), &e.neg(&e.monomial(&[1, 2])));
        let v3 = e.generator(3);
        assert_eq!(a.mul_scalar_right(&e, &v3).get(0, 0), &e.monomial(&[1, 3]));
        assert_eq!(a.mul_scalar_left(&e, &v3).get(0, 0), &e.monomial(&[3, 1]));
    }

    #[test]
    fn matrix_ring_context() {
        let (o, a) = abcd();
        let m2 = MatrixRing::new(o.clone(), 2).unwrap();
        assert!(m2.is_central(&m2.from_int(3)));
        assert!(!m2.is_central(&a));
        let d = Matrix::scalar(&o, 2, o.from_int(2));
        assert_eq!(m2.mul(&d, &m2.try_invert(&d).unwrap()), m2.one());
        // [[E12, E21], E12] = 2 E12
        let (e12, e21) = (Matrix::unit(&o, 2, 0, 1), Matrix::unit(&o, 2, 1, 0));
        assert!(!is_lie_nilpotent_index(&m2, 2, &[vec![e12.clone(), e21, e12]]).unwrap());
        assert_eq!(m2.lie_nilpotent_of_index(2), Some(false));
    }
}
