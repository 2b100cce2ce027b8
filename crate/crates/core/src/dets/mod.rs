//! Symmetric determinants, preadjoints and the right/left determinant
//! sequences of matrices over a possibly noncommutative ring.
//!
//! `sdet(A) = sum_{a, b in S_n} sgn(a) sgn(b) a_{a(1) b(1)} ... a_{a(n) b(n)}`
//! with the factors multiplied in position order. The preadjoint entry
//! `(r, s)` is the same sum restricted to `a(s) = s`, `b(s) = r` with the
//! factor at position `s` left out.

mod charpoly;

pub use charpoly::{
    cayley_hamilton_check, cayley_hamilton_residual, charpoly, integrality_certificate, leading_coefficient_closed_form, ChReport, CharPoly,
    IntegralityCertificate, IntegralitySide, Side,
};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrices::Matrix;
use crate::perm::{sign, Permutations};
use crate::rings::Ring;

/// Default limit on the matrix size for permutation sums.
pub const DEFAULT_MAX_N: usize = 5;
/// Limit that no configuration can raise.
pub const HARD_MAX_N: usize = 6;
/// Limit on the length of adjoint sequences.
pub const MAX_K: usize = 2;

/// The active size cap: `LIENIL_MAX_N` if set and valid, clamped to
/// [`HARD_MAX_N`], else [`DEFAULT_MAX_N`].
pub fn max_n() -> usize {
    std::env::var("LIENIL_MAX_N")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .map_or(DEFAULT_MAX_N, |n| n.min(HARD_MAX_N))
}

fn check_n(n: usize) -> Result<()> {
    let cap = max_n();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "matrix size",
            got: n,
            cap,
        });
    }
    Ok(())
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    if k > MAX_K {
        return Err(Error::CapExceeded { what: "k", got: k, cap: MAX_K });
    }
    Ok(())
}

/// Permutations `a` of `0..n` with `a(s) = s` when `s` is given, with signs.
fn row_permutations(n: usize, fixed: Option<usize>) -> Vec<(Vec<usize>, i8)> {
    match fixed {
        None => Permutations::new(n).collect(),
        Some(s) => {
            let others: Vec<usize> = (0..n).filter(|&v| v != s).collect();
            Permutations::new(n - 1)
                .map(|(p, _)| {
                    let mut full: Vec<usize> = p.iter().map(|&i| others[i]).collect();
                    full.insert(s, s);
                    let sg = sign(&full);
                    (full, sg)
                })
                .collect()
        }
    }
}

/// Sums `sgn(b) prod_t a_{rows[t], b(t)}` over the permutations `b` with
/// `b(s) = r` when `skip = Some((s, r))`, leaving out position `s`. Walks
/// `b` depth first, sharing prefix products and dropping every extension of
/// a vanishing prefix. The sign is tracked by counting inversions.
struct ColumnSum<'a, R: Ring> {
    ring: &'a R,
    a: &'a Matrix<R::Elem>,
    rows: &'a [usize],
    skip: Option<(usize, usize)>,
    n: usize,
}

impl<R: Ring> ColumnSum<'_, R> {
    fn run(&self) -> R::Elem {
        let mut acc = self.ring.zero();
        self.walk(0, 0u64, None, false, &mut acc);
        acc
    }

    fn walk(&self, t: usize, used: u64, prefix: Option<&R::Elem>, odd: bool, acc: &mut R::Elem) {
        if t == self.n {
            let term = prefix.cloned().unwrap_or_else(|| self.ring.one());
            if odd {
                *acc = self.ring.sub(acc, &term);
            } else {
                self.ring.add_assign(acc, &term);
            }
            return;
        }
        let inversions = |j: usize| (used >> (j + 1)).count_ones() % 2 == 1;
        match self.skip {
            Some((s, r)) if s == t => self.walk(t + 1, used | 1 << r, prefix, odd ^ inversions(r), acc),
            _ => {
                let forbidden = self.skip.map_or(0, |(_, r)| 1u64 << r);
                for j in 0..self.n {
                    if (used | forbidden) >> j & 1 == 1 {
                        continue;
                    }
                    let x = self.a.get(self.rows[t], j);
                    if self.ring.is_zero(x) {
                        continue;
                    }
                    let next = match prefix {
                        Some(p) => self.ring.mul(p, x),
                        None => x.clone(),
                    };
                    if self.ring.is_zero(&next) {
                        continue;
                    }
                    self.walk(t + 1, used | 1 << j, Some(&next), odd ^ inversions(j), acc);
                }
            }
        }
    }
}

/// `sum_a sgn(a) sum_b sgn(b) prod_{t != s} a_{a(t) b(t)}`, with `a(s) = s`
/// and `b(s) = r` when `skip = Some((s, r))`. The outer sum is evaluated in
/// parallel and reduced in permutation order.
fn double_sum<R: Ring>(ring: &R, a: &Matrix<R::Elem>, skip: Option<(usize, usize)>) -> R::Elem {
    let n = a.rows();
    let outer = row_permutations(n, skip.map(|(s, _)| s));
    let parts: Vec<R::Elem> = outer
        .par_iter()
        .map(|(rows, sg)| {
            let inner = ColumnSum { ring, a, rows, skip, n }.run();
            if *sg < 0 {
                ring.neg(&inner)
            } else {
                inner
            }
        })
        .collect();
    let mut acc = ring.zero();
    for p in &parts {
        ring.add_assign(&mut acc, p);
    }
    acc
}

/// The symmetric determinant.
pub fn sdet<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> Result<R::Elem> {
    let n = a.square_size()?;
    check_n(n)?;
    Ok(double_sum(ring, a, None))
}

/// `sum_{t, p in S_n} sgn(p) a_{t(1), p(t(1))} ... a_{t(n), p(t(n))}`, the
/// symmetric determinant written with a row permutation and a column
/// permutation composed with it; evaluated term by term.
pub fn sdet_composed_form<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> Result<R::Elem> {
    let n = a.square_size()?;
    check_n(n)?;
    let perms: Vec<(Vec<usize>, i8)> = Permutations::new(n).collect();
    let mut acc = ring.zero();
    for (tau, _) in &perms {
        for (pi, sg) in &perms {
            let mut prod = ring.one();
            for t in 0..n {
                prod = ring.mul(&prod, a.get(tau[t], pi[tau[t]]));
            }
            if *sg < 0 {
                prod = ring.neg(&prod);
            }
            ring.add_assign(&mut acc, &prod);
        }
    }
    Ok(acc)
}

/// The preadjoint `A*`; entries are computed in parallel.
pub fn preadjoint<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>> {
    let n = a.square_size()?;
    check_n(n)?;
    let entries: Vec<R::Elem> = (0..n * n).into_par_iter().map(|idx| double_sum(ring, a, Some((idx % n, idx / n)))).collect();
    Matrix::from_entries(ring, n, n, entries)
}

/// `A*` entry by entry as `(-1)^{r+s} sdet(A_{s,r})`, where `A_{s,r}` drops
/// row `s` and column `r`. Independent of [`preadjoint`].
pub fn preadjoint_by_minors<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>> {
    let n = a.square_size()?;
    check_n(n)?;
    if n == 1 {
        return Ok(Matrix::identity(ring, 1));
    }
    let mut entries = Vec::with_capacity(n * n);
    for r in 0..n {
        for s in 0..n {
            let d = sdet(ring, &a.minor(s, r)?)?;
            entries.push(if (r + s) % 2 == 1 { ring.neg(&d) } else { d });
        }
    }
    Matrix::from_entries(ring, n, n, entries)
}

/// `P_1 = A*, P_{j+1} = (A P_1 ... P_j)*` (right) or
/// `Q_1 = A*, Q_{j+1} = (Q_j ... Q_1 A)*` (left), with the running products
/// `A P_1 ... P_j` (resp. `Q_j ... Q_1 A`).
#[derive(Clone, Debug, PartialEq)]
pub struct AdjointSequence<E> {
    pub side: Side,
    pub adjoints: Vec<Matrix<E>>,
    pub products: Vec<Matrix<E>>,
}

pub fn adjoint_sequence<R: Ring>(ring: &R, a: &Matrix<R::Elem>, k: usize, side: Side) -> Result<AdjointSequence<R::Elem>> {
    check_k(k)?;
    a.square_size()?;
    let mut adjoints = Vec::with_capacity(k);
    let mut products = Vec::with_capacity(k);
    let mut current = a.clone();
    for _ in 0..k {
        let adj = preadjoint(ring, &current)?;
        current = match side {
            Side::Right => current.mul(ring, &adj)?,
            Side::Left => adj.mul(ring, &current)?,
        };
        adjoints.push(adj);
        products.push(current.clone());
    }
    Ok(AdjointSequence { side, adjoints, products })
}

pub fn right_adjoint_sequence<R: Ring>(ring: &R, a: &Matrix<R::Elem>, k: usize) -> Result<AdjointSequence<R::Elem>> {
    adjoint_sequence(ring, a, k, Side::Right)
}

pub fn left_adjoint_sequence<R: Ring>(ring: &R, a: &Matrix<R::Elem>, k: usize) -> Result<AdjointSequence<R::Elem>> {
    adjoint_sequence(ring, a, k, Side::Left)
}

/// `tr(A P_1 ... P_k)` or `tr(Q_k ... Q_1 A)`.
pub fn side_det<R: Ring>(ring: &R, a: &Matrix<R::Elem>, k: usize, side: Side) -> Result<R::Elem> {
    let seq = adjoint_sequence(ring, a, k, side)?;
    seq.products.last().expect("k >= 1").trace(ring)
}

/// The `k`-th right determinant.
pub fn rdet<R: Ring>(ring: &R, a: &Matrix<R::Elem>, k: usize) -> Result<R::Elem> {
    side_det(ring, a, k, Side::Right)
}

/// The `k`-th left determinant.
pub fn ldet<R: Ring>(ring: &R, a: &Matrix<R::Elem>, k: usize) -> Result<R::Elem> {
    side_det(ring, a, k, Side::Left)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::Grassmann;
    use crate::perm::factorial;
    use crate::rings::{classical_adjugate, classical_det, OracleRing, SampleRing};
    use crate::scalars::Rational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(e: &Grassmann, n: usize, rng: &mut ChaCha8Rng) -> Matrix<crate::grassmann::GrassmannElement> {
        Matrix::from_fn(n, n, |_, _| e.random_element(rng))
    }

    #[test]
    fn two_by_two_noncommutative() {
        let e = Grassmann::rational(4);
        let (a, b, c, d) = (e.generator(1), e.generator(2), e.generator(3), e.generator(4));
        let m = Matrix::from_rows(&e, vec![vec![a.clone(), b.clone()], vec![c.clone(), d.clone()]]).unwrap();
        let expected = e.sub(&e.add(&e.mul(&a, &d), &e.mul(&d, &a)), &e.add(&e.mul(&b, &c), &e.mul(&c, &b)));
        assert_eq!(sdet(&e, &m).unwrap(), expected);
        let adj = preadjoint(&e, &m).unwrap();
        assert_eq!(
            adj,
            Matrix::from_rows(&e, vec![vec![d.clone(), e.neg(&b)], vec![e.neg(&c), a.clone()]]).unwrap()
        );
        assert_eq!(sdet(&e, &Matrix::from_rows(&e, vec![vec![a.clone()]]).unwrap()).unwrap(), a);
    }

    #[test]
    fn commutative_collapse() {
        for n in 1..=4 {
            let o = OracleRing::matrix_variables(n);
            let a = o.symbolic_matrix(n).unwrap();
            let nf = Rational::from_int(factorial(n) as i64);
            assert_eq!(sdet(&o, &a).unwrap(), o.scale(&classical_det(&o, &a).unwrap(), &nf), "n = {n}");
            let n1f = Rational::from_int(factorial(n - 1) as i64);
            assert_eq!(preadjoint(&o, &a).unwrap(), classical_adjugate(&o, &a).unwrap().scale(&o, &n1f), "n = {n}");
        }
    }

    #[test]
    fn preadjoint_of_identity() {
        let f = crate::scalars::CyclotomicField::rationals();
        for n in 1..=4 {
            let i = Matrix::identity(&f, n);
            let expected = Matrix::scalar(&f, n, f.from_int(factorial(n - 1) as i64));
            assert_eq!(preadjoint(&f, &i).unwrap(), expected);
        }
    }

    #[test]
    fn minors_and_forms_agree() {
        let e = Grassmann::rational(6);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 1..=4 {
            for _ in 0..4 {
                let a = random_matrix(&e, n, &mut rng);
                assert_eq!(preadjoint(&e, &a).unwrap(), preadjoint_by_minors(&e, &a).unwrap());
                let s = sdet(&e, &a).unwrap();
                assert_eq!(s, sdet_composed_form(&e, &a).unwrap());
                let adj = preadjoint(&e, &a).unwrap();
                assert_eq!(a.mul(&e, &adj).unwrap().trace(&e).unwrap(), s);
                assert_eq!(adj.mul(&e, &a).unwrap().trace(&e).unwrap(), s);
            }
        }
    }

    #[test]
    fn recursion_laws() {
        let e = Grassmann::rational(5);
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for n in 1..=3 {
            let a = random_matrix(&e, n, &mut rng);
            let adj = preadjoint(&e, &a).unwrap();
            assert_eq!(rdet(&e, &a, 1).unwrap(), sdet(&e, &a).unwrap());
            assert_eq!(ldet(&e, &a, 1).unwrap(), sdet(&e, &a).unwrap());
            assert_eq!(rdet(&e, &a, 2).unwrap(), rdet(&e, &a.mul(&e, &adj).unwrap(), 1).unwrap());
            assert_eq!(ldet(&e, &a, 2).unwrap(), ldet(&e, &adj.mul(&e, &a).unwrap(), 1).unwrap());
        }
    }

    #[test]
    fn second_adjoint_over_oracle() {
        let o = OracleRing::matrix_variables(2);
        let a = o.symbolic_matrix(2).unwrap();
        let seq = right_adjoint_sequence(&o, &a, 2).unwrap();
        let det = classical_det(&o, &a).unwrap();
        assert_eq!(seq.adjoints[0], preadjoint(&o, &a).unwrap());
        assert_eq!(seq.adjoints[1], Matrix::scalar(&o, 2, det.clone()));
        let left = left_adjoint_sequence(&o, &a, 1).unwrap();
        assert_eq!(left.adjoints[0], seq.adjoints[0]);
        assert_eq!(rdet(&o, &a, 2).unwrap(), o.scale(&o.mul(&det, &det), &Rational::from_int(2)));
    }

    #[test]
    fn one_by_one_determinants() {
        let e = Grassmann::rational(3);
        let a = Matrix::from_rows(&e, vec![vec![e.add(&e.from_int(2), &e.generator(1))]]).unwrap();
        for k in 1..=2 {
            assert_eq!(rdet(&e, &a, k).unwrap(), *a.get(0, 0));
            assert_eq!(ldet(&e, &a, k).unwrap(), *a.get(0, 0));
        }
    }

    #[test]
    fn caps() {
        let f = crate::scalars::CyclotomicField::rationals();
        let big = Matrix::identity(&f, HARD_MAX_N + 1);
        assert!(matches!(sdet(&f, &big), Err(Error::CapExceeded { .. })));
        let a = Matrix::identity(&f, 2);
        assert!(matches!(rdet(&f, &a, 3), Err(Error::CapExceeded { what: "k", .. })));
        assert!(rdet(&f, &a, 0).is_err());
    }
}
