//! Supermatrix algebras `M_n(R, delta, T) = {A : delta(a_ij) = t_ij a_ij}`
//! and the embedding `r -> (1/n)[x_ij(r)]` with
//! `x_ij(r) = sum_{k<n} t_ji^k delta^k(r)`.

mod examples;

pub use examples::{example_algebra, sample_supermatrix, ExampleAlgebra, ExampleKind, Shape};

use crate::error::{Error, Result};
use crate::matrices::{delta_n, Matrix, TransitiveMatrix};
use crate::rings::{Endomorphism, Ring};
use crate::scalars::Rational;

/// `(R, delta, T)` with `T` transitive over the centre of `R`.
#[derive(Clone, Debug)]
pub struct SuperAlgebraSpec<R: Ring> {
    ring: R,
    delta: Endomorphism<R>,
    t: TransitiveMatrix<R::Elem>,
}

impl<R: Ring> SuperAlgebraSpec<R> {
    pub fn new(ring: R, delta: Endomorphism<R>, t: TransitiveMatrix<R::Elem>) -> Result<Self> {
        t.require_central(&ring)?;
        Ok(SuperAlgebraSpec { ring, delta, t })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn delta(&self) -> &Endomorphism<R> {
        &self.delta
    }

    pub fn transitive(&self) -> &TransitiveMatrix<R::Elem> {
        &self.t
    }

    pub fn n(&self) -> usize {
        self.t.size()
    }

    fn check_shape(&self, a: &Matrix<R::Elem>) -> Result<()> {
        if a.rows() != self.n() || a.cols() != self.n() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix for an algebra of {}x{} matrices",
                a.rows(),
                a.cols(),
                self.n(),
                self.n()
            )));
        }
        Ok(())
    }

    /// First entry `(i, j)` (0-based) with `delta(a_ij) != t_ij a_ij`.
    pub fn membership_violation(&self, a: &Matrix<R::Elem>) -> Result<Option<(usize, usize)>> {
        self.check_shape(a)?;
        let n = self.n();
        for i in 0..n {
            for j in 0..n {
                let x = a.get(i, j);
                if self.delta.apply(x) != self.ring.mul(self.t.get(i, j), x) {
                    return Ok(Some((i, j)));
                }
            }
        }
        Ok(None)
    }

    pub fn is_supermatrix(&self, a: &Matrix<R::Elem>) -> Result<bool> {
        Ok(self.membership_violation(a)?.is_none())
    }

    /// `A + B`, `AB` and `cA` for each `c` in `scalars`, which must be fixed
    /// by `delta`, are members again.
    pub fn closure_check(&self, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>, scalars: &[R::Elem]) -> Result<ClosureReport> {
        if !self.is_supermatrix(a)? || !self.is_supermatrix(b)? {
            return Err(Error::Precondition("closure check needs two members".into()));
        }
        let mut scaled = true;
        for c in scalars {
            if !self.delta.fixes(c) {
                return Err(Error::Precondition(format!("scalar {c:?} is not fixed by {}", self.delta.name())));
            }
            scaled &= self.is_supermatrix(&a.mul_scalar_left(&self.ring, c))?;
        }
        Ok(ClosureReport {
            sum: self.is_supermatrix(&a.add(&self.ring, b)?)?,
            product: self.is_supermatrix(&a.mul(&self.ring, b)?)?,
            scaled,
        })
    }

    /// Whether every `t_ij` is fixed by `delta`.
    pub fn transitive_entries_fixed(&self) -> bool {
        self.t.matrix().entries().iter().all(|t| self.delta.fixes(t))
    }

    /// `delta_n(A)` is a member; only meaningful when
    /// [`SuperAlgebraSpec::transitive_entries_fixed`] holds.
    pub fn delta_closure_check(&self, a: &Matrix<R::Elem>) -> Result<bool> {
        if !self.transitive_entries_fixed() {
            return Err(Error::Precondition("entries of T are not fixed by delta".into()));
        }
        self.is_supermatrix(&delta_n(&self.delta, a))
    }

    /// `x_ij(r)` for all `i, j`, before the factor `1/n`.
    fn x_matrix(&self, r: &R::Elem) -> Matrix<R::Elem> {
        let n = self.n();
        let ring = &self.ring;
        let iterates: Vec<R::Elem> = std::iter::successors(Some(r.clone()), |x| Some(self.delta.apply(x))).take(n).collect();
        Matrix::from_fn(n, n, |i, j| {
            let tji = self.t.get(j, i);
            let mut acc = ring.zero();
            let mut power = ring.one();
            for d in &iterates {
                ring.add_assign(&mut acc, &ring.mul(&power, d));
                power = ring.mul(&power, tji);
            }
            acc
        })
    }

    /// The embedding `(1/n)[x_ij(r)]`.
    pub fn embed(&self, r: &R::Elem) -> Result<Matrix<R::Elem>> {
        self.ring.check(r)?;
        let inv_n = Rational::new(1, self.n() as i64)?;
        Ok(self.x_matrix(r).scale(&self.ring, &inv_n))
    }

    /// `sum_i x_1i(r)`, which equals `n r` whenever the power sums of the
    /// first column vanish.
    pub fn injectivity_witness(&self, r: &R::Elem) -> Result<R::Elem> {
        self.ring.check(r)?;
        let x = self.x_matrix(r);
        let mut acc = self.ring.zero();
        for i in 0..self.n() {
            self.ring.add_assign(&mut acc, x.get(0, i));
        }
        Ok(acc)
    }

    /// Evaluates every hypothesis of the three embedding regimes. `samples`
    /// is the set on which `delta^n = id` is tested; for a linear `delta`
    /// a basis makes that test exact.
    pub fn embedding_conditions(&self, samples: &[R::Elem]) -> EmbeddingConditionsReport {
        let ring = &self.ring;
        let n = self.n();
        let column: Vec<&R::Elem> = (0..n).map(|i| self.t.get(i, 0)).collect();
        let inverses: Vec<Option<R::Elem>> = column.iter().map(|t| ring.try_invert(t)).collect();
        let units_central = column.iter().all(|t| ring.is_central(t)) && inverses.iter().all(Option::is_some);
        let n_elem = ring.from_int(n as i64);
        let inverse_of_n = Rational::new(1, n as i64).is_ok_and(|q| ring.is_one(&ring.mul(&n_elem, &ring.from_rational(&q))));
        let nth_powers: Vec<R::Elem> = column.iter().map(|t| ring.pow(t, n)).collect();
        let nth_powers_one = nth_powers.iter().all(|p| ring.is_one(p));
        let equal_nth_powers = nth_powers.windows(2).all(|w| w[0] == w[1]);

        let mut nzd = Some(true);
        'outer: for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                match ring.is_non_zero_divisor(&ring.sub(&ring.one(), self.t.get(i, j))) {
                    Some(true) => {}
                    Some(false) => {
                        nzd = Some(false);
                        break 'outer;
                    }
                    None => nzd = None,
                }
            }
        }

        let power_sum = |k: usize, inverse: bool| -> Option<bool> {
            let mut acc = ring.zero();
            for (t, inv) in column.iter().zip(&inverses) {
                let base = if inverse { inv.as_ref()? } else { *t };
                ring.add_assign(&mut acc, &ring.pow(base, k));
            }
            Some(ring.is_zero(&acc))
        };
        let power_sums = (1..n).all(|k| power_sum(k, false) == Some(true));
        let inverse_power_sums = (1..n).all(|k| power_sum(k, true) == Some(true));
        let power_sum_implication = equal_nth_powers.then_some(!power_sums || inverse_power_sums);

        let fixed_by_delta = column.iter().all(|t| self.delta.fixes(t));
        let delta_power_identity = self.delta.power_is_identity_on(n, samples);

        EmbeddingConditionsReport {
            n,
            units_central,
            inverse_of_n,
            nth_powers_one,
            non_zero_divisors: nzd,
            power_sums,
            inverse_power_sums,
            equal_nth_powers,
            power_sum_implication,
            fixed_by_delta,
            delta_power_identity,
        }
    }

    /// Checks the embedding laws on `pairs`. Requires the second regime;
    /// membership of the image is asserted in the third regime and only
    /// recorded otherwise.
    pub fn verify_embedding(&self, pairs: &[(R::Elem, R::Elem)], conditions: &EmbeddingConditionsReport) -> Result<EmbeddingVerification> {
        if !conditions.regime2() {
            return Err(Error::Precondition("the power-sum conditions of the ring embedding do not hold".into()));
        }
        let ring = &self.ring;
        let regime3 = conditions.regime3();
        let mut membership_outside = Some(true);
        let n_elem = ring.from_int(self.n() as i64);
        let fail = |msg: String| {
            Ok(EmbeddingVerification {
                pairs: pairs.len(),
                regime3,
                failure: Some(msg),
                membership_outside_regime3: None,
            })
        };
        for (idx, (r, s)) in pairs.iter().enumerate() {
            let (er, es) = (self.embed(r)?, self.embed(s)?);
            if self.embed(&ring.add(r, s))? != er.add(ring, &es)? {
                return fail(format!("additivity fails on pair {idx}"));
            }
            if self.embed(&ring.mul(r, s))? != er.mul(ring, &es)? {
                return fail(format!("multiplicativity fails on pair {idx}"));
            }
            for (x, ex) in [(r, &er), (s, &es)] {
                if self.injectivity_witness(x)? != ring.mul(&n_elem, x) {
                    return fail(format!("row-sum witness differs from n r on pair {idx}"));
                }
                if ex.is_zero(ring) != ring.is_zero(x) {
                    return fail(format!("embedding maps a nonzero element of pair {idx} to zero"));
                }
                let member = self.is_supermatrix(ex)?;
                if regime3 && !member {
                    return fail(format!("image of pair {idx} is not a supermatrix"));
                }
                if !member {
                    membership_outside = Some(false);
                }
            }
        }
        Ok(EmbeddingVerification {
            pairs: pairs.len(),
            regime3,
            failure: None,
            membership_outside_regime3: if regime3 { None } else { membership_outside },
        })
    }

    /// In the first regime the embedding of a fixed element is `r I_n`.
    pub fn scalar_on_fixed(&self, samples: &[R::Elem]) -> Result<bool> {
        for r in samples.iter().filter(|r| self.delta.fixes(r)) {
            if self.embed(r)? != Matrix::scalar(&self.ring, self.n(), r.clone()) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    pub sum: bool,
    pub product: bool,
    pub scaled: bool,
}

impl ClosureReport {
    pub fn all(&self) -> bool {
        self.sum && self.product && self.scaled
    }
}

/// Exact outcome of every embedding hypothesis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingConditionsReport {
    pub n: usize,
    /// `t_i1` is a central unit for every `i`.
    pub units_central: bool,
    /// `1/n` exists in the ring.
    pub inverse_of_n: bool,
    /// `t_i1^n = 1` for every `i`.
    pub nth_powers_one: bool,
    /// `1 - t_ij` is a non-zero divisor for `i != j`; `None` when the ring
    /// cannot decide.
    pub non_zero_divisors: Option<bool>,
    /// `sum_i t_i1^k = 0` for `1 <= k < n`.
    pub power_sums: bool,
    /// `sum_i t_i1^{-k} = 0` for `1 <= k < n`.
    pub inverse_power_sums: bool,
    /// All `t_i1^n` coincide.
    pub equal_nth_powers: bool,
    /// When the `n`-th powers coincide, whether the vanishing power sums
    /// implied the vanishing inverse power sums (`None` otherwise).
    pub power_sum_implication: Option<bool>,
    /// Every `t_i1` is fixed by `delta`.
    pub fixed_by_delta: bool,
    /// `delta^n` fixed every sample.
    pub delta_power_identity: bool,
}

impl EmbeddingConditionsReport {
    /// Fixed elements embed as scalar matrices.
    pub fn regime1(&self) -> bool {
        self.units_central && self.inverse_of_n && self.nth_powers_one && self.non_zero_divisors == Some(true)
    }

    /// The embedding is an injective ring homomorphism.
    pub fn regime2(&self) -> bool {
        self.units_central && self.inverse_of_n && self.power_sums && self.inverse_power_sums
    }

    /// The embedding lands in the supermatrix algebra.
    pub fn regime3(&self) -> bool {
        self.regime2() && self.fixed_by_delta && self.nth_powers_one && self.delta_power_identity
    }

    pub fn all_true(&self) -> bool {
        self.units_central
            && self.inverse_of_n
            && self.nth_powers_one
            && self.non_zero_divisors == Some(true)
            && self.power_sums
            && self.inverse_power_sums
            && self.equal_nth_powers
            && self.power_sum_implication != Some(false)
            && self.fixed_by_delta
            && self.delta_power_identity
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingVerification {
    pub pairs: usize,
    pub regime3: bool,
    /// First failing law, if any.
    pub failure: Option<String>,
    /// Outside the third regime: whether every image happened to be a member.
    pub membership_outside_regime3: Option<bool>,
}

impl EmbeddingVerification {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}
