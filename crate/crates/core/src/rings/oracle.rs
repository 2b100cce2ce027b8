//! Commutative multivariate polynomials over `Q`, used as an independent
//! oracle: over a commutative ring the symmetric determinant and the
//! preadjoint must collapse to scaled classical determinants and adjugates.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::Rng;

use super::{Ring, SampleRing};
use crate::error::{Error, Result};
use crate::matrices::Matrix;
use crate::perm::Permutations;
use crate::scalars::Rational;

/// Sparse polynomial: exponent vector (one entry per variable) to coefficient.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MPoly {
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MPoly {
    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().map(|(k, v)| (k, v.to_string()))).finish()
    }
}

/// `Q[x_1, ..., x_m]` with named variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleRing {
    vars: Arc<Vec<String>>,
}

impl OracleRing {
    pub fn new<S: AsRef<str>>(vars: &[S]) -> Self {
        OracleRing {
            vars: Arc::new(vars.iter().map(|v| v.as_ref().to_string()).collect()),
        }
    }

    /// Variables `x11, x12, ..., xnn` for a fully symbolic `n x n` matrix.
    pub fn matrix_variables(n: usize) -> Self {
        let names: Vec<String> = (1..=n).flat_map(|i| (1..=n).map(move |j| format!("x{i}{j}"))).collect();
        OracleRing::new(&names)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// The `i`-th variable as a polynomial.
    pub fn var(&self, i: usize) -> MPoly {
        let mut exps = vec![0; self.vars.len()];
        exps[i] = 1;
        MPoly {
            terms: BTreeMap::from([(exps, Rational::one())]),
        }
    }

    pub fn term(&self, exps: Vec<u32>, c: Rational) -> Result<MPoly> {
        if exps.len() != self.vars.len() {
            return Err(Error::ContextMismatch(self.describe()));
        }
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Ok(MPoly { terms })
    }

    /// The `n x n` matrix whose `(i, j)` entry is the variable `x{i+1}{j+1}`;
    /// the ring must come from [`OracleRing::matrix_variables`].
    pub fn symbolic_matrix(&self, n: usize) -> Result<Matrix<MPoly>> {
        let entries = (1..=n)
            .flat_map(|i| (1..=n).map(move |j| format!("x{i}{j}")))
            .map(|name| {
                self.var_index(&name)
                    .map(|k| self.var(k))
                    .ok_or_else(|| Error::InvalidParameter(format!("missing variable {name}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_entries(self, n, n, entries)
    }

    /// Human-readable form such as `x11*x22 - 3/2*x12^2`, terms in
    /// lexicographic order.
    pub fn format(&self, p: &MPoly) -> String {
        if p.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (exps, c)) in p.terms.iter().rev().enumerate() {
            let mono = self.monomial_key(exps);
            let neg = c.signum() < 0;
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => out.push_str(&abs.to_string()),
                (false, true) => out.push_str(&mono),
                (false, false) => out.push_str(&format!("{abs}*{mono}")),
            }
        }
        out
    }

    /// Monomial key `a^2*b`; empty for the constant monomial.
    pub fn monomial_key(&self, exps: &[u32]) -> String {
        exps.iter()
            .zip(self.vars.iter())
            .filter(|(e, _)| **e > 0)
            .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
            .collect::<Vec<_>>()
            .join("*")
    }

    pub fn parse_monomial_key(&self, key: &str) -> Result<Vec<u32>> {
        let mut exps = vec![0u32; self.vars.len()];
        for factor in key.split('*').map(str::trim).filter(|f| !f.is_empty()) {
            let (name, e) = match factor.split_once('^') {
                Some((n, e)) => (
                    n.trim(),
                    e.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?,
                ),
                None => (factor, 1),
            };
            let i = self.var_index(name).ok_or_else(|| Error::Parse(format!("unknown variable `{name}`")))?;
            exps[i] += e;
        }
        Ok(exps)
    }
}

impl Ring for OracleRing {
    type Elem = MPoly;

    fn describe(&self) -> String {
        format!("Q[{}]", self.vars.join(","))
    }

    fn zero(&self) -> MPoly {
        MPoly::default()
    }

    fn one(&self) -> MPoly {
        self.from_rational(&Rational::one())
    }

    fn add(&self, a: &MPoly, b: &MPoly) -> MPoly {
        let mut out = a.clone();
        self.add_assign(&mut out, b);
        out
    }

    fn add_assign(&self, acc: &mut MPoly, b: &MPoly) {
        for (k, c) in &b.terms {
            match acc.terms.get_mut(k) {
                Some(v) => {
                    *v = &*v + c;
                    if v.is_zero() {
                        acc.terms.remove(k);
                    }
                }
                None => {
                    acc.terms.insert(k.clone(), c.clone());
                }
            }
        }
    }

    fn neg(&self, a: &MPoly) -> MPoly {
        MPoly {
            terms: a.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }

    fn mul(&self, a: &MPoly, b: &MPoly) -> MPoly {
        let mut out = MPoly::default();
        for (ka, ca) in &a.terms {
            for (kb, cb) in &b.terms {
                let k: Vec<u32> = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
                let c = ca * cb;
                self.add_assign(
                    &mut out,
                    &MPoly {
                        terms: BTreeMap::from([(k, c)]),
                    },
                );
            }
        }
        out
    }

    fn is_zero(&self, a: &MPoly) -> bool {
        a.terms.is_empty()
    }

    fn from_rational(&self, q: &Rational) -> MPoly {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(vec![0; self.vars.len()], q.clone());
        }
        MPoly { terms }
    }

    fn contains(&self, a: &MPoly) -> bool {
        a.terms.iter().all(|(k, c)| k.len() == self.vars.len() && !c.is_zero())
    }

    fn is_central(&self, _a: &MPoly) -> bool {
        true
    }

    /// Only nonzero constants are units of a polynomial ring over a field.
    fn try_invert(&self, a: &MPoly) -> Option<MPoly> {
        let mut it = a.terms.iter();
        match (it.next(), it.next()) {
            (Some((k, c)), None) if k.iter().all(|&e| e == 0) => Some(self.from_rational(&c.inv().ok()?)),
            _ => None,
        }
    }

    fn is_non_zero_divisor(&self, a: &MPoly) -> Option<bool> {
        // integral domain
        Some(!a.terms.is_empty())
    }

    fn lie_nilpotent_of_index(&self, k: usize) -> Option<bool> {
        Some(k >= 1)
    }
}

impl SampleRing for OracleRing {
    fn random_element<G: Rng + ?Sized>(&self, rng: &mut G) -> MPoly {
        let mut out = self.zero();
        for _ in 0..rng.gen_range(0..=3) {
            let exps = (0..self.vars.len()).map(|_| if rng.gen_bool(0.3) { 1 } else { 0 }).collect();
            let c = Rational::from_int(rng.gen_range(-3..=3));
            self.add_assign(&mut out, &self.term(exps, c).expect("arity matches"));
        }
        out
    }

    fn random_unit<G: Rng + ?Sized>(&self, rng: &mut G) -> MPoly {
        let c = loop {
            let c = rng.gen_range(-4..=4);
            if c != 0 {
                break c;
            }
        };
        self.from_int(c)
    }
}

/// Leibniz determinant; only meaningful over a commutative ring.
pub fn classical_det<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> Result<R::Elem> {
    let n = a.square_size()?;
    let mut acc = ring.zero();
    for (perm, sign) in Permutations::new(n) {
        let mut prod = ring.one();
        for (i, &j) in perm.iter().enumerate() {
            prod = ring.mul(&prod, a.get(i, j));
        }
        if sign < 0 {
            prod = ring.neg(&prod);
        }
        ring.add_assign(&mut acc, &prod);
    }
    Ok(acc)
}

/// Classical adjugate: `adj(A)_{r,s} = (-1)^{r+s} det(A with row s and column r deleted)`.
pub fn classical_adjugate<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>> {
    let n = a.square_size()?;
    if n == 1 {
        return Ok(Matrix::identity(ring, 1));
    }
    let mut entries = Vec::with_capacity(n * n);
    for r in 0..n {
        for s in 0..n {
            let d = classical_det(ring, &a.minor(s, r)?)?;
            entries.push(if (r + s) % 2 == 1 { ring.neg(&d) } else { d });
        }
    }
    Matrix::from_entries(ring, n, n, entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abcd() -> (OracleRing, Matrix<MPoly>) {
        let o = OracleRing::new(&["a", "b", "c", "d"]);
        let m = Matrix::from_entries(&o, 2, 2, (0..4).map(|i| o.var(i)).collect()).unwrap();
        (o, m)
    }

    #[test]
    fn two_by_two_det_and_adjugate() {
        let (o, m) = abcd();
        let det = classical_det(&o, &m).unwrap();
        assert_eq!(o.format(&det), "a*d - b*c");
        let adj = classical_adjugate(&o, &m).unwrap();
        let expected: Vec<MPoly> = vec![o.var(3), o.neg(&o.var(1)), o.neg(&o.var(2)), o.var(0)];
        assert_eq!(adj.entries(), expected.as_slice());
    }

    #[test]
    fn everything_is_central_and_commutes() {
        let (o, _) = abcd();
        let x = o.add(&o.var(0), &o.from_int(3));
        assert!(o.is_central(&x));
        assert_eq!(o.mul(&x, &o.var(1)), o.mul(&o.var(1), &x));
        assert!(o.try_invert(&x).is_none());
        assert_eq!(o.try_invert(&o.from_int(4)), Some(o.from_rational(&Rational::new(1, 4).unwrap())));
    }

    #[test]
    fn adjugate_identity() {
        let o = OracleRing::matrix_variables(3);
        let a = o.symbolic_matrix(3).unwrap();
        let adj = classical_adjugate(&o, &a).unwrap();
        let det = classical_det(&o, &a).unwrap();
        let prod = a.mul(&o, &adj).unwrap();
        assert_eq!(prod, Matrix::scalar(&o, 3, det));
    }

    #[test]
    fn monomial_keys_round_trip() {
        let (o, _) = abcd();
        let exps = o.parse_monomial_key("a^2*c").unwrap();
        assert_eq!(exps, vec![2, 0, 1, 0]);
        assert_eq!(o.monomial_key(&exps), "a^2*c");
        assert!(o.parse_monomial_key("q").is_err());
    }
}
