use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use super::qpoly::QPoly;
use super::Rational;
use crate::error::{Error, Result};

/// Divisors of `n` in ascending order.
fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// The `n`-th cyclotomic polynomial, by dividing `x^n - 1` by `Phi_d` for
/// every proper divisor `d` of `n`.
pub fn cyclotomic_polynomial(n: usize) -> QPoly {
    assert!(n > 0, "cyclotomic polynomial of order 0");
    let mut p = QPoly::x_pow_minus_one(n);
    for d in divisors(n) {
        if d != n {
            p = p.exact_div(&cyclotomic_polynomial(d)).expect("Phi_d divides x^n - 1");
        }
    }
    p
}

/// Residue class modulo `Phi_n`: coefficients of `1, e, e^2, ...` with
/// exactly `deg(Phi_n)` entries. The order lives on the owning
/// [`CyclotomicField`].
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CyclotomicScalar {
    coeffs: SmallVec<[Rational; 2]>,
}

impl CyclotomicScalar {
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// The constant coefficient if every other coefficient vanishes.
    pub fn as_rational(&self) -> Option<&Rational> {
        let (c0, rest) = self.coeffs.split_first()?;
        rest.iter().all(Rational::is_zero).then_some(c0)
    }
}

impl fmt::Debug for CyclotomicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.len() == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

#[derive(Debug)]
struct FieldInner {
    order: usize,
    /// Monic `Phi_n`, ascending coefficients, length `degree + 1`.
    phi: Vec<Rational>,
}

/// The field `Q(zeta_n)`, realised as `Q[x] / Phi_n`.
///
/// Orders 1 and 2 both give `Q` (degree one); order 2 is the conventional
/// choice when the distinguished element `e = -1` matters.
#[derive(Clone)]
pub struct CyclotomicField {
    inner: Arc<FieldInner>,
}

impl fmt::Debug for CyclotomicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.inner.order)
    }
}

impl PartialEq for CyclotomicField {
    fn eq(&self, other: &Self) -> bool {
        self.inner.order == other.inner.order
    }
}

impl Eq for CyclotomicField {}

impl CyclotomicField {
    pub fn new(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidParameter("cyclotomic order must be positive".into()));
        }
        let phi = cyclotomic_polynomial(order).into_coeffs();
        Ok(CyclotomicField {
            inner: Arc::new(FieldInner { order, phi }),
        })
    }

    /// `Q` as the degree-one cyclotomic field of order 1.
    pub fn rationals() -> Self {
        CyclotomicField::new(1).expect("order 1 is valid")
    }

    pub fn order(&self) -> usize {
        self.inner.order
    }

    pub fn degree(&self) -> usize {
        self.inner.phi.len() - 1
    }

    pub fn phi(&self) -> QPoly {
        QPoly::new(self.inner.phi.clone())
    }

    pub fn zero(&self) -> CyclotomicScalar {
        CyclotomicScalar {
            coeffs: SmallVec::from_elem(Rational::zero(), self.degree()),
        }
    }

    pub fn one(&self) -> CyclotomicScalar {
        self.from_rational(Rational::one())
    }

    pub fn from_int(&self, n: i64) -> CyclotomicScalar {
        self.from_rational(Rational::from_int(n))
    }

    pub fn from_rational(&self, q: Rational) -> CyclotomicScalar {
        let mut s = self.zero();
        s.coeffs[0] = q;
        s
    }

    /// Reduces an arbitrary coefficient list modulo `Phi_n`.
    pub fn from_coeffs(&self, coeffs: Vec<Rational>) -> CyclotomicScalar {
        self.reduce(coeffs)
    }

    /// Builds a scalar from an exact-length coefficient list.
    pub fn element(&self, coeffs: Vec<Rational>) -> Result<CyclotomicScalar> {
        if coeffs.len() != self.degree() {
            return Err(Error::Parse(format!(
                "expected {} coefficients for Q(zeta_{}), got {}",
                self.degree(),
                self.order(),
                coeffs.len()
            )));
        }
        Ok(CyclotomicScalar { coeffs: coeffs.into() })
    }

    /// The class of the indeterminate, a primitive `n`-th root of unity.
    pub fn generator(&self) -> CyclotomicScalar {
        let mut c = vec![Rational::zero(); 2];
        c[1] = Rational::one();
        self.reduce(c)
    }

    pub fn contains(&self, a: &CyclotomicScalar) -> bool {
        a.coeffs.len() == self.degree()
    }

    fn reduce(&self, mut c: Vec<Rational>) -> CyclotomicScalar {
        let d = self.degree();
        let phi = &self.inner.phi;
        for k in (d..c.len()).rev() {
            let lead = std::mem::take(&mut c[k]);
            if lead.is_zero() {
                continue;
            }
            // x^k = x^(k-d) * x^d and x^d = -(phi_0 + ... + phi_{d-1} x^{d-1})
            for (i, p) in phi.iter().take(d).enumerate() {
                if !p.is_zero() {
                    c[k - d + i] = &c[k - d + i] - &(&lead * p);
                }
            }
        }
        c.resize(d, Rational::zero());
        CyclotomicScalar { coeffs: c.into() }
    }

    pub fn add(&self, a: &CyclotomicScalar, b: &CyclotomicScalar) -> CyclotomicScalar {
        CyclotomicScalar {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, a: &CyclotomicScalar, b: &CyclotomicScalar) -> CyclotomicScalar {
        CyclotomicScalar {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn neg(&self, a: &CyclotomicScalar) -> CyclotomicScalar {
        CyclotomicScalar {
            coeffs: a.coeffs.iter().map(|x| -x).collect(),
        }
    }

    pub fn mul(&self, a: &CyclotomicScalar, b: &CyclotomicScalar) -> CyclotomicScalar {
        let d = self.degree();
        if d == 1 {
            return CyclotomicScalar {
                coeffs: SmallVec::from_elem(&a.coeffs[0] * &b.coeffs[0], 1),
            };
        }
        let mut out = vec![Rational::zero(); 2 * d - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] = &out[i + j] + &(x * y);
                }
            }
        }
        self.reduce(out)
    }

    /// Multiplies by a rational without reduction.
    pub fn scale(&self, a: &CyclotomicScalar, q: &Rational) -> CyclotomicScalar {
        CyclotomicScalar {
            coeffs: a.coeffs.iter().map(|x| x * q).collect(),
        }
    }

    pub fn inv(&self, a: &CyclotomicScalar) -> Result<CyclotomicScalar> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.degree() == 1 {
            return Ok(self.from_rational(a.coeffs[0].inv()?));
        }
        let u = QPoly::new(a.coeffs.to_vec()).inverse_mod(&self.phi())?;
        Ok(self.reduce(u.into_coeffs()))
    }

    pub fn pow(&self, a: &CyclotomicScalar, mut e: u64) -> CyclotomicScalar {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Integer power, negative exponents through the inverse.
    pub fn powi(&self, a: &CyclotomicScalar, e: i64) -> Result<CyclotomicScalar> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            Ok(self.pow(&self.inv(a)?, e.unsigned_abs()))
        }
    }

    /// Multiplicative order of `a` if it is a root of unity in this field.
    pub fn root_order(&self, a: &CyclotomicScalar) -> Option<usize> {
        // roots of unity in Q(zeta_m) have order dividing lcm(2, m)
        let bound = if self.order().is_multiple_of(2) { self.order() } else { 2 * self.order() };
        let one = self.one();
        let mut p = a.clone();
        for k in 1..=bound {
            if p == one {
                return Some(k);
            }
            p = self.mul(&p, a);
        }
        None
    }

    /// A primitive `n`-th root of unity, if the field contains one. Roots of
    /// unity in `Q(zeta_m)` are exactly `+-zeta^j`; the first one of order `n`
    /// in the order `zeta^0, -zeta^0, zeta^1, -zeta^1, ...` is returned, so
    /// `Q(zeta_n)` yields its own generator for `n >= 3` and any field yields
    /// `-1` for `n = 2`.
    pub fn primitive_root(&self, n: usize) -> Option<CyclotomicScalar> {
        if n == 0 {
            return None;
        }
        let z = self.generator();
        let mut p = self.one();
        for _ in 0..self.order() {
            for c in [p.clone(), self.neg(&p)] {
                if self.root_order(&c) == Some(n) {
                    return Some(c);
                }
            }
            p = self.mul(&p, &z);
        }
        None
    }

    /// Text form: `p/q` for degree one, `[c0, c1, ...]` otherwise.
    pub fn format(&self, a: &CyclotomicScalar) -> String {
        format!("{a:?}")
    }

    /// Parses the text form. Degree-one fields also accept a bare rational;
    /// every field accepts a bracketed list, which is reduced modulo `Phi_n`
    /// when longer than the degree.
    pub fn parse(&self, s: &str) -> Result<CyclotomicScalar> {
        let t = s.trim();
        if let Some(inner) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let coeffs = inner
                .split(',')
                .filter(|p| !p.trim().is_empty())
                .map(|p| p.parse::<Rational>())
                .collect::<Result<Vec<_>>>()?;
            if coeffs.len() < self.degree() {
                let mut c = coeffs;
                c.resize(self.degree(), Rational::zero());
                return Ok(CyclotomicScalar { coeffs: c.into() });
            }
            return Ok(self.reduce(coeffs));
        }
        Ok(self.from_rational(t.parse()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(n: usize) -> CyclotomicField {
        CyclotomicField::new(n).unwrap()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), QPoly::from_ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), QPoly::from_ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3), QPoly::from_ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), QPoly::from_ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), QPoly::from_ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(8), QPoly::from_ints(&[1, 0, 0, 0, 1]));
    }

    #[test]
    fn product_over_divisors_is_x_n_minus_one() {
        for n in 1..=8 {
            let prod = divisors(n).into_iter().fold(QPoly::one(), |acc, d| acc.mul(&cyclotomic_polynomial(d)));
            assert_eq!(prod, QPoly::x_pow_minus_one(n), "n = {n}");
        }
    }

    #[test]
    fn order_two_generator_is_minus_one() {
        let f = field(2);
        assert_eq!(f.generator(), f.from_int(-1));
        assert_eq!(f.degree(), 1);
    }

    #[test]
    fn order_three_reduction() {
        let f = field(3);
        let e = f.generator();
        let e2 = f.mul(&e, &e);
        // e^2 = -1 - e
        assert_eq!(e2, f.element(vec![Rational::from_int(-1), Rational::from_int(-1)]).unwrap());
        let s = f.add(&f.add(&f.one(), &e), &e2);
        assert!(s.is_zero());
        let one_plus_e = f.add(&f.one(), &e);
        assert_eq!(f.mul(&one_plus_e, &one_plus_e), e);
    }

    #[test]
    fn generator_is_primitive_for_small_orders() {
        for n in 1..=8 {
            let f = field(n);
            let e = f.generator();
            assert_eq!(f.pow(&e, n as u64), f.one());
            for k in 1..n {
                let ek = f.pow(&e, k as u64);
                assert_ne!(ek, f.one(), "n={n} k={k}");
                let s = (0..n).fold(f.zero(), |acc, j| f.add(&acc, &f.pow(&ek, j as u64)));
                assert!(s.is_zero(), "n={n} k={k}");
            }
            assert_eq!(f.inv(&e).unwrap(), f.pow(&e, (n - 1) as u64));
            assert_eq!(f.mul(&e, &f.pow(&e, (n - 1) as u64)), f.one());
        }
    }

    #[test]
    fn primitive_roots() {
        let q = CyclotomicField::rationals();
        assert_eq!(q.primitive_root(2), Some(q.from_int(-1)));
        assert_eq!(q.primitive_root(1), Some(q.one()));
        assert_eq!(q.primitive_root(3), None);
        let f3 = field(3);
        assert_eq!(f3.primitive_root(3), Some(f3.generator()));
        assert_eq!(f3.root_order(&f3.primitive_root(6).unwrap()), Some(6));
        assert_eq!(f3.primitive_root(4), None);
        let f4 = field(4);
        assert_eq!(f4.primitive_root(4), Some(f4.generator()));
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert!(field(5).inv(&field(5).zero()).is_err());
    }

    #[test]
    fn text_forms() {
        let f = field(3);
        let x = f.element(vec![Rational::new(1, 2).unwrap(), Rational::from_int(-2)]).unwrap();
        assert_eq!(f.format(&x), "[1/2, -2]");
        assert_eq!(f.parse("[1/2, -2]").unwrap(), x);
        assert_eq!(f.parse("3").unwrap(), f.from_int(3));
        // e^2 reduces to -1 - e
        assert_eq!(f.parse("[0,0,1]").unwrap(), f.mul(&f.generator(), &f.generator()));
        let q = CyclotomicField::rationals();
        assert_eq!(q.format(&q.from_rational(Rational::new(-3, 2).unwrap())), "-3/2");
    }
}
