//! JSON encodings of elements, matrices, algebras and results.
//!
//! Scalars are text (`"3/2"`, or `"[c0, c1]"` over a cyclotomic field).
//! Grassmann elements are `{"g": 4, "coeffs": {"": "3/2", "1,2": "-1"}}`,
//! oracle polynomials `{"terms": {"a*d": "1", "b*c": "-1"}}`, polynomials in
//! `z` `{"coeffs": [..]}` and matrices `{"n": 2, "entries": [[..], [..]]}`.

use serde_json::{json, Map, Value};

use crate::dets::{ChReport, CharPoly, IntegralityCertificate, Side};
use crate::error::{Error, Result};
use crate::grassmann::{epsilon, generator_images, monomial_indices, monomial_mask, rho_e, sigma, sigma_inverse, Grassmann, GrassmannElement};
use crate::matrices::{Matrix, TransitiveMatrix};
use crate::rings::{Endomorphism, MPoly, OracleRing, PolyRing, RPoly, Ring, SampleRing};
use crate::scalars::{CyclotomicField, Rational, Scalar};
use crate::supermatrix::SuperAlgebraSpec;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn scalar_text(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string()),
        _ => Err(parse_err(format!("expected a scalar, got {v}"))),
    }
}

fn field_of(v: &Value, key: &str) -> Result<Value> {
    v.get(key).cloned().ok_or_else(|| parse_err(format!("missing field `{key}`")))
}

fn usize_of(v: &Value, key: &str) -> Result<usize> {
    field_of(v, key)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| parse_err(format!("`{key}` must be a non-negative integer")))
}

/// Rings whose elements have a JSON encoding and a pretty form.
pub trait ElementCodec: SampleRing {
    fn encode(&self, x: &Self::Elem) -> Value;
    fn decode(&self, v: &Value) -> Result<Self::Elem>;
    fn pretty(&self, x: &Self::Elem) -> String;
    /// The ring descriptor accepted by [`AnyRing::from_json`].
    fn descriptor(&self) -> Value;

    /// Endomorphisms named in JSON; `"identity"` is always available.
    fn decode_delta(&self, v: &Value) -> Result<Endomorphism<Self>> {
        match v.as_str() {
            Some("identity") => Ok(Endomorphism::identity()),
            _ => Err(parse_err(format!("unsupported endomorphism {v} for {}", self.describe()))),
        }
    }
}

impl ElementCodec for CyclotomicField {
    fn encode(&self, x: &Scalar) -> Value {
        Value::String(self.format(x))
    }

    fn decode(&self, v: &Value) -> Result<Scalar> {
        self.parse(&scalar_text(v)?)
    }

    fn pretty(&self, x: &Scalar) -> String {
        self.format(x)
    }

    fn descriptor(&self) -> Value {
        json!({"kind": "field", "cyclotomic": self.order()})
    }
}

fn monomial_key(mask: u64) -> String {
    monomial_indices(mask).iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn parse_grassmann_key(key: &str, g: u32) -> Result<u64> {
    let mut indices = Vec::new();
    for part in key.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let i: u32 = part.parse().map_err(|_| parse_err(format!("bad generator index `{part}` in `{key}`")))?;
        if i == 0 || i > g {
            return Err(parse_err(format!("generator v{i} outside 1..={g}")));
        }
        if indices.last().is_some_and(|&last| last >= i) {
            return Err(parse_err(format!("monomial key `{key}` is not strictly ascending")));
        }
        indices.push(i);
    }
    Ok(monomial_mask(&indices))
}

impl ElementCodec for Grassmann {
    fn encode(&self, x: &GrassmannElement) -> Value {
        let coeffs: Map<String, Value> = x
            .terms()
            .iter()
            .map(|(m, c)| (monomial_key(*m), Value::String(self.field().format(c))))
            .collect();
        json!({"g": self.generators(), "coeffs": coeffs})
    }

    /// Also accepts a bare scalar.
    fn decode(&self, v: &Value) -> Result<GrassmannElement> {
        if !v.is_object() {
            return Ok(self.from_scalar(self.field().parse(&scalar_text(v)?)?));
        }
        let g = usize_of(v, "g")? as u32;
        if g != self.generators() {
            return Err(Error::ContextMismatch(format!("{} (element has g = {g})", self.describe())));
        }
        let coeffs = field_of(v, "coeffs")?;
        let coeffs = coeffs.as_object().ok_or_else(|| parse_err("`coeffs` must be an object"))?;
        let mut terms = Vec::with_capacity(coeffs.len());
        for (key, c) in coeffs {
            terms.push((parse_grassmann_key(key, g)?, self.field().parse(&scalar_text(c)?)?));
        }
        self.from_terms(terms)
    }

    fn pretty(&self, x: &GrassmannElement) -> String {
        Grassmann::pretty(self, x)
    }

    fn descriptor(&self) -> Value {
        json!({"kind": "grassmann", "g": self.generators(), "cyclotomic": self.field().order()})
    }

    /// `"epsilon"`, `"sigma"`, `"sigma_inverse"`, `"rho_e:n"` or
    /// `{"generator_images": [element, ...]}`.
    fn decode_delta(&self, v: &Value) -> Result<Endomorphism<Grassmann>> {
        if let Some(images) = v.get("generator_images") {
            let images = images.as_array().ok_or_else(|| parse_err("`generator_images` must be an array"))?;
            let images = images.iter().map(|x| self.decode(x)).collect::<Result<Vec<_>>>()?;
            return generator_images(self, images);
        }
        let name = v.as_str().ok_or_else(|| parse_err(format!("unsupported endomorphism {v}")))?;
        match name {
            "identity" => Ok(Endomorphism::identity()),
            "epsilon" => Ok(epsilon(self)),
            "sigma" => sigma(self),
            "sigma_inverse" => sigma_inverse(self),
            _ => match name.strip_prefix("rho_e:") {
                Some(n) => {
                    let n: usize = n.parse().map_err(|_| parse_err(format!("bad root order in `{name}`")))?;
                    Ok(rho_e(self, n)?.0)
                }
                None => Err(parse_err(format!("unknown endomorphism `{name}`"))),
            },
        }
    }
}

impl ElementCodec for OracleRing {
    fn encode(&self, x: &MPoly) -> Value {
        let terms: Map<String, Value> = x.terms().iter().map(|(e, c)| (self.monomial_key(e), Value::String(c.to_string()))).collect();
        json!({"terms": terms})
    }

    /// Also accepts a bare rational.
    fn decode(&self, v: &Value) -> Result<MPoly> {
        let Some(terms) = v.get("terms") else {
            return Ok(self.from_rational(&scalar_text(v)?.parse::<Rational>()?));
        };
        let terms = terms.as_object().ok_or_else(|| parse_err("`terms` must be an object"))?;
        let mut out = self.zero();
        for (key, c) in terms {
            let t = self.term(self.parse_monomial_key(key)?, scalar_text(c)?.parse()?)?;
            self.add_assign(&mut out, &t);
        }
        Ok(out)
    }

    fn pretty(&self, x: &MPoly) -> String {
        self.format(x)
    }

    fn descriptor(&self) -> Value {
        json!({"kind": "oracle", "vars": self.vars()})
    }
}

/// Polynomials in `z` over a codec ring.
pub fn encode_poly<R: ElementCodec>(ring: &R, p: &RPoly<R::Elem>) -> Value {
    json!({"coeffs": p.coeffs().iter().map(|c| ring.encode(c)).collect::<Vec<_>>()})
}

pub fn decode_poly<R: ElementCodec>(ring: &R, v: &Value) -> Result<RPoly<R::Elem>> {
    let coeffs = field_of(v, "coeffs")?;
    let coeffs = coeffs.as_array().ok_or_else(|| parse_err("`coeffs` must be an array"))?;
    let coeffs = coeffs.iter().map(|c| ring.decode(c)).collect::<Result<Vec<_>>>()?;
    Ok(PolyRing::new(ring.clone()).poly(coeffs))
}

pub fn encode_matrix<R: ElementCodec>(ring: &R, a: &Matrix<R::Elem>) -> Value {
    let rows: Vec<Value> = (0..a.rows()).map(|i| Value::Array(a.row(i).iter().map(|x| ring.encode(x)).collect())).collect();
    json!({"n": a.rows(), "entries": rows})
}

/// Square matrices; `"n"` is optional but must agree with `"entries"`.
pub fn decode_matrix<R: ElementCodec>(ring: &R, v: &Value) -> Result<Matrix<R::Elem>> {
    let entries = field_of(v, "entries")?;
    let rows = entries.as_array().ok_or_else(|| parse_err("`entries` must be an array of rows"))?;
    let n = rows.len();
    if let Some(declared) = v.get("n") {
        if declared.as_u64() != Some(n as u64) {
            return Err(Error::DimensionMismatch(format!("declared n = {declared} but {n} rows given")));
        }
    }
    let mut out = Vec::with_capacity(n * n);
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| parse_err(format!("row {} is not an array", i + 1)))?;
        if row.len() != n {
            return Err(Error::DimensionMismatch(format!("row {} has {} entries, expected {n}", i + 1, row.len())));
        }
        for x in row {
            out.push(ring.decode(x)?);
        }
    }
    Matrix::from_entries(ring, n, n, out)
}

pub fn pretty_matrix<R: ElementCodec>(ring: &R, a: &Matrix<R::Elem>) -> String {
    let cells: Vec<Vec<String>> = (0..a.rows()).map(|i| a.row(i).iter().map(|x| ring.pretty(x)).collect()).collect();
    let widths: Vec<usize> = (0..a.cols()).map(|j| cells.iter().map(|r| r[j].chars().count()).max().unwrap_or(0)).collect();
    cells
        .iter()
        .map(|r| {
            let padded: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            format!("[ {} ]", padded.join("  "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn encode_charpoly<R: ElementCodec>(ring: &R, p: &CharPoly<R::Elem>) -> Value {
    json!({"side": p.side.name(), "k": p.k, "coeffs": p.coeffs.iter().map(|c| ring.encode(c)).collect::<Vec<_>>()})
}

pub fn decode_charpoly<R: ElementCodec>(ring: &R, v: &Value) -> Result<CharPoly<R::Elem>> {
    let side = Side::parse(field_of(v, "side")?.as_str().ok_or_else(|| parse_err("`side` must be a string"))?)?;
    let k = usize_of(v, "k")?;
    let coeffs = field_of(v, "coeffs")?;
    let coeffs = coeffs.as_array().ok_or_else(|| parse_err("`coeffs` must be an array"))?;
    let coeffs = coeffs.iter().map(|c| ring.decode(c)).collect::<Result<Vec<_>>>()?;
    if coeffs.is_empty() {
        return Err(parse_err("`coeffs` is empty"));
    }
    // degree n^k determines n
    let degree = coeffs.len() - 1;
    let n = (1..=degree.max(1))
        .find(|m| m.pow(k as u32) == degree)
        .ok_or_else(|| parse_err(format!("degree {degree} is not a {k}-th power")))?;
    Ok(CharPoly { side, k, n, coeffs })
}

pub fn encode_ch_report<R: ElementCodec>(ring: &R, a: &Matrix<R::Elem>, k: usize, report: &ChReport<R::Elem>) -> Value {
    json!({
        "matrix": encode_matrix(ring, a),
        "k": k,
        "side": report.charpoly.side.name(),
        "charpoly": encode_charpoly(ring, &report.charpoly),
        "residual": encode_matrix(ring, &report.residual),
        "residual_zero": report.residual_is_zero(ring),
        "lie_nilpotent": report.lie_nilpotent,
    })
}

pub fn encode_certificate<R: ElementCodec>(ring: &R, r: &R::Elem, cert: &IntegralityCertificate<R::Elem>) -> Value {
    let side = |s: &crate::dets::IntegralitySide<R::Elem>| {
        json!({
            "coeffs": s.coeffs.iter().map(|c| ring.encode(c)).collect::<Vec<_>>(),
            "coefficients_fixed": s.fixed,
            "residual": ring.encode(&s.residual),
        })
    };
    json!({"element": ring.encode(r), "n": cert.n, "k": cert.k, "right": side(&cert.right), "left": side(&cert.left), "holds": cert.holds(ring)})
}

/// `{"ring": descriptor, "delta": .., "T": matrix, "n": size}`
pub fn encode_spec<R: ElementCodec>(spec: &SuperAlgebraSpec<R>, delta: &Value) -> Value {
    json!({
        "ring": spec.ring().descriptor(),
        "delta": delta,
        "T": encode_matrix(spec.ring(), spec.transitive().matrix()),
        "n": spec.n(),
    })
}

/// Decodes a spec whose `"ring"` has already been turned into `ring`.
pub fn decode_spec<R: ElementCodec>(ring: &R, v: &Value) -> Result<SuperAlgebraSpec<R>> {
    let delta = ring.decode_delta(&field_of(v, "delta")?)?;
    let t = decode_matrix(ring, &field_of(v, "T")?)?;
    if let Some(n) = v.get("n") {
        if n.as_u64() != Some(t.rows() as u64) {
            return Err(Error::DimensionMismatch(format!("declared n = {n} but T is {0}x{0}", t.rows())));
        }
    }
    SuperAlgebraSpec::new(ring.clone(), delta, TransitiveMatrix::certify(ring, t)?)
}

/// A ring chosen at run time from its descriptor.
#[derive(Clone, Debug)]
pub enum AnyRing {
    Field(CyclotomicField),
    Grassmann(Grassmann),
    Oracle(OracleRing),
}

/// Generic work dispatched on the concrete ring of an [`AnyRing`].
pub trait RingVisitor {
    type Output;
    fn visit<R: ElementCodec>(self, ring: &R) -> Self::Output;
}

impl AnyRing {
    /// `{"kind": "field", "cyclotomic": m}`, `{"kind": "grassmann", "g": 4,
    /// "cyclotomic": m}` or `{"kind": "oracle", "vars": ["a", "b"]}`;
    /// `cyclotomic` defaults to 1 (the rationals).
    pub fn from_json(v: &Value) -> Result<Self> {
        let kind = field_of(v, "kind")?;
        let order = match v.get("cyclotomic") {
            None => 1,
            Some(o) => o.as_u64().ok_or_else(|| parse_err("`cyclotomic` must be a positive integer"))? as usize,
        };
        match kind.as_str() {
            Some("field") => Ok(AnyRing::Field(CyclotomicField::new(order)?)),
            Some("grassmann") => {
                let g = usize_of(v, "g")?;
                let g = u32::try_from(g).map_err(|_| parse_err("`g` is too large"))?;
                Ok(AnyRing::Grassmann(Grassmann::new(g, CyclotomicField::new(order)?)?))
            }
            Some("oracle") => {
                let vars = field_of(v, "vars")?;
                let vars = vars.as_array().ok_or_else(|| parse_err("`vars` must be an array"))?;
                let vars = vars
                    .iter()
                    .map(|x| x.as_str().map(str::to_string).ok_or_else(|| parse_err("variable names must be strings")))
                    .collect::<Result<Vec<_>>>()?;
                Ok(AnyRing::Oracle(OracleRing::new(&vars)))
            }
            _ => Err(parse_err(format!("unknown ring kind {kind}"))),
        }
    }

    pub fn visit<V: RingVisitor>(&self, visitor: V) -> V::Output {
        match self {
            AnyRing::Field(f) => visitor.visit(f),
            AnyRing::Grassmann(e) => visitor.visit(e),
            AnyRing::Oracle(o) => visitor.visit(o),
        }
    }
}
