use std::path::Path;

use serde_json::{json, Value};

use lienil::codec::{
    decode_matrix, decode_spec, encode_certificate, encode_ch_report, encode_charpoly, encode_matrix, encode_spec, pretty_matrix, AnyRing, ElementCodec,
    RingVisitor,
};
use lienil::dets::{cayley_hamilton_check, charpoly, integrality_certificate, preadjoint, preadjoint_by_minors, sdet, side_det, Side};
use lienil::grassmann::Grassmann;
use lienil::matrices::{theta, theta_counterexample, transitivity_violation, Matrix, ThetaFailure, TransitiveMatrix};
use lienil::reproduce::{reproduce_all, run_criteria, sdet_without_column_signs, Options};
use lienil::rings::{CyclotomicAlgebra, Ring};
use lienil::supermatrix::{example_algebra, sample_supermatrix, EmbeddingConditionsReport, ExampleKind, SuperAlgebraSpec};
use lienil::{Error, Result};

use crate::Output;

fn field<'a>(doc: &'a Value, key: &str) -> Result<&'a Value> {
    doc.get(key).ok_or_else(|| Error::Parse(format!("missing field `{key}`")))
}

fn ring_of(doc: &Value) -> Result<AnyRing> {
    AnyRing::from_json(field(doc, "ring")?)
}

fn output(json: Value, pretty: String, verdict: Option<bool>) -> Output {
    Output { json, pretty, verdict }
}

pub enum Op {
    TransitiveCheck,
    TransitiveBuild,
    Blowup(Vec<usize>),
    Factor,
    Theta,
    Sdet,
    Preadjoint,
    SideDet(usize, Side),
    Charpoly(usize, Side),
    ChCheck(usize, Side),
    Membership,
}

struct Generic<'a> {
    doc: &'a Value,
    op: Op,
}

impl RingVisitor for Generic<'_> {
    type Output = Result<Output>;

    fn visit<R: ElementCodec>(self, ring: &R) -> Result<Output> {
        let doc = self.doc;
        let matrix = || decode_matrix(ring, field(doc, "matrix")?);
        let show = |a: &Matrix<R::Elem>| output(encode_matrix(ring, a), pretty_matrix(ring, a), None);
        match self.op {
            Op::TransitiveCheck => {
                let t = matrix()?;
                let violation = transitivity_violation(ring, &t)?;
                let pretty = match violation {
                    None => "transitive".to_string(),
                    Some((i, j, k)) if i == j && j == k => format!("t_{0}{0} != 1", i + 1),
                    Some((i, j, k)) => format!("t_{0}{1} t_{1}{2} != t_{0}{2}", i + 1, j + 1, k + 1),
                };
                let v = violation.map(|(i, j, k)| json!([i + 1, j + 1, k + 1]));
                Ok(output(
                    json!({"transitive": violation.is_none(), "violation": v}),
                    pretty,
                    Some(violation.is_none()),
                ))
            }
            Op::TransitiveBuild => {
                let t = if let Some(units) = doc.get("units") {
                    let units = units.as_array().ok_or_else(|| Error::Parse("`units` must be an array".into()))?;
                    let units = units.iter().map(|u| ring.decode(u)).collect::<Result<Vec<_>>>()?;
                    TransitiveMatrix::from_units(ring, &units)?
                } else {
                    let u = ring.decode(field(doc, "powers_of")?)?;
                    let n = field(doc, "n")?.as_u64().ok_or_else(|| Error::Parse("`n` must be a positive integer".into()))? as usize;
                    TransitiveMatrix::powers_of(ring, &u, n)?
                };
                Ok(show(t.matrix()))
            }
            Op::Blowup(cuts) => {
                let t = TransitiveMatrix::certify(ring, matrix()?)?;
                Ok(show(t.blow_up(ring, &cuts)?.matrix()))
            }
            Op::Factor => {
                let t = TransitiveMatrix::certify(ring, matrix()?)?;
                let units = t.factor();
                let pretty = units
                    .iter()
                    .enumerate()
                    .map(|(i, u)| format!("g{} = {}", i + 1, ring.pretty(u)))
                    .collect::<Vec<_>>()
                    .join("\n");
                Ok(output(json!({"units": units.iter().map(|u| ring.encode(u)).collect::<Vec<_>>()}), pretty, None))
            }
            Op::Theta => {
                let t = decode_matrix(ring, field(doc, "T")?)?;
                let a = matrix()?;
                match theta_counterexample(ring, &t)? {
                    None => Ok(show(&theta(ring, &TransitiveMatrix::certify(ring, t)?, &a)?)),
                    Some(ThetaFailure::NotUnital { index }) => Ok(output(
                        json!({"counterexample": {"kind": "not_unital", "index": index + 1}}),
                        format!("T * I != I: t_{0}{0} is idempotent but not 1", index + 1),
                        Some(false),
                    )),
                    Some(ThetaFailure::NotMultiplicative { i, j, k, lhs, rhs }) => {
                        let (i, j, k) = (i + 1, j + 1, k + 1);
                        Ok(output(
                            json!({"counterexample": {"kind": "not_multiplicative", "units": [[i, j], [j, k]], "lhs": encode_matrix(ring, &lhs), "rhs": encode_matrix(ring, &rhs)}}),
                            format!(
                                "T * (E_{i}{j} E_{j}{k}) =\n{}\nbut (T * E_{i}{j})(T * E_{j}{k}) =\n{}",
                                pretty_matrix(ring, &lhs),
                                pretty_matrix(ring, &rhs)
                            ),
                            Some(false),
                        ))
                    }
                }
            }
            Op::Sdet => {
                let v = sdet(ring, &matrix()?)?;
                Ok(output(json!({"sdet": ring.encode(&v)}), ring.pretty(&v), None))
            }
            Op::Preadjoint => {
                let a = matrix()?;
                let adj = preadjoint(ring, &a)?;
                let agrees = adj == preadjoint_by_minors(ring, &a)?;
                Ok(output(
                    json!({"preadjoint": encode_matrix(ring, &adj), "minors_agree": agrees}),
                    pretty_matrix(ring, &adj),
                    Some(agrees),
                ))
            }
            Op::SideDet(k, side) => {
                let v = side_det(ring, &matrix()?, k, side)?;
                let key = if side == Side::Right { "rdet" } else { "ldet" };
                Ok(output(json!({key: ring.encode(&v), "k": k}), ring.pretty(&v), None))
            }
            Op::Charpoly(k, side) => {
                let p = charpoly(ring, &matrix()?, k, side)?;
                let mut json = encode_charpoly(ring, &p);
                json["leading_matches_closed_form"] = json!(p.leading_matches(ring));
                let pretty = p
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, c)| format!("z^{i}: {}", ring.pretty(c)))
                    .collect::<Vec<_>>()
                    .join("\n");
                Ok(output(json, pretty, None))
            }
            Op::ChCheck(k, side) => {
                let a = matrix()?;
                let report = cayley_hamilton_check(ring, &a, k, side)?;
                let zero = report.residual_is_zero(ring);
                let pretty = format!(
                    "{} identity of degree {}, residual:\n{}",
                    side.name(),
                    report.charpoly.degree(),
                    pretty_matrix(ring, &report.residual)
                );
                Ok(output(encode_ch_report(ring, &a, k, &report), pretty, Some(zero)))
            }
            Op::Membership => {
                let spec = decode_spec(ring, doc)?;
                let violation = spec.membership_violation(&matrix()?)?;
                let pretty = match violation {
                    None => "member".to_string(),
                    Some((i, j)) => format!("entry ({}, {}) violates delta(a) = t a", i + 1, j + 1),
                };
                Ok(output(
                    json!({"member": violation.is_none(), "violation": violation.map(|(i, j)| json!([i + 1, j + 1]))}),
                    pretty,
                    Some(violation.is_none()),
                ))
            }
        }
    }
}

pub fn generic(doc: &Value, op: Op) -> Result<Output> {
    ring_of(doc)?.visit(Generic { doc, op })
}

pub enum CycOp {
    Embed { n: usize, root: usize },
    Conditions,
    Integrality { n: usize, k: usize },
}

fn conditions_json(r: &EmbeddingConditionsReport) -> Value {
    json!({
        "n": r.n,
        "units_central": r.units_central,
        "inverse_of_n": r.inverse_of_n,
        "nth_powers_one": r.nth_powers_one,
        "non_zero_divisors": r.non_zero_divisors,
        "power_sums_vanish": r.power_sums,
        "inverse_power_sums_vanish": r.inverse_power_sums,
        "equal_nth_powers": r.equal_nth_powers,
        "power_sums_imply_inverse_power_sums": r.power_sum_implication,
        "fixed_by_delta": r.fixed_by_delta,
        "delta_power_identity": r.delta_power_identity,
        "regime1": r.regime1(),
        "regime2": r.regime2(),
        "regime3": r.regime3(),
    })
}

fn conditions_pretty(r: &EmbeddingConditionsReport) -> String {
    let obj = conditions_json(r);
    obj.as_object()
        .expect("object")
        .iter()
        .map(|(k, v)| format!("{k}: {v}"))
        .collect::<Vec<_>>()
        .join("\n")
}

fn run_cyclotomic<R: ElementCodec + CyclotomicAlgebra>(ring: &R, doc: &Value, op: CycOp) -> Result<Output> {
    match op {
        CycOp::Embed { n, root } => {
            let delta = ring.decode_delta(field(doc, "delta")?)?;
            let r = ring.decode(field(doc, "element")?)?;
            let field_k = ring.scalar_field();
            let e = field_k
                .primitive_root(root)
                .ok_or_else(|| Error::Precondition(format!("{} has no primitive root of unity of order {root}", Ring::describe(field_k))))?;
            let t = TransitiveMatrix::powers_of(ring, &ring.from_scalar(&e), n)?;
            let spec = SuperAlgebraSpec::new(ring.clone(), delta, t)?;
            let conditions = spec.embedding_conditions(&ring.spanning_set()?);
            let image = spec.embed(&r)?;
            let member = spec.is_supermatrix(&image)?;
            let json = json!({"image": encode_matrix(ring, &image), "member": member, "conditions": conditions_json(&conditions)});
            let pretty = format!(
                "{}\nmember: {member}\nregime: {}",
                pretty_matrix(ring, &image),
                [conditions.regime1(), conditions.regime2(), conditions.regime3()]
                    .iter()
                    .rposition(|b| *b)
                    .map_or("none".to_string(), |i| (i + 1).to_string())
            );
            Ok(output(json, pretty, None))
        }
        CycOp::Conditions => {
            let spec = decode_spec(ring, doc)?;
            let conditions = spec.embedding_conditions(&ring.spanning_set()?);
            Ok(output(conditions_json(&conditions), conditions_pretty(&conditions), Some(conditions.regime2())))
        }
        CycOp::Integrality { n, k } => {
            let delta = ring.decode_delta(field(doc, "delta")?)?;
            let r = ring.decode(field(doc, "element")?)?;
            let cert = integrality_certificate(ring, &delta, &r, n, k)?;
            let side = |name: &str, s: &lienil::dets::IntegralitySide<R::Elem>| {
                let coeffs = s
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, c)| format!("  c{i} = {}", ring.pretty(c)))
                    .collect::<Vec<_>>()
                    .join("\n");
                format!("{name} (coefficients fixed: {}, residual: {}):\n{coeffs}", s.fixed, ring.pretty(&s.residual))
            };
            let pretty = format!("{}\n{}", side("right", &cert.right), side("left", &cert.left));
            Ok(output(encode_certificate(ring, &r, &cert), pretty, Some(cert.holds(ring))))
        }
    }
}

pub fn cyclotomic(doc: &Value, op: CycOp) -> Result<Output> {
    match ring_of(doc)? {
        AnyRing::Field(f) => run_cyclotomic(&f, doc, op),
        AnyRing::Grassmann(e) => run_cyclotomic(&e, doc, op),
        AnyRing::Oracle(_) => Err(Error::InvalidParameter("this command needs a ring over a cyclotomic field".into())),
    }
}

fn grassmann_of(doc: &Value) -> Result<Grassmann> {
    match ring_of(doc)? {
        AnyRing::Grassmann(e) => Ok(e),
        _ => Err(Error::InvalidParameter("this command needs a Grassmann algebra".into())),
    }
}

pub fn sample(doc: &Value, seed: u64) -> Result<Output> {
    let e = grassmann_of(doc)?;
    let spec = decode_spec(&e, doc)?;
    let a = sample_supermatrix(&spec, seed)?;
    Ok(output(json!({"seed": seed, "matrix": encode_matrix(&e, &a)}), pretty_matrix(&e, &a), None))
}

pub fn example(id: &str, n: usize, d: usize, g: u32, seed: Option<u64>) -> Result<Output> {
    let kind = ExampleKind::parse(id)?;
    let ex = example_algebra(kind, n, d, g)?;
    let e = ex.spec.ring();
    let delta = match kind {
        ExampleKind::EvenOdd => json!("epsilon"),
        ExampleKind::RootOfUnity => json!(format!("rho_e:{n}")),
        ExampleKind::Conjugation => json!("sigma"),
    };
    let cells: Vec<Vec<(String, usize, bool)>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (
                        ex.label(i, j).to_string(),
                        ex.shape.get(i, j).dim(),
                        ex.shape.get(i, j).same_subspace(ex.reference.get(i, j)),
                    )
                })
                .collect()
        })
        .collect();
    let width = cells.iter().flatten().map(|(l, _, _)| l.len()).max().unwrap_or(0);
    let mut pretty = format!(
        "{} n = {n}{} g = {g}: entry shapes (dimension over the scalars)\n",
        kind.id(),
        if kind == ExampleKind::RootOfUnity {
            String::new()
        } else {
            format!(" d = {d}")
        }
    );
    for row in &cells {
        let line: Vec<String> = row
            .iter()
            .map(|(l, dim, ok)| format!("{l:<width$} [{dim:>3}]{}", if *ok { "" } else { " !" }))
            .collect();
        pretty.push_str(&format!("  {}\n", line.join("   ")));
    }
    let matches = ex.shape_matches() && ex.omega_containment != Some(false);
    let mut json = json!({
        "example": kind.id(),
        "spec": encode_spec(&ex.spec, &delta),
        "labels": cells.iter().map(|r| r.iter().map(|c| c.0.clone()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "dimensions": cells.iter().map(|r| r.iter().map(|c| c.1).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "shape_matches": ex.shape_matches(),
        "omega_containment": ex.omega_containment,
    });
    if let Some(c) = ex.omega_containment {
        pretty.push_str(&format!("off-diagonal entries inside E0 + E0v1 + E0v2: {c}\n"));
    }
    if let Some(seed) = seed {
        let a = sample_supermatrix(&ex.spec, seed)?;
        json["sample"] = encode_matrix(e, &a);
        pretty.push_str(&format!("sample (seed {seed}):\n{}\n", pretty_matrix(e, &a)));
    }
    Ok(output(json, pretty.trim_end().to_string(), Some(matches)))
}

pub fn reproduce(seed: u64, criterion: Option<u8>, out: Option<&Path>, mutate_sdet: bool, json_mode: bool) -> Result<Output> {
    let mut opts = Options { seed, ..Options::default() };
    if mutate_sdet {
        opts.oracle_sdet = sdet_without_column_signs;
    }
    let report = match criterion {
        Some(id) => run_criteria(&[id], &opts)?,
        None => reproduce_all(&opts)?,
    };
    for (r, t) in report.results.iter().zip(&report.runtimes) {
        eprintln!("criterion {:>2}: {:.3}s", r.id, t.as_secs_f64());
    }
    let canonical = report.to_canonical_string();
    if let Some(path) = out {
        std::fs::write(path, &canonical).map_err(|e| Error::InvalidParameter(format!("{}: {e}", path.display())))?;
    }
    let pretty = if json_mode {
        String::new()
    } else {
        report.results.iter().map(|r| r.line()).collect::<Vec<_>>().join("\n")
    };
    Ok(output(report.to_json(), pretty, Some(report.passed())))
}
