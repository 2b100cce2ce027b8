use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{Options, Outcome, Transcript};
use crate::codec::{encode_charpoly, encode_matrix, ElementCodec};
use crate::dets::{
    cayley_hamilton_check, charpoly, integrality_certificate, ldet, leading_coefficient_closed_form, preadjoint, preadjoint_by_minors, rdet, sdet,
    sdet_composed_form, Side,
};
use crate::error::Result;
use crate::grassmann::{epsilon, Grassmann};
use crate::matrices::{is_transitive, theta, theta_counterexample, theta_inverse, Matrix, ThetaFailure, TransitiveMatrix};
use crate::perm::{factorial, Permutations};
use crate::rings::{classical_adjugate, classical_det, CyclotomicAlgebra, MPoly, OracleRing, Ring, SampleRing};
use crate::scalars::{CyclotomicField, Rational};
use crate::supermatrix::{example_algebra, ExampleAlgebra, ExampleKind, Shape, SuperAlgebraSpec};

pub(super) fn run(id: u8, opts: &Options, t: &mut Transcript) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(id as u64));
    match id {
        1 => transitivity(&mut rng, t),
        2 => hadamard_automorphism(&mut rng, t),
        3 => oracle_equivalence(opts, t),
        4 => minor_identity(&mut rng, t),
        5 => closure(&mut rng, t),
        6 => fixed_ring(&mut rng, t),
        7 => cayley_hamilton(&mut rng, t),
        8 => embedding(&mut rng, t),
        9 => integrality(&mut rng, t),
        10 => shapes(t),
        _ => unreachable!("criterion ids are checked by the caller"),
    }
}

/// `sum_{a, b} sgn(a) a_{a(1) b(1)} ... a_{a(n) b(n)}`: the symmetric
/// determinant with the column signs dropped. Used to confirm that the
/// oracle check rejects a broken implementation.
pub fn sdet_without_column_signs(ring: &OracleRing, a: &Matrix<MPoly>) -> Result<MPoly> {
    let n = a.square_size()?;
    let perms: Vec<(Vec<usize>, i8)> = Permutations::new(n).collect();
    let mut acc = ring.zero();
    for (alpha, sg) in &perms {
        for (beta, _) in &perms {
            let mut prod = ring.one();
            for k in 0..n {
                prod = ring.mul(&prod, a.get(alpha[k], beta[k]));
            }
            acc = if *sg < 0 { ring.sub(&acc, &prod) } else { ring.add(&acc, &prod) };
        }
    }
    Ok(acc)
}

fn outcome(failures: Vec<String>, summary: String) -> Result<Outcome> {
    Ok(match failures.first() {
        None => Outcome { passed: true, summary },
        Some(f) => Outcome {
            passed: false,
            summary: format!("{} failure(s); first: {f}", failures.len()),
        },
    })
}

fn random_matrix<R: SampleRing, G: Rng>(ring: &R, n: usize, rng: &mut G) -> Matrix<R::Elem> {
    Matrix::from_fn(n, n, |_, _| ring.random_element(rng))
}

/// Cuts `d_1 < ... < d_n` with blocks of size 1 or 2.
fn random_cuts<G: Rng>(n: usize, rng: &mut G) -> Vec<usize> {
    let mut d = 0;
    (0..n)
        .map(|_| {
            d += rng.gen_range(1..=2);
            d
        })
        .collect()
}

fn transitivity_on<R: ElementCodec, G: Rng>(ring: &R, count: usize, rng: &mut G, t: &mut Transcript, failures: &mut Vec<String>) -> Result<()> {
    for i in 0..count {
        let n = 2 + i % 3;
        let units: Vec<R::Elem> = (0..n).map(|_| ring.random_unit(rng)).collect();
        let tm = TransitiveMatrix::from_units(ring, &units)?;
        let m = tm.matrix();
        t.absorb(&encode_matrix(ring, m));
        let label = format!("{} #{i}", ring.describe());
        if m.mul(ring, m)? != m.map(|x| ring.mul(&ring.from_int(n as i64), x)) {
            failures.push(format!("{label}: T^2 != nT"));
        }
        let cuts = random_cuts(n, rng);
        let blown = tm.blow_up(ring, &cuts)?;
        if !is_transitive(ring, blown.matrix()) {
            failures.push(format!("{label}: blow-up at {cuts:?} is not transitive"));
        }
        let certified = TransitiveMatrix::certify(ring, m.clone())?;
        if TransitiveMatrix::from_units(ring, &certified.factor())?.matrix() != m {
            failures.push(format!("{label}: factor and rebuild differ"));
        }
    }
    Ok(())
}

fn transitivity(rng: &mut ChaCha8Rng, t: &mut Transcript) -> Result<Outcome> {
    let mut failures = Vec::new();
    let count = 200;
    transitivity_on(&CyclotomicField::rationals(), count, rng, t, &mut failures)?;
    transitivity_on(&CyclotomicField::new(3)?, count, rng, t, &mut failures)?;
    transitivity_on(&Grassmann::rational(4), count, rng, t, &mut failures)?;
    outcome(
        failures,
        format!("{count} matrices each over Q, Q(zeta_3), E4 (n = 2, 3, 4): T^2 = nT, blow-ups transitive, factor/rebuild exact"),
    )
}

fn theta_on<R: ElementCodec, G: Rng>(
    ring: &R,
    tm: &TransitiveMatrix<R::Elem>,
    count: usize,
    rng: &mut G,
    t: &mut Transcript,
    failures: &mut Vec<String>,
) -> Result<()> {
    let n = tm.size();
    let id = Matrix::identity(ring, n);
    if theta(ring, tm, &id)? != id {
        failures.push(format!("{}: T * I != I", ring.describe()));
    }
    for i in 0..count {
        let (a, b) = (random_matrix(ring, n, rng), random_matrix(ring, n, rng));
        let (ta, tb) = (theta(ring, tm, &a)?, theta(ring, tm, &b)?);
        let tab = theta(ring, tm, &a.mul(ring, &b)?)?;
        t.absorb(&encode_matrix(ring, &tab));
        if tab != ta.mul(ring, &tb)? {
            failures.push(format!("{} pair {i}: not multiplicative", ring.describe()));
        }
        if theta(ring, tm, &a.add(ring, &b)?)? != ta.add(ring, &tb)? {
            failures.push(format!("{} pair {i}: not additive", ring.describe()));
        }
        if theta_inverse(ring, tm, &ta)? != a {
            failures.push(format!("{} pair {i}: inverse does not undo", ring.describe()));
        }
    }
    Ok(())
}

fn hadamard_automorphism(rng: &mut ChaCha8Rng, t: &mut Transcript) -> Result<Outcome> {
    let mut failures = Vec::new();
    let count = 100;
    let q = CyclotomicField::rationals();
    let units: Vec<_> = (0..3).map(|_| q.random_unit(rng)).collect();
    theta_on(&q, &TransitiveMatrix::from_units(&q, &units)?, count, rng, t, &mut failures)?;
    let q3 = CyclotomicField::new(3)?;
    let zeta = q3.primitive_root(3).expect("order 3 field");
    theta_on(&q3, &TransitiveMatrix::powers_of(&q3, &zeta, 3)?, count, rng, t, &mut failures)?;
    let e = Grassmann::rational(4);
    let even_units: Vec<_> = (0..3).map(|_| e.even_part(&e.random_unit(rng))).collect();
    theta_on(&e, &TransitiveMatrix::from_units(&e, &even_units)?, count, rng, t, &mut failures)?;

    let bad = Matrix::from_rows(&q, vec![vec![q.from_int(1), q.from_int(2)], vec![q.from_int(3), q.from_int(1)]])?;
    let witness = match theta_counterexample(&q, &bad)? {
        Some(ThetaFailure::NotMultiplicative { i, j, k, lhs, rhs }) if lhs != rhs => {
            t.absorb(&json!({"i": i, "j": j, "k": k, "lhs": encode_matrix(&q, &lhs), "rhs": encode_matrix(&q, &rhs)}));
            format!("E_{}{} E_{}{}", i + 1, j + 1, j + 1, k + 1)
        }
        other => {
            failures.push(format!("no multiplicativity failure found for [[1,2],[3,1]]: {other:?}"));
            String::new()
        }
    };
    outcome(
        failures,
        format!("{count} pairs each over Q, Q(zeta_3), E4; non-transitive [[1,2],[3,1]] fails on {witness}"),
    )
}

fn oracle_equivalence(opts: &Options, t: &mut Transcript) -> Result<Outcome> {
    let mut failures = Vec::new();
    for n in 2..=4 {
        let o = OracleRing::matrix_variables(n);
        let a = o.symbolic_matrix(n)?;
        let s = (opts.oracle_sdet)(&o, &a)?;
        t.absorb(&o.encode(&s));
        if s != o.scale(&classical_det(&o, &a)?, &Rational::from_int(factorial(n) as i64)) {
            failures.push(format!("n = {n}: sdet != n! det"));
        }
        let adj = preadjoint(&o, &a)?;
        t.absorb(&encode_matrix(&o, &adj));
        if adj != classical_adjugate(&o, &a)?.scale(&o, &Rational::from_int(factorial(n - 1) as i64)) {
            failures.push(format!("n = {n}: A* != (n-1)! adj(A)"));
        }
    }
    outcome(failures, "symbolic n = 2, 3, 4: sdet = n! det and A* = (n-1)! adj".into())
}

fn minor_identity(rng: &mut ChaCha8Rng, t: &mut Transcript) -> Result<Outcome> {
    let mut failures = Vec::new();
    let e = Grassmann::rational(6);
    let count = 50;
    for i in 0..count {
        let n = 1 + i % 4;
        let a = random_matrix(&e, n, rng);
        let adj = preadjoint(&e, &a)?;
        let s = sdet(&e, &a)?;
        t.absorb(&encode_matrix(&e, &adj));
        if adj != preadjoint_by_minors(&e, &a)? {
            failures.push(format!("matrix {i} (n = {n}): preadjoint differs from signed minors"));
        }
        if s != sdet_composed_form(&e, &a)? {
            failures.push(format!("matrix {i} (n = {n}): the two permutation forms differ"));
        }
        if a.mul(&e, &adj)?.trace(&e)? != s || adj.mul(&e, &a)?.trace(&e)? != s {
            failures.push(format!("matrix {i} (n = {n}): tr(A A*) or tr(A* A) differs from sdet"));
        }
    }
    outcome(
        failures,
        format!("{count} random matrices over E6, n = 1..4: A* entries = signed minors, both sum forms and trace symmetry agree"),
    )
}

fn standard_examples() -> Result<Vec<(String, ExampleAlgebra)>> {
    let list = [
        (ExampleKind::EvenOdd, 2, 1),
        (ExampleKind::EvenOdd, 3, 1),
        (ExampleKind::EvenOdd, 3, 2),
        (ExampleKind::RootOfUnity, 2, 0),
        (ExampleKind::RootOfUnity, 3, 0),
        (ExampleKind::Conjugation, 2, 1),
        (ExampleKind::Conjugation, 3, 1),
        (ExampleKind::Conjugation, 3, 2),
    ];
    list.iter()
        .map(|&(kind, n, d)| Ok((format!("{} n={n} d={d}", kind.id()), example_algebra(kind, n, d, 4)?)))
        .collect()
}

fn closure(rng: &mut ChaCha8Rng, t: &mut Transcript) -> Result<Outcome> {
    let mut failures = Vec::new();
    let count = 50;
    let examples = standard_examples()?;
    for (label, ex) in &examples {
        let e = ex.spec.ring();
        for i in 0..count {
            let a = ex.shape.sample(rng);
            let adj = preadjoint(e, &a)?;
            t.absorb(&encode_matrix(e, &adj));
            if !ex.spec.is_supermatrix(&a)? || !ex.spec.is_supermatrix(&adj)? {
                failures.push(format!("{label} sample {i}: preadjoint left the algebra"));
            }
        }
    }
    outcome(
        failures,
        format!("{count} members each of {} example algebras (g = 4): A* stays in the algebra", examples.len()),
    )
}

fn fixed_ring(rng: &mut ChaCha8Rng, t: &mut Transcript) -> Result<Outcome> {
    let mut failures = Vec::new();
    let count = 4;
    let examples = standard_examples()?;
    for (label, ex) in &examples {
        let (e, delta) = (ex.spec.ring(), ex.spec.delta());
        for i in 0..count {
            let a = ex.shape.sample(rng);
            for k in 1..=2 {
                for (which, v) in [("rdet", rdet(e, &a, k)?), ("ldet", ldet(e, &a, k)?)] {
                    t.absorb(&e.encode(&v));
                    if !delta.fixes(&v) {
                        failures.push(format!("{label} sample {i}: {which}_{k} not fixed"));
                    }
                }
                for side in [Side::Right, Side::Left] {
                    let p = charpoly(e, &a, k, side)?;
                    t.absorb(&encode_charpoly(e, &p));
                    if !p.coefficients_fixed(e, delta) {
                        failures.push(format!("{label} sample {i}: {} charpoly k = {k} has a coefficient outside Fix", side.name()));
                    }
                    if !p.leading_matches(e) {
                        failures.push(format!(
                            "{label} sample {i}: {} charpoly k = {k} has the wrong leading coefficient",
                            side.name()
                        ));
                    }
                }
            }
        }
    }
    outcome(
        failures,
        format!(
            "{count} members each of {} example algebras: rdet, ldet (k = 1, 2) and all charpoly coefficients in Fix(delta)",
            examples.len()
        ),
    )
}

fn cayley_hamilton(rng: &mut ChaCha8Rng, t: &mut Transcript) -> Result<Outcome> {
    let mut failures = Vec::new();
    let count = 25;
    let ex = example_algebra(ExampleKind::EvenOdd, 2, 1, 4)?;
    let e = ex.spec.ring();
    let closed = leading_coefficient_closed_form(2, 2);
    if closed != Rational::from_int(2) {
        failures.push(format!("closed form for (2, 2) is {closed}, expected 2"));
    }
    let mut left_zero = 0;
    for i in 0..count {
        let a = ex.shape.sample(rng);
        let right = cayley_hamilton_check(e, &a, 2, Side::Right)?;
        t.absorb(&encode_charpoly(e, &right.charpoly));
        if !right.residual_is_zero(e) {
            failures.push(format!("sample {i}: nonzero residual {}", encode_matrix(e, &a)));
        }
        if !right.charpoly.leading_matches(e) || right.charpoly.degree() != 4 {
            failures.push(format!("sample {i}: degree or leading coefficient differs from the closed form"));
        }
        let left = cayley_hamilton_check(e, &a, 2, Side::Left)?;
        if left.residual_is_zero(e) {
            left_zero += 1;
        }
    }
    let big = example_algebra(ExampleKind::EvenOdd, 3, 1, 6)?;
    let a = big.shape.sample(rng);
    let report = cayley_hamilton_check(big.spec.ring(), &a, 2, Side::Right)?;
    t.absorb(&encode_charpoly(big.spec.ring(), &report.charpoly));
    if !report.residual_is_zero(big.spec.ring()) || report.charpoly.degree() != 9 || !report.charpoly.leading_matches(big.spec.ring()) {
        failures.push("n = 3, k = 2 degree-9 identity fails".into());
    }
    outcome(
        failures,
        format!("{count} members of M2(E4, epsilon, P), k = 2: right residual 0, leading coefficient 2; n = 3 degree-9 instance 0; left residual 0 in {left_zero}/{count}"),
    )
}

fn embedding_on(label: &str, spec: &SuperAlgebraSpec<Grassmann>, rng: &mut ChaCha8Rng, t: &mut Transcript, failures: &mut Vec<String>) -> Result<()> {
    let e = spec.ring();
    let report = spec.embedding_conditions(&e.spanning_set()?);
    t.absorb(&json!(format!("{report:?}")));
    if !report.all_true() {
        failures.push(format!("{label}: embedding conditions not all true: {report:?}"));
    }
    if report.power_sum_implication != Some(true) {
        failures.push(format!("{label}: power sums do not imply inverse power sums"));
    }
    let pairs: Vec<_> = (0..100).map(|_| (e.random_element(rng), e.random_element(rng))).collect();
    for (r, _) in pairs.iter().take(5) {
        t.absorb(&encode_matrix(e, &spec.embed(r)?));
    }
    let v = spec.verify_embedding(&pairs, &report)?;
    if !v.passed() || !v.regime3 {
        failures.push(format!("{label}: {}", v.failure.unwrap_or_else(|| "not in the third regime".into())));
    }
    Ok(())
}

fn embedding(rng: &mut ChaCha8Rng, t: &mut Transcript) -> Result<Outcome> {
    let mut failures = Vec::new();
    embedding_on(
        "(E4, epsilon, P, 2)",
        &example_algebra(ExampleKind::EvenOdd, 2, 1, 4)?.spec,
        rng,
        t,
        &mut failures,
    )?;
    embedding_on(
        "(E4, rho_e, P^(e), 3)",
        &example_algebra(ExampleKind::RootOfUnity, 3, 0, 4)?.spec,
        rng,
        t,
        &mut failures,
    )?;
    outcome(failures, "100 pairs each for (E4, epsilon, P, n=2) and (E4 over Q(zeta_3), rho_e, P^(e), n=3): all conditions true, inverse power sums implied, additive, multiplicative, row-sum witness, images in the algebra".into())
}

fn integrality(rng: &mut ChaCha8Rng, t: &mut Transcript) -> Result<Outcome> {
    let mut failures = Vec::new();
    let count = 10;
    let e = Grassmann::rational(4);
    let eps = epsilon(&e);
    for i in 0..count {
        let r = e.random_element(rng);
        let cert = integrality_certificate(&e, &eps, &r, 2, 2)?;
        for side in [&cert.right, &cert.left] {
            t.absorb(&json!(side.coeffs.iter().map(|c| e.encode(c)).collect::<Vec<_>>()));
            if side.coeffs.len() != 4 || !side.coeffs.iter().all(|c| c.is_even()) {
                failures.push(format!("element {i}: a coefficient lies outside E0"));
            }
        }
        if !cert.holds(&e) {
            failures.push(format!("element {i} ({}): substitution is not zero", e.pretty(&r)));
        }
    }
    outcome(
        failures,
        format!("{count} random elements of E4 (n = 2, k = 2, epsilon): monic degree-4 relations over E0 vanish on both sides"),
    )
}

fn absorb_shape(e: &Grassmann, shape: &Shape, t: &mut Transcript) {
    for i in 0..shape.n() {
        for j in 0..shape.n() {
            t.absorb(&json!(shape.get(i, j).basis().iter().map(|b| e.encode(b)).collect::<Vec<_>>()));
        }
    }
}

fn shapes(t: &mut Transcript) -> Result<Outcome> {
    let mut failures = Vec::new();
    for n in [2, 3] {
        let ex = example_algebra(ExampleKind::RootOfUnity, n, 0, 4)?;
        absorb_shape(ex.spec.ring(), &ex.shape, t);
        if !ex.shape_matches() {
            failures.push(format!("root-of-unity n = {n}: solved entries differ from the graded components"));
        }
    }
    for (n, d) in [(2, 1), (3, 1), (3, 2)] {
        let ex = example_algebra(ExampleKind::Conjugation, n, d, 4)?;
        absorb_shape(ex.spec.ring(), &ex.shape, t);
        if !ex.shape_matches() {
            failures.push(format!("conjugation n = {n}, d = {d}: solved entries differ from E0+E0v1 / Omega"));
        }
        if ex.omega_containment != Some(true) {
            failures.push(format!("conjugation n = {n}, d = {d}: an entry leaves E0 + E0v1 + E0v2"));
        }
    }
    outcome(
        failures,
        "g = 4: root-of-unity entries are the graded components (n = 2, 3); conjugation entries are E0+E0v1 and the Omega sets".into(),
    )
}
