// SPDX-License-Identifier: Apache-2.0
//! One handler per verb. Each returns a report and a JSON result; [`run`]
//! wraps them in the output envelope and picks the exit status.

use std::path::Path;

use compquad::clifford::CliffordElem;
use compquad::compalg::{isotopy_dictionary, kaplansky, make_split, para, CompositionAlgebra};
use compquad::composition::{
    identity_suite, iso_decision, pfister_data, pointed_suite, similitude_multiplier, verify_quadpair_iso,
    Composition, PointedComposition,
};
use compquad::json::{
    canonical_string, matrix_from_json, matrix_to_json, matrix_triple_from_json, scalar_to_json, to_canonical,
    vector_to_json, Json,
};
use compquad::quadform::{classify, Invariants, QuadForm};
use compquad::report::{Checker, Report};
use compquad::selftest::{self, CRITERIA};
use compquad::triality::{
    differential_consistency, extend_similitude, local_triality_solve, make_triple, theta_maps,
    triality_lift_isometry, verify_theta_relations, PsiA,
};
use compquad::{Error, FieldSpec, Matrix, Result, Scalar};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::{Cli, Verb};

struct Output {
    report: Report,
    result: Value,
}

impl Output {
    fn new(report: Report, result: Value) -> Self {
        Output { report, result }
    }
}

/// The report text and exit status for `cli`.
pub fn run(cli: &Cli) -> (String, u8) {
    match cli.verb {
        Verb::Selftest => return run_selftest(cli),
        Verb::Derive => {
            // Bare composition JSON, so that `derive` can be chained.
            return match composition(cli, 0).and_then(|c| c.derive()) {
                Ok(d) => (to_canonical(&d), 0),
                Err(e) => envelope(cli, Err(e)),
            };
        }
        _ => {}
    }
    let out = match cli.verb {
        Verb::Verify => composition(cli, 0).map(|c| Output::new(c.verify(), describe(&c))),
        Verb::IdentitySuite => composition(cli, 0).map(|c| Output::new(identity_suite(&c), describe(&c))),
        Verb::CliffordIso => composition(cli, 0).and_then(|c| Ok(Output::new(verify_quadpair_iso(&c)?, describe(&c)))),
        Verb::Pfister => pfister(cli),
        Verb::Pointed => pointed(cli),
        Verb::Para => para_cmd(cli),
        Verb::Kaplansky => kaplansky_cmd(cli),
        Verb::Isot => isot(cli),
        Verb::Lift => lift(cli),
        Verb::LocalLift => local_lift(cli),
        Verb::Theta => theta(cli),
        Verb::Extend => extend(cli),
        Verb::PsiA => psi_a(cli),
        Verb::Classify => classify_cmd(cli),
        Verb::Selftest | Verb::Derive => unreachable!("handled above"),
    };
    envelope(cli, out)
}

fn verb_name(v: Verb) -> String {
    use clap::ValueEnum;
    v.to_possible_value().map_or_else(String::new, |p| p.get_name().to_owned())
}

/// `Parse` is 2, faults are 3, every other error is a failed certificate.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 2,
        e if e.is_fault() => 3,
        _ => 1,
    }
}

/// The variant name of `e`, e.g. `PolarizationMismatch`.
fn error_kind(e: &Error) -> String {
    let d = format!("{e:?}");
    d.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_owned()
}

fn error_json(e: &Error) -> Value {
    json!({"kind": error_kind(e), "message": e.to_string()})
}

fn envelope(cli: &Cli, out: Result<Output>) -> (String, u8) {
    let inputs: Vec<String> = cli.inputs.iter().map(|p| p.display().to_string()).collect();
    let mut v = json!({
        "verb": verb_name(cli.verb),
        "inputs": inputs,
        "seed": cli.seed,
    });
    let code = match out {
        Ok(o) => {
            let pass = o.report.checks.is_empty() || o.report.pass();
            if let Some(c) = o.report.first_failure() {
                eprintln!("compquad: certificate failed: {}", c.identity);
            }
            v["first_failure"] = o.report.first_failure().map_or(Value::Null, |c| json!(c.identity));
            v["report"] = o.report.to_json();
            v["result"] = o.result;
            v["pass"] = json!(pass);
            v["error"] = Value::Null;
            u8::from(!pass)
        }
        Err(e) => {
            eprintln!("compquad: {e}");
            v["error"] = error_json(&e);
            v["pass"] = json!(false);
            v["report"] = json!([]);
            v["first_failure"] = Value::Null;
            v["result"] = Value::Null;
            exit_code(&e)
        }
    };
    (canonical_string(&v), code)
}

fn run_selftest(cli: &Cli) -> (String, u8) {
    let fields = cli.field.map_or_else(FieldSpec::defaults, |f| vec![f]);
    let ids: Vec<u8> = if cli.criteria.is_empty() {
        CRITERIA.iter().map(|(i, _)| *i).collect()
    } else {
        cli.criteria.clone()
    };
    let outcomes = selftest::run(&ids, &fields, cli.seed, &cli.search());
    let mut code = 0;
    let mut rows = Vec::new();
    for o in &outcomes {
        let status = if o.pass() { "PASS" } else { "FAIL" };
        eprintln!("criterion {:>2} {status} ({:.1} s) {}", o.id, o.seconds, o.title);
        let mut row = json!({"id": o.id, "title": o.title, "pass": o.pass()});
        match &o.result {
            Ok(r) => {
                if let Some(c) = r.first_failure() {
                    eprintln!("    first failure: {}", c.identity);
                }
                row["report"] = r.to_json();
                row["error"] = Value::Null;
                code = code.max(u8::from(!r.pass()));
            }
            Err(e) => {
                eprintln!("    error: {e}");
                row["report"] = json!([]);
                row["error"] = error_json(e);
                code = code.max(1);
                if e.is_fault() {
                    code = 3;
                }
            }
        }
        rows.push(row);
    }
    let fields: Vec<Value> = fields.iter().map(Json::to_json).collect();
    let v = json!({
        "verb": "selftest",
        "seed": cli.seed,
        "fields": fields,
        "criteria": rows,
        "pass": code == 0,
    });
    (canonical_string(&v), code)
}

fn read_value(cli: &Cli, path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let mut v: Value =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    if let Some(f) = cli.field {
        override_field(&mut v, &f.to_json());
    }
    Ok(v)
}

/// Replaces every `"field"` entry by `f`; scalars are then read in `f`.
fn override_field(v: &mut Value, f: &Value) {
    match v {
        Value::Object(m) => {
            for (k, x) in m.iter_mut() {
                if k == "field" && x.get("kind").is_some() {
                    *x = f.clone();
                } else {
                    override_field(x, f);
                }
            }
        }
        Value::Array(a) => a.iter_mut().for_each(|x| override_field(x, f)),
        _ => {}
    }
}

fn input(cli: &Cli, i: usize, what: &str) -> Result<Value> {
    let p = cli
        .inputs
        .get(i)
        .ok_or_else(|| Error::Parse(format!("missing input {}: {what}", i + 1)))?;
    read_value(cli, p)
}

fn default_field(cli: &Cli) -> FieldSpec {
    cli.field.unwrap_or(FieldSpec::Rationals)
}

/// Input `i`, or the split octonions over `--field` when absent.
fn composition(cli: &Cli, i: usize) -> Result<Composition> {
    if cli.inputs.len() <= i {
        return Ok(make_split(8, default_field(cli))?.composition().clone());
    }
    Composition::from_json(&input(cli, i, "composition")?)
}

fn algebra(cli: &Cli, i: usize) -> Result<CompositionAlgebra> {
    if cli.inputs.len() <= i {
        return make_split(8, default_field(cli));
    }
    CompositionAlgebra::from_json(&input(cli, i, "composition algebra")?)
}

/// A bare list of rows, or an object with a `"matrix"` entry.
fn matrix(cli: &Cli, i: usize, field: FieldSpec) -> Result<Matrix> {
    let v = input(cli, i, "matrix")?;
    matrix_from_json(field, v.get("matrix").unwrap_or(&v))
}

/// Three matrices, bare or as a similitude triple.
fn matrix_triple(cli: &Cli, i: usize, field: FieldSpec) -> Result<[Matrix; 3]> {
    let v = input(cli, i, "matrix triple")?;
    matrix_triple_from_json(field, v.get("g").unwrap_or(&v))
}

/// `sha256:` of the canonical JSON of `c`.
fn content_hash(c: &Composition) -> String {
    let digest = Sha256::digest(to_canonical(c).as_bytes());
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

fn describe(c: &Composition) -> Value {
    json!({"composition": content_hash(c), "dim": c.dim(), "field": c.field().to_json()})
}

fn triple_json(g: &[Matrix; 3], lambda: &[Scalar; 3]) -> Value {
    json!({
        "field": g[0].field().to_json(),
        "g": g.iter().map(matrix_to_json).collect::<Vec<_>>(),
        "lambda": vector_to_json(lambda),
    })
}

fn flag_check(name: &str, cases: &[(&str, bool)]) -> compquad::report::Check {
    let mut ch = Checker::new(name);
    for (label, ok) in cases {
        ch.case(|| vec![(*label).to_owned()], *ok, true);
    }
    ch.finish()
}

fn pfister(cli: &Cli) -> Result<Output> {
    let c = composition(cli, 0)?;
    let p = pfister_data(&c)?;
    let mut rep = Report::new();
    rep.push(flag_check(
        "q_i ≅ ⟨λ_i⟩n_C",
        &[("i=1", p.isometric[0]), ("i=2", p.isometric[1]), ("i=3", p.isometric[2])],
    ));
    let mut result = describe(&c);
    result["lambda"] = vector_to_json(&p.lambda);
    result["n_c"] = p.n_c.to_json();
    result["n_c_hyperbolic"] = json!(p.n_c_hyperbolic);
    if cli.inputs.len() > 1 {
        let ct = composition(cli, 1)?;
        let d = iso_decision(&c, &ct, &cli.search())?;
        if let Some(w) = &d.witness {
            let lam = similitude_multiplier(&c, &ct, &w.g);
            let one = c.field().one();
            let ok = lam == Some([one.clone(), one.clone(), one]);
            rep.push(flag_check("witness is an isomorphism C → C̃", &[("multiplier (1,1,1)", ok)]));
        }
        result["other"] = json!(content_hash(&ct));
        result["similar"] = json!(d.similar);
        result["isomorphic"] = json!(d.isomorphic);
        result["witness"] = d.witness.as_ref().map_or(Value::Null, Json::to_json);
    }
    Ok(Output::new(rep, result))
}

fn pointed(cli: &Cli) -> Result<Output> {
    let p = if cli.inputs.is_empty() {
        let a = make_split(8, default_field(cli))?;
        let e = a.unit().ok_or(Error::NotUnital)?.to_vec();
        PointedComposition::new(a.composition().clone(), e.clone(), e.clone(), e)?
    } else {
        PointedComposition::from_json(&input(cli, 0, "pointed composition")?)?
    };
    let r = pointed_suite(&p)?;
    let mut result = describe(p.base());
    result["delta"] = json!(r.delta.iter().map(matrix_to_json).collect::<Vec<_>>());
    result["s"] = r.s.to_json();
    Ok(Output::new(r.report, result))
}

fn para_cmd(cli: &Cli) -> Result<Output> {
    let a = algebra(cli, 0)?;
    let p = para(&a)?;
    let mut rep = identity_suite(p.composition());
    rep.push(flag_check("x * y = x̄ ⋄ ȳ is symmetric", &[("symmetric", p.is_symmetric())]));
    Ok(Output::new(rep, p.to_json()))
}

fn kaplansky_cmd(cli: &Cli) -> Result<Output> {
    let a = algebra(cli, 0)?;
    let k = kaplansky(&a, &cli.search())?;
    let v = isotopy_dictionary(&a, &k.algebra, &k.iso.g)?;
    let rep = Report {
        checks: vec![flag_check(
            "(r_u, ℓ_u, Id): C(A) → C(A*)",
            &[
                ("isotopy", v.isotopy),
                ("verdicts agree", v.consistent()),
                ("isomorphism", k.iso.is_isomorphism()),
            ],
        )],
    };
    let result = json!({
        "algebra": k.algebra.to_json(),
        "u": vector_to_json(&k.u),
        "iso": k.iso.to_json(),
    });
    Ok(Output::new(rep, result))
}

fn isot(cli: &Cli) -> Result<Output> {
    let a = CompositionAlgebra::from_json(&input(cli, 0, "composition algebra")?)?;
    let f = matrix_triple(cli, 1, a.field())?;
    let at = if cli.inputs.len() > 2 { algebra(cli, 2)? } else { a.clone() };
    let v = isotopy_dictionary(&a, &at, &f)?;
    let rep = Report {
        checks: vec![flag_check(
            "f is an isotopy iff it is a similitude with multiplier (μ(f₂), μ(f₁), 1)",
            &[("verdicts agree", v.consistent())],
        )],
    };
    let opt = |l: &Option<[Scalar; 3]>| l.as_ref().map_or(Value::Null, |l| vector_to_json(l));
    let result = json!({"isotopy": v.isotopy, "lambda": opt(&v.lambda), "expected": opt(&v.expected)});
    Ok(Output::new(rep, result))
}

fn lift(cli: &Cli) -> Result<Output> {
    let c = Composition::from_json(&input(cli, 0, "composition")?)?;
    let g1 = matrix(cli, 1, c.field())?;
    let t = make_triple(&c)?;
    let l = triality_lift_isometry(&t, &g1)?;
    let result = json!({
        "composition": content_hash(&c),
        "factors": l.factors.iter().map(|v| vector_to_json(v)).collect::<Vec<_>>(),
        "xi": l.xi.to_json(),
        "g2": matrix_to_json(&l.g2),
        "g3": matrix_to_json(&l.g3),
        "lambda": vector_to_json(&l.lambda),
    });
    Ok(Output::new(Report { checks: vec![l.certificate] }, result))
}

fn local_lift(cli: &Cli) -> Result<Output> {
    let c = Composition::from_json(&input(cli, 0, "composition")?)?;
    let g1 = matrix(cli, 1, c.field())?;
    let t = make_triple(&c)?;
    let s = local_triality_solve(&t, &g1)?;
    let kernel: Vec<Value> = s
        .kernel
        .iter()
        .map(|(a, b)| json!([matrix_to_json(a), matrix_to_json(b)]))
        .collect();
    let result = json!({
        "composition": content_hash(&c),
        "g2": matrix_to_json(&s.g2),
        "g3": matrix_to_json(&s.g3),
        "mu_dot": scalar_to_json(&s.mu_dot),
        "kernel": kernel,
    });
    Ok(Output::new(Report { checks: vec![s.certificate] }, result))
}

fn theta(cli: &Cli) -> Result<Output> {
    let c = composition(cli, 0)?;
    let t = make_triple(&c)?;
    let mut rep = verify_theta_relations(&t)?;
    rep.extend(differential_consistency(&t)?);
    let th = theta_maps(&t)?;
    let mut result = describe(&c);
    result["theta_plus"] = matrix_to_json(th.plus.matrix());
    result["theta_minus"] = matrix_to_json(th.minus.matrix());
    Ok(Output::new(rep, result))
}

fn extend(cli: &Cli) -> Result<Output> {
    let c = Composition::from_json(&input(cli, 0, "composition")?)?;
    let ct = Composition::from_json(&input(cli, 1, "target composition")?)?;
    let g1 = matrix(cli, 2, c.field())?;
    let (t, tt) = (make_triple(&c)?, make_triple(&ct)?);
    let s = extend_similitude(&t, &tt, &g1)?;
    let mut ch = Checker::new("λ₃g₃(x₁*₃x₂) = g₁x₁ *̃₃ g₂x₂");
    let lam = similitude_multiplier(&c, &ct, &s.g).map(Vec::from).unwrap_or_default();
    ch.case(|| vec!["multiplier".into()], lam, s.lambda.to_vec());
    let mut result = triple_json(&s.g, &s.lambda);
    result["source"] = json!(content_hash(&c));
    result["target"] = json!(content_hash(&ct));
    Ok(Output::new(Report { checks: vec![ch.finish()] }, result))
}

fn psi_a(cli: &Cli) -> Result<Output> {
    let a = CompositionAlgebra::from_json(&input(cli, 0, "composition algebra")?)?;
    let xi = CliffordElem::from_json(&input(cli, 1, "Clifford element")?)?;
    let psi = PsiA::new(&a)?;
    let f = psi.apply(&xi)?;
    let back = psi.invert(&f)?;
    let mut ch = Checker::new("ψ_A⁻¹(ψ_A(ξ)) = ξ");
    ch.case(Vec::new, back.coeffs().to_vec(), xi.coeffs().to_vec());
    let mu = psi.multiplier(&f);
    let result = json!({
        "f": f.iter().map(matrix_to_json).collect::<Vec<_>>(),
        "multiplier": mu.as_ref().map_or(Value::Null, |m| vector_to_json(m)),
    });
    Ok(Output::new(Report { checks: vec![ch.finish()] }, result))
}

fn classify_cmd(cli: &Cli) -> Result<Output> {
    let q = if cli.inputs.is_empty() {
        make_split(8, default_field(cli))?.q().clone()
    } else {
        QuadForm::from_json(&input(cli, 0, "quadratic form")?)?
    };
    let inv = classify(&q)?;
    let mut v = match &inv {
        Invariants::FiniteOdd {
            dim,
            p,
            disc,
            disc_is_square,
        } => json!({"kind": "FiniteOdd", "dim": dim, "p": p, "disc": scalar_to_json(disc), "disc_is_square": disc_is_square}),
        Invariants::Char2 { dim, arf } => json!({"kind": "Char2", "dim": dim, "arf": scalar_to_json(arf)}),
        Invariants::Rational {
            dim,
            positive,
            negative,
            disc,
            hasse,
        } => {
            let hasse: serde_json::Map<String, Value> = hasse.iter().map(|(p, h)| (p.to_string(), json!(h))).collect();
            json!({"kind": "Rational", "dim": dim, "positive": positive, "negative": negative,
                   "disc": disc.to_string(), "hasse": hasse})
        }
    };
    v["trivial_discriminant"] = json!(inv.trivial_discriminant());
    v["hyperbolic"] = json!(compquad::quadform::is_hyperbolic(&q)?);
    Ok(Output::new(Report::new(), v))
}
