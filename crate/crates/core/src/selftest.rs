// SPDX-License-Identifier: Apache-2.0
//! The acceptance batteries, one per criterion, run field by field.
//!
//! Fields are processed in parallel with `rayon`; every random input is drawn
//! from [`rng_for`] keyed by seed, criterion and field, and reports are
//! assembled in field order, so output depends only on `(fields, seed)`.

use std::time::Instant;

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::clifford::lie_ledger;
use crate::clifford::lift_generation_check;
use crate::compalg::{isotopy_dictionary, kaplansky_at, make_split, para, CompositionAlgebra};
use crate::composition::{
    identity_suite, multiplier_witness, pointed_suite, rho_similitude, verify_quadpair_iso, Composition,
    PointedComposition, IDENTITY_NAMES,
};
use crate::error::{Error, Result};
use crate::exactfield::{FieldSpec, Scalar};
use crate::json::to_canonical;
use crate::quadform::{QuadForm, SearchConfig};
use crate::report::{Checker, Report};
use crate::samples::{
    random_anisotropic, random_go, random_invertible, random_omega, random_proper_isometry, random_vector, rng_for,
};
use crate::triality::{
    derived_triple, local_triality_solve, make_triple, psi_center_formulas, theta_maps, triality_lift_isometry,
    verify_theta_relations, PsiA, TrialitarianTripleSplit,
};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 20_240_601;

/// Criterion numbers and titles.
pub const CRITERIA: [(u8, &str); 12] = [
    (1, "composition axiom and identity calculus"),
    (2, "cyclic derivative"),
    (3, "dimension guard"),
    (4, "Clifford quadratic-pair isomorphism"),
    (5, "Lie dimension ledger"),
    (6, "lift uniqueness span"),
    (7, "theta-map suite"),
    (8, "principle of triality and local triality"),
    (9, "rho-similitudes and multiplier group"),
    (10, "isotopy dictionary and psi_A"),
    (11, "pointed calculus"),
    (12, "central-idempotent formulas"),
];

/// The result of one criterion over all requested fields.
#[derive(Debug)]
pub struct Outcome {
    pub id: u8,
    pub title: &'static str,
    pub result: Result<Report>,
    pub seconds: f64,
}

impl Outcome {
    pub fn pass(&self) -> bool {
        matches!(&self.result, Ok(r) if r.pass())
    }
}

pub fn run(ids: &[u8], fields: &[FieldSpec], seed: u64, cfg: &SearchConfig) -> Vec<Outcome> {
    ids.iter()
        .map(|&id| {
            let title = CRITERIA
                .iter()
                .find(|(i, _)| *i == id)
                .map_or("unknown criterion", |(_, t)| t);
            let start = Instant::now();
            let result = criterion(id, fields, seed, cfg);
            Outcome {
                id,
                title,
                result,
                seconds: start.elapsed().as_secs_f64(),
            }
        })
        .collect()
}

/// Runs criterion `id` on every field and concatenates the reports, with
/// each identity prefixed by its field.
pub fn criterion(id: u8, fields: &[FieldSpec], seed: u64, cfg: &SearchConfig) -> Result<Report> {
    let per_field: Vec<Report> = fields
        .par_iter()
        .map(|&f| {
            let mut rng = rng_for(seed, &format!("criterion {id} {f}"));
            let r = match id {
                1 => c1(f),
                2 => c2(f),
                3 => c3(f),
                4 => verify_quadpair_iso(zorn(f)?.composition()),
                5 => c5(f),
                6 => c6(f),
                7 => c7(f),
                8 => c8(f, &mut rng),
                9 => c9(f, &mut rng, cfg),
                10 => c10(f, &mut rng, cfg),
                11 => c11(f),
                12 => psi_center_formulas(&make_triple(zorn(f)?.composition())?),
                _ => Err(Error::Parse(format!("no criterion {id}"))),
            }?;
            Ok(prefixed(f, r))
        })
        .collect::<Result<_>>()?;
    let mut out = Report::new();
    per_field.into_iter().for_each(|r| out.extend(r));
    Ok(out)
}

fn prefixed(f: FieldSpec, mut r: Report) -> Report {
    for c in &mut r.checks {
        c.identity = format!("{f}: {}", c.identity);
    }
    r
}

fn tagged(tag: &str, mut r: Report) -> Report {
    for c in &mut r.checks {
        c.identity = format!("{tag}: {}", c.identity);
    }
    r
}

fn zorn(f: FieldSpec) -> Result<CompositionAlgebra> {
    make_split(8, f)
}

/// The split compositions of dimension 2, 4, 8 and the para-octonions.
fn standard_compositions(f: FieldSpec) -> Result<Vec<(&'static str, Composition)>> {
    let z = zorn(f)?;
    Ok(vec![
        ("n=2", make_split(2, f)?.composition().clone()),
        ("n=4", make_split(4, f)?.composition().clone()),
        ("n=8", z.composition().clone()),
        ("para", para(&z)?.composition().clone()),
    ])
}

fn c1(f: FieldSpec) -> Result<Report> {
    let mut rep = Report::new();
    for (tag, c) in standard_compositions(f)? {
        let ids = identity_suite(&c);
        let mut count = Checker::new("all 18 identities evaluated");
        for name in IDENTITY_NAMES {
            count.case(|| vec![name.into()], ids.get(name).is_some(), true);
        }
        rep.extend(tagged(tag, c.verify()));
        rep.extend(tagged(tag, ids));
        rep.extend(tagged(tag, Report { checks: vec![count.finish()] }));
    }
    Ok(rep)
}

fn c2(f: FieldSpec) -> Result<Report> {
    let mut cube = Checker::new("∂³C = C as canonical JSON");
    let mut fixed = Checker::new("∂S = S as canonical JSON");
    for (tag, c) in standard_compositions(f)? {
        let d3 = c.derive()?.derive()?.derive()?;
        cube.case(|| vec![tag.into()], to_canonical(&d3) == to_canonical(&c), true);
        if tag == "para" {
            fixed.case(|| vec![tag.into()], to_canonical(&c.derive()?) == to_canonical(&c), true);
        }
    }
    Ok(Report {
        checks: vec![cube.finish(), fixed.finish()],
    })
}

fn c3(f: FieldSpec) -> Result<Report> {
    let mut rep = Report::new();
    let mut one = Checker::new("n = 1 constructor exists iff char ≠ 2");
    match Composition::one_dimensional(f) {
        Ok(c) => one.case(|| vec!["n=1".into()], c.is_composition() && !f.is_char2(), true),
        Err(_) => one.case(|| vec!["n=1".into()], f.is_char2(), true),
    };
    rep.push(one.finish());
    let mut split = Checker::new("n = 2, 4, 8 constructors verify");
    for n in [2, 4, 8] {
        split.case(|| vec![format!("n={n}")], make_split(n, f)?.composition().is_composition(), true);
    }
    rep.push(split.finish());
    let mut three = Checker::new("random n = 3 bilinear maps are not compositions");
    if f.is_char2() {
        let ones = vec![f.one(); 3];
        three.case(|| vec!["<1,1,1>".into()], QuadForm::diagonal(f, &ones).is_err(), true);
    } else {
        for s in 0..1000u64 {
            let rng = &mut rng_for(s, &format!("dimension three {f}"));
            let form = |rng: &mut ChaCha8Rng| {
                let d: Vec<Scalar> = (0..3).map(|_| f.random_nonzero(rng, 3)).collect();
                QuadForm::diagonal(f, &d)
            };
            let (q1, q2, q3) = (form(rng)?, form(rng)?, form(rng)?);
            let c = Composition::new(q1, q2, q3, random_vector(f, 27, rng))?;
            three.case(|| vec![format!("seed={s}")], c.is_composition(), false);
        }
    }
    rep.push(three.finish());
    Ok(rep)
}

fn c5(f: FieldSpec) -> Result<Report> {
    let alg = crate::clifford::CliffordAlgebra::new(zorn(f)?.q())?;
    let l = lie_ledger(&alg)?;
    let mut dims = Checker::new("dimensions of o, go, pgo, γ, spin, ω");
    for (name, got, want) in [
        ("o", l.dim_o, 28),
        ("go", l.dim_go, 29),
        ("pgo", l.dim_pgo, 28),
        ("γ", l.dim_gamma, 29),
        ("spin", l.dim_spin, 28),
        ("ω", l.dim_omega, 30),
    ] {
        dims.case(|| vec![name.into()], got, want);
    }
    let mut kers = Checker::new("ker χ̇₀ = Z⁰ and ker χ̇ = F");
    kers.case(|| vec!["χ̇₀".into()], l.ker_chi0_is_trace_zero, true);
    kers.case(|| vec!["χ̇".into()], l.ker_chi_is_scalars, true);
    kers.case(|| vec!["χ̇₀ onto go".into()], l.chi0_onto_go, true);
    let mut rep = Report {
        checks: vec![dims.finish(), kers.finish()],
    };
    let mut extra = Checker::new(if f.is_char2() {
        "four-term sequence and square diagram in characteristic 2"
    } else {
        "ω = γ ⊕ Z"
    });
    match l.char2 {
        Some(c) => {
            for (name, ok) in [
                ("center in spin", c.center_in_spin),
                ("spin → pgo sequence", c.spin_pgo_sequence),
                ("trp is a Lie map", c.trp_lie_hom),
                ("diagram exact", c.diagram_exact),
                ("diagram commutes", c.diagram_commutes),
            ] {
                extra.case(|| vec![name.into()], ok, true);
            }
        }
        None => {
            extra.case(|| vec!["ω = γ ⊕ Z".into()], l.omega_is_gamma_plus_center == Some(true), true);
        }
    }
    rep.push(extra.finish());
    Ok(rep)
}

fn c6(f: FieldSpec) -> Result<Report> {
    let alg = crate::clifford::CliffordAlgebra::new(zorn(f)?.q())?;
    let s = lift_generation_check(&alg)?;
    let mut ch = Checker::new("commutators of lifted generators span C₀");
    ch.case(|| vec!["relations".into()], s.relations_hold, true);
    ch.case(|| vec!["span".into()], s.span_dim, 128);
    ch.case(|| vec!["target".into()], s.target_dim, 128);
    Ok(Report { checks: vec![ch.finish()] })
}

fn c7(f: FieldSpec) -> Result<Report> {
    let t = make_triple(zorn(f)?.composition())?;
    let t1 = derived_triple(&t)?;
    let t2 = derived_triple(&t1)?;
    let mut bij = Checker::new("θ±, θ′±, θ″± are bijective 28×28 maps");
    for (name, tr) in [("θ", &t), ("θ′", &t1), ("θ″", &t2)] {
        let th = theta_maps(tr)?;
        for (sign, m) in [("+", &th.plus), ("-", &th.minus)] {
            let shape = (m.matrix().rows(), m.matrix().cols());
            bij.case(|| vec![format!("{name}{sign} shape")], shape == (28, 28), true);
            bij.case(|| vec![format!("{name}{sign}")], m.inverse().is_ok(), true);
        }
    }
    let mut rep = verify_theta_relations(&t)?;
    rep.push(bij.finish());
    Ok(rep)
}

fn zorn_triple(f: FieldSpec) -> Result<TrialitarianTripleSplit> {
    make_triple(zorn(f)?.composition())
}

fn c8(f: FieldSpec, rng: &mut ChaCha8Rng) -> Result<Report> {
    let t = zorn_triple(f)?;
    let q = t.composition().q(1).clone();
    let mut rep = Report::new();
    if f.is_finite() {
        let mut lifts = Checker::new("proper isometries lift to certified (g₂, g₃)");
        for k in 0..20 {
            let g1 = random_proper_isometry(&q, rng)?;
            let l = triality_lift_isometry(&t, &g1)?;
            lifts.case(|| vec![format!("case={k}")], l.certificate.pass(), true);
        }
        rep.push(lifts.finish());
    }
    let mut local = Checker::new("local triality solves with a one-dimensional kernel");
    for k in 0..20 {
        let g1 = random_go(&q, rng);
        let s = local_triality_solve(&t, &g1)?;
        local.case(|| vec![format!("case={k}")], s.certificate.pass() && s.kernel.len() == 1, true);
    }
    rep.push(local.finish());
    Ok(rep)
}

fn c9(f: FieldSpec, rng: &mut ChaCha8Rng, cfg: &SearchConfig) -> Result<Report> {
    let z = zorn(f)?;
    let c = z.composition();
    let mut rho = Checker::new("ρ-similitudes have multiplier (1, 1, q₃(u₃))");
    for k in 0..10 {
        let u3 = random_anisotropic(c.q(3), rng);
        let p = rho_similitude(c, &u3)?;
        let want = vec![f.one(), f.one(), c.q(3).eval(&u3)];
        rho.case(|| vec![format!("case={k}")], p.forward.lambda.to_vec(), want);
    }
    let mut rep = Report {
        checks: vec![rho.finish()],
    };
    if f == FieldSpec::Prime(7) {
        let mut wit = Checker::new("multiplier_witness realizes every triple over F7");
        for k in 0..20 {
            let lambda: [Scalar; 3] = std::array::from_fn(|_| f.random_nonzero(rng, 3));
            let w = multiplier_witness(c, &lambda, cfg)?;
            wit.case(|| vec![format!("case={k}")], w.lambda.to_vec(), lambda.to_vec());
        }
        rep.push(wit.finish());
    }
    Ok(rep)
}

fn c10(f: FieldSpec, rng: &mut ChaCha8Rng, cfg: &SearchConfig) -> Result<Report> {
    let a = zorn(f)?;
    let c = a.composition();
    let mut iso = Checker::new("isotopy and similitude verdicts agree");
    for k in 0..50 {
        let witness = if k % 2 == 0 {
            let lambda = [f.random_nonzero(rng, 3), f.random_nonzero(rng, 3), f.one()];
            match multiplier_witness(c, &lambda, cfg) {
                Ok(w) => Some(w.g),
                Err(Error::NotInMultiplierGroup) => None,
                Err(e) => return Err(e),
            }
        } else {
            None
        };
        let g = witness.unwrap_or_else(|| std::array::from_fn(|_| random_invertible(f, 8, rng)));
        let v = isotopy_dictionary(&a, &a, &g)?;
        iso.case(|| vec![format!("case={k}")], v.consistent(), true);
    }
    let mut rep = Report {
        checks: vec![iso.finish()],
    };
    if f.is_finite() {
        let psi = PsiA::new(&a)?;
        let alg = psi.triple().algebra().clone();
        let mut rt = Checker::new("ψ_A⁻¹(ψ_A(ξ)) = ξ");
        for k in 0..20 {
            let xi = random_omega(&alg, rng)?;
            let back = psi.invert(&psi.apply(&xi)?)?;
            rt.case(|| vec![format!("case={k}")], back.coeffs().to_vec(), xi.coeffs().to_vec());
        }
        rep.push(rt.finish());
    }
    Ok(rep)
}

fn c11(f: FieldSpec) -> Result<Report> {
    let a = zorn(f)?;
    let e = a.unit().ok_or(Error::NotUnital)?.to_vec();
    let p = PointedComposition::new(a.composition().clone(), e.clone(), e.clone(), e.clone())?;
    let mut rep = pointed_suite(&p)?.report;
    let k = kaplansky_at(&a, &e)?;
    let mut kap = Checker::new("Kaplansky's algebra at the unit is the original algebra");
    kap.case(|| vec!["product".into()], k.algebra.composition() == a.composition(), true);
    kap.case(|| vec!["(r_u, ℓ_u, Id) is an isomorphism".into()], k.iso.is_isomorphism(), true);
    rep.push(kap.finish());
    Ok(rep)
}
