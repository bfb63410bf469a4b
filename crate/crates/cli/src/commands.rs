//! One function per subcommand. Each returns the text and JSON renderings of
//! its result together with the verdict that decides the exit code.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use num_complex::Complex64;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use ptrace_core::algebra::{
    basic_algebra, indecomposable_blocks, jacobson_radical, lift_idempotents, loewy_length, omega_spectrum, socle,
    Algebra,
};
use ptrace_core::characters::{slash_experiment, InterlockedGraded, VACUUM};
use ptrace_core::io::{load_document, matrix_json, omega_json, scalar_json, series_json, vector_json, Document};
use ptrace_core::linalg::{Matrix, NumberField, Scalar};
use ptrace_core::module::RightModule;
use ptrace_core::pseudotrace::{
    check_interlocked, decompose_symmetric_function, sample_combination, verify_symmetry, InterlockedDecomposition,
    TraceForm,
};
use ptrace_core::qseries::QTauSeries;
use ptrace_core::symfun::{rad_phi, SymmetricFunctional};
use ptrace_core::{Error, Result};

/// Relative residual below which a slash fit counts as consistent.
const SLASH_TOLERANCE: f64 = 1e-8;

pub struct Context {
    pub field: Option<Arc<NumberField>>,
    pub seed: u64,
}

pub struct Report {
    pub text: String,
    pub json: Value,
    pub pass: bool,
}

pub struct SlashOptions {
    pub gamma: [i64; 4],
    pub weight: i32,
    pub tau: Complex64,
}

fn load(ctx: &Context, file: &Path) -> Result<Document> {
    load_document(file, ctx.field.clone())
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Labelled values "label: value" for a vector in algebra coordinates.
fn labelled(a: &Algebra, v: &[Scalar]) -> String {
    a.labels().iter().zip(v).map(|(l, c)| format!("{l}: {c}")).collect::<Vec<_>>().join(", ")
}

pub fn analyze(ctx: &Context, file: &Path) -> Result<Report> {
    let doc = load(ctx, file)?;
    let a = doc.algebra()?;
    let rad = jacobson_radical(&a).dim();
    let soc = socle(&a).dim();
    let loewy = loewy_length(&a);
    let ids = lift_idempotents(&a)?;
    let blocks = indecomposable_blocks(&a)?;
    let spectrum = a.omega().map(|_| omega_spectrum(&a)).transpose()?;
    let functional = if doc.has_functional() {
        let phi = doc.functional_on(&a)?;
        Some(rad_phi(&a, &phi).dim())
    } else {
        None
    };

    let mut t = String::new();
    writeln!(t, "dimension: {}", a.dim()).unwrap();
    writeln!(t, "radical dimension: {rad}").unwrap();
    writeln!(t, "socle dimension: {soc}").unwrap();
    writeln!(t, "Loewy length: {loewy}").unwrap();
    writeln!(t, "primitive idempotents: {} ({} classes)", ids.len(), ids.num_classes()).unwrap();
    writeln!(t, "basic: {}", yes(ids.len() == ids.num_classes())).unwrap();
    writeln!(t, "blocks: {}", blocks.len()).unwrap();
    for (k, b) in blocks.iter().enumerate() {
        let semisimple = jacobson_radical(b.alg()).is_zero();
        writeln!(
            t,
            "  block {}: dimension {}, {}",
            k + 1,
            b.alg().dim(),
            if semisimple { "semisimple" } else { "not semisimple" }
        )
        .unwrap();
    }
    if let Some(sp) = &spectrum {
        let parts: Vec<String> = sp.iter().map(|(r, m)| format!("{r} (multiplicity {m})")).collect();
        writeln!(t, "omega spectrum: {}", parts.join(", ")).unwrap();
    }
    if let Some(r) = functional {
        writeln!(t, "functional radical dimension: {r}").unwrap();
    }
    let json = json!({
        "dim": a.dim(),
        "radical_dim": rad,
        "socle_dim": soc,
        "loewy_length": loewy,
        "idempotents": ids.len(),
        "idempotent_classes": ids.num_classes(),
        "blocks": blocks.iter().map(|b| json!({
            "dim": b.alg().dim(),
            "semisimple": jacobson_radical(b.alg()).is_zero(),
            "central_idempotent": vector_json(&b.central_idempotent),
        })).collect::<Vec<_>>(),
        "omega_spectrum": spectrum.as_ref().map(|sp| sp.iter().map(|(r, m)| json!({"value": scalar_json(r), "multiplicity": m})).collect::<Vec<_>>()),
        "functional_radical_dim": functional,
    });
    Ok(Report { text: t, json, pass: true })
}

pub fn omega_basis(ctx: &Context, file: &Path) -> Result<Report> {
    let doc = load(ctx, file)?;
    let (a, phi) = doc.functional()?;
    let ids = lift_idempotents(&a)?;
    let basic = basic_algebra(&a, &ids)?;
    let psi = phi.pullback(&basic.sub.basis);
    let form = TraceForm::new(&basic.p, &psi, &basic.idempotents)?;
    let mut t = String::new();
    writeln!(t, "basic algebra: dimension {}, {} idempotents", basic.p.dim(), basic.idempotents.len()).unwrap();
    let Some(om) = &form.omega else {
        writeln!(t, "every block is semisimple: no dual basis is needed").unwrap();
        writeln!(t, "verdict: PASS").unwrap();
        return Ok(Report {
            text: t,
            json: json!({ "basic_dim": basic.p.dim(), "omega": null, "pass": true }),
            pass: true,
        });
    };
    let rows: Vec<String> = om.d.iter().map(|r| format!("{r:?}")).collect();
    writeln!(t, "d = [{}]", rows.join(", ")).unwrap();
    for (k, e) in om.elements.iter().enumerate() {
        let v = a.describe(&basic.sub.embed(&e.vector));
        writeln!(t, "{} = {v}    dual {}, pairing {}", om.label(k), om.label(e.dual), e.pairing).unwrap();
    }
    let r = &om.report;
    writeln!(
        t,
        "conditions: basis {}, (1) {}, (2) {}, (3) {}, (4) {}",
        yes(r.is_basis),
        yes(r.cond1),
        yes(r.cond2),
        yes(r.cond3),
        yes(r.cond4)
    )
    .unwrap();
    for f in &r.failures {
        writeln!(t, "  {f}").unwrap();
    }
    let pass = r.all_hold();
    writeln!(t, "verdict: {}", verdict(pass)).unwrap();
    let mut j = omega_json(om);
    j["basic_dim"] = basic.p.dim().into();
    j["pass"] = pass.into();
    Ok(Report { text: t, json: j, pass })
}

/// Module, functional and trace form from a module document.
fn module_setup(ctx: &Context, file: &Path) -> Result<(Algebra, RightModule, TraceForm)> {
    let doc = load(ctx, file)?;
    let (a, w) = doc.module()?;
    let phi = doc.functional_on(&a)?;
    let form = TraceForm::new(&a, &phi, &lift_idempotents(&a)?)?;
    Ok((a, w, form))
}

pub fn interlocked(ctx: &Context, file: &Path) -> Result<Report> {
    let (a, w, form) = module_setup(ctx, file)?;
    let dec = match check_interlocked(&w, &form) {
        Ok(d) => d,
        Err(Error::NotInterlocked { idempotent, witness }) => {
            let at = if idempotent == 0 { String::new() } else { format!(" at e_{idempotent}") };
            let text = format!("not interlocked{at}: {witness}\nverdict: FAIL\n");
            let json = json!({ "interlocked": false, "idempotent": idempotent, "witness": witness });
            return Ok(Report { text, json, pass: false });
        }
        Err(e) => return Err(e),
    };
    let mut t = String::new();
    writeln!(t, "module dimension: {}", dec.dim()).unwrap();
    for (p, gens) in dec.generators.iter().enumerate() {
        let e = a.describe(&form.idempotents[p]);
        writeln!(t, "e_{} = {e}: {} generators", p + 1, gens.len()).unwrap();
    }
    writeln!(t, "decomposition basis:").unwrap();
    for (k, v) in dec.basis.iter().enumerate() {
        writeln!(t, "  {} = {}", dec.slot_label(k), fmt_vec(v)).unwrap();
    }
    writeln!(t, "verdict: PASS").unwrap();
    let json = json!({
        "interlocked": true,
        "dim": dec.dim(),
        "generators": dec.generators.iter().map(|g| g.len()).collect::<Vec<_>>(),
        "basis": (0..dec.dim()).map(|k| json!({"label": dec.slot_label(k), "vector": vector_json(&dec.basis[k])})).collect::<Vec<_>>(),
    });
    Ok(Report { text: t, json, pass: true })
}

fn fmt_vec(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

pub fn pseudo_trace(ctx: &Context, file: &Path, element: Option<&str>, samples: usize) -> Result<Report> {
    let (a, w, form) = module_setup(ctx, file)?;
    let dec = check_interlocked(&w, &form)?;
    let alpha = match element {
        None => Matrix::identity(w.dim()),
        Some(l) => {
            let k = a.label_index(l).ok_or_else(|| Error::Parse(format!("unknown basis label {l}")))?;
            w.actions()[k].clone()
        }
    };
    let res = ptrace_core::pseudotrace::pseudo_trace(&dec, &alpha)?;
    let sym = verify_symmetry(&dec, samples, ctx.seed)?;
    let mut t = String::new();
    writeln!(t, "endomorphism: {}", element.map(|l| format!("action of {l}")).unwrap_or_else(|| "identity".into()))
        .unwrap();
    writeln!(t, "pseudo-trace: {}", res.value).unwrap();
    for b in &res.blocks {
        let f = b.f_block.as_ref().map(|m| m.trace().to_string()).unwrap_or_else(|| "-".into());
        writeln!(
            t,
            "  e_{}: weight {}, e-block trace {}, f-block trace {f}",
            b.idempotent + 1,
            b.weight,
            b.e_block.trace()
        )
        .unwrap();
    }
    writeln!(t, "symmetry tr(ab) = tr(ba): {}/{} random pairs agree", sym.equal, sym.samples).unwrap();
    let pass = sym.all_equal();
    writeln!(t, "verdict: {}", verdict(pass)).unwrap();
    let json = json!({
        "value": scalar_json(&res.value),
        "blocks": res.blocks.iter().map(|b| json!({
            "idempotent": b.idempotent + 1,
            "weight": scalar_json(&b.weight),
            "e_block": matrix_json(&b.e_block),
            "f_block": b.f_block.as_ref().map(matrix_json),
        })).collect::<Vec<_>>(),
        "symmetry": {"samples": sym.samples, "equal": sym.equal, "seed": ctx.seed},
        "pass": pass,
    });
    Ok(Report { text: t, json, pass })
}

pub fn decompose(ctx: &Context, file: &Path) -> Result<Report> {
    let doc = load(ctx, file)?;
    let (a, phi) = doc.functional()?;
    let d = decompose_symmetric_function(&a, &phi)?;
    let mut t = String::new();
    writeln!(t, "{} terms in {} rounds", d.terms.len(), d.rounds).unwrap();
    let mut terms = Vec::new();
    for (k, term) in d.terms.iter().enumerate() {
        let kind = if term.ordinary { "ordinary trace" } else { "pseudo-trace" };
        let eig = term.omega_eigenvalue.as_ref().map(|e| format!(", ω-eigenvalue {e}")).unwrap_or_default();
        writeln!(
            t,
            "term {} (round {}, {kind}): block dimension {}, basic algebra dimension {}, module dimension {}{eig}",
            k + 1,
            term.round,
            term.block.dim(),
            term.basic.p.dim(),
            term.decomposition.dim()
        )
        .unwrap();
        writeln!(t, "  values: {}", labelled(&a, &term.values)).unwrap();
        terms.push(json!({
            "round": term.round,
            "ordinary": term.ordinary,
            "block_dim": term.block.dim(),
            "basic_dim": term.basic.p.dim(),
            "module_dim": term.decomposition.dim(),
            "omega_eigenvalue": term.omega_eigenvalue.as_ref().map(scalar_json),
            "values": vector_json(&term.values),
        }));
    }
    let total = d.total(a.dim());
    let pass = total == phi.values();
    writeln!(t, "sum of terms: {}", labelled(&a, &total)).unwrap();
    writeln!(t, "verdict: {}", verdict(pass)).unwrap();
    let json = json!({ "rounds": d.rounds, "terms": terms, "total": vector_json(&total), "pass": pass });
    Ok(Report { text: t, json, pass })
}

fn slash_report(series: &QTauSeries, o: &SlashOptions) -> Result<(String, Value, bool)> {
    let taus = [o.tau, o.tau + Complex64::new(0.1, 0.1), o.tau + Complex64::new(-0.15, 0.05)];
    let rep = slash_experiment(std::slice::from_ref(series), o.gamma, o.weight, &taus)?;
    let c = rep.coefficients[0][0];
    let turns = c.arg() / (2.0 * std::f64::consts::PI);
    let residual = rep.max_residual();
    let pass = residual <= SLASH_TOLERANCE;
    let [a, b, cc, d] = o.gamma;
    let mut t = String::new();
    writeln!(t, "slash by [[{a}, {b}], [{cc}, {d}]] at weight {}:", o.weight).unwrap();
    writeln!(t, "  coefficient {:.12} {:+.12}i = {:.12} · e^(2πi·{:.12})", c.re, c.im, c.norm(), turns).unwrap();
    writeln!(t, "  relative residual {residual:.3e}, tail estimate {:.3e}", rep.max_tail).unwrap();
    writeln!(t, "  fit: {}", if pass { "consistent" } else { "inconsistent" }).unwrap();
    let json = json!({
        "gamma": o.gamma,
        "weight": o.weight,
        "taus": taus.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
        "coefficient": [c.re, c.im],
        "modulus": c.norm(),
        "phase_turns": turns,
        "residual": residual,
        "tail_estimate": rep.max_tail,
        "consistent": pass,
    });
    Ok((t, json, pass))
}

pub fn character(
    ctx: &Context,
    file: &Path,
    label: Option<&str>,
    order: Option<usize>,
    decompose: bool,
    slash: Option<SlashOptions>,
) -> Result<Report> {
    let g = InterlockedGraded::new(load(ctx, file)?.graded_module()?)?;
    let label = label.unwrap_or(VACUUM);
    let cut = |s: &QTauSeries| match order {
        Some(n) => s.truncate(n),
        None => s.clone(),
    };
    let series = cut(&g.pseudo_trace_function(label)?.series);
    let mut t = String::new();
    writeln!(t, "zero mode: {label}").unwrap();
    writeln!(t, "S = {series}").unwrap();
    let mut json = json!({ "mode": label, "series": series_json(&series) });
    let mut pass = true;
    if decompose {
        let d = g.decompose_generalized_character()?;
        writeln!(t, "decomposition into shifted quotients:").unwrap();
        let mut terms = Vec::new();
        for term in &d.terms {
            let ch = cut(&term.character);
            writeln!(t, "  T^{} · {}: {ch}", term.power, term.coefficient).unwrap();
            terms.push(json!({ "power": term.power, "coefficient": term.coefficient.to_string(), "character": series_json(&ch) }));
        }
        let ok = d.reconstructs();
        writeln!(t, "reconstruction: {}", verdict(ok)).unwrap();
        json["decomposition"] = json!({ "terms": terms, "reconstructs": ok });
        pass &= ok;
    }
    if let Some(o) = slash {
        let (st, sj, ok) = slash_report(&series, &o)?;
        t.push_str(&st);
        json["slash"] = sj;
        pass &= ok;
    }
    json["pass"] = pass.into();
    Ok(Report { text: t, json, pass })
}

pub fn eisenstein(k: usize, order: usize) -> Result<Report> {
    let e = ptrace_core::qseries::eisenstein(k, order)?;
    let text = format!("E_{} = {}\n", 2 * k, e.series);
    let json = json!({ "k": k, "weight": e.weight(), "series": series_json(&e.series) });
    Ok(Report { text, json, pass: true })
}

fn random_endomorphism(w: &RightModule, rng: &mut ChaCha8Rng) -> Matrix {
    sample_combination(&w.endomorphism_basis(), w.dim(), rng)
}

fn module_shift(
    ctx: &Context,
    doc: &Document,
    dec: &InterlockedDecomposition,
    a: &Algebra,
    r: Option<&str>,
    power: Option<u32>,
    samples: usize,
) -> Result<Report> {
    let spectrum = omega_spectrum(a)?;
    let targets: Vec<(Scalar, usize)> = match r {
        Some(s) => {
            let r = Scalar::parse(s, doc.field())?;
            let mult = spectrum.iter().find(|(v, _)| *v == r).map(|(_, m)| *m).unwrap_or(0);
            vec![(r, mult)]
        }
        None => spectrum,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut t = String::new();
    let mut rows = Vec::new();
    let mut pass = true;
    for (r, mult) in &targets {
        let powers: Vec<u32> = match power {
            Some(p) => vec![p],
            None => (0..=(*mult as u32).max(1)).collect(),
        };
        for i in powers {
            for _ in 0..samples.max(1) {
                let g = random_endomorphism(&dec.module, &mut rng);
                let s = ptrace_core::pseudotrace::shift_identity(dec, r, &g, i)?;
                pass &= s.holds();
                writeln!(
                    t,
                    "r = {r}, i = {i}: lhs {}, rhs {} (P/N dimension {}, W/WN dimension {}) {}",
                    s.lhs,
                    s.rhs,
                    s.quotient_algebra_dim,
                    s.quotient_module_dim,
                    verdict(s.holds())
                )
                .unwrap();
                rows.push(json!({
                    "r": scalar_json(r), "i": i, "lhs": scalar_json(&s.lhs), "rhs": scalar_json(&s.rhs),
                    "quotient_algebra_dim": s.quotient_algebra_dim, "quotient_module_dim": s.quotient_module_dim,
                    "holds": s.holds(),
                }));
            }
        }
    }
    writeln!(t, "verdict: {}", verdict(pass)).unwrap();
    Ok(Report { text: t, json: json!({ "seed": ctx.seed, "identities": rows, "pass": pass }), pass })
}

fn graded_shift(ctx: &Context, g: &InterlockedGraded, power: Option<u32>, samples: usize) -> Result<Report> {
    let powers: Vec<u32> = match power {
        Some(p) => vec![p],
        None => (0..=g.data.nilpotency as u32).collect(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut t = String::new();
    let mut rows = Vec::new();
    let mut pass = true;
    for i in powers {
        for _ in 0..samples.max(1) {
            let gs: Vec<Matrix> = g.data.pieces.iter().map(|p| random_endomorphism(&p.module, &mut rng)).collect();
            let s = g.lemma41_shift(i, Some(&gs))?;
            let ok = s.lhs == s.rhs;
            pass &= ok;
            writeln!(t, "i = {i}: lhs {}", s.lhs).unwrap();
            writeln!(t, "       rhs {} {}", s.rhs, verdict(ok)).unwrap();
            rows.push(json!({ "i": i, "lhs": series_json(&s.lhs), "rhs": series_json(&s.rhs), "holds": ok }));
        }
    }
    writeln!(t, "verdict: {}", verdict(pass)).unwrap();
    Ok(Report { text: t, json: json!({ "seed": ctx.seed, "identities": rows, "pass": pass }), pass })
}

pub fn shift_identity(
    ctx: &Context,
    file: &Path,
    r: Option<&str>,
    power: Option<u32>,
    samples: usize,
) -> Result<Report> {
    let doc = load(ctx, file)?;
    if doc.has_graded_module() {
        if r.is_some() {
            return Err(Error::Parse("--r does not apply to graded modules; r is part of the file".into()));
        }
        let g = InterlockedGraded::new(doc.graded_module()?)?;
        return graded_shift(ctx, &g, power, samples);
    }
    let (a, w) = doc.module()?;
    let phi: SymmetricFunctional = doc.functional_on(&a)?;
    let form = TraceForm::new(&a, &phi, &lift_idempotents(&a)?)?;
    let dec = check_interlocked(&w, &form)?;
    module_shift(ctx, &doc, &dec, &a, r, power, samples)
}

pub fn lemma56(ctx: &Context, file: &Path) -> Result<Report> {
    let g = InterlockedGraded::new(load(ctx, file)?.graded_module()?)?;
    let rep = g.lemma56_regroup()?;
    let pass = rep.holds();
    let b: Vec<String> = rep.b.iter().map(|x| x.to_string()).collect();
    let mut t = String::new();
    writeln!(t, "nilpotency bound s = {}", g.data.nilpotency).unwrap();
    writeln!(t, "b = [{}]", b.join(", ")).unwrap();
    writeln!(t, "lhs: {}", rep.lhs).unwrap();
    writeln!(t, "rhs: {}", rep.rhs).unwrap();
    writeln!(t, "verdict: {}", verdict(pass)).unwrap();
    let json = json!({
        "s": g.data.nilpotency,
        "b": b,
        "lhs": series_json(&rep.lhs),
        "rhs": series_json(&rep.rhs),
        "pass": pass,
    });
    Ok(Report { text: t, json, pass })
}
