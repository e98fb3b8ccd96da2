//! Command-line front end. [`run`] does all the work and returns the text to
//! print and the exit code, so the binary is a thin wrapper.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::butterfly::{self, Butterfly};
use crate::cohomology::{cohomology_group_with, Cochain};
use crate::fingroup::{structure_of_with, FiniteGroup, Homomorphism};
use crate::io::{serialize_object, Bundle, IoError, Object};
use crate::limits::{BudgetExceeded, Limits};
use crate::opext::{self, Extension, Verdict};
use crate::schreier::{obstruction_class, sml_report, AbstractKernel};
use crate::verify::{self, Suite, VerifyError};
use crate::xmod::{transport_xext, CrossedExtension};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "obstrukt", version, about = "Exhaustive classification and obstruction checks for finite groups, extensions and crossed modules")]
struct Cli {
    /// Fixture file or directory to load (repeatable; directories load in name order).
    #[arg(long, short, global = true)]
    bundle: Vec<PathBuf>,
    /// Print a machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a file, or a named object of the bundle.
    Check { object: String },
    /// Center, automorphisms and outer automorphisms of a group.
    Structure { group: String },
    /// Hⁿ(C, B) for an action (`triv-C-B`, `inv-C-B` or a bundle name).
    Cohomology { n: usize, action: String },
    /// Morphisms of extensions E → E′ over (φ₀, φ₁), cross-checked three ways.
    ClassifyOpext { e: String, e_prime: String, phi0: String, phi1: String },
    /// Push forward along φ and pull back along φ₀, for extensions or crossed extensions.
    Transport { source: String, target: String, phi0: String, phi: String },
    /// The composite of two butterflies, `b1` first.
    ButterflyCompose { b1: String, b2: String },
    /// Isomorphism classes of weak maps X → X′ over (φ₀, φ).
    WeakHoms { x: String, x_prime: String, phi0: String, phi: String },
    /// The obstruction class of an abstract kernel.
    Obstruction { akernel: String },
    /// Extensions of C by K inducing an abstract kernel (`id`, `triv`, images like `0,1`, or a bundle name).
    Sml { c: String, k: String, akernel: String },
    /// Run a verification suite.
    Verify {
        /// One of torsor, opext, cohomology, butterfly, weak-maps, sml, encoding, io, all.
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Candidate budget for exhaustive searches; overrides OBSTRUKT_BUDGET.
        #[arg(long)]
        budget: Option<u64>,
    },
}

/// What the process should print and return.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Budget(BudgetExceeded),
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Budget(b) => Failure::Budget(b),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::Input(e.to_string())
    }
}

/// Any library error, classified through the verification error mapping.
fn fail<E>(e: E) -> Failure
where
    VerifyError: From<E>,
{
    VerifyError::from(e).into()
}

struct Report {
    text: String,
    json: Value,
    code: i32,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { text, json, code: EXIT_OK }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };
    let json = cli.json;
    match execute(cli) {
        Ok(r) => {
            let stdout = if json {
                let mut s = serde_json::to_string_pretty(&r.json).expect("reports serialize");
                s.push('\n');
                s
            } else {
                r.text
            };
            Outcome { stdout, stderr: String::new(), code: r.code }
        }
        Err(Failure::Input(msg)) => Outcome { stdout: String::new(), stderr: format!("error: {msg}\n"), code: EXIT_INPUT },
        Err(Failure::Budget(b)) => {
            Outcome { stdout: String::new(), stderr: format!("error: {b}\n"), code: EXIT_BUDGET }
        }
    }
}

fn execute(cli: Cli) -> Result<Report, Failure> {
    let mut bundle = Bundle::new();
    for p in &cli.bundle {
        bundle.load_path(p)?;
    }
    let limits = Limits::from_env();
    match cli.command {
        Command::Check { object } => check(&mut bundle, &object),
        Command::Structure { group } => structure(&bundle, &group, &limits),
        Command::Cohomology { n, action } => cohomology(&bundle, n, &action, &limits),
        Command::ClassifyOpext { e, e_prime, phi0, phi1 } => classify_opext(&bundle, &e, &e_prime, &phi0, &phi1, &limits),
        Command::Transport { source, target, phi0, phi } => transport(&bundle, &source, &target, &phi0, &phi),
        Command::ButterflyCompose { b1, b2 } => compose(&bundle, &b1, &b2),
        Command::WeakHoms { x, x_prime, phi0, phi } => weak_homs(&bundle, &x, &x_prime, &phi0, &phi, &limits),
        Command::Obstruction { akernel } => obstruction(&bundle, &akernel),
        Command::Sml { c, k, akernel } => sml(&bundle, &c, &k, &akernel, &limits),
        Command::Verify { suite, seed, budget } => {
            let limits = budget.map_or(limits, |b| limits.with_candidates(b));
            run_verify(&suite, verify::Options { seed, limits, paths: cli.bundle.clone() })
        }
    }
}

fn check(bundle: &mut Bundle, object: &str) -> Result<Report, Failure> {
    let path = Path::new(object);
    if bundle.get(object).is_none() && path.exists() {
        let names = bundle.load_path(path)?;
        let kinds: Vec<Value> = names
            .iter()
            .map(|n| json!({ "name": n, "kind": bundle.get(n).map(Object::kind) }))
            .collect();
        let text = format!("{}: {} valid object{}\n", object, names.len(), if names.len() == 1 { "" } else { "s" });
        return Ok(Report::ok(text, json!({ "file": object, "objects": kinds, "valid": true })));
    }
    let o = bundle.get(object).ok_or_else(|| Failure::Input(format!("no file or bundle object named `{object}`")))?;
    let mut text = format!("{} {}: valid\n", o.kind(), object);
    let mut j = json!({ "name": object, "kind": o.kind(), "valid": true });
    if let Object::Butterfly { butterfly, .. } = o {
        let f = butterfly.flags();
        text.push_str(&format!("representable: {}\nflippable: {}\n", f.representable, f.flippable));
        j["representable"] = json!(f.representable);
        j["flippable"] = json!(f.flippable);
    }
    Ok(Report::ok(text, j))
}

fn structure(bundle: &Bundle, name: &str, limits: &Limits) -> Result<Report, Failure> {
    let g = bundle.group(name)?;
    let st = structure_of_with(&g, limits).map_err(Failure::Budget)?;
    let (aut, inn, out) = (st.automorphisms.order(), st.inner.group.order(), st.outer.group.order());
    let text = format!(
        "group {name}: order {}, {}\ncenter: {:?}\n|Aut| = {aut}, |Inn| = {inn}, |Out| = {out}\n",
        g.order(),
        if g.is_abelian() { "abelian" } else { "non-abelian" },
        st.center,
    );
    let j = json!({
        "group": name,
        "order": g.order(),
        "abelian": g.is_abelian(),
        "center": st.center,
        "aut_order": aut,
        "inn_order": inn,
        "out_order": out,
    });
    Ok(Report::ok(text, j))
}

fn cochain_lines(c: &Cochain) -> Vec<String> {
    c.support()
        .map(|(t, v)| format!("{} -> {v}", t.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")))
        .collect()
}

fn cohomology(bundle: &Bundle, n: usize, action: &str, limits: &Limits) -> Result<Report, Failure> {
    let module = bundle.module(action)?;
    let h = cohomology_group_with(n, &module, limits).map_err(fail)?;
    let mut text = format!("H^{n}({action}): order {}\ninvariant factors: {:?}\n", h.order(), h.invariant_factors);
    let reps: Vec<Vec<String>> = h.representatives.iter().map(cochain_lines).collect();
    for (i, r) in reps.iter().enumerate() {
        text.push_str(&format!("generator {i} (order {}):\n", h.invariant_factors[i]));
        for l in r {
            text.push_str(&format!("  {l}\n"));
        }
    }
    let j = json!({
        "degree": n,
        "action": action,
        "order": h.order(),
        "invariant_factors": h.invariant_factors,
        "representatives": reps,
    });
    Ok(Report::ok(text, j))
}

fn extension_names<'a>(bundle: &'a Bundle, name: &str) -> Result<(&'a str, &'a str, &'a str, Extension), Failure> {
    match bundle.get(name) {
        Some(Object::Extension { b, e, c, ext }) => Ok((b, e, c, ext.clone())),
        _ => Err(IoError::Unknown { kind: "extension", name: name.into() }.into()),
    }
}

fn verdict_code(v: &Verdict) -> i32 {
    if matches!(v, Verdict::Violation(_)) {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    }
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::Empty => "empty".into(),
        Verdict::Torsor => "torsor".into(),
        Verdict::Violation(msg) => format!("violation: {msg}"),
    }
}

fn classify_opext(
    bundle: &Bundle,
    e: &str,
    e_prime: &str,
    phi0: &str,
    phi1: &str,
    limits: &Limits,
) -> Result<Report, Failure> {
    let (ext, ext_prime) = (bundle.extension(e)?, bundle.extension(e_prime)?);
    let phi0_map = bundle.hom_between(phi0, ext.c(), ext_prime.c())?;
    let phi1_map = bundle.hom_between(phi1, ext.b(), ext_prime.b())?;
    let r = opext::classify(&ext, &ext_prime, &phi0_map, &phi1_map, limits).map_err(fail)?;
    let yes = |b: bool| if b { "yes" } else { "no" };
    let text = format!(
        "{e} → {e_prime} over ({phi0}, {phi1})\nmorphisms: {}\n|Z¹| = {}\nfibre isomorphism: {}\ncoboundary criterion: {}\nverdict: {}\n",
        r.homset.len(),
        r.z1.order(),
        yes(r.fibre_iso.is_some()),
        yes(r.cocycle_criterion),
        verdict_text(&r.verdict),
    );
    let j = json!({
        "source": e,
        "target": e_prime,
        "morphisms": r.homset.iter().map(|h| h.images().to_vec()).collect::<Vec<_>>(),
        "z1_order": r.z1.order(),
        "fibre_iso": r.fibre_iso.as_ref().map(|h| h.images().to_vec()),
        "fibre_iso_by_search": r.fibre_iso_by_search,
        "cocycle_criterion": r.cocycle_criterion,
        "action_table": r.action_table,
        "verdict": verdict_text(&r.verdict),
    });
    Ok(Report { text, json: j, code: verdict_code(&r.verdict) })
}

/// A canonical bundle holding the group and the extension on it.
fn extension_text(name: &str, b: &str, c: &str, ext: &Extension) -> String {
    let e = format!("{name}-E");
    [
        serialize_object(&e, &Object::Group(ext.e().clone())),
        serialize_object(name, &Object::Extension { b: b.into(), e, c: c.into(), ext: ext.clone() }),
    ]
    .join("\n")
}

fn xext_text(name: &str, b: &str, c: &str, x: &CrossedExtension) -> String {
    let (g2, g1) = (format!("{name}-G2"), format!("{name}-G1"));
    [
        serialize_object(&g2, &Object::Group(x.g2().clone())),
        serialize_object(&g1, &Object::Group(x.g1().clone())),
        serialize_object(name, &Object::XExt { b: b.into(), g2, g1, c: c.into(), xext: x.clone() }),
    ]
    .join("\n")
}

fn transport(bundle: &Bundle, source: &str, target: &str, phi0: &str, phi: &str) -> Result<Report, Failure> {
    let (text, fibre) = match (bundle.get(source), bundle.get(target)) {
        (Some(Object::Extension { .. }), Some(Object::Extension { .. })) => {
            let (_, _, c, e) = extension_names(bundle, source)?;
            let (b_prime, _, _, e_prime) = extension_names(bundle, target)?;
            let phi0_map = bundle.hom_between(phi0, e.c(), e_prime.c())?;
            let phi1_map = bundle.hom_between(phi, e.b(), e_prime.b())?;
            let (push, pull) = opext::transport(&e, &e_prime, &phi0_map, &phi1_map).map_err(fail)?;
            let iso = opext::fibre_iso(&push, &pull).map_err(fail)?.is_some();
            let text = [extension_text("pushforward", b_prime, c, &push), extension_text("pullback", b_prime, c, &pull)].join("\n");
            (text, iso)
        }
        (Some(Object::XExt { c, .. }), Some(Object::XExt { b: b_prime, .. })) => {
            let (x, x_prime) = (bundle.xext(source)?, bundle.xext(target)?);
            let phi0_map = bundle.hom_between(phi0, x.c(), x_prime.c())?;
            let phi_map = bundle.hom_between(phi, x.b(), x_prime.b())?;
            let (push, pull) = transport_xext(&x, &x_prime, &phi0_map, &phi_map).map_err(fail)?;
            let text = [xext_text("pushforward", b_prime, c, &push), xext_text("pullback", b_prime, c, &pull)].join("\n");
            // crossed extensions over the same module are compared through their classes
            let criterion = verify::weak_map_criterion(&x, &x_prime, &phi0_map, &phi_map)?;
            (text, criterion)
        }
        _ => {
            return Err(Failure::Input(format!(
                "`{source}` and `{target}` must both be extensions or both be crossed extensions"
            )))
        }
    };
    let j = json!({ "canonical": text, "same_class": fibre });
    let text = format!("{text}# same class: {}\n", if fibre { "yes" } else { "no" });
    Ok(Report::ok(text, j))
}

fn butterfly_text(name: &str, x: &str, y: &str, b: &Butterfly) -> String {
    let e = format!("{name}-E");
    [
        serialize_object(&e, &Object::Group(b.e().clone())),
        serialize_object(name, &Object::Butterfly { x: x.into(), y: y.into(), e, butterfly: b.clone() }),
    ]
    .join("\n")
}

fn butterfly_ends<'a>(bundle: &'a Bundle, name: &str) -> Result<(&'a str, &'a str, Butterfly), Failure> {
    match bundle.get(name) {
        Some(Object::Butterfly { x, y, butterfly, .. }) => Ok((x, y, butterfly.clone())),
        _ => Err(IoError::Unknown { kind: "butterfly", name: name.into() }.into()),
    }
}

fn compose(bundle: &Bundle, b1: &str, b2: &str) -> Result<Report, Failure> {
    let (x, _, first) = butterfly_ends(bundle, b1)?;
    let (_, z, second) = butterfly_ends(bundle, b2)?;
    let composite = butterfly::compose(&second, &first).map_err(fail)?;
    let (phi0, phi) = butterfly::project(&composite).map_err(fail)?;
    let flags = composite.flags();
    let canonical = butterfly_text("composite", x, z, &composite);
    let text = format!(
        "{canonical}# projection: phi0 {:?}, phi {:?}\n# representable: {}, flippable: {}\n",
        phi0.images(),
        phi.images(),
        flags.representable,
        flags.flippable
    );
    let j = json!({
        "canonical": canonical,
        "phi0": phi0.images(),
        "phi": phi.images(),
        "representable": flags.representable,
        "flippable": flags.flippable,
    });
    Ok(Report::ok(text, j))
}

fn xext_ends<'a>(bundle: &'a Bundle, name: &str) -> Result<(&'a str, &'a str, CrossedExtension), Failure> {
    match bundle.get(name) {
        Some(Object::XExt { b, c, xext, .. }) => Ok((b, c, xext.clone())),
        _ => Err(IoError::Unknown { kind: "crossed extension", name: name.into() }.into()),
    }
}

fn weak_homs(bundle: &Bundle, x: &str, y: &str, phi0: &str, phi: &str, limits: &Limits) -> Result<Report, Failure> {
    let (_, _, xx) = xext_ends(bundle, x)?;
    let (_, _, yy) = xext_ends(bundle, y)?;
    let phi0_map = bundle.hom_between(phi0, xx.c(), yy.c())?;
    let phi_map = bundle.hom_between(phi, xx.b(), yy.b())?;
    let r = butterfly::weak_hom_set(&xx, &yy, &phi0_map, &phi_map, limits).map_err(fail)?;
    let n = r.classes.len();
    let mut text = format!(
        "# {n} class{}; H² order {}; cocycle criterion {}; verdict: {}\n",
        if n == 1 { "" } else { "es" },
        r.h2.order(),
        if r.cocycle_criterion { "holds" } else { "fails" },
        verdict_text(&r.verdict)
    );
    let mut canonical = Vec::new();
    for (i, b) in r.classes.iter().enumerate() {
        let t = butterfly_text(&format!("class{i}"), x, y, b);
        text.push('\n');
        text.push_str(&t);
        canonical.push(t);
    }
    let j = json!({
        "classes": canonical,
        "h2_invariant_factors": r.h2.invariant_factors,
        "cocycle_criterion": r.cocycle_criterion,
        "action_table": r.action_table,
        "verdict": verdict_text(&r.verdict),
    });
    Ok(Report { text, json: j, code: verdict_code(&r.verdict) })
}

fn obstruction(bundle: &Bundle, name: &str) -> Result<Report, Failure> {
    let ak = bundle.akernel(name)?;
    obstruction_report(&ak)
}

fn obstruction_report(ak: &AbstractKernel) -> Result<Report, Failure> {
    let (omega, vanishes) = obstruction_class(ak).map_err(fail)?;
    let lines = cochain_lines(&omega);
    let mut text = format!("obstruction {}\n", if vanishes { "vanishes" } else { "does not vanish" });
    for l in &lines {
        text.push_str(&format!("  {l}\n"));
    }
    Ok(Report::ok(text, json!({ "vanishes": vanishes, "cocycle": lines })))
}

/// `name=value` arguments are accepted with or without their key.
fn strip_key<'a>(arg: &'a str, key: &str) -> &'a str {
    arg.strip_prefix(key).and_then(|r| r.strip_prefix('=')).unwrap_or(arg)
}

fn resolve_akernel(bundle: &Bundle, c: &FiniteGroup, k: &FiniteGroup, arg: &str) -> Result<AbstractKernel, Failure> {
    if let Ok(ak) = bundle.akernel(arg) {
        return Ok(ak);
    }
    let out = structure_of_with(k, &Limits::from_env()).map_err(Failure::Budget)?.outer.group;
    let images: Vec<usize> = match arg {
        "id" => c.elements().collect(),
        "triv" | "zero" => vec![0; c.order()],
        _ => arg
            .split(',')
            .map(|t| t.trim().parse().map_err(|_| Failure::Input(format!("unknown abstract kernel `{arg}`"))))
            .collect::<Result<_, _>>()?,
    };
    let psi0 = Homomorphism::new(c, &out, images).map_err(|e| Failure::Input(format!("abstract kernel `{arg}`: {e}")))?;
    AbstractKernel::new(k, psi0).map_err(fail)
}

fn sml(bundle: &Bundle, c: &str, k: &str, akernel: &str, limits: &Limits) -> Result<Report, Failure> {
    let (c, k, arg) = (strip_key(c, "C"), strip_key(k, "K"), strip_key(akernel, "akernel"));
    let (cg, kg) = (bundle.group(c)?, bundle.group(k)?);
    let ak = resolve_akernel(bundle, &cg, &kg, arg)?;
    let r = sml_report(&ak, limits).map_err(fail)?;
    let text = format!("{}\n", r.summary());
    let j = json!({
        "c": c,
        "k": k,
        "psi0": ak.psi0().images(),
        "obstruction_vanishes": r.obstruction_vanishes,
        "classes": r.ext_classes.iter().map(|f| json!({ "lift": f.lift, "fset": f.fset })).collect::<Vec<_>>(),
        "h2_invariant_factors": r.h2.invariant_factors,
        "action_table": r.action_table,
        "verdict": verdict_text(&r.verdict),
    });
    Ok(Report { text, json: j, code: verdict_code(&r.verdict) })
}

fn run_verify(suite: &str, opts: verify::Options) -> Result<Report, Failure> {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![Suite::from_name(suite).ok_or_else(|| Failure::Input(format!("unknown suite `{suite}`")))?]
    };
    let mut text = String::new();
    let mut reports = Vec::new();
    let mut passed = true;
    for s in suites {
        let r = verify::run(s, &opts)?;
        passed &= r.passed();
        text.push_str(&r.render());
        reports.push(r);
    }
    let j = json!({ "passed": passed, "suites": reports });
    Ok(Report { text, json: j, code: if passed { EXIT_OK } else { EXIT_VIOLATION } })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn violations_map_to_exit_one() {
        assert_eq!(verdict_code(&Verdict::Violation("fibre iso without morphism".into())), EXIT_VIOLATION);
        assert_eq!(verdict_code(&Verdict::Torsor), EXIT_OK);
        assert_eq!(verdict_code(&Verdict::Empty), EXIT_OK);
    }
}
