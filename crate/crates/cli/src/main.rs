use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lieq_core::catalog;
use lieq_core::cohomology::{betti_row, betti_table, BettiRow, Cochain, Representation};
use lieq_core::deform::{rigidity_report, DeformedBracket};
use lieq_core::exactnum::GaussRat;
use lieq_core::extend::{central_extension, induced_cocycle, short_exact_check, CentralCocycle};
use lieq_core::fock::{
    biorthogonal_pair, check_qccr, closed_form_spectrum, cuntz_toeplitz, float_residual,
    float_triplets, monomial_rep, number_operator_spectrum, orthonormal_rep_float, size_cap,
};
use lieq_core::liealg::{
    derived_series, dims, invariant_signature, lower_central_series, LieAlgebra,
};
use lieq_core::qheis::{normal_order, normal_order_at, parse_expr, verify_suite, SuiteLimits};
use lieq_core::report::Report;
use lieq_core::suite::{self, DEFAULT_SEED};

#[derive(Parser)]
#[command(
    name = "lieq",
    version,
    about = "Exact computations with Lie algebras, deformations and q-oscillators"
)]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Built-in algebras.
    #[command(subcommand)]
    Catalog(CatalogCmd),
    /// Invariants of an algebra: Jacobi check, center, series, signature.
    Algebra {
        /// Catalog name or path to an algebra JSON file.
        #[arg(long)]
        algebra: String,
    },
    /// Chevalley-Eilenberg cohomology dimensions.
    Cohomology {
        #[arg(long)]
        algebra: String,
        /// Single degree; omit for the whole table.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value_t = Coeffs::Trivial)]
        coeffs: Coeffs,
    },
    /// Bracket deformations.
    #[command(subcommand)]
    Deform(DeformCmd),
    /// Derivations, coboundaries and H^2(g, g).
    Rigidity {
        #[arg(long)]
        algebra: String,
    },
    /// Central extension by a 2-cocycle.
    Extend {
        #[arg(long)]
        algebra: String,
        /// Path to a cochain JSON file of degree 2.
        #[arg(long)]
        cocycle: String,
    },
    /// Rebuilds an algebra as a central extension of its quotient by the center.
    Reconstruct {
        #[arg(long)]
        algebra: String,
    },
    /// The q-deformed Heisenberg algebra.
    #[command(subcommand)]
    Qheis(QheisCmd),
    /// Truncated Fock representations.
    #[command(subcommand)]
    Fock(FockCmd),
    /// Runs the full verification suite.
    VerifyAll,
}

#[derive(Subcommand)]
enum CatalogCmd {
    List,
    Show { name: String },
}

#[derive(Subcommand)]
enum DeformCmd {
    /// Graded Jacobi report for `mu + t phi + t^2 phi2`.
    Check {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        phi: String,
        #[arg(long)]
        phi2: Option<String>,
        /// Also evaluate the bracket at this parameter.
        #[arg(long)]
        t: Option<String>,
    },
}

#[derive(Subcommand)]
enum QheisCmd {
    /// Normal form `sum c B^m A^n` of an expression in A, B, I, q.
    Normalize {
        expr: String,
        /// Specialize q to a number.
        #[arg(long)]
        q: Option<String>,
    },
    /// Machine check of the q-identity table.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 12)]
        max_n: usize,
    },
}

#[derive(Subcommand)]
enum FockCmd {
    /// Truncated matrices of A and B.
    Build {
        #[arg(long)]
        q: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
    },
    /// Defect, spectrum and biorthogonality checks.
    Verify {
        #[arg(long)]
        q: String,
        #[arg(long)]
        n: usize,
    },
    /// Cuntz-Toeplitz creation operators on words of bounded length.
    Cuntz {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        depth: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Coeffs {
    Trivial,
    Adjoint,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Float,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    All,
}

/// A finished command: the report, machine-readable data and a text rendering.
struct Outcome {
    report: Report,
    data: Value,
    text: String,
}

impl Outcome {
    fn new(report: Report, data: Value, text: String) -> Self {
        Outcome { report, data, text }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let start = Instant::now();
    match run(&cli) {
        Ok(mut out) => {
            out.report = out.report.with_timing(start.elapsed());
            let body = if cli.json {
                let mut v = serde_json::to_value(&out.report).expect("reports serialize");
                v["data"] = out.data;
                serde_json::to_string_pretty(&v).expect("values serialize")
            } else if out.text.is_empty() {
                out.report.to_string()
            } else {
                format!("{}\n{}", out.text.trim_end(), out.report)
            };
            // A closed pipe is not an error worth reporting.
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            ExitCode::from(out.report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Catalog(CatalogCmd::List) => catalog_list(),
        Command::Catalog(CatalogCmd::Show { name }) => catalog_show(name),
        Command::Algebra { algebra } => algebra_info(algebra),
        Command::Cohomology { algebra, k, coeffs } => cohomology(algebra, *k, *coeffs),
        Command::Deform(DeformCmd::Check {
            algebra,
            phi,
            phi2,
            t,
        }) => deform_check(algebra, phi, phi2.as_deref(), t.as_deref()),
        Command::Rigidity { algebra } => rigidity(algebra),
        Command::Extend { algebra, cocycle } => extend(algebra, cocycle),
        Command::Reconstruct { algebra } => reconstruct(algebra),
        Command::Qheis(QheisCmd::Normalize { expr, q }) => qheis_normalize(expr, q.as_deref()),
        Command::Qheis(QheisCmd::Verify {
            suite: Suite::All,
            max_n,
        }) => qheis_verify(*max_n),
        Command::Fock(FockCmd::Build { q, n, mode }) => fock_build(q, *n, *mode),
        Command::Fock(FockCmd::Verify { q, n }) => fock_verify(q, *n, cli.seed),
        Command::Fock(FockCmd::Cuntz { d, depth }) => fock_cuntz(*d, *depth),
        Command::VerifyAll => verify_all(cli.seed),
    }
}

/// A catalog name, or else a path to an algebra document.
fn load_algebra(source: &str) -> Result<LieAlgebra> {
    if let Ok(entry) = catalog::get(source) {
        return Ok(entry.algebra);
    }
    let path = Path::new(source);
    if !path.exists() {
        bail!("'{source}' is neither a catalog name nor a file");
    }
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {source}"))?;
    LieAlgebra::from_json_str(&text).with_context(|| format!("parsing {source}"))
}

fn load_cochain(path: &str, n: usize) -> Result<Cochain> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    Cochain::from_json_str(&text, n).with_context(|| format!("parsing {path}"))
}

fn parse_scalar(s: &str) -> Result<GaussRat> {
    s.parse().map_err(|e| anyhow!("bad scalar '{s}': {e}"))
}

fn describe(g: &LieAlgebra) -> String {
    let labels = g.labels();
    let mut s = String::new();
    for ((i, j), v) in g.brackets() {
        let rhs: Vec<String> = v
            .iter()
            .map(|(k, c)| {
                if c.is_one() {
                    labels[*k].clone()
                } else {
                    format!("({c}) {}", labels[*k])
                }
            })
            .collect();
        let _ = writeln!(s, "[{}, {}] = {}", labels[i], labels[j], rhs.join(" + "));
    }
    if s.is_empty() {
        s.push_str("abelian\n");
    }
    s
}

fn catalog_list() -> Result<Outcome> {
    let mut rows = Vec::new();
    let mut text = String::new();
    for name in catalog::list() {
        let entry = catalog::get(&name)?;
        let _ = writeln!(text, "{name:<10} dim {}", entry.algebra.dim());
        rows.push(json!({ "name": name, "dim": entry.algebra.dim(), "notes": entry.notes }));
    }
    Ok(Outcome::new(
        Report::new("catalog list"),
        Value::Array(rows),
        text,
    ))
}

fn catalog_show(name: &str) -> Result<Outcome> {
    let entry = catalog::get(name)?;
    let check = catalog::check_entry(&entry);
    let mut report = Report::new(format!("catalog show {name}"));
    report.check("jacobi", check.jacobi);
    report.push(
        "invariants match catalog",
        "none",
        mismatch_list(&check.mismatches),
        check.mismatches.is_empty(),
    );
    let mut doc = entry.algebra.to_json();
    doc["name"] = json!(name);
    let text = format!("{name}: {}\n{}", entry.notes, describe(&entry.algebra));
    Ok(Outcome::new(
        report,
        json!({ "algebra": doc, "signature": check.signature }),
        text,
    ))
}

fn mismatch_list(m: &[&str]) -> String {
    if m.is_empty() {
        "none".into()
    } else {
        m.join(", ")
    }
}

fn algebra_info(source: &str) -> Result<Outcome> {
    let g = load_algebra(source)?;
    let mut report = Report::new("algebra");
    let jacobi = g.check_jacobi();
    report.push(
        "jacobi",
        "holds",
        match &jacobi {
            Ok(()) => "holds".to_string(),
            Err(w) => format!(
                "fails on ({}, {}, {})",
                w.triple.0 + 1,
                w.triple.1 + 1,
                w.triple.2 + 1
            ),
        },
        jacobi.is_ok(),
    );
    let sig = invariant_signature(&g);
    let lcs = dims(&lower_central_series(&g));
    let ds = dims(&derived_series(&g));
    let text = format!(
        "{}dim {}, center {}, lower central series {:?}, derived series {:?}",
        describe(&g),
        g.dim(),
        g.center().dim(),
        lcs,
        ds
    );
    let data = json!({
        "algebra": g.to_json(),
        "signature": sig,
        "lower_central_series": lcs,
        "derived_series": ds,
    });
    Ok(Outcome::new(report, data, text))
}

fn betti_text(rows: &[BettiRow]) -> String {
    let mut s = format!(
        "{:>3} {:>8} {:>8} {:>8} {:>4}\n",
        "k", "C^k", "Z^k", "B^k", "H^k"
    );
    for r in rows {
        let _ = writeln!(
            s,
            "{:>3} {:>8} {:>8} {:>8} {:>4}",
            r.degree, r.cochains, r.cocycles, r.coboundaries, r.cohomology
        );
    }
    s
}

fn cohomology(source: &str, k: Option<usize>, coeffs: Coeffs) -> Result<Outcome> {
    let g = load_algebra(source)?;
    if !g.is_lie() {
        bail!("'{source}' does not satisfy the Jacobi identity");
    }
    let rep = match coeffs {
        Coeffs::Trivial => Representation::trivial(&g, 1),
        Coeffs::Adjoint => Representation::adjoint(&g),
    };
    let rows = match k {
        Some(k) => vec![betti_row(&rep, k)],
        None => betti_table(&rep),
    };
    let mut report = Report::new("cohomology");
    for r in &rows {
        report.check(
            format!("rank identity in degree {}", r.degree),
            r.cocycles >= r.coboundaries,
        );
    }
    let mut text = betti_text(&rows);
    if let [r] = rows.as_slice() {
        let _ = writeln!(text, "dim H^{} = {}", r.degree, r.cohomology);
    }
    Ok(Outcome::new(report, serde_json::to_value(&rows)?, text))
}

fn deform_check(source: &str, phi: &str, phi2: Option<&str>, t: Option<&str>) -> Result<Outcome> {
    let g = load_algebra(source)?;
    let mut perturbations = vec![load_cochain(phi, g.dim())?];
    if let Some(p) = phi2 {
        perturbations.push(load_cochain(p, g.dim())?);
    }
    let d = DeformedBracket::new(&g, perturbations)?;
    let poly = d.jacobi_polynomial();
    let mut report = Report::new("deform check");
    report.check("base algebra satisfies Jacobi", g.is_lie());
    let top = 2 * d.order() as i64;
    let mut graded = Vec::new();
    for deg in 0..=top {
        let comp = poly.component(deg);
        let witness = comp
            .keys()
            .next()
            .map(|t| format!("({}, {}, {})", t.0 + 1, t.1 + 1, t.2 + 1));
        report.push(
            format!("t^{deg} component"),
            "0",
            witness
                .as_deref()
                .map_or("0".into(), |w| format!("nonzero at {w}")),
            comp.is_empty(),
        );
        graded.push(json!({ "degree": deg, "vanishes": comp.is_empty(), "witness": witness }));
    }
    let mut data = json!({ "order": d.order(), "graded": graded, "is_lie": d.is_lie().is_ok() });
    if let Some(t) = t {
        let t0 = parse_scalar(t)?;
        match d.evaluate_at(&t0, false) {
            Ok(ev) => {
                report.check(format!("Lie at t = {t0}"), true);
                data["evaluated"] = ev.algebra.to_json();
            }
            Err(e) => report.push(format!("Lie at t = {t0}"), "holds", e, false),
        }
    }
    Ok(Outcome::new(report, data, String::new()))
}

fn rigidity(source: &str) -> Result<Outcome> {
    let g = load_algebra(source)?;
    let r = rigidity_report(&g);
    let mut report = Report::new("rigidity");
    report.push(
        "orbit tangent = dim B^2(g, g)",
        r.b2_dim,
        r.orbit_tangent_dim,
        r.tangent_equals_b2,
    );
    let text = format!(
        "dim {}, dim Der {}, dim B^2 {}, dim H^2(g, g) {}, rigid: {}",
        r.dim, r.der_dim, r.b2_dim, r.h2_dim, r.nr_rigid
    );
    Ok(Outcome::new(report, serde_json::to_value(&r)?, text))
}

fn extend(source: &str, cocycle: &str) -> Result<Outcome> {
    let g = load_algebra(source)?;
    let theta = CentralCocycle::new(&g, load_cochain(cocycle, g.dim())?)?;
    let ext = central_extension(&g, &theta)?;
    let mut report = Report::new("extend");
    report.check("extension satisfies Jacobi", ext.is_lie());
    report.check("short exact sequence", short_exact_check(&g, &ext));
    let text = describe(&ext);
    Ok(Outcome::new(
        report,
        json!({ "algebra": ext.to_json() }),
        text,
    ))
}

fn reconstruct(source: &str) -> Result<Outcome> {
    let g = load_algebra(source)?;
    let ind = induced_cocycle(&g)?;
    let mut report = Report::new("reconstruct");
    report.check("round trip is an isomorphism", ind.verify(&g));
    let ext = central_extension(&ind.quotient, &ind.theta)?;
    report.check(
        "signature preserved",
        invariant_signature(&ext) == invariant_signature(&g),
    );
    let text = format!("quotient by the center:\n{}", describe(&ind.quotient));
    let data = json!({
        "quotient": ind.quotient.to_json(),
        "cocycle": ind.theta.cochain().to_doc(),
        "center_dim": ind.center.dim(),
    });
    Ok(Outcome::new(report, data, text))
}

fn qheis_normalize(expr: &str, q: Option<&str>) -> Result<Outcome> {
    let e = parse_expr(expr)?;
    let nf = match q {
        Some(q) => normal_order_at(&e, &parse_scalar(q)?)?,
        None => normal_order(&e)?,
    };
    let text = nf.to_string();
    Ok(Outcome::new(
        Report::new("qheis normalize"),
        json!({ "input": expr, "normal_form": nf }),
        text,
    ))
}

fn qheis_verify(max_n: usize) -> Result<Outcome> {
    let limits = SuiteLimits::up_to(max_n);
    let rows = verify_suite(limits)?;
    let mut report = Report::new("qheis verify");
    for r in &rows {
        report.check(&r.name, r.passed);
    }
    let mut text = String::new();
    for r in rows
        .iter()
        .filter_map(|r| r.note.as_ref().map(|n| (&r.name, n)))
    {
        let _ = writeln!(text, "note  {}: {}", r.0, r.1);
    }
    Ok(Outcome::new(
        report,
        json!({ "limits": limits, "rows": rows }),
        text,
    ))
}

fn check_size(n: usize) -> Result<()> {
    let cap = size_cap();
    if n.checked_mul(n).is_none_or(|sq| sq > cap) {
        bail!(
            "N = {n} exceeds the size cap of {cap} matrix entries (set LIEQ_SIZE_CAP to raise it)"
        );
    }
    Ok(())
}

fn fock_build(q: &str, n: usize, mode: Mode) -> Result<Outcome> {
    check_size(n)?;
    let mut report = Report::new("fock build");
    match mode {
        Mode::Exact => {
            let q0 = parse_scalar(q)?;
            let (a, b) = monomial_rep(&q0, n)?;
            let d = check_qccr(&q0, n)?;
            report.check("defect vanishes off the corner", d.holds());
            Ok(Outcome::new(
                report,
                json!({ "mode": "exact", "q": q0, "size": n, "A": a, "B": b }),
                String::new(),
            ))
        }
        Mode::Float => {
            let q0: f64 = q.parse().with_context(|| format!("bad float '{q}'"))?;
            let (c, c_dag) = orthonormal_rep_float(q0, n)?;
            let res = float_residual(q0, n)?;
            report.push(
                "off-corner residual",
                format!("<= {:e}", res.tolerance),
                format!("{:e}", res.off_corner),
                res.holds(),
            );
            let triplets = |m| {
                let entries: Vec<Value> = float_triplets(m)
                    .into_iter()
                    .map(|(i, j, x)| json!([i, j, x.to_string()]))
                    .collect();
                json!({ "rows": n, "cols": n, "entries": entries })
            };
            let data = json!({ "mode": "float", "q": q0, "size": n, "A": triplets(&c), "B": triplets(&c_dag) });
            Ok(Outcome::new(report, data, String::new()))
        }
    }
}

fn fock_verify(q: &str, n: usize, seed: u64) -> Result<Outcome> {
    use rand::{Rng, SeedableRng};
    check_size(n)?;
    let q0 = parse_scalar(q)?;
    let mut report = Report::new("fock verify");
    let d = check_qccr(&q0, n)?;
    report.push(
        "defect off the corner",
        "0",
        if d.interior_zero { "0" } else { "nonzero" },
        d.interior_zero,
    );
    report.push(
        "corner",
        &d.expected_corner,
        &d.corner,
        d.corner == d.expected_corner,
    );
    let (a, b) = monomial_rep(&q0, n)?;
    let spectrum = number_operator_spectrum(&a, &b)?;
    report.check(
        "spectrum of BA is {m}_q",
        spectrum == closed_form_spectrum(&q0, n),
    );
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let weights: Vec<GaussRat> = (0..n)
        .map(|_| GaussRat::ratio(rng.gen_range(1..=20), rng.gen_range(1..=9)))
        .collect();
    let sys = biorthogonal_pair(&weights, &q0)?;
    report.check("biorthonormal pairing", sys.is_biorthonormal());
    report.check("ladder relations", sys.ladder_holds());
    report.check("vacua annihilated", sys.vacua_annihilated());
    let data = json!({ "defect": d, "spectrum": spectrum, "weights": weights });
    Ok(Outcome::new(report, data, String::new()))
}

fn fock_cuntz(d: usize, depth: usize) -> Result<Outcome> {
    let f = cuntz_toeplitz(d, depth, size_cap())?;
    let r = f.check();
    let mut report = Report::new("fock cuntz");
    report.check(
        "l_i^dagger l_j = delta_ij below the top degree",
        r.relations_hold,
    );
    report.check(
        "defect supported on top-degree words",
        r.defect_on_top_degree,
    );
    let text = format!("d = {d}, depth {depth}, dimension {}", f.dim());
    Ok(Outcome::new(report, serde_json::to_value(&r)?, text))
}

fn verify_all(seed: u64) -> Result<Outcome> {
    let start = Instant::now();
    let results = suite::run_all(seed);
    let report = suite::to_report(&results, start.elapsed());
    Ok(Outcome::new(
        report,
        serde_json::to_value(&results)?,
        String::new(),
    ))
}
