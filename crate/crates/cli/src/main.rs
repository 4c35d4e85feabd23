use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use hemiring::fuzzy::Method;
use hemiring::generator::{load_corpus, write_corpus};
use hemiring::hemiring::verify_axioms;
use hemiring::theorems::{self, Status};
use hemiring::{fixtures, Config, Error, FuzzySubset, Hemiring, IdealKind, ProductOp, RawTables};
use serde_json::json;

mod render;

use render::Out;

#[derive(Parser)]
#[command(name = "hemiring", version, about = "Finite hemirings, h-ideals and fuzzy h-ideals")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "human", env = "HEMIRING_FORMAT")]
    format: Format,
    /// Grid denominator D for fuzzy values.
    #[arg(short = 'D', long = "denominator", global = true, default_value_t = 20, env = "HEMIRING_DENOMINATOR")]
    denominator: u32,
    /// Largest order whose subsets are scanned directly.
    #[arg(long, global = true, default_value_t = 16, env = "HEMIRING_SUBSET_CAP")]
    subset_cap: usize,
    /// Largest order accepted by `generate`.
    #[arg(long, global = true, default_value_t = 4, env = "HEMIRING_GENERATOR_CAP")]
    generator_cap: usize,
    /// Largest grid fuzzy ideal family that may be enumerated.
    #[arg(long, global = true, default_value_t = 200_000, env = "HEMIRING_FUZZY_BUDGET")]
    fuzzy_budget: usize,
    /// Samples drawn when a universe is too large to scan.
    #[arg(long, global = true, default_value_t = 500, env = "HEMIRING_SAMPLES")]
    samples: usize,
    #[arg(long, global = true, env = "HEMIRING_SEED")]
    seed: Option<u64>,
    /// Let analysis commands load tables that fail the axioms.
    #[arg(long, global = true)]
    allow_quarantined: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Human,
    JsonLines,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Left,
    Right,
    TwoSided,
    K,
    H,
    LeftH,
    RightH,
}

impl From<Kind> for IdealKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Left => IdealKind::Left,
            Kind::Right => IdealKind::Right,
            Kind::TwoSided => IdealKind::TwoSided,
            Kind::K => IdealKind::K,
            Kind::H => IdealKind::H,
            Kind::LeftH => IdealKind::LeftH,
            Kind::RightH => IdealKind::RightH,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Product,
    Intrinsic,
    Sum,
    Meet,
    Join,
}

#[derive(Subcommand)]
enum Command {
    /// Check the hemiring axioms.
    Verify {
        file: PathBuf,
        /// List every failing instance instead of the first per axiom.
        #[arg(long)]
        all: bool,
    },
    /// Enumerate the ideals of one kind.
    Ideals {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "h")]
        kind: Kind,
    },
    /// h-closure of a subset, given as comma-separated element names.
    Closure {
        file: PathBuf,
        #[arg(long)]
        set: String,
    },
    /// Prime, semiprime, irreducible and idempotency verdicts for an h-ideal.
    Classify {
        file: PathBuf,
        #[arg(long)]
        ideal: String,
    },
    /// Combine two fuzzy subset files.
    Fuzzy {
        file: PathBuf,
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long)]
        lhs: PathBuf,
        #[arg(long)]
        rhs: PathBuf,
        /// Recompute by representation search and fail on mismatch.
        #[arg(long)]
        oracle: bool,
    },
    /// Enumerate grid fuzzy ideals.
    FuzzyIdeals {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "h")]
        kind: Kind,
        /// Classify every non-constant fuzzy h-ideal.
        #[arg(long)]
        classify: bool,
    },
    /// Run catalog statements on structures.
    Check {
        files: Vec<PathBuf>,
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Comma-separated statement ids, or `all`.
        #[arg(long, value_delimiter = ',', default_value = "all")]
        statements: Vec<String>,
    },
    /// List the statement catalog.
    Statements,
    /// Write every hemiring of the given orders, up to isomorphism.
    Generate {
        #[arg(long, value_delimiter = ',', required = true)]
        order: Vec<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write the built-in structures, fuzzy sets and annotation.
    Fixtures {
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

impl Cli {
    fn config(&self) -> Config {
        let base = Config::default();
        Config {
            denominator: self.denominator,
            subset_cap: self.subset_cap,
            generator_cap: self.generator_cap,
            fuzzy_budget: self.fuzzy_budget,
            samples: self.samples,
            seed: self.seed.unwrap_or(base.seed),
            ..base
        }
    }
}

/// Exit status of a command that ran to completion.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Verdict {
    Ok,
    Counterexample,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(Verdict::Ok) => ExitCode::SUCCESS,
        Ok(Verdict::Counterexample) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(Error::NotAHemiring(_)) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<Verdict> {
    let config = cli.config();
    config.validate()?;
    let out = Out::new(matches!(cli.format, Format::JsonLines));
    match &cli.command {
        Command::Verify { file, all } => verify(&out, file, *all),
        Command::Ideals { file, kind } => {
            let h = load(cli, file, false)?;
            let family = h.enumerate_ideals((*kind).into(), &config)?;
            out.emit(render::family_json(&h, &family), || render::family_human(&h, &family));
            Ok(Verdict::Ok)
        }
        Command::Closure { file, set } => {
            let h = load(cli, file, true)?;
            let s = h.parse_subset(set)?;
            let c = h.h_closure(s)?;
            out.emit(
                json!({ "structure": h.name(), "set": render::names(&h, s), "closure": render::names(&h, c) }),
                || format!("hcl({}) = {}", render::braces(&h, s), render::braces(&h, c)),
            );
            Ok(Verdict::Ok)
        }
        Command::Classify { file, ideal } => {
            let h = load(cli, file, false)?;
            let p = h.parse_subset(ideal)?;
            let family = h.enumerate_h_ideals(&config)?;
            let c = h.classify_h_ideal(p, &family)?;
            out.emit(render::classification_json(&h, p, &c), || render::classification_human(&h, p, &c));
            Ok(Verdict::Ok)
        }
        Command::Fuzzy { file, op, lhs, rhs, oracle } => fuzzy(cli, &out, &config, file, *op, lhs, rhs, *oracle),
        Command::FuzzyIdeals { file, kind, classify } => {
            let h = load(cli, file, false)?;
            let kind: IdealKind = (*kind).into();
            if *classify && kind != IdealKind::H {
                bail!("--classify applies to fuzzy h-ideals only");
            }
            let family = h.enumerate_fuzzy_ideals(kind, &config)?;
            out.emit(render::fuzzy_family_json(&h, kind, &family), || {
                render::fuzzy_family_human(&h, kind, &family)
            });
            if *classify {
                for (_, d) in family.non_constant() {
                    let c = h.classify_fuzzy(d, &family)?;
                    out.emit(render::fuzzy_class_json(&h, d, &c), || render::fuzzy_class_human(&h, d, &c));
                }
            }
            Ok(Verdict::Ok)
        }
        Command::Check { files, corpus, statements } => check(cli, &out, &config, files, corpus.as_deref(), statements),
        Command::Statements => {
            for s in theorems::CATALOG {
                out.emit(serde_json::to_value(s)?, || {
                    let tag = if s.conditional { " (conditional)" } else { "" };
                    format!("{:<9}{}{tag}", s.id, s.claim)
                });
            }
            Ok(Verdict::Ok)
        }
        Command::Generate { order, out: dir } => {
            let manifest = write_corpus(dir, order, &config)?;
            out.emit(json!({ "out": dir, "manifest": manifest }), || {
                let counts: Vec<String> = manifest.counts.iter().map(|(n, c)| format!("order {n}: {c}")).collect();
                format!("wrote {} structures to {} ({})", manifest.files.len(), dir.display(), counts.join(", "))
            });
            Ok(Verdict::Ok)
        }
        Command::Fixtures { out: dir } => write_fixtures(&out, dir),
    }
}

/// Loads a structure file. Tables failing the axioms load quarantined for
/// table-level commands, and for the rest only with `--allow-quarantined`.
fn load(cli: &Cli, path: &Path, table_level: bool) -> anyhow::Result<Hemiring> {
    let raw = RawTables::load(path).with_context(|| format!("reading {}", path.display()))?;
    match Hemiring::new(raw.clone()) {
        Ok(h) => Ok(h),
        Err(Error::NotAHemiring(report)) if table_level || cli.allow_quarantined => {
            eprintln!(
                "WARNING: {} violates the hemiring axioms ({} failing axiom(s)); loaded QUARANTINED, results are table-level only",
                raw.name,
                report.violations.len()
            );
            Ok(Hemiring::new_quarantined(raw)?)
        }
        Err(e @ Error::NotAHemiring(_)) => {
            Err(anyhow::Error::new(e).context(format!("{} is not a hemiring; pass --allow-quarantined to analyse it anyway", path.display())))
        }
        Err(e) => Err(e.into()),
    }
}

fn verify(out: &Out, path: &Path, all: bool) -> anyhow::Result<Verdict> {
    let raw = RawTables::load(path).with_context(|| format!("reading {}", path.display()))?;
    let report = verify_axioms(&raw, all)?;
    out.emit(report.to_json(&raw), || render::axioms_human(&raw, &report));
    Ok(if report.valid { Verdict::Ok } else { Verdict::Counterexample })
}

#[allow(clippy::too_many_arguments)]
fn fuzzy(
    cli: &Cli,
    out: &Out,
    config: &Config,
    file: &Path,
    op: Op,
    lhs: &Path,
    rhs: &Path,
    oracle: bool,
) -> anyhow::Result<Verdict> {
    if oracle && matches!(op, Op::Meet | Op::Join) {
        bail!("--oracle applies to product, intrinsic and sum");
    }
    let h = load(cli, file, true)?;
    let den = config.denominator;
    let read = |p: &Path| FuzzySubset::load(p, &h, den).with_context(|| format!("reading {}", p.display()));
    let (l, m) = (read(lhs)?, read(rhs)?);
    let product = match op {
        Op::Product => Some(ProductOp::Product),
        Op::Intrinsic => Some(ProductOp::Intrinsic),
        Op::Sum => Some(ProductOp::Sum),
        Op::Meet | Op::Join => None,
    };
    let result = match (op, product) {
        (_, Some(p)) => h.fuzzy_op(p, &l, &m)?,
        (Op::Meet, None) => l.meet(&m)?,
        _ => l.join(&m)?,
    };
    let op_name = match product {
        Some(p) => p.name(),
        None if matches!(op, Op::Meet) => "meet",
        None => "join",
    };
    let check = match (oracle, product) {
        (true, Some(p)) => Some(h.oracle_product(p, &l, &m)?),
        _ => None,
    };
    let agrees = check.as_ref().map(|c| *c == result);
    let mut v = json!({
        "structure": h.name(),
        "op": op_name,
        "result": result.to_named(&h),
        "fuzzy_h_ideal": result.is_fuzzy_ideal(&h, IdealKind::H, Method::Direct)?,
    });
    if h.is_quarantined() {
        v["quarantined"] = json!(true);
    }
    if let Some(c) = &check {
        v["oracle"] = json!(c.to_named(&h));
        v["oracle_agrees"] = json!(agrees);
    }
    out.emit(v, || {
        let mut s = format!("{op_name}: {}", result.render(&h));
        if let (Some(c), Some(ok)) = (&check, agrees) {
            s += &format!("\noracle: {} ({})", c.render(&h), if ok { "agrees" } else { "MISMATCH" });
        }
        s
    });
    Ok(if agrees == Some(false) { Verdict::Counterexample } else { Verdict::Ok })
}

fn check(
    cli: &Cli,
    out: &Out,
    config: &Config,
    files: &[PathBuf],
    corpus: Option<&Path>,
    statements: &[String],
) -> anyhow::Result<Verdict> {
    let mut structures = Vec::new();
    if let Some(dir) = corpus {
        structures.extend(load_corpus(dir).with_context(|| format!("loading corpus {}", dir.display()))?);
    }
    for f in files {
        structures.push(load(cli, f, false)?);
    }
    if structures.is_empty() {
        bail!("give structure files or --corpus <dir>");
    }
    let ids: Vec<&str> = statements.iter().map(String::as_str).collect();
    let suite = theorems::run_suite(&structures, &ids, config)?;
    for r in &suite.reports {
        out.emit(r.to_json(), || render::report_human(r));
    }
    let s = &suite.summary;
    out.emit(s.to_json(), || render::summary_human(s));
    if s.fails > 0 {
        Ok(Verdict::Counterexample)
    } else if s.errors > 0 {
        let first = suite.reports.iter().find(|r| r.status == Status::Error && !r.quarantined);
        Err(anyhow!(
            "{} statement(s) could not be evaluated{}",
            s.errors,
            first.and_then(|r| r.reason.as_ref()).map(|m| format!(": {m}")).unwrap_or_default()
        ))
    } else {
        Ok(Verdict::Ok)
    }
}

fn write_fixtures(out: &Out, dir: &Path) -> anyhow::Result<Verdict> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let write = |name: &str, text: String| -> anyhow::Result<PathBuf> {
        let path = dir.join(name);
        std::fs::write(&path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
        Ok(path)
    };
    let mut written = Vec::new();
    for tables in [fixtures::absorbing_tables(), fixtures::nondistributive_tables()] {
        let path = write(&format!("{}.json", tables.name), tables.to_json())?;
        let valid = verify_axioms(&RawTables::load(&path)?, false)?.valid;
        written.push((path, if valid { "valid" } else { "invalid (quarantined)" }));
    }
    let h = fixtures::nondistributive_quarantined();
    for (name, f) in fixtures::nondistributive_fuzzy() {
        let text = serde_json::to_string_pretty(&f.to_file(&h))?;
        written.push((write(&format!("{}.{name}.json", h.name()), text)?, "fuzzy subset (D=20)"));
    }
    let note = fixtures::nondistributive_annotation()?;
    written.push((write(&format!("{}.annotation.json", h.name()), serde_json::to_string_pretty(&note)?)?, "annotation"));
    for (path, status) in &written {
        out.emit(json!({ "file": path, "status": status }), || format!("{}: {status}", path.display()));
    }
    Ok(Verdict::Ok)
}
