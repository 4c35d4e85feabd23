//! The statement catalog, run as exhaustive checks over finite structures.
//!
//! Each statement is a universally quantified claim about one hemiring.
//! Crisp quantifiers range over the enumerated ideal families; fuzzy ones
//! over the grid families at the configured denominator, so fuzzy verdicts
//! hold relative to that grid.

mod checks;
mod context;
mod evidence;

pub use context::{Coverage, Global, Scope};
pub use evidence::{CrispProperty, Fact, FuzzyExpr, FuzzyProperty, SetExpr, Witness};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::hemiring::Hemiring;
use crate::subset::Subset;
use crate::subsets::IdealKind;

use checks::Outcome;
use context::Ctx;

/// One catalog entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Statement {
    pub id: &'static str,
    pub claim: &'static str,
    /// Evaluated only when a structural hypothesis holds.
    pub conditional: bool,
}

const fn st(id: &'static str, claim: &'static str, conditional: bool) -> Statement {
    Statement { id, claim, conditional }
}

pub const CATALOG: &[Statement] = &[
    st("L2.1", "intersections of left, right and two-sided h-ideals are h-ideals of the same kind", false),
    st("L2.2", "hcl(AB) = hcl(hcl(A)hcl(B)) for non-empty subsets A, B", false),
    st("L2.3", "hcl(AB) ⊆ A∩B for a right h-ideal A and a left h-ideal B", false),
    st("L2.5", "h-hemiregular iff hcl(AB) = A∩B for every right h-ideal A and left h-ideal B", false),
    st("Transfer", "a fuzzy subset is a fuzzy ideal of a kind iff its non-empty level sets are ideals of that kind", false),
    st("P2.8", "the two-valued indicator of A is a fuzzy h-ideal of a kind iff A is an h-ideal of that kind", false),
    st("P2.9", "two-valued indicators with equal images preserve inclusion and meets", false),
    st("T2.11", "h-hemiregular iff λ∘μ = λ∧μ for fuzzy right h-ideals λ and fuzzy left h-ideals μ", false),
    st("P3.2", "∘ ≤ ⊙, ⊙ is monotone, and χA ⊙ χB = χ of hcl(AB)", false),
    st("T3.3", "λ⊙μ of fuzzy h-ideals is a fuzzy h-ideal below λ∧μ", false),
    st("T3.4", "h-hemiregular iff λ⊙μ = λ∧μ for fuzzy right h-ideals λ and fuzzy left h-ideals μ", false),
    st("C3.5", "in h-hemiregular hemirings λ⊙μ = λ∘μ for fuzzy h-ideals", true),
    st("P4.1", "five characterisations of all h-ideals being h-idempotent agree", false),
    st("C4.2", "a commutative hemiring is h-hemiregular iff all h-ideals are h-idempotent", true),
    st("P4.3", "all fuzzy h-ideals idempotent iff λ⊙μ = λ∧μ for all fuzzy h-ideals", false),
    st("C4.4", "a commutative hemiring is h-hemiregular iff all fuzzy h-ideals are idempotent iff ⊙ = ∧", true),
    st("T4.5", "with an identity, crisp and fuzzy idempotency characterisations agree", true),
    st("T4.7", "the h-sum of fuzzy h-ideals is a fuzzy h-ideal", false),
    st("T4.8", "if all h-ideals are h-idempotent their lattice is complete and Brouwerian", true),
    st("C4.9", "if all h-ideals are h-idempotent their lattice is distributive", true),
    st("T4.10", "all fuzzy h-ideals idempotent iff they form a distributive lattice under +h and ⊙ = ∧", false),
    st("T5.1", "a one-sided h-ideal is prime iff aRb ⊆ P forces a ∈ P or b ∈ P", false),
    st("C5.2", "an h-ideal is prime iff aRb ⊆ P forces a ∈ P or b ∈ P", false),
    st("C5.3", "in commutative hemirings with identity an h-ideal is prime iff ab ∈ P forces a ∈ P or b ∈ P", true),
    st("T5.5", "a non-constant fuzzy h-ideal is prime iff each proper level set is a prime h-ideal", false),
    st("C5.7", "a two-valued indicator is a prime fuzzy h-ideal iff its set is a prime h-ideal", false),
    st("P5.8", "in commutative hemirings with identity δ is prime iff δ(ab) = δ(a)∨δ(b)", true),
    st("T5.9", "every proper h-ideal lies in a proper irreducible h-ideal", false),
    st("T5.10", "if all h-ideals are h-idempotent, irreducible and prime h-ideals coincide", true),
    st("C5.11", "if all h-ideals are h-idempotent, every proper h-ideal lies in a proper prime one", true),
    st("T5.12", "if all fuzzy h-ideals are idempotent, irreducible and h-prime fuzzy h-ideals coincide", true),
    st("T5.13", "all h-ideals h-idempotent iff every proper h-ideal is the intersection of the primes above it", false),
    st("L5.14", "if all fuzzy h-ideals are idempotent, each λ and a admit an irreducible h-prime δ ≥ λ with δ(a) = λ(a)", true),
    st("T5.15", "all fuzzy h-ideals idempotent iff each is the meet of the h-prime fuzzy h-ideals above it", false),
    st("T6.2", "an h-ideal of any side is semiprime iff aRa ⊆ P forces a ∈ P", false),
    st("C6.3", "in commutative hemirings with identity an h-ideal is semiprime iff a² ∈ P forces a ∈ P", true),
    st("T6.4", "all h-ideals h-idempotent iff every proper h-ideal is semiprime", false),
    st("T6.5", "all fuzzy h-ideals idempotent iff every non-constant fuzzy h-ideal is semiprime", false),
    st("T6.9", "a non-constant fuzzy h-ideal is semiprime iff each proper level set is a semiprime h-ideal", false),
    st("C6.10", "a two-valued indicator is a semiprime fuzzy h-ideal iff its set is a semiprime h-ideal", false),
    st("P6.11", "in commutative hemirings with identity δ is semiprime iff δ(a²) = δ(a)", true),
];

pub fn statement(id: &str) -> Result<&'static Statement> {
    CATALOG.iter().find(|s| s.id == id).ok_or_else(|| Error::UnknownStatement(id.into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Holds,
    Fails,
    Vacuous,
    /// The check could not run, e.g. a cap was exceeded.
    Error,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::Vacuous => "vacuous",
            Status::Error => "error",
        }
    }
}

/// The result of one statement on one structure.
#[derive(Clone, Debug, PartialEq)]
pub struct TheoremReport {
    pub statement: String,
    pub structure: String,
    pub status: Status,
    pub witness: Option<Witness>,
    /// The witness rendered with element names.
    pub witness_json: Option<Value>,
    /// Why a statement is vacuous, or the error message.
    pub reason: Option<String>,
    pub scope: Scope,
    pub quarantined: bool,
}

impl TheoremReport {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "statement": self.statement,
            "structure": self.structure,
            "status": self.status,
            "witness": self.witness_json,
            "scope": self.scope,
        });
        if let Some(r) = &self.reason {
            v["reason"] = json!(r);
        }
        if self.quarantined {
            v["quarantined"] = json!(true);
        }
        v
    }
}

fn evaluate(ctx: &Ctx, id: &str) -> Result<TheoremReport> {
    let check = checks::lookup(id).ok_or_else(|| Error::UnknownStatement(id.into()))?;
    ctx.begin();
    let outcome = check(ctx);
    let scope = ctx.take_scope();
    let (status, witness, reason) = match outcome? {
        Outcome::Holds => (Status::Holds, None, None),
        Outcome::Vacuous(r) => (Status::Vacuous, None, Some(r)),
        Outcome::Fails(facts) => (Status::Fails, Some(Witness::new(facts)), None),
    };
    Ok(TheoremReport {
        statement: id.into(),
        structure: ctx.h.name().into(),
        status,
        witness_json: witness.as_ref().map(|w| w.to_json(ctx.h)),
        witness,
        reason,
        scope,
        quarantined: ctx.h.is_quarantined(),
    })
}

fn error_report(h: &Hemiring, id: &str, config: &Config, e: &Error) -> TheoremReport {
    TheoremReport {
        statement: id.into(),
        structure: h.name().into(),
        status: Status::Error,
        witness: None,
        witness_json: None,
        reason: Some(e.to_string()),
        scope: Scope { denominator: config.denominator, ..Scope::default() },
        quarantined: h.is_quarantined(),
    }
}

/// Runs one statement on one structure.
pub fn run_statement(h: &Hemiring, id: &str, config: &Config) -> Result<TheoremReport> {
    config.validate()?;
    statement(id)?;
    evaluate(&Ctx::new(h, config), id)
}

/// Counts over the non-quarantined reports of a suite.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub holds: usize,
    pub fails: usize,
    pub vacuous: usize,
    pub errors: usize,
    /// Reports on quarantined structures, left out of the counts above.
    pub quarantined: usize,
    /// `(structure, ideal)` pairs that are semiprime but not prime.
    pub semiprime_not_prime: Vec<(String, String)>,
}

impl Summary {
    pub fn to_json(&self) -> Value {
        json!({ "summary": self })
    }
}

#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub reports: Vec<TheoremReport>,
    pub summary: Summary,
}

/// Resolves `all` or a list of ids against the catalog.
pub fn resolve_ids(ids: &[&str]) -> Result<Vec<&'static str>> {
    if ids.is_empty() || ids == ["all"] {
        return Ok(CATALOG.iter().map(|s| s.id).collect());
    }
    ids.iter().map(|id| statement(id).map(|s| s.id)).collect()
}

/// Runs every statement on every structure. Failures of individual cells
/// become `error` reports; reports come out statement-major, in catalog
/// order, then corpus order.
pub fn run_suite(corpus: &[Hemiring], ids: &[&str], config: &Config) -> Result<SuiteResult> {
    config.validate()?;
    if corpus.is_empty() {
        return Err(Error::Input("the corpus is empty".into()));
    }
    let ids = resolve_ids(ids)?;
    let per_structure: Vec<(Vec<TheoremReport>, Vec<Subset>)> = corpus
        .par_iter()
        .map(|h| {
            let ctx = Ctx::new(h, config);
            let reports = ids
                .iter()
                .map(|id| evaluate(&ctx, id).unwrap_or_else(|e| error_report(h, id, config, &e)))
                .collect();
            let odd = if h.is_quarantined() { Vec::new() } else { semiprime_not_prime(h, config).unwrap_or_default() };
            (reports, odd)
        })
        .collect();

    let mut reports = Vec::with_capacity(ids.len() * corpus.len());
    for k in 0..ids.len() {
        for (rs, _) in &per_structure {
            reports.push(rs[k].clone());
        }
    }
    let mut summary = Summary::default();
    for r in &reports {
        if r.quarantined {
            summary.quarantined += 1;
            continue;
        }
        match r.status {
            Status::Holds => summary.holds += 1,
            Status::Fails => summary.fails += 1,
            Status::Vacuous => summary.vacuous += 1,
            Status::Error => summary.errors += 1,
        }
    }
    for (h, (_, odd)) in corpus.iter().zip(&per_structure) {
        for &p in odd {
            summary.semiprime_not_prime.push((h.name().into(), h.render(p)));
        }
    }
    Ok(SuiteResult { reports, summary })
}

/// h-ideals that are semiprime but not prime. Kept as a diagnostic: the
/// implication "semiprime ⟹ prime" is not treated as a statement.
pub fn semiprime_not_prime(h: &Hemiring, config: &Config) -> Result<Vec<Subset>> {
    let ctx = Ctx::new(h, config);
    let members = ctx.crisp(IdealKind::H)?.members.clone();
    let mut out = Vec::new();
    for p in members {
        if ctx.crisp_property(CrispProperty::Semiprime, IdealKind::H, p)?
            && !ctx.crisp_property(CrispProperty::Prime, IdealKind::H, p)?
        {
            out.push(p);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn small() -> Config {
        Config::with_denominator(4)
    }

    #[test]
    fn every_catalog_id_has_a_check() {
        for s in CATALOG {
            assert!(checks::lookup(s.id).is_some(), "{}", s.id);
        }
        assert_eq!(CATALOG.len(), 41);
    }

    #[test]
    fn unknown_ids_are_rejected() {
        let h = fixtures::z2_field();
        assert!(matches!(run_statement(&h, "T9.9", &small()), Err(Error::UnknownStatement(_))));
        assert!(run_suite(&[h], &["T9.9"], &small()).is_err());
    }

    #[test]
    fn single_ideal_structure_idempotency_equivalence_holds() {
        let h = fixtures::absorbing();
        let r = run_statement(&h, "T6.4", &small()).unwrap();
        assert_eq!(r.status, Status::Holds);
        assert_eq!(r.scope.sides, vec![true, true]);
        assert_eq!(r.scope.families.get("h"), Some(&1));
    }

    #[test]
    fn constant_only_family_makes_level_statements_vacuous() {
        let h = fixtures::absorbing();
        let suite = run_suite(&[h], &["T5.5", "T6.9"], &small()).unwrap();
        assert!(suite.reports.iter().all(|r| r.status == Status::Vacuous));
        assert_eq!(suite.summary.vacuous, 2);
    }

    #[test]
    fn null_multiplication_idempotency_equivalence_holds_with_every_side_false() {
        let h = fixtures::z2_null();
        let r = run_statement(&h, "P4.1", &small()).unwrap();
        assert_eq!(r.status, Status::Holds);
        assert_eq!(r.scope.sides, vec![false; 5]);
    }

    #[test]
    fn conditional_statements_report_vacuous() {
        let h = fixtures::z2_null();
        for id in ["T5.10", "C5.11", "T4.8", "C4.9", "T5.12", "L5.14"] {
            let r = run_statement(&h, id, &small()).unwrap();
            assert_eq!(r.status, Status::Vacuous, "{id}");
            assert!(r.reason.is_some());
        }
    }

    #[test]
    fn prime_cover_fails_below_one_at_zero() {
        let h = fixtures::z2_field();
        let r = run_statement(&h, "L5.14", &small()).unwrap();
        assert_eq!(r.status, Status::Fails);
        let w = r.witness.unwrap();
        assert!(w.replay(&h, &small()).unwrap());
        match &w.facts[0] {
            Fact::Fuzzy { f, .. } => assert!(f.num(0) < f.denominator()),
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn closure_of_products_fails_on_the_two_element_field() {
        let h = fixtures::z2_field();
        let r = run_statement(&h, "L2.2", &small()).unwrap();
        assert_eq!(r.status, Status::Fails);
        assert!(r.witness.unwrap().replay(&h, &small()).unwrap());
        assert_eq!(run_statement(&fixtures::boolean(), "L2.2", &small()).unwrap().status, Status::Holds);
    }

    #[test]
    fn quarantined_reports_are_excluded_from_the_summary() {
        let q = fixtures::nondistributive_quarantined();
        let suite = run_suite(&[q, fixtures::z2_field()], &["L2.1"], &small()).unwrap();
        assert!(suite.reports[0].quarantined);
        assert_eq!(suite.reports[0].to_json()["quarantined"], json!(true));
        assert_eq!(suite.summary.quarantined, 1);
        assert_eq!(suite.summary.holds, 1);
    }

    #[test]
    fn capacity_errors_become_error_reports() {
        let h = fixtures::boolean();
        let config = Config { fuzzy_budget: 2, ..small() };
        let suite = run_suite(&[h], &["T3.3", "L2.1"], &config).unwrap();
        assert_eq!(suite.reports[0].status, Status::Error);
        assert_eq!(suite.reports[1].status, Status::Holds);
        assert_eq!(suite.summary.errors, 1);
    }

    #[test]
    fn suite_is_deterministic_and_statement_major() {
        let corpus = fixtures::all_valid();
        let a = run_suite(&corpus, &["L2.2", "P3.2"], &small()).unwrap();
        let b = run_suite(&corpus, &["L2.2", "P3.2"], &small()).unwrap();
        let lines = |s: &SuiteResult| s.reports.iter().map(|r| r.to_json().to_string()).collect::<Vec<_>>();
        assert_eq!(lines(&a), lines(&b));
        assert_eq!(a.reports[0].statement, "L2.2");
        assert_eq!(a.reports[corpus.len()].statement, "P3.2");
        assert_eq!(a.reports[1].structure, corpus[1].name());
    }

    #[test]
    fn fixtures_fail_only_the_known_statements() {
        let corpus = fixtures::all_valid();
        let suite = run_suite(&corpus, &["all"], &small()).unwrap();
        for r in suite.reports.iter().filter(|r| r.status == Status::Fails) {
            let h = corpus.iter().find(|h| h.name() == r.structure).unwrap();
            assert!(r.witness.as_ref().unwrap().replay(h, &small()).unwrap(), "{}", r.to_json());
        }
        let bad: Vec<String> = suite
            .reports
            .iter()
            .filter(|r| matches!(r.status, Status::Fails | Status::Error) && !["L2.2", "L5.14", "T5.15"].contains(&r.statement.as_str()))
            .map(|r| format!("{} {} {}", r.statement, r.structure, r.to_json()))
            .collect();
        assert!(bad.is_empty(), "{bad:#?}");
    }
}
