use hemiring::fuzzy::{FuzzyClassification, FuzzyFamily, FuzzyWitness, GridVerdict};
use hemiring::subsets::{ClassWitness, Classification};
use hemiring::theorems::{Status, Summary, TheoremReport};
use hemiring::{AxiomReport, FuzzySubset, Hemiring, IdealFamily, IdealKind, RawTables, Subset};
use serde_json::{json, Value};

/// Writes one record per call, as a JSON line or as human text.
pub struct Out {
    json: bool,
}

impl Out {
    pub fn new(json: bool) -> Self {
        Out { json }
    }

    pub fn emit(&self, value: Value, human: impl FnOnce() -> String) {
        if self.json {
            println!("{value}");
        } else {
            println!("{}", human());
        }
    }
}

pub fn names(h: &Hemiring, s: Subset) -> Vec<&str> {
    s.iter().map(|x| h.element_name(x)).collect()
}

pub fn braces(h: &Hemiring, s: Subset) -> String {
    format!("{{{}}}", h.render(s))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn axioms_human(t: &RawTables, r: &AxiomReport) -> String {
    let mut lines = Vec::new();
    if r.valid {
        lines.push(format!("{}: hemiring of order {}", t.name, t.elements.len()));
        lines.push(format!("  commutative multiplication: {}", yes(r.commutative_mul)));
        let identity = r.identity.map_or("none", |i| t.elements[i].as_str());
        lines.push(format!("  identity: {identity}"));
    } else {
        lines.push(format!("{}: NOT a hemiring ({} failing instance(s))", t.name, r.violations.len()));
        for v in &r.violations {
            let at: Vec<&str> = v.witness.iter().map(|&i| t.elements[i].as_str()).collect();
            lines.push(format!("  {} at ({}): {}", v.axiom.name(), at.join(", "), v.axiom.describe(t, &v.witness)));
        }
    }
    lines.join("\n")
}

pub fn family_json(h: &Hemiring, f: &IdealFamily) -> Value {
    json!({
        "structure": h.name(),
        "kind": f.kind.name(),
        "complete": f.complete,
        "count": f.len(),
        "ideals": f.members.iter().map(|&s| names(h, s)).collect::<Vec<_>>(),
    })
}

pub fn family_human(h: &Hemiring, f: &IdealFamily) -> String {
    let mut lines = vec![format!(
        "{} {} ideal(s) of {}{}",
        f.len(),
        f.kind.name(),
        h.name(),
        if f.complete { "" } else { " (incomplete)" }
    )];
    lines.extend(f.members.iter().map(|&s| format!("  {}", braces(h, s))));
    lines.join("\n")
}

fn class_witness_json(h: &Hemiring, w: &ClassWitness) -> Value {
    let e = |x: usize| h.element_name(x);
    match *w {
        ClassWitness::NotProper => json!({ "reason": "not-proper" }),
        ClassWitness::Pair { a, b } => json!({ "reason": "pair", "a": names(h, a), "b": names(h, b) }),
        ClassWitness::Single { b } => json!({ "reason": "single", "b": names(h, b) }),
        ClassWitness::Elements { a, b } => json!({ "reason": "elements", "a": e(a), "b": e(b) }),
        ClassWitness::Missing { x } => json!({ "reason": "missing", "x": e(x) }),
    }
}

fn class_witness_human(h: &Hemiring, w: &ClassWitness) -> String {
    let e = |x: usize| h.element_name(x);
    match *w {
        ClassWitness::NotProper => "the ideal is the whole carrier".into(),
        ClassWitness::Pair { a, b } => format!("A = {}, B = {}", braces(h, a), braces(h, b)),
        ClassWitness::Single { b } => format!("B = {}", braces(h, b)),
        ClassWitness::Elements { a, b } => format!("a = {}, b = {}", e(a), e(b)),
        ClassWitness::Missing { x } => format!("{} lies outside hcl(PP)", e(x)),
    }
}

fn class_rows(c: &Classification) -> [(&'static str, bool, Option<&ClassWitness>); 6] {
    [
        ("prime", c.is_prime, c.prime_witness.as_ref()),
        ("prime (element test)", c.is_prime_elementwise, c.prime_elementwise_witness.as_ref()),
        ("semiprime", c.is_semiprime, c.semiprime_witness.as_ref()),
        ("semiprime (element test)", c.is_semiprime_elementwise, c.semiprime_elementwise_witness.as_ref()),
        ("irreducible", c.is_irreducible, c.irreducible_witness.as_ref()),
        ("h-idempotent", c.is_h_idempotent, c.idempotent_witness.as_ref()),
    ]
}

pub fn classification_json(h: &Hemiring, p: Subset, c: &Classification) -> Value {
    let mut v = json!({ "structure": h.name(), "ideal": names(h, p), "proper": c.is_proper });
    for (label, holds, witness) in class_rows(c) {
        let key = label.replace(" (element test)", "_elementwise").replace('-', "_");
        v[key] = json!({ "holds": holds, "witness": witness.map(|w| class_witness_json(h, w)) });
    }
    v["disagreements"] = json!(c.disagreements());
    v
}

pub fn classification_human(h: &Hemiring, p: Subset, c: &Classification) -> String {
    let mut lines = vec![format!("{} in {}", braces(h, p), h.name()), format!("  proper: {}", yes(c.is_proper))];
    for (label, holds, witness) in class_rows(c) {
        let why = witness.map(|w| format!("  [{}]", class_witness_human(h, w))).unwrap_or_default();
        lines.push(format!("  {label}: {}{why}", yes(holds)));
    }
    let d = c.disagreements();
    if !d.is_empty() {
        lines.push(format!("  WARNING: definitions disagree on {}", d.join(", ")));
    }
    lines.join("\n")
}

pub fn fuzzy_family_json(h: &Hemiring, kind: IdealKind, f: &FuzzyFamily) -> Value {
    json!({
        "structure": h.name(),
        "kind": kind.name(),
        "denominator": f.den,
        "count": f.len(),
        "non_constant": f.non_constant().count(),
        "ideals": f.members().iter().map(|m| m.to_named(h)).collect::<Vec<_>>(),
    })
}

pub fn fuzzy_family_human(h: &Hemiring, kind: IdealKind, f: &FuzzyFamily) -> String {
    let mut lines = vec![format!(
        "{} fuzzy {} ideal(s) of {} on the grid 1/{} ({} non-constant)",
        f.len(),
        kind.name(),
        h.name(),
        f.den,
        f.non_constant().count()
    )];
    lines.extend(f.members().iter().map(|m| format!("  {}", m.render(h))));
    lines.join("\n")
}

fn fuzzy_witness_json(h: &Hemiring, w: &FuzzyWitness) -> Value {
    let e = |x: usize| h.element_name(x);
    match w {
        FuzzyWitness::Threshold { t, a, b } => {
            json!({ "reason": "threshold", "t": t.to_string(), "a": e(*a), "b": e(*b) })
        }
        FuzzyWitness::Level { t, witness } => {
            json!({ "reason": "level", "t": t.to_string(), "witness": class_witness_json(h, witness) })
        }
        FuzzyWitness::Pair { lambda, mu } => {
            json!({ "reason": "pair", "lambda": lambda.to_named(h), "mu": mu.to_named(h) })
        }
        FuzzyWitness::Single { lambda } => json!({ "reason": "single", "lambda": lambda.to_named(h) }),
        FuzzyWitness::Point { x } => json!({ "reason": "point", "x": e(*x) }),
        FuzzyWitness::Identity { a, b } => json!({ "reason": "identity", "a": e(*a), "b": e(*b) }),
    }
}

fn fuzzy_witness_human(h: &Hemiring, w: &FuzzyWitness) -> String {
    let e = |x: usize| h.element_name(x);
    match w {
        FuzzyWitness::Threshold { t, a, b } => format!("t = {t}, a = {}, b = {}", e(*a), e(*b)),
        FuzzyWitness::Level { t, witness } => format!("level {t}: {}", class_witness_human(h, witness)),
        FuzzyWitness::Pair { lambda, mu } => format!("λ = ({}), μ = ({})", lambda.render(h), mu.render(h)),
        FuzzyWitness::Single { lambda } => format!("λ = ({})", lambda.render(h)),
        FuzzyWitness::Point { x } => format!("x = {}", e(*x)),
        FuzzyWitness::Identity { a, b } => format!("a = {}, b = {}", e(*a), e(*b)),
    }
}

type Row<'a> = (&'static str, bool, Option<&'a FuzzyWitness>, bool);

fn fuzzy_rows(c: &FuzzyClassification) -> Vec<Row<'_>> {
    fn grid(v: &GridVerdict) -> (bool, Option<&FuzzyWitness>) {
        (v.holds, v.witness.as_ref())
    }
    let (hp, hpw) = grid(&c.h_prime);
    let (hs, hsw) = grid(&c.h_semiprime);
    let (ir, irw) = grid(&c.irreducible);
    vec![
        ("prime", c.prime, c.prime_witness.as_ref(), false),
        ("prime_levels", c.prime_levels, c.prime_levels_witness.as_ref(), false),
        ("semiprime", c.semiprime, c.semiprime_witness.as_ref(), false),
        ("semiprime_levels", c.semiprime_levels, c.semiprime_levels_witness.as_ref(), false),
        ("h_prime", hp, hpw, true),
        ("h_semiprime", hs, hsw, true),
        ("irreducible", ir, irw, true),
        ("idempotent", c.idempotent, c.idempotent_witness.as_ref(), false),
    ]
}

pub fn fuzzy_class_json(h: &Hemiring, d: &FuzzySubset, c: &FuzzyClassification) -> Value {
    let mut v = json!({ "structure": h.name(), "delta": d.to_named(h) });
    for (key, holds, witness, grid_relative) in fuzzy_rows(c) {
        let mut cell = json!({ "holds": holds, "witness": witness.map(|w| fuzzy_witness_json(h, w)) });
        if grid_relative {
            cell["grid_relative"] = json!(true);
        }
        v[key] = cell;
    }
    v["product_form"] = json!(c.product_form);
    v["square_form"] = json!(c.square_form);
    v["disagreements"] = json!(c.disagreements());
    v
}

pub fn fuzzy_class_human(h: &Hemiring, d: &FuzzySubset, c: &FuzzyClassification) -> String {
    let mut lines = vec![format!("δ = ({})", d.render(h))];
    for (key, holds, witness, grid_relative) in fuzzy_rows(c) {
        let verdict = match (holds, grid_relative) {
            (true, true) => "yes (grid-relative)",
            (b, _) => yes(b),
        };
        let why = witness.map(|w| format!("  [{}]", fuzzy_witness_human(h, w))).unwrap_or_default();
        lines.push(format!("  {}: {verdict}{why}", key.replace('_', " ")));
    }
    let d = c.disagreements();
    if !d.is_empty() {
        lines.push(format!("  WARNING: definitions disagree on {}", d.join(", ")));
    }
    lines.join("\n")
}

pub fn report_human(r: &TheoremReport) -> String {
    let tag = match r.status {
        Status::Fails => "FAILS",
        s => s.name(),
    };
    let mut line = format!("{:<8}{:<9}{}", tag, r.statement, r.structure);
    if r.quarantined {
        line += " [quarantined]";
    }
    if let Some(reason) = &r.reason {
        line += &format!(": {reason}");
    }
    if r.status == Status::Fails {
        if let Some(w) = &r.witness_json {
            line += &format!("\n        witness: {w}");
        }
    }
    line
}

pub fn summary_human(s: &Summary) -> String {
    let mut lines = vec![format!(
        "holds {}, fails {}, vacuous {}, errors {}, quarantined {}",
        s.holds, s.fails, s.vacuous, s.errors, s.quarantined
    )];
    for (structure, ideal) in &s.semiprime_not_prime {
        lines.push(format!("  semiprime but not prime: {{{ideal}}} in {structure}"));
    }
    lines.join("\n")
}
