//! Finite hemirings given by Cayley tables.
//!
//! A hemiring is a set with a commutative, associative addition whose
//! identity `0` is multiplicatively absorbing, an associative multiplication,
//! and both distributive laws. Element index 0 is always the zero.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::{Subset, MAX_ORDER};

/// Unvalidated table data: element names plus index-valued Cayley tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawTables {
    pub name: String,
    pub elements: Vec<String>,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
}

/// On-disk representation: tables are written with element names.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HemiringFile {
    pub name: String,
    pub elements: Vec<String>,
    pub add: Vec<Vec<String>>,
    pub mul: Vec<Vec<String>>,
}

impl RawTables {
    /// Checks shape, index ranges and name uniqueness.
    pub fn check_shape(&self) -> Result<()> {
        let n = self.elements.len();
        if n == 0 {
            return Err(Error::Input("carrier must be non-empty".into()));
        }
        if n > MAX_ORDER {
            return Err(Error::Input(format!("order {n} exceeds the maximum of {MAX_ORDER}")));
        }
        for (i, name) in self.elements.iter().enumerate() {
            if name.is_empty() || name.contains(',') || name.trim() != name {
                return Err(Error::Input(format!("invalid element name {name:?}")));
            }
            if self.elements[..i].contains(name) {
                return Err(Error::Input(format!("duplicate element name {name:?}")));
            }
        }
        for (label, table) in [("add", &self.add), ("mul", &self.mul)] {
            if table.len() != n || table.iter().any(|row| row.len() != n) {
                return Err(Error::Input(format!("{label} table is not {n}x{n}")));
            }
            if let Some(v) = table.iter().flatten().find(|&&v| v >= n) {
                return Err(Error::Input(format!("{label} table entry {v} out of range")));
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    fn a(&self, x: usize, y: usize) -> usize {
        self.add[x][y]
    }

    #[inline]
    fn m(&self, x: usize, y: usize) -> usize {
        self.mul[x][y]
    }

    pub fn from_file(file: &HemiringFile) -> Result<Self> {
        let index = |s: &str| {
            file.elements
                .iter()
                .position(|e| e == s)
                .ok_or_else(|| Error::Input(format!("unknown element {s:?} in table")))
        };
        let convert = |t: &Vec<Vec<String>>| -> Result<Vec<Vec<usize>>> {
            t.iter().map(|row| row.iter().map(|s| index(s)).collect()).collect()
        };
        let raw = RawTables {
            name: file.name.clone(),
            elements: file.elements.clone(),
            add: convert(&file.add)?,
            mul: convert(&file.mul)?,
        };
        raw.check_shape()?;
        Ok(raw)
    }

    pub fn to_file(&self) -> HemiringFile {
        let named = |t: &Vec<Vec<usize>>| {
            t.iter()
                .map(|row| row.iter().map(|&v| self.elements[v].clone()).collect())
                .collect()
        };
        HemiringFile {
            name: self.name.clone(),
            elements: self.elements.clone(),
            add: named(&self.add),
            mul: named(&self.mul),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: HemiringFile = serde_json::from_str(text)?;
        Self::from_file(&file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("hemiring file serializes")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

/// The axiom classes checked by [`verify_axioms`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    AdditiveIdentity,
    AdditiveCommutativity,
    AdditiveAssociativity,
    ZeroAbsorbing,
    MultiplicativeAssociativity,
    LeftDistributivity,
    RightDistributivity,
}

impl Axiom {
    pub const ALL: [Axiom; 7] = [
        Axiom::AdditiveIdentity,
        Axiom::AdditiveCommutativity,
        Axiom::AdditiveAssociativity,
        Axiom::ZeroAbsorbing,
        Axiom::MultiplicativeAssociativity,
        Axiom::LeftDistributivity,
        Axiom::RightDistributivity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::AdditiveIdentity => "additive-identity",
            Axiom::AdditiveCommutativity => "additive-commutativity",
            Axiom::AdditiveAssociativity => "additive-associativity",
            Axiom::ZeroAbsorbing => "zero-absorbing",
            Axiom::MultiplicativeAssociativity => "multiplicative-associativity",
            Axiom::LeftDistributivity => "left-distributivity",
            Axiom::RightDistributivity => "right-distributivity",
        }
    }

    fn arity(self) -> usize {
        match self {
            Axiom::AdditiveIdentity | Axiom::ZeroAbsorbing => 1,
            Axiom::AdditiveCommutativity => 2,
            _ => 3,
        }
    }

    /// Evaluates one instance of the axiom; `true` means it holds there.
    pub fn holds_at(self, t: &RawTables, w: &[usize]) -> bool {
        match self {
            Axiom::AdditiveIdentity => t.a(w[0], 0) == w[0] && t.a(0, w[0]) == w[0],
            Axiom::AdditiveCommutativity => t.a(w[0], w[1]) == t.a(w[1], w[0]),
            Axiom::AdditiveAssociativity => {
                t.a(t.a(w[0], w[1]), w[2]) == t.a(w[0], t.a(w[1], w[2]))
            }
            Axiom::ZeroAbsorbing => t.m(w[0], 0) == 0 && t.m(0, w[0]) == 0,
            Axiom::MultiplicativeAssociativity => {
                t.m(t.m(w[0], w[1]), w[2]) == t.m(w[0], t.m(w[1], w[2]))
            }
            Axiom::LeftDistributivity => {
                t.m(w[0], t.a(w[1], w[2])) == t.a(t.m(w[0], w[1]), t.m(w[0], w[2]))
            }
            Axiom::RightDistributivity => {
                t.m(t.a(w[1], w[2]), w[0]) == t.a(t.m(w[1], w[0]), t.m(w[2], w[0]))
            }
        }
    }

    /// Human-readable rendering of the failing instance, e.g.
    /// `b·(a+a) = b but b·a+b·a = a`.
    pub fn describe(self, t: &RawTables, w: &[usize]) -> String {
        let e = |i: usize| t.elements[i].as_str();
        match self {
            Axiom::AdditiveIdentity => format!(
                "{x}+0 = {} and 0+{x} = {}",
                e(t.a(w[0], 0)),
                e(t.a(0, w[0])),
                x = e(w[0])
            ),
            Axiom::AdditiveCommutativity => format!(
                "{x}+{y} = {} but {y}+{x} = {}",
                e(t.a(w[0], w[1])),
                e(t.a(w[1], w[0])),
                x = e(w[0]),
                y = e(w[1])
            ),
            Axiom::AdditiveAssociativity => format!(
                "({x}+{y})+{z} = {} but {x}+({y}+{z}) = {}",
                e(t.a(t.a(w[0], w[1]), w[2])),
                e(t.a(w[0], t.a(w[1], w[2]))),
                x = e(w[0]),
                y = e(w[1]),
                z = e(w[2])
            ),
            Axiom::ZeroAbsorbing => format!(
                "{x}·0 = {} and 0·{x} = {}",
                e(t.m(w[0], 0)),
                e(t.m(0, w[0])),
                x = e(w[0])
            ),
            Axiom::MultiplicativeAssociativity => format!(
                "({x}·{y})·{z} = {} but {x}·({y}·{z}) = {}",
                e(t.m(t.m(w[0], w[1]), w[2])),
                e(t.m(w[0], t.m(w[1], w[2]))),
                x = e(w[0]),
                y = e(w[1]),
                z = e(w[2])
            ),
            Axiom::LeftDistributivity => format!(
                "{x}·({y}+{z}) = {} but {x}·{y}+{x}·{z} = {}",
                e(t.m(w[0], t.a(w[1], w[2]))),
                e(t.a(t.m(w[0], w[1]), t.m(w[0], w[2]))),
                x = e(w[0]),
                y = e(w[1]),
                z = e(w[2])
            ),
            Axiom::RightDistributivity => format!(
                "({y}+{z})·{x} = {} but {y}·{x}+{z}·{x} = {}",
                e(t.m(t.a(w[1], w[2]), w[0])),
                e(t.a(t.m(w[1], w[0]), t.m(w[2], w[0]))),
                x = e(w[0]),
                y = e(w[1]),
                z = e(w[2])
            ),
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One failed axiom instance. For the distributive laws the witness is
/// `(x, y, z)` with the law read as `x·(y+z)` resp. `(y+z)·x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
}

impl Violation {
    /// Re-evaluates the witness against `tables`.
    pub fn reproduces(&self, tables: &RawTables) -> bool {
        !self.axiom.holds_at(tables, &self.witness)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
    pub commutative_mul: bool,
    pub identity: Option<usize>,
}

impl AxiomReport {
    pub fn first(&self, axiom: Axiom) -> Option<&Violation> {
        self.violations.iter().find(|v| v.axiom == axiom)
    }

    /// JSON rendering with element names.
    pub fn to_json(&self, tables: &RawTables) -> serde_json::Value {
        let e = |i: usize| tables.elements[i].clone();
        serde_json::json!({
            "structure": tables.name,
            "valid": self.valid,
            "commutative_mul": self.commutative_mul,
            "identity": self.identity.map(e),
            "violations": self.violations.iter().map(|v| serde_json::json!({
                "axiom": v.axiom.name(),
                "witness": v.witness.iter().map(|&i| e(i)).collect::<Vec<_>>(),
                "detail": v.axiom.describe(tables, &v.witness),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Checks every hemiring axiom over the tables.
///
/// With `exhaustive == false` only the first failing instance of each axiom
/// class is recorded; otherwise every failing instance is listed.
pub fn verify_axioms(tables: &RawTables, exhaustive: bool) -> Result<AxiomReport> {
    tables.check_shape()?;
    let n = tables.order();
    let mut violations = Vec::new();
    for axiom in Axiom::ALL {
        let mut w = vec![0usize; axiom.arity()];
        'scan: loop {
            if !axiom.holds_at(tables, &w) {
                violations.push(Violation { axiom, witness: w.clone() });
                if !exhaustive {
                    break 'scan;
                }
            }
            // odometer over n^arity
            let mut k = w.len();
            loop {
                if k == 0 {
                    break 'scan;
                }
                k -= 1;
                w[k] += 1;
                if w[k] < n {
                    break;
                }
                w[k] = 0;
            }
        }
    }
    let commutative_mul = (0..n).all(|x| (0..n).all(|y| tables.m(x, y) == tables.m(y, x)));
    let identity = (0..n).find(|&e| (0..n).all(|x| tables.m(e, x) == x && tables.m(x, e) == x));
    Ok(AxiomReport { valid: violations.is_empty(), violations, commutative_mul, identity })
}

/// An immutable finite hemiring. Element 0 is the zero.
///
/// A quarantined value wraps tables that fail the axioms; it supports
/// table-level computations and carries its [`AxiomReport`].
#[derive(Clone)]
pub struct Hemiring {
    tables: RawTables,
    n: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    identity: Option<usize>,
    commutative: bool,
    quarantine: Option<Box<AxiomReport>>,
    /// `h_pairs[a*n+b]` = `{x : x+a+y = b+y for some y}`.
    h_pairs: Vec<Subset>,
}

impl Hemiring {
    /// Validates the tables and builds the hemiring.
    pub fn new(tables: RawTables) -> Result<Self> {
        let report = verify_axioms(&tables, false)?;
        if !report.valid {
            return Err(Error::NotAHemiring(Box::new(report)));
        }
        Ok(Self::assemble(tables, report, false))
    }

    /// Builds a value even when the axioms fail; such a value is marked as
    /// quarantined and the marker propagates into every report.
    pub fn new_quarantined(tables: RawTables) -> Result<Self> {
        let report = verify_axioms(&tables, true)?;
        let quarantine = !report.valid;
        Ok(Self::assemble(tables, report, quarantine))
    }

    fn assemble(tables: RawTables, report: AxiomReport, quarantine: bool) -> Self {
        let n = tables.order();
        let flat = |t: &Vec<Vec<usize>>| t.iter().flatten().map(|&v| v as u8).collect::<Vec<_>>();
        let add = flat(&tables.add);
        let mul = flat(&tables.mul);
        let mut h_pairs = vec![Subset::empty(n); n * n];
        for x in 0..n {
            for y in 0..n {
                let xy_left = |a: usize| add[add[x * n + a] as usize * n + y] as usize;
                for a in 0..n {
                    let lhs = xy_left(a);
                    for b in 0..n {
                        if lhs == add[b * n + y] as usize {
                            h_pairs[a * n + b] = h_pairs[a * n + b].with(x);
                        }
                    }
                }
            }
        }
        Hemiring {
            n,
            add,
            mul,
            identity: report.identity,
            commutative: report.commutative_mul,
            quarantine: quarantine.then(|| Box::new(report)),
            h_pairs,
            tables,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::new(RawTables::from_json(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::new(RawTables::load(path)?)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn name(&self) -> &str {
        &self.tables.name
    }

    pub fn elements(&self) -> &[String] {
        &self.tables.elements
    }

    pub fn element_name(&self, x: usize) -> &str {
        &self.tables.elements[x]
    }

    pub fn element_index(&self, name: &str) -> Option<usize> {
        self.tables.elements.iter().position(|e| e == name)
    }

    pub fn tables(&self) -> &RawTables {
        &self.tables
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x * self.n + y] as usize
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.n + y] as usize
    }

    pub fn identity(&self) -> Option<usize> {
        self.identity
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn is_quarantined(&self) -> bool {
        self.quarantine.is_some()
    }

    /// The axiom report of a quarantined structure.
    pub fn quarantine_report(&self) -> Option<&AxiomReport> {
        self.quarantine.as_deref()
    }

    /// `{x : x+a+y = b+y for some y}`.
    #[inline]
    pub(crate) fn h_pair(&self, a: usize, b: usize) -> Subset {
        self.h_pairs[a * self.n + b]
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.n)
    }

    pub fn zero_set(&self) -> Subset {
        Subset::singleton(self.n, 0)
    }

    /// Parses comma-separated element names such as `0,a`.
    pub fn parse_subset(&self, text: &str) -> Result<Subset> {
        let mut s = Subset::empty(self.n);
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let x = self
                .element_index(part)
                .ok_or_else(|| Error::Input(format!("unknown element {part:?}")))?;
            s = s.with(x);
        }
        Ok(s)
    }

    pub fn render(&self, s: Subset) -> String {
        s.render(self.elements())
    }

    pub fn to_json(&self) -> String {
        self.tables.to_json()
    }

    /// Returns the same structure under a new name.
    pub fn renamed(&self, name: impl Into<String>) -> Self {
        let mut h = self.clone();
        h.tables.name = name.into();
        h
    }
}

impl PartialEq for Hemiring {
    fn eq(&self, other: &Self) -> bool {
        self.tables == other.tables && self.is_quarantined() == other.is_quarantined()
    }
}

impl Eq for Hemiring {}

impl fmt::Debug for Hemiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Hemiring")
            .field("name", &self.tables.name)
            .field("elements", &self.tables.elements)
            .field("add", &self.tables.add)
            .field("mul", &self.tables.mul)
            .field("identity", &self.identity)
            .field("quarantined", &self.is_quarantined())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn absorbing_is_commutative_with_identity() {
        let raw = fixtures::absorbing_tables();
        let report = verify_axioms(&raw, true).unwrap();
        assert!(report.valid, "{:?}", report.violations);
        assert!(report.commutative_mul);
        assert_eq!(report.identity, Some(2));
        let h = Hemiring::new(raw).unwrap();
        assert_eq!(h.order(), 3);
        assert_eq!(h.identity(), Some(2));
    }

    #[test]
    fn trivial_hemiring_is_valid() {
        let raw = fixtures::trivial().tables().clone();
        let report = verify_axioms(&raw, true).unwrap();
        assert!(report.valid);
        assert_eq!(report.identity, Some(0));
        assert_eq!(Hemiring::new(raw).unwrap().order(), 1);
    }

    #[test]
    fn nondistributive_fails_left_distributivity_at_b_a_a() {
        let raw = fixtures::nondistributive_tables();
        let report = verify_axioms(&raw, false).unwrap();
        assert!(!report.valid);
        let v = report.first(Axiom::LeftDistributivity).unwrap();
        // b·(a+a) = b·b = b, b·a+b·a = b+b = a
        assert_eq!(v.witness, vec![2, 1, 1]);
        assert!(v.reproduces(&raw));
        assert_eq!(
            Axiom::LeftDistributivity.describe(&raw, &v.witness),
            "b·(a+a) = b but b·a+b·a = a"
        );
        assert!(report.first(Axiom::RightDistributivity).is_some());
    }

    #[test]
    fn nondistributive_rejected_without_quarantine() {
        match Hemiring::new(fixtures::nondistributive_tables()) {
            Err(Error::NotAHemiring(report)) => {
                let v = report.first(Axiom::LeftDistributivity).unwrap();
                assert_eq!(v.witness, vec![2, 1, 1]);
            }
            other => panic!("expected rejection, got {other:?}"),
        }
        let q = Hemiring::new_quarantined(fixtures::nondistributive_tables()).unwrap();
        assert!(q.is_quarantined());
        assert!(q.quarantine_report().unwrap().violations.iter().all(|v| v.reproduces(q.tables())));
    }

    #[test]
    fn exhaustive_report_witnesses_all_reproduce() {
        let raw = fixtures::nondistributive_tables();
        let report = verify_axioms(&raw, true).unwrap();
        assert!(report.violations.len() > 2);
        assert!(report.violations.iter().all(|v| v.reproduces(&raw)));
    }

    #[test]
    fn malformed_tables_are_input_errors() {
        let mut raw = fixtures::absorbing_tables();
        raw.add[1].pop();
        assert!(matches!(verify_axioms(&raw, false), Err(Error::Input(_))));

        let mut raw = fixtures::absorbing_tables();
        raw.mul[2][2] = 3;
        assert!(matches!(verify_axioms(&raw, false), Err(Error::Input(_))));

        let mut raw = fixtures::absorbing_tables();
        raw.elements[2] = "a".into();
        assert!(matches!(verify_axioms(&raw, false), Err(Error::Input(_))));
    }

    #[test]
    fn file_parsing_is_strict() {
        let text = r#"{"name":"x","elements":["0"],"add":[["0"]],"mul":[["0"]],"extra":1}"#;
        assert!(RawTables::from_json(text).is_err());
        let text = r#"{"name":"x","elements":["0"],"add":[["q"]],"mul":[["0"]]}"#;
        assert!(matches!(RawTables::from_json(text), Err(Error::Input(_))));
    }

    #[test]
    fn json_round_trip() {
        let h = fixtures::absorbing();
        let back = Hemiring::from_json(&h.to_json()).unwrap();
        assert_eq!(back, h);
    }

    #[test]
    fn parse_subset_by_name() {
        let h = fixtures::absorbing();
        assert_eq!(h.parse_subset("0,a").unwrap(), Subset::from_elements(3, [0, 1]));
        assert_eq!(h.parse_subset(" 1 ").unwrap(), Subset::singleton(3, 2));
        assert!(h.parse_subset("0,z").is_err());
    }
}
