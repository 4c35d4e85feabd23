//! Built-in structures: the two worked examples and the small named
//! hemirings used throughout the tests.

use serde_json::{json, Value};

use crate::error::Result;
use crate::fuzzy::{FuzzySubset, Method};
use crate::hemiring::{verify_axioms, Hemiring, RawTables};
use crate::subsets::IdealKind;

fn raw(name: &str, elements: &[&str], add: &[&[usize]], mul: &[&[usize]]) -> RawTables {
    RawTables {
        name: name.into(),
        elements: elements.iter().map(|s| s.to_string()).collect(),
        add: add.iter().map(|r| r.to_vec()).collect(),
        mul: mul.iter().map(|r| r.to_vec()).collect(),
    }
}

/// `{0, a, 1}` with `a` absorbing for addition: commutative with identity `1`; its only h-ideal is the carrier.
pub fn absorbing_tables() -> RawTables {
    raw(
        "absorbing",
        &["0", "a", "1"],
        &[&[0, 1, 2], &[1, 1, 1], &[2, 1, 2]],
        &[&[0, 0, 0], &[0, 1, 1], &[0, 1, 2]],
    )
}

pub fn absorbing() -> Hemiring {
    Hemiring::new(absorbing_tables()).expect("the absorbing structure is a hemiring")
}

/// `{0, a, b, c}` exactly as printed. These tables violate both distributive
/// laws (`b·(a+a) = b` but `b·a+b·a = a`), so they only load quarantined.
pub fn nondistributive_tables() -> RawTables {
    raw(
        "nondistributive",
        &["0", "a", "b", "c"],
        &[&[0, 1, 2, 3], &[1, 2, 3, 1], &[2, 3, 1, 2], &[3, 1, 2, 3]],
        &[&[0, 0, 0, 0], &[0, 1, 2, 3], &[0, 2, 2, 3], &[0, 3, 2, 3]],
    )
}

pub fn nondistributive_quarantined() -> Hemiring {
    Hemiring::new_quarantined(nondistributive_tables()).expect("tables are well-formed")
}

/// The three fuzzy sets that accompany the non-distributive tables, on `(0, a, b, c)`.
pub fn nondistributive_fuzzy() -> [(&'static str, FuzzySubset); 3] {
    [
        ("lambda", FuzzySubset::new(20, vec![16, 8, 8, 16])),
        ("mu", FuzzySubset::new(20, vec![12, 10, 10, 12])),
        ("delta", FuzzySubset::new(20, vec![14, 9, 9, 14])),
    ]
}

/// The published value of `λ ⊙_h μ` for those sets.
pub fn nondistributive_claimed_product() -> FuzzySubset {
    FuzzySubset::new(20, vec![12, 8, 8, 12])
}

/// Record for the non-distributive tables: the axiom failures, the
/// published claims about the accompanying fuzzy sets, and what direct
/// computation over the printed tables gives instead.
pub fn nondistributive_annotation() -> Result<Value> {
    let h = nondistributive_quarantined();
    let report = verify_axioms(h.tables(), false)?;
    let [(_, lambda), (_, mu), (_, delta)] = nondistributive_fuzzy();
    let product = h.h_intrinsic_product(&lambda, &mu)?;
    let ideal = |f: &FuzzySubset| -> Result<Value> {
        Ok(match f.ideal_violation(&h, IdealKind::TwoSided, Method::Direct)? {
            None => json!({ "fuzzy_ideal": true }),
            Some(v) => json!({ "fuzzy_ideal": false, "violation": v.describe(&h, f) }),
        })
    };
    Ok(json!({
        "structure": h.name(),
        "status": "quarantined",
        "axioms": report.to_json(h.tables()),
        "claimed": {
            "status": "quarantined: stated for tables that are not a hemiring",
            "statements": [
                "every fuzzy h-ideal is idempotent",
                "lambda, mu and delta are idempotent fuzzy h-ideals",
                "lambda ⊙_h mu equals lambda ∧ mu",
                "delta is not h-prime",
            ],
            "lambda ⊙_h mu": nondistributive_claimed_product().to_named(&h),
        },
        "computed": {
            "lambda": ideal(&lambda)?,
            "mu": ideal(&mu)?,
            "delta": ideal(&delta)?,
            "lambda ⊙_h mu": product.to_named(&h),
            "lambda ∧ mu": lambda.meet(&mu)?.to_named(&h),
        },
    }))
}

/// The one-element hemiring.
pub fn trivial() -> Hemiring {
    Hemiring::new(raw("trivial", &["0"], &[&[0]], &[&[0]])).expect("trivial hemiring")
}

/// The field with two elements: `e+e = 0`, `e·e = e`.
pub fn z2_field() -> Hemiring {
    Hemiring::new(raw("z2-field", &["0", "e"], &[&[0, 1], &[1, 0]], &[&[0, 0], &[0, 1]]))
        .expect("Z2 is a hemiring")
}

/// `e+e = 0` with null multiplication.
pub fn z2_null() -> Hemiring {
    Hemiring::new(raw("z2-null", &["0", "e"], &[&[0, 1], &[1, 0]], &[&[0, 0], &[0, 0]]))
        .expect("null Z2 is a hemiring")
}

/// The two-element Boolean semiring: `e+e = e`, `e·e = e`.
pub fn boolean() -> Hemiring {
    Hemiring::new(raw("boolean", &["0", "e"], &[&[0, 1], &[1, 1]], &[&[0, 0], &[0, 1]]))
        .expect("Boolean semiring is a hemiring")
}

/// `e+e = e` with null multiplication.
pub fn boolean_null() -> Hemiring {
    Hemiring::new(raw("boolean-null", &["0", "e"], &[&[0, 1], &[1, 1]], &[&[0, 0], &[0, 0]]))
        .expect("null Boolean is a hemiring")
}

/// Every valid built-in structure.
pub fn all_valid() -> Vec<Hemiring> {
    vec![trivial(), z2_field(), z2_null(), boolean(), boolean_null(), absorbing()]
}
