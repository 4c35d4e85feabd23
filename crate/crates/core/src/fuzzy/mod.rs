//! Fuzzy subsets with exact membership degrees on a fixed rational grid.
//!
//! Every statement about fuzzy subsets in this crate is decided through
//! level sets `U(λ; t) = {x : λ(x) ≥ t}`: a property of `λ` holds iff it
//! holds for each non-empty level set, and the sup-of-min products reduce to
//! closures of the level sets.

mod classify;
mod family;
mod grid;
mod products;

pub use classify::{FuzzyClassification, FuzzyWitness, GridVerdict};
pub use family::FuzzyFamily;
pub use grid::GridValue;
pub use products::ProductOp;

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hemiring::Hemiring;
use crate::subset::Subset;
use crate::subsets::{IdealKind, IdealViolation};

/// A map from the carrier to `{0, 1/D, .., 1}`, stored as numerators over `D`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FuzzySubset {
    den: u32,
    values: Vec<u32>,
}

impl std::fmt::Debug for FuzzySubset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|&v| self.degree(v).to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl FuzzySubset {
    /// Panics if a numerator exceeds `den` or `den` is zero.
    pub fn new(den: u32, values: Vec<u32>) -> Self {
        assert!(den > 0, "grid denominator must be positive");
        assert!(values.iter().all(|&v| v <= den), "membership above 1");
        FuzzySubset { den, values }
    }

    pub fn try_new(den: u32, values: Vec<u32>) -> Result<Self> {
        if den == 0 || values.iter().any(|&v| v > den) {
            return Err(Error::Input("membership values must lie in [0, 1]".into()));
        }
        Ok(FuzzySubset { den, values })
    }

    pub fn constant(order: usize, value: GridValue) -> Self {
        FuzzySubset { den: value.den(), values: vec![value.num(); order] }
    }

    /// `χ_A`: 1 on `A`, 0 elsewhere.
    pub fn characteristic(a: Subset, den: u32) -> Self {
        two_valued_indicator_raw(a, den, den, 0)
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    pub fn denominator(&self) -> u32 {
        self.den
    }

    /// Numerators over the grid denominator.
    pub fn numerators(&self) -> &[u32] {
        &self.values
    }

    pub fn value(&self, x: usize) -> GridValue {
        GridValue::raw(self.values[x], self.den)
    }

    #[inline]
    pub(crate) fn num(&self, x: usize) -> u32 {
        self.values[x]
    }

    fn degree(&self, v: u32) -> GridValue {
        GridValue::raw(v, self.den)
    }

    /// Distinct values, in decreasing order.
    pub fn image(&self) -> Vec<GridValue> {
        self.image_nums().into_iter().map(|v| self.degree(v)).collect()
    }

    pub(crate) fn image_nums(&self) -> Vec<u32> {
        let mut img = self.values.clone();
        img.sort_unstable_by(|a, b| b.cmp(a));
        img.dedup();
        img
    }

    pub fn is_constant(&self) -> bool {
        self.values.windows(2).all(|w| w[0] == w[1])
    }

    /// `U(λ; t) = {x : λ(x) ≥ t}`.
    pub fn level_set(&self, t: GridValue) -> Subset {
        Subset::from_elements(
            self.order(),
            (0..self.order()).filter(|&x| self.value(x) >= t),
        )
    }

    pub(crate) fn level_set_num(&self, t: u32) -> Subset {
        Subset::from_elements(self.order(), (0..self.order()).filter(|&x| self.values[x] >= t))
    }

    fn check_pair(&self, other: &FuzzySubset) -> Result<()> {
        if self.order() != other.order() || self.den != other.den {
            return Err(Error::ParentMismatch(format!(
                "fuzzy subsets over ({} elements, grid {}) and ({} elements, grid {})",
                self.order(),
                self.den,
                other.order(),
                other.den
            )));
        }
        Ok(())
    }

    /// Pointwise minimum.
    pub fn meet(&self, other: &FuzzySubset) -> Result<FuzzySubset> {
        self.check_pair(other)?;
        Ok(self.meet_raw(other))
    }

    pub(crate) fn meet_raw(&self, other: &FuzzySubset) -> FuzzySubset {
        let values = self.values.iter().zip(&other.values).map(|(a, b)| *a.min(b)).collect();
        FuzzySubset { den: self.den, values }
    }

    /// Pointwise maximum.
    pub fn join(&self, other: &FuzzySubset) -> Result<FuzzySubset> {
        self.check_pair(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| *a.max(b)).collect();
        Ok(FuzzySubset { den: self.den, values })
    }

    /// Pointwise `≤`.
    pub fn leq(&self, other: &FuzzySubset) -> Result<bool> {
        self.check_pair(other)?;
        Ok(self.leq_raw(other))
    }

    pub(crate) fn leq_raw(&self, other: &FuzzySubset) -> bool {
        self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    /// The same function on a finer grid `den` (a multiple of the current one).
    pub fn regrid(&self, den: u32) -> Result<FuzzySubset> {
        if !den.is_multiple_of(self.den) {
            return Err(Error::Input(format!("grid {den} is not a refinement of {}", self.den)));
        }
        let k = den / self.den;
        Ok(FuzzySubset { den, values: self.values.iter().map(|v| v * k).collect() })
    }

    pub fn level_chain(&self) -> LevelChain {
        LevelChain {
            order: self.order(),
            levels: self
                .image_nums()
                .into_iter()
                .map(|t| (self.degree(t), self.level_set_num(t)))
                .collect(),
        }
    }

    /// First violated inequality of the fuzzy ideal notion, if any.
    pub fn ideal_violation(
        &self,
        h: &Hemiring,
        kind: IdealKind,
        method: Method,
    ) -> Result<Option<FuzzyViolation>> {
        self.check_parent(h)?;
        Ok(match method {
            Method::Direct => self.direct_violation(h, kind),
            Method::Levels => self.level_violation(h, kind),
        })
    }

    pub fn is_fuzzy_ideal(&self, h: &Hemiring, kind: IdealKind, method: Method) -> Result<bool> {
        Ok(self.ideal_violation(h, kind, method)?.is_none())
    }

    pub(crate) fn check_parent(&self, h: &Hemiring) -> Result<()> {
        if self.order() != h.order() {
            return Err(Error::ParentMismatch(format!(
                "fuzzy subset over {} elements used with `{}` of order {}",
                self.order(),
                h.name(),
                h.order()
            )));
        }
        Ok(())
    }

    fn direct_violation(&self, h: &Hemiring, kind: IdealKind) -> Option<FuzzyViolation> {
        let n = h.order();
        let v = |x: usize| self.values[x];
        for a in 0..n {
            for b in 0..n {
                if v(h.add(a, b)) < v(a).min(v(b)) {
                    return Some(FuzzyViolation::Additive { a, b });
                }
            }
        }
        if kind.left_closed() {
            for r in 0..n {
                for a in 0..n {
                    if v(h.mul(r, a)) < v(a) {
                        return Some(FuzzyViolation::Left { r, a });
                    }
                }
            }
        }
        if kind.right_closed() {
            for a in 0..n {
                for r in 0..n {
                    if v(h.mul(a, r)) < v(a) {
                        return Some(FuzzyViolation::Right { a, r });
                    }
                }
            }
        }
        if kind.k_closed() {
            for x in 0..n {
                for y in 0..n {
                    let z = h.add(x, y);
                    if v(x) < v(y).min(v(z)) {
                        return Some(FuzzyViolation::K { x, y, z });
                    }
                }
            }
        }
        if kind.h_closed() {
            for x in 0..n {
                for a in 0..n {
                    for b in 0..n {
                        if v(x) >= v(a).min(v(b)) {
                            continue;
                        }
                        let lhs = h.add(x, a);
                        if let Some(y) = (0..n).find(|&y| h.add(lhs, y) == h.add(b, y)) {
                            return Some(FuzzyViolation::H { x, a, b, y });
                        }
                    }
                }
            }
        }
        None
    }

    fn level_violation(&self, h: &Hemiring, kind: IdealKind) -> Option<FuzzyViolation> {
        self.image_nums().into_iter().find_map(|t| {
            let u = self.level_set_num(t);
            h.ideal_violation_raw(u, kind)
                .map(|violation| FuzzyViolation::Level { t: self.degree(t), violation })
        })
    }

    /// Renders as `{"0": "4/5", ...}` keyed by element names.
    pub fn to_named(&self, h: &Hemiring) -> BTreeMap<String, String> {
        (0..self.order())
            .map(|x| (h.element_name(x).to_string(), self.value(x).to_string()))
            .collect()
    }

    /// Compact rendering `0:4/5 a:2/5 ...` in element order.
    pub fn render(&self, h: &Hemiring) -> String {
        (0..self.order())
            .map(|x| format!("{}:{}", h.element_name(x), self.value(x)))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn to_file(&self, h: &Hemiring) -> FuzzyFile {
        FuzzyFile { hemiring: h.name().to_string(), values: self.to_named(h) }
    }

    /// Reads a fuzzy subset file for `h` on the grid `den`.
    pub fn from_file(file: &FuzzyFile, h: &Hemiring, den: u32) -> Result<Self> {
        if file.hemiring != h.name() {
            return Err(Error::ParentMismatch(format!(
                "fuzzy subset is defined over `{}`, not `{}`",
                file.hemiring,
                h.name()
            )));
        }
        let mut values = vec![None; h.order()];
        for (name, text) in &file.values {
            let x = h
                .element_index(name)
                .ok_or_else(|| Error::Input(format!("unknown element {name:?}")))?;
            values[x] = Some(GridValue::parse(text, den)?.num());
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(x, v)| {
                v.ok_or_else(|| {
                    Error::Input(format!("missing value for element {:?}", h.element_name(x)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FuzzySubset { den, values })
    }

    pub fn from_json(text: &str, h: &Hemiring, den: u32) -> Result<Self> {
        Self::from_file(&serde_json::from_str(text)?, h, den)
    }

    pub fn load(path: impl AsRef<Path>, h: &Hemiring, den: u32) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?, h, den)
    }
}

/// On-disk representation of a fuzzy subset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FuzzyFile {
    pub hemiring: String,
    pub values: BTreeMap<String, String>,
}

/// How a fuzzy ideal predicate is decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Quantified inequalities over the tables.
    Direct,
    /// Each non-empty level set checked with the crisp predicate.
    Levels,
}

/// A failed inequality; element indices throughout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "kebab-case")]
pub enum FuzzyViolation {
    /// `λ(a+b) < λ(a) ∧ λ(b)`.
    Additive { a: usize, b: usize },
    /// `λ(r·a) < λ(a)`.
    Left { r: usize, a: usize },
    /// `λ(a·r) < λ(a)`.
    Right { a: usize, r: usize },
    /// `x + y = z` but `λ(x) < λ(y) ∧ λ(z)`.
    K { x: usize, y: usize, z: usize },
    /// `x + a + y = b + y` but `λ(x) < λ(a) ∧ λ(b)`.
    H { x: usize, a: usize, b: usize, y: usize },
    /// The level set at `t` fails the crisp predicate.
    Level { t: GridValue, violation: IdealViolation },
}

impl Serialize for GridValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Serialize for FuzzySubset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq((0..self.order()).map(|x| self.value(x)))
    }
}

impl FuzzyViolation {
    /// Re-evaluates the witness against `λ`.
    pub fn reproduces(&self, h: &Hemiring, lambda: &FuzzySubset) -> bool {
        let v = |x: usize| lambda.num(x);
        match *self {
            FuzzyViolation::Additive { a, b } => v(h.add(a, b)) < v(a).min(v(b)),
            FuzzyViolation::Left { r, a } => v(h.mul(r, a)) < v(a),
            FuzzyViolation::Right { a, r } => v(h.mul(a, r)) < v(a),
            FuzzyViolation::K { x, y, z } => h.add(x, y) == z && v(x) < v(y).min(v(z)),
            FuzzyViolation::H { x, a, b, y } => {
                h.add(h.add(x, a), y) == h.add(b, y) && v(x) < v(a).min(v(b))
            }
            FuzzyViolation::Level { t, violation } => violation.reproduces(h, lambda.level_set(t)),
        }
    }

    pub fn describe(&self, h: &Hemiring, lambda: &FuzzySubset) -> String {
        let e = |x: usize| h.element_name(x);
        let v = |x: usize| lambda.value(x);
        match *self {
            FuzzyViolation::Additive { a, b } => format!(
                "λ({}+{}) = λ({}) = {} < {} ∧ {}",
                e(a),
                e(b),
                e(h.add(a, b)),
                v(h.add(a, b)),
                v(a),
                v(b)
            ),
            FuzzyViolation::Left { r, a } => format!(
                "λ({}·{}) = λ({}) = {} < λ({}) = {}",
                e(r),
                e(a),
                e(h.mul(r, a)),
                v(h.mul(r, a)),
                e(a),
                v(a)
            ),
            FuzzyViolation::Right { a, r } => format!(
                "λ({}·{}) = λ({}) = {} < λ({}) = {}",
                e(a),
                e(r),
                e(h.mul(a, r)),
                v(h.mul(a, r)),
                e(a),
                v(a)
            ),
            FuzzyViolation::K { x, y, z } => format!(
                "{}+{} = {} but λ({}) = {} < {} ∧ {}",
                e(x),
                e(y),
                e(z),
                e(x),
                v(x),
                v(y),
                v(z)
            ),
            FuzzyViolation::H { x, a, b, y } => format!(
                "{x}+{a}+{y} = {b}+{y} but λ({x}) = {vx} < {va} ∧ {vb}",
                x = e(x),
                a = e(a),
                b = e(b),
                y = e(y),
                vx = v(x),
                va = v(a),
                vb = v(b),
            ),
            FuzzyViolation::Level { t, violation } => {
                format!("level set at {t}: {}", violation.describe(h))
            }
        }
    }
}

/// `λ_A(x) = t` on `A` and `s` elsewhere; requires `s < t`.
pub fn two_valued_indicator(a: Subset, t: GridValue, s: GridValue) -> Result<FuzzySubset> {
    if t.den() != s.den() {
        return Err(Error::ParentMismatch("t and s lie on different grids".into()));
    }
    if s >= t {
        return Err(Error::Domain(format!("two-valued indicator needs s < t, got s={s}, t={t}")));
    }
    Ok(two_valued_indicator_raw(a, t.den(), t.num(), s.num()))
}

pub(crate) fn two_valued_indicator_raw(a: Subset, den: u32, t: u32, s: u32) -> FuzzySubset {
    FuzzySubset {
        den,
        values: (0..a.order()).map(|x| if a.contains(x) { t } else { s }).collect(),
    }
}

/// Strictly decreasing thresholds with their (increasing, nested) level sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelChain {
    order: usize,
    levels: Vec<(GridValue, Subset)>,
}

impl LevelChain {
    /// Validates monotonicity and nesting.
    pub fn new(order: usize, levels: Vec<(GridValue, Subset)>) -> Result<Self> {
        for w in levels.windows(2) {
            let ((t1, u1), (t2, u2)) = (w[0], w[1]);
            if t1 <= t2 || t1.den() != t2.den() {
                return Err(Error::Domain("thresholds must strictly decrease on one grid".into()));
            }
            if !u1.is_subset_of(u2) || u1 == u2 {
                return Err(Error::Domain("level sets must strictly increase".into()));
            }
        }
        if levels.iter().any(|(_, u)| u.order() != order || u.is_empty()) {
            return Err(Error::Domain("level sets must be non-empty subsets of the carrier".into()));
        }
        Ok(LevelChain { order, levels })
    }

    pub fn levels(&self) -> &[(GridValue, Subset)] {
        &self.levels
    }

    /// The unique fuzzy subset with these level sets; uncovered elements get 0.
    pub fn to_fuzzy(&self, den: u32) -> FuzzySubset {
        let mut values = vec![0; self.order];
        for &(t, u) in self.levels.iter().rev() {
            for x in u {
                values[x] = t.on_grid(den).expect("threshold on grid").num();
            }
        }
        FuzzySubset { den, values }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn g(num: u32, den: u32) -> GridValue {
        GridValue::new(num, den).unwrap()
    }

    #[test]
    fn level_set_examples() {
        let [(_, lambda), _, _] = fixtures::nondistributive_fuzzy();
        // λ(0) = λ(c) = 0.8, λ(a) = λ(b) = 0.4
        assert_eq!(lambda.level_set(g(12, 20)), Subset::from_elements(4, [0, 3]));
        assert_eq!(lambda.level_set(GridValue::zero(20)), Subset::full(4));
        let a = Subset::from_elements(3, [0, 1]);
        let ind = two_valued_indicator(a, g(9, 10), g(1, 10)).unwrap();
        assert_eq!(ind.level_set(g(9, 10)), a);
    }

    #[test]
    fn two_valued_indicator_requires_s_below_t() {
        let a = Subset::full(2);
        assert!(matches!(two_valued_indicator(a, g(1, 2), g(1, 2)), Err(Error::Domain(_))));
        let c = two_valued_indicator(a, g(3, 4), g(0, 4)).unwrap();
        assert!(c.is_constant());
        assert_eq!(c.value(0), g(3, 4));
    }

    #[test]
    fn pointwise_operations() {
        let [(_, lambda), (_, mu), _] = fixtures::nondistributive_fuzzy();
        let m = lambda.meet(&mu).unwrap();
        assert_eq!(m.numerators(), &[12, 8, 8, 12]);
        assert_eq!(lambda.meet(&lambda).unwrap(), lambda);
        assert!(m.leq(&lambda).unwrap() && m.leq(&mu).unwrap());
        assert_eq!(lambda.join(&mu).unwrap().numerators(), &[16, 10, 10, 16]);
        let other = FuzzySubset::new(10, vec![1, 1, 1, 1]);
        assert!(matches!(lambda.meet(&other), Err(Error::ParentMismatch(_))));
    }

    #[test]
    fn indicator_meet_is_indicator_of_intersection() {
        let (t, s) = (g(3, 4), g(1, 4));
        for a in Subset::all_nonempty(3) {
            for b in Subset::all_nonempty(3) {
                let la = two_valued_indicator(a, t, s).unwrap();
                let lb = two_valued_indicator(b, t, s).unwrap();
                let lab = two_valued_indicator(a.intersection(b), t, s).unwrap();
                assert_eq!(la.meet(&lb).unwrap(), lab);
                assert_eq!(la.leq(&lb).unwrap(), a.is_subset_of(b));
            }
        }
    }

    #[test]
    fn fuzzy_h_ideal_examples() {
        let h = fixtures::absorbing();
        let c = FuzzySubset::constant(3, g(7, 10));
        for m in [Method::Direct, Method::Levels] {
            assert!(c.is_fuzzy_ideal(&h, IdealKind::H, m).unwrap());
        }
        let lambda = FuzzySubset::new(2, vec![2, 1, 1]);
        let w = lambda.ideal_violation(&h, IdealKind::H, Method::Direct).unwrap().unwrap();
        assert!(w.reproduces(&h, &lambda));
        // 1+0+1 = 0+1 forces λ(1) ≥ λ(0)
        assert!(FuzzyViolation::H { x: 2, a: 0, b: 0, y: 2 }.reproduces(&h, &lambda));
        assert!(!lambda.is_fuzzy_ideal(&h, IdealKind::H, Method::Levels).unwrap());

        // χ_{0,a} fails because {0,a} is not an h-ideal
        let chi = FuzzySubset::characteristic(h.parse_subset("0,a").unwrap(), 1);
        assert!(chi.is_fuzzy_ideal(&h, IdealKind::TwoSided, Method::Direct).unwrap());
        assert!(!chi.is_fuzzy_ideal(&h, IdealKind::H, Method::Direct).unwrap());
    }

    #[test]
    fn nondistributive_lambda_is_not_even_an_ideal() {
        let h = fixtures::nondistributive_quarantined();
        let [(_, lambda), _, _] = fixtures::nondistributive_fuzzy();
        let w = lambda
            .ideal_violation(&h, IdealKind::TwoSided, Method::Direct)
            .unwrap()
            .unwrap();
        // λ(c·b) = λ(b) = 0.4 < λ(c) = 0.8
        assert_eq!(w, FuzzyViolation::Right { a: 3, r: 2 });
        assert!(w.reproduces(&h, &lambda));
        assert_eq!(w.describe(&h, &lambda), "λ(c·b) = λ(b) = 2/5 < λ(c) = 4/5");
    }

    #[test]
    fn level_chain_round_trip() {
        let [(_, lambda), _, _] = fixtures::nondistributive_fuzzy();
        let chain = lambda.level_chain();
        assert_eq!(chain.levels().len(), 2);
        assert_eq!(chain.to_fuzzy(20), lambda);
        let bad = LevelChain::new(2, vec![(g(1, 2), Subset::full(2)), (g(1, 4), Subset::full(2))]);
        assert!(bad.is_err());
    }

    #[test]
    fn file_round_trip() {
        let h = fixtures::absorbing();
        let lambda = FuzzySubset::new(20, vec![20, 10, 10]);
        let text = serde_json::to_string(&lambda.to_file(&h)).unwrap();
        assert_eq!(FuzzySubset::from_json(&text, &h, 20).unwrap(), lambda);
        assert!(FuzzySubset::from_json(&text, &h, 3).is_err());
        let wrong = text.replace("absorbing", "other");
        assert!(matches!(FuzzySubset::from_json(&wrong, &h, 20), Err(Error::ParentMismatch(_))));
    }
}
