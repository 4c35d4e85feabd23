//! Crisp subsets of a hemiring: closures, ideal predicates and generated
//! ideals.

mod classify;
mod family;

pub use classify::{Classification, ClassWitness};
pub use family::{IdealFamily, IdealLattice};

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hemiring::Hemiring;
use crate::subset::Subset;

/// The ideal notions used throughout the crate. `K` and `H` are two-sided;
/// `LeftH`/`RightH` are their one-sided h-variants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdealKind {
    Left,
    Right,
    TwoSided,
    K,
    H,
    LeftH,
    RightH,
}

impl IdealKind {
    pub const ALL: [IdealKind; 7] = [
        IdealKind::Left,
        IdealKind::Right,
        IdealKind::TwoSided,
        IdealKind::K,
        IdealKind::H,
        IdealKind::LeftH,
        IdealKind::RightH,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdealKind::Left => "left",
            IdealKind::Right => "right",
            IdealKind::TwoSided => "two-sided",
            IdealKind::K => "k",
            IdealKind::H => "h",
            IdealKind::LeftH => "left-h",
            IdealKind::RightH => "right-h",
        }
    }

    pub(crate) fn left_closed(self) -> bool {
        !matches!(self, IdealKind::Right | IdealKind::RightH)
    }

    pub(crate) fn right_closed(self) -> bool {
        !matches!(self, IdealKind::Left | IdealKind::LeftH)
    }

    pub(crate) fn h_closed(self) -> bool {
        matches!(self, IdealKind::H | IdealKind::LeftH | IdealKind::RightH)
    }

    pub(crate) fn k_closed(self) -> bool {
        self == IdealKind::K
    }
}

impl fmt::Display for IdealKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdealKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IdealKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Input(format!("unknown ideal kind {s:?}")))
    }
}

/// Why a subset fails an ideal predicate. All fields are element indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "kebab-case")]
pub enum IdealViolation {
    Empty,
    /// `a + b` leaves the subset.
    Additive { a: usize, b: usize },
    /// `r·a` leaves the subset.
    Left { r: usize, a: usize },
    /// `a·r` leaves the subset.
    Right { a: usize, r: usize },
    /// `x + a = b` with `a, b` inside but `x` outside.
    K { x: usize, a: usize, b: usize },
    /// `x + a + y = b + y` with `a, b` inside but `x` outside.
    H { x: usize, a: usize, b: usize, y: usize },
}

impl IdealViolation {
    /// Re-evaluates the witness against `s`.
    pub fn reproduces(&self, h: &Hemiring, s: Subset) -> bool {
        match *self {
            IdealViolation::Empty => s.is_empty(),
            IdealViolation::Additive { a, b } => {
                s.contains(a) && s.contains(b) && !s.contains(h.add(a, b))
            }
            IdealViolation::Left { r, a } => s.contains(a) && !s.contains(h.mul(r, a)),
            IdealViolation::Right { a, r } => s.contains(a) && !s.contains(h.mul(a, r)),
            IdealViolation::K { x, a, b } => {
                s.contains(a) && s.contains(b) && !s.contains(x) && h.add(x, a) == b
            }
            IdealViolation::H { x, a, b, y } => {
                s.contains(a)
                    && s.contains(b)
                    && !s.contains(x)
                    && h.add(h.add(x, a), y) == h.add(b, y)
            }
        }
    }

    pub fn describe(&self, h: &Hemiring) -> String {
        let e = |i: usize| h.element_name(i);
        match *self {
            IdealViolation::Empty => "empty subset".into(),
            IdealViolation::Additive { a, b } => {
                format!("{}+{} = {} is missing", e(a), e(b), e(h.add(a, b)))
            }
            IdealViolation::Left { r, a } => {
                format!("{}·{} = {} is missing", e(r), e(a), e(h.mul(r, a)))
            }
            IdealViolation::Right { a, r } => {
                format!("{}·{} = {} is missing", e(a), e(r), e(h.mul(a, r)))
            }
            IdealViolation::K { x, a, b } => {
                format!("{}+{} = {} but {} is missing", e(x), e(a), e(b), e(x))
            }
            IdealViolation::H { x, a, b, y } => format!(
                "{x}+{a}+{y} = {b}+{y} = {} but {x} is missing",
                e(h.add(b, y)),
                x = e(x),
                a = e(a),
                b = e(b),
                y = e(y)
            ),
        }
    }
}

fn require_nonempty(s: Subset, what: &str) -> Result<()> {
    if s.is_empty() {
        Err(Error::Domain(format!("{what} is defined for non-empty subsets only")))
    } else {
        Ok(())
    }
}

impl Hemiring {
    fn check_subset(&self, s: Subset) -> Result<()> {
        if s.order() != self.order() {
            return Err(Error::ParentMismatch(format!(
                "subset over {} elements used with a hemiring of order {}",
                s.order(),
                self.order()
            )));
        }
        Ok(())
    }

    /// h-closure `{x : x+a+y = b+y for some a, b in A, y in R}`.
    pub fn h_closure(&self, a: Subset) -> Result<Subset> {
        self.check_subset(a)?;
        require_nonempty(a, "h-closure")?;
        Ok(self.h_closure_raw(a))
    }

    pub(crate) fn h_closure_raw(&self, s: Subset) -> Subset {
        let mut out = Subset::empty(self.order());
        for a in s {
            for b in s {
                out = out.union(self.h_pair(a, b));
            }
        }
        out
    }

    /// The set of all non-empty finite sums of elements of `P`.
    pub fn additive_closure(&self, p: Subset) -> Result<Subset> {
        self.check_subset(p)?;
        require_nonempty(p, "additive closure")?;
        Ok(self.additive_closure_raw(p))
    }

    pub(crate) fn additive_closure_raw(&self, p: Subset) -> Subset {
        let mut s = p;
        loop {
            let next = s.union(self.sum_set_raw(s, p));
            if next == s {
                return s;
            }
            s = next;
        }
    }

    /// Element-wise sums `{a+b : a in A, b in B}`.
    pub fn sum_set(&self, a: Subset, b: Subset) -> Result<Subset> {
        self.check_subset(a)?;
        self.check_subset(b)?;
        Ok(self.sum_set_raw(a, b))
    }

    pub(crate) fn sum_set_raw(&self, a: Subset, b: Subset) -> Subset {
        let mut out = Subset::empty(self.order());
        for x in a {
            for y in b {
                out = out.with(self.add(x, y));
            }
        }
        out
    }

    /// Element-wise products `{a·b : a in A, b in B}`.
    pub(crate) fn mul_set_raw(&self, a: Subset, b: Subset) -> Subset {
        let mut out = Subset::empty(self.order());
        for x in a {
            for y in b {
                out = out.with(self.mul(x, y));
            }
        }
        out
    }

    /// The ideal product `AB`: all non-empty finite sums of products `a·b`.
    pub fn product_set(&self, a: Subset, b: Subset) -> Result<Subset> {
        self.check_subset(a)?;
        self.check_subset(b)?;
        require_nonempty(a, "product")?;
        require_nonempty(b, "product")?;
        Ok(self.product_set_raw(a, b))
    }

    pub(crate) fn product_set_raw(&self, a: Subset, b: Subset) -> Subset {
        self.additive_closure_raw(self.mul_set_raw(a, b))
    }

    /// `aRb = {a·r·b : r in R}`.
    pub fn sandwich(&self, a: usize, b: usize) -> Subset {
        let mut out = Subset::empty(self.order());
        for r in 0..self.order() {
            out = out.with(self.mul(self.mul(a, r), b));
        }
        out
    }

    /// First violated condition of the named ideal notion, if any.
    pub fn ideal_violation(&self, s: Subset, kind: IdealKind) -> Result<Option<IdealViolation>> {
        self.check_subset(s)?;
        Ok(self.ideal_violation_raw(s, kind))
    }

    pub(crate) fn ideal_violation_raw(&self, s: Subset, kind: IdealKind) -> Option<IdealViolation> {
        let n = self.order();
        if s.is_empty() {
            return Some(IdealViolation::Empty);
        }
        for a in s {
            for b in s {
                if !s.contains(self.add(a, b)) {
                    return Some(IdealViolation::Additive { a, b });
                }
            }
        }
        if kind.left_closed() {
            for a in s {
                for r in 0..n {
                    if !s.contains(self.mul(r, a)) {
                        return Some(IdealViolation::Left { r, a });
                    }
                }
            }
        }
        if kind.right_closed() {
            for a in s {
                for r in 0..n {
                    if !s.contains(self.mul(a, r)) {
                        return Some(IdealViolation::Right { a, r });
                    }
                }
            }
        }
        if kind.k_closed() {
            for x in s.complement() {
                for a in s {
                    let b = self.add(x, a);
                    if s.contains(b) {
                        return Some(IdealViolation::K { x, a, b });
                    }
                }
            }
        }
        if kind.h_closed() {
            let outside = s.complement();
            for x in outside {
                for a in s {
                    for b in s {
                        if self.h_pair(a, b).contains(x) {
                            let y = (0..n)
                                .find(|&y| self.add(self.add(x, a), y) == self.add(b, y))
                                .expect("h_pair membership implies a witness y");
                            return Some(IdealViolation::H { x, a, b, y });
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_ideal(&self, s: Subset, kind: IdealKind) -> bool {
        s.order() == self.order() && self.ideal_violation_raw(s, kind).is_none()
    }

    /// Bitmask-level predicate used by the enumerators.
    pub(crate) fn is_ideal_fast(&self, s: Subset, kind: IdealKind) -> bool {
        if s.is_empty() || !self.sum_set_raw(s, s).is_subset_of(s) {
            return false;
        }
        let full = self.full();
        if kind.left_closed() && !self.mul_set_raw(full, s).is_subset_of(s) {
            return false;
        }
        if kind.right_closed() && !self.mul_set_raw(s, full).is_subset_of(s) {
            return false;
        }
        if kind.k_closed() && !self.k_closure_raw(s).is_subset_of(s) {
            return false;
        }
        if kind.h_closed() && !self.h_closure_raw(s).is_subset_of(s) {
            return false;
        }
        true
    }

    /// `{x : x+a = b for some a, b in S}`.
    pub(crate) fn k_closure_raw(&self, s: Subset) -> Subset {
        let mut out = Subset::empty(self.order());
        for x in 0..self.order() {
            if s.iter().any(|a| s.contains(self.add(x, a))) {
                out = out.with(x);
            }
        }
        out
    }

    /// Smallest ideal of the given kind containing `X` (possibly empty).
    pub fn generated_ideal(&self, x: Subset, kind: IdealKind) -> Result<Subset> {
        self.check_subset(x)?;
        Ok(self.generated_ideal_raw(x, kind))
    }

    pub(crate) fn generated_ideal_raw(&self, x: Subset, kind: IdealKind) -> Subset {
        let full = self.full();
        let mut s = x.with(0);
        loop {
            let mut next = s;
            if kind.left_closed() {
                next = next.union(self.mul_set_raw(full, s));
            }
            if kind.right_closed() {
                next = next.union(self.mul_set_raw(s, full));
            }
            next = self.additive_closure_raw(next);
            if kind.k_closed() {
                next = next.union(self.k_closure_raw(next));
            }
            if kind.h_closed() {
                // contains `next` because 0 is a member
                next = self.h_closure_raw(next);
            }
            if next == s {
                return s;
            }
            s = next;
        }
    }

    /// Smallest h-ideal containing `X`; for empty `X` this is the h-closure of `{0}`.
    pub fn generated_h_ideal(&self, x: Subset) -> Result<Subset> {
        self.generated_ideal(x, IdealKind::H)
    }

    /// Searches, for every element `a`, a triple `(x, y, z)` with
    /// `a + a·x·a + z = a·y·a + z`.
    pub fn h_hemiregularity(&self) -> Hemiregularity {
        let n = self.order();
        let witnesses: Vec<Option<(usize, usize, usize)>> = (0..n)
            .map(|a| {
                (0..n).find_map(|x| {
                    let axa = self.mul(self.mul(a, x), a);
                    let lhs = self.add(a, axa);
                    (0..n).find_map(|y| {
                        let aya = self.mul(self.mul(a, y), a);
                        (0..n)
                            .find(|&z| self.add(lhs, z) == self.add(aya, z))
                            .map(|z| (x, y, z))
                    })
                })
            })
            .collect();
        let failing = witnesses.iter().position(Option::is_none);
        Hemiregularity { holds: failing.is_none(), witnesses, failing }
    }

    pub fn is_h_hemiregular(&self) -> bool {
        self.h_hemiregularity().holds
    }
}

/// Outcome of the h-hemiregularity search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hemiregularity {
    pub holds: bool,
    /// `(x, y, z)` per element, when found.
    pub witnesses: Vec<Option<(usize, usize, usize)>>,
    /// First element without a witness.
    pub failing: Option<usize>,
}

impl Hemiregularity {
    /// Checks `a + a·x·a + z = a·y·a + z` for a recorded witness.
    pub fn verify(h: &Hemiring, a: usize, (x, y, z): (usize, usize, usize)) -> bool {
        let axa = h.mul(h.mul(a, x), a);
        let aya = h.mul(h.mul(a, y), a);
        h.add(h.add(a, axa), z) == h.add(aya, z)
    }
}
