use serde::Serialize;

use crate::error::{Error, Result};
use crate::hemiring::Hemiring;
use crate::subsets::{ClassWitness, IdealKind};

use super::{FuzzyFamily, FuzzySubset, GridValue};

/// Evidence against a fuzzy classification verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum FuzzyWitness {
    /// `δ(a·x·b) ≥ t` for every `x` while `δ(a), δ(b) < t`.
    Threshold { t: GridValue, a: usize, b: usize },
    /// The level set at `t` fails the crisp property.
    Level { t: GridValue, witness: ClassWitness },
    /// Family members breaking a two-argument condition.
    Pair { lambda: FuzzySubset, mu: FuzzySubset },
    /// A family member breaking a one-argument condition.
    Single { lambda: FuzzySubset },
    /// `(δ ⊙_h δ)(x) ≠ δ(x)`.
    Point { x: usize },
    /// Elements breaking `δ(ab) = δ(a) ∨ δ(b)` (or `δ(a²) = δ(a)` when `a = b`).
    Identity { a: usize, b: usize },
}

/// A first-sense verdict. Failures are absolute; a pass only covers the
/// enumerated grid family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridVerdict {
    pub holds: bool,
    pub witness: Option<FuzzyWitness>,
    /// Grid denominator and family size the quantifier ranged over.
    pub den: u32,
    pub family_size: usize,
}

impl GridVerdict {
    fn new(witness: Option<FuzzyWitness>, family: &FuzzyFamily) -> Self {
        GridVerdict {
            holds: witness.is_none(),
            witness,
            den: family.den,
            family_size: family.len(),
        }
    }

    pub fn label(&self) -> &'static str {
        if self.holds {
            "holds (grid-relative)"
        } else {
            "fails"
        }
    }
}

/// Classification of a non-constant fuzzy h-ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FuzzyClassification {
    /// Second-sense primeness by the threshold quantifier.
    pub prime: bool,
    pub prime_witness: Option<FuzzyWitness>,
    /// Second-sense primeness by the crisp test on every proper level set.
    pub prime_levels: bool,
    pub prime_levels_witness: Option<FuzzyWitness>,
    /// Second-sense semiprimeness in the `δ(a·x·a)` form.
    pub semiprime: bool,
    pub semiprime_witness: Option<FuzzyWitness>,
    pub semiprime_levels: bool,
    pub semiprime_levels_witness: Option<FuzzyWitness>,
    pub h_prime: GridVerdict,
    pub h_semiprime: GridVerdict,
    pub irreducible: GridVerdict,
    pub idempotent: bool,
    pub idempotent_witness: Option<FuzzyWitness>,
    /// `δ(ab) = δ(a) ∨ δ(b)`, evaluated on commutative structures with identity.
    pub product_form: Option<bool>,
    /// `δ(a²) = δ(a)`, evaluated on commutative structures with identity.
    pub square_form: Option<bool>,
}

impl FuzzyClassification {
    /// Names of the checks whose two computations disagree.
    pub fn disagreements(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.prime != self.prime_levels {
            out.push("prime");
        }
        if self.semiprime != self.semiprime_levels {
            out.push("semiprime");
        }
        if self.product_form.is_some_and(|p| p != self.prime) {
            out.push("product-form");
        }
        if self.square_form.is_some_and(|s| s != self.semiprime) {
            out.push("square-form");
        }
        if self.h_prime.holds && !self.prime {
            out.push("h-prime-without-prime");
        }
        out
    }
}

impl Hemiring {
    /// Classifies a fuzzy h-ideal against an enumerated grid family of
    /// fuzzy h-ideals on the same grid.
    pub fn classify_fuzzy(&self, delta: &FuzzySubset, family: &FuzzyFamily) -> Result<FuzzyClassification> {
        self.check_fuzzy_classification(delta, family)?;
        let prime_witness = self.prime2_failure(delta);
        let prime_levels_witness = self.level_failure(delta, family, false);
        let semiprime_witness = self.semiprime2_failure(delta);
        let semiprime_levels_witness = self.level_failure(delta, family, true);
        let h_prime = GridVerdict::new(self.h_prime_failure(delta, family), family);
        let h_semiprime = GridVerdict::new(self.h_semiprime_failure(delta, family), family);
        let irreducible = GridVerdict::new(self.fuzzy_irreducible_failure(delta, family), family);
        let idempotent_witness = self.fuzzy_idempotent_failure(delta);
        let with_identity = self.is_commutative() && self.identity().is_some();
        Ok(FuzzyClassification {
            prime: prime_witness.is_none(),
            prime_witness,
            prime_levels: prime_levels_witness.is_none(),
            prime_levels_witness,
            semiprime: semiprime_witness.is_none(),
            semiprime_witness,
            semiprime_levels: semiprime_levels_witness.is_none(),
            semiprime_levels_witness,
            h_prime,
            h_semiprime,
            irreducible,
            idempotent: idempotent_witness.is_none(),
            idempotent_witness,
            product_form: with_identity.then(|| self.product_form_failure(delta).is_none()),
            square_form: with_identity.then(|| self.square_form_failure(delta).is_none()),
        })
    }

    fn check_fuzzy_classification(&self, delta: &FuzzySubset, family: &FuzzyFamily) -> Result<()> {
        delta.check_parent(self)?;
        if family.kind != IdealKind::H || family.crisp.members.first().map(|s| s.order()) != Some(self.order()) {
            return Err(Error::Domain("classification needs the grid family of fuzzy h-ideals of this structure".into()));
        }
        if delta.denominator() != family.den {
            return Err(Error::ParentMismatch(format!(
                "fuzzy subset on grid {} classified against a family on grid {}",
                delta.denominator(),
                family.den
            )));
        }
        if let Some(v) = delta.level_violation(self, IdealKind::H) {
            return Err(Error::Domain(format!("not a fuzzy h-ideal: {}", v.describe(self, delta))));
        }
        if delta.is_constant() {
            return Err(Error::NonConstantRequired);
        }
        Ok(())
    }

    /// `δ(a·x·b) ≥ t ∀x ⟹ δ(a) ≥ t or δ(b) ≥ t`, over `t ∈ Im δ`.
    pub(crate) fn prime2_failure(&self, delta: &FuzzySubset) -> Option<FuzzyWitness> {
        let n = self.order();
        for a in 0..n {
            for b in 0..n {
                let floor = self.sandwich(a, b).iter().map(|y| delta.num(y)).min().unwrap_or(0);
                if floor > delta.num(a).max(delta.num(b)) {
                    return Some(FuzzyWitness::Threshold { t: delta.degree(floor), a, b });
                }
            }
        }
        None
    }

    /// `δ(a·x·a) ≥ t ∀x ⟹ δ(a) ≥ t`.
    pub(crate) fn semiprime2_failure(&self, delta: &FuzzySubset) -> Option<FuzzyWitness> {
        (0..self.order()).find_map(|a| {
            let floor = self.sandwich(a, a).iter().map(|y| delta.num(y)).min().unwrap_or(0);
            (floor > delta.num(a)).then(|| FuzzyWitness::Threshold { t: delta.degree(floor), a, b: a })
        })
    }

    /// First proper level set that is not a prime (or semiprime) h-ideal.
    pub(crate) fn level_failure(&self, delta: &FuzzySubset, family: &FuzzyFamily, semi: bool) -> Option<FuzzyWitness> {
        delta.image_nums().into_iter().find_map(|t| {
            let u = delta.level_set_num(t);
            if u.is_full() {
                return None;
            }
            let w = if semi {
                self.semiprime_failure(u, &family.crisp.members)
            } else {
                self.prime_failure(u, &family.crisp.members)
            };
            w.map(|witness| FuzzyWitness::Level { t: delta.degree(t), witness })
        })
    }

    /// `λ ⊙_h μ ≤ δ ⟹ λ ≤ δ or μ ≤ δ` over the family.
    pub(crate) fn h_prime_failure(&self, delta: &FuzzySubset, family: &FuzzyFamily) -> Option<FuzzyWitness> {
        let members = family.members();
        let outside: Vec<usize> = (0..members.len()).filter(|&i| !members[i].leq_raw(delta)).collect();
        for &i in &outside {
            for &j in &outside {
                if leq(&family.intrinsic(self, i, j), delta.numerators()) {
                    return Some(FuzzyWitness::Pair { lambda: members[i].clone(), mu: members[j].clone() });
                }
            }
        }
        None
    }

    /// `λ ⊙_h λ ≤ δ ⟹ λ ≤ δ` over the family.
    pub(crate) fn h_semiprime_failure(&self, delta: &FuzzySubset, family: &FuzzyFamily) -> Option<FuzzyWitness> {
        let members = family.members();
        (0..members.len())
            .find(|&i| !members[i].leq_raw(delta) && leq(&family.intrinsic(self, i, i), delta.numerators()))
            .map(|i| FuzzyWitness::Single { lambda: members[i].clone() })
    }

    /// `λ ∧ μ = δ ⟹ λ = δ or μ = δ` over the family.
    pub(crate) fn fuzzy_irreducible_failure(&self, delta: &FuzzySubset, family: &FuzzyFamily) -> Option<FuzzyWitness> {
        let above: Vec<&FuzzySubset> =
            family.members().iter().filter(|m| *m != delta && delta.leq_raw(m)).collect();
        for (k, l) in above.iter().enumerate() {
            for m in &above[k..] {
                if l.meet_raw(m) == *delta {
                    return Some(FuzzyWitness::Pair { lambda: (*l).clone(), mu: (*m).clone() });
                }
            }
        }
        None
    }

    pub(crate) fn fuzzy_idempotent_failure(&self, delta: &FuzzySubset) -> Option<FuzzyWitness> {
        let sq = self.fuzzy_op_raw(super::ProductOp::Intrinsic, delta, delta);
        (0..self.order()).find(|&x| sq.num(x) != delta.num(x)).map(|x| FuzzyWitness::Point { x })
    }

    pub(crate) fn product_form_failure(&self, delta: &FuzzySubset) -> Option<FuzzyWitness> {
        let n = self.order();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| delta.num(self.mul(a, b)) != delta.num(a).max(delta.num(b)))
            .map(|(a, b)| FuzzyWitness::Identity { a, b })
    }

    pub(crate) fn square_form_failure(&self, delta: &FuzzySubset) -> Option<FuzzyWitness> {
        (0..self.order())
            .find(|&a| delta.num(self.mul(a, a)) != delta.num(a))
            .map(|a| FuzzyWitness::Identity { a, b: a })
    }
}

fn leq(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Config;
    use crate::fixtures;

    #[test]
    fn z2_field_zero_indicator_is_prime_both_ways() {
        let h = fixtures::z2_field();
        let fam = h.enumerate_fuzzy_h_ideals(&Config::with_denominator(10)).unwrap();
        let chi = FuzzySubset::characteristic(h.zero_set(), 10);
        let c = h.classify_fuzzy(&chi, &fam).unwrap();
        assert!(c.prime && c.prime_levels);
        assert!(c.h_prime.holds);
        assert_eq!(c.h_prime.label(), "holds (grid-relative)");
        assert!(c.product_form == Some(true) && c.square_form == Some(true));
        assert!(c.disagreements().is_empty());
    }

    #[test]
    fn z2_null_zero_indicator_is_not_semiprime() {
        let h = fixtures::z2_null();
        let fam = h.enumerate_fuzzy_h_ideals(&Config::with_denominator(10)).unwrap();
        let chi = FuzzySubset::characteristic(h.zero_set(), 10);
        let c = h.classify_fuzzy(&chi, &fam).unwrap();
        assert!(!c.semiprime && !c.semiprime_levels);
        assert_eq!(
            c.semiprime_witness,
            Some(FuzzyWitness::Threshold { t: GridValue::one(10), a: 1, b: 1 })
        );
        assert!(!c.prime && !c.h_prime.holds && !c.h_semiprime.holds);
        assert!(c.disagreements().is_empty());
    }

    #[test]
    fn constants_are_rejected() {
        let h = fixtures::z2_field();
        let fam = h.enumerate_fuzzy_h_ideals(&Config::with_denominator(4)).unwrap();
        let c = FuzzySubset::constant(2, GridValue::new(3, 4).unwrap());
        assert!(matches!(h.classify_fuzzy(&c, &fam), Err(Error::NonConstantRequired)));
    }

    #[test]
    fn non_ideals_and_foreign_grids_are_rejected() {
        let h = fixtures::z2_field();
        let fam = h.enumerate_fuzzy_h_ideals(&Config::with_denominator(4)).unwrap();
        let bad = FuzzySubset::new(4, vec![1, 3]);
        assert!(matches!(h.classify_fuzzy(&bad, &fam), Err(Error::Domain(_))));
        let other = FuzzySubset::new(2, vec![2, 1]);
        assert!(matches!(h.classify_fuzzy(&other, &fam), Err(Error::ParentMismatch(_))));
    }

    #[test]
    fn h_prime_implies_prime_on_small_structures() {
        for h in fixtures::all_valid() {
            let fam = h.enumerate_fuzzy_h_ideals(&Config::with_denominator(3)).unwrap();
            for (_, d) in fam.non_constant() {
                let c = h.classify_fuzzy(d, &fam).unwrap();
                assert!(c.disagreements().is_empty(), "{} {:?}", h.name(), d);
            }
        }
    }
}
