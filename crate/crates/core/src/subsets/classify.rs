use serde::Serialize;

use crate::error::{Error, Result};
use crate::hemiring::Hemiring;
use crate::subset::Subset;

use super::{IdealFamily, IdealKind};

/// Evidence for a negative classification verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum ClassWitness {
    /// The ideal is the whole carrier.
    NotProper,
    /// Family members `A`, `B` with the product (or intersection) condition
    /// met but neither contained in (or equal to) the ideal.
    Pair { a: Subset, b: Subset },
    /// A single family member `B` with `B² ⊆ P` but `B ⊄ P`.
    Single { b: Subset },
    /// Elements with `aRb ⊆ P` but `a, b ∉ P`.
    Elements { a: usize, b: usize },
    /// Element of `P` outside the h-closure of `PP`.
    Missing { x: usize },
}

/// Prime, semiprime, irreducible and idempotency verdicts for one h-ideal.
///
/// Primeness and semiprimeness are computed both from the family definition
/// and from the element-wise test; both results are kept.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub is_proper: bool,
    pub is_prime: bool,
    pub is_prime_elementwise: bool,
    pub is_semiprime: bool,
    pub is_semiprime_elementwise: bool,
    pub is_irreducible: bool,
    pub is_h_idempotent: bool,
    pub prime_witness: Option<ClassWitness>,
    pub prime_elementwise_witness: Option<ClassWitness>,
    pub semiprime_witness: Option<ClassWitness>,
    pub semiprime_elementwise_witness: Option<ClassWitness>,
    pub irreducible_witness: Option<ClassWitness>,
    pub idempotent_witness: Option<ClassWitness>,
}

impl Classification {
    /// Names of the properties whose two computations disagree.
    pub fn disagreements(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.is_prime != self.is_prime_elementwise {
            out.push("prime");
        }
        if self.is_semiprime != self.is_semiprime_elementwise {
            out.push("semiprime");
        }
        out
    }
}

impl Hemiring {
    /// Classifies an h-ideal `P` against the complete family of h-ideals.
    pub fn classify_h_ideal(&self, p: Subset, family: &IdealFamily) -> Result<Classification> {
        if family.kind != IdealKind::H || !family.complete {
            return Err(Error::Domain("classification needs the complete h-ideal family".into()));
        }
        if let Some(v) = self.ideal_violation(p, IdealKind::H)? {
            return Err(Error::Domain(format!(
                "{{{}}} is not an h-ideal: {}",
                self.render(p),
                v.describe(self)
            )));
        }
        let is_proper = !p.is_full();

        let prime_witness = self.prime_failure(p, &family.members);
        let prime_elementwise_witness = self.prime_failure_elementwise(p);
        let semiprime_witness = self.semiprime_failure(p, &family.members);
        let semiprime_elementwise_witness = self.semiprime_failure_elementwise(p);
        let irreducible_witness = self.irreducible_failure(p, &family.members);
        let square = self.h_closure_raw(self.product_set_raw(p, p));
        let idempotent_witness =
            p.difference(square).iter().next().map(|x| ClassWitness::Missing { x });
        Ok(Classification {
            is_proper,
            is_prime: prime_witness.is_none(),
            is_prime_elementwise: prime_elementwise_witness.is_none(),
            is_semiprime: semiprime_witness.is_none(),
            is_semiprime_elementwise: semiprime_elementwise_witness.is_none(),
            is_irreducible: irreducible_witness.is_none(),
            is_h_idempotent: square == p,
            prime_witness,
            prime_elementwise_witness,
            semiprime_witness,
            semiprime_elementwise_witness,
            irreducible_witness,
            idempotent_witness,
        })
    }

    /// `AB ⊆ P ⟹ A ⊆ P or B ⊆ P` over the given ideals.
    pub(crate) fn prime_failure(&self, p: Subset, ideals: &[Subset]) -> Option<ClassWitness> {
        if p.is_full() {
            return Some(ClassWitness::NotProper);
        }
        for &a in ideals {
            if a.is_subset_of(p) {
                continue;
            }
            for &b in ideals {
                if !b.is_subset_of(p) && self.product_set_raw(a, b).is_subset_of(p) {
                    return Some(ClassWitness::Pair { a, b });
                }
            }
        }
        None
    }

    /// `aRb ⊆ P ⟹ a ∈ P or b ∈ P`.
    pub(crate) fn prime_failure_elementwise(&self, p: Subset) -> Option<ClassWitness> {
        if p.is_full() {
            return Some(ClassWitness::NotProper);
        }
        let outside = p.complement();
        for a in outside {
            for b in outside {
                if self.sandwich(a, b).is_subset_of(p) {
                    return Some(ClassWitness::Elements { a, b });
                }
            }
        }
        None
    }

    /// `B² ⊆ P ⟹ B ⊆ P` over the given ideals.
    pub(crate) fn semiprime_failure(&self, p: Subset, ideals: &[Subset]) -> Option<ClassWitness> {
        if p.is_full() {
            return Some(ClassWitness::NotProper);
        }
        ideals
            .iter()
            .copied()
            .find(|&b| !b.is_subset_of(p) && self.product_set_raw(b, b).is_subset_of(p))
            .map(|b| ClassWitness::Single { b })
    }

    /// `aRa ⊆ P ⟹ a ∈ P`.
    pub(crate) fn semiprime_failure_elementwise(&self, p: Subset) -> Option<ClassWitness> {
        if p.is_full() {
            return Some(ClassWitness::NotProper);
        }
        p.complement()
            .iter()
            .find(|&a| self.sandwich(a, a).is_subset_of(p))
            .map(|a| ClassWitness::Elements { a, b: a })
    }

    /// `A ∩ B = P ⟹ A = P or B = P` over the given ideals.
    pub(crate) fn irreducible_failure(&self, p: Subset, ideals: &[Subset]) -> Option<ClassWitness> {
        if p.is_full() {
            return Some(ClassWitness::NotProper);
        }
        for &a in ideals {
            for &b in ideals {
                if a != p && b != p && a.intersection(b) == p {
                    return Some(ClassWitness::Pair { a, b });
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Config;
    use crate::fixtures;

    #[test]
    fn z2_field_zero_ideal_is_everything() {
        let z2 = fixtures::z2_field();
        let fam = z2.enumerate_h_ideals(&Config::default()).unwrap();
        let c = z2.classify_h_ideal(z2.zero_set(), &fam).unwrap();
        assert!(c.is_proper && c.is_prime && c.is_semiprime);
        assert!(c.is_irreducible && c.is_h_idempotent);
        assert!(c.disagreements().is_empty());
    }

    #[test]
    fn z2_null_zero_ideal_is_not_semiprime() {
        let h = fixtures::z2_null();
        let fam = h.enumerate_h_ideals(&Config::default()).unwrap();
        let c = h.classify_h_ideal(h.zero_set(), &fam).unwrap();
        assert!(c.is_proper);
        assert!(!c.is_semiprime && !c.is_semiprime_elementwise);
        assert!(!c.is_prime);
        assert_eq!(c.semiprime_elementwise_witness, Some(ClassWitness::Elements { a: 1, b: 1 }));
        assert!(c.is_h_idempotent);
        let whole = h.classify_h_ideal(h.full(), &fam).unwrap();
        assert!(!whole.is_h_idempotent);
    }

    #[test]
    fn whole_carrier_is_not_proper() {
        for h in fixtures::all_valid() {
            let fam = h.enumerate_h_ideals(&Config::default()).unwrap();
            let c = h.classify_h_ideal(h.full(), &fam).unwrap();
            assert!(!c.is_proper && !c.is_prime && !c.is_semiprime && !c.is_irreducible);
            assert_eq!(c.prime_witness, Some(ClassWitness::NotProper));
        }
    }

    #[test]
    fn non_h_ideal_is_a_domain_error() {
        let h = fixtures::absorbing();
        let fam = h.enumerate_h_ideals(&Config::default()).unwrap();
        let p = h.parse_subset("0,a").unwrap();
        assert!(matches!(h.classify_h_ideal(p, &fam), Err(Error::Domain(_))));
    }
}
