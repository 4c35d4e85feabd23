use std::collections::BTreeSet;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::hemiring::Hemiring;
use crate::subset::Subset;

use super::IdealKind;

/// All ideals of one kind, sorted by mask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealFamily {
    pub kind: IdealKind,
    pub members: Vec<Subset>,
    /// True when `members` is provably every ideal of the kind.
    pub complete: bool,
}

impl IdealFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.members.binary_search(&s).is_ok()
    }

    /// Members other than the whole carrier.
    pub fn proper(&self) -> impl Iterator<Item = Subset> + '_ {
        self.members.iter().copied().filter(|s| !s.is_full())
    }

    pub fn lattice<'a>(&'a self, h: &'a Hemiring) -> Result<IdealLattice<'a>> {
        if !self.complete {
            return Err(Error::Domain("lattice operations need a complete family".into()));
        }
        Ok(IdealLattice { h, family: self })
    }
}

impl Hemiring {
    /// Every h-ideal of the structure.
    pub fn enumerate_h_ideals(&self, config: &Config) -> Result<IdealFamily> {
        self.enumerate_ideals(IdealKind::H, config)
    }

    /// Every ideal of the given kind.
    ///
    /// Orders up to `config.subset_cap` scan all masks containing 0. Larger
    /// orders close the principal ideals under join and meet, which reaches
    /// every ideal since each one is the join of the principal ideals of its
    /// elements.
    pub fn enumerate_ideals(&self, kind: IdealKind, config: &Config) -> Result<IdealFamily> {
        let n = self.order();
        let members = if n <= config.subset_cap {
            Subset::all_with_zero(n).filter(|&s| self.is_ideal_fast(s, kind)).collect()
        } else if n <= config.closure_cap {
            self.closure_system(kind, config.family_cap)?
        } else {
            return Err(Error::Capacity(format!(
                "order {n} exceeds both enumeration caps ({} brute force, {} closure system)",
                config.subset_cap, config.closure_cap
            )));
        };
        Ok(IdealFamily { kind, members, complete: true })
    }

    fn closure_system(&self, kind: IdealKind, cap: usize) -> Result<Vec<Subset>> {
        let n = self.order();
        let mut found: BTreeSet<Subset> = BTreeSet::new();
        found.insert(self.generated_ideal_raw(Subset::empty(n), kind));
        for x in 0..n {
            found.insert(self.generated_ideal_raw(Subset::singleton(n, x), kind));
        }
        let mut frontier: Vec<Subset> = found.iter().copied().collect();
        while !frontier.is_empty() {
            let snapshot: Vec<Subset> = found.iter().copied().collect();
            let mut next = Vec::new();
            for &a in &frontier {
                for &b in &snapshot {
                    for c in [self.generated_ideal_raw(a.union(b), kind), a.intersection(b)] {
                        if found.insert(c) {
                            if found.len() > cap {
                                return Err(Error::Capacity(format!(
                                    "more than {cap} {kind} ideals"
                                )));
                            }
                            next.push(c);
                        }
                    }
                }
            }
            frontier = next;
        }
        Ok(found.into_iter().collect())
    }
}

/// Lattice view of a complete family: meet is intersection, join is the
/// smallest member containing both (for h-ideals, the h-closure of `A+B`).
#[derive(Clone, Copy)]
pub struct IdealLattice<'a> {
    h: &'a Hemiring,
    family: &'a IdealFamily,
}

impl<'a> IdealLattice<'a> {
    pub fn family(&self) -> &'a IdealFamily {
        self.family
    }

    pub fn join(&self, a: Subset, b: Subset) -> Subset {
        if self.family.kind == IdealKind::H {
            self.h.h_closure_raw(self.h.sum_set_raw(a, b))
        } else {
            self.h.generated_ideal_raw(a.union(b), self.family.kind)
        }
    }

    pub fn meet(&self, a: Subset, b: Subset) -> Subset {
        a.intersection(b)
    }

    /// Greatest member `I` with `A ∩ I ⊆ B`, when it exists.
    pub fn residual(&self, a: Subset, b: Subset) -> Option<Subset> {
        let candidates: Vec<Subset> = self
            .family
            .members
            .iter()
            .copied()
            .filter(|i| a.intersection(*i).is_subset_of(b))
            .collect();
        candidates
            .iter()
            .copied()
            .find(|top| candidates.iter().all(|c| c.is_subset_of(*top)))
    }

    /// First pair without a residual, if any.
    pub fn brouwerian_failure(&self) -> Option<(Subset, Subset)> {
        let m = &self.family.members;
        m.iter()
            .flat_map(|&a| m.iter().map(move |&b| (a, b)))
            .find(|&(a, b)| self.residual(a, b).is_none())
    }

    pub fn is_brouwerian(&self) -> bool {
        self.brouwerian_failure().is_none()
    }

    /// First triple violating `A ∧ (B ∨ C) = (A ∧ B) ∨ (A ∧ C)`, if any.
    pub fn distributivity_failure(&self) -> Option<(Subset, Subset, Subset)> {
        let m = &self.family.members;
        for &a in m {
            for &b in m {
                for &c in m {
                    let lhs = self.meet(a, self.join(b, c));
                    let rhs = self.join(self.meet(a, b), self.meet(a, c));
                    if lhs != rhs {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity_failure().is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn enumeration_examples() {
        let cfg = Config::default();
        let h = fixtures::absorbing();
        assert_eq!(h.enumerate_h_ideals(&cfg).unwrap().members, vec![h.full()]);
        let z2 = fixtures::z2_field();
        let fam = z2.enumerate_h_ideals(&cfg).unwrap();
        assert_eq!(fam.members, vec![z2.zero_set(), z2.full()]);
        let t = fixtures::trivial();
        assert_eq!(t.enumerate_h_ideals(&cfg).unwrap().members, vec![t.full()]);
    }

    #[test]
    fn closure_system_agrees_with_brute_force() {
        let brute = Config::default();
        let closure = Config { subset_cap: 0, ..Config::default() };
        for h in fixtures::all_valid() {
            for kind in IdealKind::ALL {
                assert_eq!(
                    h.enumerate_ideals(kind, &brute).unwrap(),
                    h.enumerate_ideals(kind, &closure).unwrap(),
                    "{} {kind}",
                    h.name()
                );
            }
        }
    }

    #[test]
    fn capacity_error_above_caps() {
        let cfg = Config { subset_cap: 0, closure_cap: 1, ..Config::default() };
        assert!(matches!(
            fixtures::z2_field().enumerate_h_ideals(&cfg),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn z2_field_lattice() {
        let z2 = fixtures::z2_field();
        let fam = z2.enumerate_h_ideals(&Config::default()).unwrap();
        let l = fam.lattice(&z2).unwrap();
        let (zero, full) = (z2.zero_set(), z2.full());
        assert_eq!(l.join(zero, full), full);
        assert_eq!(l.meet(zero, full), zero);
        assert_eq!(l.residual(zero, zero), Some(full));
        assert!(l.is_distributive());
        assert!(l.is_brouwerian());
        for &a in &fam.members {
            assert_eq!(l.join(a, a), a);
        }
    }

    #[test]
    fn single_member_lattice_is_distributive_and_brouwerian() {
        let h = fixtures::absorbing();
        let fam = h.enumerate_h_ideals(&Config::default()).unwrap();
        let l = fam.lattice(&h).unwrap();
        assert!(l.is_distributive() && l.is_brouwerian());
    }
}
