use std::collections::HashMap;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::hemiring::Hemiring;
use crate::subsets::{IdealFamily, IdealKind};

use super::{FuzzySubset, ProductOp};

/// Largest pairwise `⊙` table kept in memory, in numerators.
const PRODUCT_CACHE_LIMIT: usize = 1 << 24;

/// Every grid fuzzy ideal of one kind, built from chains of crisp ideals.
///
/// A fuzzy ideal on the grid `{0, 1/D, .., 1}` is determined by its chain of
/// level sets `I₁ ⊊ .. ⊊ I_k = R` and strictly decreasing values
/// `v₁ > .. > v_k`, so the family is enumerated from chains rather than
/// from value assignments.
pub struct FuzzyFamily {
    pub kind: IdealKind,
    pub den: u32,
    /// The crisp family the chains were drawn from.
    pub crisp: IdealFamily,
    members: Vec<FuzzySubset>,
    index: HashMap<FuzzySubset, usize>,
    order: usize,
    intrinsic: OnceLock<Option<Vec<u32>>>,
}

impl std::fmt::Debug for FuzzyFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FuzzyFamily")
            .field("kind", &self.kind)
            .field("den", &self.den)
            .field("members", &self.members.len())
            .finish()
    }
}

impl FuzzyFamily {
    pub fn members(&self) -> &[FuzzySubset] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn index_of(&self, lambda: &FuzzySubset) -> Option<usize> {
        self.index.get(lambda).copied()
    }

    pub fn contains(&self, lambda: &FuzzySubset) -> bool {
        self.index.contains_key(lambda)
    }

    /// Members that take at least two values.
    pub fn non_constant(&self) -> impl Iterator<Item = (usize, &FuzzySubset)> {
        self.members.iter().enumerate().filter(|(_, m)| !m.is_constant())
    }

    /// `members[i] ⊙_h members[j]` as numerators, cached for small families.
    pub(crate) fn intrinsic(&self, h: &Hemiring, i: usize, j: usize) -> Vec<u32> {
        let n = self.order;
        match self.intrinsic_table(h) {
            Some(table) => table[(i * self.len() + j) * n..][..n].to_vec(),
            None => h
                .fuzzy_op_raw(ProductOp::Intrinsic, &self.members[i], &self.members[j])
                .numerators()
                .to_vec(),
        }
    }

    fn intrinsic_table(&self, h: &Hemiring) -> Option<&Vec<u32>> {
        self.intrinsic
            .get_or_init(|| {
                let m = self.len();
                if m * m * self.order > PRODUCT_CACHE_LIMIT {
                    return None;
                }
                let rows: Vec<Vec<u32>> = (0..m)
                    .into_par_iter()
                    .map(|i| {
                        let mut row = Vec::with_capacity(m * self.order);
                        for j in 0..m {
                            let p = h.fuzzy_op_raw(
                                ProductOp::Intrinsic,
                                &self.members[i],
                                &self.members[j],
                            );
                            row.extend_from_slice(p.numerators());
                        }
                        row
                    })
                    .collect();
                Some(rows.concat())
            })
            .as_ref()
    }
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i + 1) as u128)
}

/// Strictly decreasing `k`-element selections from `0..=den`.
fn decreasing_values(den: u32, k: usize) -> Vec<Vec<u32>> {
    fn go(hi: i64, k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let left = (k - cur.len()) as i64;
        let mut v = hi;
        while v + 1 >= left {
            cur.push(v as u32);
            go(v - 1, k, cur, out);
            cur.pop();
            v -= 1;
        }
    }
    let mut out = Vec::new();
    go(den as i64, k, &mut Vec::new(), &mut out);
    out
}

impl Hemiring {
    /// All grid fuzzy h-ideals.
    pub fn enumerate_fuzzy_h_ideals(&self, config: &Config) -> Result<FuzzyFamily> {
        self.enumerate_fuzzy_ideals(IdealKind::H, config)
    }

    /// All fuzzy ideals of `kind` with values on the grid of `config`.
    pub fn enumerate_fuzzy_ideals(&self, kind: IdealKind, config: &Config) -> Result<FuzzyFamily> {
        config.validate()?;
        let crisp = self.enumerate_ideals(kind, config)?;
        self.fuzzy_family_from(crisp, config.denominator, config.fuzzy_budget)
    }

    pub(crate) fn fuzzy_family_from(
        &self,
        crisp: IdealFamily,
        den: u32,
        budget: usize,
    ) -> Result<FuzzyFamily> {
        let n = self.order();
        let sets = &crisp.members;
        let top = sets
            .iter()
            .position(|s| s.is_full())
            .ok_or_else(|| Error::Domain("ideal family lacks the whole carrier".into()))?;
        let supersets: Vec<Vec<usize>> = sets
            .iter()
            .map(|&s| {
                (0..sets.len())
                    .filter(|&j| s.is_subset_of(sets[j]) && s != sets[j])
                    .collect()
            })
            .collect();

        // chains as [R, .., smallest], built by descending from R
        let mut chains: Vec<Vec<usize>> = Vec::new();
        let mut stack = vec![vec![top]];
        while let Some(chain) = stack.pop() {
            let last = *chain.last().expect("non-empty chain");
            for (i, ups) in supersets.iter().enumerate() {
                if ups.contains(&last) {
                    let mut next = chain.clone();
                    next.push(i);
                    stack.push(next);
                }
            }
            chains.push(chain);
        }

        let total: u128 = chains
            .iter()
            .map(|c| binomial(den as u64 + 1, c.len() as u64))
            .fold(0u128, u128::saturating_add);
        if total > budget as u128 {
            return Err(Error::Capacity(format!(
                "{total} grid fuzzy {} ideals at denominator {den} exceed the budget of {budget}",
                crisp.kind
            )));
        }

        let mut members: Vec<FuzzySubset> = chains
            .par_iter()
            .flat_map_iter(|chain| {
                let k = chain.len();
                decreasing_values(den, k).into_iter().map(move |vals| {
                    // vals[0] belongs to the smallest set, chain[k-1]
                    let mut values = vec![0; n];
                    for (pos, &set) in chain.iter().enumerate() {
                        let v = vals[k - 1 - pos];
                        for x in sets[set] {
                            values[x] = v;
                        }
                    }
                    FuzzySubset::new(den, values)
                })
            })
            .collect();
        members.sort();
        members.dedup();
        let index = members.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Ok(FuzzyFamily {
            kind: crisp.kind,
            den,
            crisp,
            members,
            index,
            order: n,
            intrinsic: OnceLock::new(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::fuzzy::Method;

    fn count_by_scan(h: &Hemiring, kind: IdealKind, den: u32) -> usize {
        let n = h.order();
        let mut values = vec![0u32; n];
        let mut count = 0;
        loop {
            let lam = FuzzySubset::new(den, values.clone());
            if lam.is_fuzzy_ideal(h, kind, Method::Direct).unwrap() {
                count += 1;
            }
            let mut i = 0;
            loop {
                if i == n {
                    return count;
                }
                values[i] += 1;
                if values[i] <= den {
                    break;
                }
                values[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn absorbing_has_only_constants() {
        let h = fixtures::absorbing();
        let fam = h.enumerate_fuzzy_h_ideals(&Config::with_denominator(10)).unwrap();
        assert_eq!(fam.len(), 11);
        assert!(fam.members().iter().all(FuzzySubset::is_constant));
    }

    #[test]
    fn z2_field_at_denominator_one() {
        let h = fixtures::z2_field();
        let fam = h.enumerate_fuzzy_h_ideals(&Config::with_denominator(1)).unwrap();
        let expect = [FuzzySubset::new(1, vec![0, 0]),
            FuzzySubset::new(1, vec![1, 0]),
            FuzzySubset::new(1, vec![1, 1])];
        assert_eq!(fam.members(), &expect[..]);
        assert!(fam.contains(&FuzzySubset::characteristic(h.zero_set(), 1)));
    }

    #[test]
    fn trivial_hemiring_has_only_constants() {
        let h = fixtures::trivial();
        for den in [1, 4, 7] {
            let fam = h.enumerate_fuzzy_h_ideals(&Config::with_denominator(den)).unwrap();
            assert_eq!(fam.len(), den as usize + 1);
        }
    }

    #[test]
    fn chains_match_a_value_scan() {
        for h in fixtures::all_valid() {
            for kind in IdealKind::ALL {
                for den in [1, 3] {
                    let fam = h
                        .enumerate_fuzzy_ideals(kind, &Config::with_denominator(den))
                        .unwrap();
                    assert_eq!(fam.len(), count_by_scan(&h, kind, den), "{} {kind}", h.name());
                    for m in fam.members() {
                        assert!(m.is_fuzzy_ideal(&h, kind, Method::Direct).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let h = fixtures::z2_field();
        let config = Config { fuzzy_budget: 10, ..Config::with_denominator(20) };
        assert!(matches!(h.enumerate_fuzzy_h_ideals(&config), Err(Error::Capacity(_))));
    }

    #[test]
    fn cached_products_match_direct_evaluation() {
        let h = fixtures::boolean();
        let fam = h.enumerate_fuzzy_h_ideals(&Config::with_denominator(2)).unwrap();
        for i in 0..fam.len() {
            for j in 0..fam.len() {
                let direct = h.h_intrinsic_product(&fam.members()[i], &fam.members()[j]).unwrap();
                assert_eq!(fam.intrinsic(&h, i, j), direct.numerators());
            }
        }
    }

    #[test]
    fn value_selections() {
        assert_eq!(decreasing_values(2, 2), vec![vec![2, 1], vec![2, 0], vec![1, 0]]);
        assert_eq!(decreasing_values(3, 1).len(), 4);
        assert_eq!(binomial(5, 2), 10);
    }
}
