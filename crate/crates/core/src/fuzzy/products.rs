use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hemiring::Hemiring;
use crate::subset::Subset;

use super::FuzzySubset;

/// The three sup-of-min operations on fuzzy subsets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProductOp {
    /// `∘_h`: one product term on each side, `x + a₁b₁ + y = a₂b₂ + y`.
    Product,
    /// `⊙_h`: non-empty sums of product terms on each side.
    Intrinsic,
    /// `+_h`: one sum term on each side, `x + (a₁+b₁) + y = (a₂+b₂) + y`.
    Sum,
}

impl ProductOp {
    pub const ALL: [ProductOp; 3] = [ProductOp::Product, ProductOp::Intrinsic, ProductOp::Sum];

    pub fn name(self) -> &'static str {
        match self {
            ProductOp::Product => "product",
            ProductOp::Intrinsic => "intrinsic",
            ProductOp::Sum => "sum",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            ProductOp::Product => "∘",
            ProductOp::Intrinsic => "⊙",
            ProductOp::Sum => "+",
        }
    }
}

impl fmt::Display for ProductOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProductOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ProductOp::ALL
            .into_iter()
            .find(|op| op.name() == s)
            .ok_or_else(|| Error::Input(format!("unknown fuzzy operation {s:?}")))
    }
}

impl Hemiring {
    fn check_fuzzy_pair(&self, lambda: &FuzzySubset, mu: &FuzzySubset) -> Result<()> {
        lambda.check_parent(self)?;
        mu.check_parent(self)?;
        if lambda.denominator() != mu.denominator() {
            return Err(Error::ParentMismatch(format!(
                "grids {} and {} differ",
                lambda.denominator(),
                mu.denominator()
            )));
        }
        Ok(())
    }

    /// `λ ∘_h μ`.
    pub fn h_product(&self, lambda: &FuzzySubset, mu: &FuzzySubset) -> Result<FuzzySubset> {
        self.fuzzy_op(ProductOp::Product, lambda, mu)
    }

    /// `λ ⊙_h μ`.
    pub fn h_intrinsic_product(&self, lambda: &FuzzySubset, mu: &FuzzySubset) -> Result<FuzzySubset> {
        self.fuzzy_op(ProductOp::Intrinsic, lambda, mu)
    }

    /// `λ +_h μ`.
    pub fn h_sum(&self, lambda: &FuzzySubset, mu: &FuzzySubset) -> Result<FuzzySubset> {
        self.fuzzy_op(ProductOp::Sum, lambda, mu)
    }

    /// Evaluates `op` by level cuts: the value at `x` is the largest threshold
    /// `t ∈ Im λ ∪ Im μ ∪ {0}` whose crisp counterpart contains `x`.
    pub fn fuzzy_op(&self, op: ProductOp, lambda: &FuzzySubset, mu: &FuzzySubset) -> Result<FuzzySubset> {
        self.check_fuzzy_pair(lambda, mu)?;
        Ok(self.fuzzy_op_raw(op, lambda, mu))
    }

    pub(crate) fn fuzzy_op_raw(&self, op: ProductOp, lambda: &FuzzySubset, mu: &FuzzySubset) -> FuzzySubset {
        let n = self.order();
        let mut thresholds: Vec<u32> =
            lambda.numerators().iter().chain(mu.numerators()).copied().chain([0]).collect();
        thresholds.sort_unstable_by(|a, b| b.cmp(a));
        thresholds.dedup();

        let mut values = vec![0; n];
        let mut pending = Subset::full(n);
        for t in thresholds {
            if t == 0 || pending.is_empty() {
                break;
            }
            let cut = self.crisp_op(op, lambda.level_set_num(t), mu.level_set_num(t));
            for x in cut.intersection(pending) {
                values[x] = t;
            }
            pending = pending.difference(cut);
        }
        FuzzySubset::new(lambda.denominator(), values)
    }

    /// The crisp set behind one level cut.
    pub(crate) fn crisp_op(&self, op: ProductOp, a: Subset, b: Subset) -> Subset {
        match op {
            ProductOp::Product => self.h_closure_raw(self.mul_set_raw(a, b)),
            ProductOp::Intrinsic => self.h_closure_raw(self.product_set_raw(a, b)),
            ProductOp::Sum => self.h_closure_raw(self.sum_set_raw(a, b)),
        }
    }

    /// Evaluates the sup-of-min definition of `op` literally.
    ///
    /// Each side of a representation is explored as states `(value, m)`:
    /// the element a term (or sum of terms) evaluates to and the minimum
    /// membership over its factors. States are saturated under the allowed
    /// term sums, then every pair of states and every `y` is tried.
    pub fn oracle_product(&self, op: ProductOp, lambda: &FuzzySubset, mu: &FuzzySubset) -> Result<FuzzySubset> {
        self.check_fuzzy_pair(lambda, mu)?;
        let n = self.order();
        let add = |x: usize, y: usize| self.tables().add[x][y];
        let mul = |x: usize, y: usize| self.tables().mul[x][y];

        let mut terms: BTreeSet<(usize, u32)> = BTreeSet::new();
        for a in 0..n {
            for b in 0..n {
                let m = lambda.num(a).min(mu.num(b));
                let v = match op {
                    ProductOp::Product | ProductOp::Intrinsic => mul(a, b),
                    ProductOp::Sum => add(a, b),
                };
                terms.insert((v, m));
            }
        }

        let mut states = terms.clone();
        if op == ProductOp::Intrinsic {
            let mut queue: Vec<(usize, u32)> = states.iter().copied().collect();
            while let Some((s, m)) = queue.pop() {
                for &(p, m2) in &terms {
                    let next = (add(s, p), m.min(m2));
                    if states.insert(next) {
                        queue.push(next);
                    }
                }
            }
        }

        let mut values = vec![0u32; n];
        for (x, value) in values.iter_mut().enumerate() {
            for &(s, m) in &states {
                for &(s2, m2) in &states {
                    let m = m.min(m2);
                    if m <= *value {
                        continue;
                    }
                    if (0..n).any(|y| add(add(x, s), y) == add(s2, y)) {
                        *value = m;
                    }
                }
            }
        }
        Ok(FuzzySubset::new(lambda.denominator(), values))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::fuzzy::GridValue;

    fn all_ops_agree(h: &Hemiring, l: &FuzzySubset, m: &FuzzySubset) {
        for op in ProductOp::ALL {
            assert_eq!(
                h.fuzzy_op(op, l, m).unwrap(),
                h.oracle_product(op, l, m).unwrap(),
                "{op} on {}",
                h.name()
            );
        }
    }

    #[test]
    fn zero_operand_gives_zero() {
        for h in fixtures::all_valid() {
            let n = h.order();
            let zero = FuzzySubset::new(4, vec![0; n]);
            let lam = FuzzySubset::new(4, (0..n).map(|x| 4 - x as u32 % 5).collect());
            for op in ProductOp::ALL {
                assert_eq!(h.fuzzy_op(op, &lam, &zero).unwrap(), zero);
                assert_eq!(h.oracle_product(op, &lam, &zero).unwrap(), zero);
            }
        }
    }

    #[test]
    fn z2_field_examples() {
        let h = fixtures::z2_field();
        let lam = FuzzySubset::new(2, vec![2, 1]);
        assert_eq!(h.h_product(&lam, &lam).unwrap(), lam);
        assert_eq!(h.h_intrinsic_product(&lam, &lam).unwrap(), lam);
        all_ops_agree(&h, &lam, &lam);

        let chi0 = FuzzySubset::characteristic(h.zero_set(), 1);
        assert_eq!(h.h_sum(&chi0, &chi0).unwrap(), chi0);
    }

    #[test]
    fn constants_combine_to_their_minimum() {
        for h in fixtures::all_valid() {
            let n = h.order();
            let c = FuzzySubset::constant(n, GridValue::new(3, 4).unwrap());
            let d = FuzzySubset::constant(n, GridValue::new(1, 4).unwrap());
            assert_eq!(h.h_sum(&c, &d).unwrap(), d);
            all_ops_agree(&h, &c, &d);
        }
    }

    #[test]
    fn characteristic_functions_follow_the_crisp_product() {
        for h in fixtures::all_valid() {
            let n = h.order();
            for a in Subset::all_nonempty(n) {
                for b in Subset::all_nonempty(n) {
                    let (ca, cb) = (FuzzySubset::characteristic(a, 1), FuzzySubset::characteristic(b, 1));
                    let expect = FuzzySubset::characteristic(h.h_closure_raw(h.product_set_raw(a, b)), 1);
                    assert_eq!(h.h_intrinsic_product(&ca, &cb).unwrap(), expect);
                    assert!(h.h_product(&ca, &cb).unwrap().leq_raw(&expect));
                    all_ops_agree(&h, &ca, &cb);
                }
            }
        }
    }

    #[test]
    fn nondistributive_printed_tables() {
        let h = fixtures::nondistributive_quarantined();
        let [(_, lambda), (_, mu), _] = fixtures::nondistributive_fuzzy();
        let got = h.h_intrinsic_product(&lambda, &mu).unwrap();
        assert_eq!(got, h.oracle_product(ProductOp::Intrinsic, &lambda, &mu).unwrap());
        assert_ne!(got, fixtures::nondistributive_claimed_product());
    }

    #[test]
    fn mismatched_grids_are_rejected() {
        let h = fixtures::z2_field();
        let a = FuzzySubset::new(2, vec![2, 1]);
        let b = FuzzySubset::new(4, vec![4, 1]);
        assert!(matches!(h.h_sum(&a, &b), Err(Error::ParentMismatch(_))));
        let c = FuzzySubset::new(2, vec![2, 1, 0]);
        assert!(matches!(h.h_sum(&a, &c), Err(Error::ParentMismatch(_))));
    }
}
