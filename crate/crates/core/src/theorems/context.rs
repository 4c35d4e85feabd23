use std::cell::RefCell;
use std::collections::BTreeMap;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::fuzzy::{FuzzyFamily, FuzzySubset, ProductOp};
use crate::hemiring::Hemiring;
use crate::subset::Subset;
use crate::subsets::{IdealFamily, IdealKind};

use super::evidence::{CrispProperty, Fact, FuzzyExpr, FuzzyProperty, SetExpr};

/// Largest order for which every subset is scanned.
const SUBSET_SCAN_ORDER: usize = 12;
/// Largest number of pairs scanned exhaustively.
const PAIR_LIMIT: usize = 1 << 16;
/// Largest number of triples scanned exhaustively.
const TRIPLE_LIMIT: usize = 1 << 22;

/// How much of a quantifier's range was covered.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Coverage {
    pub exhaustive: bool,
    pub count: usize,
}

/// What a check quantified over.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Scope {
    pub denominator: u32,
    /// Family sizes by name, e.g. `"h"` or `"fuzzy-left-h"`.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub families: BTreeMap<String, usize>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub coverage: BTreeMap<String, Coverage>,
    /// Verdicts on fuzzy families hold relative to the enumerated grid.
    pub grid_relative: bool,
    /// Truth values of the sides of an equivalence, in statement order.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub sides: Vec<bool>,
}

/// Structure-wide properties; each has a failure search in [`Ctx`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Global {
    Hemiregular,
    Commutative,
    HasIdentity,
    AllHIdempotent,
    AllFuzzyIdempotent,
    /// `hcl(AB) = A ∩ B` for `A` of the left kind and `B` of the right kind.
    CrispProductIsMeet { left: IdealKind, right: IdealKind },
    /// `λ op μ = λ ∧ μ` over the grid families of the two kinds.
    FuzzyOpIsMeet { op: ProductOp, left: IdealKind, right: IdealKind },
    ElementsInRxRxR,
    SubsetsInRARAR,
    IdealsAreRARAR,
    ProperIntersectionsOfPrimes,
    ProperHIdealsSemiprime,
    NonConstantFuzzySemiprime,
    FuzzyMeetsOfHPrimes,
    /// Closure under `+_h`, `⊙_h = ∧` and the distributive identity.
    FuzzyLatticeLaws,
}

impl Global {
    pub fn name(self) -> String {
        match self {
            Global::Hemiregular => "h-hemiregular".into(),
            Global::Commutative => "commutative".into(),
            Global::HasIdentity => "has-identity".into(),
            Global::AllHIdempotent => "all-h-ideals-h-idempotent".into(),
            Global::AllFuzzyIdempotent => "all-fuzzy-h-ideals-idempotent".into(),
            Global::CrispProductIsMeet { left, right } => {
                format!("hcl(AB)=A∩B for {left} A and {right} B")
            }
            Global::FuzzyOpIsMeet { op, left, right } => {
                format!("λ{}μ=λ∧μ for fuzzy {left} λ and fuzzy {right} μ", op.symbol())
            }
            Global::ElementsInRxRxR => "x∈hcl(RxRxR) for all x".into(),
            Global::SubsetsInRARAR => "A⊆hcl(RARAR) for non-empty A".into(),
            Global::IdealsAreRARAR => "A=hcl(RARAR) for h-ideals A".into(),
            Global::ProperIntersectionsOfPrimes => "proper h-ideals are intersections of primes".into(),
            Global::ProperHIdealsSemiprime => "proper h-ideals are semiprime".into(),
            Global::NonConstantFuzzySemiprime => "non-constant fuzzy h-ideals are semiprime".into(),
            Global::FuzzyMeetsOfHPrimes => "fuzzy h-ideals are meets of h-primes above them".into(),
            Global::FuzzyLatticeLaws => "fuzzy h-ideals form a distributive lattice under +h and ⊙h=∧".into(),
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct CrispFlags {
    prime: bool,
    semiprime: bool,
    irreducible: bool,
    h_idempotent: bool,
}

#[derive(Default)]
struct FuzzyFlags {
    h_prime: OnceLock<bool>,
    h_semiprime: OnceLock<bool>,
    irreducible: OnceLock<bool>,
}

fn slot(kind: IdealKind) -> usize {
    match kind {
        IdealKind::H => 0,
        IdealKind::LeftH => 1,
        IdealKind::RightH => 2,
        other => unreachable!("no cached family for {other} ideals"),
    }
}

fn fnv1a(text: &str) -> u64 {
    text.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3))
}

/// Cached enumerations for one structure, shared by the checks run on it.
pub(crate) struct Ctx<'a> {
    pub h: &'a Hemiring,
    pub config: &'a Config,
    crisp: [OnceLock<Result<IdealFamily>>; 3],
    crisp_flags: [OnceLock<Vec<CrispFlags>>; 3],
    fuzzy: [OnceLock<Result<FuzzyFamily>>; 3],
    fuzzy_flags: OnceLock<Vec<FuzzyFlags>>,
    fuzzy_universe: OnceLock<(Vec<FuzzySubset>, bool)>,
    scope: RefCell<Scope>,
}

impl<'a> Ctx<'a> {
    pub fn new(h: &'a Hemiring, config: &'a Config) -> Self {
        Ctx {
            h,
            config,
            crisp: Default::default(),
            crisp_flags: Default::default(),
            fuzzy: Default::default(),
            fuzzy_flags: OnceLock::new(),
            fuzzy_universe: OnceLock::new(),
            scope: RefCell::new(Scope::default()),
        }
    }

    /// Starts recording the scope of a new check.
    pub fn begin(&self) {
        *self.scope.borrow_mut() = Scope { denominator: self.config.denominator, ..Scope::default() };
    }

    pub fn take_scope(&self) -> Scope {
        self.scope.take()
    }

    pub fn record_sides(&self, sides: &[bool]) {
        self.scope.borrow_mut().sides = sides.to_vec();
    }

    fn record_family(&self, name: String, size: usize) {
        self.scope.borrow_mut().families.insert(name, size);
    }

    fn record_coverage(&self, name: &str, exhaustive: bool, count: usize) {
        self.scope.borrow_mut().coverage.insert(name.into(), Coverage { exhaustive, count });
    }

    pub fn rng(&self, tag: &str) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.config.seed ^ fnv1a(&format!("{}/{tag}", self.h.name())))
    }

    // ---- families ----

    pub fn crisp(&self, kind: IdealKind) -> Result<&IdealFamily> {
        let fam = self.crisp[slot(kind)]
            .get_or_init(|| self.h.enumerate_ideals(kind, self.config))
            .as_ref()
            .map_err(Error::duplicate)?;
        self.record_family(kind.name().into(), fam.len());
        Ok(fam)
    }

    pub fn fuzzy(&self, kind: IdealKind) -> Result<&FuzzyFamily> {
        let fam = self.fuzzy[slot(kind)]
            .get_or_init(|| {
                let crisp = self.crisp(kind)?.clone();
                self.h.fuzzy_family_from(crisp, self.config.denominator, self.config.fuzzy_budget)
            })
            .as_ref()
            .map_err(Error::duplicate)?;
        self.record_family(format!("fuzzy-{}", kind.name()), fam.len());
        self.scope.borrow_mut().grid_relative = true;
        Ok(fam)
    }

    fn flags(&self, kind: IdealKind) -> Result<&[CrispFlags]> {
        let fam = self.crisp(kind)?;
        let h = self.h;
        Ok(self.crisp_flags[slot(kind)].get_or_init(|| {
            fam.members
                .iter()
                .map(|&p| CrispFlags {
                    prime: h.prime_failure(p, &fam.members).is_none(),
                    semiprime: h.semiprime_failure(p, &fam.members).is_none(),
                    irreducible: h.irreducible_failure(p, &fam.members).is_none(),
                    h_idempotent: h.h_closure_raw(h.product_set_raw(p, p)) == p,
                })
                .collect()
        }))
    }

    fn member_flags(&self, kind: IdealKind, p: Subset) -> Result<Option<CrispFlags>> {
        let fam = self.crisp(kind)?;
        let flags = self.flags(kind)?;
        Ok(fam.members.iter().position(|&m| m == p).map(|i| flags[i]))
    }

    // ---- universes ----

    /// Non-empty subsets to quantify "any subset" over: all of them on small
    /// carriers, otherwise a seeded sample.
    pub fn subsets(&self) -> Vec<Subset> {
        let n = self.h.order();
        let tag = "non-empty-subsets";
        let out: Vec<Subset> = if n <= SUBSET_SCAN_ORDER {
            Subset::all_nonempty(n).collect()
        } else {
            let mut rng = self.rng(tag);
            let full = self.h.full().mask();
            (0..self.config.samples)
                .map(|_| Subset::from_mask(n, (rng.gen::<u64>() & full).max(1)))
                .collect()
        };
        self.record_coverage(tag, n <= SUBSET_SCAN_ORDER, out.len());
        out
    }

    /// Index pairs into a list of `len` items: all pairs, or a seeded sample.
    pub fn pairs(&self, tag: &str, len: usize) -> Vec<(usize, usize)> {
        let exhaustive = len.saturating_mul(len) <= PAIR_LIMIT;
        let out: Vec<(usize, usize)> = if exhaustive {
            (0..len).flat_map(|i| (0..len).map(move |j| (i, j))).collect()
        } else {
            let mut rng = self.rng(tag);
            (0..self.config.samples).map(|_| (rng.gen_range(0..len), rng.gen_range(0..len))).collect()
        };
        self.record_coverage(tag, exhaustive, out.len());
        out
    }

    /// Grid fuzzy subsets: all of them when few enough, otherwise a seeded
    /// sample.
    pub fn fuzzy_universe(&self) -> &[FuzzySubset] {
        let (list, exhaustive) = self.fuzzy_universe.get_or_init(|| {
            let n = self.h.order();
            let den = self.config.denominator;
            let total = (den as u128 + 1).checked_pow(n as u32);
            if total.is_some_and(|t| t <= self.config.exhaustive_fuzzy_limit as u128) {
                let mut out = Vec::new();
                let mut values = vec![0u32; n];
                loop {
                    out.push(FuzzySubset::new(den, values.clone()));
                    let Some(i) = values.iter().position(|&v| v < den) else { break };
                    values[i] += 1;
                    values[..i].iter_mut().for_each(|v| *v = 0);
                }
                (out, true)
            } else {
                let mut rng = self.rng("fuzzy-subsets");
                let out = (0..self.config.samples)
                    .map(|_| FuzzySubset::new(den, (0..n).map(|_| rng.gen_range(0..=den)).collect()))
                    .collect();
                (out, false)
            }
        });
        self.record_coverage("fuzzy-subsets", *exhaustive, list.len());
        list
    }

    // ---- property evaluation ----

    pub fn crisp_property(&self, property: CrispProperty, kind: IdealKind, p: Subset) -> Result<bool> {
        let h = self.h;
        let flags = self.member_flags(kind, p)?;
        let proper = !p.is_full();
        Ok(match property {
            CrispProperty::Prime => flags.is_some_and(|f| f.prime),
            CrispProperty::PrimeElementwise => h.prime_failure_elementwise(p).is_none(),
            CrispProperty::PrimeProductForm => {
                proper && self.pairs_of_elements().all(|(a, b)| !p.contains(h.mul(a, b)) || p.contains(a) || p.contains(b))
            }
            CrispProperty::Semiprime => flags.is_some_and(|f| f.semiprime),
            CrispProperty::SemiprimeElementwise => h.semiprime_failure_elementwise(p).is_none(),
            CrispProperty::SemiprimeSquareForm => {
                proper && (0..h.order()).all(|a| !p.contains(h.mul(a, a)) || p.contains(a))
            }
            CrispProperty::Irreducible => flags.is_some_and(|f| f.irreducible),
            CrispProperty::HIdempotent => flags.is_some_and(|f| f.h_idempotent),
            CrispProperty::IrreducibleAbove => self.member_above(kind, p, |f| f.irreducible)?.is_some(),
            CrispProperty::PrimeAbove => self.member_above(kind, p, |f| f.prime)?.is_some(),
            CrispProperty::IntersectionOfPrimes => self.prime_cover(kind, p)? == p,
        })
    }

    fn pairs_of_elements(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.h.order();
        (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)))
    }

    /// A proper member containing `p` with the given flag.
    fn member_above(&self, kind: IdealKind, p: Subset, pick: impl Fn(&CrispFlags) -> bool) -> Result<Option<Subset>> {
        let fam = self.crisp(kind)?;
        let flags = self.flags(kind)?;
        Ok(fam
            .members
            .iter()
            .zip(flags)
            .find(|(q, f)| !q.is_full() && p.is_subset_of(**q) && pick(f))
            .map(|(q, _)| *q))
    }

    /// Intersection of the prime members containing `p` (the carrier when
    /// there are none).
    pub fn prime_cover(&self, kind: IdealKind, p: Subset) -> Result<Subset> {
        let fam = self.crisp(kind)?;
        let flags = self.flags(kind)?;
        Ok(fam
            .members
            .iter()
            .zip(flags)
            .filter(|(q, f)| f.prime && p.is_subset_of(**q))
            .fold(self.h.full(), |acc, (q, _)| acc.intersection(*q)))
    }

    fn fuzzy_flags(&self) -> Result<&[FuzzyFlags]> {
        let fam = self.fuzzy(IdealKind::H)?;
        Ok(self.fuzzy_flags.get_or_init(|| (0..fam.len()).map(|_| FuzzyFlags::default()).collect()))
    }

    pub fn h_prime(&self, i: usize) -> Result<bool> {
        let fam = self.fuzzy(IdealKind::H)?;
        let d = &fam.members()[i];
        Ok(*self.fuzzy_flags()?[i]
            .h_prime
            .get_or_init(|| !d.is_constant() && self.h.h_prime_failure(d, fam).is_none()))
    }

    pub fn h_semiprime(&self, i: usize) -> Result<bool> {
        let fam = self.fuzzy(IdealKind::H)?;
        let d = &fam.members()[i];
        Ok(*self.fuzzy_flags()?[i]
            .h_semiprime
            .get_or_init(|| !d.is_constant() && self.h.h_semiprime_failure(d, fam).is_none()))
    }

    pub fn fuzzy_irreducible(&self, i: usize) -> Result<bool> {
        let fam = self.fuzzy(IdealKind::H)?;
        let d = &fam.members()[i];
        Ok(*self.fuzzy_flags()?[i]
            .irreducible
            .get_or_init(|| !d.is_constant() && self.h.fuzzy_irreducible_failure(d, fam).is_none()))
    }

    /// Meet of the non-constant h-prime members above `λ` (constant 1 when
    /// there are none).
    pub fn h_prime_cover(&self, lambda: &FuzzySubset) -> Result<FuzzySubset> {
        let fam = self.fuzzy(IdealKind::H)?;
        let den = fam.den;
        let mut acc = FuzzySubset::new(den, vec![den; self.h.order()]);
        for (i, d) in fam.non_constant() {
            if lambda.leq_raw(d) && self.h_prime(i)? {
                acc = acc.meet_raw(d);
            }
        }
        Ok(acc)
    }

    /// An irreducible h-prime member `δ ≥ λ` with `δ(a) = λ(a)`.
    pub fn prime_above_at(&self, lambda: &FuzzySubset, a: usize) -> Result<Option<usize>> {
        let fam = self.fuzzy(IdealKind::H)?;
        for (i, d) in fam.non_constant() {
            if lambda.leq_raw(d) && d.num(a) == lambda.num(a) && self.fuzzy_irreducible(i)? && self.h_prime(i)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    pub fn fuzzy_property(&self, property: FuzzyProperty, f: &FuzzySubset) -> Result<bool> {
        let h = self.h;
        let fam = self.fuzzy(IdealKind::H)?;
        if f.order() != h.order() || f.denominator() != fam.den {
            return Ok(false);
        }
        let Some(i) = fam.index_of(f) else { return Ok(false) };
        if property == FuzzyProperty::MeetOfHPrimes {
            return Ok(self.h_prime_cover(f)? == *f);
        }
        if f.is_constant() {
            return Ok(false);
        }
        Ok(match property {
            FuzzyProperty::Prime => h.prime2_failure(f).is_none(),
            FuzzyProperty::PrimeLevels => h.level_failure(f, fam, false).is_none(),
            FuzzyProperty::Semiprime => h.semiprime2_failure(f).is_none(),
            FuzzyProperty::SemiprimeLevels => h.level_failure(f, fam, true).is_none(),
            FuzzyProperty::HPrime => self.h_prime(i)?,
            FuzzyProperty::HSemiprime => self.h_semiprime(i)?,
            FuzzyProperty::Irreducible => self.fuzzy_irreducible(i)?,
            FuzzyProperty::Idempotent => fam.intrinsic(h, i, i) == f.numerators(),
            FuzzyProperty::ProductForm => h.product_form_failure(f).is_none(),
            FuzzyProperty::SquareForm => h.square_form_failure(f).is_none(),
            FuzzyProperty::PrimeAboveAt(a) => self.prime_above_at(f, a)?.is_some(),
            FuzzyProperty::MeetOfHPrimes => unreachable!(),
        })
    }

    // ---- global properties ----

    pub fn global(&self, property: Global) -> Result<bool> {
        Ok(match property {
            Global::Hemiregular => self.h.is_h_hemiregular(),
            Global::Commutative => self.h.is_commutative(),
            Global::HasIdentity => self.h.identity().is_some(),
            Global::AllHIdempotent => self.h_idempotent_failure()?.is_none(),
            Global::AllFuzzyIdempotent => self.fuzzy_idempotent_failure()?.is_none(),
            Global::CrispProductIsMeet { left, right } => self.crisp_product_meet_failure(left, right)?.is_none(),
            Global::FuzzyOpIsMeet { op, left, right } => self.fuzzy_op_meet_failure(op, left, right)?.is_none(),
            Global::ElementsInRxRxR => self.rxrxr_failure().is_none(),
            Global::SubsetsInRARAR => self.rarar_subset_failure().is_none(),
            Global::IdealsAreRARAR => self.rarar_ideal_failure()?.is_none(),
            Global::ProperIntersectionsOfPrimes => self.prime_intersection_failure()?.is_none(),
            Global::ProperHIdealsSemiprime => self.proper_semiprime_failure()?.is_none(),
            Global::NonConstantFuzzySemiprime => self.fuzzy_semiprime_failure()?.is_none(),
            Global::FuzzyMeetsOfHPrimes => self.fuzzy_prime_meet_failure()?.is_none(),
            Global::FuzzyLatticeLaws => self.fuzzy_lattice_failure()?.is_none(),
        })
    }

    pub fn h_idempotent_failure(&self) -> Result<Option<Subset>> {
        let fam = self.crisp(IdealKind::H)?;
        let flags = self.flags(IdealKind::H)?;
        Ok(fam.members.iter().zip(flags).find(|(_, f)| !f.h_idempotent).map(|(p, _)| *p))
    }

    pub fn fuzzy_idempotent_failure(&self) -> Result<Option<usize>> {
        let fam = self.fuzzy(IdealKind::H)?;
        Ok((0..fam.len()).find(|&i| fam.intrinsic(self.h, i, i) != fam.members()[i].numerators()))
    }

    pub fn crisp_product_meet_failure(&self, left: IdealKind, right: IdealKind) -> Result<Option<(Subset, Subset)>> {
        let h = self.h;
        let (l, r) = (self.crisp(left)?, self.crisp(right)?);
        for &a in &l.members {
            for &b in &r.members {
                if h.h_closure_raw(h.product_set_raw(a, b)) != a.intersection(b) {
                    return Ok(Some((a, b)));
                }
            }
        }
        Ok(None)
    }

    pub fn fuzzy_op_meet_failure(
        &self,
        op: ProductOp,
        left: IdealKind,
        right: IdealKind,
    ) -> Result<Option<(FuzzySubset, FuzzySubset)>> {
        let h = self.h;
        let (l, r) = (self.fuzzy(left)?, self.fuzzy(right)?);
        let cached = op == ProductOp::Intrinsic && left == IdealKind::H && right == IdealKind::H;
        for (i, a) in l.members().iter().enumerate() {
            for (j, b) in r.members().iter().enumerate() {
                let meet = a.meet_raw(b);
                let same = if cached {
                    l.intrinsic(h, i, j) == meet.numerators()
                } else {
                    h.fuzzy_op_raw(op, a, b) == meet
                };
                if !same {
                    return Ok(Some((a.clone(), b.clone())));
                }
            }
        }
        Ok(None)
    }

    /// `hcl(R·A·R·A·R)`.
    pub fn rarar(&self, a: Subset) -> Subset {
        let h = self.h;
        let r = h.full();
        let ra = h.product_set_raw(r, a);
        let rar = h.product_set_raw(ra, r);
        let rara = h.product_set_raw(rar, a);
        h.h_closure_raw(h.product_set_raw(rara, r))
    }

    pub fn rarar_expr(&self, a: Subset) -> SetExpr {
        let r = self.h.full();
        SetExpr::hcl(SetExpr::prod(SetExpr::prod(SetExpr::prod(SetExpr::prod(r, a), r), a), r))
    }

    pub fn rxrxr_failure(&self) -> Option<usize> {
        let n = self.h.order();
        (0..n).find(|&x| !self.rarar(Subset::singleton(n, x)).contains(x))
    }

    pub fn rarar_subset_failure(&self) -> Option<Subset> {
        self.subsets().into_iter().find(|&a| !a.is_subset_of(self.rarar(a)))
    }

    pub fn rarar_ideal_failure(&self) -> Result<Option<Subset>> {
        Ok(self.crisp(IdealKind::H)?.members.iter().copied().find(|&a| self.rarar(a) != a))
    }

    pub fn prime_intersection_failure(&self) -> Result<Option<Subset>> {
        let fam = self.crisp(IdealKind::H)?;
        for p in fam.proper() {
            if self.prime_cover(IdealKind::H, p)? != p {
                return Ok(Some(p));
            }
        }
        Ok(None)
    }

    pub fn proper_semiprime_failure(&self) -> Result<Option<Subset>> {
        let fam = self.crisp(IdealKind::H)?;
        let flags = self.flags(IdealKind::H)?;
        Ok(fam
            .members
            .iter()
            .zip(flags)
            .find(|(p, f)| !p.is_full() && !f.semiprime)
            .map(|(p, _)| *p))
    }

    pub fn fuzzy_semiprime_failure(&self) -> Result<Option<usize>> {
        let fam = self.fuzzy(IdealKind::H)?;
        for (i, _) in fam.non_constant() {
            if !self.h_semiprime(i)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    pub fn fuzzy_prime_meet_failure(&self) -> Result<Option<usize>> {
        let fam = self.fuzzy(IdealKind::H)?;
        for (i, l) in fam.members().iter().enumerate() {
            if self.h_prime_cover(l)? != *l {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Facts refuting the lattice laws on the grid family, if any.
    pub fn fuzzy_lattice_failure(&self) -> Result<Option<Vec<Fact>>> {
        let h = self.h;
        let fam = self.fuzzy(IdealKind::H)?;
        if let Some((l, m)) = self.fuzzy_op_meet_failure(ProductOp::Intrinsic, IdealKind::H, IdealKind::H)? {
            return Ok(Some(vec![Fact::FuzzyEq {
                lhs: FuzzyExpr::op(ProductOp::Intrinsic, &l, &m),
                rhs: FuzzyExpr::meet(&l, &m),
                holds: false,
            }]));
        }
        let m = fam.len();
        let members = fam.members();
        let mut sum = vec![0usize; m * m];
        for i in 0..m {
            for j in 0..m {
                let s = h.fuzzy_op_raw(ProductOp::Sum, &members[i], &members[j]);
                match fam.index_of(&s) {
                    Some(k) => sum[i * m + j] = k,
                    None => {
                        return Ok(Some(vec![Fact::FuzzyIdeal {
                            kind: IdealKind::H,
                            f: FuzzyExpr::op(ProductOp::Sum, &members[i], &members[j]),
                            method: crate::fuzzy::Method::Direct,
                            holds: false,
                        }]))
                    }
                }
            }
        }
        // with ⊙ = ∧ the products are meets, which stay in the family
        let mut prod = vec![0usize; m * m];
        for i in 0..m {
            for j in 0..m {
                prod[i * m + j] = fam
                    .index_of(&members[i].meet_raw(&members[j]))
                    .ok_or_else(|| Error::Domain("family is not closed under meets".into()))?;
            }
        }
        let triples: Vec<(usize, usize, usize)> = if m.saturating_pow(3) <= TRIPLE_LIMIT {
            self.record_coverage("fuzzy-triples", true, m * m * m);
            (0..m).flat_map(|i| (0..m).flat_map(move |j| (0..m).map(move |k| (i, j, k)))).collect()
        } else {
            let mut rng = self.rng("fuzzy-triples");
            let count = self.config.samples * 100;
            self.record_coverage("fuzzy-triples", false, count);
            (0..count).map(|_| (rng.gen_range(0..m), rng.gen_range(0..m), rng.gen_range(0..m))).collect()
        };
        for (l, mu, d) in triples {
            let lhs = sum[prod[l * m + d] * m + mu];
            let rhs = prod[sum[l * m + mu] * m + sum[d * m + mu]];
            if lhs != rhs {
                let (l, mu, d) = (&members[l], &members[mu], &members[d]);
                return Ok(Some(vec![Fact::FuzzyEq {
                    lhs: FuzzyExpr::op(ProductOp::Sum, FuzzyExpr::op(ProductOp::Intrinsic, l, d), mu),
                    rhs: FuzzyExpr::op(
                        ProductOp::Intrinsic,
                        FuzzyExpr::op(ProductOp::Sum, l, mu),
                        FuzzyExpr::op(ProductOp::Sum, d, mu),
                    ),
                    holds: false,
                }]));
            }
        }
        Ok(None)
    }
}
