use serde_json::{json, Value};

use crate::error::Result;
use crate::fuzzy::{two_valued_indicator, FuzzySubset, GridValue, Method, ProductOp};
use crate::hemiring::Hemiring;
use crate::subset::Subset;
use crate::subsets::IdealKind;

use super::context::{Ctx, Global};

/// A crisp subset built from literal subsets with the h-closure, product,
/// sum and intersection operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetExpr {
    Set(Subset),
    Hcl(Box<SetExpr>),
    Prod(Box<SetExpr>, Box<SetExpr>),
    Sum(Box<SetExpr>, Box<SetExpr>),
    Inter(Box<SetExpr>, Box<SetExpr>),
}

impl SetExpr {
    pub fn hcl(e: impl Into<SetExpr>) -> Self {
        SetExpr::Hcl(Box::new(e.into()))
    }

    pub fn prod(a: impl Into<SetExpr>, b: impl Into<SetExpr>) -> Self {
        SetExpr::Prod(Box::new(a.into()), Box::new(b.into()))
    }

    pub fn sum(a: impl Into<SetExpr>, b: impl Into<SetExpr>) -> Self {
        SetExpr::Sum(Box::new(a.into()), Box::new(b.into()))
    }

    pub fn inter(a: impl Into<SetExpr>, b: impl Into<SetExpr>) -> Self {
        SetExpr::Inter(Box::new(a.into()), Box::new(b.into()))
    }

    pub fn eval(&self, h: &Hemiring) -> Result<Subset> {
        Ok(match self {
            SetExpr::Set(s) => *s,
            SetExpr::Hcl(e) => h.h_closure(e.eval(h)?)?,
            SetExpr::Prod(a, b) => h.product_set(a.eval(h)?, b.eval(h)?)?,
            SetExpr::Sum(a, b) => h.sum_set(a.eval(h)?, b.eval(h)?)?,
            SetExpr::Inter(a, b) => a.eval(h)?.intersection(b.eval(h)?),
        })
    }

    pub fn render(&self, h: &Hemiring) -> String {
        match self {
            SetExpr::Set(s) if s.is_full() => "R".into(),
            SetExpr::Set(s) => format!("{{{}}}", h.render(*s)),
            SetExpr::Hcl(e) => format!("hcl({})", e.render(h)),
            SetExpr::Prod(a, b) => format!("{}·{}", a.render_operand(h), b.render_operand(h)),
            SetExpr::Sum(a, b) => format!("{}+{}", a.render_operand(h), b.render_operand(h)),
            SetExpr::Inter(a, b) => format!("{}∩{}", a.render_operand(h), b.render_operand(h)),
        }
    }

    fn render_operand(&self, h: &Hemiring) -> String {
        match self {
            SetExpr::Set(_) | SetExpr::Hcl(_) => self.render(h),
            _ => format!("({})", self.render(h)),
        }
    }
}

impl From<Subset> for SetExpr {
    fn from(s: Subset) -> Self {
        SetExpr::Set(s)
    }
}

/// A fuzzy subset built from literal ones with the three sup-of-min
/// operations and pointwise meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FuzzyExpr {
    Value(FuzzySubset),
    Op(ProductOp, Box<FuzzyExpr>, Box<FuzzyExpr>),
    Meet(Box<FuzzyExpr>, Box<FuzzyExpr>),
    /// `t` on the set, `s` elsewhere.
    Indicator { set: Subset, t: GridValue, s: GridValue },
}

impl FuzzyExpr {
    pub fn op(op: ProductOp, a: impl Into<FuzzyExpr>, b: impl Into<FuzzyExpr>) -> Self {
        FuzzyExpr::Op(op, Box::new(a.into()), Box::new(b.into()))
    }

    pub fn meet(a: impl Into<FuzzyExpr>, b: impl Into<FuzzyExpr>) -> Self {
        FuzzyExpr::Meet(Box::new(a.into()), Box::new(b.into()))
    }

    pub fn eval(&self, h: &Hemiring) -> Result<FuzzySubset> {
        Ok(match self {
            FuzzyExpr::Value(f) => f.clone(),
            FuzzyExpr::Op(op, a, b) => h.fuzzy_op(*op, &a.eval(h)?, &b.eval(h)?)?,
            FuzzyExpr::Meet(a, b) => a.eval(h)?.meet(&b.eval(h)?)?,
            FuzzyExpr::Indicator { set, t, s } => two_valued_indicator(*set, *t, *s)?,
        })
    }

    pub fn render(&self, h: &Hemiring) -> String {
        match self {
            FuzzyExpr::Value(f) => format!("[{}]", f.render(h)),
            FuzzyExpr::Op(op, a, b) => format!("({} {} {})", a.render(h), op.symbol(), b.render(h)),
            FuzzyExpr::Meet(a, b) => format!("({} ∧ {})", a.render(h), b.render(h)),
            FuzzyExpr::Indicator { set, t, s } => format!("ind({{{}}}; {t}, {s})", h.render(*set)),
        }
    }
}

impl From<FuzzySubset> for FuzzyExpr {
    fn from(f: FuzzySubset) -> Self {
        FuzzyExpr::Value(f)
    }
}

impl From<&FuzzySubset> for FuzzyExpr {
    fn from(f: &FuzzySubset) -> Self {
        FuzzyExpr::Value(f.clone())
    }
}

/// Properties of a single crisp ideal, relative to the family of its kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrispProperty {
    Prime,
    PrimeElementwise,
    /// `ab ∈ P ⟹ a ∈ P or b ∈ P`.
    PrimeProductForm,
    Semiprime,
    SemiprimeElementwise,
    /// `a² ∈ P ⟹ a ∈ P`.
    SemiprimeSquareForm,
    Irreducible,
    HIdempotent,
    /// Some proper irreducible member contains it.
    IrreducibleAbove,
    /// Some proper prime member contains it.
    PrimeAbove,
    /// It equals the intersection of the prime members containing it.
    IntersectionOfPrimes,
}

impl CrispProperty {
    fn name(self) -> &'static str {
        match self {
            CrispProperty::Prime => "prime",
            CrispProperty::PrimeElementwise => "prime-elementwise",
            CrispProperty::PrimeProductForm => "prime-product-form",
            CrispProperty::Semiprime => "semiprime",
            CrispProperty::SemiprimeElementwise => "semiprime-elementwise",
            CrispProperty::SemiprimeSquareForm => "semiprime-square-form",
            CrispProperty::Irreducible => "irreducible",
            CrispProperty::HIdempotent => "h-idempotent",
            CrispProperty::IrreducibleAbove => "has-irreducible-above",
            CrispProperty::PrimeAbove => "has-prime-above",
            CrispProperty::IntersectionOfPrimes => "intersection-of-primes",
        }
    }
}

/// Properties of a single fuzzy subset, relative to the grid family of
/// fuzzy h-ideals. Anything that is not a non-constant member has none of
/// them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FuzzyProperty {
    Prime,
    PrimeLevels,
    Semiprime,
    SemiprimeLevels,
    HPrime,
    HSemiprime,
    Irreducible,
    Idempotent,
    /// `δ(ab) = δ(a) ∨ δ(b)`.
    ProductForm,
    /// `δ(a²) = δ(a)`.
    SquareForm,
    /// Some irreducible h-prime member `δ ≥ λ` has `δ(a) = λ(a)`.
    PrimeAboveAt(usize),
    /// It equals the meet of the h-prime members above it.
    MeetOfHPrimes,
}

impl FuzzyProperty {
    fn name(self) -> String {
        match self {
            FuzzyProperty::Prime => "prime".into(),
            FuzzyProperty::PrimeLevels => "prime-levels".into(),
            FuzzyProperty::Semiprime => "semiprime".into(),
            FuzzyProperty::SemiprimeLevels => "semiprime-levels".into(),
            FuzzyProperty::HPrime => "h-prime".into(),
            FuzzyProperty::HSemiprime => "h-semiprime".into(),
            FuzzyProperty::Irreducible => "irreducible".into(),
            FuzzyProperty::Idempotent => "idempotent".into(),
            FuzzyProperty::ProductForm => "product-form".into(),
            FuzzyProperty::SquareForm => "square-form".into(),
            FuzzyProperty::PrimeAboveAt(_) => "irreducible-h-prime-above".into(),
            FuzzyProperty::MeetOfHPrimes => "meet-of-h-primes".into(),
        }
    }
}

/// One checkable claim together with the truth value it was found to have.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fact {
    SetEq { lhs: SetExpr, rhs: SetExpr, holds: bool },
    SetLeq { lhs: SetExpr, rhs: SetExpr, holds: bool },
    Ideal { kind: IdealKind, set: SetExpr, holds: bool },
    FuzzyEq { lhs: FuzzyExpr, rhs: FuzzyExpr, holds: bool },
    FuzzyLeq { lhs: FuzzyExpr, rhs: FuzzyExpr, holds: bool },
    FuzzyIdeal { kind: IdealKind, f: FuzzyExpr, method: Method, holds: bool },
    Crisp { property: CrispProperty, kind: IdealKind, set: Subset, holds: bool },
    Fuzzy { property: FuzzyProperty, f: FuzzySubset, holds: bool },
    /// The residual `max{I : A ∩ I ⊆ B}` exists among the h-ideals.
    Residual { a: Subset, b: Subset, holds: bool },
    Global { property: Global, holds: bool },
}

impl Fact {
    pub fn holds(&self) -> bool {
        match self {
            Fact::SetEq { holds, .. }
            | Fact::SetLeq { holds, .. }
            | Fact::Ideal { holds, .. }
            | Fact::FuzzyEq { holds, .. }
            | Fact::FuzzyLeq { holds, .. }
            | Fact::FuzzyIdeal { holds, .. }
            | Fact::Crisp { holds, .. }
            | Fact::Fuzzy { holds, .. }
            | Fact::Residual { holds, .. }
            | Fact::Global { holds, .. } => *holds,
        }
    }

    /// Recomputes the claim from scratch.
    pub(crate) fn evaluate(&self, ctx: &Ctx) -> Result<bool> {
        let h = ctx.h;
        Ok(match self {
            Fact::SetEq { lhs, rhs, .. } => lhs.eval(h)? == rhs.eval(h)?,
            Fact::SetLeq { lhs, rhs, .. } => lhs.eval(h)?.is_subset_of(rhs.eval(h)?),
            Fact::Ideal { kind, set, .. } => h.is_ideal(set.eval(h)?, *kind),
            Fact::FuzzyEq { lhs, rhs, .. } => lhs.eval(h)? == rhs.eval(h)?,
            Fact::FuzzyLeq { lhs, rhs, .. } => lhs.eval(h)?.leq(&rhs.eval(h)?)?,
            Fact::FuzzyIdeal { kind, f, method, .. } => f.eval(h)?.is_fuzzy_ideal(h, *kind, *method)?,
            Fact::Crisp { property, kind, set, .. } => ctx.crisp_property(*property, *kind, *set)?,
            Fact::Fuzzy { property, f, .. } => ctx.fuzzy_property(*property, f)?,
            Fact::Residual { a, b, .. } => {
                let fam = ctx.crisp(IdealKind::H)?;
                fam.lattice(h)?.residual(*a, *b).is_some()
            }
            Fact::Global { property, .. } => ctx.global(*property)?,
        })
    }

    pub fn to_json(&self, h: &Hemiring) -> Value {
        let sets = |name: &str, l: &SetExpr, r: &SetExpr| {
            json!({
                "fact": name,
                "lhs": l.render(h),
                "lhs_value": l.eval(h).map(|s| h.render(s)).unwrap_or_default(),
                "rhs": r.render(h),
                "rhs_value": r.eval(h).map(|s| h.render(s)).unwrap_or_default(),
                "holds": self.holds(),
            })
        };
        let fuzzies = |name: &str, l: &FuzzyExpr, r: &FuzzyExpr| {
            json!({
                "fact": name,
                "lhs": l.render(h),
                "lhs_value": l.eval(h).map(|f| f.render(h)).unwrap_or_default(),
                "rhs": r.render(h),
                "rhs_value": r.eval(h).map(|f| f.render(h)).unwrap_or_default(),
                "holds": self.holds(),
            })
        };
        match self {
            Fact::SetEq { lhs, rhs, .. } => sets("set-eq", lhs, rhs),
            Fact::SetLeq { lhs, rhs, .. } => sets("set-leq", lhs, rhs),
            Fact::FuzzyEq { lhs, rhs, .. } => fuzzies("fuzzy-eq", lhs, rhs),
            Fact::FuzzyLeq { lhs, rhs, .. } => fuzzies("fuzzy-leq", lhs, rhs),
            Fact::Ideal { kind, set, holds } => json!({
                "fact": "ideal",
                "kind": kind.name(),
                "set": set.render(h),
                "value": set.eval(h).map(|s| h.render(s)).unwrap_or_default(),
                "holds": holds,
            }),
            Fact::FuzzyIdeal { kind, f, method, holds } => json!({
                "fact": "fuzzy-ideal",
                "kind": kind.name(),
                "method": match method { Method::Direct => "direct", Method::Levels => "levels" },
                "f": f.render(h),
                "holds": holds,
            }),
            Fact::Crisp { property, kind, set, holds } => json!({
                "fact": property.name(),
                "kind": kind.name(),
                "set": h.render(*set),
                "holds": holds,
            }),
            Fact::Fuzzy { property, f, holds } => {
                let mut v = json!({ "fact": property.name(), "f": f.render(h), "holds": holds });
                if let FuzzyProperty::PrimeAboveAt(a) = property {
                    v["at"] = json!(h.element_name(*a));
                }
                v
            }
            Fact::Residual { a, b, holds } => json!({
                "fact": "residual",
                "a": h.render(*a),
                "b": h.render(*b),
                "holds": holds,
            }),
            Fact::Global { property, holds } => json!({ "fact": property.name(), "holds": holds }),
        }
    }
}

/// Facts that jointly contradict a statement on one structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub facts: Vec<Fact>,
}

impl Witness {
    pub fn new(facts: Vec<Fact>) -> Self {
        Witness { facts }
    }

    pub fn to_json(&self, h: &Hemiring) -> Value {
        Value::Array(self.facts.iter().map(|f| f.to_json(h)).collect())
    }

    /// Re-evaluates every fact; true when each has its recorded value.
    pub fn replay(&self, h: &Hemiring, config: &crate::config::Config) -> Result<bool> {
        let ctx = Ctx::new(h, config);
        for fact in &self.facts {
            if fact.evaluate(&ctx)? != fact.holds() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Config;
    use crate::fixtures;

    #[test]
    fn expressions_render_with_names() {
        let h = fixtures::absorbing();
        let a = h.parse_subset("0,a").unwrap();
        let e = SetExpr::hcl(SetExpr::prod(a, h.full()));
        assert_eq!(e.render(&h), "hcl({0,a}·R)");
        assert_eq!(e.eval(&h).unwrap(), h.full());
    }

    #[test]
    fn replay_detects_a_wrong_fact() {
        let h = fixtures::z2_null();
        let config = Config::with_denominator(2);
        let good = Witness::new(vec![Fact::SetEq {
            lhs: SetExpr::hcl(SetExpr::prod(h.full(), h.full())),
            rhs: h.zero_set().into(),
            holds: true,
        }]);
        assert!(good.replay(&h, &config).unwrap());
        let bad = Witness::new(vec![Fact::Crisp {
            property: CrispProperty::HIdempotent,
            kind: IdealKind::H,
            set: h.full(),
            holds: true,
        }]);
        assert!(!bad.replay(&h, &config).unwrap());
    }
}
