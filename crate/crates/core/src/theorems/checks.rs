use crate::error::Result;
use crate::fuzzy::{two_valued_indicator_raw, FuzzySubset, GridValue, Method, ProductOp};
use crate::subset::Subset;
use crate::subsets::IdealKind;

use super::context::{Ctx, Global};
use super::evidence::{CrispProperty, Fact, FuzzyExpr, FuzzyProperty, SetExpr};

pub(crate) enum Outcome {
    Holds,
    Vacuous(String),
    Fails(Vec<Fact>),
}

use Outcome::{Fails, Holds, Vacuous};

const H: IdealKind = IdealKind::H;
const LEFT: IdealKind = IdealKind::LeftH;
const RIGHT: IdealKind = IdealKind::RightH;
const ODOT: ProductOp = ProductOp::Intrinsic;

pub(crate) type Check = fn(&Ctx) -> Result<Outcome>;

pub(crate) fn lookup(id: &str) -> Option<Check> {
    Some(match id {
        "L2.1" => l2_1,
        "L2.2" => l2_2,
        "L2.3" => l2_3,
        "L2.5" => l2_5,
        "Transfer" => transfer,
        "P2.8" => p2_8,
        "P2.9" => p2_9,
        "T2.11" => t2_11,
        "P3.2" => p3_2,
        "T3.3" => t3_3,
        "T3.4" => t3_4,
        "C3.5" => c3_5,
        "P4.1" => p4_1,
        "C4.2" => c4_2,
        "P4.3" => p4_3,
        "C4.4" => c4_4,
        "T4.5" => t4_5,
        "T4.7" => t4_7,
        "T4.8" => t4_8,
        "C4.9" => c4_9,
        "T4.10" => t4_10,
        "T5.1" => t5_1,
        "C5.2" => c5_2,
        "C5.3" => c5_3,
        "T5.5" => t5_5,
        "C5.7" => c5_7,
        "P5.8" => p5_8,
        "T5.9" => t5_9,
        "T5.10" => t5_10,
        "C5.11" => c5_11,
        "T5.12" => t5_12,
        "T5.13" => t5_13,
        "L5.14" => l5_14,
        "T5.15" => t5_15,
        "T6.2" => t6_2,
        "C6.3" => c6_3,
        "T6.4" => t6_4,
        "T6.5" => t6_5,
        "T6.9" => t6_9,
        "C6.10" => c6_10,
        "P6.11" => p6_11,
        _ => return None,
    })
}

// ---- shared shapes ----

/// Concrete facts refuting a global property, when it has a small witness.
fn refutation(c: &Ctx, g: Global) -> Result<Vec<Fact>> {
    let h = c.h;
    Ok(match g {
        Global::AllHIdempotent => match c.h_idempotent_failure()? {
            Some(p) => vec![
                Fact::Ideal { kind: H, set: p.into(), holds: true },
                Fact::SetEq { lhs: SetExpr::hcl(SetExpr::prod(p, p)), rhs: p.into(), holds: false },
            ],
            None => vec![],
        },
        Global::AllFuzzyIdempotent => match c.fuzzy_idempotent_failure()? {
            Some(i) => {
                let f = &c.fuzzy(H)?.members()[i];
                vec![Fact::FuzzyEq { lhs: FuzzyExpr::op(ODOT, f, f), rhs: f.into(), holds: false }]
            }
            None => vec![],
        },
        Global::CrispProductIsMeet { left, right } => match c.crisp_product_meet_failure(left, right)? {
            Some((a, b)) => vec![
                Fact::Ideal { kind: left, set: a.into(), holds: true },
                Fact::Ideal { kind: right, set: b.into(), holds: true },
                Fact::SetEq { lhs: SetExpr::hcl(SetExpr::prod(a, b)), rhs: SetExpr::inter(a, b), holds: false },
            ],
            None => vec![],
        },
        Global::FuzzyOpIsMeet { op, left, right } => match c.fuzzy_op_meet_failure(op, left, right)? {
            Some((l, m)) => vec![
                Fact::FuzzyIdeal { kind: left, f: (&l).into(), method: Method::Direct, holds: true },
                Fact::FuzzyIdeal { kind: right, f: (&m).into(), method: Method::Direct, holds: true },
                Fact::FuzzyEq { lhs: FuzzyExpr::op(op, &l, &m), rhs: FuzzyExpr::meet(&l, &m), holds: false },
            ],
            None => vec![],
        },
        Global::ElementsInRxRxR => match c.rxrxr_failure() {
            Some(x) => {
                let s = Subset::singleton(h.order(), x);
                vec![Fact::SetLeq { lhs: s.into(), rhs: c.rarar_expr(s), holds: false }]
            }
            None => vec![],
        },
        Global::SubsetsInRARAR => match c.rarar_subset_failure() {
            Some(a) => vec![Fact::SetLeq { lhs: a.into(), rhs: c.rarar_expr(a), holds: false }],
            None => vec![],
        },
        Global::IdealsAreRARAR => match c.rarar_ideal_failure()? {
            Some(a) => vec![
                Fact::Ideal { kind: H, set: a.into(), holds: true },
                Fact::SetEq { lhs: a.into(), rhs: c.rarar_expr(a), holds: false },
            ],
            None => vec![],
        },
        Global::ProperIntersectionsOfPrimes => match c.prime_intersection_failure()? {
            Some(p) => vec![Fact::Crisp { property: CrispProperty::IntersectionOfPrimes, kind: H, set: p, holds: false }],
            None => vec![],
        },
        Global::ProperHIdealsSemiprime => match c.proper_semiprime_failure()? {
            Some(p) => vec![Fact::Crisp { property: CrispProperty::Semiprime, kind: H, set: p, holds: false }],
            None => vec![],
        },
        Global::NonConstantFuzzySemiprime => match c.fuzzy_semiprime_failure()? {
            Some(i) => {
                let f = c.fuzzy(H)?.members()[i].clone();
                vec![Fact::Fuzzy { property: FuzzyProperty::HSemiprime, f, holds: false }]
            }
            None => vec![],
        },
        Global::FuzzyMeetsOfHPrimes => match c.fuzzy_prime_meet_failure()? {
            Some(i) => {
                let f = c.fuzzy(H)?.members()[i].clone();
                vec![Fact::Fuzzy { property: FuzzyProperty::MeetOfHPrimes, f, holds: false }]
            }
            None => vec![],
        },
        Global::FuzzyLatticeLaws => c.fuzzy_lattice_failure()?.unwrap_or_default(),
        Global::Hemiregular | Global::Commutative | Global::HasIdentity => vec![],
    })
}

/// All listed properties hold together or fail together.
fn equivalent(c: &Ctx, props: &[Global]) -> Result<Outcome> {
    let values = props.iter().map(|&g| c.global(g)).collect::<Result<Vec<bool>>>()?;
    c.record_sides(&values);
    if values.iter().all(|&v| v == values[0]) {
        return Ok(Holds);
    }
    let mut facts: Vec<Fact> = props
        .iter()
        .zip(&values)
        .map(|(&property, &holds)| Fact::Global { property, holds })
        .collect();
    for (&g, &v) in props.iter().zip(&values) {
        if !v {
            facts.extend(refutation(c, g)?);
        }
    }
    Ok(Fails(facts))
}

/// Checks the hypothesis first; a failed hypothesis makes the statement vacuous.
fn assuming(c: &Ctx, hyp: &[Global], then: impl FnOnce() -> Result<Outcome>) -> Result<Outcome> {
    for &g in hyp {
        if !c.global(g)? {
            return Ok(Vacuous(format!("hypothesis fails: {}", g.name())));
        }
    }
    then()
}

/// Two crisp properties agree on every member of the family of `kind`.
fn crisp_agree(c: &Ctx, kind: IdealKind, a: CrispProperty, b: CrispProperty, proper_only: bool) -> Result<Outcome> {
    let members = c.crisp(kind)?.members.clone();
    let mut any = false;
    for p in members {
        if proper_only && p.is_full() {
            continue;
        }
        any = true;
        let (x, y) = (c.crisp_property(a, kind, p)?, c.crisp_property(b, kind, p)?);
        if x != y {
            return Ok(Fails(vec![
                Fact::Ideal { kind, set: p.into(), holds: true },
                Fact::Crisp { property: a, kind, set: p, holds: x },
                Fact::Crisp { property: b, kind, set: p, holds: y },
            ]));
        }
    }
    Ok(if any { Holds } else { Vacuous("no proper ideals".into()) })
}

/// Two fuzzy properties agree on every non-constant grid fuzzy h-ideal.
fn fuzzy_agree(c: &Ctx, a: FuzzyProperty, b: FuzzyProperty) -> Result<Outcome> {
    let fam = c.fuzzy(H)?;
    let mut any = false;
    for (_, f) in fam.non_constant() {
        any = true;
        let (x, y) = (c.fuzzy_property(a, f)?, c.fuzzy_property(b, f)?);
        if x != y {
            return Ok(Fails(vec![
                Fact::Fuzzy { property: a, f: f.clone(), holds: x },
                Fact::Fuzzy { property: b, f: f.clone(), holds: y },
            ]));
        }
    }
    Ok(if any { Holds } else { Vacuous("every grid fuzzy h-ideal is constant".into()) })
}

/// Threshold pairs `s < t` on the grid.
fn grid_pairs(den: u32) -> impl Iterator<Item = (u32, u32)> {
    (1..=den).flat_map(|t| (0..t).map(move |s| (t, s)))
}

fn indicator(a: Subset, den: u32, t: u32, s: u32) -> FuzzyExpr {
    FuzzyExpr::Indicator {
        set: a,
        t: GridValue::new(t, den).expect("on grid"),
        s: GridValue::new(s, den).expect("on grid"),
    }
}

/// A two-valued indicator is prime (semiprime) exactly when its set is.
fn indicator_transfer(c: &Ctx, fuzzy: FuzzyProperty, crisp: CrispProperty) -> Result<Outcome> {
    let den = c.config.denominator;
    for a in c.subsets() {
        let y = c.crisp_property(crisp, H, a)?;
        for (t, s) in grid_pairs(den) {
            let f = two_valued_indicator_raw(a, den, t, s);
            let x = c.fuzzy_property(fuzzy, &f)?;
            if x != y {
                return Ok(Fails(vec![
                    Fact::Fuzzy { property: fuzzy, f, holds: x },
                    Fact::Crisp { property: crisp, kind: H, set: a, holds: y },
                ]));
            }
        }
    }
    Ok(Holds)
}

// ---- crisp statements ----

fn l2_1(c: &Ctx) -> Result<Outcome> {
    let h = c.h;
    for kind in [LEFT, RIGHT, H] {
        let members = &c.crisp(kind)?.members;
        for &a in members {
            for &b in members {
                if !h.is_ideal(a.intersection(b), kind) {
                    return Ok(Fails(vec![Fact::Ideal { kind, set: SetExpr::inter(a, b), holds: false }]));
                }
            }
        }
        let all = members.iter().fold(h.full(), |acc, &m| acc.intersection(m));
        if !h.is_ideal(all, kind) {
            let expr = members.iter().fold(SetExpr::Set(h.full()), |acc, &m| SetExpr::inter(acc, m));
            return Ok(Fails(vec![Fact::Ideal { kind, set: expr, holds: false }]));
        }
    }
    Ok(Holds)
}

fn l2_2(c: &Ctx) -> Result<Outcome> {
    let h = c.h;
    let subs = c.subsets();
    for (i, j) in c.pairs("subset-pairs", subs.len()) {
        let (a, b) = (subs[i], subs[j]);
        let lhs = h.h_closure_raw(h.product_set_raw(a, b));
        let rhs = h.h_closure_raw(h.product_set_raw(h.h_closure_raw(a), h.h_closure_raw(b)));
        if lhs != rhs {
            return Ok(Fails(vec![Fact::SetEq {
                lhs: SetExpr::hcl(SetExpr::prod(a, b)),
                rhs: SetExpr::hcl(SetExpr::prod(SetExpr::hcl(a), SetExpr::hcl(b))),
                holds: false,
            }]));
        }
    }
    Ok(Holds)
}

fn l2_3(c: &Ctx) -> Result<Outcome> {
    let h = c.h;
    let rights = c.crisp(RIGHT)?.members.clone();
    let lefts = c.crisp(LEFT)?.members.clone();
    for &a in &rights {
        for &b in &lefts {
            if !h.h_closure_raw(h.product_set_raw(a, b)).is_subset_of(a.intersection(b)) {
                return Ok(Fails(vec![
                    Fact::Ideal { kind: RIGHT, set: a.into(), holds: true },
                    Fact::Ideal { kind: LEFT, set: b.into(), holds: true },
                    Fact::SetLeq { lhs: SetExpr::hcl(SetExpr::prod(a, b)), rhs: SetExpr::inter(a, b), holds: false },
                ]));
            }
        }
    }
    Ok(Holds)
}

fn l2_5(c: &Ctx) -> Result<Outcome> {
    equivalent(c, &[Global::Hemiregular, Global::CrispProductIsMeet { left: RIGHT, right: LEFT }])
}

fn p4_1(c: &Ctx) -> Result<Outcome> {
    equivalent(
        c,
        &[
            Global::AllHIdempotent,
            Global::CrispProductIsMeet { left: H, right: H },
            Global::ElementsInRxRxR,
            Global::SubsetsInRARAR,
            Global::IdealsAreRARAR,
        ],
    )
}

fn c4_2(c: &Ctx) -> Result<Outcome> {
    assuming(c, &[Global::Commutative], || equivalent(c, &[Global::Hemiregular, Global::AllHIdempotent]))
}

fn t4_8(c: &Ctx) -> Result<Outcome> {
    assuming(c, &[Global::AllHIdempotent], || {
        let h = c.h;
        let fam = c.crisp(H)?;
        let lattice = fam.lattice(h)?;
        if let Some((a, b)) = lattice.brouwerian_failure() {
            return Ok(Fails(vec![Fact::Residual { a, b, holds: false }]));
        }
        for &a in &fam.members {
            for &b in &fam.members {
                let j = lattice.join(a, b);
                let join = SetExpr::hcl(SetExpr::sum(a, b));
                if !h.is_ideal(j, H) {
                    return Ok(Fails(vec![Fact::Ideal { kind: H, set: join, holds: false }]));
                }
                let not_least = fam
                    .members
                    .iter()
                    .find(|&&u| a.is_subset_of(u) && b.is_subset_of(u) && !j.is_subset_of(u));
                if let Some(&u) = not_least {
                    return Ok(Fails(vec![
                        Fact::Ideal { kind: H, set: u.into(), holds: true },
                        Fact::SetLeq { lhs: a.into(), rhs: u.into(), holds: true },
                        Fact::SetLeq { lhs: b.into(), rhs: u.into(), holds: true },
                        Fact::SetLeq { lhs: join, rhs: u.into(), holds: false },
                    ]));
                }
            }
        }
        Ok(Holds)
    })
}

fn c4_9(c: &Ctx) -> Result<Outcome> {
    assuming(c, &[Global::AllHIdempotent], || {
        let fam = c.crisp(H)?;
        Ok(match fam.lattice(c.h)?.distributivity_failure() {
            Some((a, b, d)) => Fails(vec![Fact::SetEq {
                lhs: SetExpr::inter(a, SetExpr::hcl(SetExpr::sum(b, d))),
                rhs: SetExpr::hcl(SetExpr::sum(SetExpr::inter(a, b), SetExpr::inter(a, d))),
                holds: false,
            }]),
            None => Holds,
        })
    })
}

fn t5_1(c: &Ctx) -> Result<Outcome> {
    for kind in [LEFT, RIGHT] {
        if let Fails(f) = crisp_agree(c, kind, CrispProperty::Prime, CrispProperty::PrimeElementwise, false)? {
            return Ok(Fails(f));
        }
    }
    Ok(Holds)
}

fn c5_2(c: &Ctx) -> Result<Outcome> {
    crisp_agree(c, H, CrispProperty::Prime, CrispProperty::PrimeElementwise, false)
}

fn c5_3(c: &Ctx) -> Result<Outcome> {
    assuming(c, &[Global::Commutative, Global::HasIdentity], || {
        crisp_agree(c, H, CrispProperty::Prime, CrispProperty::PrimeProductForm, false)
    })
}

/// Every proper h-ideal has a proper member with `property` above it.
fn exists_above(c: &Ctx, property: CrispProperty) -> Result<Outcome> {
    let proper: Vec<Subset> = c.crisp(H)?.proper().collect();
    if proper.is_empty() {
        return Ok(Vacuous("no proper h-ideals".into()));
    }
    for p in proper {
        if !c.crisp_property(property, H, p)? {
            return Ok(Fails(vec![
                Fact::Ideal { kind: H, set: p.into(), holds: true },
                Fact::Crisp { property, kind: H, set: p, holds: false },
            ]));
        }
    }
    Ok(Holds)
}

fn t5_9(c: &Ctx) -> Result<Outcome> {
    exists_above(c, CrispProperty::IrreducibleAbove)
}

fn t5_10(c: &Ctx) -> Result<Outcome> {
    assuming(c, &[Global::AllHIdempotent], || {
        crisp_agree(c, H, CrispProperty::Irreducible, CrispProperty::Prime, false)
    })
}

fn c5_11(c: &Ctx) -> Result<Outcome> {
    assuming(c, &[Global::AllHIdempotent], || exists_above(c, CrispProperty::PrimeAbove))
}

fn t5_13(c: &Ctx) -> Result<Outcome> {
    equivalent(c, &[Global::AllHIdempotent, Global::ProperIntersectionsOfPrimes])
}

fn t6_2(c: &Ctx) -> Result<Outcome> {
    for kind in [LEFT, RIGHT, H] {
        if let Fails(f) = crisp_agree(c, kind, CrispProperty::Semiprime, CrispProperty::SemiprimeElementwise, false)? {
            return Ok(Fails(f));
        }
    }
    Ok(Holds)
}

fn c6_3(c: &Ctx) -> Result<Outcome> {
    assuming(c, &[Global::Commutative, Global::HasIdentity], || {
        crisp_agree(c, H, CrispProperty::Semiprime, CrispProperty::SemiprimeSquareForm, false)
    })
}

fn t6_4(c: &Ctx) -> Result<Outcome> {
    equivalent(c, &[Global::AllHIdempotent, Global::ProperHIdealsSemiprime])
}

// ---- fuzzy statements ----

fn transfer(c: &Ctx) -> Result<Outcome> {
    let h = c.h;
    for f in c.fuzzy_universe() {
        for kind in IdealKind::ALL {
            let direct = f.is_fuzzy_ideal(h, kind, Method::Direct)?;
            let levels = f.is_fuzzy_ideal(h, kind, Method::Levels)?;
            if direct != levels {
                return Ok(Fails(vec![
                    Fact::FuzzyIdeal { kind, f: f.into(), method: Method::Direct, holds: direct },
                    Fact::FuzzyIdeal { kind, f: f.into(), method: Method::Levels, holds: levels },
                ]));
            }
        }
    }
    Ok(Holds)
}

fn p2_8(c: &Ctx) -> Result<Outcome> {
    let h = c.h;
    let den = c.config.denominator;
    for a in c.subsets() {
        for kind in [LEFT, RIGHT, H] {
            let crisp = h.is_ideal(a, kind);
            for (t, s) in grid_pairs(den) {
                let fuzzy = two_valued_indicator_raw(a, den, t, s).is_fuzzy_ideal(h, kind, Method::Direct)?;
                if fuzzy != crisp {
                    return Ok(Fails(vec![
                        Fact::FuzzyIdeal { kind, f: indicator(a, den, t, s), method: Method::Direct, holds: fuzzy },
                        Fact::Ideal { kind, set: a.into(), holds: crisp },
                    ]));
                }
            }
        }
    }
    Ok(Holds)
}

fn p2_9(c: &Ctx) -> Result<Outcome> {
    let den = c.config.denominator;
    let subs = c.subsets();
    for (i, j) in c.pairs("subset-pairs", subs.len()) {
        let (a, b) = (subs[i], subs[j]);
        // the images agree unless exactly one set is the whole carrier
        if a.is_full() != b.is_full() {
            continue;
        }
        for (t, s) in grid_pairs(den) {
            let (la, lb) = (two_valued_indicator_raw(a, den, t, s), two_valued_indicator_raw(b, den, t, s));
            let sub = a.is_subset_of(b);
            let leq = la.leq_raw(&lb);
            if sub != leq {
                return Ok(Fails(vec![
                    Fact::SetLeq { lhs: a.into(), rhs: b.into(), holds: sub },
                    Fact::FuzzyLeq { lhs: indicator(a, den, t, s), rhs: indicator(b, den, t, s), holds: leq },
                ]));
            }
            if la.meet_raw(&lb) != two_valued_indicator_raw(a.intersection(b), den, t, s) {
                return Ok(Fails(vec![Fact::FuzzyEq {
                    lhs: FuzzyExpr::meet(indicator(a, den, t, s), indicator(b, den, t, s)),
                    rhs: indicator(a.intersection(b), den, t, s),
                    holds: false,
                }]));
            }
        }
    }
    Ok(Holds)
}

fn t2_11(c: &Ctx) -> Result<Outcome> {
    equivalent(
        c,
        &[Global::Hemiregular, Global::FuzzyOpIsMeet { op: ProductOp::Product, left: RIGHT, right: LEFT }],
    )
}

fn p3_2(c: &Ctx) -> Result<Outcome> {
    let h = c.h;
    let u = c.fuzzy_universe();
    let len = u.len();
    for (i, j) in c.pairs("fuzzy-pairs", len) {
        let (mu, nu) = (&u[i], &u[j]);
        let circ = h.fuzzy_op_raw(ProductOp::Product, mu, nu);
        let odot = h.fuzzy_op_raw(ODOT, mu, nu);
        if !circ.leq_raw(&odot) {
            return Ok(Fails(vec![Fact::FuzzyLeq {
                lhs: FuzzyExpr::op(ProductOp::Product, mu, nu),
                rhs: FuzzyExpr::op(ODOT, mu, nu),
                holds: false,
            }]));
        }
        let omega = mu.join(&u[(i + j) % len])?;
        let lambda = nu.join(&u[(i * 31 + j) % len])?;
        if !odot.leq_raw(&h.fuzzy_op_raw(ODOT, &omega, &lambda)) {
            return Ok(Fails(vec![
                Fact::FuzzyLeq { lhs: mu.into(), rhs: (&omega).into(), holds: true },
                Fact::FuzzyLeq { lhs: nu.into(), rhs: (&lambda).into(), holds: true },
                Fact::FuzzyLeq {
                    lhs: FuzzyExpr::op(ODOT, mu, nu),
                    rhs: FuzzyExpr::op(ODOT, &omega, &lambda),
                    holds: false,
                },
            ]));
        }
    }
    let den = c.config.denominator;
    let subs = c.subsets();
    for (i, j) in c.pairs("subset-pairs", subs.len()) {
        let (a, b) = (subs[i], subs[j]);
        let (ca, cb) = (FuzzySubset::characteristic(a, den), FuzzySubset::characteristic(b, den));
        let expect = FuzzySubset::characteristic(h.h_closure_raw(h.product_set_raw(a, b)), den);
        if h.fuzzy_op_raw(ODOT, &ca, &cb) != expect {
            return Ok(Fails(vec![Fact::FuzzyEq {
                lhs: FuzzyExpr::op(ODOT, ca, cb),
                rhs: expect.into(),
                holds: false,
            }]));
        }
    }
    Ok(Holds)
}

fn t3_3(c: &Ctx) -> Result<Outcome> {
    let h = c.h;
    let fam = c.fuzzy(H)?;
    let m = fam.members();
    for i in 0..m.len() {
        for j in 0..m.len() {
            let p = FuzzySubset::new(fam.den, fam.intrinsic(h, i, j));
            if !fam.contains(&p) && !p.is_fuzzy_ideal(h, H, Method::Direct)? {
                return Ok(Fails(vec![Fact::FuzzyIdeal {
                    kind: H,
                    f: FuzzyExpr::op(ODOT, &m[i], &m[j]),
                    method: Method::Direct,
                    holds: false,
                }]));
            }
            if !p.leq_raw(&m[i].meet_raw(&m[j])) {
                return Ok(Fails(vec![Fact::FuzzyLeq {
                    lhs: FuzzyExpr::op(ODOT, &m[i], &m[j]),
                    rhs: FuzzyExpr::meet(&m[i], &m[j]),
                    holds: false,
                }]));
            }
        }
    }
    Ok(Holds)
}

fn t3_4(c: &Ctx) -> Result<Outcome> {
    equivalent(c, &[Global::Hemiregular, Global::FuzzyOpIsMeet { op: ODOT, left: RIGHT, right: LEFT }])
}

fn c3_5(c: &Ctx) -> Result<Outcome> {
    assuming(c, &[Global::Hemiregular], || {
        let h = c.h;
        let fam = c.fuzzy(H)?;
        let m = fam.members();
        for i in 0..m.len() {
            for j in 0..m.len() {
                if h.fuzzy_op_raw(ProductOp::Product, &m[i], &m[j]).numerators() != fam.intrinsic(h, i, j) {
                    return Ok(Fails(vec![Fact::FuzzyEq {
                        lhs: FuzzyExpr::op(ODOT, &m[i], &m[j]),
                        rhs: FuzzyExpr::op(ProductOp::Product, &m[i], &m[j]),
                        holds: false,
                    }]));
                }
            }
        }
        Ok(Holds)
    })
}

fn odot_is_meet() -> Global {
    Global::FuzzyOpIsMeet { op: ODOT, left: H, right: H }
}

fn p4_3(c: &Ctx) -> Result<Outcome> {
    equivalent(c, &[Global::AllFuzzyIdempotent, odot_is_meet()])
}

fn c4_4(c: &Ctx) -> Result<Outcome> {
    assuming(c, &[Global::Commutative], || {
        equivalent(c, &[Global::Hemiregular, Global::AllFuzzyIdempotent, odot_is_meet()])
    })
}

fn t4_5(c: &Ctx) -> Result<Outcome> {
    assuming(c, &[Global::HasIdentity], || {
        equivalent(
            c,
            &[
                Global::AllHIdempotent,
                Global::CrispProductIsMeet { left: H, right: H },
                Global::AllFuzzyIdempotent,
                odot_is_meet(),
            ],
        )
    })
}

fn t4_7(c: &Ctx) -> Result<Outcome> {
    let h = c.h;
    let fam = c.fuzzy(H)?;
    let m = fam.members();
    for a in m {
        for b in m {
            let s = h.fuzzy_op_raw(ProductOp::Sum, a, b);
            if !fam.contains(&s) && !s.is_fuzzy_ideal(h, H, Method::Direct)? {
                return Ok(Fails(vec![Fact::FuzzyIdeal {
                    kind: H,
                    f: FuzzyExpr::op(ProductOp::Sum, a, b),
                    method: Method::Direct,
                    holds: false,
                }]));
            }
        }
    }
    Ok(Holds)
}

fn t4_10(c: &Ctx) -> Result<Outcome> {
    equivalent(c, &[Global::AllFuzzyIdempotent, Global::FuzzyLatticeLaws])
}

fn t5_5(c: &Ctx) -> Result<Outcome> {
    fuzzy_agree(c, FuzzyProperty::Prime, FuzzyProperty::PrimeLevels)
}

fn c5_7(c: &Ctx) -> Result<Outcome> {
    indicator_transfer(c, FuzzyProperty::Prime, CrispProperty::Prime)
}

fn p5_8(c: &Ctx) -> Result<Outcome> {
    assuming(c, &[Global::Commutative, Global::HasIdentity], || {
        fuzzy_agree(c, FuzzyProperty::Prime, FuzzyProperty::ProductForm)
    })
}

fn t5_12(c: &Ctx) -> Result<Outcome> {
    assuming(c, &[Global::AllFuzzyIdempotent], || {
        fuzzy_agree(c, FuzzyProperty::Irreducible, FuzzyProperty::HPrime)
    })
}

fn l5_14(c: &Ctx) -> Result<Outcome> {
    assuming(c, &[Global::AllFuzzyIdempotent], || {
        let fam = c.fuzzy(H)?;
        for lambda in fam.members() {
            for a in 0..c.h.order() {
                if c.prime_above_at(lambda, a)?.is_none() {
                    return Ok(Fails(vec![Fact::Fuzzy {
                        property: FuzzyProperty::PrimeAboveAt(a),
                        f: lambda.clone(),
                        holds: false,
                    }]));
                }
            }
        }
        Ok(Holds)
    })
}

fn t5_15(c: &Ctx) -> Result<Outcome> {
    equivalent(c, &[Global::AllFuzzyIdempotent, Global::FuzzyMeetsOfHPrimes])
}

fn t6_5(c: &Ctx) -> Result<Outcome> {
    equivalent(c, &[Global::AllFuzzyIdempotent, Global::NonConstantFuzzySemiprime])
}

fn t6_9(c: &Ctx) -> Result<Outcome> {
    fuzzy_agree(c, FuzzyProperty::Semiprime, FuzzyProperty::SemiprimeLevels)
}

fn c6_10(c: &Ctx) -> Result<Outcome> {
    indicator_transfer(c, FuzzyProperty::Semiprime, CrispProperty::Semiprime)
}

fn p6_11(c: &Ctx) -> Result<Outcome> {
    assuming(c, &[Global::Commutative, Global::HasIdentity], || {
        fuzzy_agree(c, FuzzyProperty::Semiprime, FuzzyProperty::SquareForm)
    })
}
