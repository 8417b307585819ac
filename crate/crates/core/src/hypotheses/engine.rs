use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::context::{reduction_type, DClass, ReductionType, TwistContext};
use super::facts::{FactHit, FactsFile};
use crate::arith::{factorize, Discriminant};
use crate::forms::FormId;

/// Primes at which the mod-p image of Δ is known not to contain SL2(F_p).
pub const DELTA_EXCEPTIONAL_PRIMES: [u64; 6] = [2, 3, 5, 7, 23, 691];

pub const DELTA_IMAGE_PROVENANCE: &str =
    "built-in: the mod-p image of Δ contains SL2(F_p) for every p outside {2, 3, 5, 7, 23, 691} (Serre, Swinnerton-Dyer)";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TriState {
    Holds,
    Fails,
    Unknown,
}

impl fmt::Display for TriState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            TriState::Holds => "holds",
            TriState::Fails => "fails",
            TriState::Unknown => "unknown",
        })
    }
}

/// Three-valued outcome with the rule that decided it and the fact keys it
/// relied on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tri {
    pub state: TriState,
    pub reason: String,
    pub fact_dependencies: Vec<String>,
}

impl Tri {
    pub fn holds(reason: impl Into<String>) -> Self {
        Self { state: TriState::Holds, reason: reason.into(), fact_dependencies: Vec::new() }
    }

    pub fn fails(reason: impl Into<String>) -> Self {
        Self { state: TriState::Fails, reason: reason.into(), fact_dependencies: Vec::new() }
    }

    /// Panics on an empty reason: an unknown outcome must say what is missing.
    pub fn unknown(reason: impl Into<String>) -> Self {
        let reason = reason.into();
        assert!(!reason.trim().is_empty(), "Unknown needs a reason");
        Self { state: TriState::Unknown, reason, fact_dependencies: Vec::new() }
    }

    pub fn with_facts<I: IntoIterator<Item = String>>(mut self, keys: I) -> Self {
        for k in keys {
            if !self.fact_dependencies.contains(&k) {
                self.fact_dependencies.push(k);
            }
        }
        self
    }

    pub fn is_holds(&self) -> bool {
        self.state == TriState::Holds
    }

    pub fn is_fails(&self) -> bool {
        self.state == TriState::Fails
    }

    pub fn is_unknown(&self) -> bool {
        self.state == TriState::Unknown
    }
}

/// The exclusion cases for the ordinary branch of condition (B).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum St3Case {
    #[serde(rename = "i1")]
    I1,
    #[serde(rename = "i2")]
    I2,
    #[serde(rename = "ii")]
    Ii,
    #[serde(rename = "iii")]
    Iii,
    #[serde(rename = "iv")]
    Iv,
}

impl St3Case {
    pub const ALL: [St3Case; 5] = [St3Case::I1, St3Case::I2, St3Case::Ii, St3Case::Iii, St3Case::Iv];

    pub fn label(self) -> &'static str {
        match self {
            St3Case::I1 => "i1",
            St3Case::I2 => "i2",
            St3Case::Ii => "ii",
            St3Case::Iii => "iii",
            St3Case::Iv => "iv",
        }
    }
}

impl fmt::Display for St3Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Which block of the local analysis at `p` applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum St3Branch {
    Supersingular,
    OrdinaryPCoprimeToD,
    OrdinaryPDividesD,
    OrdinaryDIsPStar,
}

/// One consistent assignment of the unknown local splitting behaviour.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Scenario {
    m_splits: bool,
    t_splits_all_n: bool,
}

/// Splitting facts as resolved from a facts file.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitFacts {
    pub m_splits: Option<bool>,
    pub t_splits_all_n: Option<bool>,
    #[serde(skip)]
    keys: Vec<String>,
}

impl SplitFacts {
    pub fn resolve(ctx: &TwistContext, facts: &FactsFile) -> Self {
        let m = facts.m_splits(ctx.p, ctx.disc.value);
        let t = facts.t_splits_all_n(ctx.p, ctx.disc.value);
        let keys = m.iter().chain(t.iter()).map(|h: &FactHit| h.key.clone()).collect();
        Self { m_splits: m.map(|h| h.value), t_splits_all_n: t.map(|h| h.value), keys }
    }

    /// Scenarios compatible with the facts. `T/p^nT` splitting for every `n`
    /// includes `n = 1`, where it is `M`.
    fn scenarios(&self) -> Vec<Scenario> {
        let mut out = Vec::new();
        for m_splits in [true, false] {
            for t_splits_all_n in [true, false] {
                if t_splits_all_n && !m_splits {
                    continue;
                }
                if self.m_splits.is_some_and(|v| v != m_splits)
                    || self.t_splits_all_n.is_some_and(|v| v != t_splits_all_n)
                {
                    continue;
                }
                out.push(Scenario { m_splits, t_splits_all_n });
            }
        }
        out
    }
}

fn divides(d: i64, n: i64) -> bool {
    n.rem_euclid(d) == 0
}

/// `x / 2` for an `x` that must be even.
fn exact_half(x: i64) -> i64 {
    assert!(x % 2 == 0, "{x} is odd; k must be even and p odd");
    x / 2
}

/// A case split into its conjuncts that do not depend on local splitting, and
/// a predicate on the splitting scenario.
struct CaseSpec {
    fixed: Vec<(bool, String)>,
    split: fn(Scenario) -> bool,
    split_desc: &'static str,
    uses_t: bool,
}

fn case_spec(ctx: &TwistContext, case: St3Case) -> CaseSpec {
    let p = ctx.p as i64;
    let k = ctx.k as i64;
    let pm1 = p - 1;
    let ap1 = (ctx.a_p_is_one_mod_p(), format!("a_p ≡ 1 (mod {p})"));
    let class = ctx.d_class();
    let coprime = (class == DClass::PCoprimeToD, format!("{p} ∤ D"));
    let pstar = (class == DClass::DIsPStar, format!("D = p* = {}", ctx.p_star()));
    match case {
        St3Case::I1 => CaseSpec {
            fixed: vec![
                coprime,
                (k > 2, "k > 2".into()),
                (
                    divides(pm1, k / 2) || divides(pm1, k / 2 - 1),
                    format!("{pm1} divides k/2 = {} or k/2 - 1 = {}", k / 2, k / 2 - 1),
                ),
                ap1,
            ],
            split: |s| s.m_splits,
            split_desc: "M splits",
            uses_t: false,
        },
        St3Case::I2 => CaseSpec {
            fixed: vec![coprime, (k == 2, "k = 2".into()), ap1],
            split: |s| s.m_splits && !s.t_splits_all_n,
            split_desc: "M splits but some T/p^nT does not",
            uses_t: true,
        },
        St3Case::Ii => CaseSpec {
            fixed: vec![coprime, (divides(pm1, k / 2), format!("{pm1} divides k/2 = {}", k / 2)), ap1],
            split: |s| !s.m_splits,
            split_desc: "M does not split",
            uses_t: false,
        },
        St3Case::Iii => {
            let lo = exact_half(k - p + 1);
            let hi = exact_half(k + p - 3);
            CaseSpec {
                fixed: vec![
                    pstar,
                    (
                        divides(pm1, lo) || divides(pm1, hi),
                        format!("{pm1} divides (k-p+1)/2 = {lo} or (k+p-3)/2 = {hi}"),
                    ),
                    ap1,
                ],
                split: |s| s.m_splits,
                split_desc: "M splits",
                uses_t: false,
            }
        }
        St3Case::Iv => {
            let lo = exact_half(k - p + 1);
            CaseSpec {
                fixed: vec![pstar, (divides(pm1, lo), format!("{pm1} divides (k-p+1)/2 = {lo}")), ap1],
                split: |s| !s.m_splits,
                split_desc: "M does not split",
                uses_t: false,
            }
        }
    }
}

fn split_keys_hint(ctx: &TwistContext, uses_t: bool) -> String {
    let mut s = format!("m_splits_at_p:{}:{}", ctx.p, ctx.disc.value);
    if uses_t {
        s.push_str(&format!(" / t_mod_pn_splits_all_n:{}:{}", ctx.p, ctx.disc.value));
    }
    s
}

fn evaluate_case(ctx: &TwistContext, case: St3Case, split: &SplitFacts) -> Tri {
    if ctx.d_class() == DClass::PDividesD {
        return Tri::fails(format!(
            "({case}) p | D and D ≠ p*: M has no G_Qp-invariants whatever its splitting"
        ));
    }
    let spec = case_spec(ctx, case);
    if let Some((_, what)) = spec.fixed.iter().find(|(ok, _)| !ok) {
        return Tri::fails(format!("({case}) requires {what}, which is false"));
    }
    let all = SplitFacts::default().scenarios();
    let unconstrained: Vec<bool> = all.iter().map(|&s| (spec.split)(s)).collect();
    let allowed: Vec<bool> = split.scenarios().iter().map(|&s| (spec.split)(s)).collect();
    let constant = |v: &[bool]| v.iter().all(|&b| b == v[0]);
    if allowed.is_empty() {
        return Tri::unknown(format!(
            "({case}) the splitting facts are contradictory ({})",
            split_keys_hint(ctx, spec.uses_t)
        ))
        .with_facts(split.keys.clone());
    }
    let deps = if constant(&unconstrained) { Vec::new() } else { split.keys.clone() };
    if allowed.iter().all(|&b| b) {
        Tri::holds(format!("({case}) occurs: {} and the remaining conditions hold", spec.split_desc))
            .with_facts(deps)
    } else if allowed.iter().all(|&b| !b) {
        Tri::fails(format!("({case}) excluded: {} is false", spec.split_desc)).with_facts(deps)
    } else {
        Tri::unknown(format!(
            "({case}) depends on local splitting at p; missing fact {}",
            split_keys_hint(ctx, spec.uses_t)
        ))
    }
}

/// Evaluates each exclusion case. `Holds` means the case occurs, i.e. the
/// ordinary branch of (B) is violated.
///
/// Meant for the ordinary case with `(p-1) ∤ (k-1)`; other contexts still get
/// an answer, but (B) is already decided upstream for them.
pub fn st3_violations(ctx: &TwistContext, facts: &FactsFile) -> BTreeMap<St3Case, Tri> {
    let split = SplitFacts::resolve(ctx, facts);
    St3Case::ALL
        .into_iter()
        .map(|case| (case, evaluate_case(ctx, case, &split)))
        .collect()
}

/// Whether some exclusion case occurs, decided jointly over the splitting
/// scenarios: two cases can be individually unknown while one of them is
/// certain to occur.
fn any_violation(ctx: &TwistContext, split: &SplitFacts) -> Option<bool> {
    if ctx.d_class() == DClass::PDividesD {
        return Some(false);
    }
    let specs: Vec<CaseSpec> = St3Case::ALL
        .iter()
        .map(|&c| case_spec(ctx, c))
        .filter(|spec| spec.fixed.iter().all(|(ok, _)| *ok))
        .collect();
    if specs.is_empty() {
        return Some(false);
    }
    let outcomes: Vec<bool> = split
        .scenarios()
        .into_iter()
        .map(|s| specs.iter().any(|spec| spec.fixed.iter().all(|(ok, _)| *ok) && (spec.split)(s)))
        .collect();
    if outcomes.is_empty() {
        None
    } else if outcomes.iter().all(|&b| b) {
        Some(true)
    } else if outcomes.iter().all(|&b| !b) {
        Some(false)
    } else {
        None
    }
}

/// Whether the Tamagawa factor `c(Q_ℓ, A_{f,D})` is known to be 1.
pub fn tamagawa_triviality(ctx: &TwistContext, ell: u64, facts: &FactsFile) -> Tri {
    debug_assert!(crate::arith::is_prime(ell));
    if !ctx.level.is_multiple_of(ell) && ell != ctx.p {
        return Tri::holds(format!(
            "ℓ = {ell} ∤ Np: inertia at ℓ acts on A_f trivially, so c(Q_{ell}, A) = 1 whether or not √D is unramified"
        ));
    }
    if ell == ctx.p && ctx.p > ctx.k as u64 {
        return Tri::holds(format!(
            "ℓ = p = {} > k = {}: c(Q_p, A) = 1 (Dummigan-Stein-Watkins, Lemma 4.6)",
            ctx.p, ctx.k
        ));
    }
    if ell != ctx.p {
        if let Some(hit) = facts.m_invariants_vanish(ell, ctx.disc.value) {
            if hit.value {
                return Tri::holds(format!(
                    "M^(G_Q{ell}) = 0 forces c(Q_{ell}, A) = 1 ({})",
                    hit.provenance
                ))
                .with_facts([hit.key]);
            }
        }
    }
    Tri::unknown(format!(
        "no rule decides c(Q_{ell}, A_(f,{})); missing fact m_invariants_vanish_at_ell:{ell}:{}",
        ctx.disc.value, ctx.disc.value
    ))
}

/// The bound on `dim Im(Res^ur_p)` with the three terms of the local
/// inequality: `dim(A^G ⊗ F_p) + 1 + dim H^0(Q_p, V)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelmerBound {
    /// 1, 2, or `None` when undetermined.
    pub value: Option<u8>,
    pub a_invariants: Option<u8>,
    /// Always 1: the de Rham quotient `D_dR / D_dR^+` is one-dimensional.
    pub tangent: u8,
    pub h0_v: Option<u8>,
    /// Amount subtracted for a known kernel of the restriction to `Q_p^ur`.
    pub unramified_kernel: u8,
    pub rule: String,
}

impl SelmerBound {
    fn unknown(rule: impl Into<String>) -> Self {
        Self { value: None, a_invariants: None, tangent: 1, h0_v: None, unramified_kernel: 0, rule: rule.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub p: u64,
    pub k: u32,
    pub level: u64,
    pub d: i64,
    pub d_prime: Option<i64>,
    pub a: Tri,
    pub b: Tri,
    pub c: Tri,
    #[serde(rename = "d_condition")]
    pub d_cond: Tri,
    pub tamdif: Tri,
    pub reduction_type: Option<ReductionType>,
    pub st3_case: Option<St3Branch>,
    pub st3_violations: Option<BTreeMap<St3Case, Tri>>,
    pub split_facts: SplitFacts,
    pub selmer_bound: SelmerBound,
}

impl ConditionReport {
    pub fn all_hold(&self) -> bool {
        [&self.a, &self.b, &self.c, &self.d_cond].iter().all(|t| t.is_holds())
    }

    /// Every fact key any condition relied on, deduplicated in order.
    pub fn fact_dependencies(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for t in [&self.a, &self.b, &self.c, &self.d_cond, &self.tamdif] {
            for k in &t.fact_dependencies {
                if !out.contains(k) {
                    out.push(k.clone());
                }
            }
        }
        out
    }
}

fn condition_c(ctx: &TwistContext, facts: &FactsFile) -> Tri {
    if ctx.form == Some(FormId::Delta) {
        return if DELTA_EXCEPTIONAL_PRIMES.contains(&ctx.p) {
            Tri::fails(format!("p = {} is an exceptional prime for Δ", ctx.p))
        } else {
            Tri::holds(format!(
                "p = {} is not in {{2, 3, 5, 7, 23, 691}}, so the image contains SL2(F_p)",
                ctx.p
            ))
            .with_facts(["builtin:delta_image_contains_sl2".to_string()])
        };
    }
    match facts.image_contains_sl2(ctx.form_label(), ctx.p) {
        Some(hit) if hit.value => {
            Tri::holds(format!("asserted: {}", hit.provenance)).with_facts([hit.key])
        }
        Some(hit) => Tri::fails(format!("asserted: {}", hit.provenance)).with_facts([hit.key]),
        None => Tri::unknown(format!(
            "image of the mod-{} representation is not computed; missing fact image_contains_sl2:{}:{}",
            ctx.p,
            ctx.form_label(),
            ctx.p
        )),
    }
}

type ConditionB = (Tri, Option<ReductionType>, Option<St3Branch>, Option<BTreeMap<St3Case, Tri>>);

fn condition_b(ctx: &TwistContext, facts: &FactsFile, split: &SplitFacts) -> ConditionB {
    let rt = match reduction_type(ctx) {
        Ok(rt) => rt,
        Err(_) => {
            return (
                Tri::fails(format!("p = {} divides the level; no good reduction at p", ctx.p)),
                None,
                None,
                None,
            )
        }
    };
    let (p, k) = (ctx.p, ctx.k as u64);
    if rt == ReductionType::Supersingular {
        let tri = if k <= p + 1 {
            Tri::holds(format!("supersingular at p and k = {k} ≤ p + 1 = {}", p + 1))
        } else {
            Tri::fails(format!("supersingular at p but k = {k} > p + 1 = {}", p + 1))
        };
        return (tri, Some(rt), Some(St3Branch::Supersingular), None);
    }
    let branch = match ctx.d_class() {
        DClass::PCoprimeToD => St3Branch::OrdinaryPCoprimeToD,
        DClass::PDividesD => St3Branch::OrdinaryPDividesD,
        DClass::DIsPStar => St3Branch::OrdinaryDIsPStar,
    };
    let violations = st3_violations(ctx, facts);
    if (k - 1) % (p - 1) == 0 {
        let tri = Tri::fails(format!("ordinary at p but p - 1 = {} divides k - 1 = {}", p - 1, k - 1));
        return (tri, Some(rt), Some(branch), Some(violations));
    }
    let deps: Vec<String> = violations.values().flat_map(|t| t.fact_dependencies.clone()).collect();
    let tri = match any_violation(ctx, split) {
        Some(false) => {
            let why = if branch == St3Branch::OrdinaryPDividesD {
                "ordinary at p, p - 1 ∤ k - 1, and p | D with D ≠ p*, so no exclusion case can occur"
            } else {
                "ordinary at p, p - 1 ∤ k - 1, and no exclusion case occurs"
            };
            Tri::holds(why).with_facts(deps)
        }
        Some(true) => {
            let which: Vec<&str> = violations
                .iter()
                .filter(|(_, t)| !t.is_fails())
                .map(|(c, _)| c.label())
                .collect();
            Tri::fails(format!("an exclusion case occurs (among {})", which.join(", "))).with_facts(deps)
        }
        None => Tri::unknown(format!(
            "exclusion cases depend on local splitting at p; missing fact {}",
            split_keys_hint(ctx, ctx.k == 2)
        )),
    };
    (tri, Some(rt), Some(branch), Some(violations))
}

fn condition_d(ctx: &TwistContext, facts: &FactsFile) -> Tri {
    if ctx.level == 1 {
        return Tri::holds("N = 1: no prime divides the level");
    }
    let primes: Vec<u64> = factorize(ctx.level as i64).factors.keys().copied().collect();
    let results: Vec<(u64, Tri)> =
        primes.iter().map(|&l| (l, tamagawa_triviality(ctx, l, facts))).collect();
    let deps: Vec<String> = results.iter().flat_map(|(_, t)| t.fact_dependencies.clone()).collect();
    if let Some((l, t)) = results.iter().find(|(_, t)| t.is_fails()) {
        return Tri::fails(format!("ℓ = {l}: {}", t.reason)).with_facts(deps);
    }
    if let Some((l, t)) = results.iter().find(|(_, t)| t.is_unknown()) {
        return Tri::unknown(format!("ℓ = {l}: {}", t.reason)).with_facts(deps);
    }
    Tri::holds(format!("c(Q_ℓ, A) = 1 for every ℓ | N = {}", ctx.level)).with_facts(deps)
}

fn condition_tamdif(ctx: &TwistContext, d_prime: Option<Discriminant>, facts: &FactsFile) -> Tri {
    let Some(dp) = d_prime else {
        return Tri::unknown("no second discriminant D′ supplied");
    };
    if let Some(hit) = facts.tamagawa_equal(ctx.p, ctx.disc.value, dp.value) {
        return if hit.value {
            Tri::holds(format!("asserted: {}", hit.provenance)).with_facts([hit.key])
        } else {
            Tri::fails(format!("asserted: {}", hit.provenance)).with_facts([hit.key])
        };
    }
    let here = tamagawa_triviality(ctx, ctx.p, facts);
    let there = match ctx.with_discriminant(dp) {
        Ok(c) => tamagawa_triviality(&c, ctx.p, facts),
        Err(_) => return Tri::fails(format!("D′ = {} is not a discriminant", dp.value)),
    };
    if here.is_holds() && there.is_holds() {
        let deps = here.fact_dependencies.iter().chain(&there.fact_dependencies).cloned().collect::<Vec<_>>();
        Tri::holds(format!(
            "c(Q_p, A_(f,{})) = c(Q_p, A_(f,{})) = 1 since p = {} > k = {}",
            ctx.disc.value, dp.value, ctx.p, ctx.k
        ))
        .with_facts(deps)
    } else {
        Tri::unknown(format!(
            "Tamagawa factors at p not determined; missing fact tamagawa_equal_at_p:{}:{}:{}",
            ctx.p, ctx.disc.value, dp.value
        ))
    }
}

/// Evaluates conditions (A)-(D) and the Tamagawa equality for the pair `(D, D′)`.
pub fn check_conditions(
    ctx: &TwistContext,
    d_prime: Option<Discriminant>,
    facts: &FactsFile,
) -> ConditionReport {
    let split = SplitFacts::resolve(ctx, facts);
    let a = if ctx.good_reduction() {
        Tri::holds(format!("p = {} does not divide N = {}", ctx.p, ctx.level))
    } else {
        Tri::fails(format!("p = {} divides N = {}", ctx.p, ctx.level))
    };
    let (b, reduction, st3_case, violations) = condition_b(ctx, facts, &split);
    let mut report = ConditionReport {
        p: ctx.p,
        k: ctx.k,
        level: ctx.level,
        d: ctx.disc.value,
        d_prime: d_prime.map(|d| d.value),
        a,
        b,
        c: condition_c(ctx, facts),
        d_cond: condition_d(ctx, facts),
        tamdif: condition_tamdif(ctx, d_prime, facts),
        reduction_type: reduction,
        st3_case,
        st3_violations: violations,
        split_facts: split,
        selmer_bound: SelmerBound::unknown("pending"),
    };
    report.selmer_bound = selmer_bound(ctx, &report);
    report
}

/// Upper bound on the dimension of the image of `H^1_f(Q, M)` in
/// `H^1(Q_p^ur, M)`.
pub fn selmer_bound(ctx: &TwistContext, report: &ConditionReport) -> SelmerBound {
    let Some(rt) = report.reduction_type else {
        return SelmerBound::unknown("no good reduction at p");
    };
    let ordinary = rt == ReductionType::Ordinary;
    let cm_configuration = ordinary
        && ctx.k == 2
        && ctx.d_class() == DClass::PCoprimeToD
        && ctx.a_p_is_one_mod_p()
        && report.split_facts.t_splits_all_n == Some(true);
    if cm_configuration {
        return SelmerBound {
            value: Some(1),
            a_invariants: Some(1),
            tangent: 1,
            h0_v: Some(0),
            unramified_kernel: 1,
            rule: "k = 2, ordinary, p ∤ D, a_p ≡ 1 and T/p^nT split for all n: the local bound 2 drops by the kernel of restriction to Q_p^ur".into(),
        };
    }
    if report.b.is_holds() {
        let rule = if ordinary {
            "ordinary: V^(G_Qp) = 0 and no exclusion case, so M^(G_Qp) = 0"
        } else {
            "supersingular with k ≤ p + 1: M is locally irreducible, so A^(G_Qp) ⊗ F_p = V^(G_Qp) = 0"
        };
        return SelmerBound {
            value: Some(1),
            a_invariants: Some(0),
            tangent: 1,
            h0_v: Some(0),
            unramified_kernel: 0,
            rule: rule.into(),
        };
    }
    let pm1_divides_km1 = (ctx.k as u64 - 1).is_multiple_of(ctx.p - 1);
    if ordinary && !pm1_divides_km1 && report.b.is_fails() {
        return SelmerBound {
            value: Some(2),
            a_invariants: Some(1),
            tangent: 1,
            h0_v: Some(0),
            unramified_kernel: 0,
            rule: "ordinary with an exclusion case: M^(G_Qp) is one-dimensional, contributing 1 beyond the tangent term".into(),
        };
    }
    SelmerBound::unknown(format!("no rule bounds the local image (condition (B): {})", report.b.reason))
}
