//! Central L-value ratios through plus-space coefficients.
//!
//! For two positive discriminants the Kohnen-Zagier formula together with
//! `vol_∞(χ_D, 1 - k/2) = vol_∞(1 - k/2) / √D` gives
//!
//! ```text
//! √D/√D′ · L(f, χ_D, k/2) / L(f, χ_D′, k/2) = c_D² / c_D′² · (D′/D)^(k/2 - 1)
//! ```
//!
//! and, under the Bloch-Kato conjecture for both twists with equal Tamagawa
//! factors at `p`, the `p`-adic valuation of the right-hand side equals
//! `v_p(#Sha(D) / #Sha(D′))`. No L-value is ever evaluated numerically.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{factorize, valuation_int, ArithError, Discriminant, Factorization};
use crate::forms::{FormId, FormsError, PlusCoefficients};
use crate::hypotheses::{
    check_conditions, tamagawa_triviality, ConditionReport, FactsFile, HypothesisError,
    TwistContext, DELTA_IMAGE_PROVENANCE,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RatioError {
    #[error("c_{index} = 0: the central L-value may vanish and the coefficient ratio is unusable")]
    VanishingCoefficient { index: u64 },
    #[error("discriminant {d} violates (-1)^(k/2) D > 0 for k = {k}")]
    SignCondition { d: i64, k: u32 },
    #[error("D and D′ must differ (both are {0})")]
    SameDiscriminant(i64),
    #[error("weight {0} is not an even integer >= 2")]
    InvalidWeight(u32),
    #[error("contexts disagree: {0}")]
    Mismatch(String),
    #[error("plus-space coefficients are only available for delta")]
    UnsupportedForm,
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Forms(#[from] FormsError),
    #[error(transparent)]
    Hypothesis(#[from] HypothesisError),
}

/// `k/2 - 1`, the power of `D′/D` left after the archimedean factors cancel.
pub fn kz_ratio_exponent(k: u32) -> Result<u32, RatioError> {
    if k < 2 || k % 2 == 1 {
        return Err(RatioError::InvalidWeight(k));
    }
    Ok(k / 2 - 1)
}

fn check_discriminant(d: i64, k: u32) -> Result<Discriminant, RatioError> {
    let disc = Discriminant::valid(d)?;
    let sign = if (k / 2).is_multiple_of(2) { 1 } else { -1 };
    if sign * d <= 0 {
        return Err(RatioError::SignCondition { d, k });
    }
    Ok(disc)
}

/// `v_p(c_D² · D′^e) - v_p(c_D′² · D^e)` with `e = k/2 - 1`.
pub fn ratio_valuation(
    p: u64,
    k: u32,
    c_d: &BigInt,
    c_d_prime: &BigInt,
    d: i64,
    d_prime: i64,
) -> Result<i64, RatioError> {
    Ok(RatioCertificate::build(p, k, c_d.clone(), c_d_prime.clone(), d, d_prime)?.valuation)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ShaConclusion {
    #[serde(rename = "sha_D_nontrivial")]
    ShaDNontrivial,
    #[serde(rename = "sha_Dprime_nontrivial")]
    ShaDprimeNontrivial,
    #[serde(rename = "inconclusive")]
    Inconclusive,
}

impl ShaConclusion {
    /// Lower bound on `dim_{F_p} Sha[p]` for the twist shown nontrivial: a
    /// nonzero p-part has even, hence at least 2, dimension.
    pub fn dim_lower_bound(self) -> u32 {
        match self {
            ShaConclusion::Inconclusive => 0,
            _ => 2,
        }
    }
}

pub fn sha_nontriviality(valuation: i64) -> ShaConclusion {
    match valuation.signum() {
        1 => ShaConclusion::ShaDNontrivial,
        -1 => ShaConclusion::ShaDprimeNontrivial,
        _ => ShaConclusion::Inconclusive,
    }
}

fn decimal<S: serde::Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// A plus-space coefficient with its factorization when it fits in 64 bits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactoredCoefficient {
    pub index: u64,
    #[serde(serialize_with = "decimal")]
    pub value: BigInt,
    pub factorization: Option<Factorization>,
    pub v_p: i64,
}

impl FactoredCoefficient {
    fn new(index: u64, value: BigInt, p: u64) -> Result<Self, RatioError> {
        if value.is_zero() {
            return Err(RatioError::VanishingCoefficient { index });
        }
        let v_p = valuation_int(p, &value)?;
        let factorization = value.to_i64().map(factorize);
        Ok(Self { index, value, factorization, v_p })
    }
}

/// Tamagawa terms at `p` in the Bloch-Kato valuation identity, recorded only
/// when both are known to be 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TamagawaTerms {
    pub c_p_d: u32,
    pub c_p_d_prime: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RatioCertificate {
    pub p: u64,
    pub k: u32,
    pub d: Discriminant,
    pub d_prime: Discriminant,
    pub c_d: FactoredCoefficient,
    pub c_d_prime: FactoredCoefficient,
    pub exponent: u32,
    pub v_p_d: i64,
    pub v_p_d_prime: i64,
    /// `2 v_p(c_D) + e v_p(D′) - 2 v_p(c_D′) - e v_p(D)`
    pub valuation: i64,
    pub conclusion: ShaConclusion,
    pub tamagawa_terms: Option<TamagawaTerms>,
    /// `#Γ_Q(A)`; 1 when the residual representation is irreducible.
    pub gamma_term: Option<u32>,
}

impl RatioCertificate {
    pub fn build(
        p: u64,
        k: u32,
        c_d: BigInt,
        c_d_prime: BigInt,
        d: i64,
        d_prime: i64,
    ) -> Result<Self, RatioError> {
        let exponent = kz_ratio_exponent(k)?;
        if d == d_prime {
            return Err(RatioError::SameDiscriminant(d));
        }
        let disc = check_discriminant(d, k)?;
        let disc_prime = check_discriminant(d_prime, k)?;
        let c_d = FactoredCoefficient::new(d.unsigned_abs(), c_d, p)?;
        let c_d_prime = FactoredCoefficient::new(d_prime.unsigned_abs(), c_d_prime, p)?;
        let v_p_d = valuation_int(p, &BigInt::from(d))?;
        let v_p_d_prime = valuation_int(p, &BigInt::from(d_prime))?;
        let e = exponent as i64;
        let valuation = (2 * c_d.v_p + e * v_p_d_prime) - (2 * c_d_prime.v_p + e * v_p_d);
        Ok(Self {
            p,
            k,
            d: disc,
            d_prime: disc_prime,
            c_d,
            c_d_prime,
            exponent,
            v_p_d,
            v_p_d_prime,
            valuation,
            conclusion: sha_nontriviality(valuation),
            tamagawa_terms: None,
            gamma_term: None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictConclusion {
    ExistsSurjection,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub form: FormId,
    pub p: u64,
    pub k: u32,
    pub level: u64,
    pub d: i64,
    pub d_prime: i64,
    pub conditions: ConditionReport,
    pub certificate: RatioCertificate,
    pub sha_dim_lower_bound: u32,
    pub assumptions: Vec<String>,
    pub conclusion: VerdictConclusion,
    /// The module the class group surjects onto, e.g. `M_{delta,517}`.
    pub target: String,
    /// Why the conclusion is inconclusive; empty otherwise.
    pub blockers: Vec<String>,
}

fn check_pair(a: &TwistContext, b: &TwistContext) -> Result<(), RatioError> {
    if a.form != b.form || a.k != b.k || a.level != b.level || a.p != b.p {
        return Err(RatioError::Mismatch(
            "both twists must share form, weight, level and prime".into(),
        ));
    }
    if a.form != Some(FormId::Delta) {
        return Err(RatioError::UnsupportedForm);
    }
    Ok(())
}

/// Runs the whole chain for the pair `(D, D′)`: hypotheses, coefficient
/// ratio, Sha deduction and the resulting surjection claim.
pub fn verdict(
    ctx_d: &TwistContext,
    ctx_d_prime: &TwistContext,
    facts: &FactsFile,
    coeffs: &mut PlusCoefficients,
) -> Result<Verdict, RatioError> {
    check_pair(ctx_d, ctx_d_prime)?;
    let (d, d_prime) = (ctx_d.disc.value, ctx_d_prime.disc.value);
    let p = ctx_d.p;
    let conditions = check_conditions(ctx_d, Some(ctx_d_prime.disc), facts);

    coeffs.ensure(d.unsigned_abs().max(d_prime.unsigned_abs()) as usize)?;
    let c_d = coeffs.get(d.unsigned_abs())?.value;
    let c_d_prime = coeffs.get(d_prime.unsigned_abs())?.value;
    let mut certificate = RatioCertificate::build(p, ctx_d.k, c_d, c_d_prime, d, d_prime)?;

    let t_here = tamagawa_triviality(ctx_d, p, facts);
    let t_there = tamagawa_triviality(ctx_d_prime, p, facts);
    if t_here.is_holds() && t_there.is_holds() {
        certificate.tamagawa_terms = Some(TamagawaTerms { c_p_d: 1, c_p_d_prime: 1 });
    }
    if conditions.c.is_holds() {
        certificate.gamma_term = Some(1);
    }

    let mut blockers = Vec::new();
    for (name, tri) in [
        ("A", &conditions.a),
        ("B", &conditions.b),
        ("C", &conditions.c),
        ("D", &conditions.d_cond),
        ("tamdif", &conditions.tamdif),
    ] {
        if !tri.is_holds() {
            blockers.push(format!("condition {name} {}: {}", tri.state, tri.reason));
        }
    }
    match certificate.conclusion {
        ShaConclusion::ShaDNontrivial => {}
        ShaConclusion::ShaDprimeNontrivial => blockers.push(format!(
            "ratio valuation {} < 0 shows Sha for D′ = {d_prime} nontrivial, not for D = {d}",
            certificate.valuation
        )),
        ShaConclusion::Inconclusive => {
            blockers.push("ratio valuation is 0: no Sha nontriviality can be deduced".into())
        }
    }

    let form = ctx_d.form_label();
    let mut assumptions = vec![
        format!("Bloch-Kato conjecture for {form}⊗χ_{d}"),
        format!("Bloch-Kato conjecture for {form}⊗χ_{d_prime}"),
        "dim_F_p Sha(Q, A_(f,D))[p] is even (self-duality of A_(f,D) and Flach's generalized Cassels-Tate pairing)".to_string(),
    ];
    for key in conditions.fact_dependencies() {
        if key == "builtin:delta_image_contains_sl2" {
            assumptions.push(DELTA_IMAGE_PROVENANCE.to_string());
        } else if let Some(hit) = facts.lookup(&[key.as_str()]) {
            assumptions.push(format!("fact {} = {} ({})", hit.key, hit.value, hit.provenance));
        }
    }

    let conclusion = if blockers.is_empty() {
        VerdictConclusion::ExistsSurjection
    } else {
        VerdictConclusion::Inconclusive
    };
    Ok(Verdict {
        form: FormId::Delta,
        p,
        k: ctx_d.k,
        level: ctx_d.level,
        d,
        d_prime,
        sha_dim_lower_bound: certificate.conclusion.dim_lower_bound(),
        conditions,
        certificate,
        assumptions,
        conclusion,
        target: format!("M_{{{form},{d}}}"),
        blockers,
    })
}
