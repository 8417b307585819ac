use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::HypothesisError;
use crate::arith::{is_prime, Discriminant};
use crate::forms::{delta_series, FormId};

/// The data every hypothesis check is parameterised by: a form of weight `k`
/// and level `N`, an odd prime `p`, a twisting discriminant `D`, and the
/// `p`-th Fourier coefficient `a_p` of the form.
///
/// `form` is `None` for a caller-described eigenform known only through
/// `(k, N, a_p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistContext {
    pub form: Option<FormId>,
    pub k: u32,
    pub level: u64,
    pub p: u64,
    pub disc: Discriminant,
    pub a_p: BigInt,
}

/// How `p` sits relative to `D`; selects the block of exclusion cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DClass {
    /// `p ∤ D`
    PCoprimeToD,
    /// `p | D` and `D ≠ p*`
    PDividesD,
    /// `D = p* = (-1)^((p-1)/2) p`
    DIsPStar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionType {
    Ordinary,
    Supersingular,
}

impl fmt::Display for ReductionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            ReductionType::Ordinary => "ordinary",
            ReductionType::Supersingular => "supersingular",
        })
    }
}

impl TwistContext {
    pub fn new(
        form: Option<FormId>,
        k: u32,
        level: u64,
        p: u64,
        disc: Discriminant,
        a_p: BigInt,
    ) -> Result<Self, HypothesisError> {
        if k < 2 || k % 2 == 1 {
            return Err(HypothesisError::InvalidWeight(k));
        }
        if p == 2 || !is_prime(p) {
            return Err(HypothesisError::NotOddPrime(p));
        }
        if level == 0 {
            return Err(HypothesisError::InvalidLevel);
        }
        if !disc.is_valid() {
            return Err(HypothesisError::InvalidDiscriminant(disc.value));
        }
        if form == Some(FormId::Delta) {
            if k != 12 || level != 1 {
                return Err(HypothesisError::FormMismatch(
                    "delta has weight 12 and level 1".into(),
                ));
            }
            let tau = tau(p);
            if a_p != tau {
                return Err(HypothesisError::FormMismatch(format!(
                    "a_{p} of delta is {tau}, not {a_p}"
                )));
            }
        } else if matches!(form, Some(f) if f != FormId::X0_11) {
            return Err(HypothesisError::FormMismatch(format!(
                "{} is not an even-weight eigenform",
                form.unwrap()
            )));
        }
        Ok(Self { form, k, level, p, disc, a_p })
    }

    /// Δ twisted by `D` at `p`, with `a_p = τ(p)` read off the product
    /// expansion.
    pub fn delta(p: u64, d: i64) -> Result<Self, HypothesisError> {
        if p == 2 || !is_prime(p) {
            return Err(HypothesisError::NotOddPrime(p));
        }
        let disc = Discriminant::new(d).map_err(|_| HypothesisError::InvalidDiscriminant(d))?;
        Self::new(Some(FormId::Delta), 12, 1, p, disc, tau(p))
    }

    /// Same form and prime, different discriminant.
    pub fn with_discriminant(&self, disc: Discriminant) -> Result<Self, HypothesisError> {
        if !disc.is_valid() {
            return Err(HypothesisError::InvalidDiscriminant(disc.value));
        }
        Ok(Self { disc, ..self.clone() })
    }

    pub fn form_label(&self) -> &'static str {
        self.form.map(FormId::tag).unwrap_or("f")
    }

    pub fn a_p_mod_p(&self) -> u64 {
        self.a_p.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }

    pub fn a_p_is_one_mod_p(&self) -> bool {
        self.a_p_mod_p() == 1
    }

    /// `p* = (-1)^((p-1)/2) p`.
    pub fn p_star(&self) -> i64 {
        let p = self.p as i64;
        if self.p % 4 == 1 {
            p
        } else {
            -p
        }
    }

    pub fn d_class(&self) -> DClass {
        let d = self.disc.value;
        if d.rem_euclid(self.p as i64) != 0 {
            DClass::PCoprimeToD
        } else if d == self.p_star() {
            DClass::DIsPStar
        } else {
            DClass::PDividesD
        }
    }

    pub fn good_reduction(&self) -> bool {
        !self.level.is_multiple_of(self.p)
    }
}

fn tau(p: u64) -> BigInt {
    delta_series(p as usize).to_integers().expect("delta is integral")[p as usize].clone()
}

/// Ordinary iff `a_p ≢ 0 (mod p)`. Requires `p ∤ N`.
pub fn reduction_type(ctx: &TwistContext) -> Result<ReductionType, HypothesisError> {
    if !ctx.good_reduction() {
        return Err(HypothesisError::BadReduction { p: ctx.p, level: ctx.level });
    }
    Ok(if ctx.a_p_mod_p() == 0 {
        ReductionType::Supersingular
    } else {
        ReductionType::Ordinary
    })
}
