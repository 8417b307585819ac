//! Named q-expansions and the weight 13/2 plus-space form attached to Δ.
//!
//! The plus-space form is
//!
//! ```text
//! g = 120 * G4(q^4) * Dθ  -  60 * (DG4)(q^4) * θ,      D = q d/dq,
//! ```
//!
//! with `G4 = 1/240 + Σ σ3(n) q^n` and `θ = 1 + 2 Σ q^(n²)`. Writing the
//! z-derivative as `2πi·D` turns the factor `60/2πi` into the integer weights
//! above, provided `G4'(4z)` means the derivative of `G4` evaluated at `4z`
//! (differentiate, then substitute). The other reading, `d/dz[G4(4z)]`, would
//! give `240` in place of `60` and does not reproduce known coefficients.

use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::qseries::{QSeries, QSeriesError};

/// Identifies how the plus-space coefficients were produced. Stored in cache
/// files so that a change of formula invalidates old caches.
pub const KOHNEN_FORMULA_VERSION: &str = "kz-deriv-then-dilate-v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormsError {
    #[error("unknown form tag {0:?} (expected delta, g4, theta, x0_11 or kohnen_lift)")]
    UnknownForm(String),
    #[error("{form} needs precision at least {min}, got {prec}")]
    PrecisionTooSmall { form: FormId, min: usize, prec: usize },
    #[error("internal consistency: {0}")]
    NonIntegral(QSeriesError),
    #[error("coefficient index must be positive")]
    ZeroIndex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormId {
    Delta,
    G4,
    Theta,
    #[serde(rename = "x0_11")]
    X0_11,
    KohnenLift,
}

impl FormId {
    pub const ALL: [FormId; 5] =
        [FormId::Delta, FormId::G4, FormId::Theta, FormId::X0_11, FormId::KohnenLift];

    pub fn tag(self) -> &'static str {
        match self {
            FormId::Delta => "delta",
            FormId::G4 => "g4",
            FormId::Theta => "theta",
            FormId::X0_11 => "x0_11",
            FormId::KohnenLift => "kohnen_lift",
        }
    }

    /// Weight as `(numerator, denominator)`.
    pub fn weight(self) -> (u32, u32) {
        match self {
            FormId::Delta => (12, 1),
            FormId::G4 => (4, 1),
            FormId::Theta => (1, 2),
            FormId::X0_11 => (2, 1),
            FormId::KohnenLift => (13, 2),
        }
    }

    /// Smallest precision the generator accepts.
    pub fn min_prec(self) -> usize {
        match self {
            FormId::Delta | FormId::X0_11 | FormId::KohnenLift => 1,
            FormId::G4 | FormId::Theta => 0,
        }
    }

    /// Whether every coefficient is an integer.
    pub fn is_integral(self) -> bool {
        !matches!(self, FormId::G4)
    }

    pub fn expand(self, prec: usize) -> Result<QSeries, FormsError> {
        if prec < self.min_prec() {
            return Err(FormsError::PrecisionTooSmall { form: self, min: self.min_prec(), prec });
        }
        Ok(match self {
            FormId::Delta => delta_series(prec),
            FormId::G4 => g4_series(prec),
            FormId::Theta => theta_series(prec),
            FormId::X0_11 => x0_11_series(prec),
            FormId::KohnenLift => kohnen_lift(prec)?,
        })
    }
}

impl fmt::Display for FormId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for FormId {
    type Err = FormsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_lowercase().replace('-', "_");
        FormId::ALL
            .into_iter()
            .find(|f| f.tag() == norm)
            .ok_or_else(|| FormsError::UnknownForm(s.to_string()))
    }
}

/// A Fourier coefficient of the plus-space form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlusCoefficient {
    pub index: u64,
    pub value: BigInt,
}

pub fn sigma3(n: u64) -> u64 {
    assert!(n >= 1);
    let mut total = 0;
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            total += d.pow(3);
            let e = n / d;
            if e != d {
                total += e.pow(3);
            }
        }
        d += 1;
    }
    total
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn g4_series(prec: usize) -> QSeries {
    let mut coeffs = Vec::with_capacity(prec + 1);
    coeffs.push(BigRational::new(BigInt::one(), BigInt::from(240)));
    coeffs.extend((1..=prec as u64).map(|n| BigRational::from_integer(sigma3(n).into())));
    QSeries::from_coeffs(coeffs)
}

pub fn theta_series(prec: usize) -> QSeries {
    let mut coeffs = vec![BigRational::zero(); prec + 1];
    coeffs[0] = BigRational::one();
    for n in (1..).take_while(|n| n * n <= prec) {
        coeffs[n * n] = int(2);
    }
    QSeries::from_coeffs(coeffs)
}

/// `∏_{n≥1} (1 - q^n)` through `q^prec`, from Euler's pentagonal numbers.
pub fn euler_product(prec: usize) -> QSeries {
    let mut coeffs = vec![BigRational::zero(); prec + 1];
    coeffs[0] = BigRational::one();
    for k in 1usize.. {
        let sign = if k % 2 == 1 { -1 } else { 1 };
        let lo = k * (3 * k - 1) / 2;
        if lo > prec {
            break;
        }
        coeffs[lo] = int(sign);
        let hi = k * (3 * k + 1) / 2;
        if hi <= prec {
            coeffs[hi] = int(sign);
        }
    }
    QSeries::from_coeffs(coeffs)
}

/// `Δ = q ∏ (1 - q^n)^24`; coefficient `n` is Ramanujan's `τ(n)`.
pub fn delta_series(prec: usize) -> QSeries {
    assert!(prec >= 1, "delta_series needs prec >= 1");
    euler_product(prec - 1).pow(24).shift(1)
}

/// The weight-2 newform of level 11, `q ∏ (1 - q^n)^2 (1 - q^(11n))^2`.
pub fn x0_11_series(prec: usize) -> QSeries {
    assert!(prec >= 1, "x0_11_series needs prec >= 1");
    let e = euler_product(prec - 1);
    let e11 = e.dilate(11).truncate(prec - 1);
    e.mul(&e11).pow(2).shift(1)
}

/// The plus-space form `g` through `q^prec`, checked to be integral.
pub fn kohnen_lift(prec: usize) -> Result<QSeries, FormsError> {
    if prec < 1 {
        return Err(FormsError::PrecisionTooSmall { form: FormId::KohnenLift, min: 1, prec });
    }
    // dilate(G4 through q^(prec/4), 4) is known through q^(4*(prec/4)+3) >= prec
    let g4 = g4_series(prec / 4);
    let theta = theta_series(prec);
    let g4_4 = g4.dilate(4).truncate(prec);
    let dg4_4 = g4.q_derivative().dilate(4).truncate(prec);
    let first = g4_4.mul(&theta.q_derivative());
    let second = dg4_4.mul(&theta);
    let g = QSeries::lincomb(&first, &int(120), &second, &int(-60));
    g.to_integers().map_err(FormsError::NonIntegral)?;
    Ok(g)
}

/// Integer coefficients of `g`, indices `0..=prec`.
pub fn kohnen_lift_integers(prec: usize) -> Result<Vec<BigInt>, FormsError> {
    kohnen_lift(prec)?.to_integers().map_err(FormsError::NonIntegral)
}

/// Memoised plus-space coefficients. Extends geometrically on a miss so that
/// a run of increasing requests costs a bounded number of recomputations.
#[derive(Debug, Default, Clone)]
pub struct PlusCoefficients {
    coeffs: Vec<BigInt>,
}

impl PlusCoefficients {
    pub fn new() -> Self {
        Self::default()
    }

    /// Seeds the table from previously computed coefficients `c_0..=c_prec`.
    pub fn from_coefficients(coeffs: Vec<BigInt>) -> Self {
        Self { coeffs }
    }

    /// Highest index currently known, if any.
    pub fn prec(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Makes sure every index through `prec` is available.
    pub fn ensure(&mut self, prec: usize) -> Result<(), FormsError> {
        if self.prec().is_some_and(|p| p >= prec) {
            return Ok(());
        }
        let target = prec.max(2 * self.coeffs.len()).max(1);
        self.coeffs = kohnen_lift_integers(target)?;
        Ok(())
    }

    pub fn get(&mut self, n: u64) -> Result<PlusCoefficient, FormsError> {
        if n == 0 {
            return Err(FormsError::ZeroIndex);
        }
        self.ensure(n as usize)?;
        Ok(PlusCoefficient { index: n, value: self.coeffs[n as usize].clone() })
    }
}

static SHARED: Mutex<PlusCoefficients> = Mutex::new(PlusCoefficients { coeffs: Vec::new() });

/// `c_n` of the plus-space form, served from a process-wide table.
pub fn plus_coeff(n: u64) -> Result<PlusCoefficient, FormsError> {
    let mut table = SHARED.lock().unwrap_or_else(|e| e.into_inner());
    table.get(n)
}
