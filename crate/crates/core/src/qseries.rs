//! Truncated power series in `q` with exact rational coefficients.
//!
//! A [`QSeries`] is known through `q^prec` inclusive. Binary operations
//! truncate to the smaller precision of their operands, so an unknown
//! coefficient is never silently reported as zero.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QSeriesError {
    #[error("coefficient of q^{index} requested but series is only known through q^{prec}")]
    BeyondPrecision { index: usize, prec: usize },
    #[error("coefficient of q^{index} is {value}, expected an integer")]
    NonIntegral { index: usize, value: BigRational },
}

/// Truncated series `sum_{i <= prec} a_i q^i` over the rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QSeries {
    coeffs: Vec<BigRational>,
}

impl QSeries {
    /// Builds a series from its coefficients; `prec` is `coeffs.len() - 1`.
    ///
    /// Panics on an empty vector, which would have no precision at all.
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the q^0 coefficient");
        Self { coeffs }
    }

    pub fn from_integers<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::from_coeffs(
            coeffs
                .into_iter()
                .map(|c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero(prec: usize) -> Self {
        Self { coeffs: vec![BigRational::zero(); prec + 1] }
    }

    pub fn one(prec: usize) -> Self {
        Self::monomial(0, BigRational::one(), prec)
    }

    /// `c * q^n`, known through `q^prec`. A monomial beyond the precision is
    /// just the zero series.
    pub fn monomial(n: usize, c: BigRational, prec: usize) -> Self {
        let mut s = Self::zero(prec);
        if n <= prec {
            s.coeffs[n] = c;
        }
        s
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Result<&BigRational, QSeriesError> {
        self.coeffs
            .get(i)
            .ok_or(QSeriesError::BeyondPrecision { index: i, prec: self.prec() })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Drops everything above `q^prec`. Asking for more precision than is
    /// known leaves the series unchanged.
    pub fn truncate(&self, prec: usize) -> Self {
        let keep = prec.min(self.prec()) + 1;
        Self { coeffs: self.coeffs[..keep].to_vec() }
    }

    /// `ca * a + cb * b`.
    pub fn lincomb(a: &QSeries, ca: &BigRational, b: &QSeries, cb: &BigRational) -> QSeries {
        let prec = a.prec().min(b.prec());
        let coeffs = a.coeffs[..=prec]
            .iter()
            .zip(&b.coeffs[..=prec])
            .map(|(x, y)| ca * x + cb * y)
            .collect();
        QSeries { coeffs }
    }

    pub fn scale(&self, c: &BigRational) -> QSeries {
        QSeries { coeffs: self.coeffs.iter().map(|x| c * x).collect() }
    }

    /// Cauchy product truncated at the smaller precision.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let prec = self.prec().min(other.prec());
        let (da, a) = integral_parts(&self.coeffs[..=prec]);
        let (db, b) = integral_parts(&other.coeffs[..=prec]);
        let product = convolve(&a, &b, prec);
        let denom = da * db;
        let coeffs = product
            .into_iter()
            .map(|c| BigRational::new(c, denom.clone()))
            .collect();
        QSeries { coeffs }
    }

    /// `self^e` by repeated squaring; `pow(0)` is the unit series.
    pub fn pow(&self, mut e: u32) -> QSeries {
        let mut base = self.clone();
        let mut acc = QSeries::one(self.prec());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// The operator `q d/dq`: coefficient `i` becomes `i * a_i`.
    pub fn q_derivative(&self) -> QSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect();
        QSeries { coeffs }
    }

    /// Substitutes `q -> q^m`. The result is determined through
    /// `q^(m*prec + m - 1)`: the next unknown input coefficient lands at
    /// `q^(m*(prec+1))`.
    pub fn dilate(&self, m: usize) -> QSeries {
        assert!(m >= 1, "dilation factor must be positive");
        let prec = m * self.prec() + (m - 1);
        let mut out = vec![BigRational::zero(); prec + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[m * i] = c.clone();
        }
        QSeries { coeffs: out }
    }

    /// Multiplies by `q^k`. The product is known `k` places further out.
    pub fn shift(&self, k: usize) -> QSeries {
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        QSeries { coeffs }
    }

    /// The coefficients as integers, failing at the first one that is not.
    pub fn to_integers(&self) -> Result<Vec<BigInt>, QSeriesError> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(index, c)| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(QSeriesError::NonIntegral { index, value: c.clone() })
                }
            })
            .collect()
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QSeries({} + O(q^{}))", self, self.prec() + 1)
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            first = false;
            let mag = c.abs();
            match i {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() => {}
                _ => write!(f, "{mag}*")?,
            }
            match i {
                0 => {}
                1 => f.write_str("q")?,
                _ => write!(f, "q^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Common denominator and the numerators over it.
fn integral_parts(coeffs: &[BigRational]) -> (BigInt, Vec<BigInt>) {
    let denom = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let nums = coeffs
        .iter()
        .map(|c| c.numer() * (&denom / c.denom()))
        .collect();
    (denom, nums)
}

/// Truncated integer convolution. Runs in `i128` when the worst-case term sum
/// provably fits, and in `BigInt` otherwise. Zero coefficients of the sparser
/// operand are skipped, which matters for theta-type series.
fn convolve(a: &[BigInt], b: &[BigInt], prec: usize) -> Vec<BigInt> {
    let support = |v: &[BigInt]| -> Vec<usize> {
        v.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect()
    };
    let (sa, sb) = (support(a), support(b));
    // iterate over the sparser side
    let (dense, sparse, sparse_idx) = if sa.len() <= sb.len() { (b, a, sa) } else { (a, b, sb) };

    let max_bits = |v: &[BigInt]| v.iter().map(|c| c.bits()).max().unwrap_or(0);
    let terms = sparse_idx.len().max(1) as u64;
    let bound_bits = max_bits(dense) + max_bits(sparse) + (64 - terms.leading_zeros() as u64);

    if bound_bits <= 126 {
        let d: Vec<i128> = dense.iter().map(|c| c.to_i128().unwrap()).collect();
        let mut out = vec![0i128; prec + 1];
        for &i in &sparse_idx {
            let s = sparse[i].to_i128().unwrap();
            for (o, x) in out[i..].iter_mut().zip(&d) {
                *o += s * x;
            }
        }
        out.into_iter().map(BigInt::from).collect()
    } else {
        let mut out = vec![BigInt::zero(); prec + 1];
        for &i in &sparse_idx {
            let s = &sparse[i];
            for (o, x) in out[i..].iter_mut().zip(dense) {
                if !x.is_zero() {
                    *o += s * x;
                }
            }
        }
        out
    }
}
