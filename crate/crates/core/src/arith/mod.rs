//! Number-theoretic substrate: quadratic characters, discriminants,
//! factorization and p-adic valuations.

mod factor;
mod kronecker;

pub use factor::{factorize, is_prime, Factorization};
pub use kronecker::{classify_discriminant, kronecker, Discriminant, DiscriminantKind};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("{0} is not a quadratic discriminant (must be 0 or 1 mod 4)")]
    InvalidDiscriminant(i64),
    #[error("zero is not a quadratic discriminant")]
    ZeroDiscriminant,
    #[error("p-adic valuation of zero is undefined")]
    ZeroValuation,
    #[error("{0} is not prime")]
    NotPrime(u64),
}

/// `v_p(x)` for a nonzero integer.
pub fn valuation_int(p: u64, x: &BigInt) -> Result<i64, ArithError> {
    if !is_prime(p) {
        return Err(ArithError::NotPrime(p));
    }
    if x.is_zero() {
        return Err(ArithError::ZeroValuation);
    }
    let p = BigInt::from(p);
    let mut v = 0;
    let mut m = x.clone();
    loop {
        let (q, r) = num_integer::Integer::div_rem(&m, &p);
        if !r.is_zero() {
            return Ok(v);
        }
        m = q;
        v += 1;
    }
}

/// `v_p(x)` for a nonzero rational: valuation of the numerator minus that of
/// the denominator.
pub fn padic_valuation(p: u64, x: &BigRational) -> Result<i64, ArithError> {
    Ok(valuation_int(p, x.numer())? - valuation_int(p, x.denom())?)
}
