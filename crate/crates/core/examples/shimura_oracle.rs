//! Cross-check the plus-space form against the Shimura lift of Δ:
//! c(D n²) = c(D) Σ_{d|n} μ(d) χ_D(d) d⁵ τ(n/d).

use num_bigint::BigInt;
use num_traits::Zero;
use twistsha::arith::{factorize, kronecker};
use twistsha::forms::{delta_series, PlusCoefficients};

fn mobius(n: u64) -> i64 {
    let f = factorize(n as i64);
    if f.factors.values().any(|&e| e > 1) {
        0
    } else if f.factors.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tau = delta_series(40).to_integers()?;
    let mut plus = PlusCoefficients::new();
    for d in [1i64, 5, 8, 12, 13] {
        let c_d = plus.get(d as u64)?.value;
        for n in 2..=6u64 {
            let mut sum = BigInt::zero();
            for e in (1..=n).filter(|e| n % e == 0) {
                let chi = kronecker(d, e as i64)? as i64;
                sum += BigInt::from(mobius(e) * chi) * BigInt::from(e).pow(5) * &tau[(n / e) as usize];
            }
            let predicted = &c_d * sum;
            let actual = plus.get(d as u64 * n * n)?.value;
            let mark = if predicted == actual { "ok" } else { "MISMATCH" };
            println!("c({:>4}) = {actual:>14}   lift of c({d}) = {predicted:>14}   {mark}", d as u64 * n * n);
        }
    }
    Ok(())
}
