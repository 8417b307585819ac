//! Discriminants, Kronecker symbols, factorizations and p-adic valuations.

use num_bigint::BigInt;
use twistsha::arith::{classify_discriminant, factorize, kronecker, valuation_int};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for d in [-4i64, 5, 12, 33, 201, 517, 2881, 2116] {
        let disc = classify_discriminant(d);
        let chars: Vec<String> = [2i64, 3, 5, 7, 11, 67]
            .iter()
            .map(|&q| kronecker(d, q).map(|s| format!("{s:+}")))
            .collect::<Result<_, _>>()?;
        println!("{d:>5}: {:?}, (D/q) for q = 2,3,5,7,11,67: {}", disc.kind, chars.join(" "));
    }
    for n in [-6480i64, 52000080, -2622438960, 999_999_937] {
        println!("{n} = {}", factorize(n));
    }
    let c = BigInt::from(-2622438960i64);
    println!("v_67({c}) = {}", valuation_int(67, &c)?);
    Ok(())
}
