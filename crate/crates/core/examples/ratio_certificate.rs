//! The p-adic valuation of the ratio of twisted central L-values, computed
//! from plus-space coefficients.
//!
//! ```text
//! cargo run --example ratio_certificate -- 67 2881 201
//! ```

use twistsha::bkratio::RatioCertificate;
use twistsha::forms::PlusCoefficients;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<i64> = std::env::args().skip(1).map(|s| s.parse()).collect::<Result<_, _>>()?;
    let (p, d, d_prime) = match args[..] {
        [p, d, dp] => (p as u64, d, dp),
        [] => (11, 517, 33),
        _ => return Err("usage: ratio_certificate P D D'".into()),
    };
    let mut table = PlusCoefficients::new();
    let c_d = table.get(d.unsigned_abs())?.value;
    let c_dp = table.get(d_prime.unsigned_abs())?.value;
    let cert = RatioCertificate::build(p, 12, c_d, c_dp, d, d_prime)?;
    println!("{}", serde_json::to_string_pretty(&cert)?);
    println!(
        "v_{p}(ratio) = {}, Sha[{p}] lower bound on dimension {}",
        cert.valuation,
        cert.conclusion.dim_lower_bound()
    );
    Ok(())
}
