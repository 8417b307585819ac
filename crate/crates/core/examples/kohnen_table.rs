//! Factored plus-space coefficients c_{p·i}, as printed by `twistsha table`.
//!
//! ```text
//! cargo run --example kohnen_table -- 67 1 45
//! ```

use num_traits::{ToPrimitive, Zero};
use twistsha::arith::factorize;
use twistsha::forms::PlusCoefficients;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<u64> = std::env::args().skip(1).map(|s| s.parse()).collect::<Result<_, _>>()?;
    let (p, from, to) = match args[..] {
        [p, from, to] => (p, from, to),
        [] => (11, 1, 47),
        _ => return Err("usage: kohnen_table P FROM TO".into()),
    };
    let mut table = PlusCoefficients::new();
    table.ensure((p * to) as usize)?;
    println!("{:>4} | {:>6} | c_n", "i", "n");
    for i in from..=to {
        let c = table.get(p * i)?.value;
        let factored = match c.to_i64() {
            _ if c.is_zero() => String::new(),
            Some(v) => format!(" = {}", factorize(v)),
            None => String::new(),
        };
        println!("{i:>4} | {:>6} | {c}{factored}", p * i);
    }
    Ok(())
}
