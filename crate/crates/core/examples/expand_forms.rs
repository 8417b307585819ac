//! Print the first coefficients of every built-in form.
//!
//! ```text
//! cargo run --example expand_forms -- 12
//! ```

use twistsha::FormId;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let terms: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(10);
    for form in FormId::ALL {
        let (num, den) = form.weight();
        let weight = if den == 1 { num.to_string() } else { format!("{num}/{den}") };
        let series = form.expand(terms.max(form.min_prec()))?;
        println!("{:<12} weight {:<5} {}", form.tag(), weight, series);
    }
    Ok(())
}
