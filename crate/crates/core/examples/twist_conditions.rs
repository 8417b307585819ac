//! Evaluate the hypotheses of the surjection theorem for Δ and a few twists,
//! with and without externally supplied facts.

use twistsha::hypotheses::{check_conditions, FactsFile, TwistContext};
use twistsha::Discriminant;

fn show(p: u64, d: i64, d_prime: i64, facts: &FactsFile) -> Result<(), Box<dyn std::error::Error>> {
    let ctx = TwistContext::delta(p, d)?;
    let report = check_conditions(&ctx, Some(Discriminant::valid(d_prime)?), facts);
    println!("p = {p}, D = {d}, D' = {d_prime} ({} facts)", facts.len());
    for (name, tri) in [
        ("A", &report.a),
        ("B", &report.b),
        ("C", &report.c),
        ("D", &report.d_cond),
        ("tamdif", &report.tamdif),
    ] {
        println!("  {name:<6} {:<8} {}", tri.state, tri.reason);
    }
    match report.selmer_bound.value {
        Some(v) => println!("  selmer bound {v}: {}", report.selmer_bound.rule),
        None => println!("  selmer bound unknown: {}", report.selmer_bound.rule),
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let none = FactsFile::new();
    let dummigan = FactsFile::new().with("tamagawa_equal_at_p:11:517:33", true, "Dummigan, Lemma 6.3");
    show(11, 517, 33, &none)?;
    show(11, 517, 33, &dummigan)?;
    show(67, 2881, 201, &none)?;
    show(691, 5, 8, &none)?;
    show(13, 5, 8, &none)?;
    Ok(())
}
