//! Facts files and the coefficient cache: how they are validated, stored and
//! reused.

use twistsha::cli::{load_cache, save_cache, CacheFile};
use twistsha::forms::PlusCoefficients;
use twistsha::hypotheses::FactsFile;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let facts = FactsFile::new()
        .with("tamagawa_equal_at_p:11:517:33", true, "Dummigan, Lemma 6.3")
        .with("m_splits_at_p:7:5", true, "local computation");
    print!("{}", facts.to_json_string());

    for bad in [
        r#"{"tamagawa_equal_at_p:11:517:33": {"value": true, "provenance": ""}}"#,
        r#"{"frobenius_trace": {"value": true, "provenance": "x"}}"#,
        r#"{"t_mod_pn_splits_all_n:7:5": {"value": true, "provenance": "a"}, "m_splits_at_p:7:5": {"value": false, "provenance": "b"}}"#,
    ] {
        println!("rejected: {}", FactsFile::from_json_str(bad).unwrap_err());
    }

    let dir = std::env::temp_dir().join(format!("twistsha-cache-demo-{}", std::process::id()));
    let path = dir.join("plus.json");
    let mut table = PlusCoefficients::new();
    table.ensure(600)?;
    save_cache(&path, &table)?;
    let reloaded = load_cache(&path).ok_or("cache did not reload")?;
    println!("cache at {} holds {} coefficients", path.display(), reloaded.coefficients().len());

    let stale = CacheFile { version: "kz-old".into(), ..CacheFile::from_table(&table).unwrap() };
    println!("stale version accepted: {}", stale.into_table().is_some());
    std::fs::remove_dir_all(dir)?;
    Ok(())
}
