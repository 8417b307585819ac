//! End-to-end certificate with a facts file and an on-disk coefficient cache,
//! through the same code path as `twistsha verdict`.
//!
//! ```text
//! cargo run --example verdict -- 11 517 33
//! ```

use std::path::Path;

use twistsha::cli::run_args;

fn main() {
    let mut args: Vec<String> = std::env::args().skip(1).collect();
    if args.is_empty() {
        args = ["11", "517", "33"].map(String::from).to_vec();
    }
    let facts = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data/tamagawa_11_517_33.json");
    let cache = std::env::temp_dir().join("twistsha-example-cache.json");
    let mut argv = vec!["twistsha".to_string(), "verdict".to_string()];
    argv.extend(args);
    argv.extend(["--facts".into(), facts.display().to_string(), "--cache".into(), cache.display().to_string()]);
    let (code, out, err) = run_args(argv);
    print!("{out}");
    eprint!("{err}");
    let meaning = match code {
        0 => "surjection established under the listed assumptions",
        3 => "inconclusive",
        2 => "bad input",
        _ => "internal error",
    };
    eprintln!("exit {code}: {meaning}");
}
