//! Command-line surface: argument parsing, JSON documents, the coefficient
//! cache and facts-file ingestion.
//!
//! Exit codes: `0` success (for `verdict`, a surjection proven under the
//! listed assumptions), `3` inconclusive, `2` bad input, `1` internal error.
//! Machine output is JSON with sorted keys and big integers as decimal
//! strings; identical invocations give byte-identical output unless `--stamp`
//! is passed.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::arith::{factorize, ArithError, Discriminant};
use crate::bkratio::{verdict, RatioCertificate, RatioError, VerdictConclusion};
use crate::forms::{FormId, FormsError, PlusCoefficients, KOHNEN_FORMULA_VERSION};
use crate::hypotheses::{check_conditions, FactsError, FactsFile, HypothesisError, TwistContext};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

pub const CACHE_ENV: &str = "TWISTSHA_CACHE";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    BadInput(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::BadInput(_) => EXIT_BAD_INPUT,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl From<FactsError> for CliError {
    fn from(e: FactsError) -> Self {
        CliError::BadInput(format!("facts file: {e}"))
    }
}

impl From<HypothesisError> for CliError {
    fn from(e: HypothesisError) -> Self {
        CliError::BadInput(e.to_string())
    }
}

impl From<ArithError> for CliError {
    fn from(e: ArithError) -> Self {
        CliError::BadInput(e.to_string())
    }
}

impl From<FormsError> for CliError {
    fn from(e: FormsError) -> Self {
        match e {
            FormsError::NonIntegral(_) => CliError::Internal(e.to_string()),
            _ => CliError::BadInput(e.to_string()),
        }
    }
}

impl From<RatioError> for CliError {
    fn from(e: RatioError) -> Self {
        match e {
            RatioError::Forms(f) => f.into(),
            other => CliError::BadInput(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "twistsha", version, about = "Plus-space coefficients, twisted L-value ratios and class-group surjection certificates for Δ")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Default)]
pub struct GlobalOpts {
    /// Facts file (JSON) with externally asserted local facts.
    #[arg(long, global = true, value_name = "PATH")]
    pub facts: Option<PathBuf>,
    /// Plus-space coefficient cache.
    #[arg(long, global = true, value_name = "PATH", env = CACHE_ENV)]
    pub cache: Option<PathBuf>,
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "text")]
    pub json: bool,
    /// Emit plain text.
    #[arg(long, global = true)]
    pub text: bool,
    /// Add a generation timestamp to the provenance block.
    #[arg(long, global = true)]
    pub stamp: bool,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Print the coefficients of a named form.
    Expand {
        /// delta, g4, theta, x0_11 or kohnen_lift
        form: String,
        /// Highest power of q to print.
        terms: usize,
    },
    /// One coefficient of the plus-space form attached to Δ.
    Coeff { n: u64 },
    /// Factored coefficients c_{p*i} for i in from..=to.
    Table { p: u64, from: u64, to: u64 },
    /// p-adic valuation of the L-value ratio for (D, D′).
    Ratio {
        p: u64,
        #[arg(allow_negative_numbers = true)]
        d: i64,
        #[arg(allow_negative_numbers = true)]
        d_prime: i64,
    },
    /// Evaluate conditions (A)-(D) for Δ twisted by D at p.
    Check {
        p: u64,
        #[arg(allow_negative_numbers = true)]
        d: i64,
        #[arg(allow_negative_numbers = true)]
        d_prime: Option<i64>,
    },
    /// Full certificate for the pair (D, D′).
    Verdict {
        p: u64,
        #[arg(allow_negative_numbers = true)]
        d: i64,
        #[arg(allow_negative_numbers = true)]
        d_prime: i64,
    },
}

/// What a command produced: the text for stdout and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub exit_code: i32,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Self { stdout, exit_code: EXIT_OK }
    }
}

/// On-disk cache of plus-space coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheFile {
    pub version: String,
    pub form: String,
    pub prec: usize,
    pub coefficients: Vec<String>,
}

impl CacheFile {
    pub fn from_table(table: &PlusCoefficients) -> Option<Self> {
        let prec = table.prec()?;
        Some(Self {
            version: KOHNEN_FORMULA_VERSION.to_string(),
            form: FormId::KohnenLift.tag().to_string(),
            prec,
            coefficients: table.coefficients().iter().map(ToString::to_string).collect(),
        })
    }

    /// The coefficients, or `None` if the file was written by another formula
    /// version, for another form, or is malformed.
    pub fn into_table(self) -> Option<PlusCoefficients> {
        if self.version != KOHNEN_FORMULA_VERSION
            || self.form != FormId::KohnenLift.tag()
            || self.coefficients.len() != self.prec + 1
        {
            return None;
        }
        let coeffs: Option<Vec<BigInt>> = self.coefficients.iter().map(|s| s.parse().ok()).collect();
        Some(PlusCoefficients::from_coefficients(coeffs?))
    }
}

/// Reads a cache, treating anything unusable as absent.
pub fn load_cache(path: &Path) -> Option<PlusCoefficients> {
    let text = fs::read_to_string(path).ok()?;
    serde_json::from_str::<CacheFile>(&text).ok()?.into_table()
}

/// Writes the cache through a temporary file and a rename, so readers never
/// see a partial file.
pub fn save_cache(path: &Path, table: &PlusCoefficients) -> Result<(), CliError> {
    let Some(doc) = CacheFile::from_table(table) else {
        return Ok(());
    };
    let mut body = serde_json::to_string(&doc).map_err(|e| CliError::Internal(e.to_string()))?;
    body.push('\n');
    let file_name = path
        .file_name()
        .ok_or_else(|| CliError::BadInput(format!("cache path {} has no file name", path.display())))?;
    let mut tmp_name = OsString::from(".");
    tmp_name.push(file_name);
    tmp_name.push(format!(".tmp{}", std::process::id()));
    let tmp = path.with_file_name(tmp_name);
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::Internal(format!("cache dir: {e}")))?;
    }
    fs::write(&tmp, body).map_err(|e| CliError::Internal(format!("cache write: {e}")))?;
    fs::rename(&tmp, path).map_err(|e| CliError::Internal(format!("cache rename: {e}")))?;
    Ok(())
}

/// Plus-space coefficients backed by an optional cache file.
pub struct CoefficientStore {
    table: PlusCoefficients,
    path: Option<PathBuf>,
    loaded_prec: Option<usize>,
}

impl CoefficientStore {
    pub fn open(path: Option<&Path>) -> Self {
        let table = path.and_then(load_cache).unwrap_or_default();
        let loaded_prec = table.prec();
        Self { table, path: path.map(Path::to_path_buf), loaded_prec }
    }

    pub fn ensure(&mut self, prec: usize) -> Result<(), CliError> {
        self.table.ensure(prec)?;
        Ok(())
    }

    pub fn table(&mut self) -> &mut PlusCoefficients {
        &mut self.table
    }

    /// Writes back if anything beyond the loaded precision was computed.
    pub fn persist(&self) -> Result<(), CliError> {
        match &self.path {
            Some(path) if self.table.prec() > self.loaded_prec => save_cache(path, &self.table),
            _ => Ok(()),
        }
    }
}

pub fn load_facts(path: Option<&Path>) -> Result<FactsFile, CliError> {
    match path {
        None => Ok(FactsFile::new()),
        Some(p) => {
            let text = fs::read_to_string(p)
                .map_err(|e| CliError::BadInput(format!("cannot read facts file {}: {e}", p.display())))?;
            Ok(FactsFile::from_json_str(&text)?)
        }
    }
}

fn provenance(opts: &GlobalOpts) -> Value {
    let mut v = json!({
        "tool": "twistsha",
        "version": env!("CARGO_PKG_VERSION"),
        "formula": KOHNEN_FORMULA_VERSION,
    });
    if opts.stamp {
        let now = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        v["generated_at_unix"] = json!(now);
    }
    v
}

/// Serializes with sorted keys and a trailing newline.
fn render<T: Serialize>(doc: &T, opts: &GlobalOpts) -> Result<String, CliError> {
    let mut value = serde_json::to_value(doc).map_err(|e| CliError::Internal(e.to_string()))?;
    if let Value::Object(map) = &mut value {
        map.insert("provenance".into(), provenance(opts));
    }
    let mut s = serde_json::to_string_pretty(&value).map_err(|e| CliError::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// `-6480=-2^4·3^4·5`, or `0`.
pub fn render_factored(c: &BigInt) -> String {
    if c.is_zero() {
        return "0".into();
    }
    match c.to_i64() {
        Some(v) => format!("{c}={}", factorize(v)),
        None => c.to_string(),
    }
}

fn validate_prime(p: u64) -> Result<(), CliError> {
    if p == 2 || !crate::arith::is_prime(p) {
        return Err(CliError::BadInput(format!("{p} is not an odd prime")));
    }
    Ok(())
}

fn cmd_expand(form: &str, terms: usize, opts: &GlobalOpts) -> Result<Output, CliError> {
    let form: FormId = form.parse()?;
    if terms < 1 {
        return Err(CliError::BadInput("terms must be at least 1".into()));
    }
    let series = form.expand(terms)?;
    // cusp forms start at q^1
    let start = if form.min_prec() == 1 { 1 } else { 0 };
    let coeffs: Vec<String> = series.coeffs()[start..].iter().map(ToString::to_string).collect();
    if opts.json {
        let (num, den) = form.weight();
        let weight = if den == 1 { num.to_string() } else { format!("{num}/{den}") };
        let doc = json!({
            "form": form.tag(),
            "weight": weight,
            "start": start,
            "prec": terms,
            "integral": form.is_integral(),
            "coefficients": coeffs,
        });
        Ok(Output::ok(render(&doc, opts)?))
    } else {
        Ok(Output::ok(format!("{}\n", coeffs.join(", "))))
    }
}

fn cmd_coeff(n: u64, opts: &GlobalOpts) -> Result<Output, CliError> {
    let mut store = CoefficientStore::open(opts.cache.as_deref());
    let c = store.table().get(n)?;
    store.persist()?;
    let factorization = c.value.to_i64().filter(|v| *v != 0).map(factorize);
    if opts.text {
        return Ok(Output::ok(format!("{}\n", c.value)));
    }
    let doc = json!({
        "form": FormId::KohnenLift.tag(),
        "index": n,
        "value": c.value.to_string(),
        "factorization": factorization,
        "rendered": render_factored(&c.value),
    });
    Ok(Output::ok(render(&doc, opts)?))
}

fn cmd_table(p: u64, from: u64, to: u64, opts: &GlobalOpts) -> Result<Output, CliError> {
    if !crate::arith::is_prime(p) {
        return Err(CliError::BadInput(format!("{p} is not prime")));
    }
    if from < 1 || from > to {
        return Err(CliError::BadInput(format!("need 1 <= from <= to, got {from}..{to}")));
    }
    let mut store = CoefficientStore::open(opts.cache.as_deref());
    store.ensure((p * to) as usize)?;
    let mut rows = Vec::new();
    for i in from..=to {
        let c = store.table().get(p * i)?.value;
        rows.push((i, p * i, c));
    }
    store.persist()?;
    if opts.json {
        let rows: Vec<Value> = rows
            .iter()
            .map(|(i, n, c)| {
                json!({
                    "i": i,
                    "n": n,
                    "value": c.to_string(),
                    "rendered": render_factored(c),
                })
            })
            .collect();
        let doc = json!({ "p": p, "from": from, "to": to, "rows": rows });
        return Ok(Output::ok(render(&doc, opts)?));
    }
    let mut out = String::new();
    for (i, n, c) in rows {
        out.push_str(&format!("{i} | {n} | {}\n", render_factored(&c)));
    }
    Ok(Output::ok(out))
}

fn cmd_ratio(p: u64, d: i64, d_prime: i64, opts: &GlobalOpts) -> Result<Output, CliError> {
    validate_prime(p)?;
    let mut store = CoefficientStore::open(opts.cache.as_deref());
    store.ensure(d.unsigned_abs().max(d_prime.unsigned_abs()) as usize)?;
    let c_d = store.table().get(d.unsigned_abs())?.value;
    let c_dp = store.table().get(d_prime.unsigned_abs())?.value;
    store.persist()?;
    let cert = RatioCertificate::build(p, 12, c_d, c_dp, d, d_prime)?;
    Ok(Output::ok(render(&cert, opts)?))
}

fn cmd_check(p: u64, d: i64, d_prime: Option<i64>, opts: &GlobalOpts) -> Result<Output, CliError> {
    validate_prime(p)?;
    let facts = load_facts(opts.facts.as_deref())?;
    let ctx = TwistContext::delta(p, d)?;
    let dp = d_prime
        .map(|v| Discriminant::valid(v).map_err(CliError::from))
        .transpose()?;
    let report = check_conditions(&ctx, dp, &facts);
    let code = if report.all_hold() { EXIT_OK } else { EXIT_INCONCLUSIVE };
    Ok(Output { stdout: render(&report, opts)?, exit_code: code })
}

fn cmd_verdict(p: u64, d: i64, d_prime: i64, opts: &GlobalOpts) -> Result<Output, CliError> {
    validate_prime(p)?;
    let facts = load_facts(opts.facts.as_deref())?;
    let ctx_d = TwistContext::delta(p, d)?;
    let ctx_dp = TwistContext::delta(p, d_prime)?;
    let mut store = CoefficientStore::open(opts.cache.as_deref());
    let v = verdict(&ctx_d, &ctx_dp, &facts, store.table())?;
    store.persist()?;
    let code = match v.conclusion {
        VerdictConclusion::ExistsSurjection => EXIT_OK,
        VerdictConclusion::Inconclusive => EXIT_INCONCLUSIVE,
    };
    Ok(Output { stdout: render(&v, opts)?, exit_code: code })
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let opts = &cli.global;
    match &cli.command {
        Command::Expand { form, terms } => cmd_expand(form, *terms, opts),
        Command::Coeff { n } => cmd_coeff(*n, opts),
        Command::Table { p, from, to } => cmd_table(*p, *from, *to, opts),
        Command::Ratio { p, d, d_prime } => cmd_ratio(*p, *d, *d_prime, opts),
        Command::Check { p, d, d_prime } => cmd_check(*p, *d, *d_prime, opts),
        Command::Verdict { p, d, d_prime } => cmd_verdict(*p, *d, *d_prime, opts),
    }
}

/// Parses `args` (including the program name) and runs the command. Returns
/// the exit code with stdout and stderr contents.
pub fn run_args<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_BAD_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() { (code, String::new(), text) } else { (code, text, String::new()) };
        }
    };
    match run(&cli) {
        Ok(out) => (out.exit_code, out.stdout, String::new()),
        Err(e) => (e.exit_code(), String::new(), format!("twistsha: {e}\n")),
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let (code, out, err) = run_args(std::env::args_os());
    print!("{out}");
    eprint!("{err}");
    code
}
