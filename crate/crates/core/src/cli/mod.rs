//! Command-line front end.
//!
//! Settings come from flags, then from an optional `--config` file of
//! `key = value` lines (TOML), then from defaults. Exit codes: 0 success,
//! 1 a checked property failed, 2 invalid input, 3 an iteration cap was hit.

mod commands;
pub mod corpus;
pub mod parse;
mod render;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::best::Limit;
use crate::error::{Error, Result};
use crate::expansion::{Rule, DEFAULT_PERIOD_CAP};
use crate::rosen::Kind;
use crate::uniform::OptStream;
use commands::KMode;
use parse::parse_alpha;

pub use parse::{sqrt17_example, parse_surd, AlphaInput};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "h4", version, about = "Exact H4-expansions, Rosen fractions and best approximations")]
pub struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Shorthand for --format json
    #[arg(long, global = true, conflicts_with_all = ["format", "csv"])]
    pub json: bool,
    /// Shorthand for --format csv
    #[arg(long, global = true, conflicts_with = "format")]
    pub csv: bool,
    /// Corpus RNG seed
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Bound on digits, period search and scanned denominators
    #[arg(long, global = true)]
    pub cap_iterations: Option<usize>,
    /// Key-value settings file; flags take precedence
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct AlphaArg {
    /// JSON surd literal, `one`, `paper-example` or `stream:…`
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// H4-expansion digits
    Expand {
        #[command(flatten)]
        alpha: AlphaArg,
        /// Digit rule: four-blocks or three-powers
        #[arg(long, conflicts_with = "alpha")]
        stream: Option<String>,
        #[arg(long)]
        digits: Option<usize>,
    },
    /// Rosen continued fraction and its convergents
    Rosen {
        #[command(flatten)]
        alpha: AlphaArg,
        #[arg(long)]
        digits: Option<usize>,
    },
    /// Dual Rosen continued fraction and its convergents
    DualRosen {
        #[command(flatten)]
        alpha: AlphaArg,
        #[arg(long)]
        digits: Option<usize>,
    },
    /// H4-best approximations from the successor chain
    Best {
        #[command(flatten)]
        alpha: AlphaArg,
        #[arg(long, conflicts_with = "count")]
        max_q: Option<u64>,
        #[arg(long)]
        count: Option<usize>,
    },
    /// H4-best approximations by brute force over denominators
    Oracle {
        #[command(flatten)]
        alpha: AlphaArg,
        #[arg(long)]
        max_q: Option<u64>,
    },
    /// Classify p/q against |α − p/q| < 1/(2q²) and best-approximation membership
    Legendre {
        #[command(flatten)]
        alpha: AlphaArg,
        /// Numerator as a,b for a + b√2
        #[arg(long, allow_hyphen_values = true)]
        p: Option<String>,
        /// Denominator as a,b for a + b√2
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
    },
    /// Uniform approximation constant K(α)
    K {
        #[command(flatten)]
        alpha: AlphaArg,
        /// Exact K from the period of the expansion (the default)
        #[arg(long, conflicts_with = "numeric")]
        exact: bool,
        /// Sup of the last records of a long run; not certified
        #[arg(long)]
        numeric: bool,
        /// Records at the end of the run taken into the sup
        #[arg(long, requires = "numeric")]
        window: Option<usize>,
        /// Records computed for the numeric sup
        #[arg(long, requires = "numeric")]
        records: Option<usize>,
        /// Also list this many exact uniform records
        #[arg(long)]
        list: Option<usize>,
    },
    /// Dirichlet witnesses for N = 1 ..= n-max
    Dirichlet {
        #[command(flatten)]
        alpha: AlphaArg,
        #[arg(long)]
        n_max: Option<u64>,
    },
    /// Checker values along the sharpness streams
    Optimality {
        /// A (four-blocks) or B (three-powers)
        #[arg(long)]
        stream: Option<String>,
        #[arg(long)]
        i_max: Option<u32>,
    },
    /// Seeded random surds
    Corpus {
        #[arg(long)]
        size: Option<usize>,
        #[arg(long)]
        coeff_bound: Option<i64>,
    },
}

const CONFIG_KEYS: [&str; 19] = [
    "format",
    "seed",
    "cap-iterations",
    "prng",
    "alpha",
    "stream",
    "digits",
    "max-q",
    "count",
    "p",
    "q",
    "mode",
    "window",
    "records",
    "list",
    "n-max",
    "i-max",
    "size",
    "coeff-bound",
];

/// The only corpus generator this build implements.
pub const PRNG: &str = "chacha8";

/// Flags resolved against the config file and defaults.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub format: Format,
    pub seed: u64,
    pub cap_iterations: usize,
    settings: BTreeMap<String, String>,
}

fn load_settings(path: &PathBuf) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Validation(format!("cannot read {}: {e}", path.display())))?;
    parse_settings(&text)
}

/// Reads `key = value` lines; values may be quoted strings, integers or
/// booleans.
pub fn parse_settings(text: &str) -> Result<BTreeMap<String, String>> {
    let table: toml::Table = text.parse().map_err(|e: toml::de::Error| Error::Parse {
        position: e.span().map_or(0, |s| s.start),
        message: e.message().to_string(),
    })?;
    let mut out = BTreeMap::new();
    for (k, v) in table {
        if !CONFIG_KEYS.contains(&k.as_str()) {
            return Err(Error::Validation(format!("unknown config key {k:?}")));
        }
        let s = match v {
            toml::Value::String(s) => s,
            toml::Value::Integer(i) => i.to_string(),
            toml::Value::Boolean(b) => b.to_string(),
            other => return Err(Error::Validation(format!("config key {k:?}: unsupported value {other}"))),
        };
        out.insert(k, s);
    }
    if let Some(p) = out.get("prng") {
        if p != PRNG {
            return Err(Error::Validation(format!("prng {p:?} is not supported; this build uses {PRNG}")));
        }
    }
    Ok(out)
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<RunConfig> {
        let settings = match &cli.config {
            Some(p) => load_settings(p)?,
            None => BTreeMap::new(),
        };
        let mut cfg = RunConfig { command: cli.command, format: Format::Text, seed: 1, cap_iterations: DEFAULT_PERIOD_CAP, settings };
        cfg.format = if cli.json {
            Format::Json
        } else if cli.csv {
            Format::Csv
        } else {
            match (cli.format, cfg.settings.get("format")) {
                (Some(f), _) => f,
                (None, Some(s)) => Format::from_str(s, true).map_err(|_| Error::Validation(format!("unknown format {s:?}")))?,
                (None, None) => Format::Text,
            }
        };
        cfg.seed = cfg.pick(cli.seed, "seed", Some(corpus::DEFAULT_SEED))?;
        cfg.cap_iterations = cfg.positive(cli.cap_iterations, "cap-iterations", Some(DEFAULT_PERIOD_CAP))?;
        Ok(cfg)
    }

    fn setting<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.settings.get(key) {
            None => Ok(None),
            Some(s) => s.parse().map(Some).map_err(|_| Error::Validation(format!("config key {key:?}: cannot read {s:?}"))),
        }
    }

    fn pick<T: FromStr>(&self, flag: Option<T>, key: &str, default: Option<T>) -> Result<T> {
        match flag {
            Some(v) => Ok(v),
            None => self.setting(key)?.or(default).ok_or_else(|| Error::Validation(format!("--{key} is required"))),
        }
    }

    fn positive<T: FromStr + PartialOrd + Default>(&self, flag: Option<T>, key: &str, default: Option<T>) -> Result<T> {
        let v = self.pick(flag, key, default)?;
        if v <= T::default() {
            return Err(Error::Validation(format!("--{key} must be positive")));
        }
        Ok(v)
    }

    fn alpha(&self, a: &AlphaArg) -> Result<AlphaInput> {
        parse_alpha(&self.pick(a.alpha.clone(), "alpha", None)?)
    }
}

/// Runs a resolved configuration and returns its standard output.
pub fn run(cfg: &RunConfig) -> Result<String> {
    let (fmt, cap) = (cfg.format, cfg.cap_iterations);
    match &cfg.command {
        Command::Expand { alpha, stream, digits } => {
            let input = match (&alpha.alpha, stream.clone().or(cfg.setting("stream")?)) {
                (None, Some(rule)) => {
                    let r = Rule::parse(&rule).ok_or_else(|| Error::Validation(format!("unknown digit rule {rule:?}")))?;
                    AlphaInput::Stream(crate::expansion::DigitStream::generated(r))
                }
                _ => cfg.alpha(alpha)?,
            };
            commands::expand(&input, cfg.positive(*digits, "digits", Some(20))?, fmt, cap)
        }
        Command::Rosen { alpha, digits } => commands::rosen(&cfg.alpha(alpha)?, Kind::Rosen, cfg.positive(*digits, "digits", Some(10))?, fmt, cap),
        Command::DualRosen { alpha, digits } => {
            commands::rosen(&cfg.alpha(alpha)?, Kind::DualRosen, cfg.positive(*digits, "digits", Some(10))?, fmt, cap)
        }
        Command::Best { alpha, max_q, count } => {
            let limit = match (max_q, count) {
                (Some(q), _) => Limit::MaxQ(cfg.positive(Some(*q), "max-q", None)?),
                (None, Some(c)) => Limit::Count(cfg.positive(Some(*c), "count", None)?),
                (None, None) => match cfg.setting::<u64>("max-q")? {
                    Some(q) => Limit::MaxQ(cfg.positive(Some(q), "max-q", None)?),
                    None => Limit::Count(cfg.positive(None, "count", Some(10))?),
                },
            };
            commands::best(&cfg.alpha(alpha)?, limit, fmt, cap)
        }
        Command::Oracle { alpha, max_q } => commands::oracle(&cfg.alpha(alpha)?, cfg.positive(*max_q, "max-q", Some(200))?, fmt, cap),
        Command::Legendre { alpha, p, q } => {
            let p: String = cfg.pick(p.clone(), "p", None)?;
            let q: String = cfg.pick(q.clone(), "q", None)?;
            commands::legendre(&cfg.alpha(alpha)?, &p, &q, fmt)
        }
        Command::K { alpha, exact, numeric, window, records, list } => {
            let numeric = match (*exact, *numeric) {
                (true, _) => false,
                (_, true) => true,
                _ => match cfg.settings.get("mode").map(String::as_str) {
                    None | Some("exact") => false,
                    Some("numeric") => true,
                    Some(m) => return Err(Error::Validation(format!("unknown mode {m:?}"))),
                },
            };
            let mode = if numeric {
                KMode::Numeric {
                    records: cfg.positive(*records, "records", Some(1000))?,
                    window: cfg.positive(*window, "window", Some(500))?,
                }
            } else {
                KMode::Exact
            };
            commands::k(&cfg.alpha(alpha)?, mode, cfg.pick(*list, "list", Some(0))?, fmt, cap)
        }
        Command::Dirichlet { alpha, n_max } => commands::dirichlet(&cfg.alpha(alpha)?, cfg.positive(*n_max, "n-max", Some(500))?, fmt),
        Command::Optimality { stream, i_max } => {
            let s: String = cfg.pick(stream.clone(), "stream", None)?;
            let st = OptStream::parse(&s).ok_or_else(|| Error::Validation(format!("unknown stream {s:?}; use A or B")))?;
            commands::optimality(st, cfg.positive(*i_max, "i-max", Some(5))?, fmt, cap)
        }
        Command::Corpus { size, coeff_bound } => commands::corpus(
            cfg.seed,
            cfg.positive(*size, "size", Some(corpus::DEFAULT_SIZE))?,
            cfg.positive(*coeff_bound, "coeff-bound", Some(corpus::DEFAULT_COEFF_BOUND))?,
            fmt,
        ),
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded(_) | Error::Undecidable { .. } => 3,
        Error::Domain(_) => 1,
        _ => 2,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses arguments, runs, and maps errors to exit codes.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.use_stderr() {
                true => Outcome { code: 2, stdout: String::new(), stderr: text },
                false => Outcome { code: 0, stdout: text, stderr: String::new() },
            };
        }
    };
    match RunConfig::from_cli(cli).and_then(|cfg| run(&cfg)) {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(e) => Outcome { code: exit_code(&e), stdout: String::new(), stderr: format!("h4: {e}\n") },
    }
}
