use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use clap::{Parser, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    Faber,
    Proposition,
    Theorem1,
    Theorem2,
    Lemma,
    Consistency,
    Constants,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Inclusive integer range written `A..B`, or a single value `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntRange {
    pub start: usize,
    pub end: usize,
}

impl IntRange {
    pub fn iter(&self) -> RangeInclusive<usize> {
        self.start..=self.end
    }
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("invalid bound {t:?}: {e}"));
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if start > end {
            return Err(format!("empty range {s}"));
        }
        Ok(IntRange { start, end })
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

/// Run verification suites for the Faber generating-series identities.
#[derive(Debug, Parser)]
#[command(name = "verify", version)]
pub struct Cli {
    /// Which suite to run.
    #[arg(value_enum)]
    pub suite: Suite,

    /// Genus range, e.g. `2..3`.
    #[arg(long = "g", default_value = "2..3")]
    pub g: IntRange,

    /// Number-of-points range, e.g. `2..4`.
    #[arg(long = "n", default_value = "2..4")]
    pub n: IntRange,

    /// Comma-separated list of exponents N for the theorem suites.
    #[arg(long = "N", value_delimiter = ',', default_value = "1,2,3,4")]
    pub big_n: Vec<usize>,

    /// Generator degree cap D.
    #[arg(long = "degree", default_value_t = 3)]
    pub degree: u32,

    /// Number of random lemma trials.
    #[arg(long, default_value_t = 10)]
    pub trials: usize,

    /// Seed for the lemma trials.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,

    /// Report work counters alongside wall time.
    #[arg(long)]
    pub bench: bool,

    /// Emit records in instance order regardless of completion order.
    #[arg(long)]
    pub sorted: bool,

    /// Perturb every computed value (exercises failure reporting).
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub suites: Vec<Suite>,
    pub g: IntRange,
    pub n: IntRange,
    pub big_n: Vec<usize>,
    pub degree: u32,
    pub trials: usize,
    pub seed: u64,
    pub format: Format,
    pub jobs: usize,
    pub bench: bool,
    pub sorted: bool,
    pub inject_fault: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for ConfigError {}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, ConfigError> {
        let suites = match cli.suite {
            Suite::All => vec![
                Suite::Constants,
                Suite::Faber,
                Suite::Proposition,
                Suite::Consistency,
                Suite::Theorem1,
                Suite::Theorem2,
                Suite::Lemma,
            ],
            s => vec![s],
        };
        let config = RunConfig {
            suites,
            g: cli.g,
            n: cli.n,
            big_n: cli.big_n,
            degree: cli.degree,
            trials: cli.trials,
            seed: cli.seed,
            format: cli.format,
            jobs: cli.jobs,
            bench: cli.bench,
            sorted: cli.sorted,
            inject_fault: cli.inject_fault,
        };
        config.validate()?;
        Ok(config)
    }

    fn uses(&self, suite: Suite) -> bool {
        self.suites.contains(&suite)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let err = |m: String| Err(ConfigError(m));
        let instance_suites = [Suite::Faber, Suite::Proposition, Suite::Consistency, Suite::Constants];
        if instance_suites.iter().any(|&s| self.uses(s)) && self.g.start < 2 {
            return err(format!("g must be >= 2, got range {}", self.g));
        }
        let n_suites = [Suite::Faber, Suite::Proposition, Suite::Consistency];
        if n_suites.iter().any(|&s| self.uses(s)) && self.n.start < 2 {
            return err(format!("n must be >= 2, got range {}", self.n));
        }
        if self.uses(Suite::Theorem1) || self.uses(Suite::Theorem2) {
            if self.big_n.is_empty() {
                return err("N list is empty".into());
            }
            if let Some(bad) = self.big_n.iter().find(|&&n| n < 1) {
                return err(format!("N must be >= 1, got {bad}"));
            }
            if self.degree < 2 {
                return err(format!("theorem suites need degree >= 2, got {}", self.degree));
            }
        }
        if self.degree < 1 {
            return err("degree must be >= 1".into());
        }
        if self.uses(Suite::Lemma) && self.trials == 0 {
            return err("trials must be >= 1".into());
        }
        if self.jobs == 0 {
            return err("jobs must be >= 1".into());
        }
        Ok(())
    }
}
