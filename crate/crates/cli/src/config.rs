//! Run configuration: command-line flags layered over an optional
//! `key = value` file layered over defaults.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::Args;
use supercong::arith::{is_prime, primes_in};
use supercong::congruences::CongruenceId;
use supercong::identities::IdentityGrid;
use supercong::report::Format;

/// A configuration problem; reported with exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage<T>(msg: impl Into<String>) -> Result<T, UsageError> {
    Err(UsageError(msg.into()))
}

/// Flags shared by every subcommand. All are optional so that a config file
/// can fill the gaps.
#[derive(Debug, Default, Clone, Args)]
pub struct CommonArgs {
    /// Prime range `LO..HI` (inclusive), LO >= 5.
    #[arg(long)]
    pub primes: Option<String>,
    /// Explicit comma-separated prime list.
    #[arg(long = "prime-list", conflicts_with = "primes")]
    pub prime_list: Option<String>,
    /// Comma-separated congruence ids (default: all proven rows).
    #[arg(long)]
    pub ids: Option<String>,
    /// Output format: jsonl, csv or human.
    #[arg(long)]
    pub format: Option<String>,
    /// Write records here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Also run the open conjectures.
    #[arg(long = "include-experimental")]
    pub include_experimental: bool,
    /// Bound for n-indexed identity suites (25 reproduces the default grid).
    #[arg(long = "grid-n")]
    pub grid_n: Option<u64>,
    /// Bound for P-indexed identity suites (10 reproduces the default grid).
    #[arg(long = "grid-p")]
    pub grid_p: Option<u64>,
    /// Eta series order.
    #[arg(long)]
    pub order: Option<usize>,
    /// Comma-separated shifts for d-indexed rows, or forms for `repr`.
    #[arg(long)]
    pub d: Option<String>,
    /// Modulus exponent override `ID=K`; overridden rows become experimental.
    #[arg(long = "exponent")]
    pub exponent: Vec<String>,
    /// Report zero elapsed time so output is byte-reproducible.
    #[arg(long = "no-timing")]
    pub no_timing: bool,
    /// Append records to this jsonl log, after a timestamped header line.
    #[arg(long)]
    pub log: Option<PathBuf>,
    /// `key = value` config file; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

const KEYS: &[&str] = &[
    "primes",
    "prime-list",
    "ids",
    "format",
    "out",
    "jobs",
    "include-experimental",
    "grid-n",
    "grid-p",
    "order",
    "d",
    "exponent",
    "no-timing",
    "log",
];

/// Parse a `key = value` file. Blank lines and `#` comments are ignored;
/// keys are the long flag names.
pub fn parse_config_file(text: &str) -> Result<BTreeMap<String, String>, UsageError> {
    let mut map = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return usage(format!("config line {}: expected key = value", i + 1));
        };
        let key = k.trim().replace('_', "-");
        if !KEYS.contains(&key.as_str()) {
            return usage(format!("config line {}: unknown key `{}`", i + 1, k.trim()));
        }
        map.insert(key, v.trim().to_string());
    }
    Ok(map)
}

fn parse_bool(key: &str, v: &str) -> Result<bool, UsageError> {
    match v {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        _ => usage(format!("{key}: expected true or false, got `{v}`")),
    }
}

fn parse_num<T: FromStr>(key: &str, v: &str) -> Result<T, UsageError> {
    v.trim()
        .parse()
        .or_else(|_| usage(format!("{key}: invalid number `{v}`")))
}

fn parse_list<T: FromStr>(key: &str, v: &str) -> Result<Vec<T>, UsageError> {
    v.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_num(key, s))
        .collect()
}

impl CommonArgs {
    /// Fill unset flags from the config file named by `--config`.
    pub fn with_config_file(mut self) -> Result<Self, UsageError> {
        let Some(path) = self.config.clone() else {
            return Ok(self);
        };
        let text = std::fs::read_to_string(&path)
            .or_else(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
        let file = parse_config_file(&text)?;
        let mut flag_exponents = std::mem::take(&mut self.exponent);
        for (key, v) in &file {
            let v = v.as_str();
            match key.as_str() {
                "primes" if self.primes.is_none() && self.prime_list.is_none() => {
                    self.primes = Some(v.into())
                }
                "prime-list" if self.primes.is_none() && self.prime_list.is_none() => {
                    self.prime_list = Some(v.into())
                }
                "ids" if self.ids.is_none() => self.ids = Some(v.into()),
                "format" if self.format.is_none() => self.format = Some(v.into()),
                "out" if self.out.is_none() => self.out = Some(v.into()),
                "log" if self.log.is_none() => self.log = Some(v.into()),
                "jobs" if self.jobs.is_none() => self.jobs = Some(parse_num(key, v)?),
                "grid-n" if self.grid_n.is_none() => self.grid_n = Some(parse_num(key, v)?),
                "grid-p" if self.grid_p.is_none() => self.grid_p = Some(parse_num(key, v)?),
                "order" if self.order.is_none() => self.order = Some(parse_num(key, v)?),
                "d" if self.d.is_none() => self.d = Some(v.into()),
                "include-experimental" if !self.include_experimental => {
                    self.include_experimental = parse_bool(key, v)?
                }
                "no-timing" if !self.no_timing => self.no_timing = parse_bool(key, v)?,
                "exponent" => {
                    // file entries first so that flags win on conflicts
                    let mut merged: Vec<String> =
                        v.split(',').map(|s| s.trim().to_string()).collect();
                    merged.append(&mut flag_exponents);
                    flag_exponents = merged;
                }
                _ => {}
            }
        }
        self.exponent = flag_exponents;
        Ok(self)
    }

    pub fn format(&self) -> Result<Format, UsageError> {
        self.format
            .as_deref()
            .unwrap_or("jsonl")
            .parse()
            .map_err(|e: supercong::Error| UsageError(e.to_string()))
    }

    pub fn jobs(&self) -> Result<usize, UsageError> {
        match self.jobs {
            Some(0) => usage("--jobs must be at least 1"),
            Some(j) => Ok(j),
            None => Ok(0),
        }
    }

    /// Primes selected by `--primes` or `--prime-list`, falling back to
    /// `default` when neither is given.
    pub fn primes(&self, default: Option<(u64, u64)>) -> Result<Vec<u64>, UsageError> {
        if let Some(list) = &self.prime_list {
            let ps: Vec<u64> = parse_list("prime-list", list)?;
            if ps.is_empty() {
                return usage("--prime-list is empty");
            }
            for &p in &ps {
                if p < 5 || !is_prime(p) {
                    return usage(format!("--prime-list: {p} is not a prime >= 5"));
                }
            }
            return Ok(ps);
        }
        let (lo, hi) = match &self.primes {
            Some(range) => parse_range(range)?,
            None => match default {
                Some(r) => r,
                None => return usage("missing --primes LO..HI or --prime-list"),
            },
        };
        if lo < 5 {
            return usage(format!("prime range must start at 5 or above, got {lo}"));
        }
        if hi < lo {
            return usage(format!("empty prime range {lo}..{hi}"));
        }
        Ok(primes_in(lo, hi))
    }

    pub fn ids(&self) -> Result<Vec<CongruenceId>, UsageError> {
        match &self.ids {
            None => Ok(supercong::congruences::default_ids(
                self.include_experimental,
            )),
            Some(list) => list
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| {
                    s.parse()
                        .map_err(|e: supercong::Error| UsageError(e.to_string()))
                })
                .collect(),
        }
    }

    pub fn shifts(&self) -> Result<Option<Vec<u64>>, UsageError> {
        self.d.as_deref().map(|v| parse_list("d", v)).transpose()
    }

    pub fn exponents(&self) -> Result<BTreeMap<CongruenceId, u32>, UsageError> {
        let mut map = BTreeMap::new();
        for entry in self.exponent.iter().flat_map(|e| e.split(',')) {
            let entry = entry.trim();
            if entry.is_empty() {
                continue;
            }
            let Some((id, k)) = entry.split_once('=') else {
                return usage(format!("--exponent expects ID=K, got `{entry}`"));
            };
            let id: CongruenceId = id
                .parse()
                .map_err(|e: supercong::Error| UsageError(e.to_string()))?;
            let k: u32 = parse_num("exponent", k)?;
            if !(1..=4).contains(&k) {
                return usage(format!("--exponent {id}={k}: exponent must be in 1..=4"));
            }
            map.insert(id, k);
        }
        Ok(map)
    }

    /// Identity grid scaled from the defaults: `--grid-n` rescales every
    /// n-indexed bound relative to 25, `--grid-p` the P-indexed ones
    /// relative to 10.
    pub fn grid(&self) -> Result<IdentityGrid, UsageError> {
        let mut g = IdentityGrid::default();
        let scale = |v: u64, num: u64, den: u64| ((v * num + den / 2) / den).max(1);
        if let Some(n) = self.grid_n {
            if n == 0 {
                return usage("--grid-n must be positive");
            }
            g.poly_n = n;
            g.schroder_recursion_n = scale(g.schroder_recursion_n, n, 25);
            g.catalan_sum_n = scale(g.catalan_sum_n, n, 25);
            g.cube_convolution_n = scale(g.cube_convolution_n, n, 25);
            g.closed_forms_n = scale(g.closed_forms_n, n, 25);
            g.product_n = scale(g.product_n, n, 25);
            g.small_n = scale(g.small_n, n, 25);
        }
        if let Some(p) = self.grid_p {
            if p < 2 {
                return usage("--grid-p must be at least 2");
            }
            g.ud_p = p;
            g.fgh_p = scale(g.fgh_p, p, 10).max(2);
        }
        Ok(g)
    }

    /// Representation forms for `repr`.
    pub fn forms(&self) -> Result<Vec<u64>, UsageError> {
        let ds: Vec<u64> = match &self.d {
            Some(v) => parse_list("d", v)?,
            None => vec![1],
        };
        if ds.contains(&0) {
            return usage("--d: forms x^2 + d y^2 need d >= 1");
        }
        Ok(ds)
    }
}

fn parse_range(s: &str) -> Result<(u64, u64), UsageError> {
    let (lo, hi) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| UsageError(format!("--primes expects LO..HI, got `{s}`")))?;
    Ok((parse_num("primes", lo)?, parse_num("primes", hi)?))
}

/// Check the output path can be created before any work is done.
pub fn check_writable(path: &Path) -> Result<(), UsageError> {
    std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map(|_| ())
        .or_else(|e| usage(format!("cannot write {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("5..13").unwrap(), (5, 13));
        assert_eq!(parse_range("5..=13").unwrap(), (5, 13));
        assert!(parse_range("5-13").is_err());
        let args = CommonArgs {
            primes: Some("4..4".into()),
            ..Default::default()
        };
        assert!(args.primes(None).is_err());
        let args = CommonArgs {
            primes: Some("5..13".into()),
            ..Default::default()
        };
        assert_eq!(args.primes(None).unwrap(), vec![5, 7, 11, 13]);
    }

    #[test]
    fn config_file_fills_gaps_only() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.conf");
        std::fs::write(
            &path,
            "# sweep\nprimes = 5..50\nformat = csv\njobs = 2\nexponent = C1_12=3\n",
        )
        .unwrap();
        let args = CommonArgs {
            format: Some("human".into()),
            exponent: vec!["C1_12=1".into()],
            config: Some(path),
            ..Default::default()
        }
        .with_config_file()
        .unwrap();
        assert_eq!(args.primes.as_deref(), Some("5..50"));
        assert_eq!(args.format.as_deref(), Some("human"));
        assert_eq!(args.jobs, Some(2));
        assert_eq!(args.exponents().unwrap()[&CongruenceId::C1_12], 1);
        assert!(parse_config_file("speed = 3").is_err());
    }

    #[test]
    fn default_grid_round_trips() {
        let args = CommonArgs {
            grid_n: Some(25),
            grid_p: Some(10),
            ..Default::default()
        };
        assert_eq!(args.grid().unwrap(), IdentityGrid::default());
    }
}
