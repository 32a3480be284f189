//! Report records shared by the congruence runner and the identity suites.
//!
//! Every record renders to the same eight fields
//! `id,p,params,modulus,lhs,rhs,status,micros`; fields that do not apply are
//! `null` in JSON and empty in CSV.

use std::fmt;
use std::io::{self, Write};

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::congruences::CongruenceId;
use crate::identities::IdentityRecord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    ExperimentalPass,
    ExperimentalFail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
            Status::ExperimentalPass => "experimental-pass",
            Status::ExperimentalFail => "experimental-fail",
        }
    }

    /// Whether this outcome should fail a run.
    pub fn is_failure(self) -> bool {
        self == Status::Fail
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Optional row parameters: a shift `d` or a base value `x`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Params {
    pub d: Option<u64>,
    pub x: Option<i64>,
}

impl Params {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn shift(d: u64) -> Self {
        Self {
            d: Some(d),
            x: None,
        }
    }

    pub fn base(x: i64) -> Self {
        Self {
            d: None,
            x: Some(x),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_none() && self.x.is_none()
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(d) = self.d {
            parts.push(format!("d={d}"));
        }
        if let Some(x) = self.x {
            parts.push(format!("x={x}"));
        }
        f.write_str(&parts.join(";"))
    }
}

impl Serialize for Params {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.is_empty() {
            return s.serialize_none();
        }
        let mut map = s.serialize_map(None)?;
        if let Some(d) = self.d {
            map.serialize_entry("d", &d)?;
        }
        if let Some(x) = self.x {
            map.serialize_entry("x", &x)?;
        }
        map.end()
    }
}

/// Outcome of one congruence check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceReport {
    pub id: CongruenceId,
    pub p: u64,
    pub params: Params,
    /// `p^k`.
    pub modulus: u64,
    pub lhs: Option<u64>,
    pub rhs: Option<u64>,
    pub status: Status,
    pub micros: u64,
}

impl CongruenceReport {
    pub fn skipped(id: CongruenceId, p: u64, params: Params, modulus: u64) -> Self {
        Self {
            id,
            p,
            params,
            modulus,
            lhs: None,
            rhs: None,
            status: Status::Skipped,
            micros: 0,
        }
    }

    /// Same report with the timing field cleared.
    pub fn untimed(mut self) -> Self {
        self.micros = 0;
        self
    }
}

/// Uniform view over congruence reports and identity records.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Record {
    pub id: String,
    pub p: Option<u64>,
    pub params: Option<serde_json::Value>,
    pub modulus: Option<u64>,
    pub lhs: Option<u64>,
    pub rhs: Option<u64>,
    pub status: Status,
    pub micros: u64,
}

impl From<&CongruenceReport> for Record {
    fn from(r: &CongruenceReport) -> Self {
        Self {
            id: r.id.name().to_string(),
            p: Some(r.p),
            params: (!r.params.is_empty())
                .then(|| serde_json::to_value(r.params).expect("params serialize")),
            modulus: Some(r.modulus),
            lhs: r.lhs,
            rhs: r.rhs,
            status: r.status,
            micros: r.micros,
        }
    }
}

impl Record {
    /// Identity suite outcome; the tested ranges (and any witness) go into
    /// `params`.
    pub fn from_identity(r: &IdentityRecord, micros: u64) -> Self {
        let mut params = r.params.clone();
        if let Some(w) = &r.witness {
            params = format!("{params}; witness {w}");
        }
        Self {
            id: r.id.clone(),
            p: None,
            params: Some(serde_json::Value::String(params)),
            modulus: None,
            lhs: None,
            rhs: None,
            status: if r.passed() {
                Status::Pass
            } else {
                Status::Fail
            },
            micros,
        }
    }

    fn params_text(&self) -> String {
        match &self.params {
            None => String::new(),
            Some(serde_json::Value::String(s)) => s.clone(),
            Some(serde_json::Value::Object(map)) => map
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(";"),
            Some(other) => other.to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Jsonl,
    Csv,
    Human,
}

impl std::str::FromStr for Format {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "jsonl" => Ok(Format::Jsonl),
            "csv" => Ok(Format::Csv),
            "human" => Ok(Format::Human),
            _ => Err(crate::Error::InvalidArgument(format!(
                "unknown format `{s}` (expected jsonl, csv or human)"
            ))),
        }
    }
}

pub const CSV_HEADER: &str = "id,p,params,modulus,lhs,rhs,status,micros";

fn opt<T: fmt::Display>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Streams records in one of the report formats.
pub struct RecordWriter<W: Write> {
    out: W,
    format: Format,
    started: bool,
}

impl<W: Write> RecordWriter<W> {
    pub fn new(out: W, format: Format) -> Self {
        Self {
            out,
            format,
            started: false,
        }
    }

    pub fn write(&mut self, r: &Record) -> io::Result<()> {
        if !self.started {
            self.started = true;
            if self.format == Format::Csv {
                writeln!(self.out, "{CSV_HEADER}")?;
            }
        }
        match self.format {
            Format::Jsonl => {
                serde_json::to_writer(&mut self.out, r)?;
                writeln!(self.out)
            }
            Format::Csv => writeln!(
                self.out,
                "{},{},{},{},{},{},{},{}",
                csv_field(&r.id),
                opt(r.p),
                csv_field(&r.params_text()),
                opt(r.modulus),
                opt(r.lhs),
                opt(r.rhs),
                r.status,
                r.micros
            ),
            Format::Human => {
                let mut line = format!("{:<18} {:<18}", r.status.as_str().to_uppercase(), r.id);
                if let Some(p) = r.p {
                    line.push_str(&format!(" p={p:<6}"));
                }
                let params = r.params_text();
                if !params.is_empty() {
                    line.push_str(&format!(" {params}"));
                }
                if let (Some(l), Some(rh), Some(m)) = (r.lhs, r.rhs, r.modulus) {
                    line.push_str(&format!("  {l} vs {rh} (mod {m})"));
                }
                line.push_str(&format!("  {}us", r.micros));
                writeln!(self.out, "{}", line.trim_end())
            }
        }
    }

    /// Emit the CSV header even when no records were written.
    pub fn finish(mut self) -> io::Result<W> {
        if !self.started && self.format == Format::Csv {
            writeln!(self.out, "{CSV_HEADER}")?;
        }
        self.out.flush()?;
        Ok(self.out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> CongruenceReport {
        CongruenceReport {
            id: CongruenceId::C1_5,
            p: 7,
            params: Params::shift(2),
            modulus: 49,
            lhs: Some(0),
            rhs: Some(0),
            status: Status::Pass,
            micros: 12,
        }
    }

    fn render(records: &[Record], format: Format) -> String {
        let mut w = RecordWriter::new(Vec::new(), format);
        for r in records {
            w.write(r).unwrap();
        }
        String::from_utf8(w.finish().unwrap()).unwrap()
    }

    #[test]
    fn jsonl_schema() {
        let s = render(&[Record::from(&sample())], Format::Jsonl);
        assert_eq!(
            s,
            "{\"id\":\"C1_5\",\"p\":7,\"params\":{\"d\":2},\"modulus\":49,\"lhs\":0,\"rhs\":0,\"status\":\"pass\",\"micros\":12}\n"
        );
        let skipped = CongruenceReport::skipped(CongruenceId::C1_22, 5, Params::none(), 25);
        let s = render(&[Record::from(&skipped)], Format::Jsonl);
        assert!(s.contains("\"params\":null") && s.contains("\"status\":\"skipped\""));
    }

    #[test]
    fn csv_columns() {
        let mut r = sample();
        r.params = Params::base(-2);
        r.status = Status::ExperimentalFail;
        let s = render(&[Record::from(&r)], Format::Csv);
        let lines: Vec<_> = s.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines[1], "C1_5,7,x=-2,49,0,0,experimental-fail,12");
        assert_eq!(render(&[], Format::Csv), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn human_line() {
        let s = render(&[Record::from(&sample())], Format::Human);
        assert!(s.starts_with("PASS"));
        assert!(s.contains("p=7") && s.contains("d=2") && s.contains("0 vs 0 (mod 49)"));
    }
}
