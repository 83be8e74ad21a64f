use std::fmt;
use std::str::FromStr;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::InvalidInput(format!(
                "unknown format `{s}` (csv|json)"
            ))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

/// Everything needed to reproduce an output file. Embedded in every output;
/// equal manifests give byte-identical files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub family: Option<String>,
    pub parameter: Option<u32>,
    pub x: String,
    pub x_scale: Option<String>,
    pub n_range: String,
    pub precision_bits: u64,
    pub output_format: Format,
    pub tool_version: String,
    pub timestamp: String,
}

impl RunManifest {
    fn entries(&self) -> Vec<(&'static str, String)> {
        let opt = |v: &Option<String>| v.clone().unwrap_or_default();
        vec![
            ("command", self.command.clone()),
            ("family", opt(&self.family)),
            (
                "parameter",
                self.parameter.map(|p| p.to_string()).unwrap_or_default(),
            ),
            ("x", self.x.clone()),
            ("x_scale", opt(&self.x_scale)),
            ("n_range", self.n_range.clone()),
            ("precision_bits", self.precision_bits.to_string()),
            ("output_format", self.output_format.to_string()),
            ("tool_version", self.tool_version.clone()),
            ("timestamp", self.timestamp.clone()),
        ]
    }

    fn from_entries(lines: &[(String, String)]) -> Result<Self> {
        let get = |k: &str| {
            lines
                .iter()
                .find(|(key, _)| key == k)
                .map(|(_, v)| v.clone())
                .ok_or_else(|| Error::InvalidInput(format!("manifest lacks `{k}`")))
        };
        let opt = |k: &str| get(k).map(|v| (!v.is_empty()).then_some(v));
        let bad = |k: &str| Error::InvalidInput(format!("bad manifest value for `{k}`"));
        Ok(RunManifest {
            command: get("command")?,
            family: opt("family")?,
            parameter: opt("parameter")?
                .map(|v| v.parse().map_err(|_| bad("parameter")))
                .transpose()?,
            x: get("x")?,
            x_scale: opt("x_scale")?,
            n_range: get("n_range")?,
            precision_bits: get("precision_bits")?
                .parse()
                .map_err(|_| bad("precision_bits"))?,
            output_format: get("output_format")?.parse()?,
            tool_version: get("tool_version")?,
            timestamp: get("timestamp")?,
        })
    }
}

/// A manifest plus its rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table<R> {
    pub manifest: RunManifest,
    pub rows: Vec<R>,
}

fn csv_err(e: impl fmt::Display) -> Error {
    Error::Internal(format!("csv: {e}"))
}

/// CSV with `# key: value` manifest lines, or pretty JSON `{manifest, rows}`.
/// Missing values are empty CSV fields and JSON `null`.
pub fn render<R: Serialize>(table: &Table<R>, format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(table)
                .map_err(|e| Error::Internal(format!("json: {e}")))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut out = String::new();
            for (k, v) in table.manifest.entries() {
                out.push_str(&format!("# {k}: {v}\n"));
            }
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in &table.rows {
                w.serialize(row).map_err(csv_err)?;
            }
            let bytes = w.into_inner().map_err(csv_err)?;
            out.push_str(&String::from_utf8(bytes).map_err(csv_err)?);
            Ok(out)
        }
    }
}

/// Parse the output of [`render`] in CSV form. A table with no rows has no
/// header line, so it reads back as empty.
pub fn read_csv<R: DeserializeOwned>(text: &str) -> Result<Table<R>> {
    let mut manifest = Vec::new();
    let mut body = String::new();
    for line in text.lines() {
        match line.strip_prefix("# ") {
            Some(kv) => {
                let (k, v) = kv
                    .split_once(": ")
                    .or_else(|| kv.strip_suffix(':').map(|k| (k, "")))
                    .ok_or_else(|| Error::InvalidInput(format!("bad manifest line `{line}`")))?;
                manifest.push((k.to_string(), v.to_string()));
            }
            None => {
                body.push_str(line);
                body.push('\n');
            }
        }
    }
    let mut rdr = csv::Reader::from_reader(body.as_bytes());
    let rows = rdr
        .deserialize()
        .collect::<std::result::Result<Vec<R>, _>>()
        .map_err(csv_err)?;
    Ok(Table {
        manifest: RunManifest::from_entries(&manifest)?,
        rows,
    })
}

pub fn read_json<R: DeserializeOwned>(text: &str) -> Result<Table<R>> {
    serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("json: {e}")))
}
