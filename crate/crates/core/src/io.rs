//! Scenario files and CSV output.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::ParamsConfig;

pub const SCHEMA: u32 = 1;

/// Parameters that a sweep axis may name.
pub const SWEEPABLE: &[&str] = &[
    "n_sites",
    "lattice_const",
    "e0",
    "hop_t",
    "coupling_g",
    "detuning",
    "c_hbar",
    "blockade_cells",
    "exclusion_halfwidth",
    "d_strength",
    "k_total_index",
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Units {
    pub energy: String,
    pub length: String,
}

impl Default for Units {
    fn default() -> Self {
        Units { energy: "G".into(), length: "a".into() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepAxis {
    pub parameter: String,
    pub values: Vec<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Options {
    /// Eigenstate index for `amplitudes`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state: Option<usize>,
    /// Figure number for `reproduce`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub figure: Option<u8>,
    /// Total-momentum indices for K-resolved commands.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_indices: Option<Vec<i64>>,
    /// Energy window for `bound-search`; defaults to below the LL band.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<[f64; 2]>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Emit {
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Scenario {
    pub schema: u32,
    pub units: Units,
    pub params: ParamsConfig,
    pub sweep: Vec<SweepAxis>,
    pub options: Options,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
    pub emit: Vec<Emit>,
}

impl Default for Scenario {
    fn default() -> Self {
        Scenario {
            schema: SCHEMA,
            units: Units::default(),
            params: ParamsConfig::default(),
            sweep: Vec::new(),
            options: Options::default(),
            output_dir: None,
            emit: vec![Emit::Csv],
        }
    }
}

impl Scenario {
    pub fn from_json(s: &str) -> Result<Self> {
        let sc: Scenario = serde_json::from_str(s)?;
        sc.validate()?;
        Ok(sc)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema != SCHEMA {
            return Err(Error::config("schema", format!("unsupported schema {}", self.schema)));
        }
        if self.units.energy != "G" || self.units.length != "a" {
            return Err(Error::config("units", "values must be given in units of G (energy) and a (length)"));
        }
        for ax in &self.sweep {
            if !SWEEPABLE.contains(&ax.parameter.as_str()) {
                return Err(Error::config("sweep", format!("unknown parameter '{}'", ax.parameter)));
            }
            if ax.values.is_empty() {
                return Err(Error::config("sweep", format!("axis '{}' has no values", ax.parameter)));
            }
        }
        for p in self.sweep_points()? {
            crate::model::derive_params(&p.config)?;
        }
        Ok(())
    }

    /// Cartesian product of the sweep axes, first axis slowest. A scenario
    /// without axes has exactly one point.
    pub fn sweep_points(&self) -> Result<Vec<SweepPoint>> {
        let mut points = vec![SweepPoint { coords: Vec::new(), config: self.params.clone() }];
        for ax in &self.sweep {
            let mut next = Vec::with_capacity(points.len() * ax.values.len());
            for pt in &points {
                for &v in &ax.values {
                    let mut cfg = pt.config.clone();
                    set_param(&mut cfg, &ax.parameter, v)?;
                    let mut coords = pt.coords.clone();
                    coords.push((ax.parameter.clone(), v));
                    next.push(SweepPoint { coords, config: cfg });
                }
            }
            points = next;
        }
        Ok(points)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepPoint {
    pub coords: Vec<(String, f64)>,
    pub config: ParamsConfig,
}

fn as_count(name: &str, v: f64) -> Result<usize> {
    if v < 0.0 || v.fract() != 0.0 {
        return Err(Error::config("sweep", format!("'{name}' needs nonnegative integers, got {v}")));
    }
    Ok(v as usize)
}

/// Set one numeric field of a raw configuration by name.
pub fn set_param(cfg: &mut ParamsConfig, name: &str, v: f64) -> Result<()> {
    match name {
        "n_sites" => cfg.n_sites = Some(as_count(name, v)?),
        "lattice_const" => cfg.lattice_const = Some(v),
        "e0" => cfg.e0 = Some(v),
        "hop_t" => cfg.hop_t = Some(v),
        "coupling_g" => cfg.coupling_g = Some(v),
        "detuning" => cfg.detuning = Some(v),
        "c_hbar" => cfg.c_hbar = Some(v),
        "blockade_cells" => cfg.blockade_cells = Some(as_count(name, v)?),
        "exclusion_halfwidth" => cfg.exclusion_halfwidth = Some(as_count(name, v)?),
        "d_strength" => cfg.d_strength = Some(v),
        "k_total_index" => {
            if v.fract() != 0.0 {
                return Err(Error::config("sweep", format!("'k_total_index' needs integers, got {v}")));
            }
            cfg.k_total_index = Some(v as i64)
        }
        other => return Err(Error::config("sweep", format!("unknown parameter '{other}'"))),
    }
    Ok(())
}

/// 17 significant digits, so a value survives a text round trip exactly.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}
impl From<i64> for Cell {
    fn from(x: i64) -> Self {
        Cell::Int(x)
    }
}
impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}
impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.to_string())
    }
}
impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::Text(x)
    }
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => fmt_float(*x),
            Cell::Text(s) => s.clone(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        CsvTable { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn extend(&mut self, other: CsvTable) {
        self.rows.extend(other.rows);
    }

    pub fn render(&self) -> String {
        let mut s = format!("# schema={SCHEMA}\n{}\n", self.header.join(","));
        for r in &self.rows {
            let line: Vec<String> = r.iter().map(Cell::render).collect();
            let _ = writeln!(s, "{}", line.join(","));
        }
        s
    }

    /// Rows as JSON objects keyed by column name.
    pub fn to_json(&self) -> serde_json::Value {
        let rows = self.rows.iter().map(|r| {
            let obj = self.header.iter().zip(r).map(|(h, c)| {
                let v = match c {
                    Cell::Int(i) => serde_json::Value::from(*i),
                    Cell::Float(x) => serde_json::Number::from_f64(*x).map_or(serde_json::Value::Null, Into::into),
                    Cell::Text(s) => serde_json::Value::from(s.as_str()),
                };
                (h.clone(), v)
            });
            serde_json::Value::Object(obj.collect())
        });
        serde_json::json!({ "schema": SCHEMA, "rows": rows.collect::<Vec<_>>() })
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        fs::write(path, self.render())?;
        Ok(())
    }
}

/// Split a rendered table back into its header and raw fields.
pub fn parse_csv(text: &str) -> Result<(Vec<String>, Vec<Vec<String>>)> {
    let mut lines = text.lines();
    match lines.next() {
        Some(l) if l == format!("# schema={SCHEMA}") => {}
        _ => return Err(Error::config("csv", "missing schema header")),
    }
    let header = lines.next().ok_or_else(|| Error::config("csv", "missing column header"))?;
    let header = header.split(',').map(str::to_string).collect();
    let rows = lines.map(|l| l.split(',').map(str::to_string).collect()).collect();
    Ok((header, rows))
}
