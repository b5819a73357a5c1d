//! Column-typed result tables and their CSV form: `#` config echo lines,
//! `#!` informational lines, header, then rows with shortest-round-trip
//! floats.

use std::fs;
use std::io;
use std::path::Path;

#[derive(Clone, Debug)]
pub enum ColumnData {
    Int(Vec<i64>),
    Float(Vec<f64>),
}

impl ColumnData {
    pub fn len(&self) -> usize {
        match self {
            ColumnData::Int(v) => v.len(),
            ColumnData::Float(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn cell(&self, row: usize) -> String {
        match self {
            ColumnData::Int(v) => v[row].to_string(),
            ColumnData::Float(v) => format!("{}", v[row]),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Column {
    pub name: String,
    pub data: ColumnData,
}

impl Column {
    pub fn int(name: &str, data: Vec<i64>) -> Self {
        Column {
            name: name.into(),
            data: ColumnData::Int(data),
        }
    }

    pub fn float(name: &str, data: Vec<f64>) -> Self {
        Column {
            name: name.into(),
            data: ColumnData::Float(data),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ResultTable {
    pub name: String,
    pub config_echo: Vec<(String, String)>,
    pub info: Vec<(String, String)>,
    pub columns: Vec<Column>,
}

impl ResultTable {
    pub fn new(name: &str) -> Self {
        ResultTable {
            name: name.into(),
            config_echo: vec![],
            info: vec![],
            columns: vec![],
        }
    }

    pub fn push_info(&mut self, key: &str, value: impl Into<String>) {
        self.info.push((key.into(), value.into()));
    }

    pub fn rows(&self) -> usize {
        self.columns.first().map(|c| c.data.len()).unwrap_or(0)
    }

    /// All columns share one length; violated only by construction bugs.
    fn assert_rectangular(&self) {
        let n = self.rows();
        for c in &self.columns {
            assert_eq!(c.data.len(), n, "column {} length mismatch", c.name);
        }
    }

    pub fn emit_csv(&self) -> String {
        self.assert_rectangular();
        let mut out = String::new();
        for (k, v) in &self.config_echo {
            out.push_str(&format!("# {k} = {v}\n"));
        }
        for (k, v) in &self.info {
            out.push_str(&format!("#! {k} = {v}\n"));
        }
        let header: Vec<&str> = self.columns.iter().map(|c| c.name.as_str()).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for row in 0..self.rows() {
            let cells: Vec<String> = self.columns.iter().map(|c| c.data.cell(row)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// Write via a sibling temp file and rename, so readers never observe a
/// partially written table.
pub fn write_atomic(path: &Path, content: &str) -> io::Result<()> {
    let file_name = path
        .file_name()
        .ok_or_else(|| io::Error::new(io::ErrorKind::InvalidInput, "path has no file name"))?;
    let mut tmp_name = file_name.to_os_string();
    tmp_name.push(".tmp");
    let tmp = path.with_file_name(tmp_name);
    fs::write(&tmp, content)?;
    fs::rename(&tmp, path)
}

/// Insert a `dist` marker before the extension: `r.csv` -> `r.dist.csv`.
pub fn dist_path(path: &Path) -> std::path::PathBuf {
    match path.extension() {
        Some(ext) => {
            let stem = path.file_stem().unwrap_or_default();
            let mut name = stem.to_os_string();
            name.push(".dist.");
            name.push(ext);
            path.with_file_name(name)
        }
        None => {
            let mut name = path.file_name().unwrap_or_default().to_os_string();
            name.push(".dist");
            path.with_file_name(name)
        }
    }
}
