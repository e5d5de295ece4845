//! Dataset ingestion, min-max scaling to `[-1, 1]` and centralization.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ensure_finite, Matrix, Vector};

/// Covariates with an optional response.
#[derive(Debug, Clone, PartialEq)]
pub struct DataMatrix {
    pub x: Matrix,
    pub y: Option<Vector>,
    pub column_names: Vec<String>,
}

impl DataMatrix {
    pub fn new(x: Matrix, y: Option<Vector>, column_names: Vec<String>) -> Result<Self> {
        if column_names.len() != x.ncols() {
            return Err(Error::DimensionMismatch(format!(
                "{} column names for {} columns",
                column_names.len(),
                x.ncols()
            )));
        }
        if let Some(y) = &y {
            if y.len() != x.nrows() {
                return Err(Error::DimensionMismatch(format!(
                    "response has {} entries, covariates have {} rows",
                    y.len(),
                    x.nrows()
                )));
            }
            if !y.iter().all(|v| v.is_finite()) {
                return Err(Error::InvalidInput(
                    "response contains non-finite entries".into(),
                ));
            }
        }
        ensure_finite(&x)?;
        Ok(Self { x, y, column_names })
    }

    /// Columns named `x1..xp`.
    pub fn unnamed(x: Matrix, y: Option<Vector>) -> Result<Self> {
        let names = (1..=x.ncols()).map(|j| format!("x{j}")).collect();
        Self::new(x, y, names)
    }

    pub fn n_rows(&self) -> usize {
        self.x.nrows()
    }

    pub fn n_cols(&self) -> usize {
        self.x.ncols()
    }

    pub fn response(&self) -> Result<&Vector> {
        self.y
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("dataset has no response column".into()))
    }

    /// Rows at `indices`, in order.
    pub fn subset(&self, indices: &[usize]) -> DataMatrix {
        DataMatrix {
            x: crate::linalg::select_rows(&self.x, indices),
            y: self
                .y
                .as_ref()
                .map(|y| Vector::from_iterator(indices.len(), indices.iter().map(|&i| y[i]))),
            column_names: self.column_names.clone(),
        }
    }
}

/// Range of one column before scaling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ColumnRange {
    pub min: f64,
    pub max: f64,
    /// The column was constant and maps to all zeros.
    pub constant: bool,
}

/// Per-column parameters of the `[-1, 1]` transform.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScaleMap {
    pub columns: Vec<ColumnRange>,
}

impl ScaleMap {
    pub fn fit(x: &Matrix) -> Self {
        let columns = x
            .column_iter()
            .map(|col| {
                let min = col.min();
                let max = col.max();
                ColumnRange {
                    min,
                    max,
                    constant: !(max > min),
                }
            })
            .collect();
        Self { columns }
    }

    /// Indices of columns that were not constant.
    pub fn informative_columns(&self) -> Vec<usize> {
        self.columns
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.constant)
            .map(|(j, _)| j)
            .collect()
    }

    pub fn apply(&self, x: &Matrix) -> Result<Matrix> {
        self.check_width(x)?;
        Ok(Matrix::from_fn(x.nrows(), x.ncols(), |i, j| {
            let c = &self.columns[j];
            if c.constant {
                0.0
            } else {
                2.0 * (x[(i, j)] - c.min) / (c.max - c.min) - 1.0
            }
        }))
    }

    pub fn invert(&self, scaled: &Matrix) -> Result<Matrix> {
        self.check_width(scaled)?;
        Ok(Matrix::from_fn(scaled.nrows(), scaled.ncols(), |i, j| {
            let c = &self.columns[j];
            if c.constant {
                c.min
            } else {
                c.min + (scaled[(i, j)] + 1.0) * 0.5 * (c.max - c.min)
            }
        }))
    }

    fn check_width(&self, x: &Matrix) -> Result<()> {
        if x.ncols() != self.columns.len() {
            return Err(Error::DimensionMismatch(format!(
                "scale map has {} columns, matrix has {}",
                self.columns.len(),
                x.ncols()
            )));
        }
        Ok(())
    }
}

/// Means subtracted by [`centralize`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CenterMap {
    pub x_means: Vec<f64>,
    pub y_mean: Option<f64>,
}

impl CenterMap {
    /// Means of the columns in `indices`, in order.
    pub fn x_means_for(&self, indices: &[usize]) -> Vec<f64> {
        indices.iter().map(|&j| self.x_means[j]).collect()
    }
}

/// Scales each non-constant column affinely so that its minimum maps to -1
/// and its maximum to +1. The response is left untouched.
pub fn scale_to_unit_interval(d: &DataMatrix) -> Result<(DataMatrix, ScaleMap)> {
    if d.n_rows() < 2 {
        return Err(Error::InvalidInput(
            "scaling needs at least two rows".into(),
        ));
    }
    let map = ScaleMap::fit(&d.x);
    let x = map.apply(&d.x)?;
    Ok((
        DataMatrix {
            x,
            y: d.y.clone(),
            column_names: d.column_names.clone(),
        },
        map,
    ))
}

/// Subtracts column means from `X` and the mean from `y`.
pub fn centralize(d: &DataMatrix) -> Result<(DataMatrix, CenterMap)> {
    let n = d.n_rows();
    if n < 2 {
        return Err(Error::InvalidInput(
            "centralizing needs at least two rows".into(),
        ));
    }
    let x_means: Vec<f64> = d.x.column_iter().map(|c| c.mean()).collect();
    let mut x = d.x.clone();
    for (j, mut col) in x.column_iter_mut().enumerate() {
        col.add_scalar_mut(-x_means[j]);
    }
    let (y, y_mean) = match &d.y {
        Some(y) => {
            let mean = y.mean();
            (Some(y.add_scalar(-mean)), Some(mean))
        }
        None => (None, None),
    };
    Ok((
        DataMatrix {
            x,
            y,
            column_names: d.column_names.clone(),
        },
        CenterMap { x_means, y_mean },
    ))
}

/// Reads a numeric CSV table with a header row. When `response_column` is
/// given, that column becomes `y` and the rest form `X` in file order.
pub fn load_csv(path: impl AsRef<Path>, response_column: Option<&str>) -> Result<DataMatrix> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_csv(file, response_column)
}

pub fn read_csv<R: Read>(reader: R, response_column: Option<&str>) -> Result<DataMatrix> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(reader);
    let headers: Vec<String> = rdr
        .headers()?
        .iter()
        .map(|h| h.trim().to_string())
        .collect();

    let response_idx = match response_column {
        Some(name) => Some(
            headers
                .iter()
                .position(|h| h == name)
                .ok_or_else(|| Error::MissingColumn(name.to_string()))?,
        ),
        None => None,
    };

    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (r, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| match e.kind() {
            csv::ErrorKind::UnequalLengths { .. } => Error::Parse {
                row: r + 1,
                column: String::new(),
                message: format!("expected {} fields", headers.len()),
            },
            _ => Error::Csv(e),
        })?;
        let mut values = Vec::with_capacity(headers.len());
        for (c, cell) in record.iter().enumerate() {
            let v: f64 = cell.trim().parse().map_err(|_| Error::Parse {
                row: r + 1,
                column: headers[c].clone(),
                message: format!("'{cell}' is not a number"),
            })?;
            values.push(v);
        }
        rows.push(values);
    }

    if rows.is_empty() {
        return Err(Error::InvalidInput("CSV has no data rows".into()));
    }

    let x_cols: Vec<usize> = (0..headers.len())
        .filter(|&c| Some(c) != response_idx)
        .collect();
    if x_cols.is_empty() {
        return Err(Error::InvalidInput("CSV has no covariate columns".into()));
    }
    let x = Matrix::from_fn(rows.len(), x_cols.len(), |i, j| rows[i][x_cols[j]]);
    let y = response_idx.map(|c| Vector::from_iterator(rows.len(), rows.iter().map(|r| r[c])));
    let names = x_cols.iter().map(|&c| headers[c].clone()).collect();
    DataMatrix::new(x, y, names)
}

/// Writes `d` as CSV; the response, when present, is the last column and
/// is named `response_name`.
pub fn write_csv<W: Write>(writer: W, d: &DataMatrix, response_name: &str) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    let mut header: Vec<&str> = d.column_names.iter().map(String::as_str).collect();
    if d.y.is_some() {
        header.push(response_name);
    }
    wtr.write_record(&header)?;
    let mut buf = Vec::with_capacity(header.len());
    for i in 0..d.n_rows() {
        buf.clear();
        buf.extend(d.x.row(i).iter().map(|v| v.to_string()));
        if let Some(y) = &d.y {
            buf.push(y[i].to_string());
        }
        wtr.write_record(&buf)?;
    }
    wtr.flush().map_err(|e| Error::io("<csv writer>", e))?;
    Ok(())
}

pub fn save_csv(path: impl AsRef<Path>, d: &DataMatrix, response_name: &str) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_csv(std::io::BufWriter::new(file), d, response_name)
}

/// Writes a pretty-printed JSON sidecar.
pub fn save_json<T: Serialize>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    let path = path.as_ref();
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn load_json<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(serde_json::from_str(&text)?)
}
