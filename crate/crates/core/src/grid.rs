//! Dense row-major grids and pixel locations.
//!
//! A [`Grid`] carries measurements, templates and correlation maps alike. The
//! on-disk form is plain CSV: one row per line, comma separated, no header.
//! Values are written with Rust's shortest round-trip float formatting, so a
//! write followed by a read reproduces every value bit for bit.

use std::fmt;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper-left corner of a template placement, 0-based `(row, col)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct Location {
    pub n: usize,
    pub m: usize,
}

impl Location {
    pub const fn new(n: usize, m: usize) -> Self {
        Self { n, m }
    }

    /// Largest of the absolute row and column offsets.
    pub fn chebyshev(self, other: Location) -> usize {
        self.n.abs_diff(other.n).max(self.m.abs_diff(other.m))
    }
}

impl From<[usize; 2]> for Location {
    fn from([n, m]: [usize; 2]) -> Self {
        Self { n, m }
    }
}

impl From<Location> for [usize; 2] {
    fn from(loc: Location) -> Self {
        [loc.n, loc.m]
    }
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.n, self.m)
    }
}

/// Dense 2D array of finite reals, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    rows: usize,
    cols: usize,
    values: Vec<f64>,
}

impl Grid {
    /// Builds a grid, checking the shape and that every value is finite.
    pub fn new(rows: usize, cols: usize, values: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyGrid { rows, cols });
        }
        if values.len() != rows * cols {
            return Err(Error::Shape {
                rows,
                cols,
                got: values.len(),
            });
        }
        if let Some(idx) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                row: idx / cols,
                col: idx % cols,
            });
        }
        Ok(Self { rows, cols, values })
    }

    /// Grid of `rows x cols` filled with `value`.
    pub fn filled(rows: usize, cols: usize, value: f64) -> Result<Self> {
        Self::new(rows, cols, vec![value; rows * cols])
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Self::filled(rows, cols, 0.0)
    }

    /// Builds a grid from nested rows, e.g. `Grid::from_rows(&[[1.0, 2.0], [3.0, 4.0]])`.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, |r| r.as_ref().len());
        let mut values = Vec::with_capacity(n * m);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != m {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("expected {m} columns, found {}", row.len()),
                });
            }
            values.extend_from_slice(row);
        }
        Self::new(n, m, values)
    }

    pub(crate) fn from_raw(rows: usize, cols: usize, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), rows * cols);
        Self { rows, cols, values }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    #[inline]
    pub fn get(&self, n: usize, m: usize) -> f64 {
        self.values[n * self.cols + m]
    }

    #[inline]
    pub fn at(&self, loc: Location) -> f64 {
        self.get(loc.n, loc.m)
    }

    pub fn row(&self, n: usize) -> &[f64] {
        &self.values[n * self.cols..(n + 1) * self.cols]
    }

    /// Sum of squared values.
    pub fn energy(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum()
    }

    /// Adds `template` with its upper-left corner at `loc`, in place.
    pub fn add_template(&mut self, template: &Grid, loc: Location) -> Result<()> {
        if loc.n + template.rows > self.rows || loc.m + template.cols > self.cols {
            return Err(Error::Dimension {
                rows: self.rows,
                cols: self.cols,
                template_rows: loc.n + template.rows,
                template_cols: loc.m + template.cols,
            });
        }
        for u in 0..template.rows {
            let dst = &mut self.values[(loc.n + u) * self.cols + loc.m..][..template.cols];
            for (d, s) in dst.iter_mut().zip(template.row(u)) {
                *d += s;
            }
        }
        Ok(())
    }

    /// Elementwise `alpha * self + other`.
    pub fn axpy(&self, alpha: f64, other: &Grid) -> Result<Grid> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape {
                rows: self.rows,
                cols: self.cols,
                got: other.values.len(),
            });
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| alpha * a + b)
            .collect();
        Grid::new(self.rows, self.cols, values)
    }

    pub fn read_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .flexible(true)
            .from_reader(reader);
        let mut cols = None;
        let mut values = Vec::new();
        let mut rows = 0;
        for (i, record) in rdr.records().enumerate() {
            let line = i + 1;
            let record = record.map_err(|e| Error::Parse {
                line,
                message: e.to_string(),
            })?;
            if record.iter().all(str::is_empty) {
                continue;
            }
            match cols {
                None => cols = Some(record.len()),
                Some(c) if c != record.len() => {
                    return Err(Error::Parse {
                        line,
                        message: format!("expected {c} columns, found {}", record.len()),
                    })
                }
                Some(_) => {}
            }
            for field in record.iter() {
                let v: f64 = field.parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("not a number: {field:?}"),
                })?;
                values.push(v);
            }
            rows += 1;
        }
        Grid::new(rows, cols.unwrap_or(0), values)
    }

    pub fn write_csv<W: Write>(&self, mut writer: W) -> Result<()> {
        let mut line = String::new();
        for n in 0..self.rows {
            line.clear();
            for (j, v) in self.row(n).iter().enumerate() {
                if j > 0 {
                    line.push(',');
                }
                // `{:?}` keeps a trailing ".0" and round-trips exactly
                line.push_str(&format!("{v:?}"));
            }
            line.push('\n');
            writer.write_all(line.as_bytes())?;
        }
        writer.flush()?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::read_csv(BufReader::new(File::open(path)?))
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        self.write_csv(BufWriter::new(File::create(path)?))
    }
}
