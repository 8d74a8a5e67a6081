//! Valid-mode 2D cross-correlation of a measurement with a square template.
//!
//! The output at `(i, j)` is the price of placing the template with its
//! upper-left corner there: `sum_{u,v} y[i+u][j+v] * s[u][v]`. Two routes
//! compute it, direct summation and an FFT product, and they agree to
//! rounding error.

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grid::Grid;

/// Templates up to this width use direct summation under [`Method::Auto`].
pub const DIRECT_MAX_WIDTH: usize = 8;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Method {
    #[default]
    Auto,
    Direct,
    Fft,
}

/// Checks that `template` is square and fits inside `measurement`; returns its width.
pub fn check_template(measurement: &Grid, template: &Grid) -> Result<usize> {
    if template.rows() != template.cols() {
        return Err(Error::NonSquareTemplate {
            rows: template.rows(),
            cols: template.cols(),
        });
    }
    let w = template.rows();
    if w > measurement.rows() || w > measurement.cols() {
        return Err(Error::Dimension {
            rows: measurement.rows(),
            cols: measurement.cols(),
            template_rows: w,
            template_cols: w,
        });
    }
    Ok(w)
}

/// Price map of every valid placement, `(N-W+1) x (M-W+1)`.
pub fn correlate(measurement: &Grid, template: &Grid) -> Result<Grid> {
    correlate_with(measurement, template, Method::Auto)
}

pub fn correlate_with(measurement: &Grid, template: &Grid, method: Method) -> Result<Grid> {
    let w = check_template(measurement, template)?;
    let use_fft = match method {
        Method::Auto => w > DIRECT_MAX_WIDTH,
        Method::Direct => false,
        Method::Fft => true,
    };
    Ok(if use_fft {
        correlate_fft(measurement, template, w)
    } else {
        correlate_direct(measurement, template, w)
    })
}

fn correlate_direct(y: &Grid, s: &Grid, w: usize) -> Grid {
    let out_rows = y.rows() - w + 1;
    let out_cols = y.cols() - w + 1;
    let mut out = vec![0.0; out_rows * out_cols];
    for i in 0..out_rows {
        let dst = &mut out[i * out_cols..][..out_cols];
        for u in 0..w {
            let yrow = y.row(i + u);
            for (v, &sv) in s.row(u).iter().enumerate() {
                if sv == 0.0 {
                    continue;
                }
                for (d, &yv) in dst.iter_mut().zip(&yrow[v..v + out_cols]) {
                    *d += yv * sv;
                }
            }
        }
    }
    Grid::from_raw(out_rows, out_cols, out)
}

struct Fft2 {
    rows: usize,
    cols: usize,
    row_fft: Arc<dyn Fft<f64>>,
    col_fft: Arc<dyn Fft<f64>>,
}

impl Fft2 {
    fn new(planner: &mut FftPlanner<f64>, rows: usize, cols: usize, inverse: bool) -> Self {
        let (row_fft, col_fft) = if inverse {
            (planner.plan_fft_inverse(cols), planner.plan_fft_inverse(rows))
        } else {
            (planner.plan_fft_forward(cols), planner.plan_fft_forward(rows))
        };
        Self {
            rows,
            cols,
            row_fft,
            col_fft,
        }
    }

    fn process(&self, data: &mut [Complex64]) {
        for row in data.chunks_exact_mut(self.cols) {
            self.row_fft.process(row);
        }
        let mut column = vec![Complex64::default(); self.rows];
        for j in 0..self.cols {
            for (i, c) in column.iter_mut().enumerate() {
                *c = data[i * self.cols + j];
            }
            self.col_fft.process(&mut column);
            for (i, c) in column.iter().enumerate() {
                data[i * self.cols + j] = *c;
            }
        }
    }
}

fn correlate_fft(y: &Grid, s: &Grid, w: usize) -> Grid {
    let (rows, cols) = (y.rows(), y.cols());
    let mut planner = FftPlanner::new();
    let forward = Fft2::new(&mut planner, rows, cols, false);
    let inverse = Fft2::new(&mut planner, rows, cols, true);

    let mut ys: Vec<Complex64> = y.values().iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let mut ss = vec![Complex64::default(); rows * cols];
    for u in 0..w {
        for (v, &sv) in s.row(u).iter().enumerate() {
            ss[u * cols + v] = Complex64::new(sv, 0.0);
        }
    }
    forward.process(&mut ys);
    forward.process(&mut ss);
    for (a, b) in ys.iter_mut().zip(&ss) {
        *a *= b.conj();
    }
    inverse.process(&mut ys);

    // circular correlation never wraps inside the valid region
    let scale = 1.0 / (rows * cols) as f64;
    let out_rows = rows - w + 1;
    let out_cols = cols - w + 1;
    let mut out = Vec::with_capacity(out_rows * out_cols);
    for i in 0..out_rows {
        out.extend(ys[i * cols..][..out_cols].iter().map(|c| c.re * scale));
    }
    Grid::from_raw(out_rows, out_cols, out)
}
