//! Built-in template shapes.

use crate::error::{Error, Result};
use crate::grid::Grid;

/// `w x w` template of ones.
pub fn ones_template(w: usize) -> Result<Grid> {
    Grid::filled(w, w, 1.0)
}

/// `w x w` disk: a cell is inside when its center `(u + 0.5, v + 0.5)` lies
/// within `radius` of the grid center `(w / 2, w / 2)`.
pub fn disk_template(w: usize, radius: f64, inside: f64, outside: f64) -> Result<Grid> {
    if w == 0 {
        return Err(Error::InvalidArgument("template width must be at least 1".into()));
    }
    if radius.is_nan() || radius < 0.0 {
        return Err(Error::InvalidArgument(format!("radius must be >= 0, got {radius}")));
    }
    let center = w as f64 / 2.0;
    let mut values = Vec::with_capacity(w * w);
    for u in 0..w {
        for v in 0..w {
            let dn = u as f64 + 0.5 - center;
            let dm = v as f64 + 0.5 - center;
            values.push(if dn.hypot(dm) <= radius { inside } else { outside });
        }
    }
    Grid::new(w, w, values)
}
