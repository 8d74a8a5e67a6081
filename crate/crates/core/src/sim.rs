//! Synthetic measurements: `K` template copies at random non-overlapping
//! anchors plus white Gaussian noise at a requested SNR.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::allocation::pairwise_separated;
use crate::error::{Error, Result};
use crate::grid::{Grid, Location};
use crate::seed;

pub const DEFAULT_MAX_DRAWS: u64 = 1_000_000;

/// Minimum pairwise anchor distance imposed on generated occurrences.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Separation {
    /// Chebyshev distance at least `W`: occurrences may touch but not overlap.
    Dense,
    /// Chebyshev distance at least `2W`.
    #[serde(rename = "well")]
    WellSeparated,
}

impl Separation {
    pub fn min_distance(self, w: usize) -> usize {
        match self {
            Separation::Dense => w,
            Separation::WellSeparated => 2 * w,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Separation::Dense => "dense",
            Separation::WellSeparated => "well",
        }
    }
}

impl FromStr for Separation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "dense" => Ok(Separation::Dense),
            "well" | "well_separated" => Ok(Separation::WellSeparated),
            other => Err(format!("unknown separation {other:?} (expected dense or well)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimSpec {
    pub n_rows: usize,
    pub n_cols: usize,
    pub template: Grid,
    pub k: usize,
    pub separation: Separation,
    /// `f64::INFINITY` disables noise.
    pub snr_db: f64,
    pub rng_seed: u64,
    /// Regenerate until some pair sits exactly `W` apart (dense only).
    pub require_tight_pair: bool,
    pub max_draws: u64,
}

impl SimSpec {
    pub fn width(&self) -> usize {
        self.template.rows()
    }

    fn validate(&self) -> Result<()> {
        let w = self.width();
        if self.template.cols() != w {
            return Err(Error::NonSquareTemplate {
                rows: w,
                cols: self.template.cols(),
            });
        }
        if w > self.n_rows || w > self.n_cols {
            return Err(Error::Dimension {
                rows: self.n_rows,
                cols: self.n_cols,
                template_rows: w,
                template_cols: w,
            });
        }
        if self.k == 0 {
            return Err(Error::InvalidArgument("k must be at least 1".into()));
        }
        if self.k * w * w > self.n_rows * self.n_cols {
            return Err(Error::InvalidArgument(format!(
                "{} templates of {w}x{w} cannot fit in {}x{}",
                self.k, self.n_rows, self.n_cols
            )));
        }
        if self.snr_db.is_nan() {
            return Err(Error::InvalidArgument("snr_db is NaN".into()));
        }
        if self.require_tight_pair && (self.k < 2 || self.separation != Separation::Dense) {
            return Err(Error::InvalidArgument(
                "a tight pair needs k >= 2 and dense separation".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimInstance {
    pub clean: Grid,
    pub noisy: Grid,
    pub true_locations: Vec<Location>,
    pub sigma: f64,
    pub spec: SimSpec,
}

/// Noise level giving `snr_db = 10 log10(K W^2 / (sigma^2 N M))`.
pub fn sigma_for_snr(snr_db: f64, k: usize, w: usize, n: usize, m: usize) -> f64 {
    let signal = (k * w * w) as f64;
    (signal / ((n * m) as f64 * 10f64.powf(snr_db / 10.0))).sqrt()
}

/// Inverse of [`sigma_for_snr`].
pub fn snr_for_sigma(sigma: f64, k: usize, w: usize, n: usize, m: usize) -> f64 {
    let signal = (k * w * w) as f64;
    10.0 * (signal / (sigma * sigma * (n * m) as f64)).log10()
}

pub fn generate(spec: &SimSpec) -> Result<SimInstance> {
    spec.validate()?;
    let w = spec.width();
    let min_dist = spec.separation.min_distance(w);
    let mut rng = seed::rng(spec.rng_seed);

    let mut draws = 0u64;
    let locations = loop {
        let mut accepted: Vec<Location> = Vec::with_capacity(spec.k);
        while accepted.len() < spec.k {
            if draws >= spec.max_draws {
                return Err(Error::Generation {
                    k: spec.k,
                    attempts: draws,
                });
            }
            draws += 1;
            let cand = Location::new(rng.gen_range(0..=spec.n_rows - w), rng.gen_range(0..=spec.n_cols - w));
            if accepted.iter().all(|&a| a.chebyshev(cand) >= min_dist) {
                accepted.push(cand);
            }
        }
        if !spec.require_tight_pair || min_pairwise(&accepted) == Some(w) {
            break accepted;
        }
    };

    let mut clean = Grid::zeros(spec.n_rows, spec.n_cols)?;
    for &loc in &locations {
        clean.add_template(&spec.template, loc)?;
    }
    let sigma = sigma_for_snr(spec.snr_db, spec.k, w, spec.n_rows, spec.n_cols);
    let noisy = if sigma > 0.0 {
        let normal = Normal::new(0.0, sigma).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        let values = clean.values().iter().map(|&v| v + normal.sample(&mut rng)).collect();
        Grid::new(spec.n_rows, spec.n_cols, values)?
    } else {
        clean.clone()
    };
    debug_assert!(pairwise_separated(&locations, w));
    Ok(SimInstance {
        clean,
        noisy,
        true_locations: locations,
        sigma,
        spec: spec.clone(),
    })
}

fn min_pairwise(locs: &[Location]) -> Option<usize> {
    let mut min = None;
    for (i, &a) in locs.iter().enumerate() {
        for &b in &locs[i + 1..] {
            let d = a.chebyshev(b);
            min = Some(min.map_or(d, |m: usize| m.min(d)));
        }
    }
    min
}

/// Contents of `truth.json`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Truth {
    pub n_rows: usize,
    pub n_cols: usize,
    pub w: usize,
    pub k: usize,
    pub separation: Separation,
    /// `null` when noise is disabled.
    pub snr_db: Option<f64>,
    pub rng_seed: u64,
    pub require_tight_pair: bool,
    pub sigma: f64,
    pub locations: Vec<Location>,
    pub template: Vec<Vec<f64>>,
}

impl Truth {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
    }

    pub fn template_grid(&self) -> Result<Grid> {
        Grid::from_rows(&self.template)
    }
}

impl SimInstance {
    pub fn truth(&self) -> Truth {
        let s = &self.spec;
        Truth {
            n_rows: s.n_rows,
            n_cols: s.n_cols,
            w: s.width(),
            k: s.k,
            separation: s.separation,
            snr_db: s.snr_db.is_finite().then_some(s.snr_db),
            rng_seed: s.rng_seed,
            require_tight_pair: s.require_tight_pair,
            sigma: self.sigma,
            locations: self.true_locations.clone(),
            template: (0..s.template.rows()).map(|u| s.template.row(u).to_vec()).collect(),
        }
    }

    /// Writes `clean.csv`, `noisy.csv` and `truth.json` into `dir`.
    pub fn write_to(&self, dir: impl AsRef<Path>) -> Result<()> {
        let dir = dir.as_ref();
        fs::create_dir_all(dir)?;
        self.clean.save(dir.join("clean.csv"))?;
        self.noisy.save(dir.join("noisy.csv"))?;
        let mut json = serde_json::to_string_pretty(&self.truth())?;
        json.push('\n');
        fs::write(dir.join("truth.json"), json)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::template::ones_template;

    fn spec(k: usize, separation: Separation, snr_db: f64, seed: u64, tight: bool) -> SimSpec {
        SimSpec {
            n_rows: 40,
            n_cols: 40,
            template: ones_template(3).unwrap(),
            k,
            separation,
            snr_db,
            rng_seed: seed,
            require_tight_pair: tight,
            max_draws: DEFAULT_MAX_DRAWS,
        }
    }

    #[test]
    fn zero_db_sigma() {
        assert!((sigma_for_snr(0.0, 4, 3, 40, 40) - 0.15).abs() < 1e-15);
        assert!((snr_for_sigma(0.15, 4, 3, 40, 40)).abs() < 1e-12);
    }

    #[test]
    fn halving_sigma_adds_six_db() {
        let a = snr_for_sigma(0.4, 4, 3, 40, 40);
        let b = snr_for_sigma(0.2, 4, 3, 40, 40);
        assert!((b - a - 10.0 * 4f64.log10()).abs() < 1e-12);
        assert!((b - a - 6.0206).abs() < 1e-4);
    }

    #[test]
    fn snr_round_trip() {
        for &db in &[-30.0, -12.5, 0.0, 7.25, 20.0] {
            let s = sigma_for_snr(db, 6, 5, 50, 200);
            assert!((snr_for_sigma(s, 6, 5, 50, 200) - db).abs() < 1e-12);
        }
    }

    #[test]
    fn single_occurrence() {
        let inst = generate(&spec(1, Separation::Dense, f64::INFINITY, 3, false)).unwrap();
        assert_eq!(inst.true_locations.len(), 1);
        assert_eq!(inst.clean.values().iter().sum::<f64>(), 9.0);
        assert_eq!(inst.noisy, inst.clean);
        assert_eq!(inst.sigma, 0.0);
    }

    #[test]
    fn tight_pair_dense_instances() {
        for seed in 0..25 {
            let inst = generate(&spec(4, Separation::Dense, 0.0, seed, true)).unwrap();
            assert!(pairwise_separated(&inst.true_locations, 3));
            assert_eq!(min_pairwise(&inst.true_locations), Some(3));
            let mut rebuilt = Grid::zeros(40, 40).unwrap();
            for &l in &inst.true_locations {
                rebuilt.add_template(&inst.spec.template, l).unwrap();
            }
            assert_eq!(rebuilt, inst.clean);
        }
    }

    #[test]
    fn well_separated_implies_dense() {
        for seed in 0..25 {
            let inst = generate(&spec(4, Separation::WellSeparated, 0.0, seed, false)).unwrap();
            let d = min_pairwise(&inst.true_locations).unwrap();
            assert!(d >= 6);
            assert!(pairwise_separated(&inst.true_locations, 3));
        }
    }

    #[test]
    fn same_seed_same_instance() {
        let s = spec(4, Separation::Dense, -3.0, 42, true);
        assert_eq!(generate(&s).unwrap(), generate(&s).unwrap());
        let other = generate(&SimSpec { rng_seed: 43, ..s.clone() }).unwrap();
        assert_ne!(other.noisy, generate(&s).unwrap().noisy);
    }

    #[test]
    fn noise_statistics() {
        let mut s = spec(4, Separation::Dense, -10.0, 9, false);
        s.n_rows = 120;
        s.n_cols = 120;
        let inst = generate(&s).unwrap();
        let diff: Vec<f64> = inst
            .noisy
            .values()
            .iter()
            .zip(inst.clean.values())
            .map(|(a, b)| a - b)
            .collect();
        let n = diff.len() as f64;
        let mean = diff.iter().sum::<f64>() / n;
        let var = diff.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / (n - 1.0);
        let sigma2 = inst.sigma * inst.sigma;
        // standard errors of the sample mean and variance under Gaussian noise
        assert!(mean.abs() < 3.0 * inst.sigma / n.sqrt(), "mean {mean}");
        assert!((var - sigma2).abs() < 3.0 * sigma2 * (2.0 / (n - 1.0)).sqrt(), "var {var} vs {sigma2}");
    }

    #[test]
    fn impossible_density_fails() {
        let mut s = spec(4, Separation::WellSeparated, 0.0, 1, false);
        s.n_rows = 6;
        s.n_cols = 6;
        s.max_draws = 10_000;
        assert!(matches!(generate(&s), Err(Error::Generation { .. })));
        assert!(generate(&spec(1, Separation::Dense, 0.0, 1, true)).is_err());
        assert!(generate(&spec(0, Separation::Dense, 0.0, 1, false)).is_err());
    }

    #[test]
    fn writes_three_files() {
        let dir = tempfile::tempdir().unwrap();
        let inst = generate(&spec(4, Separation::Dense, 0.0, 7, true)).unwrap();
        inst.write_to(dir.path()).unwrap();
        assert_eq!(Grid::load(dir.path().join("noisy.csv")).unwrap(), inst.noisy);
        assert_eq!(Grid::load(dir.path().join("clean.csv")).unwrap(), inst.clean);
        let truth = Truth::load(dir.path().join("truth.json")).unwrap();
        assert_eq!(truth.locations, inst.true_locations);
        assert_eq!(truth.template_grid().unwrap(), inst.spec.template);
        assert_eq!(truth.snr_db, Some(0.0));
    }
}
