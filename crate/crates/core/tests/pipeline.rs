use wdpdetect::eval::{match_detections, score, run_benchmark, write_summary_csv, BenchConfig, KMode, SUMMARY_HEADER};
use wdpdetect::select::{estimate_k, NullSolver};
use wdpdetect::sim::{generate, Separation, SimSpec, Truth, DEFAULT_MAX_DRAWS};
use wdpdetect::solver::{greedy_detect, sort_bids, wdp_solve};
use wdpdetect::{correlate, disk_template, ones_template, Grid, Location};

fn spec(separation: Separation, snr_db: f64, seed: u64) -> SimSpec {
    SimSpec {
        n_rows: 40,
        n_cols: 40,
        template: ones_template(3).unwrap(),
        k: 4,
        separation,
        snr_db,
        rng_seed: seed,
        require_tight_pair: separation == Separation::Dense,
        max_draws: DEFAULT_MAX_DRAWS,
    }
}

#[test]
fn noiseless_instance_is_recovered_exactly() {
    let inst = generate(&spec(Separation::Dense, f64::INFINITY, 3)).unwrap();
    assert_eq!(inst.sigma, 0.0);
    assert_eq!(inst.noisy, inst.clean);
    let s = ones_template(3).unwrap();
    let report = wdp_solve(&sort_bids(&correlate(&inst.noisy, &s).unwrap(), 3), 4).unwrap();
    let m = match_detections(&inst.true_locations, &report.allocation.locations(), 3);
    assert_eq!(score(&m, 4, 4).f1, 1.0);
    assert_eq!(report.objective, 36.0);
}

#[test]
fn single_disk_occurrence() {
    let s = disk_template(5, 2.0, 1.0, 0.0).unwrap();
    let mut y = Grid::zeros(30, 25).unwrap();
    y.add_template(&s, Location::new(11, 7)).unwrap();
    let bids = sort_bids(&correlate(&y, &s).unwrap(), 5);
    let report = wdp_solve(&bids, 1).unwrap();
    assert_eq!(report.allocation.locations(), vec![Location::new(11, 7)]);
    assert_eq!(report.objective, s.energy());
    assert_eq!(greedy_detect(&bids, 1).unwrap().locations(), vec![Location::new(11, 7)]);
}

#[test]
fn written_instance_reloads() {
    let dir = tempfile::tempdir().unwrap();
    let inst = generate(&spec(Separation::WellSeparated, 5.0, 8)).unwrap();
    inst.write_to(dir.path()).unwrap();
    let truth = Truth::load(dir.path().join("truth.json")).unwrap();
    assert_eq!(truth, inst.truth());
    assert_eq!(truth.template_grid().unwrap(), ones_template(3).unwrap());
    assert_eq!(Grid::load(dir.path().join("noisy.csv")).unwrap(), inst.noisy);
}

#[test]
fn gap_estimate_at_high_snr() {
    let inst = generate(&spec(Separation::WellSeparated, 10.0, 21)).unwrap();
    let profile = estimate_k(&inst.noisy, &ones_template(3).unwrap(), 8, 10, 1, NullSolver::Exact).unwrap();
    assert_eq!(profile.k_hat, 4);
}

#[test]
fn empty_benchmark_writes_header_only() {
    let out = run_benchmark(&BenchConfig::dense_default(vec![0.0], 0, 1));
    let mut buf = Vec::new();
    write_summary_csv(&out.summary, &mut buf).unwrap();
    assert_eq!(String::from_utf8(buf).unwrap().trim_end(), SUMMARY_HEADER);
}

#[test]
fn gap_mode_reports_k_accuracy() {
    let config = BenchConfig {
        k_mode: KMode::Gap,
        k_max: Some(6),
        null_reps: 4,
        ..BenchConfig::dense_default(vec![10.0], 3, 5)
    };
    let out = run_benchmark(&config);
    assert!(out.summary.iter().all(|r| r.k_accuracy.is_some()));
    assert!(out.records.iter().all(|r| r.k_hat.is_some()));
}
