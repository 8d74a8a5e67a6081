//! Detection scoring, the benchmark sweep, and the brute-force cross-check.

mod bench;
mod matching;
mod oracle;

pub use bench::{
    run_benchmark, run_benchmark_with, write_records_jsonl, write_summary_csv, BenchConfig, BenchOutput, KMode,
    SummaryRow, TrialRecord, SUMMARY_HEADER,
};
pub use matching::{match_detections, score, MatchResult, Scores};
pub use oracle::{oracle_check, random_instance, OracleCase, OracleSummary};
