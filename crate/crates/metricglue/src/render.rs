//! Plain-text rendering for CLI reports.
//!
//! JSON output is handled by serializing the report structs directly; this
//! module only covers the human-facing `--format text` views.

use crate::scenario::ScenarioReport;
use crate::suite::SuiteReport;
use metricglue_core::morphism::PointMap;
use metricglue_core::space::SemiMetricSpace;
use metricglue_core::ExtDist;
use std::fmt::Write;

/// Distance matrices larger than this are truncated in text mode.
pub const TEXT_MATRIX_LIMIT: usize = 20;

pub fn dist_str(d: ExtDist) -> String {
    if d.is_finite() {
        format!("{}", d.as_f64())
    } else {
        "inf".to_string()
    }
}

pub fn space_text(space: &SemiMetricSpace) -> String {
    let n = space.len();
    let shown = n.min(TEXT_MATRIX_LIMIT);
    let labels: Vec<&str> = space
        .points()
        .iter()
        .take(shown)
        .map(|p| p.as_str())
        .collect();
    let cells: Vec<Vec<String>> = (0..shown)
        .map(|i| (0..shown).map(|j| dist_str(space.dist(i, j))).collect())
        .collect();
    let label_w = labels.iter().map(|l| l.len()).max().unwrap_or(0);
    let mut col_w = vec![0usize; shown];
    for (j, w) in col_w.iter_mut().enumerate() {
        *w = labels[j].len();
        for row in &cells {
            *w = (*w).max(row[j].len());
        }
    }
    let mut out = String::new();
    let _ = writeln!(out, "{n} point(s)");
    let _ = write!(out, "{:label_w$}", "");
    for (j, l) in labels.iter().enumerate() {
        let _ = write!(out, "  {:>w$}", l, w = col_w[j]);
    }
    let _ = writeln!(out);
    for (i, row) in cells.iter().enumerate() {
        let _ = write!(out, "{:label_w$}", labels[i]);
        for (j, c) in row.iter().enumerate() {
            let _ = write!(out, "  {:>w$}", c, w = col_w[j]);
        }
        let _ = writeln!(out);
    }
    if shown < n {
        let _ = writeln!(
            out,
            "(matrix truncated to {shown}x{shown}; full size {n}x{n} — use --format json)"
        );
    }
    out
}

pub fn map_text(map: &PointMap) -> String {
    let mut out = String::new();
    for (i, p) in map.source().points().iter().enumerate() {
        let q = &map.target().points()[map.apply_index(i)];
        let _ = writeln!(out, "{} -> {}", p.as_str(), q.as_str());
    }
    out
}

pub fn suite_text(report: &SuiteReport) -> String {
    let mut out = String::new();
    let verdict = if report.passed() { "PASS" } else { "FAIL" };
    let _ = writeln!(out, "suite {}: {verdict}", report.name);
    if let Some(seed) = report.seed {
        let _ = writeln!(out, "  seed {seed}");
    }
    let _ = writeln!(
        out,
        "  {} case(s), {} check(s), {} space(s) re-validated, {} ms",
        report.cases, report.checks, report.spaces_validated, report.elapsed_ms
    );
    for note in &report.notes {
        let _ = writeln!(out, "  note: {note}");
    }
    if report.failures_total > 0 {
        let _ = writeln!(out, "  {} failure(s):", report.failures_total);
        for f in &report.failures {
            let _ = writeln!(out, "    {f}");
        }
        let more = report.failures_total - report.failures.len();
        if more > 0 {
            let _ = writeln!(out, "    ... and {more} more");
        }
    }
    out
}

pub fn scenario_text(report: &ScenarioReport) -> String {
    let mut out = String::new();
    let verdict = if report.passed() { "PASS" } else { "FAIL" };
    let _ = writeln!(
        out,
        "scenario {} ({}): {verdict}",
        report.name, report.params
    );
    for e in &report.expectations {
        let mark = if e.passed { "[PASS]" } else { "[FAIL]" };
        let _ = writeln!(out, "  {mark} {} — {}", e.name, e.detail);
    }
    out
}
