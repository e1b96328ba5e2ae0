//! Bit-stable serialization of experiment output: fixed-precision numbers,
//! the frozen CSV schema, and the JSON run manifest.

use std::fs;
use std::path::Path;

use anyhow::Context;
use ewens::montecarlo::CellSummary;
use serde::Serialize;

/// Frozen column order of `summary.csv`.
pub const SUMMARY_HEADER: &str = "n,theta,N,i,estimator,reps,seed,rb_percent,rrmse_percent,neg_rate,mc_se_rb";

/// Provenance sidecar written next to every `summary.csv`.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool_version: String,
    /// Hex SHA-256 of the canonicalized config's JSON form.
    pub config_digest: String,
    pub seed: u64,
    /// RFC 3339, UTC.
    pub started: String,
    pub finished: String,
    pub row_count: usize,
}

/// Formats with 9 significant digits, independent of platform and locale.
///
/// Plain decimal notation is used while the decimal exponent lies in
/// `[-4, 11]`, scientific notation (`d.ddddddddeE`) outside it; trailing
/// zeros are trimmed so integers print as integers, and zero prints as `0`.
pub fn sig9(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded = format!("{x:.8e}");
    let (mantissa, exp) = rounded.split_once('e').expect("{:.8e} always has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    debug_assert_eq!(digits.len(), 9);
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if (-4..=11).contains(&exp) {
        let point = exp + 1;
        if point <= 0 {
            out.push_str("0.");
            out.extend(std::iter::repeat_n('0', (-point) as usize));
            out.push_str(&digits);
        } else if point as usize >= digits.len() {
            out.push_str(&digits);
            out.extend(std::iter::repeat_n('0', point as usize - digits.len()));
        } else {
            out.push_str(&digits[..point as usize]);
            out.push('.');
            out.push_str(&digits[point as usize..]);
        }
    } else {
        out.push_str(&digits[..1]);
        out.push('.');
        out.push_str(&digits[1..]);
        trim_fraction(&mut out);
        out.push('e');
        out.push_str(&exp.to_string());
        return out;
    }
    trim_fraction(&mut out);
    out
}

fn trim_fraction(s: &mut String) {
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
}

/// One frozen-schema CSV line per summary row.
pub fn summary_csv(rows: &[CellSummary]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(SUMMARY_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            r.n,
            sig9(r.theta),
            r.pop_size,
            r.target_index,
            r.estimator.code(),
            r.reps,
            r.seed,
            sig9(r.rb_percent),
            sig9(r.rrmse_percent),
            sig9(r.neg_rate),
            sig9(r.mc_se_rb),
        ));
    }
    out
}

pub fn write_summary_csv(path: &Path, rows: &[CellSummary]) -> anyhow::Result<()> {
    fs::write(path, summary_csv(rows)).with_context(|| format!("writing {}", path.display()))
}

pub fn write_manifest(path: &Path, manifest: &RunManifest) -> anyhow::Result<()> {
    let mut text = serde_json::to_string_pretty(manifest).context("serializing run manifest")?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}
