//! Report and trace writers.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use polyfourier::experiments::LabeledScan;
use polyfourier::expsum::RatioSample;
use serde::Serialize;

/// 17 significant digits, enough to round-trip an `f64`.
pub fn float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

pub fn to_json<T: Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

/// One row per scanned parameter; `term_k` columns hold per-term moduli and
/// are left empty where the value came from a circle mean.
pub fn scan_csv(scans: &[LabeledScan]) -> String {
    let terms = scans
        .iter()
        .flat_map(|s| s.scan.records.iter().map(|r| r.term_moduli.len()))
        .max()
        .unwrap_or(0);
    let mut out = String::from("scan,index,t_re,t_im,phi_re,phi_im,abs_phi,continued");
    for k in 0..terms {
        write!(out, ",term_{k}").unwrap();
    }
    out.push('\n');
    for s in scans {
        for r in &s.scan.records {
            write!(
                out,
                "{},{},{},{},{},{},{},{}",
                s.summary.label,
                r.index,
                float(r.t.re),
                float(r.t.im),
                float(r.value.re),
                float(r.value.im),
                float(r.modulus),
                r.continued
            )
            .unwrap();
            for k in 0..terms {
                out.push(',');
                if let Some(m) = r.term_moduli.get(k) {
                    out.push_str(&float(*m));
                }
            }
            out.push('\n');
        }
    }
    out
}

pub fn ratio_csv(trace: &[RatioSample]) -> String {
    let mut out = String::from("y,ratio,log_ratio\n");
    for s in trace {
        writeln!(out, "{},{},{}", float(s.y), float(s.ratio), float(s.log_ratio)).unwrap();
    }
    out
}

/// Writes `report.json` (and `trace.csv` when given) into `dir`, or prints
/// the report to stdout when no directory is set.
pub fn emit(dir: Option<&Path>, report: &str, trace: Option<&str>) -> std::io::Result<()> {
    match dir {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            fs::write(dir.join("report.json"), report)?;
            if let Some(trace) = trace {
                fs::write(dir.join("trace.csv"), trace)?;
            }
            Ok(())
        }
        None => std::io::stdout().lock().write_all(report.as_bytes()),
    }
}
