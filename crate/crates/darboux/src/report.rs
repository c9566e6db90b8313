//! Report documents and trajectory dumps.
//!
//! A report is one document per run with the fields `config`, `results`,
//! `evidence` and `version`, in that order. Everything inside is in
//! canonical order and carries no timestamps, so identical configurations
//! produce byte-identical reports.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::Path;

use darboux_core::dynamics::Trajectory;
use serde::Serialize;

use crate::config::ConfigEcho;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Serialize)]
pub struct Report<R: Serialize, E: Serialize> {
    pub config: ConfigEcho,
    pub results: R,
    pub evidence: E,
    pub version: &'static str,
}

impl<R: Serialize, E: Serialize> Report<R, E> {
    pub fn new(config: ConfigEcho, results: R, evidence: E) -> Self {
        Report {
            config,
            results,
            evidence,
            version: VERSION,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

/// Writes `t,x,y,z` rows with 17 significant digits.
pub fn write_trajectory_csv(mut out: impl Write, traj: &Trajectory) -> io::Result<()> {
    writeln!(out, "t,x,y,z")?;
    for (t, p) in &traj.samples {
        writeln!(out, "{:.16e},{:.16e},{:.16e},{:.16e}", t, p[0], p[1], p[2])?;
    }
    Ok(())
}

pub fn dump_trajectory(path: &Path, traj: &Trajectory) -> io::Result<()> {
    let file = std::fs::File::create(path)?;
    let mut out = io::BufWriter::new(file);
    write_trajectory_csv(&mut out, traj)?;
    out.flush()
}

/// Simple left-aligned table for the text format.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut s = String::new();
    let line = |s: &mut String, cells: &[String]| {
        let parts: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        let _ = writeln!(s, "{}", parts.join("  ").trim_end());
    };
    line(&mut s, &header.iter().map(|h| h.to_string()).collect::<Vec<_>>());
    for r in rows {
        line(&mut s, r);
    }
    s
}

/// Shortest round-trip text of a float, as in the JSON output.
pub fn num(v: f64) -> String {
    if v.is_finite() {
        format!("{v:e}")
    } else {
        "-".into()
    }
}

pub fn point3(p: &[f64; 3]) -> String {
    format!("({}, {}, {})", p[0], p[1], p[2])
}

#[cfg(test)]
mod tests {
    use super::*;
    use darboux_core::dynamics::TrajectoryStatus;

    #[test]
    fn csv_has_seventeen_digits() {
        let traj = Trajectory {
            samples: vec![(0.0, [1.0, 0.0, 1.0]), (0.5, [1.0 / 3.0, -2.0, 1e-20])],
            step: 0.5,
            method: "rk4",
            status: TrajectoryStatus::Completed,
        };
        let mut buf = Vec::new();
        write_trajectory_csv(&mut buf, &traj).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "t,x,y,z");
        assert_eq!(lines[2], "5.0000000000000000e-1,3.3333333333333331e-1,-2.0000000000000000e0,9.9999999999999995e-21");
        let back: f64 = lines[2].split(',').nth(1).unwrap().parse().unwrap();
        assert_eq!(back, 1.0 / 3.0);
    }

    #[test]
    fn tables_align() {
        let t = table(&["f", "k"], &[vec!["x^2 + z^2".into(), "2".into()]]);
        assert_eq!(t, "f          k\nx^2 + z^2  2\n");
    }
}
