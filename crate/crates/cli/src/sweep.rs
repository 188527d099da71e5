//! Homogeneous-structure sweep over `SG_n`.

use std::fmt::Write as _;
use std::time::Instant;

use gasket_core::{
    build_sg, certify, homogeneous_structure, solve_orbit_scale, HarmonicStructureCandidate, Mode,
    Rational, Scalar, SymmetricMatrix, Tolerances,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::error::CliResult;

pub const CSV_HEADER: &str = "n,mode,r_star,min_metric,verdict,millis";

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub n: usize,
    pub mode: Mode,
    pub r_star: String,
    pub min_metric: String,
    pub verdict: &'static str,
    pub millis: u128,
}

impl SweepRow {
    pub fn passed(&self) -> bool {
        self.verdict == "nondegenerate"
    }

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.n, self.mode, self.r_star, self.min_metric, self.verdict, self.millis
        )
    }
}

/// Per-`n` stream so rows do not depend on scheduling.
fn row_rng(seed: u64, n: usize) -> StdRng {
    StdRng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn sweep_one<S: Scalar>(n: usize, cfg: &RunConfig) -> CliResult<SweepRow> {
    let start = Instant::now();
    let tol: &Tolerances = &cfg.tolerances;
    let s = build_sg(n)?;
    let d = SymmetricMatrix::<S>::complete_graph(3);
    let homogeneous = homogeneous_structure(&s, &d, tol)?;
    let r_star = homogeneous.r().values()[0].to_text();

    let mut candidates = vec![homogeneous];
    if cfg.orbit_samples > 0 {
        let mut rng = row_rng(cfg.seed, n);
        let orbit_count = s.cell_orbits()?.len();
        for _ in 0..cfg.orbit_samples {
            let rho: Vec<S> = (0..orbit_count)
                .map(|_| S::from_i64(rng.gen_range(1..=9)))
                .collect();
            let r = solve_orbit_scale(&s, &d, &rho, tol)?;
            candidates.push(HarmonicStructureCandidate::new(d.clone(), r, tol)?);
        }
    }

    let mut min_metric: Option<S> = None;
    let mut verdict = "nondegenerate";
    for cand in candidates {
        let cert = certify(&s, cand, tol)?;
        let metric = cert.report.min_metric();
        if min_metric.as_ref().is_none_or(|m| metric < *m) {
            min_metric = Some(metric);
        }
        if !cert.check.holds {
            verdict = "not-harmonic";
        } else if !cert.report.is_nondegenerate() && verdict == "nondegenerate" {
            verdict = "degenerate";
        }
    }
    let millis = if cfg.timing {
        start.elapsed().as_millis()
    } else {
        0
    };
    Ok(SweepRow {
        n,
        mode: S::MODE,
        r_star,
        min_metric: min_metric.expect("at least one candidate").to_text(),
        verdict,
        millis,
    })
}

/// Rows in ascending `n`; the `n` values are processed in parallel.
pub fn run_sweep(cfg: &RunConfig) -> CliResult<Vec<SweepRow>> {
    let ns: Vec<usize> = cfg.n_range.clone().collect();
    ns.into_par_iter()
        .map(|n| match cfg.mode {
            Mode::Exact => sweep_one::<Rational>(n, cfg),
            Mode::Float => sweep_one::<f64>(n, cfg),
        })
        .collect()
}

pub fn to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        writeln!(out, "{}", row.to_csv()).expect("writing to a String");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(mode: Mode, lo: usize, hi: usize, samples: usize) -> RunConfig {
        RunConfig::new(
            mode,
            Tolerances::default(),
            Some(lo),
            Some(hi),
            samples,
            7,
            false,
        )
        .unwrap()
    }

    #[test]
    fn sg2_exact_row() {
        let rows = run_sweep(&cfg(Mode::Exact, 2, 2, 0)).unwrap();
        assert_eq!(rows[0].to_csv(), "2,exact,3/5,3/25,nondegenerate,0");
    }

    #[test]
    fn rows_ascend_and_repeat() {
        let a = run_sweep(&cfg(Mode::Exact, 2, 5, 2)).unwrap();
        let b = run_sweep(&cfg(Mode::Exact, 2, 5, 2)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.iter().map(|r| r.n).collect::<Vec<_>>(), vec![2, 3, 4, 5]);
        assert!(a.iter().all(SweepRow::passed));
    }

    #[test]
    fn float_rows_are_numbers() {
        let rows = run_sweep(&cfg(Mode::Float, 2, 4, 1)).unwrap();
        for row in &rows {
            let metric: f64 = row.min_metric.parse().unwrap();
            assert!(metric > 1e-12);
            assert!(row.passed());
        }
        assert!((rows[0].r_star.parse::<f64>().unwrap() - 0.6).abs() < 1e-12);
    }
}
