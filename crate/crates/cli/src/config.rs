use std::ops::RangeInclusive;

use gasket_core::{Mode, Tolerances};

use crate::error::{CliError, CliResult};

pub const N_LIMIT: RangeInclusive<usize> = 2..=64;
pub const DEFAULT_EXACT_MAX: usize = 16;
pub const DEFAULT_FLOAT_MAX: usize = 64;

/// Settings shared by every command.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub tolerances: Tolerances,
    pub n_range: RangeInclusive<usize>,
    pub orbit_samples: usize,
    pub seed: u64,
    /// Write 0 in the timing column so output is byte-reproducible.
    pub timing: bool,
}

impl RunConfig {
    pub fn new(
        mode: Mode,
        tolerances: Tolerances,
        n_min: Option<usize>,
        n_max: Option<usize>,
        orbit_samples: usize,
        seed: u64,
        timing: bool,
    ) -> CliResult<Self> {
        tolerances
            .validate()
            .map_err(|e| CliError::Config(e.to_string()))?;
        let default_max = match mode {
            Mode::Exact => DEFAULT_EXACT_MAX,
            Mode::Float => DEFAULT_FLOAT_MAX,
        };
        let lo = n_min.unwrap_or(*N_LIMIT.start());
        let hi = n_max.unwrap_or(default_max);
        if !N_LIMIT.contains(&lo) || !N_LIMIT.contains(&hi) || lo > hi {
            return Err(CliError::Config(format!(
                "n range {lo}..={hi} must lie within {}..={} and be nonempty",
                N_LIMIT.start(),
                N_LIMIT.end()
            )));
        }
        Ok(Self {
            mode,
            tolerances,
            n_range: lo..=hi,
            orbit_samples,
            seed,
            timing,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_caps_depend_on_mode() {
        let t = Tolerances::default();
        let exact = RunConfig::new(Mode::Exact, t, None, None, 0, 0, true).unwrap();
        assert_eq!(exact.n_range, 2..=16);
        let float = RunConfig::new(Mode::Float, t, None, None, 0, 0, true).unwrap();
        assert_eq!(float.n_range, 2..=64);
    }

    #[test]
    fn bad_ranges_and_tolerances() {
        let t = Tolerances::default();
        assert!(RunConfig::new(Mode::Exact, t, Some(1), Some(3), 0, 0, true).is_err());
        assert!(RunConfig::new(Mode::Float, t, Some(2), Some(65), 0, 0, true).is_err());
        assert!(RunConfig::new(Mode::Float, t, Some(9), Some(3), 0, 0, true).is_err());
        let bad = Tolerances {
            residual: -1.0,
            ..t
        };
        assert!(matches!(
            RunConfig::new(Mode::Float, bad, None, None, 0, 0, true),
            Err(CliError::Config(_))
        ));
    }
}
