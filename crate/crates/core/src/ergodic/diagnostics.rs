//! Whole-sample diagnostics: the uniform lower bounds on quasiweights and
//! occurrence densities, the highest-power and return-length constants, and
//! the repetitivity ratio, with the bridge inequality between them.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::index::FactorIndex;
use crate::returns::return_stats;

use super::report::{ErgodicReport, Verdict};
use super::subadditive::{density_estimate_with_stride, quasiweight_estimate_with_stride};

/// Scan every factor of length `1..=maxlen`. For each length the report
/// carries a row `[min quasiweight, min density, recurrence/length]`; the
/// summary holds the global constants:
///
/// * `c_est`: smallest windowed quasiweight over all scanned factors — the
///   uniform positivity constant for disjoint copies;
/// * `e_est`: smallest windowed occurrence density times pattern length;
/// * `n_est`, `kappa_est`: highest observed power and return-length ratio;
/// * `linrep_d_est`: largest recurrence-to-length ratio;
/// * `periodic_flag`: a single primitive power spans half the sample.
///
/// Verdicts record `pq-pass` (`c_est` above the threshold), the bridge
/// `c_est >= e_est / (2(kappa_est+1))` that positivity of densities plus a
/// power bound forces on quasiweights, and the periodic flag.
pub fn run_diagnostics(
    index: &FactorIndex,
    maxlen: usize,
    window: usize,
    pq_threshold: f64,
) -> Result<ErgodicReport> {
    if maxlen == 0 {
        return Err(Error::InvalidInput("maxlen must be positive".into()));
    }
    if window > index.len() {
        return Err(Error::SampleTooShort {
            needed: window,
            have: index.len(),
            context: "diagnostics window",
        });
    }
    if maxlen > window / 8 {
        return Err(Error::InvalidInput(format!(
            "maxlen {maxlen} exceeds window/8 = {}",
            window / 8
        )));
    }
    let stats = return_stats(index, maxlen)?;
    let stride = (window / 4).max(1);

    // per-length scans are independent; assemble in length order
    let rows: Vec<(f64, f64, f64)> = (1..=maxlen)
        .into_par_iter()
        .map(|m| -> Result<(f64, f64, f64)> {
            let by_factor = index.positions_by_factor(m);
            let sample = index.sample();
            let mut nu_min = f64::INFINITY;
            let mut dens_min = f64::INFINITY;
            for id in 0..by_factor.factor_count() {
                let p = by_factor.positions_of(id)[0] as usize;
                let factor = sample.slice(p, p + m);
                nu_min = nu_min.min(quasiweight_estimate_with_stride(
                    index, &factor, window, stride,
                )?);
                dens_min = dens_min.min(density_estimate_with_stride(
                    index, &factor, window, stride,
                )?);
            }
            let recurrence = index.recurrence_estimate(m)?;
            Ok((nu_min, dens_min, recurrence.r_est as f64 / m as f64))
        })
        .collect::<Result<_>>()?;

    let c_est = rows.iter().map(|r| r.0).fold(f64::INFINITY, f64::min);
    let e_est = rows.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
    let linrep = rows.iter().map(|r| r.2).fold(0f64, f64::max);
    let periodic = stats.max_power_span >= index.len() / 2;

    let mut report = ErgodicReport::new("diagnostics");
    for (m, (nu, dens, r_ratio)) in rows.iter().enumerate() {
        report.push_row(m + 1, vec![*nu, *dens, *r_ratio], 0.0);
    }
    report.diagnostics.c_est = Some(c_est);
    report.diagnostics.e_est = Some(e_est);
    report.diagnostics.n_est = Some(stats.n_est);
    report.diagnostics.kappa_est = Some(stats.kappa_est);
    report.diagnostics.linrep_d_est = Some(linrep);
    report.diagnostics.periodic_flag = Some(periodic);

    report.verdicts.push(Verdict {
        name: "pq-pass".into(),
        pass: c_est > pq_threshold,
        value: c_est,
        threshold: pq_threshold,
    });
    report.verdicts.push(Verdict::at_least(
        "quasiweight-density-bridge",
        c_est,
        e_est / (2.0 * (stats.kappa_est + 1.0)),
    ));
    report.verdicts.push(Verdict {
        name: "periodic-flag".into(),
        pass: periodic,
        value: stats.max_power_span as f64 / index.len() as f64,
        threshold: 0.5,
    });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{block_doubling_word, fibonacci_word};
    use crate::word::Alphabet;

    #[test]
    fn fibonacci_diagnostics_pass() {
        let index = FactorIndex::build(&fibonacci_word(100_000)).unwrap();
        let report = run_diagnostics(&index, 8, 10_000, 0.05).unwrap();
        let c = report.diagnostics.c_est.unwrap();
        let e = report.diagnostics.e_est.unwrap();
        let kappa = report.diagnostics.kappa_est.unwrap();
        assert!(c > 0.1, "c_est {c}");
        assert!(c >= e / (2.0 * (kappa + 1.0)));
        assert!(report.verdicts.iter().any(|v| v.name == "pq-pass" && v.pass));
        assert_eq!(report.diagnostics.periodic_flag, Some(false));
        // linear repetitivity: recurrence grows linearly in the length
        assert!(report.diagnostics.linrep_d_est.unwrap() < 20.0);
    }

    #[test]
    fn periodic_sample_is_flagged() {
        let ab = Alphabet::of_chars("ab").unwrap();
        let index = FactorIndex::build(&ab.parse("ab").unwrap().repeat(4096)).unwrap();
        let report = run_diagnostics(&index, 4, 512, 0.05).unwrap();
        assert_eq!(report.diagnostics.periodic_flag, Some(true));
        // single letters cap the quasiweight of a period-2 sample at 1/2
        let c = report.diagnostics.c_est.unwrap();
        assert!((c - 0.5).abs() < 0.02, "c_est {c}");
    }

    #[test]
    fn block_doubling_fails_pq() {
        let index = FactorIndex::build(&block_doubling_word(1 << 17).unwrap()).unwrap();
        let report = run_diagnostics(&index, 2, 1 << 14, 0.05).unwrap();
        let c = report.diagnostics.c_est.unwrap();
        assert!(c <= 0.05, "c_est {c}");
        assert!(report.verdicts.iter().any(|v| v.name == "pq-pass" && !v.pass));
    }

    #[test]
    fn guards() {
        let index = FactorIndex::build(&fibonacci_word(1024)).unwrap();
        assert!(run_diagnostics(&index, 0, 512, 0.05).is_err());
        assert!(run_diagnostics(&index, 100, 512, 0.05).is_err());
        assert!(run_diagnostics(&index, 4, 4096, 0.05).is_err());
    }
}
