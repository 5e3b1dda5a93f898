//! Subadditive limit machinery: per-length maxima `max F(v)/|v|`, the
//! limit-vs-infimum report, and windowed quasiweight estimates
//! `min l_v(window)/|window|` standing in for the liminf over growing words.

use crate::error::{Error, Result};
use crate::index::FactorIndex;
use crate::word::{greedy_disjoint, Word};

use super::functions::SubadditiveFunction;
use super::report::{check_scales, ErgodicReport, Verdict};

/// `max F(v)/|v|` over all distinct length-`n` factors of the sample.
pub fn subadditive_level_max(
    f: &SubadditiveFunction,
    index: &FactorIndex,
    n: usize,
) -> Result<f64> {
    if n == 0 || n > index.len() {
        return Err(Error::InvalidInput(format!(
            "no factors at length {n} in a sample of length {}",
            index.len()
        )));
    }
    let mut best = f64::NEG_INFINITY;
    for v in index.enumerate_factors(n)? {
        best = best.max(f.eval(&v) / n as f64);
    }
    Ok(best)
}

/// Prefix averages `F(prefix_n)/n` against the running infimum of the
/// per-length maxima, computed at the same scales. Each row's estimate is
/// `[prefix_average, level_max, running_inf]`; the oscillation is the gap
/// `|prefix_average - running_inf|`. The verdict accepts when the terminal
/// prefix average sits within `tolerance` of the smallest computed level
/// max; for a convergent subadditive function the two meet.
pub fn subadditive_limit_report(
    f: &SubadditiveFunction,
    index: &FactorIndex,
    scales: &[usize],
    tolerance: f64,
) -> Result<ErgodicReport> {
    check_scales(scales, index.len())?;
    let mut report = ErgodicReport::new(f.name());
    let mut running_inf = f64::INFINITY;
    for &n in scales {
        let prefix_avg = f.eval(&index.sample().slice(0, n)) / n as f64;
        let level = subadditive_level_max(f, index, n)?;
        running_inf = running_inf.min(level);
        report.push_row(n, vec![prefix_avg, level, running_inf], (prefix_avg - running_inf).abs());
    }
    let terminal = report.terminal().expect("scales nonempty");
    let gap = (terminal.estimate[0] - terminal.estimate[2]).abs();
    report.verdicts.push(Verdict::at_most("subadditive-limit-agreement", gap, tolerance));
    Ok(report)
}

/// Prefix averages `F(prefix_n)/n` alone, for oscillation witnesses at
/// scales where enumerating every factor would be wasteful. Rows carry the
/// single-component estimate and zero oscillation; the spread across scales
/// is the consumer's statistic.
pub fn subadditive_prefix_series(
    f: &SubadditiveFunction,
    index: &FactorIndex,
    scales: &[usize],
) -> Result<ErgodicReport> {
    check_scales(scales, index.len())?;
    let mut report = ErgodicReport::new(f.name());
    for &n in scales {
        let prefix_avg = f.eval(&index.sample().slice(0, n)) / n as f64;
        report.push_row(n, vec![prefix_avg], 0.0);
    }
    Ok(report)
}

/// Windowed stand-in for the quasiweight `liminf l_v(w)/|w|`: the minimum of
/// `l_v(window)/window` over windows of the given length placed at stride
/// `window/4` (plus the final placement). Stride-1 scans are available
/// through [`quasiweight_estimate_with_stride`] when the window is small.
pub fn quasiweight_estimate(index: &FactorIndex, v: &Word, window: usize) -> Result<f64> {
    quasiweight_estimate_with_stride(index, v, window, (window / 4).max(1))
}

pub fn quasiweight_estimate_with_stride(
    index: &FactorIndex,
    v: &Word,
    window: usize,
    stride: usize,
) -> Result<f64> {
    if v.is_empty() {
        return Err(Error::EmptyPattern { operation: "quasiweight_estimate" });
    }
    if window < 4 * v.len() {
        return Err(Error::InvalidInput(format!(
            "window {window} shorter than 4·|v| = {} for v = `{v}`",
            4 * v.len()
        )));
    }
    if window > index.len() {
        return Err(Error::InvalidInput(format!(
            "window {window} exceeds the sample length {}",
            index.len()
        )));
    }
    if stride == 0 {
        return Err(Error::InvalidInput("stride must be positive".into()));
    }
    let positions = index.occurrence_positions(v)?.positions;
    Ok(min_over_windows(&positions, v.len(), window, stride, index.len(), true))
}

/// Windowed stand-in for the occurrence-density bound: the minimum of
/// `#occurrences(window)·|v|/window` over the same strided windows.
pub fn density_estimate_with_stride(
    index: &FactorIndex,
    v: &Word,
    window: usize,
    stride: usize,
) -> Result<f64> {
    if v.is_empty() {
        return Err(Error::EmptyPattern { operation: "density_estimate" });
    }
    if window > index.len() {
        return Err(Error::InvalidInput(format!(
            "window {window} exceeds the sample length {}",
            index.len()
        )));
    }
    let positions = index.occurrence_positions(v)?.positions;
    Ok(min_over_windows(&positions, v.len(), window, stride, index.len(), false))
}

/// Minimum over strided windows of either the greedy disjoint count or the
/// raw occurrence count, scaled by `|v|/window`.
fn min_over_windows(
    positions: &[usize],
    plen: usize,
    window: usize,
    stride: usize,
    len: usize,
    disjoint: bool,
) -> f64 {
    let last_start = len - window;
    let mut best = f64::INFINITY;
    let mut w = 0usize;
    loop {
        // occurrences fully inside [w, w + window)
        let lo = positions.partition_point(|&p| p < w);
        let hi = positions.partition_point(|&p| p + plen <= w + window);
        let copies = if disjoint {
            greedy_disjoint(&positions[lo..hi], plen)
        } else {
            hi.saturating_sub(lo)
        };
        best = best.min(copies as f64 * plen as f64 / window as f64);
        if w == last_start {
            break;
        }
        w = (w + stride).min(last_start);
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ergodic::functions::{neg_disjoint, word_length};
    use crate::generate::{block_doubling_word, fibonacci_word};
    use crate::word::Alphabet;

    fn w(text: &str) -> Word {
        Alphabet::of_chars("ab").unwrap().parse(text).unwrap()
    }

    #[test]
    fn level_max_examples() {
        let fib = FactorIndex::build(&fibonacci_word(4096)).unwrap();
        let f = neg_disjoint(&w("ab")).unwrap();
        // factors of length 2 are {aa, ab, ba}; values 0, -1, 0
        assert_eq!(subadditive_level_max(&f, &fib, 2).unwrap(), 0.0);

        let len = word_length();
        for n in [1, 2, 17, 100] {
            assert_eq!(subadditive_level_max(&len, &fib, n).unwrap(), 1.0);
        }

        let aaaa = FactorIndex::build(&w("aaaa")).unwrap();
        let g = neg_disjoint(&w("a")).unwrap();
        assert_eq!(subadditive_level_max(&g, &aaaa, 2).unwrap(), -1.0);

        assert!(subadditive_level_max(&g, &aaaa, 0).is_err());
        assert!(subadditive_level_max(&g, &aaaa, 5).is_err());
    }

    #[test]
    fn word_length_report_is_exactly_one() {
        let fib = FactorIndex::build(&fibonacci_word(2048)).unwrap();
        let report =
            subadditive_limit_report(&word_length(), &fib, &[4, 64, 1024], 0.02).unwrap();
        for row in &report.series {
            assert_eq!(row.estimate, vec![1.0, 1.0, 1.0]);
            assert_eq!(row.oscillation, 0.0);
        }
        assert!(report.verdicts[0].pass);
    }

    #[test]
    fn fibonacci_neg_disjoint_converges() {
        let fib = FactorIndex::build(&fibonacci_word(100_000)).unwrap();
        let f = neg_disjoint(&w("ab")).unwrap();
        let scales: Vec<usize> = (4..=12).map(|k| 1 << k).collect();
        let report = subadditive_limit_report(&f, &fib, &scales, 0.02).unwrap();
        report.validate().unwrap();
        assert!(report.verdicts[0].pass, "{:?}", report.verdicts[0]);
    }

    #[test]
    fn block_doubling_prefix_series_oscillates() {
        let index = FactorIndex::build(&block_doubling_word(1 << 17).unwrap()).unwrap();
        let zero = index.sample().alphabet().parse("0").unwrap();
        let f = neg_disjoint(&zero).unwrap();
        let scales: Vec<usize> = (6..=16).map(|k| 1 << k).collect();
        let report = subadditive_prefix_series(&f, &index, &scales).unwrap();
        let prefix_values: Vec<f64> = report.series.iter().map(|r| r.estimate[0]).collect();
        let spread = prefix_values.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
            - prefix_values.iter().cloned().fold(f64::INFINITY, f64::min);
        assert!(spread >= 0.25, "spread {spread} of {prefix_values:?}");
    }

    #[test]
    fn quasiweight_on_periodic_sample() {
        let index = FactorIndex::build(&w("ab").repeat(128)).unwrap();
        let nu = quasiweight_estimate(&index, &w("ab"), 40).unwrap();
        assert!(nu >= 0.95, "{nu}");
        // absent pattern
        let nu = quasiweight_estimate(&index, &w("aa"), 40).unwrap();
        assert_eq!(nu, 0.0);
    }

    #[test]
    fn quasiweight_of_letter_tracks_frequency() {
        let index = FactorIndex::build(&fibonacci_word(100_000)).unwrap();
        let nu = quasiweight_estimate(&index, &w("a"), 10_000).unwrap();
        let freq = index.count(&w("a")).unwrap() as f64 / index.len() as f64;
        assert!((nu - freq).abs() < 2e-2, "nu {nu} freq {freq}");
    }

    #[test]
    fn quasiweight_guards() {
        let index = FactorIndex::build(&w("ab").repeat(16)).unwrap();
        assert!(quasiweight_estimate(&index, &w("ab"), 7).is_err());
        assert!(quasiweight_estimate(&index, &w("ab"), 1000).is_err());
        assert!(quasiweight_estimate_with_stride(&index, &w("ab"), 8, 0).is_err());
    }

    #[test]
    fn stride_one_never_exceeds_strided() {
        let index = FactorIndex::build(&fibonacci_word(4096)).unwrap();
        for v in [w("a"), w("ab"), w("aba")] {
            let coarse = quasiweight_estimate(&index, &v, 256).unwrap();
            let fine = quasiweight_estimate_with_stride(&index, &v, 256, 1).unwrap();
            assert!(fine <= coarse + 1e-12, "{v}: fine {fine} coarse {coarse}");
        }
    }
}
