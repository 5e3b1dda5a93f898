//! Convergence estimators for additive functions and cylinder observables:
//! prefix averages with per-scale oscillation over factors, the return-word
//! hierarchical estimator, Birkhoff window averages over many starts, and
//! the agreement defect between Birkhoff sums over two occurrences of the
//! same factor.

use crate::error::{Error, Result};
use crate::index::FactorIndex;
use crate::returns::return_words;
use crate::word::Word;

use super::functions::{AdditiveFunction, AdditiveKind, CylinderFunction};
use super::report::{check_scales, ErgodicReport};

/// For each scale `n`: the estimate `F(prefix_n)/n` and the oscillation
/// `max - min` of `F(v)/|v|` over all distinct length-`n` factors of the
/// sample (max-norm for vector values). A shrinking oscillation is the
/// uniform-convergence witness; prefix averages alone cannot distinguish
/// convergence along one orbit from uniform convergence.
pub fn prefix_average_series(
    f: &AdditiveFunction,
    index: &FactorIndex,
    scales: &[usize],
) -> Result<ErgodicReport> {
    check_scales(scales, index.len())?;
    let mut report = ErgodicReport::new(f.name());
    match &f.kind {
        AdditiveKind::OccurrenceCounts(patterns) => {
            let position_lists: Vec<Vec<usize>> = patterns
                .iter()
                .map(|v| index.occurrence_positions(v).map(|o| o.positions))
                .collect::<Result<_>>()?;
            // prefix counts advance monotonically over ascending scales
            let mut cursors = vec![0usize; patterns.len()];
            for &n in scales {
                let mut estimate = Vec::with_capacity(patterns.len());
                for (i, v) in patterns.iter().enumerate() {
                    let positions = &position_lists[i];
                    while cursors[i] < positions.len() && positions[cursors[i]] + v.len() <= n {
                        cursors[i] += 1;
                    }
                    estimate.push(cursors[i] as f64 / n as f64);
                }
                let mut oscillation = 0f64;
                for (i, v) in patterns.iter().enumerate() {
                    let (lo, hi) = window_count_spread(&position_lists[i], v.len(), n, index.len());
                    oscillation = oscillation.max((hi - lo) as f64 / n as f64);
                }
                report.push_row(n, estimate, oscillation);
            }
        }
        AdditiveKind::Custom(_) => {
            for &n in scales {
                let prefix = index.sample().slice(0, n);
                let estimate: Vec<f64> = f.eval(&prefix).iter().map(|x| x / n as f64).collect();
                let mut lo = vec![f64::INFINITY; f.dim()];
                let mut hi = vec![f64::NEG_INFINITY; f.dim()];
                for factor in index.enumerate_factors(n)? {
                    for (i, x) in f.eval(&factor).iter().enumerate() {
                        let y = x / n as f64;
                        lo[i] = lo[i].min(y);
                        hi[i] = hi[i].max(y);
                    }
                }
                let oscillation = hi
                    .iter()
                    .zip(&lo)
                    .map(|(h, l)| h - l)
                    .fold(0f64, f64::max)
                    .max(0.0);
                report.push_row(n, estimate, oscillation);
            }
        }
    }
    Ok(report)
}

/// Min and max of the occurrence count of a pattern (with `plen` symbols and
/// the given sorted positions) over every length-`n` window of the sample.
fn window_count_spread(positions: &[usize], plen: usize, n: usize, len: usize) -> (usize, usize) {
    if n > len {
        return (0, 0);
    }
    if n < plen {
        return (0, 0);
    }
    let span = n - plen; // window at w admits positions in [w, w + span]
    let (mut lo, mut hi) = (0usize, 0usize);
    while hi < positions.len() && positions[hi] <= span {
        hi += 1;
    }
    let (mut min_c, mut max_c) = (hi - lo, hi - lo);
    for w in 1..=len - n {
        while lo < positions.len() && positions[lo] < w {
            lo += 1;
        }
        while hi < positions.len() && positions[hi] <= w + span {
            hi += 1;
        }
        min_c = min_c.min(hi - lo);
        max_c = max_c.max(hi - lo);
    }
    (min_c, max_c)
}

/// The hierarchical estimate through the return words of `base`, with the
/// estimated density weight of each return word.
#[derive(Clone, Debug, PartialEq)]
pub struct HierarchicalEstimate {
    pub estimate: Vec<f64>,
    /// `(return word, weight)` in lexicographic order of the return words.
    pub weights: Vec<(Word, f64)>,
}

impl HierarchicalEstimate {
    /// Weights of the return-word blocks tile the sample up to edges, so
    /// this sum should sit near 1 on a well-sampled system.
    pub fn weight_sum(&self) -> f64 {
        self.weights.iter().map(|(_, nu)| nu).sum()
    }
}

/// Estimate the limit of `F(w)/|w|` from the return words `y_j` of `base`:
/// each weight is `(#occurrences of y_j·base / sample length) · |y_j|` and
/// the estimate is `sum_j weight_j · F(y_j)/|y_j|`.
pub fn hierarchical_estimate(
    f: &AdditiveFunction,
    index: &FactorIndex,
    base: &Word,
) -> Result<HierarchicalEstimate> {
    let set = return_words(index, base)?;
    let mut estimate = vec![0f64; f.dim()];
    let mut weights = Vec::with_capacity(set.words().len());
    for y in set.words() {
        let marker = y.concat(base)?;
        let nu = index.count(&marker)? as f64 * y.len() as f64 / index.len() as f64;
        for (acc, x) in estimate.iter_mut().zip(f.eval(y)) {
            *acc += nu * x / y.len() as f64;
        }
        weights.push((y.clone(), nu));
    }
    Ok(HierarchicalEstimate { estimate, weights })
}

/// Birkhoff averages of a cylinder observable along the sample: for each
/// scale `n` and each start `s`, the mean of `f` over the `n` windows with
/// left edges `s..s+n`. The reported estimate is the coordinate-wise mean
/// over starts; the oscillation is the max-norm spread over starts, the
/// uniformity witness.
pub fn birkhoff_series(
    f: &CylinderFunction,
    sample: &Word,
    scales: &[usize],
    starts: &[usize],
) -> Result<ErgodicReport> {
    check_scales(scales, sample.len())?;
    if starts.is_empty() {
        return Err(Error::InvalidInput("starts list is empty".into()));
    }
    let width = 2 * f.radius() + 1;
    let max_scale = *scales.last().expect("nonempty");
    for &s in starts {
        if s + max_scale + 2 * f.radius() > sample.len() {
            return Err(Error::InvalidInput(format!(
                "start {s} plus scale {max_scale} plus window radius overruns the sample"
            )));
        }
    }
    let ids = sample.ids();
    let mut report = ErgodicReport::new(f.name());
    // running sums per start extend across ascending scales
    let mut sums = vec![vec![0f64; f.dim()]; starts.len()];
    let mut done = 0usize;
    for &n in scales {
        for (start_i, &s) in starts.iter().enumerate() {
            for j in done..n {
                let p = s + j;
                let value = f.eval_ids(&ids[p..p + width])?;
                for (acc, x) in sums[start_i].iter_mut().zip(value) {
                    *acc += x;
                }
            }
        }
        done = n;
        let mut mean = vec![0f64; f.dim()];
        let mut lo = vec![f64::INFINITY; f.dim()];
        let mut hi = vec![f64::NEG_INFINITY; f.dim()];
        for sum in &sums {
            for i in 0..f.dim() {
                let avg = sum[i] / n as f64;
                mean[i] += avg / starts.len() as f64;
                lo[i] = lo[i].min(avg);
                hi[i] = hi[i].max(avg);
            }
        }
        let oscillation = hi.iter().zip(&lo).map(|(h, l)| h - l).fold(0f64, f64::max);
        report.push_row(n, mean, oscillation);
    }
    Ok(report)
}

/// Raw disagreement between Birkhoff sums over two occurrences of the same
/// factor, against the boundary bound `4·‖f‖∞·k`.
#[derive(Clone, Debug, PartialEq)]
pub struct AgreementDefect {
    /// Max over occurrence pairs of the max-norm difference of the sums.
    pub defect: f64,
    /// `4·‖f‖∞·k`: only the `2k` boundary windows of an occurrence can
    /// differ, each by at most `2·‖f‖∞`.
    pub bound: f64,
    pub occurrences_compared: usize,
}

/// Compare the sums `S_p = sum_{j<|w|} f(window centered at p+j)` across all
/// occurrences `p` of `w` whose windows stay inside the sample. For radius 0
/// the sums depend only on `w`, so the defect is exactly zero.
pub fn window_agreement_defect(
    f: &CylinderFunction,
    index: &FactorIndex,
    w: &Word,
) -> Result<AgreementDefect> {
    let k = f.radius();
    if w.len() <= 2 * k {
        return Err(Error::InvalidInput(format!(
            "factor `{w}` of length {} is no longer than the window diameter 2k = {}",
            w.len(),
            2 * k
        )));
    }
    let occ = index.occurrence_positions(w)?;
    let len = index.len();
    let usable: Vec<usize> = occ
        .positions
        .iter()
        .copied()
        .filter(|&p| p >= k && p + w.len() + k <= len)
        .collect();
    if usable.len() < 2 {
        return Err(Error::InsufficientOccurrences {
            word: w.text(),
            found: usable.len(),
            needed: 2,
        });
    }
    let ids = index.sample().ids();
    let width = 2 * k + 1;
    let mut lo = vec![f64::INFINITY; f.dim()];
    let mut hi = vec![f64::NEG_INFINITY; f.dim()];
    for &p in &usable {
        let mut sum = vec![0f64; f.dim()];
        for j in 0..w.len() {
            let left = p + j - k;
            let value = f.eval_ids(&ids[left..left + width])?;
            for (acc, x) in sum.iter_mut().zip(value) {
                *acc += x;
            }
        }
        for i in 0..f.dim() {
            lo[i] = lo[i].min(sum[i]);
            hi[i] = hi[i].max(sum[i]);
        }
    }
    let defect = hi.iter().zip(&lo).map(|(h, l)| h - l).fold(0f64, f64::max);
    Ok(AgreementDefect {
        defect,
        bound: 4.0 * f.sup_norm() * k as f64,
        occurrences_compared: usable.len(),
    })
}
