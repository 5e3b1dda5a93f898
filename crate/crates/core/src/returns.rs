//! Return words, u-partitions, and the per-length return statistics
//! (minimal return length, highest observed power, return-length ratio).
//!
//! A return word of `u` is the block between two consecutive occurrences of
//! `u`, starting at the first: `z` qualifies iff `z·u` occurs, `u` is a
//! prefix of `z·u`, and `u` occurs exactly twice in `z·u`. On a one-sided
//! finite sample the blocks before the first occurrence and after the last
//! are truncated edges and are never emitted.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::{FactorIndex, FactorPositions};
use crate::word::{self, check_same_alphabet, Word};

/// The set of return words of one base word, as observed in a sample.
#[derive(Clone, Debug)]
pub struct ReturnWordSet {
    base: Word,
    /// Lexicographically sorted, deduplicated.
    words: Vec<Word>,
    /// Heuristic: true when the recurrence estimate at `|base|` certifies
    /// that every long-enough window shows every factor, so the observed set
    /// is plausibly complete. A finite sample can never prove completeness.
    pub complete_within_sample: bool,
}

impl ReturnWordSet {
    pub fn base(&self) -> &Word {
        &self.base
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn contains(&self, z: &Word) -> bool {
        self.words.binary_search(z).is_ok()
    }

    pub fn shortest_len(&self) -> usize {
        self.words.iter().map(Word::len).min().unwrap_or(0)
    }
}

/// Blocks between consecutive occurrences of `u` in the sample.
pub fn return_words(index: &FactorIndex, u: &Word) -> Result<ReturnWordSet> {
    let occ = index.occurrence_positions(u)?;
    if occ.count() < 2 {
        return Err(Error::InsufficientOccurrences {
            word: u.text(),
            found: occ.count(),
            needed: 2,
        });
    }
    let sample = index.sample();
    let words: BTreeSet<Word> = occ
        .positions
        .windows(2)
        .map(|pair| sample.slice(pair[0], pair[1]))
        .collect();
    let complete_within_sample = u.len() <= index.len() / 4
        && index
            .recurrence_estimate(u.len())
            .map(|p| p.valid)
            .unwrap_or(false);
    Ok(ReturnWordSet {
        base: u.clone(),
        words: words.into_iter().collect(),
        complete_within_sample,
    })
}

/// The unique decomposition `host = prefix · u_1 ... u_l · suffix` aligned on
/// the occurrences of `u`: block `j < l` spans consecutive occurrence starts,
/// the last block is the final copy of `u` itself. With no occurrence the
/// whole host is the prefix and the suffix is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPartition {
    pub host: Word,
    pub base: Word,
    pub prefix: Word,
    pub blocks: Vec<Word>,
    pub suffix: Word,
}

impl UPartition {
    /// Number of blocks, which equals the occurrence count of the base.
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// The blocks that are return words of the base: all but the last.
    pub fn return_blocks(&self) -> &[Word] {
        if self.blocks.is_empty() {
            &[]
        } else {
            &self.blocks[..self.blocks.len() - 1]
        }
    }

    /// Concatenate prefix, blocks, and suffix back together.
    pub fn reassemble(&self) -> Word {
        let mut out = self.prefix.clone();
        for b in &self.blocks {
            out = out.concat(b).expect("partition parts share an alphabet");
        }
        out.concat(&self.suffix).expect("partition parts share an alphabet")
    }
}

pub fn u_partition(host: &Word, u: &Word) -> Result<UPartition> {
    check_same_alphabet(host, u)?;
    if u.is_empty() {
        return Err(Error::EmptyPattern { operation: "u_partition" });
    }
    let positions = word::scan_positions(u.ids(), host.ids());
    if positions.is_empty() {
        return Ok(UPartition {
            host: host.clone(),
            base: u.clone(),
            prefix: host.clone(),
            blocks: Vec::new(),
            suffix: host.alphabet().empty_word(),
        });
    }
    let l = positions.len();
    let mut blocks = Vec::with_capacity(l);
    for j in 0..l - 1 {
        blocks.push(host.slice(positions[j], positions[j + 1]));
    }
    let last = positions[l - 1];
    blocks.push(host.slice(last, last + u.len()));
    Ok(UPartition {
        host: host.clone(),
        base: u.clone(),
        prefix: host.slice(0, positions[0]),
        blocks,
        suffix: host.slice(last + u.len(), host.len()),
    })
}

/// Number of return-word blocks of the u-partition of `w` equal to `z`.
///
/// Only the blocks `u_1..u_{l-1}` are counted: the terminal block is the
/// final copy of `u` itself, whose occurrence of `u` is not followed by
/// another one. Counted this way the value equals the occurrence count of
/// `z·u` in `w` exactly, for every return word `z` including `z = u`.
pub fn return_block_count(z: &Word, u: &Word, w: &Word) -> Result<usize> {
    check_same_alphabet(z, u)?;
    if z.is_empty() {
        return Err(Error::EmptyPattern { operation: "return_block_count" });
    }
    let partition = u_partition(w, u)?;
    Ok(partition.return_blocks().iter().filter(|b| *b == z).count())
}

/// Check `return_block_count(z, u, w) == count_occurrences(z·u, w)` for a
/// return word `z` of `u` and a factor `w` of the sample. The identity is
/// asserted by evaluation of both sides, never assumed.
pub fn verify_block_identity(
    index: &FactorIndex,
    z: &Word,
    u: &Word,
    w: &Word,
) -> Result<bool> {
    let observed = return_words(index, u)?;
    if !observed.contains(z) {
        return Err(Error::InvalidInput(format!(
            "`{z}` is not an observed return word of `{u}`"
        )));
    }
    if index.count(w)? == 0 {
        return Err(Error::InvalidInput(format!("`{w}` is not a factor of the sample")));
    }
    let lhs = return_block_count(z, u, w)?;
    let rhs = word::count_occurrences(&z.concat(u)?, w)?;
    Ok(lhs == rhs)
}

/// Return statistics for all factor lengths up to `n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReturnStats {
    pub n: usize,
    /// Minimal observed return-word length over all length-`n` factors.
    pub m_n: usize,
    /// Smallest ratio bound: every observed return word of every factor `v`
    /// with `|v| <= n` (including the power bases met while computing
    /// `n_est`) has length at least `|v| / kappa_est`.
    pub kappa_est: f64,
    /// Maximum observed power exponent over primitive factors of length
    /// `<= n`.
    pub n_est: usize,
    /// Length of the longest observed power of a primitive factor,
    /// `n_est_exponent * |base|` at the maximizing base; a span covering
    /// half the sample signals a periodic sample.
    pub max_power_span: usize,
}

/// Minimal observed return-word length over all length-`n` factors: the
/// smallest gap between consecutive occurrences of any length-`n` factor.
/// Errors if some length-`n` factor occurs only once.
pub fn min_return_length(index: &FactorIndex, n: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::EmptyPattern { operation: "min_return_length" });
    }
    if n > index.len() {
        return Err(Error::SampleTooShort {
            needed: n,
            have: index.len(),
            context: "min_return_length",
        });
    }
    min_gap_of(index, n, &index.positions_by_factor(n))
}

fn min_gap_of(index: &FactorIndex, n: usize, by_factor: &FactorPositions) -> Result<usize> {
    let mut min_gap = usize::MAX;
    for id in 0..by_factor.factor_count() {
        let positions = by_factor.positions_of(id);
        if positions.len() < 2 {
            let p = positions[0] as usize;
            return Err(Error::InsufficientSample {
                factor: index.sample().slice(p, p + n).text(),
                n,
            });
        }
        for pair in positions.windows(2) {
            min_gap = min_gap.min((pair[1] - pair[0]) as usize);
        }
    }
    Ok(min_gap)
}

/// `m(n)` together with the ratio and power statistics accumulated over all
/// lengths up to `n`.
pub fn return_stats(index: &FactorIndex, n: usize) -> Result<ReturnStats> {
    if n == 0 {
        return Err(Error::EmptyPattern { operation: "return_stats" });
    }
    let mut m_n = 0usize;
    let mut kappa = 0f64;
    let mut n_est = 0usize;
    let mut max_power_span = 0usize;
    for m in 1..=n {
        let by_factor = index.positions_by_factor(m);
        let m_m = min_gap_of(index, m, &by_factor)?;
        if m == n {
            m_n = m_m;
        }
        kappa = kappa.max(m as f64 / m_m as f64);
        let (exponent, span) = highest_power_at(index, m, &by_factor);
        if exponent > n_est {
            n_est = exponent;
        }
        max_power_span = max_power_span.max(span);
    }
    // a power v^k makes v an observed return word of v^(k-1), so the ratio
    // bound must cover the exponent even when |v^(k-1)| exceeds n
    kappa = kappa.max(n_est.saturating_sub(1) as f64);
    Ok(ReturnStats { n, m_n, kappa_est: kappa, n_est, max_power_span })
}

/// Highest observed power exponent over primitive length-`m` factors, and
/// the sample span `exponent * m` of the maximizing power.
fn highest_power_at(index: &FactorIndex, m: usize, by_factor: &FactorPositions) -> (usize, usize) {
    let sample = index.sample();
    let mut best = 0usize;
    for id in 0..by_factor.factor_count() {
        let positions = by_factor.positions_of(id);
        let run = longest_arithmetic_run(positions, m as u32);
        if run <= best {
            continue;
        }
        let p = positions[0] as usize;
        let factor = sample.slice(p, p + m);
        // v = u^j imprimitive: its runs show up as longer runs of the
        // primitive root u at length |u|; only primitive bases count here
        if word::is_primitive(&factor).expect("factor is nonempty") {
            best = run;
        }
    }
    (best, best * m)
}

/// Longest run `p, p+step, p+2·step, ...` inside a sorted position list.
fn longest_arithmetic_run(positions: &[u32], step: u32) -> usize {
    let mut chain = vec![1u32; positions.len()];
    let mut best = 0u32;
    for i in (0..positions.len()).rev() {
        if let Ok(j) = positions.binary_search(&(positions[i] + step)) {
            chain[i] = chain[j] + 1;
        }
        best = best.max(chain[i]);
    }
    best as usize
}
