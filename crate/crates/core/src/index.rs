//! Immutable substring-statistics index over one long sample word.
//!
//! Backed by a suffix array (doubling construction with counting sort,
//! `O(n log n)`) plus the Kasai LCP array. Queries cost `O(|v| log n)` or
//! `O(n)` passes, never a fresh scan per pattern, so million-symbol samples
//! stay interactive. The index answers exactly the same questions as the
//! naive scans in [`crate::word`]; the test suites hold the two sides equal.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::word::{self, check_same_alphabet, OccurrenceList, Word};

/// Substring statistics for one sample word. Immutable after construction;
/// concurrent queries are safe.
pub struct FactorIndex {
    sample: Word,
    sa: Vec<u32>,
    lcp: Vec<u32>,
}

/// Recurrence bound estimate at one factor length: the smallest window
/// length `r_est` such that every window of that length fully inside the
/// sample contains every distinct length-`n` factor of the sample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceProfile {
    pub n: usize,
    pub r_est: usize,
    /// False when even the full sample fails the coverage check.
    pub valid: bool,
}

impl FactorIndex {
    /// Build the index. Construction is `O(n log n)`; the sample must be
    /// nonempty.
    pub fn build(sample: &Word) -> Result<Self> {
        if sample.is_empty() {
            return Err(Error::EmptyWord { operation: "build_index" });
        }
        let sa = suffix_array(sample.ids());
        let lcp = lcp_array(sample.ids(), &sa);
        Ok(FactorIndex { sample: sample.clone(), sa, lcp })
    }

    pub fn sample(&self) -> &Word {
        &self.sample
    }

    pub fn len(&self) -> usize {
        self.sample.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn check_pattern(&self, v: &Word) -> Result<()> {
        check_same_alphabet(v, &self.sample)?;
        if v.is_empty() {
            return Err(Error::EmptyPattern { operation: "index query" });
        }
        Ok(())
    }

    /// Suffix-array range `[lo, hi)` of suffixes starting with `v`.
    fn sa_range(&self, v: &[u8]) -> (usize, usize) {
        let s = self.sample.ids();
        let lo = partition_point(&self.sa, |p| compare_suffix(s, p as usize, v) == Ordering::Less);
        let hi = lo
            + partition_point(&self.sa[lo..], |p| {
                let suf = &s[p as usize..];
                suf.len() >= v.len() && &suf[..v.len()] == v
            });
        (lo, hi)
    }

    /// Exact number of (overlapping) occurrences of `v` in the sample.
    pub fn count(&self, v: &Word) -> Result<usize> {
        self.check_pattern(v)?;
        let (lo, hi) = self.sa_range(v.ids());
        Ok(hi - lo)
    }

    /// Sorted start positions of all occurrences of `v`.
    pub fn occurrence_positions(&self, v: &Word) -> Result<OccurrenceList> {
        self.check_pattern(v)?;
        let (lo, hi) = self.sa_range(v.ids());
        let mut positions: Vec<usize> = self.sa[lo..hi].iter().map(|&p| p as usize).collect();
        positions.sort_unstable();
        Ok(OccurrenceList { pattern: v.clone(), positions })
    }

    /// Distinct length-`n` factors in lexicographic order.
    pub fn enumerate_factors(&self, n: usize) -> Result<FactorIter<'_>> {
        if n == 0 {
            return Err(Error::EmptyPattern { operation: "enumerate_factors" });
        }
        Ok(FactorIter { index: self, n, at: 0, run_lcp: u32::MAX })
    }

    /// Number of distinct length-`n` factors without materializing them.
    pub fn distinct_factor_count_at(&self, n: usize) -> usize {
        if n == 0 || n > self.len() {
            return 0;
        }
        let mut total = 0usize;
        let mut run_lcp = u32::MAX;
        for i in 0..self.len() {
            run_lcp = run_lcp.min(self.lcp[i]);
            if self.len() - self.sa[i] as usize >= n {
                if run_lcp < n as u32 {
                    total += 1;
                }
                run_lcp = u32::MAX;
            }
        }
        total
    }

    /// Total number of distinct nonempty factors of the sample.
    pub fn distinct_factor_count(&self) -> u64 {
        let n = self.len() as u64;
        (0..self.len())
            .map(|i| n - self.sa[i] as u64 - self.lcp[i] as u64)
            .sum()
    }

    /// For every start position of a length-`n` window, the id of its factor
    /// (ids are 0-based in lexicographic order). Returns `(ids, id_count)`.
    /// `ids[p]` identifies `sample[p..p+n)`.
    pub(crate) fn factor_ids(&self, n: usize) -> (Vec<u32>, u32) {
        assert!(n >= 1 && n <= self.len());
        let windows = self.len() - n + 1;
        let mut ids = vec![0u32; windows];
        let mut next_id = 0u32;
        let mut run_lcp = u32::MAX;
        for i in 0..self.len() {
            run_lcp = run_lcp.min(self.lcp[i]);
            let p = self.sa[i] as usize;
            if self.len() - p >= n {
                if run_lcp < n as u32 {
                    next_id += 1;
                }
                ids[p] = next_id - 1;
                run_lcp = u32::MAX;
            }
        }
        (ids, next_id)
    }

    /// Occurrence positions of every distinct length-`n` factor in one pass:
    /// CSR layout `(starts, positions)` indexed by factor id, positions
    /// ascending within each factor. Also returns one sample position per
    /// factor id for materializing the factor itself.
    pub(crate) fn positions_by_factor(&self, n: usize) -> FactorPositions {
        let (ids, id_count) = self.factor_ids(n);
        let mut starts = vec![0u32; id_count as usize + 1];
        for &id in &ids {
            starts[id as usize + 1] += 1;
        }
        for i in 0..id_count as usize {
            starts[i + 1] += starts[i];
        }
        let mut fill = starts.clone();
        let mut positions = vec![0u32; ids.len()];
        for (p, &id) in ids.iter().enumerate() {
            positions[fill[id as usize] as usize] = p as u32;
            fill[id as usize] += 1;
        }
        FactorPositions { n, starts, positions }
    }

    /// Largest `k >= 0` with `v^k` a factor of the sample. `v` must be
    /// primitive (powers of imprimitive words double-count exponents).
    pub fn max_power(&self, v: &Word) -> Result<usize> {
        self.check_pattern(v)?;
        if !word::is_primitive(v)? {
            return Err(Error::NotPrimitive { word: v.text() });
        }
        let occ = self.occurrence_positions(v)?;
        if occ.positions.is_empty() {
            return Ok(0);
        }
        // v^k at p means occurrences of v at p, p+|v|, ..., p+(k-1)|v|:
        // longest arithmetic run with step |v| over the sorted positions.
        let step = v.len();
        let mut chain = vec![1u32; occ.positions.len()];
        let mut best = 1u32;
        for i in (0..occ.positions.len()).rev() {
            let target = occ.positions[i] + step;
            if let Ok(j) = occ.positions.binary_search(&target) {
                chain[i] = chain[j] + 1;
                best = best.max(chain[i]);
            }
        }
        Ok(best as usize)
    }

    /// Minimal window length whose every placement inside the sample covers
    /// all length-`n` factors. Requires `n <= |sample|/4` so the estimate is
    /// meaningful; binary search over the window length with sliding-window
    /// coverage counting.
    pub fn recurrence_estimate(&self, n: usize) -> Result<RecurrenceProfile> {
        if n == 0 {
            return Err(Error::EmptyPattern { operation: "recurrence_estimate" });
        }
        if n > self.len() / 4 {
            return Err(Error::SampleTooShort {
                needed: 4 * n,
                have: self.len(),
                context: "recurrence_estimate",
            });
        }
        let (ids, id_count) = self.factor_ids(n);
        // covered(window length L): every window of L consecutive sample
        // symbols fully inside the sample holds all id_count factors.
        let covered = |len_l: usize| -> bool {
            // windows [w, w+L) for w in 0..=len-L contain factor starts
            // [w, w + L - n]
            let span = len_l - n + 1; // number of factor starts per window
            let mut counts = vec![0u32; id_count as usize];
            let mut distinct = 0u32;
            for (i, &id) in ids.iter().enumerate() {
                if counts[id as usize] == 0 {
                    distinct += 1;
                }
                counts[id as usize] += 1;
                if i + 1 >= span {
                    if distinct < id_count {
                        return false;
                    }
                    let out = ids[i + 1 - span] as usize;
                    counts[out] -= 1;
                    if counts[out] == 0 {
                        distinct -= 1;
                    }
                }
            }
            true
        };
        if !covered(self.len()) {
            return Ok(RecurrenceProfile { n, r_est: self.len(), valid: false });
        }
        let (mut lo, mut hi) = (n, self.len()); // hi always covered
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if covered(mid) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        Ok(RecurrenceProfile { n, r_est: lo, valid: true })
    }
}

/// CSR occurrence positions for all distinct factors of one length.
pub(crate) struct FactorPositions {
    pub n: usize,
    pub starts: Vec<u32>,
    pub positions: Vec<u32>,
}

impl FactorPositions {
    pub fn factor_count(&self) -> usize {
        self.starts.len() - 1
    }

    pub fn positions_of(&self, id: usize) -> &[u32] {
        &self.positions[self.starts[id] as usize..self.starts[id + 1] as usize]
    }
}

/// Iterator over distinct length-`n` factors in lexicographic order.
pub struct FactorIter<'a> {
    index: &'a FactorIndex,
    n: usize,
    at: usize,
    run_lcp: u32,
}

impl Iterator for FactorIter<'_> {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let len = self.index.len();
        while self.at < len {
            let i = self.at;
            self.at += 1;
            self.run_lcp = self.run_lcp.min(self.index.lcp[i]);
            let p = self.index.sa[i] as usize;
            if len - p >= self.n {
                let fresh = self.run_lcp < self.n as u32;
                self.run_lcp = u32::MAX;
                if fresh {
                    return Some(self.index.sample.slice(p, p + self.n));
                }
            }
        }
        None
    }
}

/// Lexicographic comparison of `s[p..]` against `v` as full strings.
fn compare_suffix(s: &[u8], p: usize, v: &[u8]) -> Ordering {
    let suf = &s[p..];
    let common = suf.len().min(v.len());
    match suf[..common].cmp(&v[..common]) {
        Ordering::Equal => suf.len().cmp(&v.len()).min(Ordering::Equal),
        other => other,
    }
}

fn partition_point(slice: &[u32], mut pred: impl FnMut(u32) -> bool) -> usize {
    let (mut lo, mut hi) = (0usize, slice.len());
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if pred(slice[mid]) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Suffix array by prefix doubling with counting sort: `O(n log n)`.
fn suffix_array(s: &[u8]) -> Vec<u32> {
    let n = s.len();
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![0];
    }
    // ranks start at 1; 0 is the virtual rank of "past the end"
    let mut rank: Vec<u32> = s.iter().map(|&c| c as u32 + 1).collect();
    let mut next_rank = vec![0u32; n];
    let mut sa: Vec<u32> = (0..n as u32).collect();
    let mut scratch: Vec<u32> = Vec::with_capacity(n);
    let mut counts = vec![0u32; n.max(256) + 2];

    // stable counting sort of `keys_of` over `input`, into `output`
    fn counting_sort(input: &[u32], rank: &[u32], output: &mut [u32], counts: &mut [u32]) {
        counts.fill(0);
        for &p in input {
            counts[rank[p as usize] as usize + 1] += 1;
        }
        for i in 1..counts.len() {
            counts[i] += counts[i - 1];
        }
        for &p in input {
            let r = rank[p as usize] as usize;
            output[counts[r] as usize] = p;
            counts[r] += 1;
        }
    }

    counting_sort(&sa.clone(), &rank, &mut sa, &mut counts);
    let mut k = 1usize;
    loop {
        // order by second key (rank at p+k, absent = smallest): suffixes with
        // p+k >= n first, then previous sa order shifted left by k
        scratch.clear();
        scratch.extend((n - k..n).map(|p| p as u32));
        scratch.extend(sa.iter().filter(|&&p| p as usize >= k).map(|&p| p - k as u32));
        // stable sort by first key
        counting_sort(&scratch, &rank, &mut sa, &mut counts);

        // re-rank
        let key = |p: usize| -> (u32, u32) {
            let second = if p + k < n { rank[p + k] } else { 0 };
            (rank[p], second)
        };
        next_rank[sa[0] as usize] = 1;
        for i in 1..n {
            let bump = key(sa[i] as usize) != key(sa[i - 1] as usize);
            next_rank[sa[i] as usize] = next_rank[sa[i - 1] as usize] + bump as u32;
        }
        std::mem::swap(&mut rank, &mut next_rank);
        if rank[sa[n - 1] as usize] as usize == n {
            break;
        }
        k *= 2;
    }
    sa
}

/// Kasai LCP: `lcp[i]` is the longest common prefix of the suffixes at
/// `sa[i-1]` and `sa[i]`; `lcp[0] = 0`.
fn lcp_array(s: &[u8], sa: &[u32]) -> Vec<u32> {
    let n = s.len();
    let mut rank = vec![0u32; n];
    for (i, &p) in sa.iter().enumerate() {
        rank[p as usize] = i as u32;
    }
    let mut lcp = vec![0u32; n];
    let mut h = 0usize;
    for i in 0..n {
        let r = rank[i] as usize;
        if r == 0 {
            h = 0;
            continue;
        }
        let j = sa[r - 1] as usize;
        while i + h < n && j + h < n && s[i + h] == s[j + h] {
            h += 1;
        }
        lcp[r] = h as u32;
        h = h.saturating_sub(1);
    }
    lcp
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{count_occurrences, factors, occurrence_positions_naive, Alphabet};
    use proptest::prelude::*;

    fn w(text: &str) -> Word {
        Alphabet::of_chars("ab").unwrap().parse(text).unwrap()
    }

    fn idx(text: &str) -> FactorIndex {
        FactorIndex::build(&w(text)).unwrap()
    }

    #[test]
    fn suffix_array_small() {
        // "abaab": suffixes aab(2) ab(3) abaab(0) b(4) baab(1)
        assert_eq!(suffix_array(&[0, 1, 0, 0, 1]), vec![2, 3, 0, 4, 1]);
        assert_eq!(suffix_array(&[0]), vec![0]);
        assert_eq!(suffix_array(&[0, 0, 0]), vec![2, 1, 0]);
    }

    #[test]
    fn distinct_factor_totals() {
        assert_eq!(idx("abaab").distinct_factor_count(), 11);
        assert_eq!(idx("a").distinct_factor_count(), 1);
        let aaaa = idx("aaaa");
        assert_eq!(aaaa.distinct_factor_count(), 4);
        let fs: Vec<Word> = (1..=4).flat_map(|n| aaaa.enumerate_factors(n).unwrap()).collect();
        assert_eq!(fs, vec![w("a"), w("aa"), w("aaa"), w("aaaa")]);
    }

    #[test]
    fn counts_match_examples() {
        let i = idx("abaab");
        assert_eq!(i.count(&w("ab")).unwrap(), 2);
        assert_eq!(i.count(&w("abaab")).unwrap(), 1);
        assert_eq!(i.count(&w("bb")).unwrap(), 0);
    }

    #[test]
    fn positions_match_examples() {
        let i = idx("abaababa");
        assert_eq!(i.occurrence_positions(&w("ab")).unwrap().positions, vec![0, 3, 5]);
        let aaa = idx("aaa");
        assert_eq!(aaa.occurrence_positions(&w("aa")).unwrap().positions, vec![0, 1]);
        let abc = Alphabet::of_chars("abcd").unwrap();
        let i3 = FactorIndex::build(&abc.parse("abc").unwrap()).unwrap();
        assert!(i3.occurrence_positions(&abc.parse("d").unwrap()).unwrap().positions.is_empty());
    }

    #[test]
    fn factor_enumeration_is_lexicographic() {
        let i = idx("abab");
        let got: Vec<Word> = i.enumerate_factors(2).unwrap().collect();
        assert_eq!(got, vec![w("ab"), w("ba")]);
        let aaaa = idx("aaaa");
        let got3: Vec<Word> = aaaa.enumerate_factors(3).unwrap().collect();
        assert_eq!(got3, vec![w("aaa")]);
        assert_eq!(idx("ab").enumerate_factors(3).unwrap().count(), 0);
    }

    #[test]
    fn max_power_examples() {
        assert_eq!(idx("aaaa").max_power(&w("a")).unwrap(), 4);
        let abc = Alphabet::of_chars("abc").unwrap();
        let i = FactorIndex::build(&abc.parse("abcabc").unwrap()).unwrap();
        assert_eq!(i.max_power(&abc.parse("abc").unwrap()).unwrap(), 2);
        assert_eq!(idx("bbbb").max_power(&w("a")).unwrap(), 0);
        assert!(matches!(
            idx("abab").max_power(&w("abab")),
            Err(Error::NotPrimitive { .. })
        ));
    }

    #[test]
    fn max_power_consistency() {
        for text in ["abaababaabaab", "aaaa", "abababab", "abba"] {
            let i = idx(text);
            for v in [w("a"), w("b"), w("ab"), w("ba"), w("aab")] {
                let k = i.max_power(&v).unwrap();
                if k > 0 {
                    assert!(i.count(&v.repeat(k)).unwrap() >= 1, "{text} {v} {k}");
                }
                assert_eq!(i.count(&v.repeat(k + 1)).unwrap(), 0, "{text} {v} {k}");
            }
        }
    }

    #[test]
    fn recurrence_examples() {
        // ("ab")^8: every length-3 window already contains both "ab" and "ba"
        let i = FactorIndex::build(&w("ab").repeat(8)).unwrap();
        assert_eq!(i.recurrence_estimate(2).unwrap(), RecurrenceProfile {
            n: 2,
            r_est: 3,
            valid: true
        });
        let aa = FactorIndex::build(&w("a").repeat(32)).unwrap();
        assert_eq!(aa.recurrence_estimate(1).unwrap().r_est, 1);
        assert!(matches!(
            idx("abab").recurrence_estimate(2),
            Err(Error::SampleTooShort { .. })
        ));
    }

    #[test]
    fn recurrence_tight_on_lopsided_sample() {
        // "aaabbbbbbbbb": "aa" only at positions 0 and 1, so windows of
        // length 10 starting at 2 miss it; length 11 forces start <= 1.
        let i = idx("aaabbbbbbbbb");
        let p = i.recurrence_estimate(2).unwrap();
        assert!(p.valid);
        assert_eq!(p.r_est, 11);
    }

    fn rand_word(max_len: usize) -> impl Strategy<Value = Word> {
        proptest::collection::vec(0u8..3, 1..=max_len).prop_map(|ids| {
            Alphabet::of_chars("abc").unwrap().word_from_ids(ids).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn index_agrees_with_naive(sample in rand_word(120), v in rand_word(4)) {
            let index = FactorIndex::build(&sample).unwrap();
            prop_assert_eq!(
                index.count(&v).unwrap(),
                count_occurrences(&v, &sample).unwrap()
            );
            prop_assert_eq!(
                index.occurrence_positions(&v).unwrap(),
                occurrence_positions_naive(&v, &sample).unwrap()
            );
            for n in 1..=4usize {
                let got: Vec<Word> = index.enumerate_factors(n).unwrap().collect();
                let expect: Vec<Word> = factors(&sample, n).unwrap().into_iter().collect();
                prop_assert_eq!(got, expect);
            }
        }

        #[test]
        fn recurrence_is_monotone_and_dominates_n(ids in proptest::collection::vec(0u8..2, 32..200)) {
            let sample = Alphabet::binary().word_from_ids(ids).unwrap();
            let index = FactorIndex::build(&sample).unwrap();
            let limit = (sample.len() / 4).min(6);
            let mut prev = 0usize;
            for n in 1..=limit {
                let p = index.recurrence_estimate(n).unwrap();
                prop_assert!(p.r_est >= n);
                if p.valid {
                    prop_assert!(p.r_est >= prev);
                    prev = p.r_est;
                }
            }
        }
    }
}
