//! Finite words over a finite alphabet, plus the naive reference algorithms
//! everything else is tested against.
//!
//! Symbols are interned ids (`u8`); textual labels appear only at I/O
//! boundaries. All values are immutable after construction and safe to share
//! across threads.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Hard cap on alphabet size: symbol ids are `u8`.
pub const MAX_ALPHABET: usize = 256;

#[derive(Debug)]
struct AlphabetInner {
    labels: Vec<String>,
    by_label: HashMap<String, u8>,
}

/// A finite, ordered set of distinct symbol labels. Cheap to clone (shared
/// handle); symbol ids are `0..size` in listed order.
#[derive(Clone, Debug)]
pub struct Alphabet(Arc<AlphabetInner>);

impl Alphabet {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::InvalidSpec("alphabet must have at least one symbol".into()));
        }
        if labels.len() > MAX_ALPHABET {
            return Err(Error::InvalidSpec(format!(
                "alphabet has {} symbols, maximum is {MAX_ALPHABET}",
                labels.len()
            )));
        }
        let mut by_label = HashMap::with_capacity(labels.len());
        for (id, label) in labels.iter().enumerate() {
            if label.is_empty() {
                return Err(Error::InvalidSpec("empty symbol label".into()));
            }
            if by_label.insert(label.clone(), id as u8).is_some() {
                return Err(Error::InvalidSpec(format!("duplicate symbol label {label:?}")));
            }
        }
        Ok(Alphabet(Arc::new(AlphabetInner { labels, by_label })))
    }

    /// One single-character symbol per char of `chars`, in order.
    pub fn of_chars(chars: &str) -> Result<Self> {
        Self::new(chars.chars().map(|c| c.to_string()))
    }

    /// The `{0, 1}` alphabet.
    pub fn binary() -> Self {
        Self::of_chars("01").expect("binary alphabet is valid")
    }

    pub fn size(&self) -> usize {
        self.0.labels.len()
    }

    pub fn label(&self, id: u8) -> &str {
        &self.0.labels[id as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn id_of(&self, label: &str) -> Option<u8> {
        self.0.by_label.get(label).copied()
    }

    /// Two handles denote the same alphabet if they share storage or list
    /// identical labels.
    pub fn same_as(&self, other: &Alphabet) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.labels == other.0.labels
    }

    /// Parse a word from single-character symbol labels.
    pub fn parse(&self, text: &str) -> Result<Word> {
        let mut data = Vec::with_capacity(text.len());
        for (offset, c) in text.chars().enumerate() {
            let label = c.to_string();
            match self.id_of(&label) {
                Some(id) => data.push(id),
                None => return Err(Error::UnknownSymbol { symbol: label, offset }),
            }
        }
        Ok(Word { alphabet: self.clone(), data })
    }

    /// Build a word directly from symbol ids.
    pub fn word_from_ids(&self, data: Vec<u8>) -> Result<Word> {
        if let Some(&bad) = data.iter().find(|&&id| (id as usize) >= self.size()) {
            return Err(Error::InvalidInput(format!(
                "symbol id {bad} out of range for alphabet of size {}",
                self.size()
            )));
        }
        Ok(Word { alphabet: self.clone(), data })
    }

    pub fn empty_word(&self) -> Word {
        Word { alphabet: self.clone(), data: Vec::new() }
    }

    fn describe(&self) -> String {
        self.0.labels.join(",")
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}
impl Eq for Alphabet {}

/// A finite sequence of symbol ids over one alphabet. `Ord` compares the id
/// sequences lexicographically, which matches label order by construction.
#[derive(Clone)]
pub struct Word {
    alphabet: Alphabet,
    data: Vec<u8>,
}

impl Word {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn ids(&self) -> &[u8] {
        &self.data
    }

    pub fn symbol(&self, i: usize) -> u8 {
        self.data[i]
    }

    /// Copy of the factor `self[range)` as a standalone word.
    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word {
            alphabet: self.alphabet.clone(),
            data: self.data[start..end].to_vec(),
        }
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        check_same_alphabet(self, other)?;
        let mut data = Vec::with_capacity(self.len() + other.len());
        data.extend_from_slice(&self.data);
        data.extend_from_slice(&other.data);
        Ok(Word { alphabet: self.alphabet.clone(), data })
    }

    /// `self` concatenated `k` times; `repeat(0)` is the empty word.
    pub fn repeat(&self, k: usize) -> Word {
        let mut data = Vec::with_capacity(self.len() * k);
        for _ in 0..k {
            data.extend_from_slice(&self.data);
        }
        Word { alphabet: self.alphabet.clone(), data }
    }

    /// Render through symbol labels. Unambiguous for single-char labels.
    pub fn text(&self) -> String {
        self.data.iter().map(|&id| self.alphabet.label(id)).collect()
    }
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet.same_as(&other.alphabet) && self.data == other.data
    }
}
impl Eq for Word {}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.data.cmp(&other.data)
    }
}

impl std::hash::Hash for Word {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.data.hash(state);
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({:?})", self.text())
    }
}

/// All start positions of one pattern inside one host word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OccurrenceList {
    pub pattern: Word,
    /// Strictly increasing start indices.
    pub positions: Vec<usize>,
}

impl OccurrenceList {
    pub fn count(&self) -> usize {
        self.positions.len()
    }
}

pub(crate) fn check_same_alphabet(a: &Word, b: &Word) -> Result<()> {
    if a.alphabet.same_as(&b.alphabet) {
        Ok(())
    } else {
        Err(Error::AlphabetMismatch {
            left: a.alphabet.describe(),
            right: b.alphabet.describe(),
        })
    }
}

fn check_pattern(pattern: &Word, host: &Word, operation: &'static str) -> Result<()> {
    check_same_alphabet(pattern, host)?;
    if pattern.is_empty() {
        return Err(Error::EmptyPattern { operation });
    }
    Ok(())
}

/// Start positions of all (possibly overlapping) occurrences of `pattern` in
/// `host`, by naive scan.
pub fn occurrence_positions_naive(pattern: &Word, host: &Word) -> Result<OccurrenceList> {
    check_pattern(pattern, host, "occurrence_positions")?;
    let positions = scan_positions(pattern.ids(), host.ids());
    Ok(OccurrenceList { pattern: pattern.clone(), positions })
}

pub(crate) fn scan_positions(pattern: &[u8], host: &[u8]) -> Vec<usize> {
    if pattern.is_empty() || host.len() < pattern.len() {
        return Vec::new();
    }
    (0..=host.len() - pattern.len())
        .filter(|&i| &host[i..i + pattern.len()] == pattern)
        .collect()
}

/// Number of (possibly overlapping) occurrences of `pattern` in `host`.
pub fn count_occurrences(pattern: &Word, host: &Word) -> Result<usize> {
    check_pattern(pattern, host, "count_occurrences")?;
    Ok(scan_positions(pattern.ids(), host.ids()).len())
}

/// Maximum number of pairwise non-overlapping occurrences of `pattern` in
/// `host`, by the greedy left-to-right rule. For equal-length intervals the
/// greedy choice is optimal; the exhaustive oracle below checks that.
pub fn max_disjoint_copies(pattern: &Word, host: &Word) -> Result<usize> {
    check_pattern(pattern, host, "max_disjoint_copies")?;
    Ok(greedy_disjoint(&scan_positions(pattern.ids(), host.ids()), pattern.len()))
}

pub(crate) fn greedy_disjoint(positions: &[usize], pattern_len: usize) -> usize {
    let mut taken = 0usize;
    let mut next_free = 0usize;
    for &p in positions {
        if p >= next_free {
            taken += 1;
            next_free = p + pattern_len;
        }
    }
    taken
}

/// Exhaustive maximum over all subsets of non-overlapping occurrences.
/// Test oracle only; rejects hosts longer than 24 symbols.
pub fn max_disjoint_copies_bruteforce(pattern: &Word, host: &Word) -> Result<usize> {
    const MAX_HOST: usize = 24;
    check_pattern(pattern, host, "max_disjoint_copies_bruteforce")?;
    if host.len() > MAX_HOST {
        return Err(Error::OracleLimit { len: host.len(), max: MAX_HOST });
    }
    let positions = scan_positions(pattern.ids(), host.ids());
    fn best(positions: &[usize], from: usize, free_at: usize, plen: usize) -> usize {
        if from == positions.len() {
            return 0;
        }
        // skip this occurrence
        let mut b = best(positions, from + 1, free_at, plen);
        // or take it if it fits
        if positions[from] >= free_at {
            b = b.max(1 + best(positions, from + 1, positions[from] + plen, plen));
        }
        b
    }
    Ok(best(&positions, 0, 0, pattern.len()))
}

/// The set of distinct length-`n` factors of `w`; empty when `n > |w|`.
pub fn factors(w: &Word, n: usize) -> Result<BTreeSet<Word>> {
    if n == 0 {
        return Err(Error::EmptyPattern { operation: "factors" });
    }
    let mut out = BTreeSet::new();
    if n > w.len() {
        return Ok(out);
    }
    for i in 0..=w.len() - n {
        out.insert(w.slice(i, i + n));
    }
    Ok(out)
}

/// True iff `w` is not a proper power `u^l`, `l >= 2`. Checks every divisor
/// of `|w|` as a candidate period.
pub fn is_primitive(w: &Word) -> Result<bool> {
    if w.is_empty() {
        return Err(Error::EmptyWord { operation: "is_primitive" });
    }
    let n = w.len();
    let data = w.ids();
    for d in 1..n {
        if n % d != 0 {
            continue;
        }
        if (d..n).all(|i| data[i] == data[i - d]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `w` concatenated `k` times (`power(w, 0)` is the empty word).
pub fn power(w: &Word, k: usize) -> Word {
    w.repeat(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(text: &str) -> Word {
        Alphabet::of_chars("ab").unwrap().parse(text).unwrap()
    }

    #[test]
    fn count_overlapping_occurrences() {
        assert_eq!(count_occurrences(&w("ab"), &w("abaab")).unwrap(), 2);
        assert_eq!(count_occurrences(&w("a"), &w("a")).unwrap(), 1);
        assert_eq!(count_occurrences(&w("aa"), &w("aaaa")).unwrap(), 3);
    }

    #[test]
    fn count_rejects_empty_pattern_and_foreign_alphabet() {
        let empty = Alphabet::of_chars("ab").unwrap().empty_word();
        assert!(matches!(
            count_occurrences(&empty, &w("ab")),
            Err(Error::EmptyPattern { .. })
        ));
        let other = Alphabet::of_chars("xy").unwrap().parse("xy").unwrap();
        assert!(matches!(
            count_occurrences(&other, &w("ab")),
            Err(Error::AlphabetMismatch { .. })
        ));
    }

    #[test]
    fn greedy_disjoint_examples() {
        assert_eq!(max_disjoint_copies(&w("aa"), &w("aaaa")).unwrap(), 2);
        assert_eq!(max_disjoint_copies(&w("ab"), &w("bbb")).unwrap(), 0);
        assert_eq!(max_disjoint_copies(&w("aba"), &w("ababa")).unwrap(), 1);
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(max_disjoint_copies_bruteforce(&w("aa"), &w("aaaa")).unwrap(), 2);
        assert_eq!(max_disjoint_copies_bruteforce(&w("a"), &w("aaa")).unwrap(), 3);
        assert_eq!(max_disjoint_copies_bruteforce(&w("ab"), &w("abab")).unwrap(), 2);
    }

    #[test]
    fn bruteforce_rejects_long_hosts() {
        let host = w("a").repeat(25);
        assert!(matches!(
            max_disjoint_copies_bruteforce(&w("a"), &host),
            Err(Error::OracleLimit { .. })
        ));
    }

    #[test]
    fn factor_sets() {
        let f = factors(&w("abab"), 2).unwrap();
        let expect: BTreeSet<Word> = [w("ab"), w("ba")].into_iter().collect();
        assert_eq!(f, expect);

        let abc = Alphabet::of_chars("abc").unwrap();
        let f3 = factors(&abc.parse("abc").unwrap(), 3).unwrap();
        assert_eq!(f3.len(), 1);
        assert!(factors(&w("ab"), 5).unwrap().is_empty());
    }

    #[test]
    fn primitivity() {
        assert!(!is_primitive(&w("abab")).unwrap());
        assert!(is_primitive(&w("aba")).unwrap());
        assert!(is_primitive(&w("a")).unwrap());
        let empty = Alphabet::of_chars("ab").unwrap().empty_word();
        assert!(is_primitive(&empty).is_err());
    }

    #[test]
    fn powers() {
        assert_eq!(power(&w("ab"), 2), w("abab"));
        assert!(power(&w("a"), 0).is_empty());
        assert_eq!(power(&w("ba"), 3), w("bababa"));
    }

    /// Exhaustive greedy-vs-bruteforce over all short binary (pattern, host)
    /// pairs. The acceptance suite extends this to |host| <= 12, |v| <= 4.
    #[test]
    fn greedy_matches_bruteforce_exhaustively_small() {
        let ab = Alphabet::of_chars("ab").unwrap();
        for host_len in 1..=8usize {
            for host_bits in 0..(1u32 << host_len) {
                let host_ids: Vec<u8> =
                    (0..host_len).map(|i| ((host_bits >> i) & 1) as u8).collect();
                let host = ab.word_from_ids(host_ids).unwrap();
                for v_len in 1..=3usize {
                    for v_bits in 0..(1u32 << v_len) {
                        let v_ids: Vec<u8> =
                            (0..v_len).map(|i| ((v_bits >> i) & 1) as u8).collect();
                        let v = ab.word_from_ids(v_ids).unwrap();
                        assert_eq!(
                            max_disjoint_copies(&v, &host).unwrap(),
                            max_disjoint_copies_bruteforce(&v, &host).unwrap(),
                            "v={v} host={host}"
                        );
                    }
                }
            }
        }
    }

    fn binary_word(max_len: usize) -> impl Strategy<Value = Word> {
        proptest::collection::vec(0u8..2, 1..=max_len)
            .prop_map(|ids| Alphabet::binary().word_from_ids(ids).unwrap())
    }

    proptest! {
        #[test]
        fn count_dominates_disjoint(v in binary_word(5), host in binary_word(40)) {
            let c = count_occurrences(&v, &host).unwrap();
            let d = max_disjoint_copies(&v, &host).unwrap();
            prop_assert!(c >= d);
        }

        #[test]
        fn sandwich_contains_pattern(u in binary_word(8), v in binary_word(8)) {
            let host = u.concat(&v).unwrap().concat(&u).unwrap();
            prop_assert!(count_occurrences(&v, &host).unwrap() >= 1);
        }

        #[test]
        fn count_monotone_under_extension(
            v in binary_word(4),
            x in binary_word(10),
            mid in binary_word(20),
            y in binary_word(10),
        ) {
            let outer = x.concat(&mid).unwrap().concat(&y).unwrap();
            prop_assert!(
                count_occurrences(&v, &mid).unwrap() <= count_occurrences(&v, &outer).unwrap()
            );
        }

        #[test]
        fn proper_powers_are_imprimitive(wd in binary_word(6), k in 2usize..5) {
            prop_assert!(!is_primitive(&power(&wd, k)).unwrap());
        }

        #[test]
        fn factor_count_bound(wd in binary_word(24), n in 1usize..6) {
            let f = factors(&wd, n).unwrap();
            let cap = 2usize.pow(n as u32).min(wd.len().saturating_sub(n - 1));
            prop_assert!(f.len() <= cap);
        }
    }
}
