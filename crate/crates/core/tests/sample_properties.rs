//! Factor-complexity and frequency signatures of the generated samples,
//! checked through the index rather than assumed.

use subshift::generate::{block_doubling_word, sturmian_word, thue_morse_word, BigRatio};
use subshift::word::count_occurrences;
use subshift::{Alphabet, FactorIndex};

#[test]
fn golden_mechanical_word_has_sturmian_complexity() {
    let alpha = BigRatio::parse("0.618033988749894848204586834365").unwrap();
    let rho = BigRatio::parse("0").unwrap();
    let sample = sturmian_word(&alpha, &rho, 10_000).unwrap();
    let index = FactorIndex::build(&sample).unwrap();
    for n in 1..=20 {
        assert_eq!(
            index.distinct_factor_count_at(n),
            n + 1,
            "complexity at length {n}"
        );
    }
}

#[test]
fn thue_morse_complexity_values() {
    let index = FactorIndex::build(&thue_morse_word(10_000)).unwrap();
    assert_eq!(index.distinct_factor_count_at(1), 2);
    assert_eq!(index.distinct_factor_count_at(2), 4);
    assert_eq!(index.distinct_factor_count_at(3), 6);
}

#[test]
fn periodic_samples_have_flat_complexity() {
    let base = Alphabet::of_chars("abc").unwrap().parse("abc").unwrap();
    let k = 20;
    let index = FactorIndex::build(&base.repeat(k)).unwrap();
    for n in base.len()..=(k - 2) * base.len() {
        assert_eq!(index.distinct_factor_count_at(n), base.len(), "length {n}");
    }
}

/// Prefixes of length `2^(k+1)-1` end exactly at block boundaries, where the
/// zero-frequency swings above 2/3 (k even) and down to 1/3 (k odd). The
/// persistent swing is the non-convergence witness.
#[test]
fn block_doubling_frequencies_oscillate() {
    let sample = block_doubling_word(1 << 13).unwrap();
    let zero = sample.alphabet().parse("0").unwrap();
    for k in 5..=12usize {
        let prefix_len = (1 << (k + 1)) - 1;
        let prefix = sample.slice(0, prefix_len);
        let freq = count_occurrences(&zero, &prefix).unwrap() as f64 / prefix_len as f64;
        if k % 2 == 0 {
            assert!(freq > 0.66, "k={k}: freq {freq}");
        } else {
            assert!(freq < 0.34, "k={k}: freq {freq}");
        }
    }
}
