//! Deterministic producers of long sample words: substitution fixed points,
//! mechanical (Sturmian) words, periodic words, a block-doubling control
//! whose letter frequencies do not converge, and plain-text file ingestion.
//!
//! Mechanical words are generated with exact integer arithmetic. Parameters
//! are rationals or high-precision decimals (30+ significant digits keep the
//! floor formula exact far beyond desk-scale lengths); floating point would
//! silently corrupt the output.

use std::path::Path;

use num_bigint::BigUint;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{Alphabet, Word};

/// A substitution `symbol -> nonempty word` over one alphabet, iterated from
/// a seed symbol. Extendability (the seed's image begins with the seed) is
/// checked where it is needed, not at construction, so degenerate rule sets
/// can still be inspected.
#[derive(Clone, Debug)]
pub struct Substitution {
    alphabet: Alphabet,
    images: Vec<Word>,
    seed: u8,
}

impl Substitution {
    pub fn new(alphabet: Alphabet, images: Vec<Word>, seed_label: &str) -> Result<Self> {
        if images.len() != alphabet.size() {
            return Err(Error::InvalidSpec(format!(
                "substitution needs {} images, got {}",
                alphabet.size(),
                images.len()
            )));
        }
        for (id, image) in images.iter().enumerate() {
            if image.is_empty() {
                return Err(Error::InvalidSpec(format!(
                    "image of {:?} is empty",
                    alphabet.label(id as u8)
                )));
            }
            if !image.alphabet().same_as(&alphabet) {
                return Err(Error::InvalidSpec(format!(
                    "image of {:?} uses a different alphabet",
                    alphabet.label(id as u8)
                )));
            }
        }
        let seed = alphabet
            .id_of(seed_label)
            .ok_or_else(|| Error::InvalidSpec(format!("seed {seed_label:?} not in alphabet")))?;
        Ok(Substitution { alphabet, images, seed })
    }

    /// Parse rules of the form `"a->ab"`. The alphabet is the left-hand
    /// symbols in listed order; the first rule's symbol is the default seed
    /// unless `seed` names another.
    pub fn from_rules(rules: &[String], seed: Option<&str>) -> Result<Self> {
        let mut lhs = Vec::new();
        let mut rhs = Vec::new();
        for rule in rules {
            let (l, r) = rule
                .split_once("->")
                .ok_or_else(|| Error::InvalidSpec(format!("rule {rule:?} is not `sym->image`")))?;
            lhs.push(l.trim().to_string());
            rhs.push(r.trim().to_string());
        }
        let alphabet = Alphabet::new(lhs.clone())?;
        let images = rhs
            .iter()
            .map(|img| alphabet.parse(img))
            .collect::<Result<Vec<_>>>()?;
        let seed_label = seed.unwrap_or(&lhs[0]);
        Substitution::new(alphabet, images, seed_label)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn seed(&self) -> u8 {
        self.seed
    }

    pub fn image(&self, id: u8) -> &Word {
        &self.images[id as usize]
    }

    /// The seed's image begins with the seed, so iterates are nested
    /// prefixes.
    pub fn is_extendable(&self) -> bool {
        self.images[self.seed as usize].symbol(0) == self.seed
    }

    /// Some power of the incidence matrix is entrywise positive.
    pub fn is_primitive(&self) -> bool {
        let n = self.alphabet.size();
        // reach[i][j]: symbol j occurs in image of i
        let mut reach: Vec<Vec<bool>> = vec![vec![false; n]; n];
        for (i, image) in self.images.iter().enumerate() {
            for &j in image.ids() {
                reach[i][j as usize] = true;
            }
        }
        // Wielandt bound: exponent of a primitive matrix is <= (n-1)^2 + 1
        let bound = (n - 1) * (n - 1) + 1;
        let mut acc = reach.clone();
        for _ in 1..bound {
            if acc.iter().all(|row| row.iter().all(|&x| x)) {
                return true;
            }
            let mut next = vec![vec![false; n]; n];
            for i in 0..n {
                for k in 0..n {
                    if acc[i][k] {
                        for j in 0..n {
                            next[i][j] |= reach[k][j];
                        }
                    }
                }
            }
            acc = next;
        }
        acc.iter().all(|row| row.iter().all(|&x| x))
    }

    pub fn apply(&self, w: &Word) -> Word {
        let mut data = Vec::with_capacity(w.len() * 2);
        for &id in w.ids() {
            data.extend_from_slice(self.images[id as usize].ids());
        }
        self.alphabet
            .word_from_ids(data)
            .expect("images are over the same alphabet")
    }
}

/// Prefix of length `length` of the substitution fixed point from the seed.
pub fn substitution_fixed_point(s: &Substitution, length: usize) -> Result<Word> {
    if length == 0 {
        return Err(Error::InvalidSpec("target length must be >= 1".into()));
    }
    if !s.is_extendable() {
        return Err(Error::InvalidSpec(
            "substitution is not extendable: the seed's image must begin with the seed".into(),
        ));
    }
    let mut current = s
        .alphabet()
        .word_from_ids(vec![s.seed()])
        .expect("seed id is valid");
    while current.len() < length {
        let next = s.apply(&current);
        if next.len() == current.len() {
            // extendable + no growth means the iterate is already fixed
            return Err(Error::NoFixedPoint);
        }
        current = next;
    }
    Ok(current.slice(0, length))
}

/// Exact nonnegative rational, parsed from `"p/q"` or a decimal string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigRatio {
    num: BigUint,
    den: BigUint,
}

impl BigRatio {
    pub fn new(num: BigUint, den: BigUint) -> Result<Self> {
        if den == BigUint::from(0u32) {
            return Err(Error::InvalidSpec("zero denominator".into()));
        }
        Ok(BigRatio { num, den }.reduced())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let bad = |t: &str| Error::InvalidSpec(format!("cannot parse {t:?} as a rational"));
        if let Some((p, q)) = text.split_once('/') {
            let num: BigUint = p.trim().parse().map_err(|_| bad(text))?;
            let den: BigUint = q.trim().parse().map_err(|_| bad(text))?;
            return BigRatio::new(num, den);
        }
        if let Some((int_part, frac_part)) = text.split_once('.') {
            if !frac_part.chars().all(|c| c.is_ascii_digit()) || frac_part.is_empty() {
                return Err(bad(text));
            }
            let int_part = if int_part.is_empty() { "0" } else { int_part };
            let whole: BigUint = int_part.parse().map_err(|_| bad(text))?;
            let frac: BigUint = frac_part.parse().map_err(|_| bad(text))?;
            let den = BigUint::from(10u32).pow(frac_part.len() as u32);
            return BigRatio::new(whole * &den + frac, den);
        }
        let whole: BigUint = text.parse().map_err(|_| bad(text))?;
        BigRatio::new(whole, BigUint::from(1u32))
    }

    fn reduced(self) -> Self {
        let g = self.num.gcd(&self.den);
        BigRatio { num: &self.num / &g, den: &self.den / &g }
    }

    pub fn numerator(&self) -> &BigUint {
        &self.num
    }

    pub fn denominator(&self) -> &BigUint {
        &self.den
    }

    fn is_less_than_one(&self) -> bool {
        self.num < self.den
    }

    fn is_zero(&self) -> bool {
        self.num == BigUint::from(0u32)
    }
}

/// The mechanical word `s[n] = floor((n+1)a + r) - floor(na + r)` for
/// `n = 0..length`, over the binary alphabet. Runs on exact integer
/// arithmetic: the fractional part of `na + r` is stepped by `a` modulo 1.
pub fn sturmian_word(alpha: &BigRatio, rho: &BigRatio, length: usize) -> Result<Word> {
    if length == 0 {
        return Err(Error::InvalidSpec("target length must be >= 1".into()));
    }
    if alpha.is_zero() || !alpha.is_less_than_one() {
        return Err(Error::InvalidSpec(format!(
            "alpha must lie strictly between 0 and 1, got {}/{}",
            alpha.num, alpha.den
        )));
    }
    // common denominator D; fractional numerator f steps by p modulo D
    let d = alpha.den.lcm(&rho.den);
    let p = &alpha.num * (&d / &alpha.den);
    let mut f = (&rho.num * (&d / &rho.den)) % &d;
    let mut data = Vec::with_capacity(length);
    for _ in 0..length {
        f += &p;
        if f >= d {
            f -= &d;
            data.push(1u8);
        } else {
            data.push(0u8);
        }
    }
    Alphabet::binary().word_from_ids(data)
}

/// True when `alpha` has a denominator small enough that the length-`length`
/// mechanical word is genuinely periodic within the sample.
pub fn sturmian_is_degenerate(alpha: &BigRatio, length: usize) -> bool {
    alpha.den <= BigUint::from(length)
}

/// Prefix of length `length` of `base` repeated forever.
pub fn periodic_word(base: &Word, length: usize) -> Result<Word> {
    if base.is_empty() {
        return Err(Error::EmptyWord { operation: "periodic_word" });
    }
    let mut data = Vec::with_capacity(length);
    while data.len() < length {
        let take = base.len().min(length - data.len());
        data.extend_from_slice(&base.ids()[..take]);
    }
    base.alphabet().word_from_ids(data)
}

/// Prefix of `0 11 0000 11111111 ...` (block `k` has length `2^k`,
/// alternating symbols). Letter frequencies along this sample oscillate
/// forever, which makes it the negative control for every convergence
/// experiment.
pub fn block_doubling_word(length: usize) -> Result<Word> {
    if length == 0 {
        return Err(Error::InvalidSpec("target length must be >= 1".into()));
    }
    let mut data = Vec::with_capacity(length);
    let mut block = 1usize;
    let mut symbol = 0u8;
    while data.len() < length {
        let take = block.min(length - data.len());
        data.extend(std::iter::repeat(symbol).take(take));
        block = block.saturating_mul(2);
        symbol ^= 1;
    }
    Alphabet::binary().word_from_ids(data)
}

/// Read a sample from a plain-text file: one character per symbol, a single
/// trailing newline ignored. With no alphabet supplied, symbols are interned
/// in order of first appearance.
pub fn word_from_file(path: &Path, alphabet: Option<&Alphabet>) -> Result<Word> {
    let mut text = std::fs::read_to_string(path)?;
    if text.ends_with('\n') {
        text.pop();
    }
    if text.is_empty() {
        return Err(Error::InvalidInput(format!(
            "file {} holds no symbols",
            path.display()
        )));
    }
    match alphabet {
        Some(alphabet) => alphabet.parse(&text),
        None => {
            let mut labels: Vec<String> = Vec::new();
            for c in text.chars() {
                let label = c.to_string();
                if !labels.contains(&label) {
                    labels.push(label);
                }
            }
            Alphabet::new(labels)?.parse(&text)
        }
    }
}

/// The Fibonacci substitution `a -> ab, b -> a` over `{a, b}`.
pub fn fibonacci_substitution() -> Substitution {
    Substitution::from_rules(&["a->ab".into(), "b->a".into()], None)
        .expect("fibonacci rules are valid")
}

/// The Thue-Morse substitution `0 -> 01, 1 -> 10` over `{0, 1}`.
pub fn thue_morse_substitution() -> Substitution {
    Substitution::from_rules(&["0->01".into(), "1->10".into()], None)
        .expect("thue-morse rules are valid")
}

pub fn fibonacci_word(length: usize) -> Word {
    substitution_fixed_point(&fibonacci_substitution(), length)
        .expect("fibonacci substitution expands")
}

pub fn thue_morse_word(length: usize) -> Word {
    substitution_fixed_point(&thue_morse_substitution(), length)
        .expect("thue-morse substitution expands")
}

/// Declarative description of a sample source, serializable for experiment
/// configs and report echoes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GeneratorSpec {
    /// Rules like `"a->ab"`; the alphabet is the left-hand symbols in order.
    Substitution {
        rules: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed: Option<String>,
        length: usize,
    },
    Sturmian {
        alpha: String,
        #[serde(default = "default_rho")]
        rho: String,
        length: usize,
    },
    Periodic { base: String, length: usize },
    BlockDoubling { length: usize },
    File {
        path: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        alphabet: Option<String>,
    },
}

fn default_rho() -> String {
    "0".to_string()
}

impl GeneratorSpec {
    pub fn generate(&self) -> Result<Word> {
        match self {
            GeneratorSpec::Substitution { rules, seed, length } => {
                let s = Substitution::from_rules(rules, seed.as_deref())?;
                substitution_fixed_point(&s, *length)
            }
            GeneratorSpec::Sturmian { alpha, rho, length } => {
                let alpha = BigRatio::parse(alpha)?;
                let rho = BigRatio::parse(rho)?;
                sturmian_word(&alpha, &rho, *length)
            }
            GeneratorSpec::Periodic { base, length } => {
                if *length == 0 {
                    return Err(Error::InvalidSpec("target length must be >= 1".into()));
                }
                let base = alphabet_of(base)?.parse(base)?;
                periodic_word(&base, *length)
            }
            GeneratorSpec::BlockDoubling { length } => block_doubling_word(*length),
            GeneratorSpec::File { path, alphabet } => {
                let alphabet = match alphabet {
                    Some(chars) => Some(Alphabet::of_chars(chars)?),
                    None => None,
                };
                word_from_file(Path::new(path), alphabet.as_ref())
            }
        }
    }

    /// True when the generated sample is periodic by construction (periodic
    /// kind, or a mechanical word whose rational slope has a denominator no
    /// larger than the sample).
    pub fn periodic_hint(&self) -> bool {
        match self {
            GeneratorSpec::Periodic { .. } => true,
            GeneratorSpec::Sturmian { alpha, length, .. } => BigRatio::parse(alpha)
                .map(|a| sturmian_is_degenerate(&a, *length))
                .unwrap_or(false),
            _ => false,
        }
    }
}

fn alphabet_of(text: &str) -> Result<Alphabet> {
    let mut labels: Vec<String> = Vec::new();
    for c in text.chars() {
        let label = c.to_string();
        if !labels.contains(&label) {
            labels.push(label);
        }
    }
    Alphabet::new(labels)
}
