//! The three function classes the estimators consume.
//!
//! Additive functions carry their linear-bound constant and a nonincreasing
//! boundary-error function `c(r) -> 0`: cutting a word destroys at most
//! `c(|part|)·|part|` of the value per part. Subadditive functions satisfy
//! `F(ab) <= F(a) + F(b)`. Cylinder functions read a radius-`k` window of a
//! sequence and are the finitely representable continuous observables.
//! Values live in finite-dimensional real vectors under the max-norm.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::word::{self, Alphabet, Word};

pub(crate) type VectorFn = Arc<dyn Fn(&Word) -> Vec<f64> + Send + Sync>;
pub(crate) type ScalarFn = Arc<dyn Fn(&Word) -> f64 + Send + Sync>;
pub(crate) type DecayFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// How an additive function evaluates. Occurrence counters are kept
/// structural so series estimators can run them through position lists
/// instead of rescanning every window.
#[derive(Clone)]
pub(crate) enum AdditiveKind {
    OccurrenceCounts(Vec<Word>),
    Custom(VectorFn),
}

/// A word function with `|F(v)| <= D·|v|` and concatenation defect bounded
/// by the declared boundary-error function.
#[derive(Clone)]
pub struct AdditiveFunction {
    name: String,
    dim: usize,
    linear_bound: f64,
    boundary_error: DecayFn,
    pub(crate) kind: AdditiveKind,
}

impl AdditiveFunction {
    /// `F(w) = (#occurrences of v in w)` for each pattern, one coordinate
    /// per pattern. `D = 1`; a cut destroys at most `|v| - 1` occurrences,
    /// so `c(r) = min(1, (|v|-1)/max(r,1))` maximized over the patterns.
    pub fn occurrence_counts(patterns: &[Word]) -> Result<Self> {
        if patterns.is_empty() {
            return Err(Error::InvalidSpec("no patterns given".into()));
        }
        if let Some(p) = patterns.iter().find(|p| p.is_empty()) {
            let _ = p;
            return Err(Error::EmptyPattern { operation: "occurrence_counts" });
        }
        let longest = patterns.iter().map(Word::len).max().expect("nonempty") as f64;
        let name = format!(
            "occurrences[{}]",
            patterns.iter().map(Word::text).collect::<Vec<_>>().join(",")
        );
        Ok(AdditiveFunction {
            name,
            dim: patterns.len(),
            linear_bound: 1.0,
            boundary_error: Arc::new(move |r| ((longest - 1.0) / r.max(1.0)).min(1.0)),
            kind: AdditiveKind::OccurrenceCounts(patterns.to_vec()),
        })
    }

    /// Scalar occurrence counter of one pattern.
    pub fn occurrence(pattern: &Word) -> Result<Self> {
        Self::occurrence_counts(std::slice::from_ref(pattern))
    }

    /// Arbitrary evaluator with declared constants.
    pub fn custom(
        name: impl Into<String>,
        dim: usize,
        linear_bound: f64,
        boundary_error: impl Fn(f64) -> f64 + Send + Sync + 'static,
        eval: impl Fn(&Word) -> Vec<f64> + Send + Sync + 'static,
    ) -> Self {
        AdditiveFunction {
            name: name.into(),
            dim,
            linear_bound,
            boundary_error: Arc::new(boundary_error),
            kind: AdditiveKind::Custom(Arc::new(eval)),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn linear_bound(&self) -> f64 {
        self.linear_bound
    }

    pub fn boundary_error(&self, r: f64) -> f64 {
        (self.boundary_error)(r)
    }

    pub fn eval(&self, w: &Word) -> Vec<f64> {
        match &self.kind {
            AdditiveKind::OccurrenceCounts(patterns) => patterns
                .iter()
                .map(|v| word::scan_positions(v.ids(), w.ids()).len() as f64)
                .collect(),
            AdditiveKind::Custom(f) => {
                let out = f(w);
                debug_assert_eq!(out.len(), self.dim);
                out
            }
        }
    }
}

/// A real word function with `F(ab) <= F(a) + F(b)`.
#[derive(Clone)]
pub struct SubadditiveFunction {
    name: String,
    eval: ScalarFn,
}

impl SubadditiveFunction {
    pub fn new(name: impl Into<String>, eval: impl Fn(&Word) -> f64 + Send + Sync + 'static) -> Self {
        SubadditiveFunction { name: name.into(), eval: Arc::new(eval) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, w: &Word) -> f64 {
        (self.eval)(w)
    }
}

/// `F(w) = -l_v(w)`: minus (maximal number of pairwise disjoint copies of
/// `v` in `w`) times `|v|`.
pub fn neg_disjoint(v: &Word) -> Result<SubadditiveFunction> {
    if v.is_empty() {
        return Err(Error::EmptyPattern { operation: "neg_disjoint" });
    }
    let pattern = v.clone();
    Ok(SubadditiveFunction::new(format!("neg_disjoint[{}]", v.text()), move |w| {
        let positions = word::scan_positions(pattern.ids(), w.ids());
        -((word::greedy_disjoint(&positions, pattern.len()) * pattern.len()) as f64)
    }))
}

/// `F(w) = |w|`: subadditive with equality, the calibration function whose
/// limit and level maxima are exactly 1.
pub fn word_length() -> SubadditiveFunction {
    SubadditiveFunction::new("word_length", |w| w.len() as f64)
}

/// `F(w) = -sum_j l_{v_j}(w)` over a ladder of patterns whose lengths more
/// than double at each step. On samples where the quasiweights of the
/// ladder tend to zero, `F(w)/|w|` oscillates instead of converging, which
/// is the failure witness for the uniform subadditive limit.
pub fn layered_neg_disjoint(patterns: &[Word]) -> Result<SubadditiveFunction> {
    if patterns.is_empty() {
        return Err(Error::InvalidSpec("layered_neg_disjoint needs patterns".into()));
    }
    if let Some(p) = patterns.iter().find(|p| p.is_empty()) {
        let _ = p;
        return Err(Error::EmptyPattern { operation: "layered_neg_disjoint" });
    }
    for pair in patterns.windows(2) {
        if pair[1].len() <= 2 * pair[0].len() {
            return Err(Error::InvalidSpec(format!(
                "pattern lengths must more than double: {} after {}",
                pair[1].len(),
                pair[0].len()
            )));
        }
    }
    let patterns = patterns.to_vec();
    let name = format!(
        "layered_neg_disjoint[{}]",
        patterns.iter().map(Word::text).collect::<Vec<_>>().join(",")
    );
    Ok(SubadditiveFunction::new(name, move |w| {
        -patterns
            .iter()
            .map(|v| {
                let positions = word::scan_positions(v.ids(), w.ids());
                (word::greedy_disjoint(&positions, v.len()) * v.len()) as f64
            })
            .sum::<f64>()
    }))
}

/// A function of a radius-`k` window: a table over length-`(2k+1)` words.
/// Lookups of windows absent from the table are errors.
#[derive(Clone)]
pub struct CylinderFunction {
    name: String,
    radius: usize,
    dim: usize,
    table: HashMap<Vec<u8>, Vec<f64>>,
    sup_norm: f64,
    alphabet: Alphabet,
}

impl CylinderFunction {
    pub fn from_table(
        name: impl Into<String>,
        alphabet: &Alphabet,
        radius: usize,
        entries: impl IntoIterator<Item = (Word, Vec<f64>)>,
    ) -> Result<Self> {
        let width = 2 * radius + 1;
        let mut table = HashMap::new();
        let mut dim = None;
        let mut sup = 0f64;
        for (window, value) in entries {
            if window.len() != width {
                return Err(Error::InvalidSpec(format!(
                    "window `{window}` has length {}, table radius {radius} needs {width}",
                    window.len()
                )));
            }
            match dim {
                None => dim = Some(value.len()),
                Some(d) if d != value.len() => {
                    return Err(Error::InvalidSpec("table values have mixed dimensions".into()))
                }
                _ => {}
            }
            for &x in &value {
                sup = sup.max(x.abs());
            }
            table.insert(window.ids().to_vec(), value);
        }
        let dim = dim.ok_or_else(|| Error::InvalidSpec("cylinder table is empty".into()))?;
        Ok(CylinderFunction {
            name: name.into(),
            radius,
            dim,
            table,
            sup_norm: sup,
            alphabet: alphabet.clone(),
        })
    }

    /// Radius-0 indicator of one symbol, defined on every symbol.
    pub fn center_indicator(alphabet: &Alphabet, symbol: &str) -> Result<Self> {
        let id = alphabet
            .id_of(symbol)
            .ok_or_else(|| Error::InvalidSpec(format!("symbol {symbol:?} not in alphabet")))?;
        let entries = (0..alphabet.size() as u8).map(|s| {
            let window = alphabet.word_from_ids(vec![s]).expect("id in range");
            (window, vec![if s == id { 1.0 } else { 0.0 }])
        });
        Self::from_table(format!("indicator[{symbol}]"), alphabet, 0, entries.collect::<Vec<_>>())
    }

    /// Indicator of one odd-length window, defined on every window of that
    /// length over the window's alphabet.
    pub fn window_indicator(window: &Word) -> Result<Self> {
        if window.len() % 2 == 0 {
            return Err(Error::InvalidSpec(format!(
                "window `{window}` has even length {}, need 2k+1",
                window.len()
            )));
        }
        let alphabet = window.alphabet().clone();
        let width = window.len();
        let count = (alphabet.size() as u64).checked_pow(width as u32);
        if count.map_or(true, |c| c > 1 << 20) {
            return Err(Error::InvalidSpec(format!(
                "window width {width} over {} symbols needs too large a table",
                alphabet.size()
            )));
        }
        let mut entries = Vec::with_capacity(count.expect("checked") as usize);
        let mut ids = vec![0u8; width];
        loop {
            let candidate = alphabet.word_from_ids(ids.clone()).expect("ids in range");
            let hit = candidate == *window;
            entries.push((candidate, vec![if hit { 1.0 } else { 0.0 }]));
            // odometer increment over the alphabet
            let mut i = width;
            loop {
                if i == 0 {
                    return Self::from_table(
                        format!("indicator[{window}]"),
                        &alphabet,
                        (width - 1) / 2,
                        entries,
                    );
                }
                i -= 1;
                if (ids[i] as usize) + 1 < alphabet.size() {
                    ids[i] += 1;
                    break;
                }
                ids[i] = 0;
            }
        }
    }

    /// Radius-0 constant function.
    pub fn constant(alphabet: &Alphabet, value: f64) -> Self {
        let entries: Vec<_> = (0..alphabet.size() as u8)
            .map(|s| (alphabet.word_from_ids(vec![s]).expect("id in range"), vec![value]))
            .collect();
        Self::from_table(format!("constant[{value}]"), alphabet, 0, entries)
            .expect("constant table is well-formed")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn sup_norm(&self) -> f64 {
        self.sup_norm
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Value on the window `ids`, which must have length `2k+1`.
    pub fn eval_ids(&self, ids: &[u8]) -> Result<&[f64]> {
        self.table.get(ids).map(Vec::as_slice).ok_or_else(|| Error::AbsentWindow {
            window: ids.iter().map(|&i| self.alphabet.label(i)).collect(),
        })
    }
}
