//! Report containers shared by every estimator: series of estimates over
//! declared scales, diagnostic constants, and verdicts that always carry the
//! threshold they were judged against.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One estimate at one scale. `estimate` is a fixed-dimension real vector;
/// `oscillation` is the max-norm spread of the quantity the producing
/// operation declares (over factors, over starts, or against a running
/// bound), and is always nonnegative.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesRow {
    pub scale: usize,
    pub estimate: Vec<f64>,
    pub oscillation: f64,
}

/// A named boolean with the number it judged and the threshold it used.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    pub value: f64,
    pub threshold: f64,
}

impl Verdict {
    pub fn at_most(name: &str, value: f64, threshold: f64) -> Self {
        Verdict { name: name.to_string(), pass: value <= threshold, value, threshold }
    }

    pub fn at_least(name: &str, value: f64, threshold: f64) -> Self {
        Verdict { name: name.to_string(), pass: value >= threshold, value, threshold }
    }
}

/// Diagnostic constants; only the fields the producing operation computed
/// are present.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticSummary {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_est: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e_est: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_est: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa_est: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub linrep_d_est: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub periodic_flag: Option<bool>,
}

/// Output of one estimator run: a labelled series plus optional diagnostics
/// and verdicts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErgodicReport {
    pub label: String,
    pub series: Vec<SeriesRow>,
    #[serde(default)]
    pub diagnostics: DiagnosticSummary,
    #[serde(default)]
    pub verdicts: Vec<Verdict>,
}

impl ErgodicReport {
    pub fn new(label: impl Into<String>) -> Self {
        ErgodicReport {
            label: label.into(),
            series: Vec::new(),
            diagnostics: DiagnosticSummary::default(),
            verdicts: Vec::new(),
        }
    }

    pub fn push_row(&mut self, scale: usize, estimate: Vec<f64>, oscillation: f64) {
        debug_assert!(oscillation >= 0.0);
        self.series.push(SeriesRow { scale, estimate, oscillation });
    }

    /// Last row of the series, if any.
    pub fn terminal(&self) -> Option<&SeriesRow> {
        self.series.last()
    }

    /// Scales strictly increasing, oscillations nonnegative.
    pub fn validate(&self) -> Result<()> {
        for pair in self.series.windows(2) {
            if pair[1].scale <= pair[0].scale {
                return Err(Error::InvalidInput(format!(
                    "series scales not strictly increasing at {}",
                    pair[1].scale
                )));
            }
        }
        if let Some(row) = self.series.iter().find(|r| r.oscillation < 0.0) {
            return Err(Error::InvalidInput(format!(
                "negative oscillation at scale {}",
                row.scale
            )));
        }
        Ok(())
    }
}

/// Check a scales list: nonempty, strictly increasing, within the sample.
pub(crate) fn check_scales(scales: &[usize], sample_len: usize) -> Result<()> {
    if scales.is_empty() {
        return Err(Error::InvalidInput("scales list is empty".into()));
    }
    if scales[0] == 0 {
        return Err(Error::InvalidInput("scales must be positive".into()));
    }
    for pair in scales.windows(2) {
        if pair[1] <= pair[0] {
            return Err(Error::InvalidInput(
                "scales must be strictly increasing".into(),
            ));
        }
    }
    let max = *scales.last().expect("nonempty");
    if max > sample_len {
        return Err(Error::InvalidInput(format!(
            "scale {max} exceeds the sample length {sample_len}"
        )));
    }
    Ok(())
}
