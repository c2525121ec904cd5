//! Confusion accounting, evaluation metrics, the efficacy predicate, and the
//! popcount baseline detector.
//!
//! The positive class is always the encapsulated-VPN class (label 1). Metrics
//! with a zero denominator are surfaced as `None` rather than silently mapped
//! to 0, so a degenerate evaluation can never satisfy the efficacy predicate
//! by accident.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MetricsError {
    #[error("prediction and truth lengths differ: {predictions} vs {truth}")]
    LengthMismatch { predictions: usize, truth: usize },
    #[error("empty input")]
    Empty,
    #[error("confusion counts are all zero")]
    EmptyCounts,
    #[error("metric {0} is undefined (zero denominator)")]
    UndefinedMetric(&'static str),
}

/// TP/FP/TN/FN tallies for one evaluation run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ConfusionCounts {
    pub true_positives: u64,
    pub false_positives: u64,
    pub true_negatives: u64,
    pub false_negatives: u64,
}

impl ConfusionCounts {
    pub fn total(&self) -> u64 {
        self.true_positives + self.false_positives + self.true_negatives + self.false_negatives
    }

    /// Merge partial tallies (confusion counting distributes over partitions).
    pub fn merge(&self, other: &ConfusionCounts) -> ConfusionCounts {
        ConfusionCounts {
            true_positives: self.true_positives + other.true_positives,
            false_positives: self.false_positives + other.false_positives,
            true_negatives: self.true_negatives + other.true_negatives,
            false_negatives: self.false_negatives + other.false_negatives,
        }
    }
}

/// Tally confusion counts for binary labels. Label 1 is the positive class;
/// any other value counts as negative.
pub fn confusion(predictions: &[u8], truth: &[u8]) -> Result<ConfusionCounts, MetricsError> {
    if predictions.len() != truth.len() {
        return Err(MetricsError::LengthMismatch {
            predictions: predictions.len(),
            truth: truth.len(),
        });
    }
    if predictions.is_empty() {
        return Err(MetricsError::Empty);
    }
    let mut c = ConfusionCounts::default();
    for (&p, &t) in predictions.iter().zip(truth) {
        match (p == 1, t == 1) {
            (true, true) => c.true_positives += 1,
            (true, false) => c.false_positives += 1,
            (false, false) => c.true_negatives += 1,
            (false, true) => c.false_negatives += 1,
        }
    }
    Ok(c)
}

/// The five evaluation metrics plus the efficacy verdict.
///
/// `accuracy` is always defined for a non-empty evaluation; the four ratio
/// metrics are `None` when their denominator is zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricsReport {
    pub accuracy: Option<f64>,
    pub precision: Option<f64>,
    pub recall: Option<f64>,
    pub collateral_damage: Option<f64>,
    pub f1: Option<f64>,
    pub effective: bool,
    pub counts: ConfusionCounts,
}

/// F1 threshold of the efficacy predicate (strict).
pub const EFFECTIVE_F1_MIN: f64 = 0.95;
/// Collateral-damage threshold of the efficacy predicate (strict).
pub const EFFECTIVE_COLLATERAL_MAX: f64 = 0.01;

fn ratio(numerator: u64, denominator: u64) -> Option<f64> {
    if denominator == 0 {
        None
    } else {
        Some(numerator as f64 / denominator as f64)
    }
}

/// Compute all metrics from confusion counts.
///
/// A = (TP+TN)/total, P = TP/(TP+FP), R = TP/(TP+FN), C = FP/(FP+TN),
/// F1 = 2TP/(2TP+FP+FN). The efficacy verdict is computed only when F1 and C
/// are both defined; otherwise it is `false`.
pub fn compute_metrics(c: &ConfusionCounts) -> Result<MetricsReport, MetricsError> {
    if c.total() == 0 {
        return Err(MetricsError::EmptyCounts);
    }
    let report = MetricsReport {
        accuracy: ratio(c.true_positives + c.true_negatives, c.total()),
        precision: ratio(c.true_positives, c.true_positives + c.false_positives),
        recall: ratio(c.true_positives, c.true_positives + c.false_negatives),
        collateral_damage: ratio(c.false_positives, c.false_positives + c.true_negatives),
        f1: ratio(
            2 * c.true_positives,
            2 * c.true_positives + c.false_positives + c.false_negatives,
        ),
        effective: false,
        counts: *c,
    };
    Ok(MetricsReport {
        effective: is_effective(&report).unwrap_or(false),
        ..report
    })
}

/// The efficacy predicate: F1 > 0.95 and C < 0.01, strict inequalities.
///
/// Errors with `UndefinedMetric` when either input metric is undefined.
pub fn is_effective(m: &MetricsReport) -> Result<bool, MetricsError> {
    let f1 = m.f1.ok_or(MetricsError::UndefinedMetric("f1"))?;
    let c = m
        .collateral_damage
        .ok_or(MetricsError::UndefinedMetric("collateral_damage"))?;
    Ok(f1 > EFFECTIVE_F1_MIN && c < EFFECTIVE_COLLATERAL_MAX)
}

/// F1 as the harmonic mean of precision and recall, 2/(R⁻¹ + P⁻¹).
///
/// Defined only when both precision and recall are defined and positive; the
/// count form in [`compute_metrics`] covers the remaining edge cases.
pub fn harmonic_f1(precision: f64, recall: f64) -> Option<f64> {
    if precision > 0.0 && recall > 0.0 {
        Some(2.0 / (1.0 / recall + 1.0 / precision))
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// Popcount baseline detector
// ---------------------------------------------------------------------------

/// Average number of set bits per byte.
pub fn avg_popcount(packet: &[u8]) -> Result<f64, MetricsError> {
    if packet.is_empty() {
        return Err(MetricsError::Empty);
    }
    let set_bits: u64 = packet.iter().map(|b| u64::from(b.count_ones() as u8)).sum();
    Ok(set_bits as f64 / packet.len() as f64)
}

/// The popcount blocking rule: block when the average set-bit count per byte
/// falls inside `[low, high]`, endpoints inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PopcountRule {
    pub low: f64,
    pub high: f64,
}

impl Default for PopcountRule {
    fn default() -> Self {
        PopcountRule { low: 3.4, high: 4.6 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PopcountVerdict {
    pub avg_popcount: f64,
    pub blocked: bool,
    pub thresholds: (f64, f64),
}

impl PopcountRule {
    pub fn verdict(&self, packet: &[u8]) -> Result<PopcountVerdict, MetricsError> {
        let avg = avg_popcount(packet)?;
        Ok(PopcountVerdict {
            avg_popcount: avg,
            blocked: self.low <= avg && avg <= self.high,
            thresholds: (self.low, self.high),
        })
    }
}

/// Verdict under the default thresholds [3.4, 4.6].
pub fn popcount_block(packet: &[u8]) -> Result<PopcountVerdict, MetricsError> {
    PopcountRule::default().verdict(packet)
}

// ---------------------------------------------------------------------------
// Report serialization
// ---------------------------------------------------------------------------

pub const CSV_HEADER: &str = "algorithm,accuracy,precision,recall,collateral_damage,f1,effective,tp,fp,tn,fn,seed";

fn fmt_opt(v: Option<f64>) -> String {
    match v {
        Some(x) => format!("{x:.8}"),
        None => String::new(),
    }
}

impl MetricsReport {
    /// One CSV data row matching [`CSV_HEADER`]. Undefined metrics serialize
    /// as empty cells.
    pub fn csv_row(&self, algorithm: &str, seed: u64) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            algorithm,
            fmt_opt(self.accuracy),
            fmt_opt(self.precision),
            fmt_opt(self.recall),
            fmt_opt(self.collateral_damage),
            fmt_opt(self.f1),
            self.effective,
            self.counts.true_positives,
            self.counts.false_positives,
            self.counts.true_negatives,
            self.counts.false_negatives,
            seed,
        )
    }
}

/// Human-readable metrics table for a set of named reports.
pub fn render_table(rows: &[(String, MetricsReport)]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<20} {:>10} {:>10} {:>10} {:>10} {:>10} {:>9}\n",
        "algorithm", "A", "P", "R", "C", "F1", "effective"
    ));
    for (name, m) in rows {
        let cell = |v: Option<f64>| match v {
            Some(x) => format!("{x:.6}"),
            None => "n/a".to_string(),
        };
        out.push_str(&format!(
            "{:<20} {:>10} {:>10} {:>10} {:>10} {:>10} {:>9}\n",
            name,
            cell(m.accuracy),
            cell(m.precision),
            cell(m.recall),
            cell(m.collateral_damage),
            cell(m.f1),
            m.effective,
        ));
    }
    out
}
