//! The aggregation-function selection study: histogram the f-values of
//! labeled events per aggregation mode and apply the three selection rules.
//!
//! For each event past warm-up, f is evaluated over the distances to the X
//! previous raw events (same window semantics as the filter itself) and the
//! event's label decides which histogram the value lands in. A good mode
//! piles real events into the first bin and pushes noise away from it:
//!
//!   rule i  — the first bin must be the mode of the real-event distribution;
//!   rule ii — survivors are ranked by the first-bin real:noise ratio;
//!   rule iii — near-ties (within a relative tolerance) are broken by the
//!              first-bin real count.

use std::fmt;
use std::io::{self, Write};

use thiserror::Error;

use crate::event::{LabeledEvent, SensorGeometry};
use crate::seqx::{aggregate, spatial_distance, AggregateError, Aggregation};

/// Default histogram binning: 20 uniform bins over [0, 0.5] plus overflow.
pub const DEFAULT_BINS: usize = 20;
/// Default histogram range.
pub const DEFAULT_RANGE: (f64, f64) = (0.0, 0.5);
/// Default relative tolerance under which two first-bin ratios count as
/// "similar" for rule iii.
pub const DEFAULT_TIE_TOLERANCE: f64 = 0.05;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalysisError {
    #[error("need at least 2 bins, got {0}")]
    TooFewBins(usize),
    #[error("histogram range must satisfy lo < hi")]
    InvalidRange,
    #[error("no events remain past the {0}-event warm-up")]
    EmptyAfterWarmup(usize),
    #[error("no histograms to select from")]
    NoHistograms,
    #[error("histograms do not share one binning")]
    BinningMismatch,
    #[error(transparent)]
    Aggregate(#[from] AggregateError),
}

/// Per-bin real/noise counts. The counts arrays hold one extra trailing
/// slot: the overflow bin for f-values outside the configured range, so
/// totals always conserve the labeled input size minus warm-up.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitHistogram {
    bin_edges: Vec<f64>,
    real_counts: Vec<u64>,
    noise_counts: Vec<u64>,
}

impl SplitHistogram {
    /// Number of regular (non-overflow) bins.
    pub fn bins(&self) -> usize {
        self.bin_edges.len() - 1
    }

    /// Ascending boundaries of the regular bins (`bins() + 1` values).
    pub fn bin_edges(&self) -> &[f64] {
        &self.bin_edges
    }

    /// Real-event counts per bin; the last entry is the overflow bin.
    pub fn real_counts(&self) -> &[u64] {
        &self.real_counts
    }

    /// Noise-event counts per bin; the last entry is the overflow bin.
    pub fn noise_counts(&self) -> &[u64] {
        &self.noise_counts
    }

    /// (real, noise) counts of the first bin.
    pub fn first_bin(&self) -> (u64, u64) {
        (self.real_counts[0], self.noise_counts[0])
    }

    pub fn total(&self) -> u64 {
        self.real_counts.iter().sum::<u64>() + self.noise_counts.iter().sum::<u64>()
    }

    pub fn same_binning(&self, other: &SplitHistogram) -> bool {
        self.bin_edges == other.bin_edges
    }

    /// CSV rows `bin_lo,bin_hi,real_count,noise_count`; the overflow bin
    /// prints with `inf` as its upper edge.
    pub fn write_csv<W: Write>(&self, mut sink: W) -> io::Result<()> {
        writeln!(sink, "bin_lo,bin_hi,real_count,noise_count")?;
        for i in 0..self.bins() {
            writeln!(
                sink,
                "{},{},{},{}",
                self.bin_edges[i],
                self.bin_edges[i + 1],
                self.real_counts[i],
                self.noise_counts[i]
            )?;
        }
        writeln!(
            sink,
            "{},inf,{},{}",
            self.bin_edges[self.bins()],
            self.real_counts[self.bins()],
            self.noise_counts[self.bins()]
        )?;
        Ok(())
    }
}

/// Histograms the f-values of every labeled event past warm-up.
pub fn build_histogram(
    labeled: &[LabeledEvent],
    geom: SensorGeometry,
    window_length: usize,
    mode: &Aggregation,
    bins: usize,
    range: (f64, f64),
) -> Result<SplitHistogram, AnalysisError> {
    if bins < 2 {
        return Err(AnalysisError::TooFewBins(bins));
    }
    let (lo, hi) = range;
    if !(lo < hi) {
        return Err(AnalysisError::InvalidRange);
    }
    if labeled.len() <= window_length {
        return Err(AnalysisError::EmptyAfterWarmup(window_length));
    }

    let bin_width = (hi - lo) / bins as f64;
    let bin_edges: Vec<f64> = (0..=bins).map(|i| lo + bin_width * i as f64).collect();
    let mut real_counts = vec![0u64; bins + 1];
    let mut noise_counts = vec![0u64; bins + 1];

    let mut distances = vec![0.0; window_length];
    for (i, le) in labeled.iter().enumerate().skip(window_length) {
        for (j, d) in distances.iter_mut().enumerate() {
            *d = spatial_distance(le.event, labeled[i - 1 - j].event, geom);
        }
        let value = aggregate(&distances, mode)?;
        let bin = if value >= lo && value < hi {
            let idx = ((value - lo) / bin_width) as usize;
            idx.min(bins - 1) // guard the hi-boundary rounding edge
        } else {
            bins // overflow
        };
        if le.is_real() {
            real_counts[bin] += 1;
        } else {
            noise_counts[bin] += 1;
        }
    }

    Ok(SplitHistogram {
        bin_edges,
        real_counts,
        noise_counts,
    })
}

/// Audit record for one aggregation mode.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionAudit {
    pub mode: Aggregation,
    pub first_bin_real: u64,
    pub first_bin_noise: u64,
    /// First-bin real:noise ratio; infinite when the first bin holds real
    /// events but no noise, zero when it holds no real events.
    pub real_ratio: f64,
    /// Rule i: the first bin is a maximum of the real-event distribution.
    pub rule1_pass: bool,
    /// Rank by ratio among the rule-i survivors (1 = best); `None` for
    /// modes eliminated by rule i.
    pub rule2_rank: Option<usize>,
    /// Final rank after rule-iii tie-breaking; the selected mode ranks 1.
    pub rule3_rank: Option<usize>,
}

/// Outcome of the three selection rules, with the full audit trail.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleVerdict {
    pub per_function: Vec<FunctionAudit>,
    /// Index into `per_function` of the winning mode.
    pub selected: usize,
    /// True when no mode passed rule i and the ranking fell back to rule ii
    /// over all modes.
    pub rule1_fallback: bool,
    pub tie_tolerance: f64,
}

impl RuleVerdict {
    pub fn selected_mode(&self) -> &Aggregation {
        &self.per_function[self.selected].mode
    }
}

impl fmt::Display for RuleVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<6} {:>12} {:>12} {:>12} {:>7} {:>6} {:>6}",
            "mode", "first_real", "first_noise", "ratio", "rule1", "rank2", "rank3"
        )?;
        for audit in &self.per_function {
            let rank = |r: Option<usize>| r.map_or("-".to_string(), |v| v.to_string());
            writeln!(
                f,
                "{:<6} {:>12} {:>12} {:>12.4} {:>7} {:>6} {:>6}",
                audit.mode.name(),
                audit.first_bin_real,
                audit.first_bin_noise,
                audit.real_ratio,
                if audit.rule1_pass { "pass" } else { "fail" },
                rank(audit.rule2_rank),
                rank(audit.rule3_rank),
            )?;
        }
        if self.rule1_fallback {
            writeln!(f, "note: no mode passed rule i; ranked all modes by rule ii")?;
        }
        write!(f, "selected: {}", self.selected_mode().name())
    }
}

fn ratios_similar(a: f64, b: f64, tolerance: f64) -> bool {
    if a.is_infinite() && b.is_infinite() {
        return true;
    }
    if a.is_infinite() || b.is_infinite() {
        return false;
    }
    (a - b).abs() <= tolerance * a.max(b)
}

/// Applies the three selection rules across per-mode histograms sharing one
/// binning. When no mode passes rule i the ranking falls back to rule ii
/// over all modes and the verdict is flagged.
pub fn select_function(
    histograms: &[(Aggregation, SplitHistogram)],
    tie_tolerance: f64,
) -> Result<RuleVerdict, AnalysisError> {
    let Some((_, first)) = histograms.first() else {
        return Err(AnalysisError::NoHistograms);
    };
    if !histograms.iter().all(|(_, h)| h.same_binning(first)) {
        return Err(AnalysisError::BinningMismatch);
    }

    let mut per_function: Vec<FunctionAudit> = histograms
        .iter()
        .map(|(mode, hist)| {
            let (real, noise) = hist.first_bin();
            let max_real = hist.real_counts().iter().copied().max().unwrap_or(0);
            let real_ratio = if real == 0 {
                0.0
            } else if noise == 0 {
                f64::INFINITY
            } else {
                real as f64 / noise as f64
            };
            FunctionAudit {
                mode: mode.clone(),
                first_bin_real: real,
                first_bin_noise: noise,
                real_ratio,
                rule1_pass: real == max_real && real > 0,
                rule2_rank: None,
                rule3_rank: None,
            }
        })
        .collect();

    let mut candidates: Vec<usize> = per_function
        .iter()
        .enumerate()
        .filter(|(_, a)| a.rule1_pass)
        .map(|(i, _)| i)
        .collect();
    let rule1_fallback = candidates.is_empty();
    if rule1_fallback {
        candidates = (0..per_function.len()).collect();
    }

    // Rule ii: rank candidates by first-bin ratio, best first.
    candidates.sort_by(|&a, &b| {
        per_function[b]
            .real_ratio
            .partial_cmp(&per_function[a].real_ratio)
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    for (rank, &i) in candidates.iter().enumerate() {
        per_function[i].rule2_rank = Some(rank + 1);
    }

    // Rule iii: candidates whose ratio is similar to the best are reordered
    // by first-bin real count.
    let best_ratio = per_function[candidates[0]].real_ratio;
    let split = candidates
        .iter()
        .position(|&i| !ratios_similar(per_function[i].real_ratio, best_ratio, tie_tolerance))
        .unwrap_or(candidates.len());
    candidates[..split].sort_by_key(|&i| std::cmp::Reverse(per_function[i].first_bin_real));
    for (rank, &i) in candidates.iter().enumerate() {
        per_function[i].rule3_rank = Some(rank + 1);
    }

    Ok(RuleVerdict {
        selected: candidates[0],
        per_function,
        rule1_fallback,
        tie_tolerance,
    })
}
