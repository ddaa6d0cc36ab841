//! SeqXFilter: spatio-temporal correlation against a past event window.
//!
//! Instead of a timestamp memory per pixel (bs1), pixel group (bs2), or
//! row/column (bs3), this filter keeps only the x/y coordinates of the `X`
//! most recent events, overwritten circularly. Temporal correlation is
//! implicit in stream order; spatial correlation is an aggregate of the
//! normalized distances between the incoming event and the window contents:
//!
//! ```text
//! D = |dx| / M + |dy| / N            (normalized, in [0, 2))
//! f(D_1, ..., D_X) < sigma  =>  REAL
//! ```
//!
//! State is 32 * X bits of coordinate payload (two 16-bit coordinates per
//! slot) plus the oldest-slot counter, independent of sensor size and
//! stream length.
//!
//! Per event the window is checked and then updated: the new event's
//! coordinates overwrite the oldest slot whether the verdict was REAL or
//! NOISE. Keeping noise events in the window is what lets a real event
//! separated from its predecessor by one noise event still find support in
//! the remaining slots; the opt-in `update_on_real` mode restricts updates
//! to REAL verdicts for experimentation.

use thiserror::Error;

use crate::event::{BoundsError, Event, Label, SensorGeometry};
use crate::filter::EventFilter;

/// Default window length.
pub const DEFAULT_WINDOW: usize = 2;
/// Default spatial threshold.
pub const DEFAULT_SIGMA: f64 = 0.05;
/// Default spatial threshold for large sensors (pixel count above
/// [`LARGE_SENSOR_PIXELS`]).
pub const DEFAULT_SIGMA_LARGE: f64 = 0.005;
/// Pixel-count boundary between the two default thresholds.
pub const LARGE_SENSOR_PIXELS: usize = 300_000;

/// Reduction applied to the window distances before thresholding.
#[derive(Debug, Clone, PartialEq)]
pub enum Aggregation {
    /// Distance to the closest window event.
    Min,
    /// Distance to the farthest window event.
    Max,
    /// Plain average of the distances.
    Avg,
    /// Weighted average `(D_1*a_1 + ... + D_X*a_X) / X`; the divisor is the
    /// window length, not the weight sum. `a_1` weights the most recent
    /// event.
    WAvg(Vec<f64>),
}

impl Aggregation {
    pub fn name(&self) -> &'static str {
        match self {
            Aggregation::Min => "min",
            Aggregation::Max => "max",
            Aggregation::Avg => "avg",
            Aggregation::WAvg(_) => "wavg",
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("window length must be >= 1")]
    WindowTooShort,
    #[error("sigma must be positive, got {0}")]
    NonPositiveSigma(f64),
    #[error("weighted average needs {expected} weights, got {got}")]
    WeightCountMismatch { expected: usize, got: usize },
    #[error("weighted-average weights must be positive")]
    NonPositiveWeight,
    #[error("the scaled integer path supports min aggregation only")]
    ScaledRequiresMin,
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum AggregateError {
    #[error("cannot aggregate an empty distance list")]
    Empty,
    #[error("expected {expected} distances for the configured weights, got {got}")]
    WeightCountMismatch { expected: usize, got: usize },
}

/// SeqXFilter parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct SeqXConfig {
    /// Window length X, >= 1.
    pub window_length: usize,
    /// Spatial threshold sigma; an event passes when the aggregated
    /// distance is strictly below it.
    pub sigma: f64,
    pub aggregation: Aggregation,
    /// When true, NOISE-verdict events do not enter the window (non-default
    /// variant; the reference behavior stores every event).
    pub update_on_real: bool,
}

impl SeqXConfig {
    pub fn new(
        window_length: usize,
        sigma: f64,
        aggregation: Aggregation,
    ) -> Result<Self, ConfigError> {
        let cfg = Self {
            window_length,
            sigma,
            aggregation,
            update_on_real: false,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// The defaults used throughout: X = 2, min aggregation, sigma 0.05
    /// (0.005 on sensors larger than 300k pixels).
    pub fn default_for(geom: SensorGeometry) -> Self {
        let sigma = if geom.pixel_count() > LARGE_SENSOR_PIXELS {
            DEFAULT_SIGMA_LARGE
        } else {
            DEFAULT_SIGMA
        };
        Self {
            window_length: DEFAULT_WINDOW,
            sigma,
            aggregation: Aggregation::Min,
            update_on_real: false,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.window_length < 1 {
            return Err(ConfigError::WindowTooShort);
        }
        if !(self.sigma > 0.0) {
            return Err(ConfigError::NonPositiveSigma(self.sigma));
        }
        if let Aggregation::WAvg(weights) = &self.aggregation {
            if weights.len() != self.window_length {
                return Err(ConfigError::WeightCountMismatch {
                    expected: self.window_length,
                    got: weights.len(),
                });
            }
            if weights.iter().any(|w| !(*w > 0.0)) {
                return Err(ConfigError::NonPositiveWeight);
            }
        }
        Ok(())
    }

    /// Coordinate payload of the window: 32 * X bits (two 16-bit
    /// coordinates per slot), excluding the counter. Independent of sensor
    /// geometry.
    pub fn state_size_bits(&self) -> u64 {
        32 * self.window_length as u64
    }

    /// Arithmetic cost of one steady-state event on the min path: 3X
    /// additions (two coordinate differences and one combining addition per
    /// slot), X divisions (one normalization per slot), X comparisons (X-1
    /// to fold the minimum plus the threshold test), and 2 writes (the new
    /// event's coordinates). The counter update (an addition and a wrap) is
    /// not included. [`SeqXFilter::check_instrumented`] tallies the same
    /// categories at run time.
    pub fn op_count(&self) -> OpCount {
        let x = self.window_length as u64;
        OpCount {
            additions: 3 * x,
            divisions: x,
            comparisons: x,
            writes: 2,
        }
    }
}

/// Arithmetic operation tally for the instrumented path.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct OpCount {
    pub additions: u64,
    pub divisions: u64,
    pub comparisons: u64,
    pub writes: u64,
}

impl std::ops::Sub for OpCount {
    type Output = OpCount;

    fn sub(self, rhs: OpCount) -> OpCount {
        OpCount {
            additions: self.additions - rhs.additions,
            divisions: self.divisions - rhs.divisions,
            comparisons: self.comparisons - rhs.comparisons,
            writes: self.writes - rhs.writes,
        }
    }
}

/// Default weighted-average weights: (3, 1) for the two-slot window used in
/// the selection study, otherwise descending X..1.
pub fn default_wavg_weights(window_length: usize) -> Vec<f64> {
    if window_length == 2 {
        vec![3.0, 1.0]
    } else {
        (1..=window_length).rev().map(|w| w as f64).collect()
    }
}

/// Normalized spatial distance `|ax - bx| / M + |ay - by| / N`.
pub fn spatial_distance(a: Event, b: Event, geom: SensorGeometry) -> f64 {
    coord_distance(a.x, a.y, b.x, b.y, geom)
}

fn coord_distance(ax: u16, ay: u16, bx: u16, by: u16, geom: SensorGeometry) -> f64 {
    ax.abs_diff(bx) as f64 / geom.width() as f64 + ay.abs_diff(by) as f64 / geom.height() as f64
}

/// Reduces the window distances to one correlation score. `distances` must
/// be ordered most-recent-first so that weighted-average weights line up.
pub fn aggregate(distances: &[f64], mode: &Aggregation) -> Result<f64, AggregateError> {
    if distances.is_empty() {
        return Err(AggregateError::Empty);
    }
    let value = match mode {
        Aggregation::Min => distances.iter().copied().fold(f64::INFINITY, f64::min),
        Aggregation::Max => distances.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        Aggregation::Avg => distances.iter().sum::<f64>() / distances.len() as f64,
        Aggregation::WAvg(weights) => {
            if weights.len() != distances.len() {
                return Err(AggregateError::WeightCountMismatch {
                    expected: weights.len(),
                    got: distances.len(),
                });
            }
            let weighted: f64 = distances.iter().zip(weights).map(|(d, w)| d * w).sum();
            weighted / distances.len() as f64
        }
    };
    Ok(value)
}

/// The filter's entire state: X coordinate pairs plus the oldest-slot
/// counter. Slot count never changes after construction.
#[derive(Debug, Clone)]
pub struct PastEventWindow {
    slots: Vec<(u16, u16)>,
    counter: usize,
    filled: usize,
}

impl PastEventWindow {
    pub fn new(window_length: usize) -> Self {
        assert!(window_length >= 1, "window length must be >= 1");
        Self {
            slots: vec![(0, 0); window_length],
            counter: 0,
            filled: 0,
        }
    }

    /// Window length X.
    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.filled == 0
    }

    /// Slots written so far, saturating at X.
    pub fn filled(&self) -> usize {
        self.filled
    }

    /// Index of the oldest slot (the next to be overwritten).
    pub fn counter(&self) -> usize {
        self.counter
    }

    pub fn is_warm(&self) -> bool {
        self.filled == self.slots.len()
    }

    /// Overwrites the oldest slot and advances the counter (mod X).
    pub fn push(&mut self, x: u16, y: u16) {
        self.slots[self.counter] = (x, y);
        self.counter = (self.counter + 1) % self.slots.len();
        self.filled = (self.filled + 1).min(self.slots.len());
    }

    /// Stored coordinates ordered most-recent-first (j = 1..=X).
    pub fn iter_recent(&self) -> impl Iterator<Item = (u16, u16)> + '_ {
        let x = self.slots.len();
        (1..=x).map(move |j| self.slots[(self.counter + x - j) % x])
    }

    /// Coordinate payload in bits: 32 per slot.
    pub fn size_bits(&self) -> u64 {
        32 * self.slots.len() as u64
    }
}

/// Reference implementation: distances in double precision, verdict by
/// strict comparison of the aggregated score against sigma.
///
/// The first X events of a stream pass unconditionally (warm-up): they have
/// no full window to be checked against, and rejecting them would delete
/// stream onsets.
#[derive(Debug, Clone)]
pub struct SeqXFilter {
    cfg: SeqXConfig,
    geom: SensorGeometry,
    window: PastEventWindow,
    scratch: Vec<f64>,
}

impl SeqXFilter {
    pub fn new(cfg: SeqXConfig, geom: SensorGeometry) -> Result<Self, ConfigError> {
        cfg.validate()?;
        let window = PastEventWindow::new(cfg.window_length);
        let scratch = Vec::with_capacity(cfg.window_length);
        Ok(Self {
            cfg,
            geom,
            window,
            scratch,
        })
    }

    pub fn config(&self) -> &SeqXConfig {
        &self.cfg
    }

    pub fn window(&self) -> &PastEventWindow {
        &self.window
    }

    /// Coordinate payload of the live state, in bits.
    pub fn state_size_bits(&self) -> u64 {
        self.window.size_bits()
    }

    /// Same verdicts as [`EventFilter::check`], evaluated the way the cost
    /// model counts it: per slot one normalization division over the
    /// combined term `(|dx|*N + |dy|*M) / (M*N)` instead of two separate
    /// divisions. Every addition, division, comparison, and write performed
    /// is tallied into `ops` (multiplications by the constant sensor
    /// dimensions and the counter update are outside the model).
    ///
    /// Panics if the aggregation is not [`Aggregation::Min`].
    pub fn check_instrumented(
        &mut self,
        event: Event,
        ops: &mut OpCount,
    ) -> Result<Label, BoundsError> {
        assert!(
            self.cfg.aggregation == Aggregation::Min,
            "instrumented path is defined for min aggregation"
        );
        self.geom.check(&event)?;

        if !self.window.is_warm() {
            self.push_counted(event, ops);
            return Ok(Label::Real);
        }

        let m = self.geom.width() as f64;
        let n = self.geom.height() as f64;
        let mn = m * n;
        let mut min_d = f64::INFINITY;
        let mut first = true;
        for (sx, sy) in self.window.iter_recent() {
            let dx = event.x.abs_diff(sx) as f64;
            ops.additions += 1;
            let dy = event.y.abs_diff(sy) as f64;
            ops.additions += 1;
            let combined = dx * n + dy * m;
            ops.additions += 1;
            let d = combined / mn;
            ops.divisions += 1;
            if first {
                min_d = d;
                first = false;
            } else {
                ops.comparisons += 1;
                if d < min_d {
                    min_d = d;
                }
            }
        }
        ops.comparisons += 1;
        let verdict = if min_d < self.cfg.sigma {
            Label::Real
        } else {
            Label::Noise
        };
        if !self.cfg.update_on_real || verdict == Label::Real {
            self.push_counted(event, ops);
        }
        Ok(verdict)
    }

    fn push_counted(&mut self, event: Event, ops: &mut OpCount) {
        self.window.push(event.x, event.y);
        ops.writes += 2; // slot x and slot y
    }
}

impl EventFilter for SeqXFilter {
    fn check(&mut self, event: Event) -> Result<Label, BoundsError> {
        self.geom.check(&event)?;

        if !self.window.is_warm() {
            self.window.push(event.x, event.y);
            return Ok(Label::Real);
        }

        self.scratch.clear();
        for (sx, sy) in self.window.iter_recent() {
            self.scratch
                .push(coord_distance(event.x, event.y, sx, sy, self.geom));
        }
        let score = aggregate(&self.scratch, &self.cfg.aggregation)
            .expect("window length matches validated config");
        let verdict = if score < self.cfg.sigma {
            Label::Real
        } else {
            Label::Noise
        };
        if !self.cfg.update_on_real || verdict == Label::Real {
            self.window.push(event.x, event.y);
        }
        Ok(verdict)
    }
}

/// Pre-scaled integer threshold for the division-free path:
/// `floor(sigma * M * N)`, compared strictly against `|dx|*N + |dy|*M`.
///
/// The floor is conservative: when `sigma * M * N` is not integral, the
/// only events whose verdict can differ from the double-precision path are
/// those whose scaled distance equals the threshold itself (one integer
/// quantum).
pub fn scaled_threshold(sigma: f64, geom: SensorGeometry) -> u64 {
    (sigma * geom.pixel_count() as f64).floor() as u64
}

/// Division-free variant of [`SeqXFilter`] for min aggregation: distances
/// stay in integer arithmetic and the threshold is pre-scaled once at
/// construction.
#[derive(Debug, Clone)]
pub struct ScaledSeqXFilter {
    geom: SensorGeometry,
    window: PastEventWindow,
    threshold: u64,
    update_on_real: bool,
}

impl ScaledSeqXFilter {
    pub fn new(cfg: SeqXConfig, geom: SensorGeometry) -> Result<Self, ConfigError> {
        cfg.validate()?;
        if cfg.aggregation != Aggregation::Min {
            return Err(ConfigError::ScaledRequiresMin);
        }
        Ok(Self {
            geom,
            window: PastEventWindow::new(cfg.window_length),
            threshold: scaled_threshold(cfg.sigma, geom),
            update_on_real: cfg.update_on_real,
        })
    }

    pub fn threshold(&self) -> u64 {
        self.threshold
    }

    pub fn window(&self) -> &PastEventWindow {
        &self.window
    }
}

impl EventFilter for ScaledSeqXFilter {
    fn check(&mut self, event: Event) -> Result<Label, BoundsError> {
        self.geom.check(&event)?;

        if !self.window.is_warm() {
            self.window.push(event.x, event.y);
            return Ok(Label::Real);
        }

        let m = self.geom.width() as u64;
        let n = self.geom.height() as u64;
        let min_scaled = self
            .window
            .iter_recent()
            .map(|(sx, sy)| event.x.abs_diff(sx) as u64 * n + event.y.abs_diff(sy) as u64 * m)
            .min()
            .expect("window length >= 1");
        let verdict = if min_scaled < self.threshold {
            Label::Real
        } else {
            Label::Noise
        };
        if !self.update_on_real || verdict == Label::Real {
            self.window.push(event.x, event.y);
        }
        Ok(verdict)
    }
}
