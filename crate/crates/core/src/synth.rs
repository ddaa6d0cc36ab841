//! Labeled synthetic event streams: a moving-cluster signal plus uniform
//! background-activity noise, so denoising quality is measurable against
//! ground truth at desk scale.
//!
//! Both event classes arrive as homogeneous Poisson processes (exponential
//! inter-arrival times, the standard model for thermally driven background
//! activity). Sampling is fully pinned so fixed seeds reproduce streams
//! byte for byte: a ChaCha8 generator keyed by the scene seed (the noise
//! process uses `seed ^ NOISE_STREAM_SALT`), uniform doubles taken as the
//! top 53 bits of `next_u64`, exponential intervals by inversion, and
//! integer ranges by `next_u64` modulo the range size.

use thiserror::Error;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::event::{Event, Label, LabeledEvent, Polarity, SensorGeometry};

/// Salt distinguishing the noise RNG stream from the signal stream.
pub const NOISE_STREAM_SALT: u64 = 0x9E37_79B9_7F4A_7C15;

/// Path of the signal cluster's center over time.
#[derive(Debug, Clone, PartialEq)]
pub enum Trajectory {
    /// Horizontal sinusoidal swing around `center`:
    /// `x(t) = cx + amplitude * sin(2*pi*t / period_us)`, `y(t) = cy`.
    Pendulum {
        center: (f64, f64),
        amplitude: f64,
        period_us: f64,
    },
    /// Straight-line motion from `start` at `velocity` pixels per second.
    Linear {
        start: (f64, f64),
        velocity: (f64, f64),
    },
}

impl Trajectory {
    /// Cluster center at time `t_us`.
    pub fn position(&self, t_us: f64) -> (f64, f64) {
        match self {
            Trajectory::Pendulum {
                center,
                amplitude,
                period_us,
            } => {
                let phase = 2.0 * std::f64::consts::PI * t_us / period_us;
                (center.0 + amplitude * phase.sin(), center.1)
            }
            Trajectory::Linear { start, velocity } => (
                start.0 + velocity.0 * t_us / 1e6,
                start.1 + velocity.1 * t_us / 1e6,
            ),
        }
    }

    /// Polarity from the sign of the local motion: ON while the x-velocity
    /// is non-negative (falling back to the y-velocity when x is still).
    fn motion_polarity(&self, t_us: f64) -> Polarity {
        let (vx, vy) = match self {
            Trajectory::Pendulum {
                amplitude,
                period_us,
                ..
            } => {
                let phase = 2.0 * std::f64::consts::PI * t_us / period_us;
                (amplitude * phase.cos(), 0.0)
            }
            Trajectory::Linear { velocity, .. } => *velocity,
        };
        let v = if vx != 0.0 { vx } else { vy };
        if v >= 0.0 {
            Polarity::On
        } else {
            Polarity::Off
        }
    }

    /// Conservative bounding box of the center over `[0, duration_us]`.
    fn bounds(&self, duration_us: u64) -> ((f64, f64), (f64, f64)) {
        match self {
            Trajectory::Pendulum {
                center, amplitude, ..
            } => (
                (center.0 - amplitude.abs(), center.0 + amplitude.abs()),
                (center.1, center.1),
            ),
            Trajectory::Linear { start, velocity } => {
                let end = (
                    start.0 + velocity.0 * duration_us as f64 / 1e6,
                    start.1 + velocity.1 * duration_us as f64 / 1e6,
                );
                (
                    (start.0.min(end.0), start.0.max(end.0)),
                    (start.1.min(end.1), start.1.max(end.1)),
                )
            }
        }
    }
}

/// Parameters of one synthetic scene.
#[derive(Debug, Clone, PartialEq)]
pub struct SceneConfig {
    pub geom: SensorGeometry,
    pub duration_us: u64,
    /// Signal events per second emitted by the object.
    pub signal_rate: f64,
    /// Background-activity events per second over the whole array.
    pub noise_rate: f64,
    pub trajectory: Trajectory,
    /// Signal events land uniformly within this Chebyshev radius of the
    /// trajectory position.
    pub cluster_radius: u16,
    pub seed: u64,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SynthError {
    #[error("event rates must be finite and >= 0")]
    InvalidRate,
    #[error(
        "trajectory leaves the sensor: center range x [{x_min:.1}, {x_max:.1}], \
         y [{y_min:.1}, {y_max:.1}] with cluster radius {radius} exceeds {width}x{height}"
    )]
    TrajectoryOutOfBounds {
        x_min: f64,
        x_max: f64,
        y_min: f64,
        y_max: f64,
        radius: u16,
        width: u16,
        height: u16,
    },
    #[error("truth and verdict sequences differ in length: {truth} vs {verdicts}")]
    LengthMismatch { truth: usize, verdicts: usize },
}

/// Uniform double in [0, 1) from the top 53 bits of `next_u64`.
fn unit_f64(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Exponential inter-arrival time in microseconds for `rate` events/second.
fn exp_interval_us(rng: &mut ChaCha8Rng, rate_per_sec: f64) -> f64 {
    // 1 - u is in (0, 1], so the logarithm is finite.
    -(1.0 - unit_f64(rng)).ln() * 1e6 / rate_per_sec
}

fn uniform_u64(rng: &mut ChaCha8Rng, n: u64) -> u64 {
    rng.next_u64() % n
}

fn check_bounds(cfg: &SceneConfig) -> Result<(), SynthError> {
    let ((x_min, x_max), (y_min, y_max)) = cfg.trajectory.bounds(cfg.duration_us);
    let r = cfg.cluster_radius as f64;
    let out = |lo: f64, hi: f64, limit: u16| {
        lo.round() - r < 0.0 || hi.round() + r > (limit - 1) as f64
    };
    if out(x_min, x_max, cfg.geom.width()) || out(y_min, y_max, cfg.geom.height()) {
        return Err(SynthError::TrajectoryOutOfBounds {
            x_min,
            x_max,
            y_min,
            y_max,
            radius: cfg.cluster_radius,
            width: cfg.geom.width(),
            height: cfg.geom.height(),
        });
    }
    Ok(())
}

/// Poisson arrival times in microseconds over `[0, duration_us)`.
fn arrival_times(rng: &mut ChaCha8Rng, rate_per_sec: f64, duration_us: u64) -> Vec<f64> {
    let mut times = Vec::new();
    if rate_per_sec <= 0.0 {
        return times;
    }
    let mut t = 0.0f64;
    loop {
        t += exp_interval_us(rng, rate_per_sec);
        if t >= duration_us as f64 {
            return times;
        }
        times.push(t);
    }
}

/// Generates the labeled stream for `cfg`: signal events (REAL) clustered
/// on the trajectory, noise events (NOISE) uniform over the array, merged
/// in timestamp order (signal first on ties). Deterministic given the seed.
pub fn generate(cfg: &SceneConfig) -> Result<Vec<LabeledEvent>, SynthError> {
    if !(cfg.signal_rate >= 0.0) || !(cfg.noise_rate >= 0.0) {
        return Err(SynthError::InvalidRate);
    }
    check_bounds(cfg)?;

    let mut signal_rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut noise_rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ NOISE_STREAM_SALT);

    let diameter = 2 * cfg.cluster_radius as u64 + 1;
    let signal: Vec<LabeledEvent> = arrival_times(&mut signal_rng, cfg.signal_rate, cfg.duration_us)
        .into_iter()
        .map(|t| {
            let (cx, cy) = cfg.trajectory.position(t);
            let off_x = uniform_u64(&mut signal_rng, diameter) as i64 - cfg.cluster_radius as i64;
            let off_y = uniform_u64(&mut signal_rng, diameter) as i64 - cfg.cluster_radius as i64;
            let x = (cx.round() as i64 + off_x) as u16;
            let y = (cy.round() as i64 + off_y) as u16;
            let event = Event::new(t as u64, x, y, cfg.trajectory.motion_polarity(t));
            LabeledEvent::new(event, Label::Real)
        })
        .collect();

    let noise: Vec<LabeledEvent> = arrival_times(&mut noise_rng, cfg.noise_rate, cfg.duration_us)
        .into_iter()
        .map(|t| {
            let x = uniform_u64(&mut noise_rng, cfg.geom.width() as u64) as u16;
            let y = uniform_u64(&mut noise_rng, cfg.geom.height() as u64) as u16;
            let p = if noise_rng.next_u64() & 1 == 1 {
                Polarity::On
            } else {
                Polarity::Off
            };
            LabeledEvent::new(Event::new(t as u64, x, y, p), Label::Noise)
        })
        .collect();

    // Merge the two sorted streams; signal wins timestamp ties.
    let mut merged = Vec::with_capacity(signal.len() + noise.len());
    let (mut i, mut j) = (0, 0);
    while i < signal.len() && j < noise.len() {
        if signal[i].event.t <= noise[j].event.t {
            merged.push(signal[i]);
            i += 1;
        } else {
            merged.push(noise[j]);
            j += 1;
        }
    }
    merged.extend_from_slice(&signal[i..]);
    merged.extend_from_slice(&noise[j..]);
    Ok(merged)
}

/// Confusion-matrix counts with REAL as the positive class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DetectionScore {
    pub true_positives: u64,
    pub false_positives: u64,
    pub true_negatives: u64,
    pub false_negatives: u64,
}

impl DetectionScore {
    fn rate(num: u64, den: u64) -> f64 {
        if den == 0 {
            0.0
        } else {
            num as f64 / den as f64
        }
    }

    /// Fraction of real events passed (alias: recall). 0 when the truth
    /// holds no real events.
    pub fn true_positive_rate(&self) -> f64 {
        Self::rate(self.true_positives, self.true_positives + self.false_negatives)
    }

    pub fn recall(&self) -> f64 {
        self.true_positive_rate()
    }

    /// Fraction of noise events passed. 0 when the truth holds no noise.
    pub fn false_positive_rate(&self) -> f64 {
        Self::rate(self.false_positives, self.false_positives + self.true_negatives)
    }

    /// Fraction of passed events that are real. 0 when nothing passed.
    pub fn precision(&self) -> f64 {
        Self::rate(self.true_positives, self.true_positives + self.false_positives)
    }
}

/// Scores filter verdicts against ground-truth labels.
pub fn score(truth: &[LabeledEvent], verdicts: &[Label]) -> Result<DetectionScore, SynthError> {
    if truth.len() != verdicts.len() {
        return Err(SynthError::LengthMismatch {
            truth: truth.len(),
            verdicts: verdicts.len(),
        });
    }
    let mut s = DetectionScore::default();
    for (le, v) in truth.iter().zip(verdicts) {
        match (le.label, v) {
            (Label::Real, Label::Real) => s.true_positives += 1,
            (Label::Real, Label::Noise) => s.false_negatives += 1,
            (Label::Noise, Label::Real) => s.false_positives += 1,
            (Label::Noise, Label::Noise) => s.true_negatives += 1,
        }
    }
    Ok(s)
}
