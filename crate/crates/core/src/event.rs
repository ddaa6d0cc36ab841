//! Core event, label, and sensor-geometry types shared by every module.

use thiserror::Error;

/// Event polarity: `On` for a log-intensity increase, `Off` for a decrease.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarity {
    On,
    Off,
}

/// A single DVS event.
///
/// Timestamps are microseconds. Within one stream they are non-decreasing;
/// equal timestamps between consecutive events are allowed (sensors emit
/// bursts within one tick).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Event {
    /// Timestamp in microseconds.
    pub t: u64,
    /// Pixel column, 0-based.
    pub x: u16,
    /// Pixel row, 0-based.
    pub y: u16,
    /// Polarity. Carried through all filters but ignored by every
    /// correlation test.
    pub p: Polarity,
}

impl Event {
    pub fn new(t: u64, x: u16, y: u16, p: Polarity) -> Self {
        Self { t, x, y, p }
    }
}

/// Sensor output dimensions: `width` and `height` are the M and N used to
/// normalize spatial distances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SensorGeometry {
    width: u16,
    height: u16,
}

impl SensorGeometry {
    /// Panics if either dimension is zero.
    pub fn new(width: u16, height: u16) -> Self {
        assert!(width >= 1 && height >= 1, "sensor dimensions must be >= 1");
        Self { width, height }
    }

    pub fn width(&self) -> u16 {
        self.width
    }

    pub fn height(&self) -> u16 {
        self.height
    }

    pub fn pixel_count(&self) -> usize {
        self.width as usize * self.height as usize
    }

    pub fn contains(&self, x: u16, y: u16) -> bool {
        x < self.width && y < self.height
    }

    /// Checks an event's coordinates against this geometry.
    pub fn check(&self, event: &Event) -> Result<(), BoundsError> {
        if self.contains(event.x, event.y) {
            Ok(())
        } else {
            Err(BoundsError {
                x: event.x,
                y: event.y,
                width: self.width,
                height: self.height,
            })
        }
    }
}

/// Real-vs-noise tag for one event.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    Real,
    Noise,
}

/// An event together with its real/noise tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LabeledEvent {
    pub event: Event,
    pub label: Label,
}

impl LabeledEvent {
    pub fn new(event: Event, label: Label) -> Self {
        Self { event, label }
    }

    pub fn is_real(&self) -> bool {
        self.label == Label::Real
    }
}

/// An event whose coordinates fall outside the declared sensor area.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("event at ({x}, {y}) is outside the {width}x{height} sensor area")]
pub struct BoundsError {
    pub x: u16,
    pub y: u16,
    pub width: u16,
    pub height: u16,
}

/// The kind of stream-invariant violation found by [`validate_stream`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    XOutOfBounds { x: u16, width: u16 },
    YOutOfBounds { y: u16, height: u16 },
    TimestampDecrease { prev: u64, curr: u64 },
}

/// First violation in a stream, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub index: usize,
    pub kind: ViolationKind,
}

/// Result of [`validate_stream`]: how many events were examined and the
/// first violation encountered, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValidationReport {
    pub events_checked: usize,
    pub first_violation: Option<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.first_violation.is_none()
    }
}

/// Checks bounds and timestamp monotonicity, stopping at the first
/// violation. Violations are reported, not thrown.
pub fn validate_stream(events: &[Event], geom: SensorGeometry) -> ValidationReport {
    let mut prev_t: Option<u64> = None;
    for (index, e) in events.iter().enumerate() {
        let kind = if e.x >= geom.width() {
            Some(ViolationKind::XOutOfBounds {
                x: e.x,
                width: geom.width(),
            })
        } else if e.y >= geom.height() {
            Some(ViolationKind::YOutOfBounds {
                y: e.y,
                height: geom.height(),
            })
        } else {
            match prev_t {
                Some(prev) if e.t < prev => Some(ViolationKind::TimestampDecrease {
                    prev,
                    curr: e.t,
                }),
                _ => None,
            }
        };
        if let Some(kind) = kind {
            return ValidationReport {
                events_checked: index + 1,
                first_violation: Some(Violation { index, kind }),
            };
        }
        prev_t = Some(e.t);
    }
    ValidationReport {
        events_checked: events.len(),
        first_violation: None,
    }
}
