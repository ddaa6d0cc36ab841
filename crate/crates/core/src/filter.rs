//! The per-event filter interface shared by the baselines and SeqXFilter.

use thiserror::Error;

use crate::event::{BoundsError, Event, Label, LabeledEvent};

/// A streaming denoising filter: classifies each event as real or noise and
/// updates its internal state as a side effect.
///
/// Filters drop events, they never reorder or fabricate them; callers keep
/// the REAL verdicts to obtain the filtered stream.
pub trait EventFilter {
    /// Classify `event` and update the filter state.
    fn check(&mut self, event: Event) -> Result<Label, BoundsError>;
}

/// Error from [`run_filter`], carrying the index of the offending event.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("event {index}: {source}")]
pub struct FilterRunError {
    pub index: usize,
    #[source]
    pub source: BoundsError,
}

/// Runs `filter` over `events`, tagging every event with its verdict.
/// One labeled event per input event, order preserved.
pub fn run_filter<F: EventFilter + ?Sized>(
    filter: &mut F,
    events: &[Event],
) -> Result<Vec<LabeledEvent>, FilterRunError> {
    let mut labeled = Vec::with_capacity(events.len());
    for (index, &event) in events.iter().enumerate() {
        let label = filter
            .check(event)
            .map_err(|source| FilterRunError { index, source })?;
        labeled.push(LabeledEvent::new(event, label));
    }
    Ok(labeled)
}

/// The filtered stream: events whose label is REAL, in input order.
pub fn real_events(labeled: &[LabeledEvent]) -> Vec<Event> {
    labeled
        .iter()
        .filter(|le| le.is_real())
        .map(|le| le.event)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::event::Polarity;

    /// Stub that passes everything.
    struct PassAll;

    impl EventFilter for PassAll {
        fn check(&mut self, _event: Event) -> Result<Label, BoundsError> {
            Ok(Label::Real)
        }
    }

    #[test]
    fn empty_stream_yields_empty_labels() {
        let labeled = run_filter(&mut PassAll, &[]).unwrap();
        assert!(labeled.is_empty());
    }

    #[test]
    fn pass_all_stub_labels_everything_real() {
        let events = vec![
            Event::new(1, 0, 0, Polarity::On),
            Event::new(2, 1, 1, Polarity::Off),
        ];
        let labeled = run_filter(&mut PassAll, &events).unwrap();
        assert_eq!(labeled.len(), events.len());
        assert!(labeled.iter().all(|le| le.is_real()));
        assert_eq!(real_events(&labeled), events);
    }
}
