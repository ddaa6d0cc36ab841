//! Property tests over randomized streams: lossless text/binary round-trips
//! and the structural guarantees every filter shares.

use proptest::prelude::*;

use seqx_core::baseline::Bs1Filter;
use seqx_core::event::{validate_stream, Event, Polarity, SensorGeometry};
use seqx_core::filter::run_filter;
use seqx_core::io::{binary_size, read_binary, read_text, write_binary, write_text};
use seqx_core::seqx::{Aggregation, SeqXConfig, SeqXFilter};

fn arb_stream() -> impl Strategy<Value = (SensorGeometry, Vec<Event>)> {
    (2u16..=64, 2u16..=64).prop_flat_map(|(w, h)| {
        let event = (0u64..200, 0..w, 0..h, any::<bool>());
        prop::collection::vec(event, 0..200).prop_map(move |raw| {
            let mut t = 0u64;
            let events = raw
                .into_iter()
                .map(|(dt, x, y, p)| {
                    t += dt;
                    Event::new(t, x, y, if p { Polarity::On } else { Polarity::Off })
                })
                .collect();
            (SensorGeometry::new(w, h), events)
        })
    })
}

proptest! {
    #[test]
    fn text_round_trip_is_lossless((geom, events) in arb_stream()) {
        prop_assert!(validate_stream(&events, geom).is_valid());
        let mut buf = Vec::new();
        write_text(geom, &events, &mut buf).unwrap();
        let (geom_back, events_back) = read_text(buf.as_slice()).unwrap();
        prop_assert_eq!(geom_back, geom);
        prop_assert_eq!(events_back, events);
    }

    #[test]
    fn binary_round_trip_is_lossless_and_sized((geom, events) in arb_stream()) {
        let mut buf = Vec::new();
        write_binary(geom, &events, &mut buf).unwrap();
        prop_assert_eq!(buf.len() as u64, binary_size(events.len() as u64));
        let (geom_back, events_back) = read_binary(buf.as_slice()).unwrap();
        prop_assert_eq!(geom_back, geom);
        prop_assert_eq!(events_back, events);
    }

    #[test]
    fn filters_tag_without_reordering((geom, events) in arb_stream()) {
        let mut bs1 = Bs1Filter::new(geom, 100);
        let labeled = run_filter(&mut bs1, &events).unwrap();
        prop_assert_eq!(labeled.len(), events.len());
        prop_assert!(labeled.iter().zip(&events).all(|(le, e)| le.event == *e));

        let cfg = SeqXConfig::new(2, 0.05, Aggregation::Min).unwrap();
        let mut seqx = SeqXFilter::new(cfg, geom).unwrap();
        let labeled = run_filter(&mut seqx, &events).unwrap();
        prop_assert!(labeled.iter().zip(&events).all(|(le, e)| le.event == *e));
    }
}
