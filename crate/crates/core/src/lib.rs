//! Streaming background-activity denoising for event-camera (DVS) data.
//!
//! The centerpiece is [`seqx::SeqXFilter`], a spatio-temporal correlation
//! filter whose entire state is a window of the X most recent event
//! coordinates — constant-size regardless of sensor resolution. Around it:
//!
//! - [`baseline`] — the classic memory-cell nearest-neighbor filters (bs1,
//!   bs2, bs3) for comparison and labeling;
//! - [`io`] — text and binary stream formats plus label sidecars;
//! - [`frame`] — fixed-count accumulation into binary 0/255 frames and PGM
//!   output;
//! - [`metrics`] — PSNR/SSIM between frame sequences from different filters;
//! - [`analysis`] — the aggregation-function selection study;
//! - [`synth`] — labeled synthetic scenes for ground-truth evaluation.

pub mod analysis;
pub mod baseline;
pub mod event;
pub mod filter;
pub mod frame;
pub mod io;
pub mod metrics;
pub mod seqx;
pub mod synth;

pub use event::{Event, Label, LabeledEvent, Polarity, SensorGeometry};
pub use filter::{run_filter, EventFilter};
