//! Fixed-count accumulation of events into binary 0/255 frames, plus PGM
//! output for visual inspection.

use std::io::{self, Read, Write};

use thiserror::Error;

use crate::event::{Event, SensorGeometry};

/// Default bundle sizes C1/C2/C3; ten times larger on sensors above
/// [`crate::seqx::LARGE_SENSOR_PIXELS`] pixels.
pub fn default_bundle_sizes(geom: SensorGeometry) -> [usize; 3] {
    if geom.pixel_count() > crate::seqx::LARGE_SENSOR_PIXELS {
        [10_000, 30_000, 50_000]
    } else {
        [1_000, 3_000, 5_000]
    }
}

/// An M x N grid whose pixels are exactly 0 or 255. A pixel is activated by
/// any event landing on it; duplicate activations change nothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryFrame {
    geom: SensorGeometry,
    pixels: Vec<u8>,
}

impl BinaryFrame {
    pub fn blank(geom: SensorGeometry) -> Self {
        Self {
            geom,
            pixels: vec![0; geom.pixel_count()],
        }
    }

    pub fn geometry(&self) -> SensorGeometry {
        self.geom
    }

    /// Row-major pixel data, top row first.
    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn get(&self, x: u16, y: u16) -> u8 {
        self.pixels[y as usize * self.geom.width() as usize + x as usize]
    }

    pub fn activate(&mut self, x: u16, y: u16) {
        self.pixels[y as usize * self.geom.width() as usize + x as usize] = 255;
    }

    pub fn active_count(&self) -> usize {
        self.pixels.iter().filter(|&&p| p == 255).count()
    }

    fn from_pixels(geom: SensorGeometry, pixels: Vec<u8>) -> Self {
        debug_assert_eq!(pixels.len(), geom.pixel_count());
        Self { geom, pixels }
    }
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum FrameError {
    #[error("bundle size must be >= 1")]
    ZeroBundleSize,
    #[error("event {index} at ({x}, {y}) is outside the sensor area")]
    OutOfBounds { index: usize, x: u16, y: u16 },
}

/// Accumulates fixed-count event bundles into frames: frame `k` activates
/// exactly the pixels touched by events `[k*count, (k+1)*count)`. Polarity
/// is ignored. A trailing partial bundle is dropped unless `keep_partial`
/// is set (metric comparisons need equal-support frames).
pub fn accumulate_with(
    events: &[Event],
    geom: SensorGeometry,
    count: usize,
    keep_partial: bool,
) -> Result<Vec<BinaryFrame>, FrameError> {
    if count == 0 {
        return Err(FrameError::ZeroBundleSize);
    }
    for (index, e) in events.iter().enumerate() {
        if !geom.contains(e.x, e.y) {
            return Err(FrameError::OutOfBounds {
                index,
                x: e.x,
                y: e.y,
            });
        }
    }
    let chunks: Box<dyn Iterator<Item = &[Event]>> = if keep_partial {
        Box::new(events.chunks(count))
    } else {
        Box::new(events.chunks_exact(count))
    };
    let frames = chunks
        .map(|bundle| {
            let mut frame = BinaryFrame::blank(geom);
            for e in bundle {
                frame.activate(e.x, e.y);
            }
            frame
        })
        .collect();
    Ok(frames)
}

/// [`accumulate_with`] dropping the trailing partial bundle: exactly
/// `len / count` frames.
pub fn accumulate(
    events: &[Event],
    geom: SensorGeometry,
    count: usize,
) -> Result<Vec<BinaryFrame>, FrameError> {
    accumulate_with(events, geom, count, false)
}

/// Writes a binary PGM (P5, maxval 255), row-major, top row first.
pub fn write_pgm<W: Write>(frame: &BinaryFrame, mut sink: W) -> io::Result<()> {
    write!(
        sink,
        "P5\n{} {}\n255\n",
        frame.geom.width(),
        frame.geom.height()
    )?;
    sink.write_all(&frame.pixels)
}

#[derive(Debug, Error)]
pub enum PgmError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("not a P5 PGM file")]
    NotP5,
    #[error("malformed PGM header")]
    MalformedHeader,
    #[error("unsupported maxval {0} (expected 255)")]
    BadMaxval(u32),
    #[error("truncated pixel payload")]
    Truncated,
    #[error("pixel value {0} is neither 0 nor 255")]
    NonBinaryPixel(u8),
}

/// Reads a P5 PGM produced by [`write_pgm`] (or any binary PGM with maxval
/// 255 whose pixels are strictly 0/255). `#` comment lines in the header
/// are tolerated.
pub fn read_pgm<R: Read>(mut source: R) -> Result<BinaryFrame, PgmError> {
    let mut data = Vec::new();
    source.read_to_end(&mut data)?;
    if data.len() < 2 || &data[0..2] != b"P5" {
        return Err(PgmError::NotP5);
    }

    // Header tokens after the magic: width, height, maxval. Whitespace
    // separated, '#' starts a comment running to end of line.
    let mut pos = 2;
    let mut tokens = [0u32; 3];
    for token in tokens.iter_mut() {
        // skip whitespace and comments
        loop {
            match data.get(pos) {
                Some(b) if b.is_ascii_whitespace() => pos += 1,
                Some(b'#') => {
                    while pos < data.len() && data[pos] != b'\n' {
                        pos += 1;
                    }
                }
                Some(_) => break,
                None => return Err(PgmError::MalformedHeader),
            }
        }
        let start = pos;
        while pos < data.len() && data[pos].is_ascii_digit() {
            pos += 1;
        }
        if pos == start {
            return Err(PgmError::MalformedHeader);
        }
        *token = std::str::from_utf8(&data[start..pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or(PgmError::MalformedHeader)?;
    }
    // exactly one whitespace byte separates the header from the payload
    if !data.get(pos).is_some_and(|b| b.is_ascii_whitespace()) {
        return Err(PgmError::MalformedHeader);
    }
    pos += 1;

    let [width, height, maxval] = tokens;
    if maxval != 255 {
        return Err(PgmError::BadMaxval(maxval));
    }
    if width == 0 || height == 0 || width > u16::MAX as u32 || height > u16::MAX as u32 {
        return Err(PgmError::MalformedHeader);
    }
    let geom = SensorGeometry::new(width as u16, height as u16);
    let payload = &data[pos..];
    if payload.len() != geom.pixel_count() {
        return Err(PgmError::Truncated);
    }
    for &p in payload {
        if p != 0 && p != 255 {
            return Err(PgmError::NonBinaryPixel(p));
        }
    }
    Ok(BinaryFrame::from_pixels(geom, payload.to_vec()))
}
