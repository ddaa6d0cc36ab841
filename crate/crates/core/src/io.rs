//! Reading and writing event streams in a text format and a compact binary
//! format, plus real/noise label sidecars.
//!
//! Text format (UTF-8, LF line endings):
//!   - line 1: `WIDTH HEIGHT` (decimal, space-separated)
//!   - each following line: `t,x,y,p` with `p` 1 = ON, 0 = OFF
//!
//! Binary format (little-endian throughout):
//!   - magic bytes `EVN1` (0x45 0x56 0x4E 0x31)
//!   - width: u16, height: u16, event_count: u64
//!   - `event_count` records of `{t: u64, x: u16, y: u16, p: u8}` (13 bytes)
//!
//! A labels sidecar holds one character per line, `1` = REAL, `0` = NOISE.

use std::io::{self, BufRead, Read, Write};

use thiserror::Error;

use crate::event::{Event, Label, Polarity, SensorGeometry};

/// Magic bytes opening every binary stream file.
pub const BINARY_MAGIC: [u8; 4] = *b"EVN1";

/// Fixed binary header size in bytes (magic + width + height + count).
pub const BINARY_HEADER_LEN: u64 = 16;

/// Fixed binary record size in bytes.
pub const BINARY_RECORD_LEN: u64 = 13;

/// Exact size in bytes of a binary stream file holding `event_count` events.
pub fn binary_size(event_count: u64) -> u64 {
    BINARY_HEADER_LEN + BINARY_RECORD_LEN * event_count
}

#[derive(Debug, Error)]
pub enum StreamIoError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("missing \"WIDTH HEIGHT\" header line")]
    MissingHeader,
    #[error("line 1: malformed header {0:?} (expected \"WIDTH HEIGHT\", both >= 1)")]
    MalformedHeader(String),
    #[error("line {line}: malformed event record: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("line {line}: {axis} = {value} out of range for declared {axis} limit {limit}")]
    FieldOutOfRange {
        line: usize,
        axis: char,
        value: u16,
        limit: u16,
    },
    #[error("bad magic bytes (expected \"EVN1\")")]
    BadMagic,
    #[error("truncated record {index}")]
    TruncatedRecord { index: u64 },
    #[error("header declares {declared} events but payload holds {actual}")]
    CountMismatch { declared: u64, actual: u64 },
    #[error("record {index}: invalid polarity byte {value:#04x}")]
    InvalidPolarity { index: u64, value: u8 },
    #[error("record {index}: coordinates ({x}, {y}) outside declared {width}x{height} geometry")]
    RecordOutOfRange {
        index: u64,
        x: u16,
        y: u16,
        width: u16,
        height: u16,
    },
    #[error("label line {line}: invalid character (expected '0' or '1')")]
    InvalidLabel { line: usize },
    #[error("label count mismatch: expected {expected}, found {found}")]
    LabelCountMismatch { expected: usize, found: usize },
}

fn parse_header(line: &str) -> Result<SensorGeometry, StreamIoError> {
    let malformed = || StreamIoError::MalformedHeader(line.to_string());
    let mut parts = line.split_whitespace();
    let width: u16 = parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(malformed)?;
    let height: u16 = parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(malformed)?;
    if parts.next().is_some() || width == 0 || height == 0 {
        return Err(malformed());
    }
    Ok(SensorGeometry::new(width, height))
}

/// Reads a text-format stream: geometry from the header line, then all
/// events in file order. Coordinates are checked against the declared
/// geometry; timestamp order is not checked here (see `validate_stream`).
pub fn read_text<R: BufRead>(source: R) -> Result<(SensorGeometry, Vec<Event>), StreamIoError> {
    let mut lines = source.lines();
    let header = match lines.next() {
        Some(line) => line?,
        None => return Err(StreamIoError::MissingHeader),
    };
    let geom = parse_header(header.trim_end_matches('\r'))?;

    let mut events = Vec::new();
    for (i, line) in lines.enumerate() {
        let line_no = i + 2; // header is line 1
        let line = line?;
        let line = line.trim_end_matches('\r');
        let malformed = |reason: &str| StreamIoError::MalformedLine {
            line: line_no,
            reason: reason.to_string(),
        };
        let mut fields = line.split(',');
        let t: u64 = fields
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| malformed("bad timestamp"))?;
        let x: u16 = fields
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| malformed("bad x"))?;
        let y: u16 = fields
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| malformed("bad y"))?;
        let p = match fields.next() {
            Some("1") => Polarity::On,
            Some("0") => Polarity::Off,
            _ => return Err(malformed("bad polarity (expected 0 or 1)")),
        };
        if fields.next().is_some() {
            return Err(malformed("trailing fields"));
        }
        if x >= geom.width() {
            return Err(StreamIoError::FieldOutOfRange {
                line: line_no,
                axis: 'x',
                value: x,
                limit: geom.width(),
            });
        }
        if y >= geom.height() {
            return Err(StreamIoError::FieldOutOfRange {
                line: line_no,
                axis: 'y',
                value: y,
                limit: geom.height(),
            });
        }
        events.push(Event::new(t, x, y, p));
    }
    Ok((geom, events))
}

/// Writes a text-format stream; `read_text` reproduces it exactly.
pub fn write_text<W: Write>(
    geom: SensorGeometry,
    events: &[Event],
    mut sink: W,
) -> io::Result<()> {
    writeln!(sink, "{} {}", geom.width(), geom.height())?;
    for e in events {
        let p = match e.p {
            Polarity::On => 1,
            Polarity::Off => 0,
        };
        writeln!(sink, "{},{},{},{}", e.t, e.x, e.y, p)?;
    }
    Ok(())
}

/// Reads a binary-format stream (format at module level).
pub fn read_binary<R: Read>(mut source: R) -> Result<(SensorGeometry, Vec<Event>), StreamIoError> {
    let mut header = [0u8; 16];
    source
        .read_exact(&mut header)
        .map_err(|_| StreamIoError::BadMagic)?;
    if header[0..4] != BINARY_MAGIC {
        return Err(StreamIoError::BadMagic);
    }
    let width = u16::from_le_bytes([header[4], header[5]]);
    let height = u16::from_le_bytes([header[6], header[7]]);
    if width == 0 || height == 0 {
        return Err(StreamIoError::MalformedHeader(format!("{width} {height}")));
    }
    let geom = SensorGeometry::new(width, height);
    let declared = u64::from_le_bytes(header[8..16].try_into().unwrap());

    let mut payload = Vec::new();
    source.read_to_end(&mut payload)?;
    let whole_records = payload.len() as u64 / BINARY_RECORD_LEN;
    if payload.len() as u64 % BINARY_RECORD_LEN != 0 {
        if whole_records < declared {
            return Err(StreamIoError::TruncatedRecord {
                index: whole_records,
            });
        }
        return Err(StreamIoError::CountMismatch {
            declared,
            actual: whole_records,
        });
    }
    if whole_records != declared {
        return Err(StreamIoError::CountMismatch {
            declared,
            actual: whole_records,
        });
    }

    let mut events = Vec::with_capacity(declared as usize);
    for (index, record) in payload.chunks_exact(BINARY_RECORD_LEN as usize).enumerate() {
        let t = u64::from_le_bytes(record[0..8].try_into().unwrap());
        let x = u16::from_le_bytes([record[8], record[9]]);
        let y = u16::from_le_bytes([record[10], record[11]]);
        let p = match record[12] {
            1 => Polarity::On,
            0 => Polarity::Off,
            value => {
                return Err(StreamIoError::InvalidPolarity {
                    index: index as u64,
                    value,
                })
            }
        };
        if !geom.contains(x, y) {
            return Err(StreamIoError::RecordOutOfRange {
                index: index as u64,
                x,
                y,
                width,
                height,
            });
        }
        events.push(Event::new(t, x, y, p));
    }
    Ok((geom, events))
}

/// Writes a binary-format stream; `read_binary` reproduces it exactly.
pub fn write_binary<W: Write>(
    geom: SensorGeometry,
    events: &[Event],
    mut sink: W,
) -> io::Result<()> {
    sink.write_all(&BINARY_MAGIC)?;
    sink.write_all(&geom.width().to_le_bytes())?;
    sink.write_all(&geom.height().to_le_bytes())?;
    sink.write_all(&(events.len() as u64).to_le_bytes())?;
    for e in events {
        sink.write_all(&e.t.to_le_bytes())?;
        sink.write_all(&e.x.to_le_bytes())?;
        sink.write_all(&e.y.to_le_bytes())?;
        sink.write_all(&[match e.p {
            Polarity::On => 1u8,
            Polarity::Off => 0u8,
        }])?;
    }
    Ok(())
}

/// Reads a label sidecar, expecting exactly `expected` labels.
pub fn read_labels<R: BufRead>(source: R, expected: usize) -> Result<Vec<Label>, StreamIoError> {
    let mut labels = Vec::with_capacity(expected);
    for (i, line) in source.lines().enumerate() {
        let line = line?;
        match line.trim_end_matches('\r') {
            "1" => labels.push(Label::Real),
            "0" => labels.push(Label::Noise),
            _ => return Err(StreamIoError::InvalidLabel { line: i + 1 }),
        }
    }
    if labels.len() != expected {
        return Err(StreamIoError::LabelCountMismatch {
            expected,
            found: labels.len(),
        });
    }
    Ok(labels)
}

/// Writes a label sidecar, one `1`/`0` character per line.
pub fn write_labels<'a, W, I>(labels: I, mut sink: W) -> io::Result<()>
where
    W: Write,
    I: IntoIterator<Item = &'a Label>,
{
    for label in labels {
        let c = match label {
            Label::Real => '1',
            Label::Noise => '0',
        };
        writeln!(sink, "{c}")?;
    }
    Ok(())
}
