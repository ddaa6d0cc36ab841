//! Shared file handling: stream format selection, loading, saving, and
//! label sidecars.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read};
use std::path::Path;

use clap::ValueEnum;

use seqx_core::event::{validate_stream, Event, Label, SensorGeometry, ViolationKind};
use seqx_core::io::{
    read_binary, read_labels, read_text, write_binary, write_labels, write_text, BINARY_MAGIC,
};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    /// Sniff the magic bytes on read; pick by extension on write
    /// (`.evn`/`.bin` binary, anything else text).
    Auto,
    Text,
    Binary,
}

fn sniff(path: &Path) -> Result<FormatArg, CliError> {
    let mut file = open_input(path)?;
    let mut magic = [0u8; 4];
    let mut read = 0;
    while read < 4 {
        match file.read(&mut magic[read..]) {
            Ok(0) => break,
            Ok(n) => read += n,
            Err(e) => return Err(CliError::input(format!("cannot read {}: {e}", path.display()))),
        }
    }
    Ok(if read == 4 && magic == BINARY_MAGIC {
        FormatArg::Binary
    } else {
        FormatArg::Text
    })
}

fn by_extension(path: &Path) -> FormatArg {
    match path.extension().and_then(|e| e.to_str()) {
        Some("evn") | Some("bin") => FormatArg::Binary,
        _ => FormatArg::Text,
    }
}

fn open_input(path: &Path) -> Result<File, CliError> {
    File::open(path).map_err(|e| CliError::input(format!("cannot open {}: {e}", path.display())))
}

pub fn load_stream(
    path: &Path,
    format: FormatArg,
) -> Result<(SensorGeometry, Vec<Event>), CliError> {
    let format = match format {
        FormatArg::Auto => sniff(path)?,
        explicit => explicit,
    };
    let reader = BufReader::new(open_input(path)?);
    let result = match format {
        FormatArg::Text => read_text(reader),
        FormatArg::Binary => read_binary(reader),
        FormatArg::Auto => unreachable!(),
    };
    result.map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

pub fn save_stream(
    path: &Path,
    format: FormatArg,
    geom: SensorGeometry,
    events: &[Event],
) -> Result<(), CliError> {
    let format = match format {
        FormatArg::Auto => by_extension(path),
        explicit => explicit,
    };
    let file = File::create(path)
        .map_err(|e| CliError::processing(format!("cannot create {}: {e}", path.display())))?;
    let writer = BufWriter::new(file);
    let result = match format {
        FormatArg::Text => write_text(geom, events, writer),
        FormatArg::Binary => write_binary(geom, events, writer),
        FormatArg::Auto => unreachable!(),
    };
    result.map_err(|e| CliError::processing(format!("cannot write {}: {e}", path.display())))
}

pub fn load_labels(path: &Path, expected: usize) -> Result<Vec<Label>, CliError> {
    let reader = BufReader::new(open_input(path)?);
    read_labels(reader, expected).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

pub fn save_labels(path: &Path, labels: &[Label]) -> Result<(), CliError> {
    let file = File::create(path)
        .map_err(|e| CliError::processing(format!("cannot create {}: {e}", path.display())))?;
    write_labels(labels, BufWriter::new(file))
        .map_err(|e| CliError::processing(format!("cannot write {}: {e}", path.display())))
}

/// Rejects streams violating bounds or timestamp monotonicity before any
/// filtering begins.
pub fn require_valid(
    path: &Path,
    geom: SensorGeometry,
    events: &[Event],
) -> Result<(), CliError> {
    let report = validate_stream(events, geom);
    if let Some(v) = report.first_violation {
        let what = match v.kind {
            ViolationKind::XOutOfBounds { x, width } => {
                format!("x = {x} out of bounds (width {width})")
            }
            ViolationKind::YOutOfBounds { y, height } => {
                format!("y = {y} out of bounds (height {height})")
            }
            ViolationKind::TimestampDecrease { prev, curr } => {
                format!("timestamp decreases from {prev} to {curr}")
            }
        };
        return Err(CliError::input(format!(
            "{}: invalid stream at event {}: {what}",
            path.display(),
            v.index
        )));
    }
    Ok(())
}
