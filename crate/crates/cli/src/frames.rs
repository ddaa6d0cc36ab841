use std::fs::{self, File};
use std::io::BufWriter;
use std::path::PathBuf;

use clap::Args;
use rayon::prelude::*;

use seqx_core::frame::{accumulate_with, write_pgm, BinaryFrame};

use crate::error::CliError;
use crate::stream_files::{load_stream, require_valid, FormatArg};

#[derive(Debug, Args)]
pub struct FramesArgs {
    /// Input event stream
    pub input: PathBuf,
    /// Events per frame bundle
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub count: u64,
    /// Keep the trailing partial bundle instead of dropping it
    #[arg(long)]
    pub keep_partial: bool,
    /// Directory for frame_000000.pgm onward (created if missing)
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    /// Input format
    #[arg(long, value_enum, default_value_t = FormatArg::Auto)]
    pub input_format: FormatArg,
    /// Write frames in parallel
    #[arg(long)]
    pub parallel: bool,
    /// Print the summary as JSON
    #[arg(long)]
    pub json: bool,
}

fn write_frame(dir: &PathBuf, index: usize, frame: &BinaryFrame) -> Result<(), CliError> {
    let path = dir.join(format!("frame_{index:06}.pgm"));
    let file = File::create(&path)
        .map_err(|e| CliError::processing(format!("cannot create {}: {e}", path.display())))?;
    write_pgm(frame, BufWriter::new(file))
        .map_err(|e| CliError::processing(format!("cannot write {}: {e}", path.display())))
}

pub fn run(args: FramesArgs) -> Result<(), CliError> {
    let (geom, events) = load_stream(&args.input, args.input_format)?;
    require_valid(&args.input, geom, &events)?;

    let frames = accumulate_with(&events, geom, args.count as usize, args.keep_partial)
        .map_err(|e| CliError::processing(e.to_string()))?;

    fs::create_dir_all(&args.out_dir)
        .map_err(|e| CliError::processing(format!("cannot create {}: {e}", args.out_dir.display())))?;

    if args.parallel {
        frames
            .par_iter()
            .enumerate()
            .try_for_each(|(i, frame)| write_frame(&args.out_dir, i, frame))?;
    } else {
        for (i, frame) in frames.iter().enumerate() {
            write_frame(&args.out_dir, i, frame)?;
        }
    }

    if args.json {
        println!(
            "{}",
            serde_json::json!({
                "input_events": events.len(),
                "frames": frames.len(),
                "bundle_size": args.count,
            })
        );
    } else {
        println!(
            "wrote {} frame(s) of {} events each to {}",
            frames.len(),
            args.count,
            args.out_dir.display()
        );
    }
    Ok(())
}
