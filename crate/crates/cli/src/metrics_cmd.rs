use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::Args;
use rayon::prelude::*;

use seqx_core::frame::{read_pgm, BinaryFrame};
use seqx_core::metrics::{frame_metrics, report_from_pairs, write_report_csv, MetricReport};

use crate::error::CliError;

#[derive(Debug, Args)]
pub struct MetricsArgs {
    /// Directory of reference frames (*.pgm)
    pub reference_dir: PathBuf,
    /// Directory of test frames (*.pgm)
    pub test_dir: PathBuf,
    /// CSV output path (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Evaluate frame pairs in parallel
    #[arg(long)]
    pub parallel: bool,
    /// Print the summary as JSON (requires --out so the CSV has a home)
    #[arg(long)]
    pub json: bool,
}

fn list_pgms(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let entries = std::fs::read_dir(dir)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", dir.display())))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().and_then(|e| e.to_str()) == Some("pgm"))
        .collect();
    paths.sort();
    Ok(paths)
}

fn load_frames(paths: &[PathBuf]) -> Result<Vec<BinaryFrame>, CliError> {
    paths
        .iter()
        .map(|p| {
            let file = File::open(p)
                .map_err(|e| CliError::input(format!("cannot open {}: {e}", p.display())))?;
            read_pgm(BufReader::new(file))
                .map_err(|e| CliError::input(format!("{}: {e}", p.display())))
        })
        .collect()
}

fn compute_report(
    reference: &[BinaryFrame],
    test: &[BinaryFrame],
    parallel: bool,
) -> Result<MetricReport, CliError> {
    let pairs: Vec<_> = reference.iter().zip(test).collect();
    let per_frame = if parallel {
        pairs
            .par_iter()
            .map(|(a, b)| frame_metrics(a, b))
            .collect::<Result<Vec<_>, _>>()
    } else {
        pairs
            .iter()
            .map(|(a, b)| frame_metrics(a, b))
            .collect::<Result<Vec<_>, _>>()
    };
    Ok(report_from_pairs(
        per_frame.map_err(|e| CliError::input(e.to_string()))?,
    ))
}

pub fn run(args: MetricsArgs) -> Result<(), CliError> {
    if args.json && args.out.is_none() {
        return Err(CliError::usage("--json requires --out for the CSV stream"));
    }
    let ref_paths = list_pgms(&args.reference_dir)?;
    let test_paths = list_pgms(&args.test_dir)?;
    if ref_paths.len() != test_paths.len() {
        return Err(CliError::input(format!(
            "frame count mismatch: {} holds {} frame(s), {} holds {}",
            args.reference_dir.display(),
            ref_paths.len(),
            args.test_dir.display(),
            test_paths.len()
        )));
    }

    let reference = load_frames(&ref_paths)?;
    let test = load_frames(&test_paths)?;
    let report = compute_report(&reference, &test, args.parallel)?;

    match &args.out {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| CliError::processing(format!("cannot create {}: {e}", path.display())))?;
            write_report_csv(&report, BufWriter::new(file))
                .map_err(|e| CliError::processing(e.to_string()))?;
        }
        None => {
            let stdout = io::stdout();
            write_report_csv(&report, stdout.lock())
                .map_err(|e| CliError::processing(e.to_string()))?;
        }
    }

    let mean_psnr_text = report
        .mean_psnr
        .map_or("inf".to_string(), |v| format!("{v:.4}"));
    let mean_ssim_text = report
        .mean_ssim
        .map_or("nan".to_string(), |v| format!("{v:.6}"));
    if args.json {
        println!(
            "{}",
            serde_json::json!({
                "frames": report.per_frame.len(),
                "identical_frames": report.identical_frames,
                "mean_psnr_db": report.mean_psnr,
                "mean_ssim": report.mean_ssim,
            })
        );
    } else if args.out.is_some() {
        println!(
            "{} frame pair(s): mean psnr {} dB, mean ssim {} ({} identical)",
            report.per_frame.len(),
            mean_psnr_text,
            mean_ssim_text,
            report.identical_frames
        );
    } else {
        // CSV went to stdout; keep the summary out of the data stream.
        let mut err = io::stderr();
        let _ = writeln!(
            err,
            "{} frame pair(s): mean psnr {} dB, mean ssim {} ({} identical)",
            report.per_frame.len(),
            mean_psnr_text,
            mean_ssim_text,
            report.identical_frames
        );
    }
    Ok(())
}
