//! PSNR and SSIM between frame sequences produced by different filters.
//!
//! SSIM follows the original Wang et al. formulation: 11x11 Gaussian window
//! with standard deviation 1.5, K1 = 0.01, K2 = 0.03, dynamic range 255,
//! averaged over window positions that lie fully inside the frame (no
//! padding). With C3 = C2/2 the luminance/contrast/structure product
//! collapses to the usual two-factor form.

use std::fmt;
use std::io::{self, Write};

use thiserror::Error;

use crate::frame::BinaryFrame;

const SSIM_WINDOW: usize = 11;
const SSIM_GAUSSIAN_SIGMA: f64 = 1.5;
const K1: f64 = 0.01;
const K2: f64 = 0.03;
const DYNAMIC_RANGE: f64 = 255.0;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum MetricsError {
    #[error("frame geometries differ: {a_width}x{a_height} vs {b_width}x{b_height}")]
    GeometryMismatch {
        a_width: u16,
        a_height: u16,
        b_width: u16,
        b_height: u16,
    },
    #[error("frame {width}x{height} is smaller than the {window}x{window} SSIM window")]
    FrameTooSmall {
        width: u16,
        height: u16,
        window: u16,
    },
    #[error("frame counts differ: {a} vs {b}")]
    FrameCountMismatch { a: usize, b: usize },
}

fn check_geometry(a: &BinaryFrame, b: &BinaryFrame) -> Result<(), MetricsError> {
    if a.geometry() != b.geometry() {
        return Err(MetricsError::GeometryMismatch {
            a_width: a.geometry().width(),
            a_height: a.geometry().height(),
            b_width: b.geometry().width(),
            b_height: b.geometry().height(),
        });
    }
    Ok(())
}

/// Peak signal-to-noise ratio in dB, or the IDENTICAL marker when the mean
/// squared error is zero (infinite PSNR cannot be averaged).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Psnr {
    Db(f64),
    Identical,
}

impl Psnr {
    pub fn db(&self) -> Option<f64> {
        match self {
            Psnr::Db(v) => Some(*v),
            Psnr::Identical => None,
        }
    }

    pub fn is_identical(&self) -> bool {
        matches!(self, Psnr::Identical)
    }
}

impl fmt::Display for Psnr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Psnr::Db(v) => write!(f, "{v}"),
            Psnr::Identical => write!(f, "inf"),
        }
    }
}

/// `10 * log10(255^2 / MSE)` over all pixels.
pub fn psnr(reference: &BinaryFrame, test: &BinaryFrame) -> Result<Psnr, MetricsError> {
    check_geometry(reference, test)?;
    let differing = reference
        .pixels()
        .iter()
        .zip(test.pixels())
        .filter(|(a, b)| a != b)
        .count();
    if differing == 0 {
        return Ok(Psnr::Identical);
    }
    // Binary frames: every differing pixel contributes 255^2 to the sum.
    let mse = (differing as f64 * 255.0 * 255.0) / reference.pixels().len() as f64;
    Ok(Psnr::Db(10.0 * (255.0 * 255.0 / mse).log10()))
}

fn gaussian_kernel() -> [f64; SSIM_WINDOW * SSIM_WINDOW] {
    let mut kernel = [0.0; SSIM_WINDOW * SSIM_WINDOW];
    let center = (SSIM_WINDOW / 2) as f64;
    let mut sum = 0.0;
    for (i, k) in kernel.iter_mut().enumerate() {
        let dy = (i / SSIM_WINDOW) as f64 - center;
        let dx = (i % SSIM_WINDOW) as f64 - center;
        *k = (-(dx * dx + dy * dy) / (2.0 * SSIM_GAUSSIAN_SIGMA * SSIM_GAUSSIAN_SIGMA)).exp();
        sum += *k;
    }
    for k in kernel.iter_mut() {
        *k /= sum;
    }
    kernel
}

/// Mean local structural similarity over all fully-interior window
/// positions. Both frame dimensions must be at least the window size.
pub fn ssim(reference: &BinaryFrame, test: &BinaryFrame) -> Result<f64, MetricsError> {
    check_geometry(reference, test)?;
    let width = reference.geometry().width() as usize;
    let height = reference.geometry().height() as usize;
    if width < SSIM_WINDOW || height < SSIM_WINDOW {
        return Err(MetricsError::FrameTooSmall {
            width: width as u16,
            height: height as u16,
            window: SSIM_WINDOW as u16,
        });
    }

    let kernel = gaussian_kernel();
    let c1 = (K1 * DYNAMIC_RANGE) * (K1 * DYNAMIC_RANGE);
    let c2 = (K2 * DYNAMIC_RANGE) * (K2 * DYNAMIC_RANGE);
    let a = reference.pixels();
    let b = test.pixels();

    let mut total = 0.0;
    let positions = (height - SSIM_WINDOW + 1) * (width - SSIM_WINDOW + 1);
    for wy in 0..=(height - SSIM_WINDOW) {
        for wx in 0..=(width - SSIM_WINDOW) {
            let mut mu_a = 0.0;
            let mut mu_b = 0.0;
            let mut aa = 0.0;
            let mut bb = 0.0;
            let mut ab = 0.0;
            for ky in 0..SSIM_WINDOW {
                let row = (wy + ky) * width + wx;
                for kx in 0..SSIM_WINDOW {
                    let w = kernel[ky * SSIM_WINDOW + kx];
                    let pa = a[row + kx] as f64;
                    let pb = b[row + kx] as f64;
                    mu_a += w * pa;
                    mu_b += w * pb;
                    aa += w * pa * pa;
                    bb += w * pb * pb;
                    ab += w * pa * pb;
                }
            }
            let var_a = aa - mu_a * mu_a;
            let var_b = bb - mu_b * mu_b;
            let cov = ab - mu_a * mu_b;
            total += ((2.0 * mu_a * mu_b + c1) * (2.0 * cov + c2))
                / ((mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2));
        }
    }
    Ok(total / positions as f64)
}

/// Metrics for one frame pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameMetrics {
    pub psnr: Psnr,
    pub ssim: f64,
}

/// Computes both metrics for one frame pair.
pub fn frame_metrics(reference: &BinaryFrame, test: &BinaryFrame) -> Result<FrameMetrics, MetricsError> {
    Ok(FrameMetrics {
        psnr: psnr(reference, test)?,
        ssim: ssim(reference, test)?,
    })
}

/// Per-frame metrics plus means. IDENTICAL pairs are excluded from the PSNR
/// mean and counted separately; `mean_psnr` is `None` when no finite entry
/// remains.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricReport {
    pub per_frame: Vec<FrameMetrics>,
    pub mean_psnr: Option<f64>,
    pub mean_ssim: Option<f64>,
    pub identical_frames: usize,
}

/// Assembles a report from already-computed per-frame metrics.
pub fn report_from_pairs(per_frame: Vec<FrameMetrics>) -> MetricReport {
    let finite: Vec<f64> = per_frame.iter().filter_map(|m| m.psnr.db()).collect();
    let identical_frames = per_frame.len() - finite.len();
    let mean_psnr = if finite.is_empty() {
        None
    } else {
        Some(finite.iter().sum::<f64>() / finite.len() as f64)
    };
    let mean_ssim = if per_frame.is_empty() {
        None
    } else {
        Some(per_frame.iter().map(|m| m.ssim).sum::<f64>() / per_frame.len() as f64)
    };
    MetricReport {
        per_frame,
        mean_psnr,
        mean_ssim,
        identical_frames,
    }
}

/// Pairwise PSNR/SSIM between two equally long frame sequences.
pub fn compare_pipelines(
    reference: &[BinaryFrame],
    test: &[BinaryFrame],
) -> Result<MetricReport, MetricsError> {
    if reference.len() != test.len() {
        return Err(MetricsError::FrameCountMismatch {
            a: reference.len(),
            b: test.len(),
        });
    }
    let per_frame = reference
        .iter()
        .zip(test)
        .map(|(a, b)| frame_metrics(a, b))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(report_from_pairs(per_frame))
}

/// CSV: `frame_index,psnr_db,ssim` rows plus a trailing mean row.
/// IDENTICAL (and an all-identical mean) print as `inf`.
pub fn write_report_csv<W: Write>(report: &MetricReport, mut sink: W) -> io::Result<()> {
    writeln!(sink, "frame_index,psnr_db,ssim")?;
    for (i, m) in report.per_frame.iter().enumerate() {
        writeln!(sink, "{},{},{}", i, m.psnr, m.ssim)?;
    }
    let mean_psnr = match report.mean_psnr {
        Some(v) => v.to_string(),
        None => "inf".to_string(),
    };
    let mean_ssim = match report.mean_ssim {
        Some(v) => v.to_string(),
        None => "nan".to_string(),
    };
    writeln!(sink, "mean,{mean_psnr},{mean_ssim}")?;
    Ok(())
}
