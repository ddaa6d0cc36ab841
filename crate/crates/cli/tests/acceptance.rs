//! Acceptance suite: one test per criterion, each ending in a PASS line.
//!
//! The oracles here are deliberately self-contained re-derivations (brute
//! force over raw event prefixes/suffixes) and never call into the filter
//! implementations they check. Synthetic-scene fixture values were pinned
//! from the first oracle-verified run; the scenes are fully seeded, so any
//! drift in generation or filtering shows up as an exact mismatch.

use std::process::Command;
use std::time::Instant;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use seqx_core::baseline::{Bs1Filter, Bs2Filter, Bs3Filter};
use seqx_core::event::{Event, Label, LabeledEvent, Polarity, SensorGeometry};
use seqx_core::filter::{run_filter, EventFilter};
use seqx_core::frame::BinaryFrame;
use seqx_core::io::{binary_size, read_binary, read_text, write_binary, write_text};
use seqx_core::metrics::{psnr, ssim, Psnr};
use seqx_core::seqx::{
    scaled_threshold, Aggregation, OpCount, ScaledSeqXFilter, SeqXConfig, SeqXFilter,
};
use seqx_core::synth::{generate, score, DetectionScore, SceneConfig, Trajectory};

fn random_stream(rng: &mut ChaCha8Rng, max_len: usize, w: u16, h: u16) -> Vec<Event> {
    let len = (rng.next_u64() % (max_len as u64 + 1)) as usize;
    let mut t = 0u64;
    (0..len)
        .map(|_| {
            t += rng.next_u64() % 300;
            Event::new(
                t,
                (rng.next_u64() % w as u64) as u16,
                (rng.next_u64() % h as u64) as u16,
                if rng.next_u64() & 1 == 1 {
                    Polarity::On
                } else {
                    Polarity::Off
                },
            )
        })
        .collect()
}

/// Independent SeqXFilter oracle: the window always holds the raw last-X
/// suffix, so every verdict is recomputed from scratch, aggregation
/// included.
fn seqx_oracle(
    events: &[Event],
    geom: SensorGeometry,
    x: usize,
    sigma: f64,
    mode: &Aggregation,
) -> Vec<Label> {
    let m = geom.width() as f64;
    let n = geom.height() as f64;
    events
        .iter()
        .enumerate()
        .map(|(i, e)| {
            if i < x {
                return Label::Real;
            }
            let distances: Vec<f64> = (1..=x)
                .map(|j| {
                    let p = &events[i - j];
                    p.x.abs_diff(e.x) as f64 / m + p.y.abs_diff(e.y) as f64 / n
                })
                .collect();
            let value = match mode {
                Aggregation::Min => distances.iter().copied().fold(f64::INFINITY, f64::min),
                Aggregation::Max => distances.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                Aggregation::Avg => distances.iter().sum::<f64>() / x as f64,
                Aggregation::WAvg(w) => {
                    distances.iter().zip(w).map(|(d, a)| d * a).sum::<f64>() / x as f64
                }
            };
            if value < sigma {
                Label::Real
            } else {
                Label::Noise
            }
        })
        .collect()
}

fn labels_of(labeled: &[LabeledEvent]) -> Vec<Label> {
    labeled.iter().map(|le| le.label).collect()
}

#[test]
fn criterion_01_seqx_oracle_equivalence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC1);
    let windows = [1usize, 2, 4];
    let sigmas = [0.02, 0.05, 0.1];
    let mut checked_events = 0usize;

    for i in 0..1000 {
        let w = 4 + (rng.next_u64() % 29) as u16; // 4..=32
        let h = 4 + (rng.next_u64() % 29) as u16;
        let geom = SensorGeometry::new(w, h);
        let events = random_stream(&mut rng, 500, w, h);

        let x = windows[i % 3];
        let sigma = sigmas[(i / 3) % 3];
        let mode = match (i / 9) % 4 {
            0 => Aggregation::Min,
            1 => Aggregation::Max,
            2 => Aggregation::Avg,
            _ => Aggregation::WAvg((1..=x).rev().map(|v| v as f64).collect()),
        };

        let cfg = SeqXConfig::new(x, sigma, mode.clone()).unwrap();
        let mut filter = SeqXFilter::new(cfg, geom).unwrap();
        let got = labels_of(&run_filter(&mut filter, &events).unwrap());
        let want = seqx_oracle(&events, geom, x, sigma, &mode);
        assert_eq!(got, want, "stream {i}: X={x} sigma={sigma} {}", mode.name());
        checked_events += events.len();
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    println!(
        "criterion 01 PASS: seqx verdicts match the suffix oracle on 1000 streams \
         ({checked_events} events, 0 mismatches, {elapsed:?})"
    );
}

fn bs1_oracle(events: &[Event], dt_us: u64) -> Vec<Label> {
    events
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let supported = events[..i].iter().any(|p| {
                p.x.abs_diff(e.x).max(p.y.abs_diff(e.y)) == 1
                    && e.t.saturating_sub(p.t) < dt_us
            });
            if supported {
                Label::Real
            } else {
                Label::Noise
            }
        })
        .collect()
}

fn bs2_oracle(events: &[Event], s: u16, dt_us: u64) -> Vec<Label> {
    events
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let supported = events[..i].iter().any(|p| {
                (p.x / s).abs_diff(e.x / s) <= 1
                    && (p.y / s).abs_diff(e.y / s) <= 1
                    && e.t.saturating_sub(p.t) < dt_us
            });
            if supported {
                Label::Real
            } else {
                Label::Noise
            }
        })
        .collect()
}

fn bs3_oracle(events: &[Event], dt_us: u64) -> Vec<Label> {
    events
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let row = events[..i].iter().rev().find(|p| p.y == e.y);
            let col = events[..i].iter().rev().find(|p| p.x == e.x);
            let row_hit =
                row.is_some_and(|p| e.t.saturating_sub(p.t) < dt_us && p.x.abs_diff(e.x) <= 1);
            let col_hit =
                col.is_some_and(|p| e.t.saturating_sub(p.t) < dt_us && p.y.abs_diff(e.y) <= 1);
            if row_hit || col_hit {
                Label::Real
            } else {
                Label::Noise
            }
        })
        .collect()
}

#[test]
fn criterion_02_baseline_oracle_equivalence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC2);
    let dts = [100u64, 500, 1000];
    let subsamples = [1u16, 2, 3];

    for i in 0..1000 {
        let w = 2 + (rng.next_u64() % 15) as u16; // 2..=16
        let h = 2 + (rng.next_u64() % 15) as u16;
        let geom = SensorGeometry::new(w, h);
        let events = random_stream(&mut rng, 200, w, h);
        let dt = dts[i % 3];
        let s = subsamples[(i / 3) % 3];

        let got = labels_of(&run_filter(&mut Bs1Filter::new(geom, dt), &events).unwrap());
        assert_eq!(got, bs1_oracle(&events, dt), "bs1 stream {i}");

        let got = labels_of(&run_filter(&mut Bs2Filter::new(geom, s, dt), &events).unwrap());
        assert_eq!(got, bs2_oracle(&events, s, dt), "bs2 stream {i} s={s}");

        let got = labels_of(&run_filter(&mut Bs3Filter::new(geom, dt), &events).unwrap());
        assert_eq!(got, bs3_oracle(&events, dt), "bs3 stream {i}");
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    println!(
        "criterion 02 PASS: bs1/bs2/bs3 match their brute-force oracles on 1000 streams \
         (0 mismatches, {elapsed:?})"
    );
}

#[test]
fn criterion_03_scaled_path_equivalence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC3);
    // Power-of-two dimensions keep the double-precision path exact, so the
    // claims below hold as equalities rather than up to rounding.
    let geoms = [(8u16, 8u16), (16, 16), (32, 32), (16, 32), (32, 8)];

    // Exact scaling: sigma * M * N integral implies identical verdicts.
    for i in 0..500 {
        let (w, h) = geoms[i % geoms.len()];
        let geom = SensorGeometry::new(w, h);
        let mn = geom.pixel_count() as u64;
        let k = 1 + rng.next_u64() % (mn * 3 / 20).max(1); // sigma up to ~0.15
        let sigma = k as f64 / mn as f64;
        let events = random_stream(&mut rng, 400, w, h);

        let cfg = SeqXConfig::new(2, sigma, Aggregation::Min).unwrap();
        assert_eq!(scaled_threshold(sigma, geom), k);
        let mut reference = SeqXFilter::new(cfg.clone(), geom).unwrap();
        let mut scaled = ScaledSeqXFilter::new(cfg, geom).unwrap();
        for e in &events {
            assert_eq!(
                reference.check(*e).unwrap(),
                scaled.check(*e).unwrap(),
                "exact-scaling disagreement: stream {i} sigma {sigma}"
            );
        }
    }

    // Non-integral scaling: any disagreement sits on the threshold quantum
    // itself (floor rounding drops at most that one integer step). 0.065 on
    // 16x16 puts the threshold at an attainable scaled distance (16), so
    // the boundary case actually occurs.
    let mut boundary_disagreements = 0u64;
    for i in 0..500 {
        let (w, h) = geoms[i % geoms.len()];
        let geom = SensorGeometry::new(w, h);
        let sigma = [0.03, 0.07, 0.11, 0.065][i % 4];
        let threshold = scaled_threshold(sigma, geom);
        let events = random_stream(&mut rng, 400, w, h);

        let cfg = SeqXConfig::new(2, sigma, Aggregation::Min).unwrap();
        let mut reference = SeqXFilter::new(cfg.clone(), geom).unwrap();
        let mut scaled = ScaledSeqXFilter::new(cfg, geom).unwrap();
        for (j, e) in events.iter().enumerate() {
            let v_ref = reference.check(*e).unwrap();
            let v_scaled = scaled.check(*e).unwrap();
            if v_ref != v_scaled {
                // Recompute the scaled distance from the raw suffix.
                let min_scaled = (1..=2)
                    .map(|back| {
                        let p = &events[j - back];
                        p.x.abs_diff(e.x) as u64 * geom.height() as u64
                            + p.y.abs_diff(e.y) as u64 * geom.width() as u64
                    })
                    .min()
                    .unwrap();
                assert_eq!(
                    min_scaled, threshold,
                    "disagreement off the quantum boundary: stream {i} event {j}"
                );
                assert_eq!((v_ref, v_scaled), (Label::Real, Label::Noise));
                boundary_disagreements += 1;
            }
        }
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    println!(
        "criterion 03 PASS: scaled path identical under exact scaling; \
         {boundary_disagreements} disagreements all on the threshold quantum ({elapsed:?})"
    );
}

#[test]
fn criterion_04_constant_memory_versus_bs1() {
    let geoms = [
        (128u16, 128u16),
        (240, 180),
        (346, 260),
        (640, 480),
        (768, 640),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0xC4);
    let mut previous_cells = 0usize;

    for (w, h) in geoms {
        let geom = SensorGeometry::new(w, h);
        for x in [1usize, 2, 4] {
            let cfg = SeqXConfig::new(x, 0.05, Aggregation::Min).unwrap();
            assert_eq!(cfg.state_size_bits(), 32 * x as u64);
            let mut filter = SeqXFilter::new(cfg, geom).unwrap();
            assert_eq!(filter.state_size_bits(), 32 * x as u64);
            assert_eq!(filter.window().len(), x);
            // State must not grow with the stream either.
            for e in random_stream(&mut rng, 1000, w, h) {
                filter.check(e).unwrap();
            }
            assert_eq!(filter.state_size_bits(), 32 * x as u64);
            assert_eq!(filter.window().len(), x);
        }

        let bs1 = Bs1Filter::new(geom, 1000);
        assert_eq!(bs1.cell_count(), geom.pixel_count());
        assert!(
            bs1.cell_count() > previous_cells,
            "bs1 state must grow with the sensor"
        );
        previous_cells = bs1.cell_count();
    }

    println!(
        "criterion 04 PASS: seqx state fixed at 32*X bits across 128x128..768x640 \
         while bs1 grows as M*N cells (16384..491520)"
    );
}

#[test]
fn criterion_05_operation_count() {
    let geom = SensorGeometry::new(128, 128);
    let cfg = SeqXConfig::new(2, 0.05, Aggregation::Min).unwrap();
    let expected = cfg.op_count();
    assert_eq!(
        expected,
        OpCount { additions: 6, divisions: 2, comparisons: 2, writes: 2 }
    );

    let mut filter = SeqXFilter::new(cfg, geom).unwrap();
    let mut ops = OpCount::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC5);
    let events = random_stream(&mut rng, 500, 128, 128);
    for (i, e) in events.iter().enumerate() {
        let before = ops;
        filter.check_instrumented(*e, &mut ops).unwrap();
        if i >= 2 {
            assert_eq!(ops - before, expected, "event {i}");
        }
    }

    println!(
        "criterion 05 PASS: instrumented X=2 min path performs exactly \
         6 additions, 2 divisions, 2 comparisons, 2 writes per steady-state event"
    );
}

fn random_frame(rng: &mut ChaCha8Rng, geom: SensorGeometry, active: usize) -> BinaryFrame {
    let mut frame = BinaryFrame::blank(geom);
    for _ in 0..active {
        let x = (rng.next_u64() % geom.width() as u64) as u16;
        let y = (rng.next_u64() % geom.height() as u64) as u16;
        frame.activate(x, y);
    }
    frame
}

#[test]
fn criterion_06_metric_closed_forms() {
    let geom = SensorGeometry::new(100, 100);
    let blank = BinaryFrame::blank(geom);
    let mut full = BinaryFrame::blank(geom);
    for y in 0..100 {
        for x in 0..100 {
            full.activate(x, y);
        }
    }

    // Complementary frames: MSE = 255^2 exactly, PSNR = 0 dB exactly.
    assert_eq!(psnr(&blank, &full).unwrap(), Psnr::Db(0.0));

    // One differing pixel in 10000: PSNR = 10 * log10(10000) = 40 dB.
    let mut one = BinaryFrame::blank(geom);
    one.activate(50, 50);
    let db = psnr(&blank, &one).unwrap().db().unwrap();
    assert!((db - 40.0).abs() <= 1e-9, "got {db}");

    // Self-similarity and symmetry.
    let mut rng = ChaCha8Rng::seed_from_u64(0xC6);
    let geom32 = SensorGeometry::new(32, 32);
    for _ in 0..100 {
        let a = random_frame(&mut rng, geom32, 40);
        let b = random_frame(&mut rng, geom32, 40);
        let self_sim = ssim(&a, &a).unwrap();
        assert!((self_sim - 1.0).abs() <= 1e-12, "got {self_sim}");
        let ab = ssim(&a, &b).unwrap();
        let ba = ssim(&b, &a).unwrap();
        assert!((ab - ba).abs() <= 1e-12);
        assert_eq!(psnr(&a, &b).unwrap(), psnr(&b, &a).unwrap());
    }

    println!(
        "criterion 06 PASS: PSNR closed forms exact (0 dB, 40 dB +/- 1e-9); \
         SSIM self-similarity and symmetry hold to 1e-12 on 100 random pairs"
    );
}

/// The shared evaluation scene: a fast pendulum (62.5 Hz swing) whose
/// tight cluster moves a few pixels per millisecond. At this speed the
/// 1 ms time window of bs1 and the 2-event window of SeqXFilter see a
/// comparable slice of the object's trail, which is the regime the
/// similar-performance claim speaks to.
fn evaluation_scene(noise_rate: f64) -> SceneConfig {
    SceneConfig {
        geom: SensorGeometry::new(128, 128),
        duration_us: 5_000_000,
        signal_rate: 20_000.0,
        noise_rate,
        trajectory: Trajectory::Pendulum {
            center: (64.0, 64.0),
            amplitude: 48.0,
            period_us: 16_000.0,
        },
        cluster_radius: 1,
        seed: 2024,
    }
}

fn filter_score(events: &[LabeledEvent], filter: &mut dyn EventFilter) -> DetectionScore {
    let raw: Vec<Event> = events.iter().map(|le| le.event).collect();
    let labeled = run_filter(filter, &raw).unwrap();
    score(events, &labels_of(&labeled)).unwrap()
}

#[test]
fn criterion_07_synthetic_denoising_parity() {
    let events = generate(&evaluation_scene(20_000.0)).unwrap();
    let geom = SensorGeometry::new(128, 128);

    let cfg = SeqXConfig::new(2, 0.05, Aggregation::Min).unwrap();
    let mut seqx = SeqXFilter::new(cfg, geom).unwrap();
    let s_seqx = filter_score(&events, &mut seqx);

    let mut bs1 = Bs1Filter::new(geom, 1000);
    let s_bs1 = filter_score(&events, &mut bs1);

    // Fixture pinned from the first oracle-verified run (seed 2024).
    assert_eq!(
        s_seqx,
        DetectionScore {
            true_positives: 75_130,
            false_positives: 909,
            true_negatives: 99_003,
            false_negatives: 24_729,
        }
    );
    assert_eq!(
        s_bs1,
        DetectionScore {
            true_positives: 75_154,
            false_positives: 1_303,
            true_negatives: 98_609,
            false_negatives: 24_705,
        }
    );

    let d_recall = (s_seqx.recall() - s_bs1.recall()).abs();
    let d_fpr = (s_seqx.false_positive_rate() - s_bs1.false_positive_rate()).abs();
    assert!(d_recall <= 0.10, "recall gap {d_recall}");
    assert!(d_fpr <= 0.10, "FPR gap {d_fpr}");

    println!(
        "criterion 07 PASS: seqx recall {:.3}/fpr {:.4} vs bs1 recall {:.3}/fpr {:.4} \
         (|d_recall| = {:.3} <= 0.10, |d_fpr| = {:.4} <= 0.10)",
        s_seqx.recall(),
        s_seqx.false_positive_rate(),
        s_bs1.recall(),
        s_bs1.false_positive_rate(),
        d_recall,
        d_fpr
    );
}

#[test]
fn criterion_08_window_length_tradeoff() {
    let events = generate(&evaluation_scene(60_000.0)).unwrap();
    let geom = SensorGeometry::new(128, 128);

    let cfg4 = SeqXConfig::new(4, 0.02, Aggregation::Min).unwrap();
    let mut f4 = SeqXFilter::new(cfg4, geom).unwrap();
    let s4 = filter_score(&events, &mut f4);

    let cfg2 = SeqXConfig::new(2, 0.04, Aggregation::Min).unwrap();
    let mut f2 = SeqXFilter::new(cfg2, geom).unwrap();
    let s2 = filter_score(&events, &mut f2);

    // Fixture pinned from the first oracle-verified run (seed 2024).
    assert_eq!(
        s4,
        DetectionScore {
            true_positives: 53_700,
            false_positives: 858,
            true_negatives: 298_550,
            false_negatives: 46_159,
        }
    );
    assert_eq!(
        s2,
        DetectionScore {
            true_positives: 44_186,
            false_positives: 2_079,
            true_negatives: 297_329,
            false_negatives: 55_673,
        }
    );

    assert!(
        s4.false_positive_rate() <= s2.false_positive_rate(),
        "wider window with tighter sigma must not pass more noise"
    );
    let recall_drop = s2.recall() - s4.recall();
    assert!(recall_drop <= 0.05, "recall dropped by {recall_drop}");

    println!(
        "criterion 08 PASS: X=4/sigma=0.02 fpr {:.4} <= X=2/sigma=0.04 fpr {:.4}; \
         recall change {:+.3} (limit 0.05)",
        s4.false_positive_rate(),
        s2.false_positive_rate(),
        recall_drop
    );
}

#[test]
fn criterion_09_function_selection_reproduction() {
    let dir = tempfile::tempdir().unwrap();
    let scene = dir.path().join("scene.evn");
    let labels = dir.path().join("scene.evn.labels");
    let bin = env!("CARGO_BIN_EXE_seqx");

    // Clustered signal + uniform noise at the study scale (~350k events).
    let generate = Command::new(bin)
        .args([
            "generate",
            scene.to_str().unwrap(),
            "--width", "128",
            "--height", "128",
            "--duration-us", "5000000",
            "--signal-rate", "20000",
            "--noise-rate", "50000",
            "--trajectory", "pendulum",
            "--center", "64,64",
            "--amplitude", "48",
            "--period-us", "16000",
            "--cluster-radius", "1",
            "--seed", "2024",
            "--json",
        ])
        .output()
        .unwrap();
    assert!(generate.status.success(), "{generate:?}");
    let summary: serde_json::Value =
        serde_json::from_slice(&generate.stdout).expect("generate --json output");
    let total = summary["events"].as_u64().unwrap();
    assert!(
        (330_000..=370_000).contains(&total),
        "expected ~350k events, got {total}"
    );

    let analyze = Command::new(bin)
        .args([
            "analyze",
            scene.to_str().unwrap(),
            "--labels",
            labels.to_str().unwrap(),
            "--json",
        ])
        .output()
        .unwrap();
    assert!(analyze.status.success(), "{analyze:?}");
    let verdict: serde_json::Value =
        serde_json::from_slice(&analyze.stdout).expect("analyze --json output");

    assert_eq!(verdict["selected"], "min");
    assert_eq!(verdict["rule1_fallback"], false);
    let modes = verdict["modes"].as_array().unwrap();
    let min_audit = modes.iter().find(|m| m["mode"] == "min").unwrap();
    assert_eq!(min_audit["rule1_pass"], true, "rule i must hold for min");
    assert_eq!(min_audit["rule2_rank"], 1, "rule ii must rank min first");

    println!(
        "criterion 09 PASS: analyze selects min on {total} labeled events \
         with rule i passed and rule ii rank 1"
    );
}

#[test]
fn criterion_10_sigma_monotonicity() {
    let events = generate(&evaluation_scene(20_000.0)).unwrap();
    let geom = SensorGeometry::new(128, 128);
    let raw: Vec<Event> = events.iter().map(|le| le.event).collect();

    let mut narrow = SeqXFilter::new(
        SeqXConfig::new(2, 0.05, Aggregation::Min).unwrap(),
        geom,
    )
    .unwrap();
    let mut wide = SeqXFilter::new(
        SeqXConfig::new(2, 0.1, Aggregation::Min).unwrap(),
        geom,
    )
    .unwrap();

    let mut narrow_real = 0usize;
    let mut wide_real = 0usize;
    for e in &raw {
        let v_narrow = narrow.check(*e).unwrap();
        let v_wide = wide.check(*e).unwrap();
        if v_narrow == Label::Real {
            narrow_real += 1;
            assert_eq!(
                v_wide,
                Label::Real,
                "event passing sigma=0.05 must pass sigma=0.1"
            );
        }
        if v_wide == Label::Real {
            wide_real += 1;
        }
    }
    assert!(narrow_real <= wide_real);

    println!(
        "criterion 10 PASS: REAL set under sigma=0.05 ({narrow_real} events) is a subset \
         of the set under sigma=0.1 ({wide_real} events), 0 violations over {} events",
        raw.len()
    );
}

#[test]
fn criterion_11_ingestion_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC11);
    for i in 0..1000 {
        let w = 2 + (rng.next_u64() % 63) as u16;
        let h = 2 + (rng.next_u64() % 63) as u16;
        let geom = SensorGeometry::new(w, h);
        let events = random_stream(&mut rng, 200, w, h);

        let mut text = Vec::new();
        write_text(geom, &events, &mut text).unwrap();
        let (geom_back, events_back) = read_text(text.as_slice()).unwrap();
        assert_eq!((geom_back, &events_back), (geom, &events), "text stream {i}");

        let mut binary = Vec::new();
        write_binary(geom, &events, &mut binary).unwrap();
        assert_eq!(
            binary.len() as u64,
            binary_size(events.len() as u64),
            "binary size formula, stream {i}"
        );
        let (geom_back, events_back) = read_binary(binary.as_slice()).unwrap();
        assert_eq!((geom_back, &events_back), (geom, &events), "binary stream {i}");
    }

    println!(
        "criterion 11 PASS: text and binary round-trips lossless on 1000 streams; \
         binary size = 16 + 13n exactly"
    );
}
