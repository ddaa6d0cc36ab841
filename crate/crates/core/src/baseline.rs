//! Memory-cell nearest-neighbor (NNb) baseline filters bs1, bs2, and bs3.
//!
//! All three decide spatio-temporal correlation with the same rule: an event
//! is real if a stored neighborhood timestamp `ts` satisfies `t - ts < dT`
//! (strict). They differ in what a memory cell covers: one pixel (bs1), an
//! `s`x`s` pixel group (bs2), or a whole row/column (bs3).

use crate::event::{BoundsError, Event, Label, Polarity, SensorGeometry};
use crate::filter::EventFilter;

/// Cell sentinel: never matches the correlation test. Uninitialized cells
/// must not lend support, or early events would spuriously pass when dT is
/// large.
const EMPTY: u64 = u64::MAX;

fn correlated(t: u64, cell: u64, dt_us: u64) -> bool {
    cell != EMPTY && t.saturating_sub(cell) < dt_us
}

/// Per-pixel timestamp filter (bs1).
///
/// Each incoming event writes its timestamp into the cells of its eight
/// neighbor pixels (not its own), and the correlation check reads the
/// event's own cell. The check therefore asks whether a previous event
/// fired adjacent to this pixel; a pixel firing repeatedly in isolation
/// never supports itself and stays NOISE.
#[derive(Debug, Clone)]
pub struct Bs1Filter {
    geom: SensorGeometry,
    dt_us: u64,
    last_ts: Vec<u64>,
}

impl Bs1Filter {
    pub fn new(geom: SensorGeometry, dt_us: u64) -> Self {
        Self {
            geom,
            dt_us,
            last_ts: vec![EMPTY; geom.pixel_count()],
        }
    }

    /// Number of memory cells: one per pixel, M*N total.
    pub fn cell_count(&self) -> usize {
        self.last_ts.len()
    }

    fn idx(&self, x: u16, y: u16) -> usize {
        y as usize * self.geom.width() as usize + x as usize
    }
}

impl EventFilter for Bs1Filter {
    fn check(&mut self, event: Event) -> Result<Label, BoundsError> {
        self.geom.check(&event)?;
        let verdict = if correlated(event.t, self.last_ts[self.idx(event.x, event.y)], self.dt_us)
        {
            Label::Real
        } else {
            Label::Noise
        };

        // Write support into the eight neighbors.
        let x = event.x as i32;
        let y = event.y as i32;
        for ny in (y - 1)..=(y + 1) {
            for nx in (x - 1)..=(x + 1) {
                if (nx == x && ny == y)
                    || nx < 0
                    || ny < 0
                    || nx >= self.geom.width() as i32
                    || ny >= self.geom.height() as i32
                {
                    continue;
                }
                let idx = self.idx(nx as u16, ny as u16);
                self.last_ts[idx] = event.t;
            }
        }
        Ok(verdict)
    }
}

/// Sub-sampling group filter (bs2): pixels with the same `(x/s, y/s)` share
/// one cell holding the group's most recent timestamp. The check reads the
/// event's own group and the eight adjacent groups; only the own group cell
/// is written afterwards.
#[derive(Debug, Clone)]
pub struct Bs2Filter {
    geom: SensorGeometry,
    subsample: u16,
    dt_us: u64,
    groups_w: usize,
    groups_h: usize,
    last_ts: Vec<u64>,
}

impl Bs2Filter {
    /// Panics if `subsample` is zero.
    pub fn new(geom: SensorGeometry, subsample: u16, dt_us: u64) -> Self {
        assert!(subsample >= 1, "sub-sampling factor must be >= 1");
        let groups_w = (geom.width() as usize).div_ceil(subsample as usize);
        let groups_h = (geom.height() as usize).div_ceil(subsample as usize);
        Self {
            geom,
            subsample,
            dt_us,
            groups_w,
            groups_h,
            last_ts: vec![EMPTY; groups_w * groups_h],
        }
    }

    /// Number of memory cells: ceil(M/s) * ceil(N/s).
    pub fn cell_count(&self) -> usize {
        self.last_ts.len()
    }

    pub fn subsample(&self) -> u16 {
        self.subsample
    }
}

impl EventFilter for Bs2Filter {
    fn check(&mut self, event: Event) -> Result<Label, BoundsError> {
        self.geom.check(&event)?;
        let gx = (event.x / self.subsample) as i32;
        let gy = (event.y / self.subsample) as i32;

        let mut verdict = Label::Noise;
        'scan: for ny in (gy - 1)..=(gy + 1) {
            for nx in (gx - 1)..=(gx + 1) {
                if nx < 0 || ny < 0 || nx >= self.groups_w as i32 || ny >= self.groups_h as i32 {
                    continue;
                }
                let cell = self.last_ts[ny as usize * self.groups_w + nx as usize];
                if correlated(event.t, cell, self.dt_us) {
                    verdict = Label::Real;
                    break 'scan;
                }
            }
        }

        self.last_ts[gy as usize * self.groups_w + gx as usize] = event.t;
        Ok(verdict)
    }
}

/// One row/column memory record for bs3: the most recent event seen on that
/// axis, with its timestamp, polarity, and cross-axis position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bs3Cell {
    pub ts: u64,
    pub polarity: Polarity,
    pub cross: u16,
}

/// Row/column filter (bs3): one cell per row and one per column, each
/// storing the most recent event on that axis. An event is real if the
/// record in its row (or column) is recent and its stored cross-axis
/// coordinate lies within one pixel of the event's.
#[derive(Debug, Clone)]
pub struct Bs3Filter {
    geom: SensorGeometry,
    dt_us: u64,
    row_cells: Vec<Option<Bs3Cell>>,
    col_cells: Vec<Option<Bs3Cell>>,
}

impl Bs3Filter {
    pub fn new(geom: SensorGeometry, dt_us: u64) -> Self {
        Self {
            geom,
            dt_us,
            row_cells: vec![None; geom.height() as usize],
            col_cells: vec![None; geom.width() as usize],
        }
    }

    /// Number of memory cells: M + N.
    pub fn cell_count(&self) -> usize {
        self.row_cells.len() + self.col_cells.len()
    }
}

impl EventFilter for Bs3Filter {
    fn check(&mut self, event: Event) -> Result<Label, BoundsError> {
        self.geom.check(&event)?;
        let row = self.row_cells[event.y as usize];
        let col = self.col_cells[event.x as usize];

        let row_hit = row.is_some_and(|c| {
            event.t.saturating_sub(c.ts) < self.dt_us && c.cross.abs_diff(event.x) <= 1
        });
        let col_hit = col.is_some_and(|c| {
            event.t.saturating_sub(c.ts) < self.dt_us && c.cross.abs_diff(event.y) <= 1
        });
        let verdict = if row_hit || col_hit {
            Label::Real
        } else {
            Label::Noise
        };

        self.row_cells[event.y as usize] = Some(Bs3Cell {
            ts: event.t,
            polarity: event.p,
            cross: event.x,
        });
        self.col_cells[event.x as usize] = Some(Bs3Cell {
            ts: event.t,
            polarity: event.p,
            cross: event.y,
        });
        Ok(verdict)
    }
}
