//! End-to-end drawing: realizer placement, junction insertion, segment sweep.

use std::time::{Duration, Instant};

use crate::diagram::{sweep_cover_edges, Diagram};
use crate::error::Result;
use crate::grid::{insert_junctions, place_on_grid};
use crate::poset::Poset;
use crate::realizer::{realizer_of, Realizer};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PhaseTimings {
    pub phase1: Duration,
    pub phase2: Duration,
    pub phase3: Duration,
}

impl PhaseTimings {
    pub fn total(&self) -> Duration {
        self.phase1 + self.phase2 + self.phase3
    }
}

pub fn draw_realizer(r: &Realizer) -> Diagram {
    draw_realizer_timed(r).0
}

pub fn draw_realizer_timed(r: &Realizer) -> (Diagram, PhaseTimings) {
    let t0 = Instant::now();
    let placed = place_on_grid(r);
    let t1 = Instant::now();
    let completed = insert_junctions(&placed);
    let t2 = Instant::now();
    let d = sweep_cover_edges(&completed);
    let t3 = Instant::now();
    (
        d,
        PhaseTimings {
            phase1: t1 - t0,
            phase2: t2 - t1,
            phase3: t3 - t2,
        },
    )
}

/// Fails with `DimensionExceedsTwo` when no confluent diagram exists.
pub fn draw_poset(p: &Poset) -> Result<(Realizer, Diagram)> {
    let r = realizer_of(p)?;
    let d = draw_realizer(&r);
    Ok((r, d))
}
