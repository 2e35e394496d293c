use std::fmt;

use super::lp::{lp_bound_known, Direction, LpBound};
use super::{
    gv_distance, hamming_bound, nonexistence_cap, plotkin_bound, singleton_bound, CodeParams,
    HammingBound,
};

/// Where an upper bound comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UpperProvenance {
    Theorem6,
    Theorem7,
    Lp,
    Plotkin,
    Hamming,
    Singleton,
}

impl fmt::Display for UpperProvenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UpperProvenance::Theorem6 => "Theorem6",
            UpperProvenance::Theorem7 => "Theorem7",
            UpperProvenance::Lp => "LP",
            UpperProvenance::Plotkin => "Plotkin",
            UpperProvenance::Hamming => "Hamming",
            UpperProvenance::Singleton => "Singleton",
        })
    }
}

/// Where a lower bound comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LowerProvenance {
    /// A code built and checked in this crate.
    Construction,
    /// Derived from another entry by adding an ebit or demoting a logical pair.
    Theorem8,
    /// Copied from the literature.
    Transcribed,
}

impl fmt::Display for LowerProvenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LowerProvenance::Construction => "Construction",
            LowerProvenance::Theorem8 => "Theorem8",
            LowerProvenance::Transcribed => "Transcribed",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBound {
    pub value: usize,
    pub provenance: LowerProvenance,
    /// Free-form origin, e.g. the family name or a citation key.
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub params: CodeParams,
    pub singleton: usize,
    pub hamming: HammingBound,
    pub plotkin: Option<usize>,
    pub lp: Option<LpBound>,
    /// Largest distance the Gilbert-Varshamov count guarantees.
    pub gv_distance: Option<usize>,
    pub lower: Option<LowerBound>,
    pub final_upper: usize,
    pub upper_provenance: UpperProvenance,
}

impl BoundReport {
    /// A note when the integer program may be tighter than the reported LP
    /// bound because the node budget ran out.
    pub fn note(&self) -> Option<&'static str> {
        match &self.lp {
            Some(lp) if lp.undecided => Some("integer program undecided at node limit"),
            _ => None,
        }
    }
}

/// Collects every bound for `params`. The LP bound is attempted when `k >= 1`
/// and `c > 0`; `node_limit` caps each branch-and-bound run. Integer programs
/// at or below a known lower bound are skipped.
pub fn bound_report(params: CodeParams, node_limit: u64, lower: Option<LowerBound>) -> BoundReport {
    let singleton = singleton_bound(params);
    let hamming = hamming_bound(params);
    let plotkin = plotkin_bound(params.n, params.k).ok();
    let known = lower.as_ref().map_or(0, |l| l.value);
    let lp = lp_bound_known(params, node_limit, Direction::Code, known).ok();

    let mut candidates: Vec<(usize, UpperProvenance)> = vec![(singleton, UpperProvenance::Singleton)];
    if hamming.applicable {
        candidates.push((hamming.d, UpperProvenance::Hamming));
    }
    if let Some(p) = plotkin {
        candidates.push((p, UpperProvenance::Plotkin));
    }
    if let Some(l) = &lp {
        candidates.push((l.value, UpperProvenance::Lp));
    }
    if let Some(cap) = nonexistence_cap(params) {
        candidates.push(cap);
    }
    let (final_upper, upper_provenance) = candidates
        .into_iter()
        .min()
        .expect("singleton is always present");

    BoundReport {
        params,
        singleton,
        hamming,
        plotkin,
        lp,
        gv_distance: gv_distance(params),
        lower,
        final_upper,
        upper_provenance,
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |v: Option<usize>| v.map_or("-".to_string(), |v| v.to_string());
        writeln!(f, "params={}", self.params)?;
        writeln!(f, "singleton={}", self.singleton)?;
        writeln!(
            f,
            "hamming={}{}",
            self.hamming.d,
            if self.hamming.applicable { "" } else { " (nondegenerate codes only)" }
        )?;
        writeln!(f, "plotkin={}", opt(self.plotkin))?;
        match &self.lp {
            Some(lp) => {
                writeln!(f, "lp={} ({})", lp.value, lp.decided_by)?;
                for s in &lp.steps {
                    writeln!(f, "  {s}")?;
                }
            }
            None => writeln!(f, "lp=-")?,
        }
        writeln!(f, "gv_distance={}", opt(self.gv_distance))?;
        match &self.lower {
            Some(l) => writeln!(f, "lower={} ({}: {})", l.value, l.provenance, l.source)?,
            None => writeln!(f, "lower=-")?,
        }
        writeln!(f, "upper={} ({})", self.final_upper, self.upper_provenance)?;
        if let Some(note) = self.note() {
            writeln!(f, "note={note}")?;
        }
        Ok(())
    }
}
