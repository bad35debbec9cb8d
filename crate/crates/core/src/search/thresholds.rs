//! Finite scans for the non-attacking and stabilizing thresholds.
//!
//! Both thresholds are reported as candidates: they describe the scanned
//! range only and say nothing about boards beyond it.

use alloc::vec::Vec;

use crate::coverage::Configuration;
use crate::error::{Error, Result};

use super::{exhaustive_optimal, pattern_fingerprint, OptimalSet, SearchParams};

/// Summary of the optimal set on one board.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ScanEntry {
    pub n: u32,
    pub max_cover: u32,
    pub optimal_count: u32,
    pub all_nonattacking: bool,
    /// Orbit sizes, largest first.
    pub class_sizes: Vec<u32>,
    /// Translation classes of all optima, sorted with repetition.
    pub fingerprint: Vec<Configuration>,
}

impl ScanEntry {
    pub fn from_set(set: &OptimalSet) -> ScanEntry {
        ScanEntry {
            n: set.params.n,
            max_cover: set.max_cover,
            optimal_count: set.configurations.len() as u32,
            all_nonattacking: set.all_nonattacking(),
            class_sizes: set.class_sizes(),
            fingerprint: pattern_fingerprint(&set.configurations),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ThresholdReport {
    pub q: u32,
    pub n_lo: u32,
    pub n_hi: u32,
    pub entries: Vec<ScanEntry>,
    /// Least `n` from which every scanned board has only non-attacking optima.
    pub n1_candidate: Option<u32>,
    /// Least `n` of each parity from which the fingerprint stays equal to
    /// the last scanned one of that parity.
    pub n2_odd: Option<u32>,
    pub n2_even: Option<u32>,
    /// Least `n` from which every scanned board has its parity's final
    /// fingerprint.
    pub n2_candidate: Option<u32>,
}

impl ThresholdReport {
    pub fn from_entries(q: u32, n_lo: u32, n_hi: u32, entries: Vec<ScanEntry>) -> ThresholdReport {
        let n1_candidate = suffix_start(&entries, |e| e.all_nonattacking);
        let last = |parity: u32| entries.iter().rev().find(|e| e.n % 2 == parity).map(|e| &e.fingerprint);
        let (fin_even, fin_odd) = (last(0), last(1));
        let stable = |e: &ScanEntry| {
            let fin = if e.n.is_multiple_of(2) { fin_even } else { fin_odd };
            fin == Some(&e.fingerprint)
        };
        let per_parity = |parity: u32| {
            let sub: Vec<ScanEntry> = entries.iter().filter(|e| e.n % 2 == parity).cloned().collect();
            suffix_start(&sub, stable)
        };
        ThresholdReport {
            q,
            n_lo,
            n_hi,
            n1_candidate,
            n2_odd: per_parity(1),
            n2_even: per_parity(0),
            n2_candidate: suffix_start(&entries, stable),
            entries,
        }
    }

    pub fn entry(&self, n: u32) -> Option<&ScanEntry> {
        self.entries.iter().find(|e| e.n == n)
    }
}

/// First `n` of the longest suffix of `entries` satisfying `pred`.
fn suffix_start(entries: &[ScanEntry], pred: impl Fn(&ScanEntry) -> bool) -> Option<u32> {
    let mut start = None;
    for e in entries.iter().rev() {
        if !pred(e) {
            break;
        }
        start = Some(e.n);
    }
    start
}

/// Scan `n_lo..=n_hi` with a caller-supplied solver.
pub fn scan_thresholds(
    q: u32,
    n_lo: u32,
    n_hi: u32,
    mut solve: impl FnMut(&SearchParams) -> Result<OptimalSet>,
) -> Result<ThresholdReport> {
    if n_lo > n_hi {
        return Err(Error::InvalidBoard { n: n_hi, min: n_lo });
    }
    let mut entries = Vec::new();
    for n in n_lo..=n_hi {
        let set = solve(&SearchParams::exhaustive(q, n))?;
        entries.push(ScanEntry::from_set(&set));
    }
    Ok(ThresholdReport::from_entries(q, n_lo, n_hi, entries))
}

/// Exhaustive scan; the report's `n1_candidate` is the answer.
pub fn nonattacking_threshold(q: u32, n_lo: u32, n_hi: u32, budget: u64) -> Result<ThresholdReport> {
    scan_thresholds(q, n_lo, n_hi, |p| exhaustive_optimal(p, budget))
}

/// Exhaustive scan; the report's `n2_*` fields are the answer.
pub fn stabilizing_threshold(q: u32, n_lo: u32, n_hi: u32, budget: u64) -> Result<ThresholdReport> {
    scan_thresholds(q, n_lo, n_hi, |p| exhaustive_optimal(p, budget))
}
