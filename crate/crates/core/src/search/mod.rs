//! Exact optimal-configuration search, symmetry classes and threshold scans.
//!
//! Results of [`windowed_optimal`] are exact only among non-attacking
//! configurations inside the central window; [`exhaustive_optimal`] is exact
//! over all `q`-subsets of the board.

mod engine;
mod loss_min;
mod thresholds;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::coverage::{attack_field, cover_count, is_nonattacking, Configuration};
use crate::error::{Error, Result};
use crate::geometry::{Board, Square, Transform};

pub use engine::{EngineOutcome, SearchPlan, ShardResult, MAX_ENGINE_SIDE};
pub use loss_min::{loss_minimal_patterns, LossMinimalSet};
pub use thresholds::{nonattacking_threshold, scan_thresholds, stabilizing_threshold, ScanEntry, ThresholdReport};

/// Default limit on `C(n^2, q)` for exhaustive search.
pub const DEFAULT_BUDGET: u64 = 10_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum SearchMode {
    Exhaustive,
    Windowed,
}

/// What to search for. Thread count is a property of the driver, not of
/// the problem, and is deliberately absent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SearchParams {
    pub q: u32,
    pub n: u32,
    pub mode: SearchMode,
    /// Side of the central search box; `None` means `q + 3`.
    pub window: Option<u32>,
    pub require_nonattacking: bool,
    /// How many times a windowed search may grow its window after an
    /// optimum touched the window's edge.
    pub max_retries: u32,
}

impl SearchParams {
    pub fn exhaustive(q: u32, n: u32) -> Self {
        SearchParams { q, n, mode: SearchMode::Exhaustive, window: None, require_nonattacking: false, max_retries: 0 }
    }

    pub fn windowed(q: u32, n: u32, window: Option<u32>) -> Self {
        SearchParams { q, n, mode: SearchMode::Windowed, window, require_nonattacking: true, max_retries: 1 }
    }

    pub fn board(&self) -> Result<Board> {
        Board::new(self.n)
    }

    pub fn requested_window(&self) -> u32 {
        self.window.unwrap_or(self.q + 3)
    }

    pub fn validate(&self) -> Result<()> {
        let board = self.board()?;
        if self.q == 0 {
            return Err(Error::InvalidQueenCount { q: 0, min: 1 });
        }
        if self.q as u64 > board.square_count() {
            return Err(Error::TooManyQueens { q: self.q, squares: board.square_count() });
        }
        if self.mode == SearchMode::Windowed {
            let w = self.requested_window();
            if w == 0 || w > self.n {
                return Err(Error::WindowTooLarge { window: w, n: self.n });
            }
        }
        Ok(())
    }
}

/// The window actually searched by [`windowed_optimal`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct WindowReport {
    pub requested: u32,
    /// Side of the final box, matched to the board's parity.
    pub used: u32,
    pub retries: u32,
    /// Some optimum still has a queen on the final box's edge.
    pub touches_boundary: bool,
}

/// One D4 orbit of optimal configurations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FundamentalClass {
    /// Lexicographically least member of the orbit.
    pub representative: Configuration,
    pub orbit_size: u32,
    pub stabilizer_order: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OptimalSet {
    pub params: SearchParams,
    pub max_cover: u32,
    /// Every maximizer, sorted.
    pub configurations: Vec<Configuration>,
    pub classes: Vec<FundamentalClass>,
    pub window: Option<WindowReport>,
}

impl OptimalSet {
    fn build(
        params: SearchParams,
        max_cover: u32,
        configurations: Vec<Configuration>,
        window: Option<WindowReport>,
    ) -> Result<Self> {
        let board = params.board()?;
        let classes = fundamental_classes(&configurations, board)?;
        let set = OptimalSet { params, max_cover, configurations, classes, window };
        set.verify()?;
        Ok(set)
    }

    /// Structural checks that need no cover evaluation: sizes, order,
    /// feasibility, window confinement, D4 closure and the class table.
    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        let board = self.params.board()?;
        let inv = |msg: alloc::string::String| Err(Error::Invariant(msg));
        for w in self.configurations.windows(2) {
            if w[0] >= w[1] {
                return inv(alloc::format!("configurations not strictly sorted at {}", w[1]));
            }
        }
        let radius = match (self.params.mode, self.window) {
            (SearchMode::Windowed, Some(w)) => Some(window_radius(board, w.used)),
            (SearchMode::Windowed, None) => return inv("windowed result without window report".into()),
            _ => None,
        };
        for c in &self.configurations {
            if c.len() != self.params.q as usize {
                return inv(alloc::format!("configuration {c} has {} queens, expected {}", c.len(), self.params.q));
            }
            if let Some(&s) = c.queens().iter().find(|&&s| !board.contains(s)) {
                return Err(Error::OffBoard { square: s, n: board.side() });
            }
            if self.params.require_nonattacking && !is_nonattacking(c) {
                return inv(alloc::format!("configuration {c} is attacking"));
            }
            if let Some(r) = radius {
                if c.radius(board) > r {
                    return inv(alloc::format!("configuration {c} leaves the search window"));
                }
            }
            for t in Transform::ALL {
                if self.configurations.binary_search(&c.transformed(t, board)).is_err() {
                    return inv(alloc::format!("set not closed under {t} at {c}"));
                }
            }
        }
        if fundamental_classes(&self.configurations, board)? != self.classes {
            return inv("class table does not match the configurations".into());
        }
        Ok(())
    }

    /// [`OptimalSet::validate`] plus recomputation of every cover.
    pub fn verify(&self) -> Result<()> {
        self.validate()?;
        let board = self.params.board()?;
        for c in &self.configurations {
            let v = cover_count(c, board);
            if v != self.max_cover {
                return Err(Error::Invariant(alloc::format!(
                    "configuration {c} covers {v}, recorded maximum is {}",
                    self.max_cover
                )));
            }
        }
        Ok(())
    }

    /// Orbit sizes, largest first.
    pub fn class_sizes(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.classes.iter().map(|c| c.orbit_size).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    pub fn all_nonattacking(&self) -> bool {
        self.configurations.iter().all(is_nonattacking)
    }
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

fn exhaustive_plan(p: &SearchParams, budget: u64) -> Result<SearchPlan> {
    p.validate()?;
    let board = p.board()?;
    let estimate = binomial(board.square_count(), p.q as u64);
    if estimate > budget as u128 {
        return Err(Error::BudgetExceeded { estimate, budget });
    }
    let all: Vec<Square> = board.squares().collect();
    SearchPlan::new(board, p.q, &all, p.require_nonattacking)
}

/// Parity-matched side and Chebyshev radius of the box for a requested side.
pub fn effective_window(board: Board, requested: u32) -> u32 {
    if requested % 2 == board.side() % 2 {
        requested
    } else {
        requested + 1
    }
}

fn window_radius(board: Board, side: u32) -> u32 {
    if board.is_even() {
        side.saturating_sub(2) / 2
    } else {
        side.saturating_sub(1) / 2
    }
}

/// Drives a [`SearchPlan`] to completion. The core runs shards in order;
/// callers may substitute a parallel driver.
pub trait Driver {
    fn run(&self, plan: &SearchPlan) -> Result<EngineOutcome>;
}

/// Runs every shard on the calling thread.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl Driver for Sequential {
    fn run(&self, plan: &SearchPlan) -> Result<EngineOutcome> {
        plan.solve()
    }
}

/// Exact maximum cover over all `q`-subsets of `B_n` (or over non-attacking
/// ones when `require_nonattacking` is set).
pub fn exhaustive_optimal(p: &SearchParams, budget: u64) -> Result<OptimalSet> {
    exhaustive_optimal_with(p, budget, &Sequential)
}

pub fn exhaustive_optimal_with(p: &SearchParams, budget: u64, driver: &dyn Driver) -> Result<OptimalSet> {
    if p.mode != SearchMode::Exhaustive {
        return Err(Error::Invariant("exhaustive_optimal called with windowed parameters".into()));
    }
    let plan = exhaustive_plan(p, budget)?;
    let out = driver.run(&plan)?;
    OptimalSet::build(*p, out.max_cover, out.configurations, None)
}

/// Maximum cover over non-attacking configurations inside the central box,
/// with cover counted on the whole board.
pub fn windowed_optimal(p: &SearchParams) -> Result<OptimalSet> {
    windowed_optimal_with(p, &Sequential)
}

pub fn windowed_optimal_with(p: &SearchParams, driver: &dyn Driver) -> Result<OptimalSet> {
    if p.mode != SearchMode::Windowed {
        return Err(Error::Invariant("windowed_optimal called with exhaustive parameters".into()));
    }
    p.validate()?;
    let board = p.board()?;
    let requested = p.requested_window();
    let mut side = effective_window(board, requested);
    let mut retries = 0;
    loop {
        let r = window_radius(board, side);
        let cands: Vec<Square> = board.central_box(r).collect();
        if (cands.len() as u64) < p.q as u64 {
            return Err(Error::TooManyQueens { q: p.q, squares: cands.len() as u64 });
        }
        let plan = SearchPlan::new(board, p.q, &cands, true)?;
        let out = driver.run(&plan)?;
        let touches = out.configurations.iter().any(|c| c.radius(board) == r);
        if touches && retries < p.max_retries && side + 2 <= board.side() {
            side += 2;
            retries += 1;
            continue;
        }
        let report = WindowReport { requested, used: side, retries, touches_boundary: touches };
        return OptimalSet::build(*p, out.max_cover, out.configurations, Some(report));
    }
}

/// Split configurations into D4 orbits. Each class is represented by the
/// least member of its full orbit; classes come out sorted.
pub fn fundamental_classes(set: &[Configuration], board: Board) -> Result<Vec<FundamentalClass>> {
    let mut seen: BTreeMap<Configuration, (u32, u32)> = BTreeMap::new();
    for c in set {
        if let Some(&s) = c.queens().iter().find(|&&s| !board.contains(s)) {
            return Err(Error::OffBoard { square: s, n: board.side() });
        }
        let mut images: Vec<Configuration> = Transform::ALL.iter().map(|&t| c.transformed(t, board)).collect();
        let stabilizer = images.iter().filter(|i| *i == c).count() as u32;
        images.sort_unstable();
        images.dedup();
        let orbit = images.len() as u32;
        if orbit * stabilizer != 8 {
            return Err(Error::Invariant(alloc::format!("orbit-stabilizer failure at {c}")));
        }
        seen.entry(images.swap_remove(0)).or_insert((orbit, stabilizer));
    }
    Ok(seen
        .into_iter()
        .map(|(representative, (orbit_size, stabilizer_order))| FundamentalClass {
            representative,
            orbit_size,
            stabilizer_order,
        })
        .collect())
}

/// True when no square of the border ring just outside `board` is attacked
/// twice, the hypothesis that carries optimality from `n` to `n + 2`.
pub fn border_certificate(c: &Configuration, board: Board) -> Result<bool> {
    if let Some(&s) = c.queens().iter().find(|&&s| !board.contains(s)) {
        return Err(Error::OffBoard { square: s, n: board.side() });
    }
    if !is_nonattacking(c) {
        return Err(Error::UnboundedLoss);
    }
    let outer = Board::new(board.side() + 2)?;
    let field = attack_field(c, outer);
    Ok(outer.border_squares()?.into_iter().all(|s| field.get(s).unwrap_or(0) < 2))
}

/// Translation classes of a set of configurations, sorted with repetition.
pub fn pattern_fingerprint(set: &[Configuration]) -> Vec<Configuration> {
    let mut v: Vec<Configuration> = set.iter().map(Configuration::normalized).collect();
    v.sort_unstable();
    v
}
