//! Minimal-loss non-attacking patterns, found without counting cover.
//!
//! The search runs on a board large enough that every attack-line crossing
//! of queens in the box is on it, so the internal loss accumulated there is
//! the stable one. Adding a queen raises the internal loss by the number of
//! its attacked squares that were already attacked, which makes the partial
//! loss a valid lower bound.

use alloc::vec;
use alloc::vec::Vec;

use crate::coverage::{attacks, for_each_attacked, Configuration};
use crate::error::{Error, Result};
use crate::geometry::{Board, Parity, Square};

use super::binomial;

/// All loss-minimal placements of `q` non-attacking queens whose Chebyshev
/// distance from the center is at most `radius`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LossMinimalSet {
    pub q: u32,
    pub radius: u32,
    /// Parity of the boards the placements refer to; `Even` means even `n`.
    pub board_parity: Parity,
    pub min_loss: u64,
    /// Centered coordinates, valid on every large board of that parity.
    pub configurations: Vec<Configuration>,
}

impl LossMinimalSet {
    pub fn patterns(&self) -> Vec<Configuration> {
        let mut v: Vec<Configuration> = self.configurations.iter().map(Configuration::normalized).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

struct State<'a> {
    board: Board,
    q: usize,
    cands: &'a [Square],
    cen: &'a [u64],
    counts: Vec<u8>,
    chosen: Vec<usize>,
    best: u64,
    found: Vec<Vec<usize>>,
}

impl State<'_> {
    fn add(&mut self, i: usize) -> u64 {
        let mut delta = 0;
        let (board, counts) = (self.board, &mut self.counts);
        for_each_attacked(board, self.cands[i], |s| {
            let c = &mut counts[board.index(s)];
            delta += (*c > 0) as u64;
            *c += 1;
        });
        delta
    }

    fn remove(&mut self, i: usize) {
        let (board, counts) = (self.board, &mut self.counts);
        for_each_attacked(board, self.cands[i], |s| counts[board.index(s)] -= 1);
    }

    /// Internal loss the next queen `f` adds, exactly, given current counts.
    fn increment(&self, f: usize) -> u64 {
        let mut x = 0;
        for_each_attacked(self.board, self.cands[f], |s| x += (self.counts[self.board.index(s)] > 0) as u64);
        x
    }

    fn visit(&mut self, elig: &[usize], inloss: u64, cenloss: u64) {
        let k = self.chosen.len();
        let r = self.q - k;
        if r == 0 {
            let total = inloss + cenloss;
            if total < self.best {
                self.best = total;
                self.found.clear();
            }
            if total == self.best {
                self.found.push(self.chosen.clone());
            }
            return;
        }
        if elig.len() < r {
            return;
        }
        let mut incs: Vec<(usize, u64)> = elig.iter().map(|&f| (f, self.increment(f))).collect();
        for idx in 0..incs.len() {
            let (f, x) = incs[idx];
            // lower bound on the loss of any completion that starts with f
            let mut rest: Vec<u64> = incs[idx + 1..].iter().map(|&(g, y)| self.cen[g] + y).collect();
            if rest.len() < r - 1 {
                break;
            }
            rest.sort_unstable();
            // each later queen adds its own increment, and at least ten
            // crossings with every earlier queen, seen at most three times
            let cenmin = incs.get(idx + 1).map_or(0, |p| self.cen[p.0]);
            let mut bound = inloss + cenloss + self.cen[f] + x;
            for (j, &v) in rest.iter().take(r - 1).enumerate() {
                let pairs = (k + 1 + j) as u64;
                bound += v.max(cenmin + (10 * pairs).div_ceil(3));
            }
            if bound > self.best {
                continue;
            }
            let next: Vec<usize> =
                incs[idx + 1..].iter().map(|&(g, _)| g).filter(|&g| !attacks(self.cands[f], self.cands[g])).collect();
            let d = self.add(f);
            debug_assert_eq!(d, x);
            self.chosen.push(f);
            self.visit(&next, inloss + d, cenloss + self.cen[f]);
            self.chosen.pop();
            self.remove(f);
        }
        incs.clear();
    }
}

/// Exhaustive minimal-loss search. Placements are in centered coordinates
/// for boards of the given parity; the box has side `2r+1` (odd) or
/// `2r+2` (even).
pub fn loss_minimal_patterns(q: u32, radius: u32, board_parity: Parity, budget: u64) -> Result<LossMinimalSet> {
    if q == 0 {
        return Err(Error::InvalidQueenCount { q, min: 1 });
    }
    let even = board_parity == Parity::Even;
    let n = 6 * radius + 7 + even as u32;
    let board = Board::new(n)?;
    let mut cands: Vec<Square> = board.central_box(radius).collect();
    let estimate = binomial(cands.len() as u64, q as u64);
    if estimate > budget as u128 {
        return Err(Error::BudgetExceeded { estimate, budget });
    }
    if cands.len() < q as usize {
        return Err(Error::TooManyQueens { q, squares: cands.len() as u64 });
    }
    let cenq = |s: Square| even as u64 + 2 * board.center_distance_unchecked(s) as u64;
    cands.sort_unstable_by_key(|&s| (cenq(s), s));
    let cen: Vec<u64> = cands.iter().map(|&s| cenq(s)).collect();
    let kc = cands.len();

    let mut state = State {
        board,
        q: q as usize,
        cands: &cands,
        cen: &cen,
        counts: vec![0u8; board.square_count() as usize],
        chosen: Vec::new(),
        best: u64::MAX,
        found: Vec::new(),
    };
    let all: Vec<usize> = (0..kc).collect();
    state.visit(&all, 0, 0);
    if state.found.is_empty() {
        return Err(Error::Invariant(alloc::format!("no non-attacking {q}-configuration within radius {radius}")));
    }
    let min_loss = state.best;
    let mut configurations: Vec<Configuration> = state
        .found
        .iter()
        .map(|idx| Configuration::from_unique_unsorted(idx.iter().map(|&i| cands[i]).collect()))
        .collect();
    configurations.sort_unstable();
    Ok(LossMinimalSet { q, radius, board_parity, min_loss, configurations })
}
