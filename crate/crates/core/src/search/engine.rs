//! Branch and bound over candidate subsets, maximizing cover.
//!
//! Candidates are sorted by single-queen cover (descending) and subsets are
//! enumerated in increasing index order. At every node each remaining
//! candidate gets its exact marginal gain over the chosen queens; the sum of
//! the best `r` gains bounds the final cover from above. Subtrees are cut
//! only when that bound is strictly below the incumbent, so every tie
//! survives.

use alloc::vec;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicU32, Ordering};

use crate::coverage::{attacks, for_each_attacked, single_cover, Configuration};
use crate::error::{Error, Result};
use crate::geometry::{Board, Square};

/// Largest board side the engine accepts.
pub const MAX_ENGINE_SIDE: u32 = 512;

type Index = u16;

/// Precomputed search state, shared read-only between shards.
#[derive(Debug, Clone)]
pub struct SearchPlan {
    board: Board,
    q: usize,
    squares: Vec<Square>,
    words: usize,
    cov: Vec<u64>,
    cwords: usize,
    conflict: Vec<u64>,
    prefix_len: usize,
    shards: Vec<[Index; 2]>,
    seed: u32,
}

/// Outcome of one shard: its best cover and every subset reaching it.
#[derive(Debug, Clone, Default)]
pub struct ShardResult {
    pub best: u32,
    pub found: Vec<Vec<Index>>,
    pub nodes: u64,
}

/// Best cover and all configurations attaining it.
#[derive(Debug, Clone)]
pub struct EngineOutcome {
    pub max_cover: u32,
    pub configurations: Vec<Configuration>,
    pub nodes: u64,
}

impl SearchPlan {
    /// Plan a search for `q` queens among `candidates` (on-board, distinct).
    pub fn new(board: Board, q: u32, candidates: &[Square], nonattacking: bool) -> Result<Self> {
        if board.side() > MAX_ENGINE_SIDE {
            return Err(Error::BoardTooLarge { n: board.side(), max: MAX_ENGINE_SIDE });
        }
        if q == 0 {
            return Err(Error::InvalidQueenCount { q, min: 1 });
        }
        if candidates.len() > Index::MAX as usize {
            return Err(Error::Invariant(alloc::format!(
                "{} candidates exceed the engine index range",
                candidates.len()
            )));
        }
        let mut squares: Vec<Square> = candidates.to_vec();
        for &s in &squares {
            board.check(s)?;
        }
        squares.sort_unstable_by_key(|&s| (core::cmp::Reverse(single_cover(board, s)), s));
        squares.dedup();
        let k = squares.len();

        let words = (board.square_count() as usize).div_ceil(64);
        let mut cov = vec![0u64; k * words];
        for (i, &s) in squares.iter().enumerate() {
            let row = &mut cov[i * words..(i + 1) * words];
            let mut set = |t: Square| {
                let b = board.index(t);
                row[b / 64] |= 1 << (b % 64);
            };
            set(s);
            for_each_attacked(board, s, set);
        }

        let cwords = k.div_ceil(64).max(1);
        let mut conflict = vec![0u64; k * cwords];
        if nonattacking {
            for i in 0..k {
                for j in 0..k {
                    if i != j && attacks(squares[i], squares[j]) {
                        conflict[i * cwords + j / 64] |= 1 << (j % 64);
                    }
                }
            }
        }

        let mut plan = SearchPlan {
            board,
            q: q as usize,
            squares,
            words,
            cov,
            cwords,
            conflict,
            prefix_len: 0,
            shards: Vec::new(),
            seed: 0,
        };
        plan.prefix_len = if plan.q >= 3 { 2 } else { plan.q - 1 };
        plan.shards = plan.make_shards();
        plan.seed = plan.greedy();
        Ok(plan)
    }

    pub fn board(&self) -> Board {
        self.board
    }

    pub fn candidates(&self) -> &[Square] {
        &self.squares
    }

    pub fn shard_count(&self) -> usize {
        self.shards.len()
    }

    /// Cover of a greedily built configuration; a valid starting incumbent.
    pub fn seed(&self) -> u32 {
        self.seed
    }

    fn make_shards(&self) -> Vec<[Index; 2]> {
        let k = self.squares.len();
        match self.prefix_len {
            0 => vec![[0, 0]],
            1 => (0..k).map(|i| [i as Index, 0]).collect(),
            _ => {
                let mut out = Vec::new();
                for i in 0..k {
                    for j in i + 1..k {
                        if !self.conflicts(i, j) {
                            out.push([i as Index, j as Index]);
                        }
                    }
                }
                out
            }
        }
    }

    fn conflicts(&self, i: usize, j: usize) -> bool {
        (self.conflict[i * self.cwords + j / 64] >> (j % 64)) & 1 != 0
    }

    fn cov_row(&self, i: usize) -> &[u64] {
        &self.cov[i * self.words..(i + 1) * self.words]
    }

    fn gain(&self, covered: &[u64], i: usize) -> u32 {
        self.cov_row(i).iter().zip(covered).map(|(a, b)| (a & !b).count_ones()).sum()
    }

    fn greedy(&self) -> u32 {
        let k = self.squares.len();
        let mut covered = vec![0u64; self.words];
        let mut chosen: Vec<usize> = Vec::new();
        let mut total = 0;
        while chosen.len() < self.q {
            let best = (0..k)
                .filter(|&i| !chosen.contains(&i))
                .filter(|&i| chosen.iter().all(|&j| !self.conflicts(i, j)))
                .map(|i| (self.gain(&covered, i), core::cmp::Reverse(i)))
                .max();
            let Some((g, core::cmp::Reverse(i))) = best else {
                return 0;
            };
            total += g;
            for (c, a) in covered.iter_mut().zip(self.cov_row(i)) {
                *c |= a;
            }
            chosen.push(i);
        }
        total
    }

    /// Explore one shard. `incumbent` is shared by concurrent shards and
    /// only ever increases; stale reads cost pruning power, not exactness.
    pub fn run_shard(&self, shard: usize, incumbent: &AtomicU32) -> ShardResult {
        let mut run = Run {
            plan: self,
            incumbent,
            result: ShardResult::default(),
            covered: vec![0u64; (self.q + 1) * self.words],
            elig: vec![0u64; (self.q + 1) * self.cwords],
            chosen: Vec::with_capacity(self.q),
            gains: vec![Vec::new(); self.q + 1],
            tops: vec![0u32; self.q],
        };
        let prefix = &self.shards[shard][..self.prefix_len];
        let k = self.squares.len();
        let e0 = &mut run.elig[..self.cwords];
        for i in 0..k {
            e0[i / 64] |= 1 << (i % 64);
        }
        for (d, &i) in prefix.iter().enumerate() {
            run.push(d, i as usize);
        }
        let depth = prefix.len();
        let covered = popcount(&run.covered[depth * self.words..(depth + 1) * self.words]);
        run.visit(depth, covered);
        run.result
    }

    /// Run every shard in order on the current thread.
    pub fn solve(&self) -> Result<EngineOutcome> {
        let incumbent = AtomicU32::new(self.seed);
        let results: Vec<ShardResult> = (0..self.shard_count()).map(|s| self.run_shard(s, &incumbent)).collect();
        self.finish(results)
    }

    /// Merge shard results in shard order: maximum, then union of ties.
    pub fn finish(&self, results: Vec<ShardResult>) -> Result<EngineOutcome> {
        let nodes = results.iter().map(|r| r.nodes).sum();
        let max_cover = results.iter().map(|r| r.best).max().unwrap_or(0);
        let mut configurations = Vec::new();
        for r in results.into_iter().filter(|r| r.best == max_cover) {
            for idx in r.found {
                configurations
                    .push(Configuration::from_unique_unsorted(idx.iter().map(|&i| self.squares[i as usize]).collect()));
            }
        }
        configurations.sort_unstable();
        configurations.dedup();
        if configurations.is_empty() {
            if self.seed > 0 {
                return Err(Error::Invariant(alloc::format!("search lost its seed cover {}", self.seed)));
            }
            return Ok(EngineOutcome { max_cover: 0, configurations, nodes });
        }
        if max_cover < self.seed {
            return Err(Error::Invariant(alloc::format!(
                "search maximum {max_cover} is below the greedy cover {}",
                self.seed
            )));
        }
        Ok(EngineOutcome { max_cover, configurations, nodes })
    }
}

fn popcount(w: &[u64]) -> u32 {
    w.iter().map(|x| x.count_ones()).sum()
}

struct Run<'a> {
    plan: &'a SearchPlan,
    incumbent: &'a AtomicU32,
    result: ShardResult,
    covered: Vec<u64>,
    elig: Vec<u64>,
    chosen: Vec<Index>,
    gains: Vec<Vec<(Index, u32)>>,
    tops: Vec<u32>,
}

impl Run<'_> {
    fn threshold(&self) -> u32 {
        self.incumbent.load(Ordering::Relaxed).max(self.result.best)
    }

    /// Make level `d + 1` from level `d` plus candidate `i`.
    fn push(&mut self, d: usize, i: usize) {
        let (w, cw) = (self.plan.words, self.plan.cwords);
        let (lo, hi) = self.covered.split_at_mut((d + 1) * w);
        for ((n, o), a) in hi[..w].iter_mut().zip(&lo[d * w..]).zip(self.plan.cov_row(i)) {
            *n = o | a;
        }
        let (lo, hi) = self.elig.split_at_mut((d + 1) * cw);
        let conflict = &self.plan.conflict[i * cw..(i + 1) * cw];
        for (t, ((n, o), c)) in hi[..cw].iter_mut().zip(&lo[d * cw..]).zip(conflict).enumerate() {
            // keep only later candidates
            let later = if (t + 1) * 64 <= i + 1 {
                0
            } else if t * 64 > i {
                u64::MAX
            } else {
                u64::MAX << ((i + 1) % 64)
            };
            *n = o & !c & later;
        }
        if self.chosen.len() > d {
            self.chosen.truncate(d);
        }
        self.chosen.push(i as Index);
    }

    fn record(&mut self, value: u32, last: usize) {
        if value > self.result.best {
            self.result.best = value;
            self.result.found.clear();
            self.incumbent.fetch_max(value, Ordering::Relaxed);
        }
        let mut idx = self.chosen.clone();
        idx.push(last as Index);
        self.result.found.push(idx);
    }

    fn visit(&mut self, d: usize, covered_count: u32) {
        self.result.nodes += 1;
        let plan = self.plan;
        let r = plan.q - d;
        let (w, cw) = (plan.words, plan.cwords);

        let mut gains = core::mem::take(&mut self.gains[d]);
        gains.clear();
        {
            let covered = &self.covered[d * w..(d + 1) * w];
            let elig = &self.elig[d * cw..(d + 1) * cw];
            for (t, &word) in elig.iter().enumerate() {
                let mut bits = word;
                while bits != 0 {
                    let i = t * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    gains.push((i as Index, plan.gain(covered, i)));
                }
            }
        }

        if r == 1 {
            for &(i, g) in &gains {
                let v = covered_count + g;
                if v >= self.threshold() {
                    self.record(v, i as usize);
                }
            }
            self.gains[d] = gains;
            return;
        }
        if gains.len() < r {
            self.gains[d] = gains;
            return;
        }

        // bound for child i: its gain plus the best r-1 gains after it
        let mut passing: Vec<(Index, u32, u32)> = Vec::new();
        let threshold = self.threshold();
        let tops = &mut self.tops[..r - 1];
        tops.fill(0);
        for (seen, &(i, g)) in gains.iter().rev().enumerate() {
            if seen >= r - 1 {
                let bound = covered_count + g + tops.iter().sum::<u32>();
                if bound >= threshold {
                    passing.push((i, g, bound));
                }
            }
            // insert g into the descending top list
            if g > tops[r - 2] {
                let mut p = r - 2;
                while p > 0 && tops[p - 1] < g {
                    tops[p] = tops[p - 1];
                    p -= 1;
                }
                tops[p] = g;
            }
        }
        self.gains[d] = gains;

        for &(i, g, bound) in passing.iter().rev() {
            if bound < self.threshold() {
                continue;
            }
            self.push(d, i as usize);
            self.visit(d + 1, covered_count + g);
        }
        self.chosen.truncate(d);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(board: Board, q: usize, nonattacking: bool) -> (u32, Vec<Configuration>) {
        let sq: Vec<Square> = board.squares().collect();
        let mut best = 0;
        let mut out = Vec::new();
        let mut idx: Vec<usize> = (0..q).collect();
        loop {
            let c = Configuration::new(idx.iter().map(|&i| sq[i])).unwrap();
            if !nonattacking || crate::coverage::is_nonattacking(&c) {
                let v = crate::coverage::cover_count(&c, board);
                if v > best {
                    best = v;
                    out.clear();
                }
                if v == best {
                    out.push(c);
                }
            }
            let mut p = q;
            loop {
                if p == 0 {
                    out.sort();
                    return (best, out);
                }
                p -= 1;
                if idx[p] < sq.len() - q + p {
                    break;
                }
            }
            idx[p] += 1;
            for t in p + 1..q {
                idx[t] = idx[t - 1] + 1;
            }
        }
    }

    #[test]
    fn matches_brute_force() {
        for n in 2..=7 {
            let board = Board::new(n).unwrap();
            let all: Vec<Square> = board.squares().collect();
            for q in 1..=3usize.min(all.len()) {
                for na in [false, true] {
                    let plan = SearchPlan::new(board, q as u32, &all, na).unwrap();
                    let got = plan.solve().unwrap();
                    let (best, set) = brute(board, q, na);
                    assert_eq!(got.max_cover, best, "n={n} q={q} na={na}");
                    assert_eq!(got.configurations, set, "n={n} q={q} na={na}");
                }
            }
        }
    }

    #[test]
    fn shard_order_does_not_matter() {
        let board = Board::new(8).unwrap();
        let all: Vec<Square> = board.squares().collect();
        let plan = SearchPlan::new(board, 3, &all, false).unwrap();
        let inc = AtomicU32::new(plan.seed());
        let mut res: Vec<ShardResult> = (0..plan.shard_count()).rev().map(|s| plan.run_shard(s, &inc)).collect();
        res.reverse();
        let a = plan.finish(res).unwrap();
        let b = plan.solve().unwrap();
        assert_eq!(a.max_cover, b.max_cover);
        assert_eq!(a.configurations, b.configurations);
    }
}
