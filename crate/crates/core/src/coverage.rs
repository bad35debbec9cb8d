//! Queen attacks, attacking numbers and cover.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::geometry::{parity_of, Board, Parity, Square, Transform};

/// A finite set of queens, kept sorted so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "Vec<Square>", into = "Vec<Square>"))]
pub struct Configuration {
    queens: Vec<Square>,
}

impl Configuration {
    /// Build from any collection of squares; duplicates are an error.
    pub fn new(queens: impl IntoIterator<Item = Square>) -> Result<Self> {
        let mut queens: Vec<Square> = queens.into_iter().collect();
        queens.sort_unstable();
        if let Some(w) = queens.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateQueen(w[0]));
        }
        Ok(Configuration { queens })
    }

    /// Build from a list that must already be strictly increasing.
    pub fn from_sorted(queens: Vec<Square>) -> Result<Self> {
        for w in queens.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateQueen(w[0]));
            }
            if w[0] > w[1] {
                return Err(Error::Invariant(alloc::format!("queens out of order: {} before {}", w[0], w[1])));
            }
        }
        Ok(Configuration { queens })
    }

    pub(crate) fn from_unique_unsorted(mut queens: Vec<Square>) -> Self {
        queens.sort_unstable();
        debug_assert!(queens.windows(2).all(|w| w[0] < w[1]));
        Configuration { queens }
    }

    pub fn queens(&self) -> &[Square] {
        &self.queens
    }

    pub fn len(&self) -> usize {
        self.queens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.queens.is_empty()
    }

    pub fn contains(&self, s: Square) -> bool {
        self.queens.binary_search(&s).is_ok()
    }

    /// Numbers of even and odd queens, `(e, o)`.
    pub fn parity_counts(&self) -> (u32, u32) {
        let e = self.queens.iter().filter(|&&s| parity_of(s) == Parity::Even).count() as u32;
        (e, self.queens.len() as u32 - e)
    }

    /// Largest Chebyshev distance of a queen from the board center.
    pub fn radius(&self, board: Board) -> u32 {
        self.queens.iter().map(|&s| board.center_distance_unchecked(s)).max().unwrap_or(0)
    }

    pub fn is_feasible(&self, board: Board) -> bool {
        self.queens.iter().all(|&s| board.contains(s))
    }

    /// Lower-left and upper-right corners of the bounding box.
    pub fn bounding_box(&self) -> Option<(Square, Square)> {
        let first = *self.queens.first()?;
        let (mut lo, mut hi) = (first, first);
        for s in &self.queens {
            lo.x = lo.x.min(s.x);
            lo.y = lo.y.min(s.y);
            hi.x = hi.x.max(s.x);
            hi.y = hi.y.max(s.y);
        }
        Some((lo, hi))
    }

    pub fn translated(&self, dx: i32, dy: i32) -> Configuration {
        // translation preserves lexicographic order
        Configuration { queens: self.queens.iter().map(|s| s.offset(dx, dy)).collect() }
    }

    pub fn transformed(&self, t: Transform, board: Board) -> Configuration {
        Configuration::from_unique_unsorted(self.queens.iter().map(|&s| t.apply_unchecked(board, s)).collect())
    }

    /// Smallest configuration (lexicographically) among the eight images.
    pub fn canonical(&self, board: Board) -> Configuration {
        Transform::ALL.iter().map(|&t| self.transformed(t, board)).min().unwrap_or_default()
    }

    /// Translate so that the bounding box starts at `(0,0)`.
    pub fn normalized(&self) -> Configuration {
        match self.bounding_box() {
            Some((lo, _)) => self.translated(-lo.x, -lo.y),
            None => self.clone(),
        }
    }
}

impl TryFrom<Vec<Square>> for Configuration {
    type Error = Error;

    fn try_from(queens: Vec<Square>) -> Result<Self> {
        Configuration::from_sorted(queens)
    }
}

impl From<Configuration> for Vec<Square> {
    fn from(c: Configuration) -> Self {
        c.queens
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.queens.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl<'a> IntoIterator for &'a Configuration {
    type Item = &'a Square;
    type IntoIter = core::slice::Iter<'a, Square>;
    fn into_iter(self) -> Self::IntoIter {
        self.queens.iter()
    }
}

/// Whether a queen on `a` attacks `b`. A queen never attacks her own square.
pub fn attacks(a: Square, b: Square) -> bool {
    if a == b {
        return false;
    }
    let (dx, dy) = (a.x - b.x, a.y - b.y);
    dx == 0 || dy == 0 || dx.abs() == dy.abs()
}

pub fn is_nonattacking(c: &Configuration) -> bool {
    let q = c.queens();
    q.iter().enumerate().all(|(i, &a)| q[i + 1..].iter().all(|&b| !attacks(a, b)))
}

/// Attacking numbers `a_C(s)` over every square of a board.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttackField {
    board: Board,
    counts: Vec<u16>,
}

impl AttackField {
    pub fn board(&self) -> Board {
        self.board
    }

    /// `a_C(s)`, or `None` off the board.
    pub fn get(&self, s: Square) -> Option<u16> {
        self.board.contains(s).then(|| self.counts[self.board.index(s)])
    }

    pub fn iter(&self) -> impl Iterator<Item = (Square, u16)> + '_ {
        self.counts.iter().enumerate().map(|(i, &a)| (self.board.square_at(i), a))
    }

    pub fn max(&self) -> u16 {
        self.counts.iter().copied().max().unwrap_or(0)
    }

    /// `hist[k]` is the number of squares attacked exactly `k` times.
    pub fn histogram(&self) -> Vec<u32> {
        let mut hist = vec![0u32; self.max() as usize + 1];
        for &a in &self.counts {
            hist[a as usize] += 1;
        }
        hist
    }

    /// `Σ (a - 1)` over attacked squares.
    pub fn internal_loss(&self) -> u64 {
        self.counts.iter().filter(|&&a| a > 0).map(|&a| a as u64 - 1).sum()
    }

    /// `Σ [C(a,2) - (a - 1)]` over attacked squares.
    pub fn overlap_concentration(&self) -> u64 {
        self.counts
            .iter()
            .filter(|&&a| a > 0)
            .map(|&a| {
                let a = a as u64;
                a * (a - 1) / 2 - (a - 1)
            })
            .sum()
    }
}

/// Walk the on-board part of every attack line of `q`, excluding `q` itself.
pub(crate) fn for_each_attacked(board: Board, q: Square, mut f: impl FnMut(Square)) {
    let (lo, hi) = (board.lo(), board.hi());
    let in_range = |v: i32| lo <= v && v <= hi;
    if in_range(q.y) {
        for x in lo..=hi {
            if x != q.x {
                f(Square::new(x, q.y));
            }
        }
    }
    if in_range(q.x) {
        for y in lo..=hi {
            if y != q.y {
                f(Square::new(q.x, y));
            }
        }
    }
    // diagonal (q.x + i, q.y + i)
    let (from, to) = ((lo - q.x).max(lo - q.y), (hi - q.x).min(hi - q.y));
    for i in from..=to {
        if i != 0 {
            f(Square::new(q.x + i, q.y + i));
        }
    }
    // anti-diagonal (q.x + i, q.y - i)
    let (from, to) = ((lo - q.x).max(q.y - hi), (hi - q.x).min(q.y - lo));
    for i in from..=to {
        if i != 0 {
            f(Square::new(q.x + i, q.y - i));
        }
    }
}

/// Attacking numbers of `c` on `board`. Queens off the board still attack
/// the on-board parts of their lines.
pub fn attack_field(c: &Configuration, board: Board) -> AttackField {
    let mut counts = vec![0u16; board.square_count() as usize];
    for &q in c {
        for_each_attacked(board, q, |s| counts[board.index(s)] += 1);
    }
    AttackField { board, counts }
}

/// Number of board squares occupied or attacked, without multiplicity.
pub fn cover_count(c: &Configuration, board: Board) -> u32 {
    if board.side() <= LineSet::MAX_SIDE && c.is_feasible(board) {
        let mut lines = LineSet::default();
        for &q in c {
            lines.insert(board, q);
        }
        return lines.cover(board.side());
    }
    let field = attack_field(c, board);
    field.iter().filter(|&(s, a)| a > 0 || c.contains(s)).count() as u32
}

/// Cover of a single queen on `board`, by direct line length arithmetic.
pub fn single_cover(board: Board, s: Square) -> u32 {
    let mut k = 0;
    for_each_attacked(board, s, |_| k += 1);
    k + board.contains(s) as u32
}

/// Occupied rows, columns, diagonals and anti-diagonals of an on-board
/// configuration, as bitmasks. Cover follows from the lines alone: a square
/// is covered iff one of its four lines holds a queen.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LineSet {
    rows: u64,
    cols: u64,
    diags: u128,
    antis: u128,
}

/// Board-relative line indices of one square.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct LineIndex {
    pub col: u32,
    pub row: u32,
    pub diag: u32,
    pub anti: u32,
}

impl LineIndex {
    pub fn of(board: Board, s: Square) -> LineIndex {
        debug_assert!(board.contains(s));
        let lo = board.lo();
        let (col, row) = ((s.x - lo) as u32, (s.y - lo) as u32);
        LineIndex { col, row, diag: col + board.side() - 1 - row, anti: col + row }
    }
}

impl LineSet {
    pub const MAX_SIDE: u32 = 64;

    pub fn insert(&mut self, board: Board, s: Square) {
        self.insert_index(LineIndex::of(board, s));
    }

    pub(crate) fn insert_index(&mut self, l: LineIndex) {
        self.rows |= 1 << l.row;
        self.cols |= 1 << l.col;
        self.diags |= 1 << l.diag;
        self.antis |= 1 << l.anti;
    }

    /// Covered squares on a board of side `n`.
    pub fn cover(&self, n: u32) -> u32 {
        debug_assert!(n <= Self::MAX_SIDE);
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut total = 0;
        for row in 0..n {
            if (self.rows >> row) & 1 != 0 {
                total += n;
            } else {
                let mask = self.cols | (self.diags >> (n - 1 - row)) as u64 | (self.antis >> row) as u64;
                total += (mask & full).count_ones();
            }
        }
        total
    }
}
