//! Reference configurations: the knight square, the stairs family and
//! centralized placement of a pattern.

use alloc::vec::Vec;

use crate::coverage::{is_nonattacking, Configuration};
use crate::error::{Error, Result};
use crate::geometry::{Board, Square};
use crate::loss::inloss_stable;

/// A configuration up to translation, stored with its bounding box at the
/// origin.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pattern {
    offsets: Configuration,
}

impl Pattern {
    pub fn new(squares: impl IntoIterator<Item = Square>) -> Result<Pattern> {
        Ok(Pattern::from_configuration(&Configuration::new(squares)?))
    }

    pub fn from_configuration(c: &Configuration) -> Pattern {
        Pattern { offsets: c.normalized() }
    }

    pub fn offsets(&self) -> &Configuration {
        &self.offsets
    }

    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }

    /// Bounding box `(width, height)`.
    pub fn dimensions(&self) -> (u32, u32) {
        match self.offsets.bounding_box() {
            Some((lo, hi)) => ((hi.x - lo.x + 1) as u32, (hi.y - lo.y + 1) as u32),
            None => (0, 0),
        }
    }

    /// Whether the pattern fits a `w x h` box in some orientation.
    pub fn fits(&self, w: u32, h: u32) -> bool {
        let (pw, ph) = self.dimensions();
        (pw <= w && ph <= h) || (pw <= h && ph <= w)
    }

    /// Place with the lower-left bounding-box corner at `corner`.
    pub fn place(&self, corner: Square) -> Configuration {
        self.offsets.translated(corner.x, corner.y)
    }
}

/// `{(-1,0), (0,2), (1,-1), (2,1)}`: four queens a knight's move apart.
pub fn knight_square() -> Pattern {
    Pattern::new([(-1, 0), (0, 2), (1, -1), (2, 1)].map(Square::from)).expect("distinct squares")
}

/// A stairs pattern together with the displacement that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stairs {
    pub q: u32,
    /// Offset of the second knight-step sequence relative to the first.
    pub shift: Square,
    pub pattern: Pattern,
}

fn stairs_union(q: u32, shift: Square) -> Option<Configuration> {
    let first = (0..q.div_ceil(2) as i32).map(|i| Square::new(i, 2 * i));
    let second = (0..(q / 2) as i32).map(|i| Square::new(i + shift.x, 2 * i + shift.y));
    Configuration::new(first.chain(second)).ok()
}

/// Two `(1,2)`-step queen sequences of sizes `ceil(q/2)` and `floor(q/2)`,
/// the second displaced by the non-attacking shift (within Chebyshev radius
/// `2q`) that minimizes, in order: centralized loss on odd boards, stable
/// internal loss, the shift's Chebyshev norm, the shift itself.
pub fn stairs(q: u32) -> Result<Stairs> {
    if q < 2 {
        return Err(Error::InvalidQueenCount { q, min: 2 });
    }
    let r = 2 * q as i32;
    let mut candidates: Vec<(u64, Square, Configuration)> = Vec::new();
    for sx in -r..=r {
        for sy in -r..=r {
            let shift = Square::new(sx, sy);
            let Some(c) = stairs_union(q, shift) else { continue };
            if c.len() != q as usize || !is_nonattacking(&c) {
                continue;
            }
            let cen = min_cenloss(&Pattern::from_configuration(&c), false);
            candidates.push((cen, shift, c));
        }
    }
    let best_cen = candidates
        .iter()
        .map(|c| c.0)
        .min()
        .ok_or_else(|| Error::Invariant(alloc::format!("no non-attacking stairs shift for q={q}")))?;
    let mut best: Option<(u64, u32, Square, Configuration)> = None;
    for (_, shift, c) in candidates.into_iter().filter(|c| c.0 == best_cen) {
        let key = (inloss_stable(&c)?, shift.chebyshev(Square::new(0, 0)), shift);
        if best.as_ref().is_none_or(|b| key < (b.0, b.1, b.2)) {
            best = Some((key.0, key.1, key.2, c));
        }
    }
    let (_, _, shift, c) = best.expect("non-empty candidate group");
    Ok(Stairs { q, shift, pattern: Pattern::from_configuration(&c) })
}

fn cen_value(s: Square, even: bool) -> u64 {
    let axis = |v: i32| -> u64 {
        if even {
            if v < 0 {
                v.unsigned_abs() as u64
            } else {
                (v - 1).max(0) as u64
            }
        } else {
            v.unsigned_abs() as u64
        }
    };
    even as u64 + 2 * axis(s.x).max(axis(s.y))
}

/// Smallest centralized loss of any placement on a large board of the
/// given parity. Some minimizer always has its bounding box touching the
/// central square(s), which bounds the translations to try.
pub fn min_cenloss(p: &Pattern, even: bool) -> u64 {
    let (w, h) = p.dimensions();
    let c = even as i32;
    let mut best = u64::MAX;
    for tx in -(w as i32 - 1)..=c {
        for ty in -(h as i32 - 1)..=c {
            let v = p.offsets().queens().iter().map(|s| cen_value(s.offset(tx, ty), even)).sum();
            best = best.min(v);
        }
    }
    if p.is_empty() {
        0
    } else {
        best
    }
}

/// All placements of `p` on `board` with minimal centralized loss, sorted.
pub fn centralize(p: &Pattern, board: Board) -> Result<Vec<Configuration>> {
    let (w, h) = p.dimensions();
    let n = board.side();
    if w > n || h > n {
        return Err(Error::PatternDoesNotFit { width: w, height: h, n });
    }
    let (lo, hi) = (board.lo(), board.hi());
    let mut best = u64::MAX;
    let mut out = Vec::new();
    for cx in lo..=hi - w.max(1) as i32 + 1 {
        for cy in lo..=hi - h.max(1) as i32 + 1 {
            let c = p.place(Square::new(cx, cy));
            let v: u64 = c.queens().iter().map(|&s| cen_value(s, board.is_even())).sum();
            if v < best {
                best = v;
                out.clear();
            }
            if v == best {
                out.push(c);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// One row of the stairs loss table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PatternLoss {
    pub inloss: u64,
    pub cen_odd: u64,
    pub total_odd: u64,
    pub cen_even: u64,
    pub total_even: u64,
}

/// Stable losses of a non-attacking pattern once centralized on large odd
/// and even boards.
pub fn pattern_loss(p: &Pattern) -> Result<PatternLoss> {
    let inloss = inloss_stable(p.offsets())?;
    let (cen_odd, cen_even) = (min_cenloss(p, false), min_cenloss(p, true));
    Ok(PatternLoss { inloss, cen_odd, total_odd: inloss + cen_odd, cen_even, total_even: inloss + cen_even })
}

/// The central `q x (q+1)` rectangle `R_q` as inclusive corners.
pub fn central_rectangle(q: u32) -> (Square, Square) {
    let q = q as i32;
    if q % 2 == 0 {
        (Square::new(-q / 2 + 1, -q / 2 + 1), Square::new(q / 2, q / 2 + 1))
    } else {
        (Square::new(-(q - 1) / 2, -(q - 1) / 2), Square::new((q - 1) / 2, (q + 1) / 2))
    }
}
