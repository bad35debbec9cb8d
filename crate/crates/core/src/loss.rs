//! Internal loss, centralized loss and the crossing decomposition.
//!
//! For a non-attacking configuration whose attack-line crossings all lie on
//! the board, `cover = (4n - 3) q - (inloss + cenloss)` holds exactly.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::coverage::{attack_field, is_nonattacking, Configuration};
use crate::error::{Error, Result};
use crate::geometry::{Board, Square};

/// Every loss quantity of one configuration on one board.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LossBreakdown {
    pub inloss: u64,
    pub cenloss: u64,
    pub total: u64,
    pub gamma: u64,
    pub eta: u64,
    pub e: u32,
    pub o: u32,
    /// Every crossing is on the board, so the values do not depend on `n`.
    pub stable: bool,
}

/// `Σ (a_C(s) - 1)` over attacked squares of `board`.
pub fn inloss(c: &Configuration, board: Board) -> u64 {
    attack_field(c, board).internal_loss()
}

/// Odd board side used to evaluate [`inloss_stable`]: the configuration is
/// re-centered on its bounding box, `rho` is its Chebyshev radius and `span`
/// the longer box side minus one.
pub fn stable_board_side(c: &Configuration) -> u32 {
    let Some((lo, hi)) = c.bounding_box() else {
        return 1;
    };
    let span = (hi.x - lo.x).max(hi.y - lo.y) as u32;
    let centered = recenter(c);
    let rho = centered.radius(Board::new(1).expect("n=1 is valid"));
    (6 * rho + 1).max(2 * span + 9)
}

fn recenter(c: &Configuration) -> Configuration {
    match c.bounding_box() {
        Some((lo, hi)) => c.translated(-(lo.x + hi.x).div_euclid(2), -(lo.y + hi.y).div_euclid(2)),
        None => c.clone(),
    }
}

/// Board-independent internal loss of a non-attacking configuration.
///
/// Evaluated on the odd board from [`stable_board_side`] and certified by a
/// second evaluation two sizes larger.
pub fn inloss_stable(c: &Configuration) -> Result<u64> {
    if !is_nonattacking(c) {
        return Err(Error::UnboundedLoss);
    }
    let centered = recenter(c);
    let n = stable_board_side(c);
    let first = inloss(&centered, Board::new(n)?);
    let second = inloss(&centered, Board::new(n + 2)?);
    if first != second {
        return Err(Error::Invariant(alloc::format!(
            "internal loss changed from {first} to {second} between B_{n} and B_{}",
            n + 2
        )));
    }
    Ok(first)
}

/// `0` (odd board) or `1` (even board) plus two per unit of Chebyshev
/// distance from the nearest central square.
pub fn cenloss_queen(s: Square, board: Board) -> Result<u32> {
    Ok(board.is_even() as u32 + 2 * board.center_distance(s)?)
}

pub fn cenloss(c: &Configuration, board: Board) -> Result<u64> {
    c.queens().iter().map(|&s| cenloss_queen(s, board).map(u64::from)).sum()
}

/// `12 C(e,2) + 12 C(o,2) + 10 e o`: number of pairwise line crossings of a
/// non-attacking configuration with `e` even and `o` odd queens.
pub fn gamma(e: u32, o: u32) -> u64 {
    let (e, o) = (e as u64, o as u64);
    6 * e * e.saturating_sub(1) + 6 * o * o.saturating_sub(1) + 10 * e * o
}

/// Overlap concentration `Σ [C(a,2) - (a - 1)]` over attacked squares.
pub fn eta(c: &Configuration, board: Board) -> u64 {
    attack_field(c, board).overlap_concentration()
}

/// `floor(q^2 / 4)`.
pub fn quarter_squares(q: u32) -> u64 {
    (q as u64 * q as u64) / 4
}

/// Pairs of queens with different parity, `e * o`.
pub fn noncongruent_pairs(c: &Configuration) -> u64 {
    let (e, o) = c.parity_counts();
    e as u64 * o as u64
}

/// Integral crossing points of the attack lines of two distinct queens
/// (at most twelve). Lines shared by both queens are skipped.
pub fn line_crossings(p: Square, s: Square) -> impl Iterator<Item = Square> {
    let lines = |q: Square| [(0u8, q.y), (1, q.x), (2, q.x - q.y), (3, q.x + q.y)];
    let (lp, ls) = (lines(p), lines(s));
    lp.into_iter()
        .flat_map(move |a| ls.into_iter().map(move |b| (a, b)))
        .filter_map(|((ka, va), (kb, vb))| intersect(ka, va, kb, vb))
}

/// Lines: 0 row `y = v`, 1 column `x = v`, 2 diagonal `x - y = v`,
/// 3 anti-diagonal `x + y = v`.
fn intersect(ka: u8, va: i32, kb: u8, vb: i32) -> Option<Square> {
    if ka == kb {
        return None;
    }
    let ((k1, v1), (k2, v2)) = if ka < kb { ((ka, va), (kb, vb)) } else { ((kb, vb), (ka, va)) };
    match (k1, k2) {
        (0, 1) => Some(Square::new(v2, v1)),
        (0, 2) => Some(Square::new(v2 + v1, v1)),
        (0, 3) => Some(Square::new(v2 - v1, v1)),
        (1, 2) => Some(Square::new(v1, v1 - v2)),
        (1, 3) => Some(Square::new(v1, v2 - v1)),
        (2, 3) => {
            let sum = v1 + v2;
            (sum % 2 == 0).then(|| Square::new(sum / 2, v2 - sum / 2))
        }
        _ => unreachable!(),
    }
}

/// Whether every crossing of two queens' attack lines lies on `board`,
/// i.e. the internal loss on `board` equals the stable internal loss.
pub fn crossings_on_board(c: &Configuration, board: Board) -> bool {
    let q = c.queens();
    q.iter()
        .enumerate()
        .all(|(i, &p)| q[i + 1..].iter().all(|&s| line_crossings(p, s).all(|t| t == p || t == s || board.contains(t))))
}

/// Attacking numbers at crossing squares, computed on the infinite plane
/// from pairwise line crossings only.
pub fn crossing_multiplicities(c: &Configuration) -> BTreeMap<Square, u32> {
    let q = c.queens();
    let mut hits: BTreeMap<Square, Vec<usize>> = BTreeMap::new();
    for (i, &p) in q.iter().enumerate() {
        for (j, &s) in q.iter().enumerate().skip(i + 1) {
            for t in line_crossings(p, s) {
                let who = hits.entry(t).or_default();
                for k in [i, j] {
                    if !who.contains(&k) {
                        who.push(k);
                    }
                }
            }
        }
    }
    hits.into_iter().filter(|(t, _)| !c.contains(*t)).map(|(t, who)| (t, who.len() as u32)).collect()
}

/// Full breakdown on `board`. All queens must be on the board.
pub fn total_loss(c: &Configuration, board: Board) -> Result<LossBreakdown> {
    let cen = cenloss(c, board)?;
    let field = attack_field(c, board);
    let inloss = field.internal_loss();
    let (e, o) = c.parity_counts();
    let stable = is_nonattacking(c) && crossings_on_board(c, board);
    Ok(LossBreakdown {
        inloss,
        cenloss: cen,
        total: inloss + cen,
        gamma: gamma(e, o),
        eta: field.overlap_concentration(),
        e,
        o,
        stable,
    })
}

/// Cover predicted by the loss identity `(4n - 3) q - loss`.
pub fn predicted_cover(c: &Configuration, board: Board) -> Result<u64> {
    let loss = total_loss(c, board)?;
    if !loss.stable {
        return Err(Error::NotStable { n: board.side() });
    }
    let n = board.side() as u64;
    Ok((4 * n - 3) * c.len() as u64 - loss.total)
}
