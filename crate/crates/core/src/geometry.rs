//! Centered board coordinates and the dihedral group acting on them.
//!
//! Odd boards are centered on `(0,0)`. Even boards put `(0,0)` at the lower
//! left of the four central squares, so `B_n` spans `-(n/2-1)..=n/2` on both
//! axes and its geometric center is `(0.5, 0.5)`.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// A board coordinate. Unbounded: attack lines leave the board and queens
/// may be placed anywhere, membership is always checked with [`Board::contains`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(from = "(i32, i32)", into = "(i32, i32)"))]
pub struct Square {
    pub x: i32,
    pub y: i32,
}

impl Square {
    pub const fn new(x: i32, y: i32) -> Self {
        Square { x, y }
    }

    pub const fn offset(self, dx: i32, dy: i32) -> Self {
        Square { x: self.x + dx, y: self.y + dy }
    }

    /// Chebyshev distance between two squares.
    pub fn chebyshev(self, other: Square) -> u32 {
        self.x.abs_diff(other.x).max(self.y.abs_diff(other.y))
    }
}

impl fmt::Display for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl From<(i32, i32)> for Square {
    fn from((x, y): (i32, i32)) -> Self {
        Square { x, y }
    }
}

impl From<Square> for (i32, i32) {
    fn from(s: Square) -> Self {
        (s.x, s.y)
    }
}

/// Color class of a square: `x - y` even or odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Parity {
    Even,
    Odd,
}

pub fn parity_of(s: Square) -> Parity {
    if (s.x - s.y).rem_euclid(2) == 0 {
        Parity::Even
    } else {
        Parity::Odd
    }
}

/// The `n x n` board `B_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct Board {
    n: u32,
}

impl Board {
    /// Largest side length accepted. Keeps every coordinate and count well
    /// inside `i32`/`u32`.
    pub const MAX_SIDE: u32 = 1 << 12;

    pub fn new(n: u32) -> Result<Self> {
        if n == 0 || n > Self::MAX_SIDE {
            return Err(Error::InvalidBoard { n, min: 1 });
        }
        Ok(Board { n })
    }

    pub const fn side(self) -> u32 {
        self.n
    }

    pub const fn is_even(self) -> bool {
        self.n.is_multiple_of(2)
    }

    /// `1` on even boards, `0` on odd ones: twice the center coordinate.
    pub const fn center_twice(self) -> i32 {
        (self.n.is_multiple_of(2)) as i32
    }

    /// Smallest coordinate on either axis, `floor((2 - n) / 2)`.
    pub const fn lo(self) -> i32 {
        (2 - self.n as i32).div_euclid(2)
    }

    /// Largest coordinate on either axis, `floor(n / 2)`.
    pub const fn hi(self) -> i32 {
        (self.n / 2) as i32
    }

    pub const fn square_count(self) -> u64 {
        self.n as u64 * self.n as u64
    }

    pub fn contains(self, s: Square) -> bool {
        let (lo, hi) = (self.lo(), self.hi());
        lo <= s.x && s.x <= hi && lo <= s.y && s.y <= hi
    }

    pub(crate) fn check(self, s: Square) -> Result<()> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(Error::OffBoard { square: s, n: self.n })
        }
    }

    /// All squares in lexicographic `(x, y)` order.
    pub fn squares(self) -> impl Iterator<Item = Square> + Clone {
        let (lo, hi) = (self.lo(), self.hi());
        (lo..=hi).flat_map(move |x| (lo..=hi).map(move |y| Square::new(x, y)))
    }

    /// Dense index of an on-board square, row-major from the lower left.
    pub(crate) fn index(self, s: Square) -> usize {
        debug_assert!(self.contains(s));
        let lo = self.lo();
        (s.y - lo) as usize * self.n as usize + (s.x - lo) as usize
    }

    pub(crate) fn square_at(self, index: usize) -> Square {
        let n = self.n as usize;
        let lo = self.lo();
        Square::new((index % n) as i32 + lo, (index / n) as i32 + lo)
    }

    /// The border `b_n = B_n \ B_{n-2}`.
    pub fn border_squares(self) -> Result<Vec<Square>> {
        if self.n < 2 {
            return Err(Error::InvalidBoard { n: self.n, min: 2 });
        }
        let (lo, hi) = (self.lo(), self.hi());
        Ok(self.squares().filter(|s| s.x == lo || s.x == hi || s.y == lo || s.y == hi).collect())
    }

    /// Chebyshev distance to the nearest central square.
    pub fn center_distance(self, s: Square) -> Result<u32> {
        self.check(s)?;
        Ok(self.center_distance_unchecked(s))
    }

    /// As [`Board::center_distance`] but defined for every square.
    pub fn center_distance_unchecked(self, s: Square) -> u32 {
        if self.is_even() {
            fn axis(v: i32) -> u32 {
                if v < 0 {
                    v.unsigned_abs()
                } else if v > 1 {
                    (v - 1) as u32
                } else {
                    0
                }
            }
            axis(s.x).max(axis(s.y))
        } else {
            s.x.unsigned_abs().max(s.y.unsigned_abs())
        }
    }

    /// Squares within Chebyshev distance `radius` of the center: a centered
    /// box of side `2r+1` (odd) or `2r+2` (even), clipped to the board.
    pub fn central_box(self, radius: u32) -> impl Iterator<Item = Square> {
        self.squares().filter(move |&s| self.center_distance_unchecked(s) <= radius)
    }
}

impl fmt::Display for Board {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B_{}", self.n)
    }
}

/// One of the eight symmetries of the square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Transform {
    Identity,
    Rot90,
    Rot180,
    Rot270,
    /// `x -> -x` about the board center.
    MirrorX,
    /// `y -> -y` about the board center.
    MirrorY,
    /// Swap `x` and `y`.
    MirrorDiag,
    /// Reflection in the anti-diagonal through the center.
    MirrorAntiDiag,
}

impl Transform {
    pub const ALL: [Transform; 8] = [
        Transform::Identity,
        Transform::Rot90,
        Transform::Rot180,
        Transform::Rot270,
        Transform::MirrorX,
        Transform::MirrorY,
        Transform::MirrorDiag,
        Transform::MirrorAntiDiag,
    ];

    /// Signed permutation matrix acting on coordinates measured from the
    /// center (doubled, so even boards stay integral).
    const fn matrix(self) -> [[i32; 2]; 2] {
        match self {
            Transform::Identity => [[1, 0], [0, 1]],
            Transform::Rot90 => [[0, -1], [1, 0]],
            Transform::Rot180 => [[-1, 0], [0, -1]],
            Transform::Rot270 => [[0, 1], [-1, 0]],
            Transform::MirrorX => [[-1, 0], [0, 1]],
            Transform::MirrorY => [[1, 0], [0, -1]],
            Transform::MirrorDiag => [[0, 1], [1, 0]],
            Transform::MirrorAntiDiag => [[0, -1], [-1, 0]],
        }
    }

    fn from_matrix(m: [[i32; 2]; 2]) -> Transform {
        Self::ALL.into_iter().find(|t| t.matrix() == m).expect("signed permutation matrices are closed under product")
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(self, other: Transform) -> Transform {
        let (a, b) = (self.matrix(), other.matrix());
        let mut m = [[0; 2]; 2];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Self::from_matrix(m)
    }

    pub fn inverse(self) -> Transform {
        let m = self.matrix();
        // orthogonal: inverse is the transpose
        Self::from_matrix([[m[0][0], m[1][0]], [m[0][1], m[1][1]]])
    }

    pub fn order(self) -> u32 {
        let mut acc = self;
        let mut k = 1;
        while acc != Transform::Identity {
            acc = acc.compose(self);
            k += 1;
        }
        k
    }

    /// Image of `s` under the transform on `board`.
    pub fn apply(self, board: Board, s: Square) -> Result<Square> {
        board.check(s)?;
        Ok(self.apply_unchecked(board, s))
    }

    /// Same as [`Transform::apply`] without the membership check. The map
    /// is still the board-centered one, so it is defined on all of `Z x Z`.
    pub fn apply_unchecked(self, board: Board, s: Square) -> Square {
        let c = board.center_twice();
        let m = self.matrix();
        let (u, v) = (2 * s.x - c, 2 * s.y - c);
        let u2 = m[0][0] * u + m[0][1] * v;
        let v2 = m[1][0] * u + m[1][1] * v;
        Square::new((u2 + c) / 2, (v2 + c) / 2)
    }
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Transform::Identity => "identity",
            Transform::Rot90 => "rot90",
            Transform::Rot180 => "rot180",
            Transform::Rot270 => "rot270",
            Transform::MirrorX => "mirror-x",
            Transform::MirrorY => "mirror-y",
            Transform::MirrorDiag => "mirror-diag",
            Transform::MirrorAntiDiag => "mirror-antidiag",
        };
        f.write_str(name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;

    fn b(n: u32) -> Board {
        Board::new(n).unwrap()
    }

    #[test]
    fn membership_examples() {
        assert!(b(1).contains(Square::new(0, 0)));
        assert!(!b(2).contains(Square::new(-1, 0)));
        assert!(b(3).contains(Square::new(-1, 1)));
        let b2: BTreeSet<_> = b(2).squares().collect();
        let want: BTreeSet<_> = [(0, 0), (0, 1), (1, 0), (1, 1)].into_iter().map(Square::from).collect();
        assert_eq!(b2, want);
    }

    #[test]
    fn zero_board_is_rejected() {
        assert!(Board::new(0).is_err());
    }

    #[test]
    fn coordinate_range() {
        assert_eq!((b(9).lo(), b(9).hi()), (-4, 4));
        assert_eq!((b(10).lo(), b(10).hi()), (-4, 5));
        assert_eq!((b(1).lo(), b(1).hi()), (0, 0));
        assert_eq!((b(2).lo(), b(2).hi()), (0, 1));
    }

    #[test]
    fn border_examples() {
        assert_eq!(b(2).border_squares().unwrap().len(), 4);
        let b3 = b(3).border_squares().unwrap();
        assert_eq!(b3.len(), 8);
        assert!(!b3.contains(&Square::new(0, 0)));
        assert_eq!(b(10).border_squares().unwrap().len(), 36);
        assert_eq!(b(1).border_squares(), Err(Error::InvalidBoard { n: 1, min: 2 }));
    }

    #[test]
    fn border_is_difference_of_boards() {
        for n in 2..=40 {
            let inner: BTreeSet<_> = if n > 2 { b(n - 2).squares().collect() } else { BTreeSet::new() };
            let border: BTreeSet<_> = b(n).border_squares().unwrap().into_iter().collect();
            let diff: BTreeSet<_> = b(n).squares().filter(|s| !inner.contains(s)).collect();
            assert_eq!(border, diff, "n={n}");
            assert_eq!(border.len() as u32, 4 * n - 4);
        }
    }

    #[test]
    fn center_distance_examples() {
        assert_eq!(b(9).center_distance(Square::new(0, 0)), Ok(0));
        assert_eq!(b(12).center_distance(Square::new(2, 1)), Ok(1));
        assert_eq!(b(12).center_distance(Square::new(-1, 0)), Ok(1));
        assert!(b(3).center_distance(Square::new(2, 0)).is_err());
    }

    #[test]
    fn center_distance_matches_brute_force() {
        for n in 1..=24 {
            let board = b(n);
            let centers: Vec<Square> = if board.is_even() {
                [(0, 0), (0, 1), (1, 0), (1, 1)].into_iter().map(Square::from).collect()
            } else {
                alloc::vec![Square::new(0, 0)]
            };
            for s in board.squares() {
                let brute = centers.iter().map(|&c| s.chebyshev(c)).min().unwrap();
                assert_eq!(board.center_distance(s).unwrap(), brute);
            }
        }
    }

    #[test]
    fn parity_examples() {
        assert_eq!(parity_of(Square::new(0, 0)), Parity::Even);
        assert_eq!(parity_of(Square::new(1, 2)), Parity::Odd);
        assert_eq!(parity_of(Square::new(1, 3)), Parity::Even);
        assert_eq!(parity_of(Square::new(-3, 0)), Parity::Odd);
    }

    #[test]
    fn transform_examples() {
        assert_eq!(Transform::Rot180.apply(b(9), Square::new(2, 1)), Ok(Square::new(-2, -1)));
        assert_eq!(Transform::Rot90.apply(b(10), Square::new(1, 0)), Ok(Square::new(1, 1)));
        assert_eq!(Transform::MirrorX.apply(b(9), Square::new(2, 1)), Ok(Square::new(-2, 1)));
        assert!(Transform::Rot90.apply(b(9), Square::new(5, 0)).is_err());
    }

    #[test]
    fn transforms_permute_every_board() {
        for n in 1..=40 {
            let board = b(n);
            let all: BTreeSet<_> = board.squares().collect();
            for t in Transform::ALL {
                let image: BTreeSet<_> = board.squares().map(|s| t.apply(board, s).unwrap()).collect();
                assert_eq!(image, all, "{t} on n={n}");
                for s in board.squares() {
                    let back = t.inverse().apply(board, t.apply(board, s).unwrap()).unwrap();
                    assert_eq!(back, s);
                }
            }
        }
    }

    #[test]
    fn dihedral_group_structure() {
        let mut orders = [0u32; 5];
        for a in Transform::ALL {
            assert!(4 % a.order() == 0);
            orders[a.order() as usize] += 1;
            assert_eq!(a.compose(a.inverse()), Transform::Identity);
            for c in Transform::ALL {
                for d in Transform::ALL {
                    assert_eq!(a.compose(c).compose(d), a.compose(c.compose(d)));
                }
            }
        }
        // D4: identity, five involutions, two elements of order four
        assert_eq!(orders, [0, 1, 5, 0, 2]);
        assert_eq!(Transform::Rot90.compose(Transform::Rot90), Transform::Rot180);
        assert_ne!(Transform::Rot90.compose(Transform::MirrorX), Transform::MirrorX.compose(Transform::Rot90));
        // composition agrees with pointwise application
        let board = b(10);
        for a in Transform::ALL {
            for c in Transform::ALL {
                for s in board.squares() {
                    let lhs = a.compose(c).apply(board, s).unwrap();
                    let rhs = a.apply(board, c.apply(board, s).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn dense_index_round_trip() {
        for n in [1, 2, 7, 10] {
            let board = b(n);
            for s in board.squares() {
                assert_eq!(board.square_at(board.index(s)), s);
            }
        }
    }
}
