use alloc::string::String;
use core::fmt;

use crate::geometry::Square;

/// Everything that can go wrong inside the core library.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Board side outside the range accepted by the operation.
    InvalidBoard { n: u32, min: u32 },
    /// A square that must lie on the board does not.
    OffBoard { square: Square, n: u32 },
    /// The same square appears twice in a configuration.
    DuplicateQueen(Square),
    /// A queen count outside the accepted range.
    InvalidQueenCount { q: u32, min: u32 },
    /// More queens requested than the board has squares.
    TooManyQueens { q: u32, squares: u64 },
    /// Attacking configurations have internal loss that grows with `n`.
    UnboundedLoss,
    /// The loss/cover duality only holds once every crossing is on the board.
    NotStable { n: u32 },
    /// An exhaustive search would visit more subsets than allowed.
    BudgetExceeded { estimate: u128, budget: u64 },
    /// Windowed search box larger than the board.
    WindowTooLarge { window: u32, n: u32 },
    /// A pattern's bounding box does not fit on the board.
    PatternDoesNotFit { width: u32, height: u32, n: u32 },
    /// Board too large for the bitboard search engine.
    BoardTooLarge { n: u32, max: u32 },
    /// A checked invariant failed. Always a bug.
    Invariant(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidBoard { n, min } => {
                write!(f, "invalid board side {n} (must be at least {min})")
            }
            Error::OffBoard { square, n } => write!(f, "square {square} is not on B_{n}"),
            Error::DuplicateQueen(s) => write!(f, "duplicate queen at {s}"),
            Error::InvalidQueenCount { q, min } => {
                write!(f, "invalid queen count {q} (must be at least {min})")
            }
            Error::TooManyQueens { q, squares } => {
                write!(f, "{q} queens do not fit on {squares} squares")
            }
            Error::UnboundedLoss => {
                write!(f, "configuration is attacking; its internal loss grows with the board")
            }
            Error::NotStable { n } => {
                write!(f, "board side {n} is too small for the loss/cover identity (attack crossings leave the board)")
            }
            Error::BudgetExceeded { estimate, budget } => {
                write!(f, "search refused: {estimate} candidate subsets exceed the budget of {budget}")
            }
            Error::WindowTooLarge { window, n } => {
                write!(f, "window {window} exceeds board side {n}")
            }
            Error::PatternDoesNotFit { width, height, n } => {
                write!(f, "a {width}x{height} pattern does not fit on B_{n}")
            }
            Error::BoardTooLarge { n, max } => {
                write!(f, "board side {n} exceeds the search engine limit {max}")
            }
            Error::Invariant(msg) => write!(f, "internal invariant violated: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
