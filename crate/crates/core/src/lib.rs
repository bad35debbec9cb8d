//! Maximum-cover placements of `q` queens on centered `n x n` boards.
//!
//! The crate is `no_std` with `alloc`. Boards use centered coordinates (see
//! [`geometry`]), covers and attacking numbers live in [`coverage`], the
//! loss decomposition in [`loss`], explicit constructions in
//! [`constructions`] and the exact optimizers in [`search`].

#![no_std]

extern crate alloc;

pub mod constructions;
pub mod coverage;
mod error;
pub mod geometry;
pub mod loss;
pub mod search;

pub use constructions::{knight_square, stairs, Pattern, PatternLoss, Stairs};
pub use coverage::{attack_field, attacks, cover_count, is_nonattacking, AttackField, Configuration};
pub use error::{Error, Result};
pub use geometry::{parity_of, Board, Parity, Square, Transform};
pub use loss::{total_loss, LossBreakdown};
