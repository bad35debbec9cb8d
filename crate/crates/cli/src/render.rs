//! Text drawings of a board, `y` growing upwards.

use queencover_core::{attack_field, Board, Configuration};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Annotate {
    #[default]
    None,
    /// Show `a(s)` on squares attacked at least twice.
    AttackNumbers,
}

/// Queens are `Q`; other squares are `.` or, when annotated, the attacking
/// number if it is at least 2 (`+` from 10 on). The row and column through
/// the origin are labeled `0`.
pub fn render_board(c: &Configuration, board: Board, annotate: Annotate) -> String {
    let field = attack_field(c, board);
    let (lo, hi) = (board.lo(), board.hi());
    let mut out = String::new();
    for y in (lo..=hi).rev() {
        out.push_str(if y == 0 { "0 " } else { "  " });
        for x in lo..=hi {
            let s = queencover_core::Square::new(x, y);
            let a = field.get(s).unwrap_or(0);
            let ch = if c.contains(s) {
                'Q'
            } else if annotate == Annotate::AttackNumbers && a >= 2 {
                char::from_digit(a as u32, 10).unwrap_or('+')
            } else {
                '.'
            };
            out.push(ch);
            if x < hi {
                out.push(' ');
            }
        }
        out.push('\n');
    }
    out.push_str("  ");
    for x in lo..=hi {
        out.push(if x == 0 { '0' } else { ' ' });
        if x < hi {
            out.push(' ');
        }
    }
    let trimmed = out.trim_end().len();
    out.truncate(trimmed);
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_config;

    #[test]
    fn single_queen() {
        let c = parse_config("(0,0)").unwrap();
        let s = render_board(&c, Board::new(3).unwrap(), Annotate::None);
        assert_eq!(s, "  . . .\n0 . Q .\n  . . .\n    0\n");
    }

    #[test]
    fn empty_board_is_dots() {
        let s = render_board(&Configuration::default(), Board::new(3).unwrap(), Annotate::AttackNumbers);
        assert_eq!(s.matches('.').count(), 9);
        assert!(!s.contains('Q'));
    }

    #[test]
    fn knight_square_digits() {
        let c = parse_config("(-1,0);(0,2);(1,-1);(2,1)").unwrap();
        let s = render_board(&c, Board::new(10).unwrap(), Annotate::AttackNumbers);
        let grid: String = s.lines().map(|l| &l[2..]).collect();
        assert_eq!(grid.matches('4').count(), 4);
        assert_eq!(grid.matches('3').count(), 4);
        assert_eq!(grid.matches('2').count(), 28);
        assert_eq!(grid.matches('Q').count(), 4);
    }
}
