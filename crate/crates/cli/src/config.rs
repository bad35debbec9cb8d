//! `"(x,y);(x,y)"` configuration strings.

use queencover_core::{Configuration, Square};

use crate::error::CliError;

/// Parse semicolon-separated `(x,y)` pairs. Whitespace is ignored and an
/// empty string is the empty configuration.
pub fn parse_config(text: &str) -> Result<Configuration, CliError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Ok(Configuration::default());
    }
    let mut squares = Vec::new();
    for part in compact.split(';') {
        let bad = || CliError::Usage(format!("malformed square {part:?} in configuration {text:?}"));
        let inner = part.strip_prefix('(').and_then(|p| p.strip_suffix(')')).ok_or_else(bad)?;
        let (x, y) = inner.split_once(',').ok_or_else(bad)?;
        let x: i32 = x.parse().map_err(|_| bad())?;
        let y: i32 = y.parse().map_err(|_| bad())?;
        squares.push(Square::new(x, y));
    }
    Ok(Configuration::new(squares)?)
}

pub fn format_config(c: &Configuration) -> String {
    c.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_whitespace() {
        let c = parse_config(" ( -1, 0 ) ;(0,2);(1,-1); (2,1)").unwrap();
        assert_eq!(c.len(), 4);
        assert_eq!(format_config(&c), "(-1,0);(0,2);(1,-1);(2,1)");
    }

    #[test]
    fn empty_is_empty() {
        assert!(parse_config("  ").unwrap().is_empty());
    }

    #[test]
    fn rejects_garbage() {
        for s in ["(1,2", "1,2", "(1;2)", "(a,1)", "(1,2);", "(1,2,3)"] {
            assert!(matches!(parse_config(s), Err(CliError::Usage(_))), "{s}");
        }
        assert!(matches!(parse_config("(1,2);(1,2)"), Err(CliError::Core(_))));
    }
}
