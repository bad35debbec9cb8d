//! Command-line front end for `queencover-core`: argument handling, result
//! records, an on-disk cache and text rendering.

pub mod cache;
pub mod cli;
pub mod config;
pub mod driver;
pub mod error;
pub mod record;
pub mod render;

pub use cli::{run, run_main, Cli};
pub use config::parse_config;
pub use error::{CliError, RecordError};
pub use record::ResultRecord;
pub use render::{render_board, Annotate};
