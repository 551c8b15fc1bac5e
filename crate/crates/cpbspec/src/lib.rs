//! Command-line front end for `cpbspec-core`: JSON run configs, figure
//! presets, sweeps, and CSV/JSON output.
//!
//! ```no_run
//! use cpbspec::{presets, runner};
//!
//! let cfg = presets::preset("fig2").unwrap();
//! for path in runner::run(&cfg)? {
//!     println!("{}", path.display());
//! }
//! # Ok::<(), cpbspec::CliError>(())
//! ```

pub mod config;
pub mod error;
pub mod output;
pub mod parallel;
pub mod presets;
pub mod runner;

pub use config::{parse_config, Axis, Format, RunConfig};
pub use error::CliError;
