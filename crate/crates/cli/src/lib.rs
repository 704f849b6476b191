//! Instance format, catalog, suite runner and reports for the `amalgam` tool.

pub mod catalog;
pub mod instance;
pub mod report;
pub mod suites;

pub use catalog::{generate_catalog, Bounds, CatalogError};
pub use instance::{parse_instance, Compiled, InstanceError, InstanceSpec};
pub use report::{run_suites, Format, Report, RunOptions};
pub use suites::{Status, Suite};
