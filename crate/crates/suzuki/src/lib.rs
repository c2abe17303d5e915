//! File formats, fixtures, parallel search and reports on top of `suzuki-core`.

pub mod commands;
pub mod error;
pub mod fixtures;
pub mod formats;
pub mod pipeline;
pub mod report;
pub mod script;
pub mod search;

pub use error::InputError;
