//! IO, file formats and statistics companion to `hamcover-core`.

pub mod formats;
pub mod stats;
