//! Command-line front end and SVG rendering for stabscan.

pub mod app;
pub mod config;
pub mod render;

pub use app::run;
