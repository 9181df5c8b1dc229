pub mod app;
pub mod laws;
pub mod parse;
pub mod witness;

pub use app::{run, Outcome, Report, DEFAULT_SEED};
