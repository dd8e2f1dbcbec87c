//! Edit sessions, the HTTP API and the `bwtex` command line over the
//! texture engine, the study harness and the analysis pipeline.

pub mod api;
pub mod cli;
pub mod session;
pub mod store;

pub use session::{EditAction, EditSession, SessionError, SessionState};
pub use store::SessionStore;
