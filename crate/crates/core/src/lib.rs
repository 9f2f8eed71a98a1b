pub mod bracket;
pub mod classify;
pub mod cli;
pub mod diagram;
pub mod error;
pub mod family;
pub mod laurent;
pub mod scheme;
