pub mod chern16;
pub mod cochain;
pub mod constants;
pub mod datasets;
pub mod error;
pub mod exactlin;
pub mod foxone;
pub mod groupkit;
pub mod repfun;
pub mod specseq;
pub mod tdual;

pub use error::{Error, Result};
