pub mod abgroup;
pub mod actions;
pub mod campaigns;
pub mod error;
pub mod exactla;
pub mod hopfcore;
pub mod integrals;
pub mod kerco;
pub mod volume;

pub use error::{Error, Result};
