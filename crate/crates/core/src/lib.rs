pub mod actforget;
pub mod cli;
pub mod coforget;
pub mod corpus;
pub mod entwining;
pub mod error;
pub mod exactlin;
pub mod homspaces;
pub mod ringext;
pub mod search;
pub mod smash;
pub mod structures;

pub use error::{Error, Result};
