//! Balanced presentations of the trivial group under extended Nielsen,
//! cyclic and cancellative cyclic move systems.

pub mod certificates;
pub mod cli;
pub mod moves;
pub mod search;
pub mod translator;
pub mod word;
