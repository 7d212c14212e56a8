//! Exact arithmetic for degree-six Salem numbers and the greedy beta-expansion of 1.

pub mod cofactor;
pub mod expansion;
pub mod families;
pub mod intpoly;
pub mod salem;
pub mod tables;
