//! Shallow MELL proof nets read as polynomial ideals: cut-elimination, net ideals with
//! box charts, Gröbner elimination, and the Macaulay/Hilbert/Gotzmann numerics.

pub mod poly;
pub mod hilbert;
pub mod net;
pub mod reduction;
pub mod scheme;
pub mod invariance;
