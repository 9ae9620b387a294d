//! Exact arithmetic for based quantum tori and cluster seeds over
//! `Q[q^{+-1/2}]`: mutation, gradings, specialization at `q = 1`, and
//! mechanical checks of divisibility by `q^{1/2} - 1`.

pub mod cli;
pub mod grading;
pub mod graph;
pub mod intlin;
pub mod laurent;
pub mod qcoeff;
pub mod qtorus;
pub mod rank;
pub mod seed;
pub mod verify;
