//! Noosphere energy-dynamics models, a Game of Life engine and the
//! N-computer: a toy virtual machine with DNA-strand memory, a
//! cellular-automaton ALU and a self-replicating colony driven by
//! Lotka–Volterra dynamics.

pub mod integrator;
pub mod lifeca;
pub mod ncomp;
pub mod noosim;
