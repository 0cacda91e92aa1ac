//! Function families: lattice distance functions and the violated-square
//! gadget built on them, dummy-coordinate padding, the monotonicity
//! reduction, and the minimally non-extendable partial function.

mod gadgets;
mod lattice;
mod minimal;

pub use gadgets::{add_dummy_dims, gadget, random_nonincreasing, reduce_monotone, DummyDims};
pub use lattice::{lattice_closure, lattice_distance_fn, paired_lattice, Lattice};
pub use minimal::{build_minimal_nonextendable, ChunkCycle, MinimalNonextendable};
