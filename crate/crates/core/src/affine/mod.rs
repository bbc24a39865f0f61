//! Base constructions for linear groups preserving a direct sum
//! decomposition of the natural module.
//!
//! Vectors of `V` are identified with points through the little-endian
//! mixed-radix code used by [`crate::gf::VectorIndex`].

mod alternating;
mod imprimitive;
mod repeat;

pub use alternating::{
    alt_induced_base, alt_induced_matrix_group, alt_induced_pipeline, deleted_perm_module,
    AltInducedBase, DeletedPermModule, PipelineReport, Source, UAction, VAction,
};
pub use imprimitive::{bounded_k1_base, summand_base, triv_k1_base, BoundedK1Base, ImprimitiveModule};
pub use repeat::{repeated_module_base, RepeatedBase};
