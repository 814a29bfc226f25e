//! Cyclic orbit flag codes over finite fields.

pub mod arith;
pub mod decoder;
pub mod error;
pub mod flagcodes;
pub mod flags;
pub mod fqlinalg;
pub mod gfield;
pub mod potential_distances;
pub mod subspaces;

pub use decoder::{
    channel_sim, decode, decode_exhaustive, erase, find_correctable_shot, DecodeOutcome, Decoder,
    SimRow, StutteringFlag,
};
pub use error::{Error, Result};
pub use flagcodes::{orbit_flag_code, CodeReport, FlagCode, ProjectedParams};
pub use flags::{Flag, FlagClassification, FlagKind};
pub use fqlinalg::MatrixFq;
pub use gfield::{FieldCtx, FieldElement};
pub use subspaces::{
    minpoly_degree, regular_form_subspace, subspace_distance, Subspace, SubspaceOrbit,
};
