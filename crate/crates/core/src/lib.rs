//! Permutation arrays with a guaranteed minimum Hamming distance.
//!
//! Arrays are built from permutation groups over finite fields (affine and
//! projective, linear and semilinear), grown by random coset search, shrunk
//! by contraction, and verified exactly.

pub mod array;
pub mod bounds;
pub mod contraction;
pub mod distance;
pub mod field;
pub mod group;
pub mod pa_file;
pub mod permutation;
pub mod search;

pub use array::{ArrayError, PermArray};
pub use bounds::{BoundRecord, BoundTag, Window};
pub use contraction::{ContractionCertificate, ContractionError};
pub use distance::{DistanceError, DistanceReport, Method, Mode};
pub use field::{FPoly, FieldElement, FieldError, FieldSpec};
pub use group::{BaseSpec, GroupDescriptor, GroupError, GroupKind, MaterializedGroup};
pub use pa_file::{parse_pa, serialize_pa, Labeling, PaFile, PaFileError};
pub use permutation::{CycleDecomposition, PermError, Permutation};
pub use search::{coset_search, gv_bound, GvResult, SearchConfig, SearchError};
