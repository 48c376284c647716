//! Exact verification of adequacy for finite matrix groups over finite fields.
//!
//! The crate decides, for a finite group given by invertible matrix generators
//! over GF(p^k), whether it is irreducible, whether H^0 and H^1 with
//! coefficients in the trace-zero adjoint module vanish, whether H^1 with
//! trivial coefficients vanishes, and whether the semisimple elements span
//! the full matrix algebra (checked by three independent criteria).

pub mod adequacy;
pub mod cohomology;
pub mod error;
pub mod expmap;
pub mod field;
pub mod gmodule;
pub mod group;
pub mod harness;
pub mod linalg;
mod util;
pub mod weights;

pub use error::{Error, Result};
pub use field::{make_field, Field, FieldCtx, Fq, FqPoly};
pub use linalg::{FqMatrix, Subspace};
