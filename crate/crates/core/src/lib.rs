//! Exact arithmetic in extended affine Hecke algebras of small split groups.
//!
//! The crate builds the Iwahori-Hecke algebra of an extended affine Weyl
//! group over `Z[v, v^-1]`, its Bernstein center, the spherical Hecke algebra
//! with the averaging map onto it, and Kazhdan-Lusztig bases. The
//! [`workbench`] module drives all of it from the `hecke` command line tool.

pub mod affine_weyl;
pub mod bernstein;
pub mod error;
pub mod hecke;
pub mod kl;
pub mod laurent;
pub mod root_datum;
pub mod spherical;
pub mod workbench;

pub use affine_weyl::{AffineWeylElement, AffineWeylGroup, ReducedWord, Simple};
pub use bernstein::{BernsteinCenter, CentralElement};
pub use error::{HeckeError, Result};
pub use hecke::HeckeElement;
pub use kl::KlTable;
pub use laurent::LaurentPoly;
pub use root_datum::{Coweight, DatumLabel, RootDatum};
pub use spherical::SphericalElement;
pub use workbench::{run_command, verify_gl2, Gl2Report, WorkbenchConfig};
