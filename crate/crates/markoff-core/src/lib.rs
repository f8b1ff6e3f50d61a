//! Markoff surface mod ell: enumeration of X*(ell) and its block quotient,
//! the Vieta/rotation automorphisms, orbit censuses, permutation-group
//! certification of the induced action, an SL2 trace oracle, ramification
//! bookkeeping, and the wreath-product lemmas backing the lifting argument.

pub mod error;
pub mod field;
pub mod orbits;
pub mod perm;
pub mod ramification;
pub mod report;
pub mod sl2;
pub mod surface;
pub mod wreath;

pub use error::{Error, Result};
pub use field::{PrimeModulus, PropertyP, QuadExtElement, Residue};
pub use orbits::{Level, MaximalOrbit, OrbitCensus, OrbitPartition};
pub use perm::{Classification, GiantCertificate, GiantSearchConfig, Parity, Permutation};
pub use ramification::{CurveInvariants, Monodromy, RamificationProfile};
pub use report::{EllReport, PipelineConfig, ScanSummary, CSV_HEADER, SCHEMA_VERSION};
pub use sl2::OracleReport;
pub use surface::{Block, ConicClass, GeneratorName, SurfaceTable, Triple};
