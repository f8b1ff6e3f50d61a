//! Shared fixtures for the pipeline benchmarks.

use markoff_core::surface::enumerate_surface;
use markoff_core::{PrimeModulus, SurfaceTable};

pub fn table(ell: u64) -> SurfaceTable {
    enumerate_surface(PrimeModulus::new(ell).expect("prime")).expect("ell >= 5")
}
