//! Exact computations on Koiso–Sakane orbifolds `(S_n, Δ_m)`: Kähler–Einstein
//! and Ricci-soliton existence, CSC classes and CSC Sasaki rays, cohomology
//! of the associated 7-dimensional bundles, and join identifications.

pub mod arith;
pub mod csc;
pub mod error;
pub mod joins;
pub mod ke;
pub mod orbifold;
pub mod sample;
pub mod soliton;
pub mod topology;

pub use arith::{IsolatingInterval, Poly, Rat, RatFunc, Region};
pub use csc::{AlphaBeta, CertifiedRoot, RayClass, RootCertificate};
pub use error::{Error, Result};
pub use joins::JoinData;
pub use ke::{KEFamilyParams, KETableRow};
pub use orbifold::{AdmissiblePair, Basis, CohClass, KSOrbifold};
pub use soliton::{SolitonConstant, SolitonResult};
pub use topology::{CohEntry, CohSummary, Torsion};
