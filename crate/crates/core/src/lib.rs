//! Badly approximable vectors over number fields.
//!
//! Exact field arithmetic ([`exactnum`]), certified embeddings ([`embed`]),
//! binary quadratic and Hermitian forms ([`forms`]), target vectors on their
//! zero sets ([`vectors`]), approximation quality and Liouville certificates
//! ([`approx`]) and the diagonal-flow lattice minimum ([`flow`]).
//!
//! Numeric code is generic over [`Real`]: [`Interval`] gives certified
//! enclosures, `f64` and `f32` fast estimates.

pub mod approx;
pub mod embed;
pub mod error;
pub mod exactnum;
pub mod files;
pub mod flow;
pub mod forms;
pub mod invariants;
pub mod scalar;
pub mod vectors;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

pub use embed::complex::Cplx;
pub use embed::interval::Interval;
pub use embed::{isolate_roots, EmbeddingSet, PlaceVec};
pub use error::{Error, Result};
pub use exactnum::cm::{cm_structure, relative_norm, CMStructure};
pub use exactnum::field::{FieldElem, NumberField};
pub use exactnum::poly::Poly;
pub use exactnum::sqrt::{is_square, is_square_with, NonSquareCertificate, SquareRoot};
pub use scalar::Real;

pub type RatPoly = Poly<BigRational>;
pub type FloatPoly = Poly<f64>;
pub type CertifiedReal = Interval;
pub type FastReal = f64;
pub type CertifiedPlaces = PlaceVec<Interval>;
pub type FastPlaces = PlaceVec<f64>;

/// Precision and search limits shared by the certified procedures.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Settings {
    /// Starting working precision in bits.
    pub prec: u32,
    /// Precision cap; reaching it yields [`Error::PrecisionExhausted`].
    pub max_prec: u32,
    /// Largest coordinate denominator accepted in exact reconstruction.
    pub max_denominator: u64,
    /// Height bound for the bounded relative-norm search.
    pub norm_height: u32,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { prec: 256, max_prec: embed::MAX_PREC, max_denominator: 1_000_000, norm_height: 20 }
    }
}

impl Settings {
    pub fn with_prec(prec: u32) -> Self {
        Settings { prec, ..Settings::default() }
    }
}
