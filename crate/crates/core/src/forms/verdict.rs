use serde::{Deserialize, Serialize};

use crate::exactnum::field::FieldElem;
use crate::exactnum::sqrt::NonSquareCertificate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Anisotropic,
    Isotropic,
    Unknown,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Anisotropic => "anisotropic",
            Status::Isotropic => "isotropic",
            Status::Unknown => "unknown",
        })
    }
}

/// Evidence attached to an anisotropy verdict. Field elements are given by
/// power-basis coordinate strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// `root^2 = -disc`.
    SquareRoot { root: Vec<String> },
    /// `-disc` is not a square.
    NotSquare { reason: NonSquareCertificate },
    /// `x tau(x) = -disc`.
    NormPreimage { x: Vec<String> },
    /// Hilbert symbols `(value, radicand)_v = -1` at the listed places.
    LocalObstruction { value: String, radicand: String, places: Vec<String> },
    /// Nothing decided: the search bound and the reason.
    Inconclusive { height: u32, reason: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnisotropyVerdict {
    pub status: Status,
    pub certificate: Certificate,
    /// A nontrivial zero `(x, y)` for isotropic forms, checked exactly.
    pub zero: Option<(FieldElem, FieldElem)>,
}

impl AnisotropyVerdict {
    pub fn is_anisotropic(&self) -> bool {
        self.status == Status::Anisotropic
    }
}
