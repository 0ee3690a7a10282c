//! Cohen-Macaulayness of Stanley-Reisner rings, checked two ways.
//!
//! The topological route evaluates reduced homology of every link; the
//! algebraic route computes `Tor_i(k[Σ], k)` from squarefree Koszul strands
//! and reads off depth. A sheaf engine on the face poset supplies the
//! cohomological bridge between them. All linear algebra is exact, over
//! `ℚ` or a prime field.
//!
//! ```
//! use facering::{catalog, cross_check, FieldSpec};
//!
//! let report = cross_check(&catalog::rp2_six(), &[FieldSpec::Q, FieldSpec::GF2]).unwrap();
//! assert!(report.fields[0].reisner.is_cm);
//! assert!(!report.fields[1].reisner.is_cm);
//! assert!(report.all_agree());
//! ```

pub mod complex;
pub mod error;
pub mod face_ring;
pub mod harness;
pub mod homology;
pub mod linalg;
pub mod sheaf;

pub use complex::{catalog, FVector, Face, LabeledComplex, SimplicialComplex};
pub use error::{Error, Result};
pub use face_ring::{betti_numbers, is_cm_algebraic, BettiTable, MonomialIdeal, MultiDegree};
pub use harness::{
    analyze, cross_check, decomposition_probe, reisner_criterion, run_corpus, CorpusConfig,
};
pub use homology::{reduced_cohomology, reduced_homology, BettiVector, FiniteChainComplex};
pub use linalg::{ExactMatrix, FieldSpec};
pub use sheaf::{FacePoset, PosetSheaf, SheafComplex};
