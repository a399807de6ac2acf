//! Exact symbolic computation in super Yangians `Y(gl_{M|N})` for arbitrary
//! 01-sequences: normal ordering via the RTT relation, block Gauss
//! decomposition into parabolic generators, the standard (anti)automorphisms
//! and embeddings, and mechanical verification of the parabolic
//! presentation at finite truncation.

pub mod coeff;
pub mod envelope;
pub mod error;
pub mod freealg;
pub mod gauss;
pub mod grading;
pub mod morphisms;
pub mod presentation;
pub mod rewrite;
pub mod rtt;
pub mod series;

pub use coeff::Coeff;
pub use envelope::{gr_image, LieContext};
pub use error::{Error, Result};
pub use freealg::{AlgebraElement, AlphabetClass, Family, Generator, Word};
pub use gauss::{decompose, Block, GaussFactors};
pub use grading::{split_sequence, Composition, Transform, ZeroOneSequence};
pub use morphisms::{CheckReport, Image, Morphism, MorphismKind, TensorElement};
pub use presentation::{Expr, Gamma, RelationId, RelationInstance};
pub use rtt::YangianContext;
pub use series::{MatrixSeries, TruncatedSeries};
