//! Spectral decompositions of normal matrices, the plane-region model and
//! spectral measures over it.

mod decomposition;
mod fold;
mod region;
mod strip;

pub use decomposition::{
    borel_calculus, normal_eig, spectral_measure, verify_pushforward, Cluster, DecompositionResiduals,
    SpectralDecomposition,
};
pub use fold::{fold_index, fold_scalar, fold_unbounded};
pub use region::{BoundaryBand, Edge, Membership, Region};
pub use strip::{odd_line, open_strip, strip_projections, StripProjections};
