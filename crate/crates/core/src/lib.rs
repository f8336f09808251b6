//! Exact and certified spectral computations for complementary equienergetic
//! graphs and the line-graph class Ω.
//!
//! Graphs live on at most 64 vertices as bit-set rows. Characteristic
//! polynomials are exact over arbitrary-precision integers, energies are
//! enclosed by Sturm isolation with dyadic endpoints, and the staged
//! searches in [`pipeline`] combine both with a fast Jacobi filter.

pub mod adjlist;
pub mod canonical;
pub mod charpoly;
pub mod dyadic;
pub mod energy;
pub mod enumerate;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod jacobi;
pub mod pipeline;
pub mod poly;
pub mod roots;

pub use canonical::{are_isomorphic, canonical_form, is_self_complementary, CanonicalKey};
pub use charpoly::char_poly;
pub use dyadic::{Dyadic, DyadicInterval};
pub use energy::{energies_equal, energy_certified, energy_f64, is_cospectral, EnergyInterval, FloatEnergy, Verdict};
pub use enumerate::{connected_graphs, read_graph6_stream, GraphStream};
pub use families::{ClosedFormSpectrum, Surd, VerificationReport};
pub use graph::{DesignIncidence, Graph, GraphError};
pub use graph6::{from_graph6, to_graph6};
pub use pipeline::{OmegaReport, PairReport, SearchConfig, StageStats};
pub use poly::{poly_equal, poly_equals_product, PolyError, Polynomial};
pub use roots::{isolate_real_roots, refine_root, sturm_chain, IntPolynomial, RootIsolation};

/// Single-precision float energy.
pub type FloatEnergy32 = jacobi::FloatEnergyOf<f32>;
/// Characteristic polynomial in machine integers, for graphs small enough not to overflow.
pub type SmallPolynomial = Polynomial<i64>;
