//! Finite classical polar spaces over small prime fields: dual polar spaces,
//! half-spin Grassmann spaces, vector-space Grassmann graphs, and exhaustive
//! checks of how the opposite relation determines collinearity in them.
//!
//! All geometry is generic over a [`Field`]; the aliases below fix the two
//! fields the command-line tool supports.

pub mod dual_polar;
pub mod error;
pub mod field;
pub mod frames;
pub mod graph;
pub mod grassmann;
pub mod half_spin;
pub mod incidence;
pub mod linalg;
pub mod polar;
pub mod table;
pub mod verify;

pub use dual_polar::DualPolarSpace;
pub use error::{GeometryError, Result};
pub use field::{Field, Fp};
pub use frames::{frame_through, opposite_extension, standard_frame, Frame};
pub use graph::Graph;
pub use grassmann::GrassmannGraph;
pub use half_spin::{split_families, Family, HalfSpinSpace};
pub use incidence::PointLineGeometry;
pub use linalg::{enumerate_subspaces, gaussian_binomial, Subspace, Vector};
pub use num_traits::{One, Zero};
pub use polar::{max_singular_count, Form, FormKind, PolarSpace, TypeClassification, TypeTag};
pub use table::IntersectionTable;
pub use verify::{Mode, Sampling, Verdict};

pub type Gf2 = Fp<2>;
pub type Gf3 = Fp<3>;

pub type Vector2 = Vector<Gf2>;
pub type Vector3 = Vector<Gf3>;
pub type Subspace2 = Subspace<Gf2>;
pub type Subspace3 = Subspace<Gf3>;
pub type PolarSpace2 = PolarSpace<Gf2>;
pub type PolarSpace3 = PolarSpace<Gf3>;
