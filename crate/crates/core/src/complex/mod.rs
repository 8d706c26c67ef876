//! Complexes: cube complexes, abstract simplicial complexes, Δ-complexes,
//! links and the standard constructions on them.

mod cube;
pub mod delta;
pub mod link;
pub mod ops;
pub mod shapes;
pub mod simplicial;

pub use cube::{import, standard_cube, CellRef, CubeComplex};
pub use delta::{barycentric_subdivision, DeltaComplex, DeltaMap};
pub use link::{
    cubicality_check, gromov_check, is_combinatorially_convex, vertex_link, Cubicality,
    GromovReport, LinkDefect, LinkVertex, SimplexComplex,
};
pub use ops::{
    cubical_subdivision, descend, fixed_subcomplex, glue, interval, interval_flip,
    mapping_cylinder, mapping_torus, product, product_map, quotient_by_involution,
    subdivide_indexed, CubeMap, Involution,
};
pub use simplicial::{graph_girth, is_full_subcomplex, FlagReport, SimplicialComplex};
