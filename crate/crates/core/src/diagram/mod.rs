//! Periodic diagrams on the strip, weak squares, pretriangles, Verdier
//! octahedra, restriction, column standardisation and isomorphism search.

mod iso_search;
mod octahedron;
mod periodic;
mod position;
mod pretriangle;
mod restrict;
mod standardize;
mod weak;

pub use iso_search::{
    check_diagram_iso, find_periodic_isos, free_positions, verify_diagram_iso, DiagramIso, IsoSearch, SearchMode,
    SearchOptions, SearchStatus,
};
pub use octahedron::{
    bbd_extra_triangles, check_verdier_octahedron, is_verdier_octahedron, OctahedronReport, RestrictionCheck,
};
pub use periodic::{DiagramBuilder, PeriodicDiagram, Step};
pub use position::Position;
pub use pretriangle::{
    check_periodic_pretriangle, is_periodic_pretriangle, pretriangle_cells, Cell, PretriangleReport,
};
pub use restrict::{restrict, triangle_of};
pub use standardize::{column_comparisons, standardize_column, ELevelDiagram};
pub use weak::{check_weak_square, is_weak_square, is_weak_square_by_enumeration, WeakSquareFailure};
