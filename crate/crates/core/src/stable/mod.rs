//! The stable category: morphisms modulo those factoring through bijective
//! objects, the shift, stable isomorphisms, cones and distinguished
//! triangles.

mod cone;
mod iso;
mod morphism;
mod shift;
mod solve;
mod triangle;

pub use cone::{cone, triangle_direct_sum, Triangle};
pub use iso::{is_stable_iso, is_stable_iso_by_residues, stable_inverse};
pub use morphism::{
    canonical_form, is_stably_zero, stable_equal, stable_hom_count, stable_hom_enumerate, stable_hom_for_each,
    stable_modulus, StableMorphism,
};
pub use shift::{shift_by, shift_morphism, shift_object, shift_object_by, shift_representative, unshift_morphism};
pub use solve::{solve_stable, Constraint};
pub use triangle::{is_distinguished, is_distinguished_by_enumeration, DistinguishedReport};
