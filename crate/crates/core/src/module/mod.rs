//! The exact category of finite `Z/p^m`-modules: objects, homomorphisms,
//! exactness, cokernels and the distinguished short exact sequences.

mod context;
mod exact;
mod factor;
mod hom;
mod morphism;
mod object;
mod quadrangle;
mod ses;

pub use context::{Context, DEFAULT_ENUM_CAP, MAX_MODULUS};
pub(crate) use exact::image_log_order_raw;
pub use exact::{
    cokernel, element_oracle, image_log_order, image_size, is_exact, is_injective, is_surjective, kernel_log_order,
    kernel_size,
};
pub(crate) use factor::solve_congruences;
pub use factor::{extend_along_mono, solve_left_factor, solve_right_factor, Level};
pub(crate) use hom::EntryGrid;
pub use hom::{hom_count, hom_enumerate, hom_for_each};
pub use morphism::EMorphism;
pub use object::FpObject;
pub use quadrangle::{is_pure_square, Arrow, Quadrangle};
pub use ses::{distinguished_ses, DistinguishedSes};
