//! Exact arithmetic in real quadratic fields.

mod elem;
mod field;
mod ideal;
mod modulus;

pub use elem::{frac_angle, frac_brace, solve_basis, QuadElem};
pub use field::{fundamental_unit, fundamental_unit_search, validate_discriminant, FieldCtx};
pub use ideal::QuadIdeal;
pub use modulus::{find_generator_narrow, is_ray_congruent_one, modulus_data, same_narrow_class, Modulus};

/// `x′`.
pub fn conj(x: &QuadElem) -> QuadElem {
    x.conj()
}
