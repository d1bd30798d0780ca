//! Imaginary quadratic orders: discriminants, reduced forms, ideal lattices,
//! genus characters and the constrained ideal count `A(N)`.

mod count;
mod disc;
mod form;
mod genus;
mod ideal;

pub use count::{count_a, count_a_enumerated, count_a_multiplicative};
pub use disc::{is_discriminant, make_disc, Disc};
pub use form::{class_number, reduced_forms, QuadForm};
pub use genus::{
    genus_characters, genus_k, genus_of_ideal, is_in_ker_psi, norm_one_classes,
    norm_one_classes_mod_sign, psi, psi_hat_ell, psi_p, rho_tilde, square_class_test, GenusChar,
    GenusVector,
};
pub use ideal::{
    class_of, divisible_by_integer, elt_conj, elt_mul, elt_norm, elt_trace, ideal_conj, ideal_mul,
    ideal_norm, ideals_of_norm, is_invertible, primary_decompose, Elt, IdealLat,
};

#[allow(unused_imports)]
pub(crate) use genus::box_search;
