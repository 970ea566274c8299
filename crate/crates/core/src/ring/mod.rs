//! Exact arithmetic over `Z_N` and `Z[X]`.

pub mod cyclotomic;
pub mod modulus;
pub mod poly;
pub mod sets;
pub mod zeros;

pub use cyclotomic::{cyclotomic, prepopulate};
pub use modulus::{divisors, factorize, gcd, is_prime, valuation, Modulus};
pub use poly::IntPoly;
pub use sets::{mask_poly, MaskSource, ResidueMultiset, ResidueSet};
pub use zeros::{
    compose_power, count_reps, d_set, d_set_from_zeros, max_coefficient, vanishes_at,
    zero_divisors, DivisorClassSet,
};
