//! Computational genus theory for quadratic fields over the rationals.
//!
//! The crate covers the group of quadratic discriminants and its unique
//! factorization into prime discriminants, Kronecker symbols, quadratic
//! Dirichlet characters and their identification with Kronecker characters,
//! narrow class groups of binary quadratic forms, genus characters, and
//! checks of the principal genus theorem and of the criterion for cyclic
//! quartic extensions unramified at finite primes.

pub mod arith;
pub mod characters;
pub mod cli;
pub mod discriminant;
pub mod error;
pub mod forms;
pub mod genus;
pub mod symbols;
pub mod verify;

pub use characters::{
    char_value, chars_equivalent, conductor, dirichlet_to_kronecker, field_conductor,
    is_field_modular, is_primitive, kronecker_to_dirichlet, Conductor, QuadraticDirichletCharacter,
};
pub use discriminant::{
    disc_mul, disc_of_sqrt, factor_prime_discriminants, is_fundamental, Discriminant,
    PrimeDiscriminant, PrimeDiscriminantFactorization,
};
pub use error::{Error, Result};
pub use forms::{
    compose, equivalent, fundamental_unit_norm, narrow_class_group, reduce,
    represented_value_coprime_to, BinaryQuadraticForm, NarrowClassGroup, RepresentedValue,
};
pub use genus::{
    genus_character, genus_character_vector, genus_field, genus_field_ordinary, genus_field_strict,
    number_of_genera, odd_class_number, quartic_splitting_count, quartic_splitting_factorizations,
    verify_principal_genus, GenusCharacterVector, GenusFieldDescription, PrincipalGenusReport,
    QuarticSplittingFactorization,
};
pub use symbols::{
    jacobi, kronecker, kronecker_infinity, splitting_type, SplittingType, SymbolValue,
};
