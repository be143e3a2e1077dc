//! Exact-arithmetic toolkit for free-cofree presentations of finitely
//! supported `Z^n`-graded modules over the polynomial ring.
//!
//! A module given by its graded components and structure maps is turned
//! into a degree-labelled monomial matrix (its associated free-cofree
//! presentation), which can then be reduced to a minimal flat-injective
//! presentation by solving truncated linear systems over the coefficient
//! field. All arithmetic is exact: prime fields `F_p` or arbitrary
//! precision rationals, never floating point.

pub mod assoc;
pub mod corpus;
pub mod degree;
pub mod field;
pub mod io;
pub mod matrix;
pub mod module;
pub mod monmat;
pub mod reduce;

pub use assoc::assoc_presentation;
pub use degree::Degree;
pub use field::{FieldSpec, Scalar};
pub use matrix::DenseMatrix;
pub use module::GradedModuleData;
pub use monmat::MonomialMatrix;
pub use reduce::{reduce, reduce_generators, ReductionReport, SweepOrder};

#[cfg(test)]
mod tests {
    // every public value type is immutable data, freely shared across threads
    #[test]
    fn value_types_are_send_and_sync() {
        fn ok<T: Send + Sync>() {}
        ok::<crate::Degree>();
        ok::<crate::FieldSpec>();
        ok::<crate::Scalar>();
        ok::<crate::DenseMatrix>();
        ok::<crate::GradedModuleData>();
        ok::<crate::MonomialMatrix>();
        ok::<crate::ReductionReport>();
    }
}
