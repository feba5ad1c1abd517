//! Exact integer matrix kernel: Smith normal form with transformations,
//! incremental Hermite reduction for sparse boundary matrices, adapted
//! bases, and linear solving mod m.

pub mod dense;
pub mod entry;
pub mod modsolve;
pub mod snf_sparse;
pub mod sparse;

pub use dense::{
    adapted_basis, express_in_basis, invert_unimodular, smith_normal_form, AdaptedBasis,
    IntMatrix, SnfResult, ZlinalgError,
};
pub use entry::{Ent, Overflow};
pub use modsolve::{solve_mod, ModSystem};
pub use snf_sparse::{sparse_snf, v_column, v_inv_row, ColOp, SparseSnf};
pub use sparse::{hermite_basis, kernel_basis, solve_in_trailing_echelon, Echelon, SparseRow};

/// Hermite-form basis of the row lattice generated by a stream of sparse
/// rows, escalating from machine integers to big integers on overflow.
pub fn incremental_row_reduce(
    cols: usize,
    rows: &[SparseRow<i128>],
) -> Vec<SparseRow<num::BigInt>> {
    match hermite_basis(cols, rows.iter().cloned()) {
        Ok(basis) => basis
            .into_iter()
            .map(|r| r.into_iter().map(|(c, v)| (c, num::BigInt::from(v))).collect())
            .collect(),
        Err(Overflow) => {
            let big: Vec<SparseRow<num::BigInt>> = rows
                .iter()
                .map(|r| r.iter().map(|(c, v)| (*c, num::BigInt::from(*v))).collect())
                .collect();
            hermite_basis(cols, big.into_iter()).expect("bigint reduction cannot overflow")
        }
    }
}
