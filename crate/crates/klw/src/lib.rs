//! Exact combinatorics of finite Weyl groups, their Hecke algebras,
//! Kazhdan-Lusztig cells, and a Grothendieck-group model of highest
//! weight blocks with translation functor actions.

pub mod cartan;
pub mod coxeter;
pub mod error;
pub mod export;
pub mod hecke;
pub mod laurent;
pub mod blocks;
pub mod cells;
pub mod oracle;
pub mod store;
pub mod young;

pub use blocks::{
    apply_functor, functor_matrix, simple_to_verma, sl2_tensor_case, theta_on_simple,
    thmout_multiplicity, verma_to_simple, wall_crossing_vs_theta, Basis, BlockDescriptor,
    FunctorKind, FunctorSymbol, GrothendieckVector, Sl2Classification, Sl2Outcome, Sl2TensorCase,
    Sl2VermaIdentity, WallReport,
};
pub use cartan::{CartanType, Family};
pub use cells::{
    cell_preorder, cells, check_fact1, check_fact2, rs_cells, CellPartition, CellPreorder,
    CellSide, Fact1Report, Fact2Report,
};
pub use coxeter::{CoxeterSystem, Element, Extremal, ParabolicSubset, Side};
pub use error::{Error, Result};
pub use export::{cells_dot, cells_json, cells_table};
pub use hecke::{HeckeBasis, HeckeElement, KlTable, NORMALIZATION};
pub use laurent::LaurentPoly;
pub use store::{export_table_bytes, import_table_bytes, read_table, write_table};
pub use young::{dominance_leq, rs_insert, RSPair, Tableau};

// Arithmetic types appearing in public signatures.
pub use num_bigint::BigInt;
pub use num_rational::Rational64;

// The guide's code blocks run as doc-tests, so the book cannot drift
// from the API it documents.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/coxeter.md")]
    mod coxeter {}
    #[doc = include_str!("../../../book/src/hecke.md")]
    mod hecke {}
    #[doc = include_str!("../../../book/src/cells.md")]
    mod cells {}
    #[doc = include_str!("../../../book/src/blocks.md")]
    mod blocks {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/persistence.md")]
    mod persistence {}
}
