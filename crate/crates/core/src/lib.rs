//! Attribute reduction for information systems.
//!
//! Objects that differ on some attributes produce a discernibility set. The
//! family of those sets determines every reduct, the character of each
//! attribute (core, relative necessary, unnecessary) and a covering of the
//! attribute set. Reducts can be found exhaustively, by row-wise
//! simplification of the matrix, or attribute by attribute through the
//! `E(a)` families.

pub mod audit;
pub mod character;
pub mod covering;
pub mod discernibility;
pub mod error;
pub mod model;
pub mod reducers;
pub mod relations;
pub mod set;
pub mod table;

pub use audit::{audit_family, audit_theorems, AuditEntry, AuditReport, Claim, DEFAULT_AUDIT_CAP};
pub use character::{classify, classify_all, classify_by_refinement, Character, CharacterReport};
pub use covering::CoveringSpace;
pub use discernibility::{AbsorptionResult, DiscernibilityMatrix, SetFamily, DEFAULT_ORACLE_CAP};
pub use error::{Error, ErrorKind, Result};
pub use model::{InformationSystem, Partition};
pub use reducers::{
    all_reducts_bruteforce, ea_reduce, verify_reduct, yao_row_wise, ReductDiagnosis, ReductTrace,
    SelectionPolicy,
};
pub use relations::RelationReport;
pub use set::{AttrId, AttrSet, ObjSet, ObjectId};
pub use table::{load_table, parse_table, TableOptions};
