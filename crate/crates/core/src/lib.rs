//! Isomorphism machinery for groups and quasigroups given by their Cayley
//! tables.
//!
//! * [`table`] and [`group`]: the table data model and elementary group
//!   computations.
//! * [`permgroup`]: stabilizer chains and the pointwise transporter.
//! * [`wl`]: Weisfeiler-Leman refinement on group tables (Versions I and II,
//!   counting and count-free).
//! * [`decompose`]: fully-refined direct product decomposition.
//! * [`canon`]: canonical labeling of groups whose indecomposable direct
//!   factors are boundedly generated.
//! * [`central`]: recognition and isomorphism testing of central quasigroups.
//! * [`oracle`] and [`catalog`]: brute-force reference isomorphism tests and a
//!   corpus of small groups.

pub mod canon;
pub mod catalog;
pub mod central;
pub mod config;
pub mod decompose;
pub mod error;
pub mod group;
pub mod oracle;
pub mod par;
pub mod perm;
pub mod permgroup;
pub mod table;
pub mod wl;

pub use error::{Error, Result};
pub use group::SubgroupSet;
pub use par::Exec;
pub use perm::Perm;
pub use table::{GroupTable, MulTable, QuasigroupTable};
