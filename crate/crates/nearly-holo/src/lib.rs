//! Nearly holomorphic sections on the Harish-Chandra chart: polarized
//! sections, the operators `D̄` and `δ`, the generalized Taylor expansion and
//! the local actions of `G` and `g`.

pub mod action;
pub mod checks;
pub mod error;
pub mod form;
pub mod section;
pub mod taylor;

pub use action::{check_structure_group, group_action, group_action_at, lie_action, lie_commutator, GroupElement};
pub use error::{NhError, Result};
pub use form::*;
pub use section::*;
pub use taylor::*;
