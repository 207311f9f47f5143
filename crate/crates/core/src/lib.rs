//! Exact arithmetic for the p-groups `S(p,j) = P_{p,j} x| <b>` and a decision
//! procedure for the `FSZ_n` property of finite groups.
//!
//! * [`mixedmod`]: the module `P_{p,j}` and its mixed-modulus endomorphisms.
//! * [`construction`]: the matrices `B`, `S`, `Y(p^t)` and their identities.
//! * [`spgroup`]: arithmetic in `S(p,j)`.
//! * [`group`]: the [`FiniteGroup`](group::FiniteGroup) trait and Cayley tables.
//! * [`gncount`]: the sets `G_n(u, g)`.
//! * [`fszcheck`]: `FSZ_n` verdicts and the `S(p,j)` witness.

pub mod construction;
pub mod error;
pub mod fszcheck;
pub mod gncount;
pub mod group;
pub mod mixedmod;
pub mod spgroup;

pub use error::{Error, Result, TableError};
pub use group::{FiniteGroup, TableGroup};
pub use mixedmod::{EndoMatrix, GroupParams, MixedVector};
pub use spgroup::{SElement, SpGroup};
