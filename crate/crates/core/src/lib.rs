//! Finite combinatorics of simplicial and bisimplicial sets: Eilenberg–Zilber
//! normal forms, colimits, necklaces, categorification of Segal precategories,
//! straightening and Grothendieck constructions.

pub mod categorify;
pub mod colimit;
pub mod cone;
pub mod constructions;
pub mod delta;
pub mod dshom;
pub mod error;
pub mod groth;
pub mod invariants;
pub mod iso;
pub mod materialize;
pub mod necklace;
pub mod ordered;
pub mod precat;
pub mod presheaf;
pub mod map;
pub mod nerve;
pub mod product;
pub mod projection;
pub mod report;
pub mod scat;
pub mod sset;
pub mod straighten;
pub mod suites;
pub mod unionfind;
pub mod unstraighten;

pub use delta::DeltaMap;
pub use error::{Error, Result};
pub use map::SsetMap;
pub use sset::{Bisimplicial, GenId, NormalForm, SimplicialSet, Sset};
