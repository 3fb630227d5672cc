//! Sandpile groups, rotor-routing and compatible Eulerian tours on ribbon
//! digraphs, and the matching picture for graphs embedded in a surface:
//! quasi-trees, the Jacobian, and the Bernardi action.
//!
//! ```
//! use ribbon_sandpile::{fixtures, tours};
//!
//! let d = fixtures::fig1();
//! let all = tours::enumerate_compatible_tours(&d).unwrap();
//! let root = d.vertex_id("1").unwrap();
//! assert_eq!(num_bigint::BigInt::from(all.len()), ribbon_sandpile::sandpile::count_arborescences(&d, root));
//! ```

pub mod error;
pub mod fixtures;
pub mod format;
pub mod jacobian;
pub mod lattice;
pub mod oracles;
pub mod random;
pub mod ribbon;
pub mod rotor;
pub mod sandpile;
pub mod tours;
pub mod verify;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/ribbon.md")]
    mod ribbon {}
    #[doc = include_str!("../../../book/src/sandpile.md")]
    mod sandpile {}
    #[doc = include_str!("../../../book/src/rotor.md")]
    mod rotor {}
    #[doc = include_str!("../../../book/src/tours.md")]
    mod tours {}
    #[doc = include_str!("../../../book/src/jacobian.md")]
    mod jacobian {}
    #[doc = include_str!("../../../book/src/verify.md")]
    mod verify {}
}
