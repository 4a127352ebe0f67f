//! Finite abelian groups, subgroups, quotients, characters and bicharacters.

pub mod bichar;
pub mod character;
pub mod group;
pub mod quotient;
pub mod snf;

pub use bichar::Bicharacter;
pub use character::{characters, decompose_in_transversal, extend_character, orthogonal_complement, subgroup_characters, Character};
pub use group::{Elem, FinAbGroup, Subgroup};
pub use quotient::QuotientMap;
