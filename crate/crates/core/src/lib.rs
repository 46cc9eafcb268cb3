pub mod arrangement;
pub mod detgen;
pub mod expr;
pub mod groebner;
pub mod invariants;
pub mod linalg;
pub mod poly;
pub mod verify;
