pub mod poly;
pub mod semigroup;
pub mod groebner;
pub mod resolution;
pub mod patil;
pub mod cli;
