pub mod cli;
pub mod groebner;
pub mod kaehler;
pub mod lifting;
pub mod linalg;
pub mod poly;
pub mod smoothness;
