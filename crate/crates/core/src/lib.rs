pub mod backend;
pub mod binomial;
pub mod error;
pub mod genfun;
pub mod glass3;
pub mod recursion;
pub mod words;
