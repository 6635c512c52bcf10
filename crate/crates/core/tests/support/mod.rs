pub mod oracles;
pub mod protocol;
