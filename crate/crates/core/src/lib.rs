pub mod blowup;
pub mod cax2;
pub mod cli;
pub mod dsl;
pub mod lattice;
pub mod num;
pub mod poly;
pub mod reproduction;
pub mod report;
