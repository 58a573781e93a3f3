pub mod audit;
pub mod cli;
pub mod dsl;
pub mod par;
pub mod report;
