pub mod random;
pub mod report;
pub mod session;
pub mod suites;
