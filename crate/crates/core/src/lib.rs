//! Exact enumeration of cover-inclusive Dyck tilings and verification of the
//! q-analog identities they satisfy.

pub mod bijections;
pub mod bsum;
pub mod cli;
pub mod error;
pub mod paths;
pub mod qpoly;
pub mod report;
pub mod suites;
pub mod tilings;

pub use error::{Error, Result};
