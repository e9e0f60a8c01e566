//! Placeholder.
pub struct AteReport;
