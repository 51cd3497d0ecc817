pub mod analyze;
pub mod crossings;
pub mod oracle;
pub mod xxz;
pub mod xy;
