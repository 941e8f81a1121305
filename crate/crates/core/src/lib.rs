pub mod emcore;
pub mod error;
pub mod graph;
pub mod pattern;
pub mod chunk;
pub mod sink;
pub mod oracle;
pub mod det;
pub mod randenum;
pub mod harness;
