//! Interchange formats: graph6 text, planar_code binary, and DOT output.

pub mod dot;
pub mod graph6;
pub mod planar_code;
