//! Randomized enumeration: color coding, bounded-class colorings and the
//! very-high-degree decomposition.

pub mod coloring;
pub mod degree;
pub mod hp;
pub mod rand;

pub use coloring::{collision_statistic, partition_edges, sample_coloring, ColorClasses, Coloring};
pub use degree::{check_supported, default_threshold, degree_decompose, DegreeOptions, DegreeReport};
pub use hp::{check_hp_memory, hp_coloring, HpColoring};
pub use rand::{default_colors, wiseness, enumerate_rand, enumerate_with_coloring, RandOptions, RandReport};
