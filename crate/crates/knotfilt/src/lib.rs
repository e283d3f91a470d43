//! Command-line front end: file formats, reports and verification suites.

pub mod cli;
pub mod io;
pub mod report;
pub mod suites;

/// Instances shipped with the crate.
pub mod fixtures {
    pub const TREFOIL: &str = include_str!("../fixtures/trefoil.json");
    pub const FIGURE_EIGHT: &str = include_str!("../fixtures/figure_eight.json");
    pub const FIGURE_EIGHT_GAUSS: &str = include_str!("../fixtures/figure_eight.gauss");
    pub const FIVE_CIRCLES: &str = include_str!("../fixtures/five_circles.json");
    pub const CLASPERS: [&str; 5] = [
        include_str!("../fixtures/claspers/y_trefoil.json"),
        include_str!("../fixtures/claspers/three_leaves.json"),
        include_str!("../fixtures/claspers/five_a.json"),
        include_str!("../fixtures/claspers/five_b.json"),
        include_str!("../fixtures/claspers/five_c.json"),
    ];
}
