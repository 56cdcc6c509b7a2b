#![allow(dead_code)]

use std::path::PathBuf;

use knot_cluster::{LinkDiagram, Quiver};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn fixture(name: &str) -> LinkDiagram {
    LinkDiagram::parse_any(&fixture_text(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Initial figure-eight quiver.
pub const FIG8_Q: [(u32, u32); 12] =
    [(3, 6), (3, 8), (6, 1), (8, 5), (5, 7), (5, 3), (2, 5), (4, 1), (7, 4), (7, 2), (1, 3), (1, 7)];

/// Figure-eight quiver after mutating at 4, 8, 2, 6.
pub const FIG8_Q_MID: [(u32, u32); 8] = [(6, 3), (8, 3), (1, 6), (5, 8), (5, 2), (1, 4), (4, 7), (2, 7)];

/// Initial Borromean quiver.
#[rustfmt::skip]
pub const BOR_Q: [(u32, u32); 24] = [
    (11, 6), (11, 10), (5, 11), (5, 1), (4, 5), (4, 9), (10, 4), (10, 12), (6, 5), (6, 7), (1, 4), (1, 3),
    (9, 10), (9, 2), (3, 6), (3, 2), (2, 1), (2, 8), (7, 3), (7, 12), (8, 7), (8, 9), (12, 8), (12, 11),
];

/// Borromean quiver after the triangle move of segment 1 across (2, 3).
#[rustfmt::skip]
pub const BOR_Q_MID: [(u32, u32); 18] = [
    (11, 6), (11, 10), (5, 11), (4, 3), (10, 4), (10, 12), (6, 2), (2, 5), (2, 1), (3, 9), (3, 2), (9, 10),
    (1, 7), (1, 3), (7, 12), (8, 1), (12, 8), (12, 11),
];

/// Borromean quiver on the six surviving segments after three bigon reductions.
pub const BOR_Q_RIGHT: [(u32, u32); 6] = [(11, 10), (10, 12), (2, 1), (3, 2), (1, 3), (12, 11)];

/// Knot [2,1,1,2] quiver including the 2-cycles of its two bigons.
#[rustfmt::skip]
pub const K2112_FULL: [(u32, u32); 24] = [
    (1, 10), (10, 2), (2, 11), (11, 1), (10, 4), (4, 9), (9, 4), (9, 5), (5, 10), (7, 11), (11, 6), (6, 12),
    (7, 12), (12, 7), (12, 8), (8, 1), (1, 7), (2, 5), (5, 3), (3, 6), (6, 2), (4, 8), (8, 3), (3, 9),
];

pub fn quiver(n: usize, arrows: &[(u32, u32)]) -> Quiver {
    Quiver::from_arrows(n, arrows)
}

/// Every diagram the corpus-wide checks run on.
pub fn corpus() -> Vec<(String, LinkDiagram)> {
    let mut out: Vec<(String, LinkDiagram)> =
        ["hopf.json", "trefoil.pd", "figure8.json", "borromean.json", "knot2112.json"]
            .iter()
            .map(|n| (n.to_string(), fixture(n)))
            .collect();
    let cfs: [&[u32]; 6] = [&[2], &[3], &[4], &[5], &[2, 2], &[2, 1, 1, 2]];
    for cf in cfs {
        out.push((format!("two_bridge{cf:?}"), knot_cluster::linkdiag::two_bridge(cf).unwrap()));
    }
    out
}

pub fn replay_fixture(name: &str) -> (LinkDiagram, knot_cluster::planner::ReplayFile) {
    let r = knot_cluster::planner::ReplayFile::from_json(&fixture_text(name)).unwrap();
    (fixture(&r.diagram), r)
}

/// Reference figure-eight F-polynomials in tex form.
pub const FIG8_F: [&str; 8] = [
    "1+y_1+y_1y_4+y_1y_6+y_1y_4y_6",
    "1+y_4+y_4y_7+y_4y_5y_7+y_4y_5y_7y_8",
    "1+y_6+y_8+y_6y_8+y_3y_6y_8",
    "1+y_2+y_2y_7+y_1y_2y_7+y_1y_2y_6y_7",
    "1+y_5+y_2y_5+y_5y_8+y_2y_5y_8",
    "1+y_8+y_3y_8+y_1y_3y_8+y_1y_3y_4y_8",
    "1+y_2+y_4+y_2y_4+y_2y_4y_7",
    "1+y_6+y_3y_6+y_3y_5y_6+y_2y_3y_5y_6",
];

pub const BOR_F1: &str = "1+y_1+y_1y_2+y_1y_5+y_1y_2y_5+y_1y_5y_6+y_1y_2y_9+y_1y_2y_5y_6+y_1y_2y_5y_9\
+y_1y_2y_3y_5y_6+y_1y_2y_5y_6y_9+y_1y_2y_4y_5y_9+y_1y_2y_3y_5y_6y_9+y_1y_2y_4y_5y_6y_9\
+y_1y_2y_3y_4y_5y_6y_9+y_1^2y_2y_3y_4y_5y_6y_9";

pub const K2112_FT1: &str = "1+y_5+y_{12}+y_5y_{12}+y_2y_5+y_5y_9+y_2y_5y_{12}+y_5y_9y_{12}+y_2y_5y_9\
+y_2y_5y_9y_{12}+y_2y_5y_6y_{12}+y_2y_5y_6y_9y_{12}+y_2y_3y_5y_6y_9y_{12}";

pub const K2112_FT7: &str = "1+y_5+y_2y_5+y_5y_9+y_2y_5y_6+y_2y_5y_9+y_2y_5y_6y_9+y_2y_3y_5y_6y_9\
+y_2y_3y_5y_6y_8y_9+y_2y_3y_4y_5y_6y_8y_9+y_2y_3y_4y_5y_6y_8y_9y_{10}+y_2y_3y_4y_5^2y_6y_8y_9y_{10}\
+y_2y_3y_4y_5^2y_6y_8y_9^2y_{10}";

pub const K2112_FT8: &str = "1+y_5+y_{11}+y_5y_{11}+y_5y_9+y_7y_{11}+y_5y_7y_{11}+y_5y_9y_{11}+y_2y_5y_9\
+y_2y_5y_7y_{11}+y_5y_7y_9y_{11}+y_2y_5y_9y_{11}+y_2y_5y_7y_9y_{11}";

pub fn ypoly(n: usize, tex: &str) -> knot_cluster::LaurentPoly {
    knot_cluster::LaurentPoly::parse(knot_cluster::Vars::Y(n), tex).unwrap()
}
