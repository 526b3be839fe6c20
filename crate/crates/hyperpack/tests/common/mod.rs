//! Printed reference-table rows and sweep helpers shared by the
//! integration suites.
//!
//! The row values are the five-digit figures of the published reference
//! tables, kept verbatim (including the {4,6,6} cells known to be
//! internally inconsistent — the suites decide how to treat them).

// Not every suite uses every table.
#![allow(dead_code)]

use hyperpack::orthoscheme::{build_gram, SchlafliParams};

/// One row of the two-congruent-hyperballs table: `(u, v, w)`, common
/// height, orthoscheme volume, piece-volume sum, density.
pub struct CongruentRow {
    pub triple: (u32, u32, u32),
    pub h: f64,
    pub volume: f64,
    pub piece_sum: f64,
    pub density: f64,
}

const fn t1(
    triple: (u32, u32, u32),
    h: f64,
    volume: f64,
    piece_sum: f64,
    density: f64,
) -> CongruentRow {
    CongruentRow {
        triple,
        h,
        volume,
        piece_sum,
        density,
    }
}

/// The two-congruent-hyperballs reference table.
pub const TABLE_1: [CongruentRow; 16] = [
    t1((7, 3, 7), 1.23469, 0.38325, 0.31172, 0.81335),
    t1((7, 3, 8), 0.93100, 0.41326, 0.25726, 0.62251),
    t1((7, 3, 9), 0.76734, 0.43171, 0.23355, 0.54099),
    t1((7, 3, 50), 0.11380, 0.49016, 0.06121, 0.12488),
    t1((8, 3, 8), 0.94946, 0.44383, 0.33794, 0.76143),
    t1((8, 3, 9), 0.78366, 0.46266, 0.29474, 0.63704),
    t1((8, 3, 10), 0.67409, 0.47536, 0.26747, 0.56266),
    t1((8, 3, 50), 0.11668, 0.52248, 0.06935, 0.13274),
    t1((5, 4, 5), 0.88055, 0.46190, 0.36007, 0.77955),
    t1((5, 4, 6), 0.73969, 0.50747, 0.37287, 0.73476),
    t1((5, 4, 7), 0.59326, 0.53230, 0.32974, 0.61947),
    t1((5, 4, 50), 0.07206, 0.59291, 0.06350, 0.10710),
    t1((4, 5, 4), 0.80846, 0.43062, 0.31702, 0.73620),
    t1((4, 5, 5), 0.69129, 0.49789, 0.38284, 0.76893),
    t1((4, 5, 6), 0.53064, 0.52971, 0.33597, 0.63426),
    t1((4, 5, 50), 0.05502, 0.59318, 0.05710, 0.096256),
];

/// One row of the one-hyperball table: `(u, v, w)`, the two candidate
/// maximal heights, orthoscheme volume, winning piece volume, density.
pub struct OneBallRow {
    pub triple: (u32, u32, u32),
    pub h0: f64,
    pub h3: f64,
    pub volume: f64,
    pub piece: f64,
    pub density: f64,
}

const fn t2(
    triple: (u32, u32, u32),
    h0: f64,
    h3: f64,
    volume: f64,
    piece: f64,
    density: f64,
) -> OneBallRow {
    OneBallRow {
        triple,
        h0,
        h3,
        volume,
        piece,
        density,
    }
}

/// The one-hyperball reference table. The {4,6,6} row's h3 and piece
/// cells are known to be inconsistent with each other and with the rest
/// of that row.
pub const TABLE_2: [OneBallRow; 18] = [
    t2((7, 3, 8), 0.93100, 1.25596, 0.41326, 0.16371, 0.39614),
    t2((7, 3, 9), 0.76734, 1.27042, 0.43171, 0.16543, 0.38320),
    t2((7, 3, 50), 0.11380, 1.32226, 0.49016, 0.18040, 0.36805),
    t2((8, 3, 9), 0.78366, 0.96206, 0.46266, 0.17265, 0.37316),
    t2((8, 3, 10), 0.67409, 0.97104, 0.47536, 0.17531, 0.36879),
    t2((8, 3, 50), 0.11668, 1.00753, 0.52248, 0.18650, 0.35695),
    t2((5, 4, 5), 1.02221, 1.02221, 0.46190, 0.22942, 0.49668),
    t2((5, 4, 6), 0.73969, 1.07541, 0.50747, 0.25088, 0.49437),
    t2((5, 4, 7), 0.59326, 1.10694, 0.53230, 0.26448, 0.49686),
    t2((5, 4, 50), 0.07206, 1.19054, 0.59291, 0.30407, 0.51284),
    t2((4, 5, 4), 1.06128, 1.06128, 0.43062, 0.24500, 0.56895),
    t2((4, 5, 5), 0.69129, 1.16974, 0.49789, 0.29371, 0.58990),
    t2((4, 5, 6), 0.53064, 1.22646, 0.52971, 0.32284, 0.60946),
    t2((4, 5, 50), 0.05502, 1.19344, 0.59318, 0.30555, 0.51510),
    t2((4, 6, 4), 0.88137, 0.88137, 0.50192, 0.30049, 0.59868),
    t2((4, 6, 5), 0.61415, 0.97970, 0.55992, 0.35582, 0.63548),
    t2((4, 6, 6), 0.48121, 1.01251, 0.58850, 0.32284, 0.58711),
    t2((4, 6, 50), 0.05138, 0.88231, 0.64697, 0.30100, 0.46522),
];

/// One row of the optimal-non-congruent table: `(u, v, w)`, the two
/// optimal heights (as an unordered pair), piece-volume sum, density.
pub struct NonCongruentRow {
    pub triple: (u32, u32, u32),
    pub h0: f64,
    pub h3: f64,
    pub piece_sum: f64,
    pub density: f64,
}

const fn t3(
    triple: (u32, u32, u32),
    h0: f64,
    h3: f64,
    piece_sum: f64,
    density: f64,
) -> NonCongruentRow {
    NonCongruentRow {
        triple,
        h0,
        h3,
        piece_sum,
        density,
    }
}

/// The optimal-non-congruent-hyperballs reference table.
pub const TABLE_3: [NonCongruentRow; 17] = [
    t3((7, 3, 7), 1.23469, 1.23469, 0.31172, 0.81335),
    t3((7, 3, 8), 0.93100, 1.25596, 0.32520, 0.78690),
    t3((7, 3, 9), 0.76734, 1.27042, 0.32892, 0.76189),
    t3((7, 3, 50), 0.11380, 1.32226, 0.23307, 0.47549),
    t3((8, 3, 8), 0.94946, 0.94946, 0.33794, 0.76143),
    t3((8, 3, 9), 0.78366, 0.96206, 0.34107, 0.73718),
    t3((8, 3, 10), 0.67409, 0.97104, 0.33990, 0.71504),
    t3((8, 3, 50), 0.11668, 1.00753, 0.24051, 0.46032),
    t3((5, 4, 5), 0.73890, 1.02221, 0.36903, 0.79895),
    t3((5, 4, 6), 0.73969, 0.83611, 0.39956, 0.78736),
    t3((5, 4, 7), 0.59326, 0.90486, 0.41263, 0.77517),
    t3((5, 4, 50), 0.07206, 1.19054, 0.35623, 0.60082),
    t3((4, 5, 4), 0.55565, 1.06128, 0.34184, 0.79382),
    t3((4, 5, 5), 0.69129, 0.69129, 0.38284, 0.76893),
    t3((4, 5, 6), 0.53064, 0.77568, 0.39374, 0.74331),
    t3((4, 5, 50), 0.05502, 1.13842, 0.32720, 0.55161),
    t3((5, 5, 5), 0.35764, 0.77537, 0.41589, 0.72618),
];

/// All canonical (u ≤ w) integer triples in `[min, max]³` that describe
/// a doubly truncated orthoscheme.
pub fn valid_triples(min: u32, max: u32) -> Vec<(u32, u32, u32)> {
    let mut triples = Vec::new();
    for u in min..=max {
        for v in min..=max {
            for w in u..=max {
                let Ok(params) =
                    SchlafliParams::new(f64::from(u), f64::from(v), f64::from(w))
                else {
                    continue;
                };
                if build_gram(&params).is_ok() {
                    triples.push((u, v, w));
                }
            }
        }
    }
    triples
}

/// Convenience constructor for test parameter triples.
pub fn params(u: f64, v: f64, w: f64) -> SchlafliParams {
    SchlafliParams::new(u, v, w).expect("test triples are valid")
}
