//! Data behind the reproduced tables.

use rayon::prelude::*;

use crate::expansion::{expand, EngineError, ExpandConfig, ExpandOutcome, ParryShape};
use crate::salem::SalemTriple;

/// The 81 sextic Salem triples of trace at most 15 whose expansions resisted
/// Boyd's original search, by increasing trace.
pub const LONG_EXPANSIONS: [(i64, i64, i64); 81] = [
    (-3, -1, -7),
    (-5, -2, -11),
    (-6, -26, -39),
    (-6, -21, -31),
    (-7, -29, -43),
    (-7, -28, -41),
    (-8, -33, -49),
    (-8, -30, -44),
    (-8, -26, -38),
    (-8, -23, -34),
    (-8, -3, -17),
    (-9, -35, -51),
    (-9, -28, -41),
    (-9, -6, -20),
    (-10, -41, -61),
    (-10, -40, -59),
    (-10, -36, -52),
    (-10, -4, -21),
    (-11, -41, -60),
    (-11, -40, -58),
    (-11, -39, -55),
    (-11, -35, -49),
    (-11, -33, -48),
    (-11, -30, -44),
    (-11, -14, -28),
    (-11, -11, -26),
    (-12, -48, -71),
    (-12, -47, -69),
    (-12, -44, -63),
    (-12, -43, -62),
    (-12, -42, -61),
    (-12, -40, -56),
    (-12, -32, -47),
    (-12, -16, -31),
    (-12, -13, -29),
    (-12, -7, -26),
    (-12, 10, -25),
    (-13, -51, -75),
    (-13, -49, -71),
    (-13, -48, -70),
    (-13, -46, -67),
    (-13, -45, -65),
    (-13, -43, -62),
    (-13, -41, -59),
    (-13, -38, -55),
    (-13, -35, -51),
    (-13, -30, -41),
    (-13, -18, -34),
    (-13, -10, -29),
    (-13, -6, -27),
    (-13, 33, -45),
    (-14, -55, -81),
    (-14, -54, -79),
    (-14, -46, -66),
    (-14, -45, -65),
    (-14, -43, -62),
    (-14, -40, -58),
    (-14, -38, -55),
    (-14, -37, -54),
    (-14, -36, -45),
    (-14, -30, -41),
    (-14, -16, -34),
    (-14, 13, -29),
    (-14, 41, -57),
    (-15, -58, -85),
    (-15, -56, -82),
    (-15, -55, -80),
    (-15, -54, -77),
    (-15, -46, -66),
    (-15, -45, -65),
    (-15, -43, -62),
    (-15, -40, -58),
    (-15, -39, -57),
    (-15, -21, -39),
    (-15, -18, -37),
    (-15, -13, -33),
    (-15, -11, -33),
    (-15, -6, -31),
    (-15, -5, -31),
    (-15, 19, -34),
    (-15, 37, -51),
];

pub fn long_expansion_triples(max_trace: i64) -> Vec<SalemTriple> {
    LONG_EXPANSIONS
        .iter()
        .filter(|t| -t.0 <= max_trace)
        .map(|&(a, b, c)| SalemTriple::new(a, b, c))
        .collect()
}

/// A row of the long-expansion table: either the shape or a lower bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LongExpansionRow {
    pub triple: SalemTriple,
    pub shape: Option<ParryShape>,
    /// `m + p` exceeds this when the shape is unknown.
    pub lower_bound: Option<u64>,
}

/// Expand every long-expansion triple of trace at most `max_trace`, in table order.
pub fn long_expansion_rows(max_trace: i64, config: &ExpandConfig) -> Result<Vec<LongExpansionRow>, EngineError> {
    long_expansion_triples(max_trace)
        .par_iter()
        .map(|&triple| {
            let row = match expand(&triple.poly(), config)? {
                ExpandOutcome::Periodic { shape, .. } => LongExpansionRow {
                    triple,
                    shape: Some(shape),
                    lower_bound: None,
                },
                ExpandOutcome::BudgetExhausted(r) => LongExpansionRow {
                    triple,
                    shape: None,
                    lower_bound: Some(r.bound()),
                },
            };
            Ok(row)
        })
        .collect()
}
