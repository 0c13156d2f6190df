//! Graph segments of an interval exchange, for plotting.
//!
//! Segments are closed on the left and open on the right, matching the
//! right-continuity of the maps.

use crate::exchange::IntervalExchange;
use crate::Scalar;

/// Significant digits of the decimal companion columns.
pub const DECIMAL_DIGITS: usize = 30;

/// The graph over `[x_left, x_right)` is the line `y = x + offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub x_left: Scalar,
    pub x_right: Scalar,
    pub y_left: Scalar,
    pub offset: Scalar,
}

pub fn plot_segments(f: &IntervalExchange) -> Vec<Segment> {
    f.pieces()
        .map(|(a, b, w)| Segment {
            x_left: a.clone(),
            x_right: b.clone(),
            y_left: a + w,
            offset: w.clone(),
        })
        .collect()
}

/// Tab-separated table: exact columns followed by decimal columns.
pub fn segments_tsv(segments: &[Segment]) -> String {
    let mut out = String::from("x_left\tx_right\ty_left\toffset\tx_left_dec\tx_right_dec\ty_left_dec\toffset_dec\n");
    for s in segments {
        let cols = [&s.x_left, &s.x_right, &s.y_left, &s.offset];
        let exact: Vec<String> = cols.iter().map(|x| x.to_string()).collect();
        let decimal: Vec<String> = cols.iter().map(|x| x.to_decimal(DECIMAL_DIGITS)).collect();
        out.push_str(&exact.join("\t"));
        out.push('\t');
        out.push_str(&decimal.join("\t"));
        out.push('\n');
    }
    out
}
