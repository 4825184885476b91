use serde::{Deserialize, Serialize};

use super::code::{Passage, Sign};
use super::diagram::{GaussDiagram, SlotRef};
use super::GaussError;

/// Which of the two short arcs arriving at crossing `i` gets the odd label
/// `a_{2i-1}` (0-based: index `2i`).
///
/// With both strands pointing up, the over strand of a positive crossing
/// enters from the bottom left and that of a negative crossing from the
/// bottom right. `LeftFirst`/`RightFirst` follow that picture; `OverFirst`
/// and `UnderFirst` ignore the sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ArcConvention {
    /// The arc entering from the left is `a_{2i-1}`.
    LeftFirst,
    /// The arc entering from the right is `a_{2i-1}`.
    RightFirst,
    /// The arc arriving along the over strand is `a_{2i-1}`.
    OverFirst,
    /// The arc arriving along the under strand is `a_{2i-1}`.
    UnderFirst,
}

impl ArcConvention {
    pub const ALL: [ArcConvention; 4] = [
        ArcConvention::LeftFirst,
        ArcConvention::RightFirst,
        ArcConvention::OverFirst,
        ArcConvention::UnderFirst,
    ];

    /// 0-based arc index of the short arc that ends at an endpoint of
    /// crossing `crossing` (of sign `sign`) with the given passage.
    pub fn incoming_arc(self, crossing: usize, sign: Sign, passage: Passage) -> usize {
        let first = match (self, sign) {
            (ArcConvention::OverFirst, _)
            | (ArcConvention::LeftFirst, Sign::Pos)
            | (ArcConvention::RightFirst, Sign::Neg) => Passage::Over,
            _ => Passage::Under,
        };
        2 * crossing + usize::from(passage != first)
    }
}

/// Short arcs of a diagram: `2n` arcs, each ending at one chord endpoint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShortArcStructure {
    /// Arc `k` ends at `ends[k]`.
    pub ends: Vec<SlotRef>,
    /// Incoming arcs `(a_{2i-1}, a_{2i})` at crossing `i`, 0-based.
    pub crossing_incidence: Vec<(usize, usize)>,
    /// `successor[k]` is the arc that follows arc `k` along its component.
    pub successor: Vec<usize>,
}

impl ShortArcStructure {
    pub fn arc_count(&self) -> usize {
        self.successor.len()
    }

    /// Cycle decomposition of the successor permutation.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.successor.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                cyc.push(k);
                k = self.successor[k];
            }
            out.push(cyc);
        }
        out
    }
}

/// Short arcs of `d`. The arc ending at an endpoint runs back to the previous
/// endpoint on the same circle; it is succeeded by the arc ending at the next
/// endpoint.
pub fn short_arcs(
    d: &GaussDiagram,
    convention: ArcConvention,
) -> Result<ShortArcStructure, GaussError> {
    let n = d.crossing_count();
    if n == 0 {
        return Err(GaussError::NoCrossings);
    }
    let arc_at = |at: SlotRef| {
        let e = d.endpoint(at);
        convention.incoming_arc(e.chord, d.chords()[e.chord].sign, e.passage)
    };
    let mut ends = vec![SlotRef::new(0, 0); 2 * n];
    let mut successor = vec![0; 2 * n];
    for (ci, slots) in d.components().iter().enumerate() {
        for pi in 0..slots.len() {
            let here = SlotRef::new(ci, pi);
            let k = arc_at(here);
            ends[k] = here;
            successor[k] = arc_at(d.next_slot(here));
        }
    }
    let crossing_incidence = (0..n).map(|i| (2 * i, 2 * i + 1)).collect();
    Ok(ShortArcStructure {
        ends,
        crossing_incidence,
        successor,
    })
}
