//! Partitions as column heights, and their enumeration inside a rays region.

use serde::{Deserialize, Serialize};

/// A partition stored as weakly decreasing column heights:
/// `heights[i]` is the number of boxes in column `i`, so the box set is
/// `{(k₁, k₂) : k₂ < heights[k₁]}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    heights: Vec<u32>,
}

impl Partition {
    pub fn new(heights: Vec<u32>) -> Self {
        assert!(
            heights.windows(2).all(|w| w[0] >= w[1]),
            "column heights must be weakly decreasing"
        );
        assert!(
            heights.last().map_or(true, |&h| h >= 1),
            "column heights must be positive"
        );
        Partition { heights }
    }

    pub fn empty() -> Self {
        Partition {
            heights: Vec::new(),
        }
    }

    pub fn heights(&self) -> &[u32] {
        &self.heights
    }

    pub fn is_empty(&self) -> bool {
        self.heights.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.heights.iter().sum()
    }

    pub fn contains_box(&self, k1: u32, k2: u32) -> bool {
        (k1 as usize) < self.heights.len() && k2 < self.heights[k1 as usize]
    }

    /// Iterates over boxes `(k₁, k₂)` column by column.
    pub fn boxes(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.heights
            .iter()
            .enumerate()
            .flat_map(|(i, &h)| (0..h).map(move |j| (i as u32, j)))
    }

    /// The transposed diagram (rows and columns exchanged).
    pub fn transpose(&self) -> Partition {
        let rows = self.heights.first().copied().unwrap_or(0);
        let heights = (0..rows)
            .map(|j| self.heights.iter().filter(|&&h| h > j).count() as u32)
            .collect();
        Partition { heights }
    }

    /// True when every box lies in the rays region of `bound`.
    pub fn fits(&self, bound: RayBound) -> bool {
        self.heights
            .iter()
            .skip(bound.b as usize)
            .all(|&h| h <= bound.a)
    }
}

/// The rays region `{(k₁, k₂) : k₁ < b or k₂ < a}`: `a` bounds box heights
/// beyond column `b`, i.e. `a` is the thickening of the coordinate-1 edge
/// and `b` of the coordinate-2 edge.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RayBound {
    pub a: u32,
    pub b: u32,
}

impl RayBound {
    pub fn new(a: u32, b: u32) -> Self {
        RayBound { a, b }
    }

    pub fn contains_box(&self, k1: u32, k2: u32) -> bool {
        k1 < self.b || k2 < self.a
    }
}

/// All partitions of `m` inside the rays region, in decreasing
/// lexicographic order of the height sequence.
pub fn partitions_in_rays(bound: RayBound, m: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut acc: Vec<u32> = Vec::new();
    fn rec(
        bound: RayBound,
        remaining: u32,
        col: u32,
        max_h: u32,
        acc: &mut Vec<u32>,
        out: &mut Vec<Partition>,
    ) {
        if remaining == 0 {
            out.push(Partition {
                heights: acc.clone(),
            });
            return;
        }
        let mut cap = max_h.min(remaining);
        if col >= bound.b {
            cap = cap.min(bound.a);
        }
        for h in (1..=cap).rev() {
            acc.push(h);
            rec(bound, remaining - h, col + 1, h, acc, out);
            acc.pop();
        }
    }
    rec(bound, m, 0, m, &mut acc, &mut out);
    out
}
