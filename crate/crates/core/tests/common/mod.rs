//! Shared helpers for the integration suites: an independent brute-force
//! summation over fixed points (no local-sum tables, no convolution) used
//! as the oracle for the convolution engine.

use pt_toric_core::engine::fixedpoint_class;
use pt_toric_core::exact::{Rat, URatFunc};
use pt_toric_core::toricgeom::{partitions_in_rays, Partition, ToricSurface, VertexId};

/// All ways to split `m` over `parts` slots.
pub fn compositions(m: u32, parts: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; parts];
    fn rec(cur: &mut Vec<u32>, idx: usize, left: u32, out: &mut Vec<Vec<u32>>) {
        if idx == cur.len() - 1 {
            cur[idx] = left;
            out.push(cur.clone());
            return;
        }
        for d in 0..=left {
            cur[idx] = d;
            rec(cur, idx + 1, left - d, out);
        }
    }
    rec(&mut cur, 0, m, &mut out);
    out
}

/// Every joint choice of one partition per vertex for a given composition.
pub fn joint_partitions(choices: &[Vec<Partition>]) -> Vec<Vec<Partition>> {
    let mut out: Vec<Vec<Partition>> = vec![Vec::new()];
    for c in choices {
        let mut next = Vec::new();
        for prefix in &out {
            for lam in c {
                let mut row = prefix.clone();
                row.push(lam.clone());
                next.push(row);
            }
        }
        out = next;
    }
    out
}

/// Direct summation over all fixed points of the slope-specialized class:
/// the independent route against which the convolution engine is checked.
pub fn brute_force_coefficient(
    surface: &ToricSurface,
    beta: &[i64],
    m: u32,
    slope: &Rat,
) -> URatFunc {
    let nv = surface.vertices().len();
    let mut acc = URatFunc::zero();
    for tuple in surface.degree_tuples(beta) {
        let bounds: Vec<_> = (0..nv)
            .map(|v| surface.ray_bounds(&tuple, VertexId(v)))
            .collect();
        for comp in compositions(m, nv) {
            let choices: Vec<Vec<Partition>> = comp
                .iter()
                .enumerate()
                .map(|(v, &mv)| partitions_in_rays(bounds[v], mv))
                .collect();
            for lams in joint_partitions(&choices) {
                let class = fixedpoint_class(surface, &tuple, &lams).unwrap();
                acc = &acc + &class.specialize(slope).unwrap();
            }
        }
    }
    acc
}
