//! Rough timing probe for the table computations.
use pt_toric_core::{evir_series, ToricSurface};
use std::time::Instant;

fn main() {
    let s = ToricSurface::p2();
    for (d, mmax) in [(1i64, 24u32), (2, 8), (2, 12), (3, 5), (4, 5), (2, 24), (4, 8)] {
        let t0 = Instant::now();
        let series = evir_series(&s, &[d], mmax).unwrap();
        let last = &series.last().unwrap().value;
        println!(
            "d={d} m<={mmax}: {:?} (last value {last})",
            t0.elapsed()
        );
    }
}
