//! Computes the full published table ranges (deeper than the desk suite).
use pt_toric_core::{evir_series, ToricSurface};
use std::time::Instant;

fn main() {
    let s = ToricSurface::p2();
    for d in [3i64, 4] {
        let t0 = Instant::now();
        match evir_series(&s, &[d], 16) {
            Ok(series) => {
                for c in &series {
                    println!("d={d} m={} value={}", c.m, c.value);
                }
                println!("d={d} m<=16 took {:?}", t0.elapsed());
            }
            Err(e) => println!("d={d} failed: {e}"),
        }
    }
}
