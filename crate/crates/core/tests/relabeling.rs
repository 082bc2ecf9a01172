//! The fan-built plane and the hand-labelled one differ by chart
//! relabeling only; every localization output must coincide.

mod common;

use pt_toric_core::engine::{evir, global_coefficient};
use pt_toric_core::exact::rat_int;
use pt_toric_core::ToricSurface;

#[test]
fn fan_plane_matches_builtin_outputs() {
    let builtin = ToricSurface::p2();
    let from_fan = ToricSurface::from_fan(&[[1, 0], [0, 1], [-1, -1]]).unwrap();
    let slope = rat_int(17);
    for d in 1..=2i64 {
        for m in 0..=2u32 {
            let a = evir(&builtin, &[d], m).unwrap();
            let b = evir(&from_fan, &[d], m).unwrap();
            assert_eq!(a.value, b.value, "evir d={d} m={m}");
            let fa = global_coefficient(&builtin, &[d], m, &slope).unwrap();
            let fb = global_coefficient(&from_fan, &[d], m, &slope).unwrap();
            assert_eq!(fa, fb, "coefficient function d={d} m={m}");
        }
    }
}

#[test]
fn fan_plane_matches_brute_force_too() {
    let from_fan = ToricSurface::from_fan(&[[1, 0], [0, 1], [-1, -1]]).unwrap();
    let slope = rat_int(17);
    for m in 0..=2u32 {
        let direct = common::brute_force_coefficient(&from_fan, &[2], m, &slope);
        let conv = global_coefficient(&from_fan, &[2], m, &slope).unwrap();
        assert_eq!(direct, conv, "m={m}");
    }
}
