//! Volumes of well-known census manifolds, as an end-to-end check against
//! published values.

use monotri_core::angles::initial_structure;
use monotri_core::farey::{parse_bridge_word, parse_bundle_word};
use monotri_core::triangulation::{build_bridge_triangulation, build_bundle_triangulation, TriKind};
use monotri_core::volume::{lobachevsky, maximize_volume, v3, v8};
use std::f64::consts::PI;

fn bridge_volume(word: &str) -> f64 {
    let tri = build_bridge_triangulation(&parse_bridge_word(word).unwrap()).unwrap();
    let s0 = initial_structure::<f64>(&tri).unwrap();
    maximize_volume(&tri, &s0.w, 1e-12, 200).unwrap().1.total_volume
}

#[test]
fn census_volumes() {
    // figure-eight knot: two regular ideal tetrahedra
    assert!((bridge_volume("RL") - 2.0 * v3::<f64>()).abs() < 1e-9);
    // Whitehead link: one regular ideal octahedron
    assert!((bridge_volume("RLR") - v8::<f64>()).abs() < 1e-9);
    // knots 5_2, 6_1, 6_2, 6_3 from the tables
    assert!((bridge_volume("R2L") - 2.82812208833078).abs() < 1e-6);
    assert!((bridge_volume("R3L") - 3.16396322888815).abs() < 1e-6);
    assert!((bridge_volume("R2LR") - 4.40083251259234).abs() < 1e-6);
    assert!((bridge_volume("RLRL") - 5.69302109138222).abs() < 1e-6);
    // mirror words give the same volumes
    assert!((bridge_volume("RL2") - bridge_volume("R2L")).abs() < 1e-10);
    assert!((bridge_volume("RL3") - bridge_volume("R3L")).abs() < 1e-10);
}

#[test]
fn bundle_volume_matches_drilled_limit() {
    // the volume of R^N L^N climbs monotonically toward the octahedral
    // upper bound 2 v8 (the gap decays like 1/N)
    let mut prev = 0.0;
    for n in [4u32, 8, 16, 32] {
        let word = parse_bundle_word(&format!("R{n}L{n}")).unwrap();
        let tri = build_bundle_triangulation(&word, TriKind::TorusBundle);
        let s0 = initial_structure::<f64>(&tri).unwrap();
        let vol = maximize_volume(&tri, &s0.w, 1e-12, 200).unwrap().1.total_volume;
        assert!(vol > prev);
        prev = vol;
    }
    assert!(2.0 * v8::<f64>() - prev < 0.07);
    assert!(prev < 2.0 * v8::<f64>());
}

#[test]
fn lobachevsky_maximum_at_pi_six() {
    // L attains its maximum at pi/6 with 3 L(pi/6) = 2 L(pi/3) + L(pi/6)
    let at = |t: f64| lobachevsky(t).unwrap();
    assert!(at(PI / 6.0) > at(PI / 6.0 + 1e-4));
    assert!(at(PI / 6.0) > at(PI / 6.0 - 1e-4));
    // Landen-type identity: L(2t) = 2 L(t) - 2 L(pi/2 - t)
    for t in [0.2, 0.4, 0.7] {
        let lhs = at(2.0 * t);
        let rhs = 2.0 * at(t) - 2.0 * at(PI / 2.0 - t);
        assert!((lhs - rhs).abs() < 1e-13, "t = {t}");
    }
}
