//! Euclidean realization of the cusp tessellation and its verification.
//!
//! Each cusp triangle of layer i is similar to the Euclidean triangle with
//! angles (x_i, y_i, z_i); the tessellation is developed in the plane by
//! walking the gluing graph. Around every vertex the angles sum to 2 pi
//! identically, so rotation parts always close up; the scaling parts close
//! exactly when the structure is critical for the volume, which is what the
//! holonomy residuals measure.
//!
//! Conventions: in every developed triangle the ccw corner order is
//! (x, z, y), matching the clockwise (x, y, z) labels of the cusp picture;
//! side s joins ccw corners s and s+1, so side 0 is the x-side, side 1 the
//! y-side, side 2 the base opposite the apex.

mod diagnostics;
mod rnlm;

pub use diagnostics::{fan_diagnostics, geodesic_complex_lengths, FanDiagnostics, GeodesicLength};
pub use rnlm::{rnlm_crosscheck, solve_rnlm, RnlmCrosscheck, RnlmSolution};

use crate::angles::AngleStructure;
use crate::error::Error;
use crate::farey::Letter;
use crate::scalar::{r, Real};
use crate::triangulation::{corner_class, cusp_graph, CuspGraph, LayeredTriangulation, TriKind};
use crate::Result;
use num_complex::Complex;
use std::collections::HashMap;

/// Third vertex of the positively oriented triangle (0, 1, s) with angle x
/// at 0, y at 1 and z at s.
pub fn triangle_shape<F: Real>(x: F, y: F, z: F) -> Result<Complex<F>> {
    if x <= F::zero() || y <= F::zero() || z <= F::zero() {
        return Err(Error::Degenerate);
    }
    let modulus = y.sin() / z.sin();
    Ok(Complex::new(modulus * x.cos(), modulus * x.sin()))
}

/// Orientation-preserving similarity z -> rotation * z + translation.
#[derive(Debug, Clone, Copy)]
pub struct Similarity<F: Real> {
    pub rotation: Complex<F>,
    pub translation: Complex<F>,
}

impl<F: Real> Similarity<F> {
    pub fn apply(&self, z: Complex<F>) -> Complex<F> {
        self.rotation * z + self.translation
    }

    /// |rotation - 1|: zero exactly when the map is a translation.
    pub fn rotation_residual(&self) -> F {
        (self.rotation - Complex::new(F::one(), F::zero())).norm()
    }
}

/// Cover coordinates of a cusp triangle: layer row, horizontal copy,
/// apex-up flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) struct TriKey {
    pub row: i64,
    pub col: i64,
    pub up: bool,
}

/// One holonomy generator of the cusp picture.
#[derive(Debug, Clone, PartialEq)]
pub enum Generator {
    /// Loop around one vertex of the tessellation (class id, instance).
    VertexLoop { class: usize, instance: usize },
    /// Curve following a hinge level.
    HingeLevel { layer: usize },
}

impl std::fmt::Display for Generator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Generator::VertexLoop { class, instance } => {
                write!(f, "vertex[{class}.{instance}]")
            }
            Generator::HingeLevel { layer } => write!(f, "hinge_level[{layer}]"),
        }
    }
}

/// Developed cusp tessellation with period maps.
#[derive(Debug, Clone)]
pub struct CuspDevelopment<F: Real> {
    tri: LayeredTriangulation,
    structure: AngleStructure<F>,
    graph: CuspGraph,
    cover: HashMap<TriKey, [Complex<F>; 3]>,
    /// Horizontal period of the cusp torus (meridian for two-bridge).
    pub horizontal: Similarity<F>,
    /// Vertical period (longitude for two-bridge).
    pub vertical: Similarity<F>,
}

/// Angles of a cover row in ccw corner order (x, z, y).
fn row_shape<F: Real>(
    tri: &LayeredTriangulation,
    s: &AngleStructure<F>,
    row: i64,
) -> Result<[F; 3]> {
    let index = match tri.kind {
        TriKind::TorusBundle | TriKind::SphereBundle => {
            let m = tri.num_letters() as i64;
            row.rem_euclid(m) as usize
        }
        TriKind::TwoBridge => row as usize,
    };
    let (x, y, z) = s.layer_angles(tri, index);
    if x <= F::zero() || y <= F::zero() || z <= F::zero() {
        return Err(Error::Degenerate);
    }
    Ok([x, z, y])
}

/// Given side s of a triangle developed with corner s at `a` and corner
/// s+1 at `b`, returns all three corner positions.
fn place_from_side<F: Real>(shape: [F; 3], side: usize, a: Complex<F>, b: Complex<F>) -> [Complex<F>; 3] {
    let t0 = shape[side];
    let t1 = shape[(side + 1) % 3];
    let t2 = shape[(side + 2) % 3];
    let rot = Complex::from_polar(t1.sin() / t2.sin(), t0);
    let third = a + (b - a) * rot;
    let mut out = [Complex::new(F::zero(), F::zero()); 3];
    out[side] = a;
    out[(side + 1) % 3] = b;
    out[(side + 2) % 3] = third;
    out
}

/// Bottom-clasp fold gluings in cover coordinates, translation-consistent:
/// one side of each down triangle folds onto the base of an up triangle,
/// the other onto the matching side of the next down copy.
fn bottom_fold_glue(tri: &LayeredTriangulation, t: TriKey, side: usize) -> Option<(TriKey, usize)> {
    if tri.kind != TriKind::TwoBridge || t.row != 1 {
        return None;
    }
    let TriKey { col, up, .. } = t;
    let d = |col| TriKey { row: 1, col, up: false };
    let u = |col| TriKey { row: 1, col, up: true };
    match (tri.first_letter(), up, side) {
        (Letter::R, true, 2) => Some((d(col), 1)),
        (Letter::R, false, 1) => Some((u(col), 2)),
        (Letter::R, false, 0) => Some((d(col + 1), 0)),
        (Letter::L, true, 2) => Some((d(col + 1), 0)),
        (Letter::L, false, 0) => Some((u(col - 1), 2)),
        (Letter::L, false, 1) => Some((d(col + 1), 1)),
        _ => None,
    }
}

/// Cover gluing: the triangle and side glued to side `side` of `t`, or
/// None at a two-bridge boundary.
fn cover_glue(tri: &LayeredTriangulation, t: TriKey, side: usize) -> Option<(TriKey, usize)> {
    let TriKey { row, col, up } = t;
    let d = |row, col| TriKey { row, col, up: false };
    let u = |row, col| TriKey { row, col, up: true };
    if up {
        match side {
            // x-side and y-side lie on the upper hexagon line
            0 => match tri.letter_between(row)? {
                Letter::R => Some((u(row + 1, col), 2)),
                Letter::L => Some((d(row + 1, col), 0)),
            },
            1 => match tri.letter_between(row)? {
                Letter::R => Some((d(row + 1, col), 1)),
                Letter::L => Some((u(row + 1, col - 1), 2)),
            },
            // base on the lower hexagon line
            2 => match tri.letter_between(row - 1)? {
                Letter::R => Some((u(row - 1, col), 0)),
                Letter::L => Some((u(row - 1, col + 1), 1)),
            },
            _ => unreachable!(),
        }
    } else {
        match side {
            0 => match tri.letter_between(row - 1)? {
                Letter::R => Some((d(row - 1, col), 2)),
                Letter::L => Some((u(row - 1, col), 0)),
            },
            1 => match tri.letter_between(row - 1)? {
                Letter::R => Some((u(row - 1, col), 1)),
                Letter::L => Some((d(row - 1, col + 1), 2)),
            },
            2 => match tri.letter_between(row)? {
                Letter::R => Some((d(row + 1, col), 0)),
                Letter::L => Some((d(row + 1, col - 1), 1)),
            },
            _ => unreachable!(),
        }
    }
}

/// Horizontal drift of the layer rows in the cover: the reference column
/// of row i relative to row 0 (each L letter shifts the stack left).
fn drift(tri: &LayeredTriangulation, row: i64) -> i64 {
    let base = match tri.kind {
        TriKind::TwoBridge => 1,
        _ => 0,
    };
    let mut k = 0i64;
    if row >= base {
        for i in base..row {
            if tri.letter_between(i) == Some(Letter::L) {
                k -= 1;
            }
        }
    } else {
        for i in row..base {
            if tri.letter_between(i) == Some(Letter::L) {
                k += 1;
            }
        }
    }
    k
}

pub(crate) struct CoverRegion {
    pub rows: std::ops::RangeInclusive<i64>,
    pub half_width: i64,
}

impl CoverRegion {
    fn contains(&self, tri: &LayeredTriangulation, t: TriKey) -> bool {
        self.rows.contains(&t.row) && (t.col - drift(tri, t.row)).abs() <= self.half_width
    }
}

/// Develops every triangle of a cover region by breadth-first walking from
/// the reference triangle, whose base edge is sent to (0, 1).
pub(crate) fn develop_region<F: Real>(
    tri: &LayeredTriangulation,
    s: &AngleStructure<F>,
    region: &CoverRegion,
) -> Result<HashMap<TriKey, [Complex<F>; 3]>> {
    let seed_row = match tri.kind {
        TriKind::TwoBridge => 1,
        _ => 0,
    };
    let seed = TriKey { row: seed_row, col: 0, up: true };
    let mut pos: HashMap<TriKey, [Complex<F>; 3]> = HashMap::new();
    // reference edge: the base (side 2) of the seed goes to (0, 1)
    let shape = row_shape(tri, s, seed.row)?;
    pos.insert(
        seed,
        place_from_side(shape, 2, Complex::new(F::zero(), F::zero()), Complex::new(F::one(), F::zero())),
    );
    let mut queue = std::collections::VecDeque::from([seed]);
    while let Some(t) = queue.pop_front() {
        let here = pos[&t];
        for side in 0..3 {
            let glued = cover_glue(tri, t, side).or_else(|| bottom_fold_glue(tri, t, side));
            let Some((nb, nb_side)) = glued else { continue };
            if !region.contains(tri, nb) || pos.contains_key(&nb) {
                continue;
            }
            let a = here[side];
            let b = here[(side + 1) % 3];
            // orientation-reversing across the shared edge:
            // corner s <-> corner s'+1
            let shape = row_shape(tri, s, nb.row)?;
            pos.insert(nb, place_from_side(shape, nb_side, b, a));
            queue.push_back(nb);
        }
    }
    Ok(pos)
}

/// Quotient-graph loop development: crosses the listed (triangle, side)
/// pairs in order and returns the similarity comparing the final placement
/// of the starting triangle with its initial placement.
fn develop_loop<F: Real>(
    tri: &LayeredTriangulation,
    s: &AngleStructure<F>,
    graph: &CuspGraph,
    path: &[(usize, usize)],
) -> Result<Similarity<F>> {
    assert!(!path.is_empty());
    let quotient_shape = |t: usize| -> Result<[F; 3]> {
        let layer = graph.triangles[t / 2 * 2].layer;
        let (x, y, z) = s.layer_angles(tri, layer);
        if x <= F::zero() || y <= F::zero() || z <= F::zero() {
            return Err(Error::Degenerate);
        }
        Ok([x, z, y])
    };
    let start = path[0].0;
    let shape = quotient_shape(start)?;
    let initial = place_from_side(
        shape,
        0,
        Complex::new(F::zero(), F::zero()),
        Complex::new(F::one(), F::zero()),
    );
    let mut current = initial;
    let mut current_tri = start;
    for &(t, side) in path {
        assert_eq!(t, current_tri, "path must cross sides of the current triangle");
        let (nt, ns) = graph.adjacency[t][side];
        let a = current[side];
        let b = current[(side + 1) % 3];
        let shape = quotient_shape(nt)?;
        current = place_from_side(shape, ns, b, a);
        current_tri = nt;
    }
    if current_tri != start {
        return Err(Error::Degenerate);
    }
    let p0 = initial[0];
    let p1 = initial[1];
    let f0 = current[0];
    let f1 = current[1];
    let rotation = (f1 - f0) / (p1 - p0);
    let translation = f0 - rotation * p0;
    Ok(Similarity { rotation, translation })
}

/// Walks the star of the vertex at (triangle, corner); returns the crossing
/// path and the corners visited.
fn star_walk(graph: &CuspGraph, start: (usize, usize)) -> Vec<(usize, usize)> {
    let mut path = Vec::new();
    let (mut t, mut c) = start;
    loop {
        path.push((t, c));
        let (nt, ns) = graph.adjacency[t][c];
        t = nt;
        c = (ns + 1) % 3;
        if (t, c) == start {
            break;
        }
        assert!(path.len() <= 10_000, "star walk did not close");
    }
    path
}

/// Vertex instances: orbits of (triangle, corner) under the star walk,
/// together with the edge-class id of each orbit.
fn vertex_orbits(tri: &LayeredTriangulation, graph: &CuspGraph) -> Vec<(usize, Vec<(usize, usize)>)> {
    let n = graph.triangles.len();
    let mut seen = vec![[false; 3]; n];
    let mut orbits = Vec::new();
    for t in 0..n {
        for c in 0..3 {
            if seen[t][c] {
                continue;
            }
            let orbit = star_walk(graph, (t, c));
            for &(ot, oc) in &orbit {
                seen[ot][oc] = true;
            }
            orbits.push((corner_class(tri, t, c), orbit));
        }
    }
    orbits
}

/// Dual path following a hinge level for one horizontal period.
fn hinge_level_path(tri: &LayeredTriangulation, layer: usize) -> Vec<(usize, usize)> {
    let stored = match tri.kind {
        TriKind::TwoBridge => layer - 1,
        _ => layer,
    };
    let n = tri.num_layers();
    let prev = |i: usize| (i + n - 1) % n;
    let next = |i: usize| (i + 1) % n;
    let down = |i: usize| 2 * i;
    let up = |i: usize| 2 * i + 1;
    let context = tri.layer(layer).context;
    match context {
        (Letter::R, Letter::L) => vec![
            (down(stored), 1),
            (up(prev(stored)), 0),
            (up(stored), 0),
            (down(next(stored)), 1),
        ],
        (Letter::L, Letter::R) => vec![
            (down(stored), 0),
            (up(prev(stored)), 1),
            (up(stored), 1),
            (down(next(stored)), 0),
        ],
        _ => panic!("not a hinge layer"),
    }
}

/// Dual loops generating the two periods of the cusp torus.
fn period_paths(tri: &LayeredTriangulation) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
    let n = tri.num_layers();
    let down = |i: usize| 2 * i;
    let up = |i: usize| 2 * i + 1;
    match tri.kind {
        TriKind::TorusBundle | TriKind::SphereBundle => {
            let hinge = tri.hinges()[0];
            let horizontal = hinge_level_path(tri, hinge);
            let vertical: Vec<(usize, usize)> = (0..n).map(|i| (down(i), 2)).collect();
            (horizontal, vertical)
        }
        TriKind::TwoBridge => {
            // meridian: the self-folded edge of the bottom clasp is crossed
            // twice, since one crossing is only the half turn of the fold
            let meridian_side = match tri.first_letter() {
                Letter::R => 0,
                Letter::L => 1,
            };
            let horizontal = vec![(down(0), meridian_side), (down(0), meridian_side)];
            // longitude: up the apex-down chain, around the top clasp, back
            // down the apex-up chain and around the bottom clasp
            let mut vertical: Vec<(usize, usize)> = (0..n).map(|i| (down(i), 2)).collect();
            vertical.extend((0..n).rev().map(|i| (up(i), 2)));
            (horizontal, vertical)
        }
    }
}

/// Develops the cusp tessellation at an interior angle structure.
pub fn develop_cusp<F: Real>(
    tri: &LayeredTriangulation,
    s: &AngleStructure<F>,
) -> Result<CuspDevelopment<F>> {
    if s.min_angle() <= F::zero() {
        return Err(Error::Degenerate);
    }
    let graph = cusp_graph(tri);
    let rows = match tri.kind {
        TriKind::TwoBridge => 1..=(tri.num_layers() as i64),
        _ => -1..=(tri.num_letters() as i64),
    };
    let region = CoverRegion { rows, half_width: 4 };
    let cover = develop_region(tri, s, &region)?;
    let (hpath, vpath) = period_paths(tri);
    let horizontal = develop_loop(tri, s, &graph, &hpath)?;
    let vertical = develop_loop(tri, s, &graph, &vpath)?;
    Ok(CuspDevelopment {
        tri: tri.clone(),
        structure: s.clone(),
        graph,
        cover,
        horizontal,
        vertical,
    })
}

impl<F: Real> CuspDevelopment<F> {
    pub fn triangulation(&self) -> &LayeredTriangulation {
        &self.tri
    }

    pub fn structure(&self) -> &AngleStructure<F> {
        &self.structure
    }

    /// Developed corner positions of the fundamental-domain triangle
    /// (row, copy, apex-up), if in the developed region.
    pub fn triangle_positions(&self, row: i64, copy: i64, apex_up: bool) -> Option<[Complex<F>; 3]> {
        self.cover.get(&TriKey { row, col: copy + drift(&self.tri, row), up: apex_up }).copied()
    }

    /// All developed triangles as (row, copy, apex_up, ccw corners x, z, y).
    pub fn developed_triangles(&self) -> Vec<(i64, i64, bool, [Complex<F>; 3])> {
        let mut out: Vec<_> = self
            .cover
            .iter()
            .map(|(k, v)| (k.row, k.col - drift(&self.tri, k.row), k.up, *v))
            .collect();
        out.sort_by_key(|&(r, c, u, _)| (r, c, u));
        out
    }

    /// Twice the signed area of each developed triangle.
    pub fn signed_areas(&self) -> Vec<F> {
        self.cover
            .values()
            .map(|p| {
                let u = p[1] - p[0];
                let v = p[2] - p[0];
                u.re * v.im - u.im * v.re
            })
            .collect()
    }
}

/// Holonomy residuals |psi - 1| of every vertex loop and every hinge-level
/// curve available in the fundamental domain.
pub fn holonomy_residuals<F: Real>(dev: &CuspDevelopment<F>) -> Result<Vec<(Generator, F)>> {
    let tri = &dev.tri;
    let s = &dev.structure;
    let graph = &dev.graph;
    let mut out = Vec::new();
    let mut instance_count: HashMap<usize, usize> = HashMap::new();
    for (class, orbit) in vertex_orbits(tri, graph) {
        let instance = *instance_count.entry(class).and_modify(|c| *c += 1).or_insert(0);
        // corner angle sum of the orbit: vertices on a clasp fold axis close
        // after angle pi, and the manifold vertex loop is the walk squared
        let angle_sum: F = orbit
            .iter()
            .map(|&(t, c)| {
                let layer = graph.triangles[t].layer;
                let (x, y, z) = s.layer_angles(tri, layer);
                match c {
                    0 => x,
                    1 => z,
                    _ => y,
                }
            })
            .fold(F::zero(), |a, v| a + v);
        let sim = develop_loop(tri, s, graph, &orbit)?;
        let one = Complex::new(F::one(), F::zero());
        let psi = if angle_sum < r::<F>(1.5) * F::PI() {
            sim.rotation * sim.rotation
        } else {
            sim.rotation
        };
        out.push((Generator::VertexLoop { class, instance }, (psi - one).norm()));
    }
    for &layer in &tri.hinges() {
        if tri.kind == TriKind::TwoBridge {
            // hinge curves next to a clasp run through the fold; the fold
            // closure is already measured by the vertex loops there
            let c = tri.num_letters();
            if layer < 2 || layer > c - 2 {
                continue;
            }
        }
        let path = hinge_level_path(tri, layer);
        let sim = develop_loop(tri, s, graph, &path)?;
        let one = Complex::new(F::one(), F::zero());
        out.push((Generator::HingeLevel { layer }, (sim.rotation - one).norm()));
    }
    Ok(out)
}

/// Largest holonomy residual.
pub fn max_holonomy_residual<F: Real>(dev: &CuspDevelopment<F>) -> Result<F> {
    Ok(holonomy_residuals(dev)?
        .into_iter()
        .map(|(_, r)| r)
        .fold(F::zero(), F::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angles::{angles_from_w, initial_structure};
    use crate::farey::{parse_bridge_word, parse_bundle_word};
    use crate::triangulation::{build_bridge_triangulation, build_bundle_triangulation};
    use crate::volume::{default_tol, holonomy_ratio, maximize_volume, DEFAULT_MAX_ITER};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI};

    fn bundle(text: &str) -> LayeredTriangulation {
        build_bundle_triangulation(&parse_bundle_word(text).unwrap(), TriKind::TorusBundle)
    }

    fn bridge(text: &str) -> LayeredTriangulation {
        build_bridge_triangulation(&parse_bridge_word(text).unwrap()).unwrap()
    }

    #[test]
    fn triangle_shape_examples() {
        let s = triangle_shape(FRAC_PI_3, FRAC_PI_3, FRAC_PI_3).unwrap();
        assert!((s - Complex::from_polar(1.0, FRAC_PI_3)).norm() < 1e-15);
        let s = triangle_shape(FRAC_PI_2, FRAC_PI_4, FRAC_PI_4).unwrap();
        assert!((s - Complex::new(0.0, 1.0)).norm() < 1e-15);
        // law of sines
        for (x, y) in [(0.3, 1.1), (1.0, 0.4), (0.9, 0.9)] {
            let z = PI - x - y;
            let s = triangle_shape(x, y, z).unwrap();
            assert!((s.norm() - y.sin() / z.sin()).abs() < 1e-14);
        }
        assert!(triangle_shape(-0.1, 1.0, PI - 0.9).is_err());
    }

    #[test]
    fn rl_development_is_equilateral() {
        let t = bundle("RL");
        let s = angles_from_w(&t, &[FRAC_PI_3, FRAC_PI_3]).unwrap();
        let dev = develop_cusp(&t, &s).unwrap();
        for (_, _, _, p) in dev.developed_triangles() {
            let a = (p[1] - p[0]).norm();
            let b = (p[2] - p[1]).norm();
            let c = (p[0] - p[2]).norm();
            assert!((a - b).abs() < 1e-12 && (b - c).abs() < 1e-12);
            assert!((a - 1.0).abs() < 1e-12);
        }
        // all residuals vanish at the complete structure
        for (g, res) in holonomy_residuals(&dev).unwrap() {
            assert!(res < 1e-12, "{g}: {res}");
        }
        assert!(dev.horizontal.rotation_residual() < 1e-12);
        assert!(dev.vertical.rotation_residual() < 1e-12);
        // the period parallelogram has the area of the four unit
        // equilateral triangles
        let area = (dev.horizontal.translation.conj() * dev.vertical.translation).im.abs();
        assert!((area - 3.0_f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn development_positively_oriented() {
        for t in [bundle("RRLL"), bundle("R3L2"), bridge("R3L2R")] {
            let s: AngleStructure<f64> = initial_structure(&t).unwrap();
            let dev = develop_cusp(&t, &s).unwrap();
            for area in dev.signed_areas() {
                assert!(area > 0.0);
            }
        }
    }

    #[test]
    fn vertex_loop_count_matches_valence() {
        for t in [bundle("RRLL"), bundle("R3L2")] {
            let graph = cusp_graph(&t);
            for (class, orbit) in vertex_orbits(&t, &graph) {
                assert_eq!(orbit.len(), t.edge_classes[class].valence, "class {class}");
            }
        }
    }

    #[test]
    fn residuals_vanish_only_at_the_maximizer() {
        let t = bundle("RRLL");
        let s0: AngleStructure<f64> = initial_structure(&t).unwrap();
        let dev0 = develop_cusp(&t, &s0).unwrap();
        assert!(max_holonomy_residual(&dev0).unwrap() > 1e-3);

        let (s, _) = maximize_volume(&t, &s0.w, default_tol::<f64>(), DEFAULT_MAX_ITER).unwrap();
        let dev = develop_cusp(&t, &s).unwrap();
        assert!(max_holonomy_residual(&dev).unwrap() < 1e-8);
        assert!(dev.horizontal.rotation_residual() < 1e-8);
        assert!(dev.vertical.rotation_residual() < 1e-8);
    }

    #[test]
    fn vertex_loop_scale_matches_gradient_ratio() {
        // |psi| around the 4-valent vertex of a non-hinge layer equals
        // exp(-dV/dw) per unit tetrahedron
        let t = bundle("R3L2");
        let s0: AngleStructure<f64> = initial_structure(&t).unwrap();
        let mut w = s0.w.clone();
        w[1] += 0.07;
        w[3] -= 0.03;
        let s = angles_from_w(&t, &w).unwrap();
        assert!(s.interior);
        let dev = develop_cusp(&t, &s).unwrap();
        let graph = cusp_graph(&t);
        for (class, orbit) in vertex_orbits(&t, &graph) {
            if orbit.len() != 4 {
                continue;
            }
            // 4-valent class of non-hinge layer i: its fan layer
            let layer = t.edge_classes[class]
                .slots
                .iter()
                .find(|(_, lab, _)| !matches!(lab, crate::triangulation::AngleLabel::Z))
                .map(|&(l, _, _)| l)
                .unwrap();
            let sim = develop_loop(&t, &s, &graph, &orbit).unwrap();
            let scale = sim.rotation.norm();
            let ratio = holonomy_ratio(&t, &w, layer).unwrap();
            assert!(
                (scale - ratio).abs() < 1e-10 || (scale - 1.0 / ratio).abs() < 1e-10,
                "layer {layer}: |psi| = {scale}, ratio = {ratio}"
            );
        }
    }

    #[test]
    fn bridge_development_and_residuals() {
        // figure-eight knot: everything closes at w = (pi/2, pi/3, pi/2)
        let t = bridge("RL");
        let s = angles_from_w(&t, &[FRAC_PI_2, FRAC_PI_3, FRAC_PI_2]).unwrap();
        let dev = develop_cusp(&t, &s).unwrap();
        for (g, res) in holonomy_residuals(&dev).unwrap() {
            assert!(res < 1e-12, "{g}: {res}");
        }
        assert!(dev.horizontal.rotation_residual() < 1e-12);
        assert!(dev.vertical.rotation_residual() < 1e-12);

        // longer word: residuals vanish at the maximizer, not at the start
        let t = bridge("R3L2R");
        let s0: AngleStructure<f64> = initial_structure(&t).unwrap();
        let (s, _) = maximize_volume(&t, &s0.w, default_tol::<f64>(), DEFAULT_MAX_ITER).unwrap();
        let dev = develop_cusp(&t, &s).unwrap();
        assert!(max_holonomy_residual(&dev).unwrap() < 1e-8);
        assert!(dev.horizontal.rotation_residual() < 1e-8);
        assert!(dev.vertical.rotation_residual() < 1e-8);
    }
}
