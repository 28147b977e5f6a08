//! Angle structures parameterized by pleating parameters.
//!
//! The half pleating angle w_i determines the apex angle z_i = pi - 2 w_i
//! of layer i; the remaining dihedral angles follow from the letters on
//! either side of the layer. With (a, b, c) = (w_{i-1}, w_i, w_{i+1}):
//!
//! ```text
//! context   LL        RR        LR        RL
//!   x       a+c       -a+2b-c   a+b-c     -a+b+c
//!   y       -a+2b-c   a+c       -a+b+c    a+b-c
//!   z       pi-2b     pi-2b     pi-2b     pi-2b
//! ```
//!
//! All angles are positive exactly when the pleating vector satisfies the
//! range condition 0 < w_i < pi/2, the concavity condition
//! 2 w_i > w_{i-1} + w_{i+1} at non-hinges, and the hinge condition
//! |w_{i+1} - w_{i-1}| < w_i. Angle sums of pi per layer and 2 pi around
//! every edge hold identically in w.

use crate::error::Error;
use crate::farey::Letter;
use crate::scalar::{r, ru, Real};
use crate::triangulation::{AngleLabel, LayeredTriangulation, TriKind};
use crate::Result;
use std::fmt;

/// Pleating parameters together with the derived dihedral angles.
#[derive(Debug, Clone)]
pub struct AngleStructure<F: Real> {
    /// Bundle: length m, cyclic. Two-bridge: length c+1 with both ends
    /// pinned to pi/2.
    pub w: Vec<F>,
    /// (x, y, z) per layer, in stored layer order.
    angles: Vec<(F, F, F)>,
    pub interior: bool,
}

impl<F: Real> AngleStructure<F> {
    /// Angles of the layer with the given triangulation index.
    pub fn layer_angles(&self, tri: &LayeredTriangulation, index: usize) -> (F, F, F) {
        match tri.kind {
            TriKind::TorusBundle | TriKind::SphereBundle => self.angles[index],
            TriKind::TwoBridge => self.angles[index - 1],
        }
    }

    pub fn angles(&self) -> &[(F, F, F)] {
        &self.angles
    }

    /// Smallest dihedral angle over all layers.
    pub fn min_angle(&self) -> F {
        self.angles
            .iter()
            .map(|&(x, y, z)| x.min(y).min(z))
            .fold(F::infinity(), F::min)
    }
}

/// One linear constraint cutting out the open polytope of angle structures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constraint {
    RangeLow(usize),
    RangeHigh(usize),
    Concavity(usize),
    Hinge(usize),
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::RangeLow(i) => write!(f, "range_low[{i}]"),
            Constraint::RangeHigh(i) => write!(f, "range_high[{i}]"),
            Constraint::Concavity(i) => write!(f, "concavity[{i}]"),
            Constraint::Hinge(i) => write!(f, "hinge[{i}]"),
        }
    }
}

fn check_len<F: Real>(tri: &LayeredTriangulation, w: &[F]) -> Result<()> {
    if w.len() != tri.pleating_len() {
        return Err(Error::DimensionMismatch { expected: tri.pleating_len(), got: w.len() });
    }
    if tri.kind == TriKind::TwoBridge {
        let half_pi = F::FRAC_PI_2();
        let tol = r::<F>(1e-9);
        for &end in [w[0], w[w.len() - 1]].iter() {
            if (end - half_pi).abs() > tol {
                return Err(Error::OutOfRange(end.to_f64().unwrap_or(f64::NAN)));
            }
        }
    }
    Ok(())
}

/// (w_{i-1}, w_i, w_{i+1}) for the layer with triangulation index i.
fn abc<F: Real>(tri: &LayeredTriangulation, w: &[F], index: usize) -> (F, F, F) {
    match tri.kind {
        TriKind::TorusBundle | TriKind::SphereBundle => {
            let m = w.len();
            (w[(index + m - 1) % m], w[index], w[(index + 1) % m])
        }
        TriKind::TwoBridge => (w[index - 1], w[index], w[index + 1]),
    }
}

/// Table row for one layer.
fn layer_angles_from<F: Real>(context: (Letter, Letter), a: F, b: F, c: F) -> (F, F, F) {
    let two = r::<F>(2.0);
    let z = F::PI() - two * b;
    let (x, y) = match context {
        (Letter::L, Letter::L) => (a + c, two * b - a - c),
        (Letter::R, Letter::R) => (two * b - a - c, a + c),
        (Letter::L, Letter::R) => (a + b - c, b + c - a),
        (Letter::R, Letter::L) => (b + c - a, a + b - c),
    };
    (x, y, z)
}

/// Derives the dihedral angles of every layer from the pleating vector.
pub fn angles_from_w<F: Real>(tri: &LayeredTriangulation, w: &[F]) -> Result<AngleStructure<F>> {
    check_len(tri, w)?;
    let angles = tri
        .layers
        .iter()
        .map(|l| {
            let (a, b, c) = abc(tri, w, l.index);
            layer_angles_from(l.context, a, b, c)
        })
        .collect();
    let interior = constraint_residuals(tri, w)?
        .iter()
        .all(|&(_, margin)| margin > F::zero());
    Ok(AngleStructure { w: w.to_vec(), angles, interior })
}

/// Signed margins of the range, concavity, and hinge constraints; positive
/// means satisfied strictly.
pub fn constraint_residuals<F: Real>(
    tri: &LayeredTriangulation,
    w: &[F],
) -> Result<Vec<(Constraint, F)>> {
    check_len(tri, w)?;
    let half_pi = F::FRAC_PI_2();
    let mut out = Vec::new();
    for l in &tri.layers {
        let i = l.index;
        let (a, b, c) = abc(tri, w, i);
        out.push((Constraint::RangeLow(i), b));
        out.push((Constraint::RangeHigh(i), half_pi - b));
        if l.hinge {
            out.push((Constraint::Hinge(i), b - (c - a).abs()));
        } else {
            out.push((Constraint::Concavity(i), b + b - a - c));
        }
    }
    Ok(out)
}

/// Pleating angles of the pleated surface between layers i and i+1.
pub fn pleating_angles<F: Real>(w_i: F, w_next: F) -> (F, F, F) {
    let two = r::<F>(2.0);
    (-two * w_i, two * w_next, two * (w_i - w_next))
}

/// An interior point of the angle polytope.
///
/// Hinges get pi/3 and the gaps between consecutive hinges are filled with
/// the strictly concave parabola pi/3 + (i-j)(k-i)/(k-j)^2. Two-bridge
/// terminal fans interpolate from the pinned pi/2 down to pi/3 with a small
/// concave bend so every margin stays strictly positive.
pub fn initial_structure<F: Real>(tri: &LayeredTriangulation) -> Result<AngleStructure<F>> {
    let third_pi = F::PI() / r(3.0);
    let hinges = tri.hinges();
    if hinges.is_empty() {
        return Err(Error::Infeasible);
    }
    let mut w: Vec<F>;
    match tri.kind {
        TriKind::TorusBundle | TriKind::SphereBundle => {
            let m = tri.num_letters();
            w = vec![F::zero(); m];
            for (idx, &j) in hinges.iter().enumerate() {
                let k = if idx + 1 < hinges.len() { hinges[idx + 1] } else { hinges[0] + m };
                for i in j..=k {
                    let t = ru::<F>(i - j) * ru::<F>(k - i) / (ru::<F>(k - j) * ru::<F>(k - j));
                    w[i % m] = third_pi + t;
                }
            }
        }
        TriKind::TwoBridge => {
            let c = tri.num_letters();
            let half_pi = F::FRAC_PI_2();
            w = vec![F::zero(); c + 1];
            w[0] = half_pi;
            w[c] = half_pi;
            let first = hinges[0];
            let last = *hinges.last().unwrap();
            let bend = F::PI() / r(12.0);
            // terminal fans: linear from pi/2 to pi/3 plus a concave bend
            for i in 1..first {
                let t = ru::<F>(i) / ru::<F>(first);
                let bump =
                    bend * ru::<F>(i) * ru::<F>(first - i) / (ru::<F>(first) * ru::<F>(first));
                w[i] = half_pi + t * (third_pi - half_pi) + bump;
            }
            for i in last + 1..c {
                let t = ru::<F>(i - last) / ru::<F>(c - last);
                let bump = bend * ru::<F>(i - last) * ru::<F>(c - i)
                    / (ru::<F>(c - last) * ru::<F>(c - last));
                w[i] = third_pi + t * (half_pi - third_pi) + bump;
            }
            // hinges and the parabola in between
            for (idx, &j) in hinges.iter().enumerate() {
                w[j] = third_pi;
                if idx + 1 < hinges.len() {
                    let k = hinges[idx + 1];
                    for i in j + 1..k {
                        let t =
                            ru::<F>(i - j) * ru::<F>(k - i) / (ru::<F>(k - j) * ru::<F>(k - j));
                        w[i] = third_pi + t;
                    }
                }
            }
        }
    }
    let s = angles_from_w(tri, &w)?;
    if !s.interior {
        return Err(Error::Infeasible);
    }
    Ok(s)
}

/// The explicit structure certifying the volume lower bound: all pi/3 for
/// bundles, pi/3 away from the clasps with exact linear terminal
/// interpolation for two-bridge words. May touch the polytope boundary.
pub fn certificate_structure<F: Real>(tri: &LayeredTriangulation) -> AngleStructure<F> {
    let third_pi = F::PI() / r(3.0);
    let w: Vec<F> = match tri.kind {
        TriKind::TorusBundle | TriKind::SphereBundle => {
            vec![third_pi; tri.num_letters()]
        }
        TriKind::TwoBridge => {
            let c = tri.num_letters();
            let half_pi = F::FRAC_PI_2();
            let a1 = tri.fans()[0].length as usize;
            let at = tri.fans().last().unwrap().length as usize;
            (0..=c)
                .map(|i| {
                    if i < a1 {
                        half_pi + (ru::<F>(i) / ru::<F>(a1)) * (third_pi - half_pi)
                    } else if i > c - at {
                        third_pi + (ru::<F>(i - (c - at)) / ru::<F>(at)) * (half_pi - third_pi)
                    } else {
                        third_pi
                    }
                })
                .collect()
        }
    };
    let angles = tri
        .layers
        .iter()
        .map(|l| {
            let (a, b, c) = abc(tri, &w, l.index);
            layer_angles_from(l.context, a, b, c)
        })
        .collect();
    AngleStructure { w, angles, interior: false }
}

/// Sum of the incident dihedral angles around each edge class.
pub fn edge_angle_sums<F: Real>(tri: &LayeredTriangulation, s: &AngleStructure<F>) -> Vec<F> {
    tri.edge_classes
        .iter()
        .map(|class| {
            class
                .slots
                .iter()
                .map(|&(layer, label, k)| {
                    let (x, y, z) = s.layer_angles(tri, layer);
                    let angle = match label {
                        AngleLabel::X => x,
                        AngleLabel::Y => y,
                        AngleLabel::Z => z,
                    };
                    angle * F::from_u32(k).unwrap()
                })
                .fold(F::zero(), |acc, v| acc + v)
        })
        .collect()
}
