//! Fan segment diagnostics and short-geodesic complex lengths.
//!
//! Both are read off the developed star of a fan vertex: the fan's node
//! instances are consecutive lifts of its high-valence vertex, and the rim
//! vertices u_s between two nodes satisfy the similarity invariant
//! (u_{s+1} - 1)(u_s + 1) = K once the nodes are normalized to -1 and 1.
//! The Moebius map fixing the nodes' axis and advancing u_s by one step is
//! a deck transformation; the log of its multiplier is the complex length
//! of the short closed geodesic at the fan.

use super::CuspDevelopment;
use crate::error::Error;
use crate::farey::Letter;
use crate::scalar::{r, Real};
use crate::triangulation::TriKind;
use crate::Result;
use num_complex::Complex;

/// Segment lengths of the broken line at a fan end, with the margin of the
/// strict inequality Q < P + T.
#[derive(Debug, Clone, Copy)]
pub struct FanDiagnostics<F: Real> {
    /// Syllable index.
    pub fan: usize,
    pub q: F,
    pub p: F,
    pub t: F,
    /// q - (p + t) at the binding end; negative at complete structures.
    pub margin: F,
    /// q + p + t, the natural scale of the margin.
    pub scale: F,
}

/// Complex length of the short closed geodesic at a fan vertex, folded to
/// nonnegative real part.
#[derive(Debug, Clone, Copy)]
pub struct GeodesicLength<F: Real> {
    pub fan: usize,
    pub length: Complex<F>,
}

fn side_len<F: Real>(pos: &[Complex<F>; 3], side: usize) -> F {
    (pos[(side + 1) % 3] - pos[side]).norm()
}

/// Fan rows in cover coordinates (clipped to the strip for two-bridge).
fn fan_rows(dev: &CuspDevelopment<impl Real>, fan: usize) -> (i64, i64) {
    let tri = dev.triangulation();
    let f = &tri.fans()[fan];
    match tri.kind {
        TriKind::TorusBundle | TriKind::SphereBundle => {
            let s = f.letter_start as i64;
            (s - 1, s + f.length as i64 - 1)
        }
        TriKind::TwoBridge => {
            let c = tri.num_letters() as i64;
            let s = f.letter_start as i64;
            ((s - 1).max(1), (s + f.length as i64 - 1).min(c - 1))
        }
    }
}

/// Q, P, T per fan and the margin Q - (P + T) of its binding configuration.
///
/// Each hinge bounding the fan can be read from below (base of the up
/// triangle against the two apex sides of the down triangle) or from above
/// (the mirror image); as a hinge flattens, the reading on its surviving
/// side tends to the degenerate equality from below while the others grow.
/// The binding configuration is therefore the reading of smallest margin,
/// and it stays strictly negative at complete structures.
pub fn fan_diagnostics<F: Real>(dev: &CuspDevelopment<F>) -> Result<Vec<FanDiagnostics<F>>> {
    let tri = dev.triangulation();
    let read = |h: usize, from_below: bool| -> Result<(F, F, F)> {
        let d = dev.triangle_positions(h as i64, 0, false).ok_or(Error::Degenerate)?;
        let u = dev.triangle_positions(h as i64, 0, true).ok_or(Error::Degenerate)?;
        Ok(if from_below {
            (side_len(&u, 2), side_len(&d, 1), side_len(&d, 0))
        } else {
            (side_len(&d, 2), side_len(&u, 0), side_len(&u, 1))
        })
    };
    let mut out = Vec::new();
    for (idx, f) in tri.fans().iter().enumerate() {
        let margin_of = |(q, p, t): &(F, F, F)| *q - (*p + *t);
        let mut pick: Option<(F, F, F)> = None;
        for h in [f.first_hinge, f.last_hinge].into_iter().flatten() {
            for reading in [read(h, true)?, read(h, false)?] {
                if pick.map(|p| margin_of(&reading) < margin_of(&p)).unwrap_or(true) {
                    pick = Some(reading);
                }
            }
        }
        let (q, p, t) = pick.ok_or(Error::Degenerate)?;
        out.push(FanDiagnostics { fan: idx, q, p, t, margin: q - (p + t), scale: q + p + t });
    }
    Ok(out)
}

/// Two consecutive node lifts and the rim chain u_s between them.
pub(crate) fn fan_chain<F: Real>(
    dev: &CuspDevelopment<F>,
    fan: usize,
) -> Result<(Complex<F>, Complex<F>, Vec<Complex<F>>)> {
    let tri = dev.triangulation();
    let f = &tri.fans()[fan];
    let (lo, hi) = fan_rows(dev, fan);
    let down = |row: i64, copy: i64| -> Result<[Complex<F>; 3]> {
        dev.triangle_positions(row, copy, false).ok_or(Error::Degenerate)
    };
    let (node_corner, apex_corner, tail_corner) = match f.letter {
        // pivot of an R run is the right end: the x corners stack
        Letter::R => (0usize, 1usize, 2usize),
        Letter::L => (2usize, 1usize, 0usize),
    };
    let first = down(lo, 0)?;
    let n1 = first[node_corner];
    let n2 = down(lo, 1)?[node_corner];
    let mut chain = Vec::new();
    match f.letter {
        Letter::R => {
            for row in lo..=hi {
                chain.push(down(row, 0)?[apex_corner]);
            }
            chain.push(down(hi, 0)?[tail_corner]);
        }
        Letter::L => {
            chain.push(down(hi, 0)?[tail_corner]);
            for row in (lo..=hi).rev() {
                chain.push(down(row, 0)?[apex_corner]);
            }
        }
    }
    Ok((n1, n2, chain))
}

/// Multiplier data of the one-step deck transformation of a fan: with the
/// nodes normalized to -1 and 1, (u_{s+1} - 1)(u_s + 1) is constant; the
/// map fixing the axis and advancing the chain is z -> (z + 1 + K)/(z + 1).
fn one_step_multiplier<F: Real>(
    n1: Complex<F>,
    n2: Complex<F>,
    chain: &[Complex<F>],
) -> Result<Complex<F>> {
    let two = r::<F>(2.0);
    let span = n2 - n1;
    let scale = chain
        .iter()
        .map(|u| (*u - n1).norm())
        .fold(F::zero(), F::max);
    if span.norm() < r::<F>(1e-12) * scale.max(F::one()) {
        return Err(Error::Degenerate);
    }
    let one = Complex::new(F::one(), F::zero());
    let norm = |z: Complex<F>| (z * two - n1 - n2) / span;
    let mut k_sum = Complex::new(F::zero(), F::zero());
    let mut count = 0;
    for w in chain.windows(2) {
        let u0 = norm(w[0]);
        let u1 = norm(w[1]);
        k_sum = k_sum + (u1 - one) * (u0 + one);
        count += 1;
    }
    if count == 0 {
        return Err(Error::Degenerate);
    }
    let k = k_sum / r::<F>(count as f64);
    let fixed = (one + k).sqrt();
    let lam_plus = -k / ((fixed + one) * (fixed + one));
    let lam_minus = -k / ((one - fixed) * (one - fixed));
    Ok(if lam_plus.norm() >= lam_minus.norm() { lam_plus } else { lam_minus })
}

/// Complex length of the short geodesic at each fan, Re >= 0.
pub fn geodesic_complex_lengths<F: Real>(
    dev: &CuspDevelopment<F>,
) -> Result<Vec<GeodesicLength<F>>> {
    let tri = dev.triangulation();
    let mut out = Vec::new();
    for idx in 0..tri.fans().len() {
        let (n1, n2, chain) = fan_chain(dev, idx)?;
        let lam = one_step_multiplier(n1, n2, &chain)?;
        let mut len = lam.ln();
        if len.re < F::zero() {
            len = -len;
        }
        out.push(GeodesicLength { fan: idx, length: len });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angles::{angles_from_w, initial_structure, AngleStructure};
    use crate::farey::{parse_bridge_word, parse_bundle_word};
    use crate::geometry::develop_cusp;
    use crate::triangulation::{
        build_bridge_triangulation, build_bundle_triangulation, LayeredTriangulation,
    };
    use crate::volume::{default_tol, maximize_volume, DEFAULT_MAX_ITER};
    use std::f64::consts::FRAC_PI_3;

    fn bundle(text: &str) -> LayeredTriangulation {
        build_bundle_triangulation(&parse_bundle_word(text).unwrap(), TriKind::TorusBundle)
    }

    fn maximized(tri: &LayeredTriangulation) -> AngleStructure<f64> {
        let s0: AngleStructure<f64> = initial_structure(tri).unwrap();
        maximize_volume(tri, &s0.w, default_tol::<f64>(), DEFAULT_MAX_ITER).unwrap().0
    }

    #[test]
    fn rl_fans_equilateral() {
        let t = bundle("RL");
        let s = angles_from_w(&t, &[FRAC_PI_3, FRAC_PI_3]).unwrap();
        let dev = develop_cusp(&t, &s).unwrap();
        for f in fan_diagnostics(&dev).unwrap() {
            assert!((f.q - f.p).abs() < 1e-12 && (f.p - f.t).abs() < 1e-12);
            assert!((f.margin + f.q).abs() < 1e-12);
            assert!(f.margin < 0.0);
        }
    }

    #[test]
    fn fan_margins_negative_at_maximizers() {
        for text in ["R4L4", "RRLL", "R3L2", "R2LRL3"] {
            let t = bundle(text);
            let s = maximized(&t);
            let dev = develop_cusp(&t, &s).unwrap();
            for f in fan_diagnostics(&dev).unwrap() {
                assert!(f.margin < -1e-10 * f.scale, "{text} fan {}", f.fan);
            }
        }
        let t = build_bridge_triangulation(&parse_bridge_word("R3L2R").unwrap()).unwrap();
        let s = maximized(&t);
        let dev = develop_cusp(&t, &s).unwrap();
        for f in fan_diagnostics(&dev).unwrap() {
            assert!(f.margin < -1e-10 * f.scale, "bridge fan {}", f.fan);
        }
    }

    #[test]
    fn geodesic_lengths_loxodromic_and_shrinking() {
        let mut prev = f64::INFINITY;
        for n in [10usize, 20, 40] {
            let word = format!("R{n}L{n}");
            let t = bundle(&word);
            let s = maximized(&t);
            let dev = develop_cusp(&t, &s).unwrap();
            let lens = geodesic_complex_lengths(&dev).unwrap();
            assert_eq!(lens.len(), 2);
            for l in &lens {
                assert!(l.length.re > 0.0, "{word}: loxodromic");
            }
            let mag = lens[0].length.norm();
            // |l| tracks 2 pi / n to leading order
            assert!((mag * n as f64 / (2.0 * std::f64::consts::PI) - 1.0).abs() < 0.2, "{word}");
            assert!(mag < prev);
            prev = mag;
        }
    }
}
