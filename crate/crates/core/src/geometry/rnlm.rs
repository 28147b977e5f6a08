//! Analytic description of the complete structure for words R^N L^M.
//!
//! For large N and M there are small complex numbers a, a', b, b' with
//! sin a = i tan b cos b' and sin a' = -i tan b' cos b, where
//! b = (pi - 2a)/N and b' = (pi - 2a')/M. The fixed point is reached by
//! iterating from zero; the R fan then embeds with nodes at +-cot b and
//! vertices cot(a + s b), which this module cross-checks against the
//! numerically developed tessellation.

use super::diagnostics::fan_chain;
use super::CuspDevelopment;
use crate::error::Error;
use crate::farey::Letter;
use crate::scalar::{r, Real};
use crate::Result;
use num_complex::Complex;

#[derive(Debug, Clone, Copy)]
pub struct RnlmSolution<F: Real> {
    pub n: u32,
    pub m: u32,
    pub a: Complex<F>,
    pub a_prime: Complex<F>,
    pub b: Complex<F>,
    pub b_prime: Complex<F>,
    pub iterations: usize,
    pub residual: F,
}

/// Solves the fixed-point system by iteration from a = a' = 0.
pub fn solve_rnlm<F: Real>(n: u32, m: u32, tol: F) -> Result<RnlmSolution<F>> {
    if n < 4 || m < 4 {
        return Err(Error::NoContraction);
    }
    let pi = Complex::new(F::PI(), F::zero());
    let i = Complex::new(F::zero(), F::one());
    let cn = Complex::new(r::<F>(n as f64), F::zero());
    let cm = Complex::new(r::<F>(m as f64), F::zero());
    let two = Complex::new(r::<F>(2.0), F::zero());
    let mut a = Complex::new(F::zero(), F::zero());
    let mut ap = Complex::new(F::zero(), F::zero());
    let mut iterations = 0;
    for it in 0..400 {
        iterations = it + 1;
        let b = (pi - two * a) / cn;
        let bp = (pi - two * ap) / cm;
        let na = (i * b.tan() * bp.cos()).asin();
        let nap = (-i * bp.tan() * b.cos()).asin();
        let step = (na - a).norm() + (nap - ap).norm();
        a = na;
        ap = nap;
        if a.norm() > F::one() || ap.norm() > F::one() {
            return Err(Error::NoContraction);
        }
        if step < r::<F>(1e-17) {
            break;
        }
    }
    let b = (pi - two * a) / cn;
    let bp = (pi - two * ap) / cm;
    let res1 = (a.sin() - i * b.tan() * bp.cos()).norm();
    let res2 = (ap.sin() + i * bp.tan() * b.cos()).norm();
    let residual = res1.max(res2);
    if residual > tol {
        return Err(Error::NoContraction);
    }
    Ok(RnlmSolution { n, m, a, a_prime: ap, b, b_prime: bp, iterations, residual })
}

/// Mismatches between the analytic fan and the developed one.
#[derive(Debug, Clone, Copy)]
pub struct RnlmCrosscheck<F: Real> {
    /// Max relative vertex coordinate mismatch after node normalization.
    pub max_vertex_mismatch: F,
    /// Max relative mismatch of the triangle complex ratios
    /// sin^2(a + s b) / sin^2 b.
    pub max_ratio_mismatch: F,
    /// |cot(a + N b) + cot a| / |cot a|.
    pub parallelogram_residual: F,
    /// |cot a / cot b + cot a' / cot b'| / |cot a / cot b|.
    pub congruence_residual: F,
}

fn cot<F: Real>(z: Complex<F>) -> Complex<F> {
    z.cos() / z.sin()
}

/// Compares the developed R fan of a word R^N L^M with the analytic
/// embedding: nodes to +-cot b, vertices to cot(a + s b).
pub fn rnlm_crosscheck<F: Real>(
    sol: &RnlmSolution<F>,
    dev: &CuspDevelopment<F>,
) -> Result<RnlmCrosscheck<F>> {
    let tri = dev.triangulation();
    let fans = tri.fans();
    let rfan = fans
        .iter()
        .position(|f| f.letter == Letter::R && f.length == sol.n)
        .ok_or_else(|| Error::Syntax("word is not R^N L^M for the given solution".into()))?;
    if fans.len() != 2 || fans[1 - rfan].length != sol.m {
        return Err(Error::Syntax("word is not R^N L^M for the given solution".into()));
    }
    let (n1, n2, chain) = fan_chain(dev, rfan)?;
    let cot_b = cot(sol.b);
    let two = r::<F>(2.0);

    // similarity sending the developed nodes onto -cot b, +cot b in either
    // order, then the best index alignment of the chain with cot(a + s b)
    let mut best: Option<(F, Vec<Complex<F>>, Vec<Complex<F>>)> = None;
    for flip in [false, true] {
        let (from1, from2) = if flip { (n2, n1) } else { (n1, n2) };
        let span = from2 - from1;
        if span.norm() == F::zero() {
            return Err(Error::Degenerate);
        }
        let map = |z: Complex<F>| (z * two - from1 - from2) / span * cot_b;
        let mapped: Vec<Complex<F>> = chain.iter().map(|&u| map(u)).collect();
        for offset in -2i64..=2 {
            for dir in [1i64, -1] {
                let mut worst = F::zero();
                let mut targets = Vec::with_capacity(mapped.len());
                for (idx, &v) in mapped.iter().enumerate() {
                    let s = offset + dir * idx as i64;
                    let target = cot(sol.a + Complex::new(r::<F>(s as f64), F::zero()) * sol.b);
                    let scale = target.norm().max(F::one());
                    worst = worst.max((v - target).norm() / scale);
                    targets.push(target);
                }
                if best.as_ref().map(|(b, _, _)| worst < *b).unwrap_or(true) {
                    best = Some((worst, mapped.clone(), targets));
                }
            }
        }
    }
    let (max_vertex_mismatch, mapped, targets) = best.unwrap();

    // triangle complex ratios against sin^2 A_s / sin^2 b
    let mut max_ratio_mismatch = F::zero();
    for idx in 0..mapped.len().saturating_sub(1) {
        let v0 = mapped[idx];
        let v1 = mapped[idx + 1];
        let dev_ratio = (v1 - cot_b) / (v1 - v0);
        // the matching analytic ratio from the aligned targets
        let t0 = targets[idx];
        let t1 = targets[idx + 1];
        let ana_ratio = (t1 - cot_b) / (t1 - t0);
        let scale = ana_ratio.norm().max(F::one());
        max_ratio_mismatch = max_ratio_mismatch.max((dev_ratio - ana_ratio).norm() / scale);
    }

    let nn = Complex::new(r::<F>(sol.n as f64), F::zero());
    let parallelogram_residual =
        (cot(sol.a + nn * sol.b) + cot(sol.a)).norm() / cot(sol.a).norm();
    let lhs = cot(sol.a) / cot(sol.b);
    let rhs = cot(sol.a_prime) / cot(sol.b_prime);
    let congruence_residual = (lhs + rhs).norm() / lhs.norm();

    Ok(RnlmCrosscheck {
        max_vertex_mismatch,
        max_ratio_mismatch,
        parallelogram_residual,
        congruence_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angles::{initial_structure, AngleStructure};
    use crate::farey::parse_bundle_word;
    use crate::geometry::develop_cusp;
    use crate::triangulation::{build_bundle_triangulation, TriKind};
    use crate::volume::{default_tol, maximize_volume, DEFAULT_MAX_ITER};
    use std::f64::consts::PI;

    #[test]
    fn solution_symmetry_and_asymptotics() {
        let sol = solve_rnlm::<f64>(20, 20, 1e-13).unwrap();
        assert!(sol.residual < 1e-13);
        // N = M forces a' = conj(a), b' = conj(b)
        assert!((sol.a_prime - sol.a.conj()).norm() < 1e-12);
        assert!((sol.b_prime - sol.b.conj()).norm() < 1e-12);
        // b ~ pi/N - 2 i pi / N^2
        let n = 20.0;
        let lead = Complex::new(PI / n, -2.0 * PI / (n * n));
        assert!((sol.b - lead).norm() < 30.0 / (n * n * n));
        assert!(solve_rnlm::<f64>(3, 10, 1e-13).is_err());
    }

    #[test]
    fn crosscheck_against_development() {
        let sol = solve_rnlm::<f64>(20, 20, 1e-13).unwrap();
        let t = build_bundle_triangulation(
            &parse_bundle_word("R20L20").unwrap(),
            TriKind::TorusBundle,
        );
        let s0: AngleStructure<f64> = initial_structure(&t).unwrap();
        let (s, _) = maximize_volume(&t, &s0.w, default_tol::<f64>(), DEFAULT_MAX_ITER).unwrap();
        let dev = develop_cusp(&t, &s).unwrap();
        let check = rnlm_crosscheck(&sol, &dev).unwrap();
        assert!(check.max_vertex_mismatch < 1e-6, "{}", check.max_vertex_mismatch);
        assert!(check.max_ratio_mismatch < 1e-6);
        assert!(check.parallelogram_residual < 1e-10);
        assert!(check.congruence_residual < 1e-10);

        // geodesic length against 2 i b
        let lens = crate::geometry::geodesic_complex_lengths(&dev).unwrap();
        let two_ib = Complex::new(0.0, 2.0) * sol.b;
        let fold = |z: Complex<f64>| if z.re < 0.0 { -z } else { z };
        let target = fold(two_ib);
        let got = lens
            .iter()
            .map(|l| (l.length - target).norm())
            .fold(f64::INFINITY, f64::min);
        assert!(got < 1e-6, "geodesic length mismatch {got}");
    }
}
