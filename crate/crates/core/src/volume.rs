//! Volume functional over the angle polytope and its maximization.
//!
//! The volume of an ideal tetrahedron with dihedral angles x, y, z is
//! L(x) + L(y) + L(z) where L is the Lobachevsky function
//! L(t) = -integral_0^t log|2 sin u| du. The total volume is smooth and
//! strictly concave in the pleating parameters, with an explicit gradient
//! and Hessian read off the angle table, so a damped Newton iteration with
//! feasibility backtracking converges to the unique interior maximizer.

use crate::angles::{angles_from_w, certificate_structure, AngleStructure};
use crate::error::Error;
use crate::farey::Letter;
use crate::scalar::{r, Real};
use crate::triangulation::{LayeredTriangulation, TriKind};
use crate::Result;

/// zeta(2), zeta(4), zeta(6), zeta(8); higher even values are summed
/// directly.
const ZETA_EVEN: [f64; 4] = [
    1.6449340668482264,
    1.0823232337111382,
    1.0173430619844491,
    1.0040773561979443,
];

fn zeta_even(n: usize) -> f64 {
    if n <= 4 {
        ZETA_EVEN[n - 1]
    } else {
        let s = (2 * n) as f64;
        let mut acc = 1.0;
        for k in 2..=64u32 {
            let t = (k as f64).powf(-s);
            acc += t;
            if t < 1e-18 {
                break;
            }
        }
        acc
    }
}

/// Lobachevsky function on [0, pi].
///
/// Evaluated by the integrated sine-product series
/// L(t) = t - t log(2t) + sum_n zeta(2n) t^(2n+1) / (n (2n+1) pi^(2n)),
/// reduced to [0, pi/2] via L(pi - t) = -L(t).
pub fn lobachevsky<F: Real>(theta: F) -> Result<F> {
    let pi = F::PI();
    let eps = r::<F>(1e-15);
    if theta < -eps || theta > pi + eps {
        return Err(Error::OutOfRange(theta.to_f64().unwrap_or(f64::NAN)));
    }
    let theta = theta.max(F::zero()).min(pi);
    Ok(lob_reduced(theta))
}

fn lob_reduced<F: Real>(theta: F) -> F {
    let pi = F::PI();
    if theta > F::FRAC_PI_2() {
        return -lob_reduced(pi - theta);
    }
    if theta == F::zero() {
        return F::zero();
    }
    let two = r::<F>(2.0);
    let ratio = (theta / pi) * (theta / pi);
    let mut sum = F::zero();
    let mut pow = ratio; // (theta/pi)^(2n)
    for n in 1..64usize {
        let coef = r::<F>(zeta_even(n) / (n as f64 * (2 * n + 1) as f64));
        let term = coef * pow;
        sum = sum + term;
        if term < r::<F>(1e-19) {
            break;
        }
        pow = pow * ratio;
    }
    theta * (F::one() - (two * theta).ln()) + theta * sum
}

/// Volume of an ideal tetrahedron with the given dihedral angles;
/// continuously 0 when an angle vanishes.
pub fn tet_volume<F: Real>(x: F, y: F, z: F) -> Result<F> {
    let dev = (x + y + z - F::PI()).abs();
    if dev > r::<F>(1e-9) {
        return Err(Error::AngleSum(dev.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(lobachevsky(x)? + lobachevsky(y)? + lobachevsky(z)?)
}

/// Volume of the regular ideal tetrahedron, v3 = 3 L(pi/3).
pub fn v3<F: Real>() -> F {
    r::<F>(3.0) * lob_reduced(F::PI() / r(3.0))
}

/// Volume of the regular ideal octahedron, v8 = 8 L(pi/4).
pub fn v8<F: Real>() -> F {
    r::<F>(8.0) * lob_reduced(F::FRAC_PI_4())
}

/// Total hyperbolic volume of an angle structure.
pub fn total_volume<F: Real>(tri: &LayeredTriangulation, s: &AngleStructure<F>) -> F {
    let mult = F::from_u32(tri.kind.multiplicity()).unwrap();
    tri.layers
        .iter()
        .map(|l| {
            let (x, y, z) = s.layer_angles(tri, l.index);
            mult * (lob_clamped(x) + lob_clamped(y) + lob_clamped(z))
        })
        .fold(F::zero(), |a, v| a + v)
}

fn lob_clamped<F: Real>(t: F) -> F {
    lob_reduced(t.max(F::zero()).min(F::PI()))
}

/// Indices of the pleating coordinates that are free to move.
pub fn free_range(tri: &LayeredTriangulation) -> std::ops::Range<usize> {
    match tri.kind {
        TriKind::TorusBundle | TriKind::SphereBundle => 0..tri.num_letters(),
        TriKind::TwoBridge => 1..tri.num_letters(),
    }
}

/// Derivative triples (dx, dy, dz) of a layer's angles with respect to
/// (w_{i-1}, w_i, w_{i+1}).
fn coefficient_rows(context: (Letter, Letter)) -> [[i8; 3]; 3] {
    match context {
        (Letter::L, Letter::L) => [[1, -1, 0], [0, 2, -2], [1, -1, 0]],
        (Letter::R, Letter::R) => [[-1, 1, 0], [2, 0, -2], [-1, 1, 0]],
        (Letter::L, Letter::R) => [[1, -1, 0], [1, 1, -2], [-1, 1, 0]],
        (Letter::R, Letter::L) => [[-1, 1, 0], [1, 1, -2], [1, -1, 0]],
    }
}

/// w-indices a layer's angles depend on, paired with the coefficient rows;
/// entries at pinned two-bridge endpoints are dropped.
fn layer_supports(tri: &LayeredTriangulation, index: usize) -> [(Option<usize>, usize); 3] {
    match tri.kind {
        TriKind::TorusBundle | TriKind::SphereBundle => {
            let m = tri.num_letters();
            [
                (Some((index + m - 1) % m), 0),
                (Some(index), 1),
                (Some((index + 1) % m), 2),
            ]
        }
        TriKind::TwoBridge => {
            let c = tri.num_letters();
            let keep = |j: usize| if j >= 1 && j <= c - 1 { Some(j) } else { None };
            [(keep(index - 1), 0), (Some(index), 1), (keep(index + 1), 2)]
        }
    }
}

/// Gradient of the volume in the pleating coordinates (zero at pinned
/// two-bridge endpoints).
pub fn volume_gradient<F: Real>(tri: &LayeredTriangulation, w: &[F]) -> Result<Vec<F>> {
    let s = angles_from_w(tri, w)?;
    let mult = F::from_u32(tri.kind.multiplicity()).unwrap();
    let mut g = vec![F::zero(); w.len()];
    for l in &tri.layers {
        let (x, y, z) = s.layer_angles(tri, l.index);
        if x <= F::zero() || y <= F::zero() || z <= F::zero() {
            return Err(Error::Boundary);
        }
        let logs = [x.sin().ln(), y.sin().ln(), z.sin().ln()];
        let rows = coefficient_rows(l.context);
        for (slot, row) in layer_supports(tri, l.index).into_iter() {
            let Some(j) = slot else { continue };
            let coefs = rows[row];
            let mut acc = F::zero();
            for t in 0..3 {
                acc = acc + r::<F>(coefs[t] as f64) * logs[t];
            }
            g[j] = g[j] - mult * acc;
        }
    }
    Ok(g)
}

/// Hessian of the volume in the pleating coordinates (rows and columns at
/// pinned endpoints are zero). Always symmetric negative definite on the
/// free coordinates at interior points.
pub fn volume_hessian<F: Real>(tri: &LayeredTriangulation, w: &[F]) -> Result<Vec<Vec<F>>> {
    let s = angles_from_w(tri, w)?;
    let mult = F::from_u32(tri.kind.multiplicity()).unwrap();
    let n = w.len();
    let mut h = vec![vec![F::zero(); n]; n];
    for l in &tri.layers {
        let (x, y, z) = s.layer_angles(tri, l.index);
        if x <= F::zero() || y <= F::zero() || z <= F::zero() {
            return Err(Error::Boundary);
        }
        let cots = [x.cos() / x.sin(), y.cos() / y.sin(), z.cos() / z.sin()];
        let rows = coefficient_rows(l.context);
        let supports = layer_supports(tri, l.index);
        for (sj, rj) in supports.into_iter() {
            let Some(j) = sj else { continue };
            for (sk, rk) in supports.into_iter() {
                let Some(k) = sk else { continue };
                let mut acc = F::zero();
                for t in 0..3 {
                    acc = acc + r::<F>((rows[rj][t] * rows[rk][t]) as f64) * cots[t];
                }
                h[j][k] = h[j][k] - mult * acc;
            }
        }
    }
    Ok(h)
}

/// exp(-dV/dw_i) per unit tetrahedron: the sine-ratio whose triviality is
/// the holonomy condition at the vertex or hinge level of layer i.
pub fn holonomy_ratio<F: Real>(tri: &LayeredTriangulation, w: &[F], index: usize) -> Result<F> {
    let g = volume_gradient(tri, w)?;
    let mult = F::from_u32(tri.kind.multiplicity()).unwrap();
    Ok((-g[index] / mult).exp())
}

fn inf_norm<F: Real>(v: &[F], range: &std::ops::Range<usize>) -> F {
    range.clone().map(|i| v[i].abs()).fold(F::zero(), F::max)
}

/// Cholesky solve of A x = b for symmetric positive definite A.
fn cholesky_solve<F: Real>(a: &[Vec<F>], b: &[F]) -> Option<Vec<F>> {
    let n = b.len();
    let mut l = vec![vec![F::zero(); n]; n];
    for i in 0..n {
        for j in 0..=i {
            let mut sum = a[i][j];
            for k in 0..j {
                sum = sum - l[i][k] * l[j][k];
            }
            if i == j {
                if sum <= F::zero() {
                    return None;
                }
                l[i][j] = sum.sqrt();
            } else {
                l[i][j] = sum / l[j][j];
            }
        }
    }
    // forward then backward substitution
    let mut y = vec![F::zero(); n];
    for i in 0..n {
        let mut sum = b[i];
        for k in 0..i {
            sum = sum - l[i][k] * y[k];
        }
        y[i] = sum / l[i][i];
    }
    let mut x = vec![F::zero(); n];
    for i in (0..n).rev() {
        let mut sum = y[i];
        for k in i + 1..n {
            sum = sum - l[k][i] * x[k];
        }
        x[i] = sum / l[i][i];
    }
    Some(x)
}

/// Solver outcome and bound certificates.
#[derive(Debug, Clone)]
pub struct VolumeReport<F: Real> {
    pub total_volume: F,
    pub per_tet_volumes: Vec<F>,
    pub gradient_inf_norm: F,
    pub iterations: usize,
    pub converged: bool,
    pub lower_bound: F,
    pub upper_bound: F,
    pub certificate_volume: F,
    /// Volume after every accepted iterate, starting value included.
    pub volume_trace: Vec<F>,
    /// Degeneracy pattern being approached if the solve stalled near the
    /// polytope boundary.
    pub degeneracy_note: Option<String>,
}

/// Volume bounds with their certificate structure.
pub fn volume_bounds<F: Real>(tri: &LayeredTriangulation) -> (F, F, AngleStructure<F>) {
    let cert = certificate_structure::<F>(tri);
    let (lower, upper) = match tri.kind {
        TriKind::TorusBundle => {
            let n = r::<F>(syllable_pair_count(tri) as f64);
            (r::<F>(2.0) * n * v3(), r::<F>(2.0) * n * v8())
        }
        TriKind::SphereBundle => {
            let n = r::<F>(syllable_pair_count(tri) as f64);
            (r::<F>(4.0) * n * v3(), r::<F>(4.0) * n * v8())
        }
        TriKind::TwoBridge => {
            let tw = r::<F>(tri.fans().len() as f64);
            (
                r::<F>(2.0) * v3::<F>() * tw - r::<F>(2.7066),
                r::<F>(2.0) * v8::<F>() * (tw - F::one()),
            )
        }
    };
    (lower, upper, cert)
}

fn syllable_pair_count(tri: &LayeredTriangulation) -> usize {
    tri.fans().len() / 2
}

fn degeneracy_note<F: Real>(tri: &LayeredTriangulation, s: &AngleStructure<F>) -> Option<String> {
    let eps = r::<F>(1e-3);
    let letters = tri.letters();
    let n = letters.len();
    for l in &tri.layers {
        let (x, y, z) = s.layer_angles(tri, l.index);
        if x.min(y).min(z) < eps {
            let i = l.index;
            let before = if tri.is_bundle() {
                format!("{}{}", letters[(i + n - 1) % n], letters[i % n])
            } else {
                format!("{}", letters[i - 1])
            };
            let after = if tri.is_bundle() {
                format!("{}{}", letters[(i + 1) % n], letters[(i + 2) % n])
            } else if i < n {
                format!("{}", letters[i])
            } else {
                String::new()
            };
            return Some(format!("{before}|{after} near layer {i}"));
        }
    }
    None
}

/// Maximizes the volume functional by damped Newton iteration from an
/// interior start. The line search never leaves the open polytope and never
/// decreases the volume; once the gradient is tiny the pure Newton step is
/// taken, since the volume is flat at float resolution there.
pub fn maximize_volume<F: Real>(
    tri: &LayeredTriangulation,
    w0: &[F],
    tol: F,
    max_iter: usize,
) -> Result<(AngleStructure<F>, VolumeReport<F>)> {
    let free = free_range(tri);
    let mut w = w0.to_vec();
    let mut s = angles_from_w(tri, &w)?;
    if !s.interior {
        return Err(Error::Boundary);
    }
    let mut volume = total_volume(tri, &s);
    let mut trace = vec![volume];

    let report = |tri: &LayeredTriangulation,
                  s: &AngleStructure<F>,
                  volume: F,
                  gn: F,
                  iterations: usize,
                  converged: bool,
                  trace: &[F]| {
        let (lower, upper, cert) = volume_bounds::<F>(tri);
        let mult = tri.kind.multiplicity() as usize;
        let per_tet: Vec<F> = tri
            .layers
            .iter()
            .flat_map(|l| {
                let (x, y, z) = s.layer_angles(tri, l.index);
                let v = lob_clamped(x) + lob_clamped(y) + lob_clamped(z);
                std::iter::repeat(v).take(mult)
            })
            .collect();
        VolumeReport {
            total_volume: volume,
            per_tet_volumes: per_tet,
            gradient_inf_norm: gn,
            iterations,
            converged,
            lower_bound: lower,
            upper_bound: upper,
            certificate_volume: total_volume(tri, &cert),
            volume_trace: trace.to_vec(),
            degeneracy_note: degeneracy_note(tri, s),
        }
    };

    for iter in 0..max_iter {
        let g = volume_gradient(tri, &w)?;
        let gn = inf_norm(&g, &free);
        if gn < tol {
            let rep = report(tri, &s, volume, gn, iter, true, &trace);
            return Ok((s, rep));
        }
        // Newton direction on the free coordinates; fall back to the
        // gradient when the (always definite) system is numerically bad.
        let h = volume_hessian(tri, &w)?;
        let g_free: Vec<F> = free.clone().map(|i| g[i]).collect();
        let neg_h: Vec<Vec<F>> = free
            .clone()
            .map(|i| free.clone().map(|j| -h[i][j]).collect())
            .collect();
        let dir_free = cholesky_solve(&neg_h, &g_free).unwrap_or_else(|| g_free.clone());

        // Expected gain of the full step; once it drops below float
        // resolution of the volume, demanding a measured increase is
        // meaningless and the first feasible Newton step is taken.
        let gain: F = g_free
            .iter()
            .zip(&dir_free)
            .map(|(&a, &b)| a * b)
            .fold(F::zero(), |acc, v| acc + v)
            / r(2.0);
        let flat = gain < F::epsilon() * (F::one() + volume.abs()) * r(64.0);

        let mut step = F::one();
        let mut accepted = false;
        for _ in 0..80 {
            let mut wt = w.clone();
            for (k, i) in free.clone().enumerate() {
                wt[i] = w[i] + step * dir_free[k];
            }
            if let Ok(st) = angles_from_w(tri, &wt) {
                if st.interior {
                    let vt = total_volume(tri, &st);
                    if vt > volume || flat {
                        w = wt;
                        s = st;
                        volume = vt;
                        trace.push(volume);
                        accepted = true;
                        break;
                    }
                }
            }
            step = step / r(2.0);
        }
        if !accepted {
            return Err(Error::NotConverged {
                iterations: iter,
                grad_norm: gn.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    let g = volume_gradient(tri, &w)?;
    let gn = inf_norm(&g, &free);
    if gn < tol {
        let rep = report(tri, &s, volume, gn, max_iter, true, &trace);
        return Ok((s, rep));
    }
    Err(Error::NotConverged {
        iterations: max_iter,
        grad_norm: gn.to_f64().unwrap_or(f64::NAN),
    })
}

/// Default solver tolerance: gradient infinity norm in the pleating
/// coordinates.
pub fn default_tol<F: Real>() -> F {
    r::<F>(1e-12)
}

pub const DEFAULT_MAX_ITER: usize = 200;
