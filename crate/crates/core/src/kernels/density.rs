//! The intertwining density `F_k(x, y, lambda)` and the Laplace-type
//! reconstruction of the kernel from it.
//!
//! `F_k` is a one-dimensional integral in `z` over
//! `[max(|y|, |x-l2|), min(x-l3, l1-x)]` whose integrand vanishes at the
//! endpoints with exponents determined by which factors are active there:
//! `k-1` for each of `z^2-y^2` and `z^2-(l2-x)^2` at the lower limit, `k-1`
//! for `(l1-x)^2-z^2` and `k` for `(x-l3)^2-z^2` at the upper limit, summed
//! on ties. Folding the active exponents into a Gauss-Jacobi weight restores
//! spectral accuracy for every `k > 0`.
//!
//! The reconstruction integrates `exp((m1+m2-2m3) x + (m1-m2) y) F_k` over
//! the support. In `y` the density behaves like
//! `(m - |y|)^(2k-1) x smooth` at the outer endpoints and carries mixed
//! algebraic singularities across the interior curves `|y| = |x - l2|`
//! (where the lower `z`-limit switches branch), so each `y`-segment between
//! those curves is handled by tanh-sinh quadrature, as is the outer
//! `x`-integral between its own break points.

use rayon::prelude::*;

use crate::error::Result;
use crate::gamma::ln_gamma;
use crate::quadrature::{gauss_jacobi_cached, tanh_sinh, tanh_sinh_with_distances};
use crate::types::{ChamberPoint, MultiplicityParam, Point3};

/// Relative tolerance for detecting coincident endpoint factors.
const TIE_TOL: f64 = 1e-12;

/// Tanh-sinh step for the nested reconstruction integrals.
const TS_STEP: f64 = 0.1;

/// The support of the density in `(x, y)` coordinates:
/// `max(|y|, |x-l2|) < min(x-l3, l1-x)`.
pub fn support_xy(lambda: &ChamberPoint, x: f64, y: f64) -> bool {
    let [l1, l2, l3] = lambda.coords();
    y.abs().max((x - l2).abs()) < (x - l3).min(l1 - x)
}

/// Intertwining density `F_k(x, y, lambda)`; zero outside the support,
/// `+inf` at the isolated non-integrable configuration (`x = l2, y = 0` with
/// `k <= 1/2`).
pub fn density_f(
    k: MultiplicityParam,
    x: f64,
    y: f64,
    lambda: &ChamberPoint,
    n_nodes: usize,
) -> Result<f64> {
    let kv = k.get();
    let [l1, l2, l3] = lambda.coords();

    let z_lo = y.abs().max((x - l2).abs());
    let z_hi = (x - l3).min(l1 - x);
    if !(z_lo < z_hi) {
        return Ok(0.0);
    }

    let tol = TIE_TOL * lambda.norm().max(1.0);
    let width = z_hi - z_lo;

    // endpoint exponents: fold every factor that vanishes at the limit
    let fold_b = (y.abs() - z_lo).abs() <= tol; // z^2 - y^2 at z_lo
    let fold_c = ((x - l2).abs() - z_lo).abs() <= tol; // z^2 - (l2-x)^2 at z_lo
    let fold_u = ((x - l3) - z_hi).abs() <= tol; // (x-l3)^2 - z^2 at z_hi
    let fold_v = ((l1 - x) - z_hi).abs() <= tol; // (l1-x)^2 - z^2 at z_hi

    let mut q_lo = 0.0;
    if fold_b {
        q_lo += kv - 1.0;
    }
    if fold_c {
        q_lo += kv - 1.0;
    }
    let mut p_hi = 0.0;
    if fold_u {
        p_hi += kv;
    }
    if fold_v {
        p_hi += kv - 1.0;
    }
    if q_lo <= -1.0 || p_hi <= -1.0 {
        // double tie at an interior orbit point; the density diverges there
        return Ok(f64::INFINITY);
    }

    let abs_y = y.abs();
    let abs_xl2 = (x - l2).abs();
    let gap = l1 - l2;
    let cross = x * x + l3 * x + l1 * l2;
    let km1 = kv - 1.0;

    let ln_pref = ln_gamma(2.0 * kv) + ln_gamma(3.0 * kv)
        - (2.0 * kv - 2.0) * 2f64.ln()
        - 5.0 * ln_gamma(kv)
        - 2.0 * kv * lambda.vandermonde().ln();
    let pref = ln_pref.exp();

    // a factor vanishing at or just outside an endpoint defeats the folded
    // rule; in that band integrate the full factored integrand by tanh-sinh
    // instead (beyond a quarter width the rule's convergence region clears
    // the singularity even for the strongest admissible exponents)
    let near_band = 0.25 * width;
    let near = (!fold_b && z_lo - abs_y < near_band)
        || (!fold_c && z_lo - abs_xl2 < near_band)
        || (!fold_u && (x - l3) - z_hi < near_band)
        || (!fold_v && (l1 - x) - z_hi < near_band);
    if near {
        // each vanishing difference is formed additively from the node's
        // distance to its endpoint and the (nonnegative) gap between the
        // endpoint and the factor's root: subtraction would round the deep
        // tail of a singular factor to zero and silently drop its mass
        let gap_b = z_lo - abs_y;
        let gap_c = z_lo - abs_xl2;
        let gap_u = (x - l3) - z_hi;
        let gap_v = (l1 - x) - z_hi;
        let full = |z: f64, from_lo: f64, from_hi: f64| {
            let bracket = 6.0 * z * z * gap - 6.0 * y * (cross - z * z);
            bracket
                * (z * z).powf(-kv)
                * ((from_lo + gap_b) * (z + abs_y)).powf(km1)
                * ((from_lo + gap_c) * (z + abs_xl2)).powf(km1)
                * ((from_hi + gap_u) * ((x - l3) + z)).powf(kv)
                * ((from_hi + gap_v) * ((l1 - x) + z)).powf(km1)
        };
        return Ok(pref * tanh_sinh_with_distances(full, z_lo, z_hi, 0.05));
    }

    let rule = gauss_jacobi_cached(n_nodes, p_hi, q_lo, z_lo, z_hi)?;

    let mut integral = 0.0;
    for (&z, &w) in rule.nodes().iter().zip(rule.weights().iter()) {
        // bracket with both parity components; the even part carries twice
        // the chamber gap so that the total mass reproduces the kernel at
        // the origin
        let bracket = 6.0 * z * z * gap - 6.0 * y * (cross - z * z);
        let mut smooth = bracket * (z * z).powf(-kv);
        // z^2 - y^2
        smooth *= (z + abs_y).powf(km1);
        if !fold_b {
            smooth *= (z - abs_y).powf(km1);
        }
        // z^2 - (l2 - x)^2
        smooth *= (z + abs_xl2).powf(km1);
        if !fold_c {
            smooth *= (z - abs_xl2).powf(km1);
        }
        // (x - l3)^2 - z^2, exponent k
        smooth *= ((x - l3) + z).powf(kv);
        if !fold_u {
            smooth *= ((x - l3) - z).powf(kv);
        }
        // (l1 - x)^2 - z^2, exponent k - 1
        smooth *= ((l1 - x) + z).powf(km1);
        if !fold_v {
            smooth *= ((l1 - x) - z).powf(km1);
        }
        integral += w * smooth;
    }

    Ok(pref * integral)
}

/// `x`-range of the support: `[(l2+l3)/2, (l1+l2)/2]`.
pub(crate) fn support_x_range(lambda: &ChamberPoint) -> (f64, f64) {
    let [l1, l2, l3] = lambda.coords();
    (0.5 * (l2 + l3), 0.5 * (l1 + l2))
}

/// The kernel reconstructed as a Laplace-type transform of the density over
/// its planar support; agrees with the direct double-integral evaluator.
pub fn dunkl_e_via_density(
    k: MultiplicityParam,
    mu: &Point3,
    lambda: &ChamberPoint,
    n_nodes: usize,
) -> Result<f64> {
    let [m1, m2, m3] = mu.coords();
    let s_coef = m1 + m2 - 2.0 * m3;
    let d_coef = m1 - m2;
    let [l1, l2, l3] = lambda.coords();
    let (x_lo, x_hi) = support_x_range(lambda);
    let z_rule = (n_nodes / 2).max(16);

    // interior break points of the x-integrand: the lower z-limit switches
    // branch at x = l2 and the upper at x = (l1+l3)/2
    let mut x_breaks = vec![x_lo];
    let mut candidates = [l2, 0.5 * (l1 + l3)];
    candidates.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for c in candidates {
        if c > x_lo + TIE_TOL
            && c < x_hi - TIE_TOL
            && (c - x_breaks.last().unwrap()).abs() > TIE_TOL
        {
            x_breaks.push(c);
        }
    }
    x_breaks.push(x_hi);

    let inner = |x: f64| -> f64 {
        let m = (x - l3).min(l1 - x);
        if m <= 0.0 {
            return 0.0;
        }
        let w = (x - l2).abs();
        if w >= m {
            return 0.0;
        }
        // y-segments delimited by the interior singular curves |y| = w
        let mut y_breaks = vec![-m];
        for b in [-w, w] {
            if b > -m + 1e-14 * m && b < m - 1e-14 * m && b - y_breaks.last().unwrap() > 1e-14 * m {
                y_breaks.push(b);
            }
        }
        y_breaks.push(m);

        let mut acc = 0.0;
        for pair in y_breaks.windows(2) {
            acc += tanh_sinh(
                |y| {
                    let f = density_f(k, x, y, lambda, z_rule).unwrap_or(0.0);
                    if f.is_finite() {
                        (d_coef * y).exp() * f
                    } else {
                        0.0
                    }
                },
                pair[0],
                pair[1],
                TS_STEP,
            );
        }
        (s_coef * x).exp() * acc
    };

    // deterministic parallel reduction: fixed node lists per segment,
    // evaluated in parallel, summed in order
    let mut total = 0.0;
    for pair in x_breaks.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let nodes = tanh_sinh_nodes(a, b, TS_STEP);
        let contributions: Vec<f64> = nodes
            .par_iter()
            .map(|&(x, w)| {
                let v = inner(x);
                if v.is_finite() {
                    w * v
                } else {
                    0.0
                }
            })
            .collect();
        total += TS_STEP * contributions.iter().sum::<f64>();
    }
    Ok(total)
}

/// Node/weight list of the tanh-sinh rule on `(a, b)` with step `h`, for
/// callers that want to distribute the evaluations.
fn tanh_sinh_nodes(a: f64, b: f64, h: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    if !(a < b) {
        return out;
    }
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let pi_half = 0.5 * std::f64::consts::PI;
    let mut j = 0i64;
    loop {
        let t = h * j as f64;
        let u = pi_half * t.sinh();
        let eu = (-2.0 * u.abs()).exp();
        let dist = half * 2.0 * eu / (1.0 + eu);
        let weight = half * pi_half * t.cosh() * (4.0 * eu / (1.0 + eu).powi(2));
        if weight < 1e-300 || dist == 0.0 {
            break;
        }
        if j == 0 {
            out.push((mid, weight));
        } else {
            out.push((b - dist, weight));
            out.push((a + dist, weight));
        }
        j += 1;
        if t > 7.0 {
            break;
        }
    }
    out
}
