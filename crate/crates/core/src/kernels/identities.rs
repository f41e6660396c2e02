//! Numerical replay of the moment identities that turn the symmetrized
//! double integral at multiplicity `k+1` into the kernel formula at
//! multiplicity `k`.
//!
//! Each identity equates a polynomial moment of `J_{k+1}` with a displayed
//! integral whose integrand contains derivative combinations of the raised
//! box weight `W_{k+1} = w^k`. Because the weight base is separable,
//! `w(n1, n2) = w1(n1) w2(n2)` with cubics `w1, w2`, every combination
//! reduces to `k^2 (polynomial) W_k` and is evaluated on the same
//! `(k-1, k-1)` rule pair as the kernel itself; the reductions are verified
//! exactly in the rational oracle and both sides here by quadrature.

use std::collections::BTreeMap;

use crate::bessel::j_series_triple;
use crate::error::Result;
use crate::gamma::ln_gamma;
use crate::kernels::{box_grid, gen_bessel_j, vandermonde_mu};
use crate::poly_oracle;
use crate::types::{ChamberPoint, MultiplicityParam, Point3};

/// Relative residual of every derivation identity at the given arguments,
/// keyed by identity name. Entries prefixed `exact_` come from the rational
/// oracle (0 when the identity holds symbolically, infinity otherwise); the
/// rest compare two quadratures.
pub fn verify_derivation_identities(
    k: MultiplicityParam,
    mu: &Point3,
    lambda: &ChamberPoint,
    n_nodes: usize,
) -> Result<BTreeMap<String, f64>> {
    let kv = k.get();
    let [l1, l2, l3] = lambda.coords();
    let [m1, m2, m3] = mu.coords();
    let s = m1 + m2 - 2.0 * m3;
    let d = m1 - m2;
    let alpha = kv - 0.5; // Bessel order inside the multiplicity-(k+1) moments

    // cubic factors of the weight base and their derivatives
    let w1 = |t: f64| (l1 - t) * (t - l2) * (t - l3);
    let w1p = |t: f64| -(t - l2) * (t - l3) + (l1 - t) * (t - l3) + (l1 - t) * (t - l2);
    let w2 = |t: f64| (l1 - t) * (l2 - t) * (t - l3);
    let w2p = |t: f64| -(l2 - t) * (t - l3) - (l1 - t) * (t - l3) + (l1 - t) * (l2 - t);

    // log prefactor of the raised integral formula
    let ln_pref = ln_gamma(3.0 * kv + 3.0)
        - 3.0 * ln_gamma(kv + 1.0)
        - (2.0 * kv + 1.0) * lambda.vandermonde().ln();
    let pref = ln_pref.exp();

    // grids: exponent k for integrals against W_{k+1}, k-1 for the reduced
    // integrals against W_k
    let grid_up = box_grid(kv, lambda, n_nodes, 0.5 * s)?;
    let grid_down = box_grid(kv - 1.0, lambda, n_nodes, 0.5 * s)?;

    let j_up = gen_bessel_j(k.raised(), mu, lambda, n_nodes)?;

    let mut out = BTreeMap::new();
    let mut push = |name: &str, lhs: f64, rhs: f64| {
        let resid = (lhs - rhs).abs() / (1.0 + lhs.abs().max(rhs.abs()));
        out.insert(name.to_string(), resid);
    };

    // first moment: (m1 - m2) J_{k+1} = (4k+2) pref int e J' W_{k+1}
    {
        let integral = grid_up.sum(|n1, n2| {
            let (_, jp, _) = j_series_triple(alpha, 0.5 * d * (n1 - n2));
            jp
        })?;
        push("moment_first", d * j_up, (4.0 * kv + 2.0) * pref * integral);
    }

    // squared moment: (m1 - m2)^2 J_{k+1}
    //   = -(4k+2) pref int e J (d1 - d2) W_{k+1},
    // with (d1 - d2) W_{k+1} = k (w1' w2 - w1 w2') W_k
    {
        let integral = grid_down.sum(|n1, n2| {
            let (j, _, _) = j_series_triple(alpha, 0.5 * d * (n1 - n2));
            j * kv * (w1p(n1) * w2(n2) - w1(n1) * w2p(n2))
        })?;
        push(
            "moment_first_squared",
            d * d * j_up,
            -(4.0 * kv + 2.0) * pref * integral,
        );
    }

    // cubed moment: (m1 - m2)^3 J_{k+1}
    //   = -(4k+2) pref int (m1-m2) e J'' (d1-d2) W_{k+1}
    //     - 4k (4k+2) pref int e J' (d1-d2) W_{k+1} / (n1-n2)
    {
        let first = grid_down.sum(|n1, n2| {
            let (_, _, jpp) = j_series_triple(alpha, 0.5 * d * (n1 - n2));
            d * jpp * kv * (w1p(n1) * w2(n2) - w1(n1) * w2p(n2))
        })?;
        let second = grid_down.sum(|n1, n2| {
            let (_, jp, _) = j_series_triple(alpha, 0.5 * d * (n1 - n2));
            jp * kv * (w1p(n1) * w2(n2) - w1(n1) * w2p(n2)) / (n1 - n2)
        })?;
        push(
            "moment_first_cubed",
            d * d * d * j_up,
            -(4.0 * kv + 2.0) * pref * first - 4.0 * kv * (4.0 * kv + 2.0) * pref * second,
        );
    }

    // mixed moment: (m1+m2-2m3)^2 (m1-m2) J_{k+1}
    //   = -(4k+2) pref int (m1+m2-2m3) e J' (d1+d2) W_{k+1}
    {
        let integral = grid_down.sum(|n1, n2| {
            let (_, jp, _) = j_series_triple(alpha, 0.5 * d * (n1 - n2));
            s * jp * kv * (w1p(n1) * w2(n2) + w1(n1) * w2p(n2))
        })?;
        push(
            "moment_scaled_mixed",
            s * s * d * j_up,
            -(4.0 * kv + 2.0) * pref * integral,
        );
    }

    // Vandermonde moment: V(mu) J_{k+1}
    //   = (4k+2) pref int e J' (d1 d2 + k (d1-d2)/(n1-n2)) W_{k+1},
    // the operator combination reducing to k^2 (w1' w2' + p2) W_k
    {
        let integral = grid_down.sum(|n1, n2| {
            let (_, jp, _) = j_series_triple(alpha, 0.5 * d * (n1 - n2));
            let p2 = (w1p(n1) * w2(n2) - w1(n1) * w2p(n2)) / (n1 - n2);
            jp * kv * kv * (w1p(n1) * w2p(n2) + p2)
        })?;
        push(
            "moment_vandermonde",
            vandermonde_mu(mu) * j_up,
            (4.0 * kv + 2.0) * pref * integral,
        );
    }

    // product moments of the two remaining positive roots
    {
        let int_j = grid_down.sum(|n1, n2| {
            let (j, _, _) = j_series_triple(alpha, 0.5 * d * (n1 - n2));
            j * kv * (w1p(n1) * w2(n2) - w1(n1) * w2p(n2))
        })?;
        let int_jp = grid_down.sum(|n1, n2| {
            let (_, jp, _) = j_series_triple(alpha, 0.5 * d * (n1 - n2));
            jp * kv * (w1p(n1) * w2(n2) + w1(n1) * w2p(n2))
        })?;
        push(
            "moment_12_13",
            (m1 - m2) * (m1 - m3) * j_up,
            -(2.0 * kv + 1.0) * pref * (int_j + int_jp),
        );
        push(
            "moment_12_23",
            (m1 - m2) * (m2 - m3) * j_up,
            (2.0 * kv + 1.0) * pref * (int_j - int_jp),
        );
    }

    // operator product rule: T1(V J_{k+1})
    //   = V d/dm1 J_{k+1} + (2k+1) (d V/d m1) J_{k+1}
    //   = (2k+1) pref { int e J' [(n1+n2)(d1 d2 + k (d1-d2)/(n1-n2))
    //                              - 2k (d1+d2)] W_{k+1}
    //                 + int e J (n1-n2) (d1 d2 + 3k (d1-d2)/(n1-n2)) W_{k+1} }
    let t1_at = |point: &Point3| -> Result<(f64, f64)> {
        let [a1, a2, a3] = point.coords();
        let ss = a1 + a2 - 2.0 * a3;
        let dd = a1 - a2;
        let grid_up_p = box_grid(kv, lambda, n_nodes, 0.5 * ss)?;
        let grid_down_p = box_grid(kv - 1.0, lambda, n_nodes, 0.5 * ss)?;

        // derivative of the raised integral in the first coordinate
        let d_j = grid_up_p.sum(|n1, n2| {
            let z = 0.5 * dd * (n1 - n2);
            let (j_hi, jp_hi, _) = j_series_triple(alpha + 1.0, z);
            (0.5 * (n1 + n2) * j_hi + 0.5 * (n1 - n2) * jp_hi) * (n1 - n2)
        })?;
        let d_j = pref * d_j;
        let j_val = gen_bessel_j(k.raised(), point, lambda, n_nodes)?;
        let dv1 = (a1 - a3) * (a2 - a3) + (a1 - a2) * (a2 - a3);
        let lhs = vandermonde_mu(point) * d_j + (2.0 * kv + 1.0) * dv1 * j_val;

        let int_jp = grid_down_p.sum(|n1, n2| {
            let (_, jp, _) = j_series_triple(alpha, 0.5 * dd * (n1 - n2));
            let p2 = (w1p(n1) * w2(n2) - w1(n1) * w2p(n2)) / (n1 - n2);
            let bracket =
                (n1 + n2) * (w1p(n1) * w2p(n2) + p2) - 2.0 * (w1p(n1) * w2(n2) + w1(n1) * w2p(n2));
            jp * kv * kv * bracket
        })?;
        let int_j = grid_down_p.sum(|n1, n2| {
            let (j, _, _) = j_series_triple(alpha, 0.5 * dd * (n1 - n2));
            let p2 = (w1p(n1) * w2(n2) - w1(n1) * w2p(n2)) / (n1 - n2);
            j * (n1 - n2) * kv * kv * (w1p(n1) * w2p(n2) + 3.0 * p2)
        })?;
        let rhs = (2.0 * kv + 1.0) * pref * (int_jp + int_j);
        Ok((lhs, rhs))
    };

    {
        let (lhs, rhs) = t1_at(mu)?;
        push("operator_product_rule", lhs, rhs);

        // reflected operator: T2(V J_{k+1})(mu) = -T1(V J_{k+1})(s12 mu),
        // with the left side built from the second-coordinate derivative
        let d_j2 = grid_up.sum(|n1, n2| {
            let z = 0.5 * d * (n1 - n2);
            let (j_hi, jp_hi, _) = j_series_triple(alpha + 1.0, z);
            (0.5 * (n1 + n2) * j_hi - 0.5 * (n1 - n2) * jp_hi) * (n1 - n2)
        })?;
        let d_j2 = pref * d_j2;
        let dv2 = (m1 - m2) * (m1 - m3) - (m1 - m3) * (m2 - m3);
        let t2 = vandermonde_mu(mu) * d_j2 + (2.0 * kv + 1.0) * dv2 * j_up;
        let (t1_swapped, _) = t1_at(&mu.swapped(0, 1))?;
        push("operator_reflection", t2, -t1_swapped);
    }

    // exact polynomial identities from the rational oracle
    for (name, ok) in poly_oracle::verify_polynomial_identities() {
        out.insert(
            format!("exact_{name}"),
            if ok { 0.0 } else { f64::INFINITY },
        );
    }

    Ok(out)
}
