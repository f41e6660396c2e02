//! Evaluation of the kernel `E_k`, its symmetrization `J_k` and the
//! intertwining density `F_k` through explicit double integrals over the box
//! `[l2, l1] x [l3, l2]`.
//!
//! The box weight
//! `W_k = ((l1-n1)(n1-l2) (l1-n2)(l2-n2) (n1-l3)(n2-l3))^(k-1)`
//! splits per axis: the four factors vanishing at interval endpoints are
//! absorbed into Gauss-Jacobi weights with exponents `(k-1, k-1)`, while
//! `(l1-n2)^(k-1) (n1-l3)^(k-1)` stay positive on the closed box and remain
//! in the smooth integrand. All Gamma/Vandermonde prefactors are assembled in
//! log space.

mod density;
mod identities;

pub use density::{density_f, dunkl_e_via_density, support_xy};
pub use identities::verify_derivation_identities;

use crate::bessel::j_series_pair;
use crate::error::{DunklError, Result};
use crate::gamma::ln_gamma;
use crate::quadrature::{gauss_jacobi_cached, QuadRule};
use crate::types::{vandermonde_point, ChamberInvariants, ChamberPoint, MultiplicityParam, Point3};

/// Vandermonde product of a chamber point; strictly positive.
pub fn vandermonde(lambda: &ChamberPoint) -> f64 {
    lambda.vandermonde()
}

/// Symmetric invariants `(V, a, b)` of the spectral point.
pub fn chamber_invariants(lambda: &ChamberPoint) -> ChamberInvariants {
    lambda.invariants()
}

/// The box weight `W_k` at an interior point `(n1, n2)` of
/// `(l2, l1) x (l3, l2)`; exactly 1 for `k = 1`.
pub fn weight_w(k: MultiplicityParam, nu: (f64, f64), lambda: &ChamberPoint) -> Result<f64> {
    let [l1, l2, l3] = lambda.coords();
    let (n1, n2) = nu;
    if !(l2 < n1 && n1 < l1 && l3 < n2 && n2 < l2) {
        return Err(DunklError::OutsideBox { nu1: n1, nu2: n2 });
    }
    let base = (l1 - n1) * (l1 - n2) * (l2 - n2) * (n1 - l2) * (n1 - l3) * (n2 - l3);
    Ok(base.powf(k.get() - 1.0))
}

/// Per-axis Gauss-Jacobi rules absorbing the vanishing factors of the box
/// weight at exponent level `exponent` (`k-1` for `W_k`, `k` for `W_{k+1}`).
pub(crate) fn box_rules(
    exponent: f64,
    lambda: &ChamberPoint,
    n_nodes: usize,
) -> Result<(QuadRule, QuadRule)> {
    let [l1, l2, l3] = lambda.coords();
    let rule1 = gauss_jacobi_cached(n_nodes, exponent, exponent, l2, l1)?;
    let rule2 = gauss_jacobi_cached(n_nodes, exponent, exponent, l3, l2)?;
    Ok((rule1, rule2))
}

/// Shared per-axis precomputation for the box integrands: exponential factors
/// and the two smooth leftover powers of the weight.
pub(crate) struct BoxGrid {
    pub nodes1: Vec<f64>,
    pub weights1: Vec<f64>,
    pub nodes2: Vec<f64>,
    pub weights2: Vec<f64>,
    /// `exp(s n1 / 2) (n1 - l3)^exponent` per outer node
    pub factor1: Vec<f64>,
    /// `exp(s n2 / 2) (l1 - n2)^exponent` per inner node
    pub factor2: Vec<f64>,
}

pub(crate) fn box_grid(
    exponent: f64,
    lambda: &ChamberPoint,
    n_nodes: usize,
    s_half: f64,
) -> Result<BoxGrid> {
    let [l1, _, l3] = lambda.coords();
    let (rule1, rule2) = box_rules(exponent, lambda, n_nodes)?;
    let factor1 = rule1
        .nodes()
        .iter()
        .map(|&n1| (s_half * n1).exp() * (n1 - l3).powf(exponent))
        .collect();
    let factor2 = rule2
        .nodes()
        .iter()
        .map(|&n2| (s_half * n2).exp() * (l1 - n2).powf(exponent))
        .collect();
    Ok(BoxGrid {
        nodes1: rule1.nodes().to_vec(),
        weights1: rule1.weights().to_vec(),
        nodes2: rule2.nodes().to_vec(),
        weights2: rule2.weights().to_vec(),
        factor1,
        factor2,
    })
}

impl BoxGrid {
    /// Weighted sum of `core(n1, n2) * factor1(n1) * factor2(n2)`.
    pub(crate) fn sum<F>(&self, core: F) -> Result<f64>
    where
        F: Fn(f64, f64) -> f64,
    {
        let mut acc = 0.0;
        for ((&n1, &w1), &f1) in self
            .nodes1
            .iter()
            .zip(self.weights1.iter())
            .zip(self.factor1.iter())
        {
            let mut inner = 0.0;
            for ((&n2, &w2), &f2) in self
                .nodes2
                .iter()
                .zip(self.weights2.iter())
                .zip(self.factor2.iter())
            {
                let v = core(n1, n2) * f1 * f2;
                if !v.is_finite() {
                    return Err(DunklError::NonFiniteIntegrand { node: n2 });
                }
                inner += w2 * v;
            }
            acc += w1 * inner;
        }
        Ok(acc)
    }
}

/// Log of `Gamma(3k) / Gamma(k)^3 / V^p` for the requested Vandermonde power.
pub(crate) fn ln_prefactor(k: f64, lambda: &ChamberPoint, vandermonde_power: f64) -> f64 {
    ln_gamma(3.0 * k) - 3.0 * ln_gamma(k) - vandermonde_power * lambda.vandermonde().ln()
}

/// Generalized Bessel function `J_k(mu, lambda)`: the Weyl-symmetrized kernel
/// through its direct double-integral form.
pub fn gen_bessel_j(
    k: MultiplicityParam,
    mu: &Point3,
    lambda: &ChamberPoint,
    n_nodes: usize,
) -> Result<f64> {
    let kv = k.get();
    let [m1, m2, m3] = mu.coords();
    let s_half = 0.5 * (m1 + m2 - 2.0 * m3);
    let d_half = 0.5 * (m1 - m2);
    let alpha = kv - 0.5;

    let grid = box_grid(kv - 1.0, lambda, n_nodes, s_half)?;
    let integral = grid.sum(|n1, n2| {
        let diff = n1 - n2;
        let (j, _) = j_series_pair(alpha, d_half * diff);
        j * diff
    })?;
    Ok(ln_prefactor(kv, lambda, 2.0 * kv - 1.0).exp() * integral)
}

/// The kernel `E_k(mu, lambda)` through its closed double-integral form, with
/// `E_k(0, lambda) = 1`.
pub fn dunkl_e(
    k: MultiplicityParam,
    mu: &Point3,
    lambda: &ChamberPoint,
    n_nodes: usize,
) -> Result<f64> {
    let kv = k.get();
    let [l1, l2, l3] = lambda.coords();
    let [m1, m2, m3] = mu.coords();
    let s_half = 0.5 * (m1 + m2 - 2.0 * m3);
    let d_half = 0.5 * (m1 - m2);
    let alpha = kv - 0.5;
    let l1l2 = l1 * l2;
    let three_gap = 3.0 * (l1 - l2);

    let grid = box_grid(kv - 1.0, lambda, n_nodes, s_half)?;
    let integral = grid.sum(|n1, n2| {
        let diff = n1 - n2;
        let (j, jp) = j_series_pair(alpha, d_half * diff);
        let bracket = three_gap * diff * j - 6.0 * (n1 * n2 + 0.5 * l3 * (n1 + n2) + l1l2) * jp;
        bracket * (n1 - l3) * (n2 - l3)
    })?;
    Ok(ln_prefactor(kv, lambda, 2.0 * kv).exp() * integral)
}

/// `(1/6) sum over coordinate permutations of E_k(sigma mu, lambda)`; equals
/// [`gen_bessel_j`] when the integral formulas are consistent.
pub fn symmetrized_dunkl_e(
    k: MultiplicityParam,
    mu: &Point3,
    lambda: &ChamberPoint,
    n_nodes: usize,
) -> Result<f64> {
    let mut acc = 0.0;
    for (perm, _) in crate::types::S3 {
        acc += dunkl_e(k, &mu.permuted(&perm), lambda, n_nodes)?;
    }
    Ok(acc / 6.0)
}

/// `sum of det(sigma) E_k(sigma mu, lambda)` over coordinate permutations.
pub fn antisymmetrized_dunkl_e(
    k: MultiplicityParam,
    mu: &Point3,
    lambda: &ChamberPoint,
    n_nodes: usize,
) -> Result<f64> {
    let mut acc = 0.0;
    for (perm, sign) in crate::types::S3 {
        acc += sign * dunkl_e(k, &mu.permuted(&perm), lambda, n_nodes)?;
    }
    Ok(acc)
}

/// Vandermonde product at an arbitrary evaluation point (no chamber
/// constraint).
pub fn vandermonde_mu(mu: &Point3) -> f64 {
    vandermonde_point(mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly_oracle::{self, rat};

    fn chamber(l1: f64, l2: f64, l3: f64) -> ChamberPoint {
        ChamberPoint::new(l1, l2, l3).unwrap()
    }

    fn mult(k: f64) -> MultiplicityParam {
        MultiplicityParam::new(k).unwrap()
    }

    fn p3(a: f64, b: f64, c: f64) -> Point3 {
        Point3::new(a, b, c).unwrap()
    }

    #[test]
    fn weight_examples() {
        let lam = chamber(2.0, 0.0, -2.0);
        assert_eq!(weight_w(mult(1.0), (1.0, -1.0), &lam).unwrap(), 1.0);
        assert_eq!(weight_w(mult(2.0), (1.0, -1.0), &lam).unwrap(), 9.0);
        let got = weight_w(mult(0.5), (1.0, -1.0), &lam).unwrap();
        assert!((got - 1.0 / 3.0).abs() < 1e-15);
        assert!(weight_w(mult(1.0), (1.0, 0.5), &lam).is_err());
        assert!(weight_w(mult(1.0), (2.5, -1.0), &lam).is_err());
    }

    #[test]
    fn normalization_at_zero_argument() {
        let zero = Point3::zero();
        for &k in &[0.3, 0.5, 1.0, 1.7, 3.0] {
            for lam in [
                chamber(1.0, 0.0, -1.0),
                chamber(2.0, 0.0, -2.0),
                chamber(1.5, 0.2, -1.7),
                chamber(3.0, -1.0, -2.0),
            ] {
                let e = dunkl_e(mult(k), &zero, &lam, 64).unwrap();
                assert!(
                    (e - 1.0).abs() <= 1e-9,
                    "E normalization failed: k = {k}, lambda = {:?}, E = {e}",
                    lam.coords()
                );
                let j = gen_bessel_j(mult(k), &zero, &lam, 64).unwrap();
                assert!(
                    (j - 1.0).abs() <= 1e-9,
                    "J normalization failed: k = {k}, lambda = {:?}, J = {j}",
                    lam.coords()
                );
            }
        }
    }

    #[test]
    fn symmetrization_reproduces_the_bessel_function() {
        let lam = chamber(1.5, 0.2, -1.7);
        let mu = p3(0.7, -0.1, -0.4);
        for &k in &[0.5, 1.0, 2.0] {
            let j = gen_bessel_j(mult(k), &mu, &lam, 64).unwrap();
            let sym = symmetrized_dunkl_e(mult(k), &mu, &lam, 64).unwrap();
            assert!(
                (j - sym).abs() <= 1e-8 * (1.0 + j.abs()),
                "k = {k}: J = {j}, symmetrized = {sym}"
            );
        }
    }

    #[test]
    fn kernel_matches_the_series_oracle() {
        let lam = chamber(1.5, 0.2, -1.7);
        let mu = p3(0.4, 0.1, -0.5);
        let series = poly_oracle::kernel_series(&rat(3, 4), 14);
        let want = series.evaluate_e(&mu, &lam.as_point());
        let got = dunkl_e(mult(0.75), &mu, &lam, 64).unwrap();
        assert!(want.tail_estimate < 1e-8);
        assert!(
            (got - want.value).abs() <= 1e-6 * (1.0 + want.value.abs()),
            "got {got}, oracle {}",
            want.value
        );
    }

    #[test]
    fn bessel_matches_the_series_oracle() {
        let lam = chamber(1.0, 0.0, -1.0);
        let mu = p3(1.0, 0.0, -1.0);
        let series = poly_oracle::kernel_series(&rat(1, 1), 12);
        let want = series.evaluate_j(&mu, &lam.as_point());
        let got = gen_bessel_j(mult(1.0), &mu, &lam, 64).unwrap();
        assert!(
            (got - want.value).abs() <= 1e-6 * (1.0 + want.value.abs()),
            "got {got}, oracle {} (tail {:.2e})",
            want.value,
            want.tail_estimate
        );
    }

    #[test]
    fn homogeneity_in_the_two_arguments() {
        let lam = chamber(1.5, 0.2, -1.7);
        let mu = p3(0.4, 0.1, -0.5);
        for &k in &[0.5, 1.3] {
            for &c in &[0.5, 2.0] {
                let scaled_mu = dunkl_e(mult(k), &mu.scale(c), &lam, 64).unwrap();
                let scaled_lam = dunkl_e(mult(k), &mu, &lam.scaled(c).unwrap(), 64).unwrap();
                assert!(
                    (scaled_mu - scaled_lam).abs() <= 1e-10 * scaled_mu.abs(),
                    "k = {k}, c = {c}: {scaled_mu} vs {scaled_lam}"
                );
            }
        }
    }

    #[test]
    fn positivity_on_sample_grids() {
        let lam = chamber(1.5, 0.2, -1.7);
        for &k in &[0.4, 1.0, 2.5] {
            for &a in &[-1.2, -0.3, 0.5, 1.4] {
                for &b in &[-0.8, 0.1, 0.9] {
                    let mu = p3(a, b, -0.25 * (a + b));
                    let e = dunkl_e(mult(k), &mu, &lam, 48).unwrap();
                    assert!(e > 0.0, "k = {k}, mu = {:?}: E = {e}", mu.coords());
                }
            }
        }
    }

    #[test]
    fn doubling_quadrature_order_is_stable() {
        let lam = chamber(1.5, 0.2, -1.7);
        let mu = p3(1.1, 0.3, -1.4);
        for &k in &[0.3, 1.0, 3.0] {
            let coarse = dunkl_e(mult(k), &mu, &lam, 32).unwrap();
            let fine = dunkl_e(mult(k), &mu, &lam, 64).unwrap();
            assert!(
                (coarse - fine).abs() <= 1e-10 * fine.abs(),
                "k = {k}: {coarse} vs {fine}"
            );
        }
    }

    #[test]
    fn antisymmetrization_ties_to_the_raised_bessel_function() {
        // alternating sum = c V(mu) V(lambda) J_{k+1} with the exact constant
        // from the rational oracle
        let lam = chamber(1.5, 0.2, -1.7);
        let mu = p3(0.8, 0.1, -0.9);
        for &k in &[0.5, 1.0, 2.0] {
            let alt = antisymmetrized_dunkl_e(mult(k), &mu, &lam, 64).unwrap();
            let c = poly_oracle::antisym_constant_f64(k);
            let j_up = gen_bessel_j(mult(k).raised(), &mu, &lam, 64).unwrap();
            let want = c * vandermonde_mu(&mu) * lam.vandermonde() * j_up;
            assert!(
                (alt - want).abs() <= 1e-7 * (1.0 + alt.abs().max(want.abs())),
                "k = {k}: alternating {alt}, reference {want}"
            );
        }
    }

    #[test]
    fn rotation_sum_identity() {
        // sum over the three cyclic rotations of mu equals
        // (c V(lambda) V(mu) J_{k+1} + 6 J_k)/2; rotating by the cycle or its
        // inverse gives the same sum because the rotation set is inverse-closed
        let lam = chamber(1.5, 0.2, -1.7);
        let mu = p3(0.8, 0.1, -0.9);
        for &k in &[0.5, 1.0] {
            let km = mult(k);
            let rot1 = mu.permuted(&[2, 0, 1]);
            let rot2 = mu.permuted(&[1, 2, 0]);
            let lhs = dunkl_e(km, &mu, &lam, 64).unwrap()
                + dunkl_e(km, &rot1, &lam, 64).unwrap()
                + dunkl_e(km, &rot2, &lam, 64).unwrap();
            let c = poly_oracle::antisym_constant_f64(k);
            let j_up = gen_bessel_j(km.raised(), &mu, &lam, 64).unwrap();
            let j = gen_bessel_j(km, &mu, &lam, 64).unwrap();
            let rhs = 0.5 * (c * lam.vandermonde() * vandermonde_mu(&mu) * j_up + 6.0 * j);
            assert!(
                (lhs - rhs).abs() <= 1e-7 * (1.0 + lhs.abs()),
                "k = {k}: {lhs} vs {rhs}"
            );
        }
    }
}
