//! Normalized modified Bessel function of the first kind:
//! `J_a(z) = Gamma(a+1) (z/2)^{-a} I_a(z)`, normalized so `J_a(0) = 1`.
//!
//! The series in `u = (z/2)^2` has positive terms for real `z`, so summation
//! is cancellation-free; first and second derivatives come from the
//! termwise-differentiated series rather than from recurrence identities, so
//! the classical identities stay meaningful as cross-checks.

use crate::error::{DunklError, Result};
use crate::gamma::ln_gamma;
use crate::quadrature::{gauss_jacobi_cached, integrate_1d};
use crate::types::{BesselOrder, MultiplicityParam};

/// Stop once a term falls below this fraction of the partial sum.
const SERIES_REL_TOL: f64 = 1e-17;
/// Hard cap on series length; covers |z| well beyond the desk-scale regime.
const SERIES_MAX_TERMS: usize = 200;

fn check_finite(z: f64) -> Result<()> {
    if z.is_finite() {
        Ok(())
    } else {
        Err(DunklError::NonFinite { value: z })
    }
}

/// `J_a(z)` by the even power series; `J_a(z) >= 1` for real `z`.
pub fn bessel_j(alpha: BesselOrder, z: f64) -> Result<f64> {
    check_finite(z)?;
    let a = alpha.get();
    let u = 0.25 * z * z;
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 1..=SERIES_MAX_TERMS {
        let nf = n as f64;
        term *= u / (nf * (nf + a));
        sum += term;
        if term < SERIES_REL_TOL * sum {
            break;
        }
    }
    Ok(sum)
}

/// First or second derivative of `J_a` at `z`, from the termwise series.
///
/// `J'_a(0) = 0`; `J''_a(0) = 1/(2(a+1))` straight from the series, with no
/// division by `z`.
pub fn bessel_j_deriv(alpha: BesselOrder, z: f64, order: u8) -> Result<f64> {
    check_finite(z)?;
    assert!(order == 1 || order == 2, "derivative order must be 1 or 2");
    let (_, d1, d2) = j_series_triple(alpha.get(), z);
    Ok(if order == 1 { d1 } else { d2 })
}

/// Value, first and second derivative in one series pass.
///
/// With `c_n` the series coefficients of `J_a(z) = sum c_n (z/2)^(2n)`:
/// `J' = sum c_n n (z/2)^(2n-1)` and `J'' = sum c_n n (2n-1) (z/2)^(2n-2) / 2`.
pub(crate) fn j_series_triple(a: f64, z: f64) -> (f64, f64, f64) {
    let half = 0.5 * z;
    let u = half * half;
    let mut c = 1.0; // c_n
    let mut pow = 1.0; // (z/2)^(2n-2), n = 1 at loop entry
    let mut value = 1.0;
    let mut d1 = 0.0;
    let mut d2 = 0.0;
    for n in 1..=SERIES_MAX_TERMS {
        let nf = n as f64;
        c /= nf * (nf + a);
        let term_val = c * pow * u; // c_n (z/2)^(2n)
        let term_d1 = c * nf * pow * half; // c_n n (z/2)^(2n-1)
        let term_d2 = 0.5 * c * nf * (2.0 * nf - 1.0) * pow; // /2 factor from d/dz
        value += term_val;
        d1 += term_d1;
        d2 += term_d2;
        if term_val < SERIES_REL_TOL * value && term_d2.abs() < SERIES_REL_TOL * (1.0 + d2.abs()) {
            break;
        }
        pow *= u;
    }
    (value, d1, d2)
}

/// Value and first derivative in one pass (hot path of the kernel
/// integrands).
pub(crate) fn j_series_pair(a: f64, z: f64) -> (f64, f64) {
    let (v, d1, _) = j_series_triple(a, z);
    (v, d1)
}

/// `J_{k-1/2}(z)` through its integral representation
/// `Gamma(2k)/(2^(2k-1) Gamma(k)^2) int_{-1}^{1} e^{zt} (1-t^2)^(k-1) dt`,
/// evaluated with an `n_nodes`-point Gauss-Jacobi rule of exponents
/// `(k-1, k-1)`.
pub fn bessel_j_integral(k: MultiplicityParam, z: f64, n_nodes: usize) -> Result<f64> {
    check_finite(z)?;
    let kv = k.get();
    let rule = gauss_jacobi_cached(n_nodes, kv - 1.0, kv - 1.0, -1.0, 1.0)?;
    let integral = integrate_1d(&rule, |t| (z * t).exp())?;
    let ln_pref = ln_gamma(2.0 * kv) - (2.0 * kv - 1.0) * 2f64.ln() - 2.0 * ln_gamma(kv);
    Ok(ln_pref.exp() * integral)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::gamma;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn order(a: f64) -> BesselOrder {
        BesselOrder::new(a).unwrap()
    }

    #[test]
    fn normalization_at_zero() {
        assert_eq!(bessel_j(order(0.5), 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j_deriv(order(0.5), 0.0, 1).unwrap(), 0.0);
    }

    #[test]
    fn half_integer_order_reduces_to_hyperbolic_sine() {
        // k = 1 in the integral representation: (1/2) int e^{zt} dt = sinh z / z
        let got = bessel_j(order(0.5), 1.0).unwrap();
        let want = 1f64.sinh();
        assert_abs_diff_eq!(got, want, epsilon = 1e-15);

        for &z in &[0.25, 2.0, 7.5, 19.0] {
            let got = bessel_j(order(0.5), z).unwrap();
            assert!((got - z.sinh() / z).abs() <= 1e-14 * got, "z = {z}");
        }
    }

    #[test]
    fn first_derivative_closed_form_at_half_order() {
        // d/dz sinh z / z = (z cosh z - sinh z)/z^2
        let got = bessel_j_deriv(order(0.5), 1.0, 1).unwrap();
        let want = 1f64.cosh() - 1f64.sinh();
        assert_abs_diff_eq!(got, want, epsilon = 1e-15);
    }

    #[test]
    fn second_derivative_from_the_differential_equation() {
        // J_a = J''_a + (2a+1)/z J'_a rearranged for J'' at a = 1/2, z = 1
        let j = bessel_j(order(0.5), 1.0).unwrap();
        let d1 = bessel_j_deriv(order(0.5), 1.0, 1).unwrap();
        let want = j - 2.0 * d1;
        let got = bessel_j_deriv(order(0.5), 1.0, 2).unwrap();
        assert!((got - want).abs() <= 1e-14 * j);
    }

    #[test]
    fn second_derivative_at_zero_avoids_the_singular_rearrangement() {
        for &a in &[-0.3, 0.5, 2.0] {
            let got = bessel_j_deriv(order(a), 0.0, 2).unwrap();
            assert_abs_diff_eq!(got, 1.0 / (2.0 * (a + 1.0)), epsilon = 1e-16);
        }
    }

    #[test]
    fn raising_identity_against_finite_differences() {
        // z J_{a+1}(z) = 2(a+1) J'_a(z) at a = 1/2, z = 2; the derivative
        // oracle is a 5-point central difference of the series evaluator.
        let z = 2.0;
        let h = 1e-2;
        let f = |t: f64| bessel_j(order(0.5), t).unwrap();
        let fd = (-f(z + 2.0 * h) + 8.0 * f(z + h) - 8.0 * f(z - h) + f(z - 2.0 * h)) / (12.0 * h);
        let got = bessel_j(order(1.5), z).unwrap();
        let want = 2.0 * 1.5 * fd / z;
        assert!((got - want).abs() <= 1e-9 * got, "got {got}, want {want}");
    }

    #[test]
    fn integral_representation_trivial_cases() {
        assert!(
            (bessel_j_integral(MultiplicityParam::new(1.0).unwrap(), 0.0, 8).unwrap() - 1.0).abs()
                < 1e-14
        );
        // k = 1/2: prefactor Gamma(1)/Gamma(1/2)^2 = 1/pi times mass pi
        let pref = gamma(1.0) / gamma(0.5).powi(2);
        let want = pref * std::f64::consts::PI;
        let got = bessel_j_integral(MultiplicityParam::new(0.5).unwrap(), 0.0, 8).unwrap();
        assert!((got - want).abs() < 1e-14 && (want - 1.0).abs() < 1e-14);
    }

    #[test]
    fn integral_representation_matches_the_series() {
        let got = bessel_j_integral(MultiplicityParam::new(2.0).unwrap(), 3.0, 32).unwrap();
        let want = bessel_j(order(1.5), 3.0).unwrap();
        assert!((got - want).abs() <= 1e-12 * want);

        for &k in &[0.3, 0.5, 1.0, 2.5] {
            for &z in &[-10.0, -4.0, -0.5, 0.0, 1.5, 6.0, 10.0] {
                let got = bessel_j_integral(MultiplicityParam::new(k).unwrap(), z, 48).unwrap();
                let want = bessel_j(order(k - 0.5), z).unwrap();
                assert!(
                    (got - want).abs() <= 1e-10 * want,
                    "k = {k}, z = {z}: got {got}, want {want}"
                );
            }
        }
    }

    #[test]
    fn classical_identities_across_orders_and_arguments() {
        let orders = [-0.4, -0.25, 0.5, 1.0, 2.5, 7.0];
        let args = [-20.0, -12.5, -5.0, -1.0, -0.1, 0.1, 1.0, 5.0, 12.5, 20.0];
        for &a in &orders {
            for &z in &args {
                let (j_a, d1_a, d2_a) = j_series_triple(a, z);
                let (j_a1, d1_a1, _) = j_series_triple(a + 1.0, z);

                // raising identity
                let lhs = z * j_a1;
                let rhs = 2.0 * (a + 1.0) * d1_a;
                assert!(
                    (lhs - rhs).abs() <= 1e-12 * (1.0 + d1_a.abs()),
                    "raising: a = {a}, z = {z}"
                );

                // defining differential equation
                let resid = j_a - d2_a - (2.0 * a + 1.0) / z * d1_a;
                assert!(
                    resid.abs() <= 1e-12 * j_a.abs(),
                    "ode: a = {a}, z = {z}, resid {resid:e}"
                );

                // derivative of the raised order
                let lhs = z * d1_a1;
                let rhs = 2.0 * (a + 1.0) * (j_a - j_a1);
                assert!(
                    (lhs - rhs).abs() <= 1e-12 * (1.0 + lhs.abs().max(rhs.abs())),
                    "raised-derivative: a = {a}, z = {z}"
                );
            }
        }
    }

    #[test]
    fn rejects_invalid_input() {
        assert!(bessel_j(order(0.5), f64::NAN).is_err());
        assert!(bessel_j(order(0.5), f64::INFINITY).is_err());
        assert!(BesselOrder::new(-0.5).is_err());
        assert!(MultiplicityParam::new(-0.2).is_err());
    }

    proptest! {
        #[test]
        fn series_is_even_in_z(a in -0.45f64..5.0, z in -20.0f64..20.0) {
            let plus = bessel_j(order(a), z).unwrap();
            let minus = bessel_j(order(a), -z).unwrap();
            // the series is a function of z^2, so this equality is exact
            prop_assert_eq!(plus, minus);
            prop_assert!(plus >= 1.0);
        }

        #[test]
        fn derivative_is_odd_in_z(a in -0.45f64..5.0, z in -20.0f64..20.0) {
            let plus = bessel_j_deriv(order(a), z, 1).unwrap();
            let minus = bessel_j_deriv(order(a), -z, 1).unwrap();
            prop_assert_eq!(plus, -minus);
        }
    }
}
