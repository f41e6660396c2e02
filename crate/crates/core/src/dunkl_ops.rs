//! Dunkl operators applied to black-box scalar fields on R^3.
//!
//! `T_i f = d f/d x_i + k sum_{j != i} (f(x) - f(s_ij x))/(x_i - x_j)`: the
//! derivative is a 4th-order central difference with one Richardson level,
//! the reflection terms are exact function differences. When `x_i` and `x_j`
//! nearly coincide the difference quotient is 0/0 and is replaced by its
//! analytic limit, the directional derivative along `e_i - e_j` at the
//! projected diagonal point (the quotient is even in the gap, so the
//! replacement error is quadratic in it).

use crate::error::Result;
use crate::kernels::{dunkl_e, gen_bessel_j};
use crate::types::{ChamberPoint, MultiplicityParam, Point3};

/// Default step scale for the finite differences.
pub fn default_step(x: &Point3) -> f64 {
    1e-4 * (1.0 + x.norm())
}

/// Gap below which the reflection quotient switches to its symmetric limit.
fn swap_guard(x: &Point3) -> f64 {
    1e-6 * (1.0 + x.norm())
}

/// 4th-order central difference with one Richardson extrapolation level for
/// the partial derivative along coordinate `i`.
fn partial<F>(f: &F, x: &Point3, i: usize, h: f64) -> f64
where
    F: Fn(&Point3) -> f64 + ?Sized,
{
    let d4 = |h: f64| {
        (-f(&x.shifted(i, 2.0 * h)) + 8.0 * f(&x.shifted(i, h)) - 8.0 * f(&x.shifted(i, -h))
            + f(&x.shifted(i, -2.0 * h)))
            / (12.0 * h)
    };
    let coarse = d4(h);
    let fine = d4(0.5 * h);
    (16.0 * fine - coarse) / 15.0
}

/// Directional derivative along `e_i - e_j`, same scheme as [`partial`].
fn directional_diff<F>(f: &F, x: &Point3, i: usize, j: usize, h: f64) -> f64
where
    F: Fn(&Point3) -> f64 + ?Sized,
{
    let probe = |t: f64| {
        let mut c = x.coords();
        c[i] += t;
        c[j] -= t;
        f(&Point3::new(c[0], c[1], c[2]).expect("finite probe"))
    };
    let d4 = |h: f64| {
        (-probe(2.0 * h) + 8.0 * probe(h) - 8.0 * probe(-h) + probe(-2.0 * h)) / (12.0 * h)
    };
    let coarse = d4(h);
    let fine = d4(0.5 * h);
    (16.0 * fine - coarse) / 15.0
}

/// One reflection-difference term `(f(x) - f(s_ij x))/(x_i - x_j)`, with the
/// symmetric-limit branch near the diagonal.
fn reflection_term<F>(f: &F, x: &Point3, i: usize, j: usize, h: f64) -> f64
where
    F: Fn(&Point3) -> f64 + ?Sized,
{
    let gap = x.get(i) - x.get(j);
    if gap.abs() > swap_guard(x) {
        (f(x) - f(&x.swapped(i, j))) / gap
    } else {
        // limit of the quotient on the diagonal: (d_i - d_j) f at the
        // midpoint, an even function of the gap
        let mid = 0.5 * (x.get(i) + x.get(j));
        let mut c = x.coords();
        c[i] = mid;
        c[j] = mid;
        let center = Point3::new(c[0], c[1], c[2]).expect("finite midpoint");
        directional_diff(f, &center, i, j, h)
    }
}

/// Apply the Dunkl operator `T_i` (1-based index) to a black-box field.
pub fn apply_dunkl_t<F>(i: usize, k: MultiplicityParam, f: &F, x: &Point3, h: f64) -> Result<f64>
where
    F: Fn(&Point3) -> f64 + ?Sized,
{
    assert!((1..=3).contains(&i), "operator index must be 1, 2 or 3");
    let idx = i - 1;
    let mut acc = partial(f, x, idx, h);
    for j in 0..3 {
        if j != idx {
            acc += k.get() * reflection_term(f, x, idx, j, h);
        }
    }
    Ok(acc)
}

/// Coefficients of the first-order recombination operator
/// `alpha(lambda) T_1 + beta(lambda) T_2 + 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LemmaCoefficients {
    pub alpha: f64,
    pub beta: f64,
}

impl LemmaCoefficients {
    /// The denominator `l1^2 + l2^2 + l1 l2` equals half the squared norm on
    /// the zero-sum hyperplane, hence is positive on the open chamber.
    pub fn new(lambda: &ChamberPoint) -> Self {
        let [l1, l2, _] = lambda.coords();
        let denom = l1 * l1 + l2 * l2 + l1 * l2;
        Self {
            alpha: (2.0 * l1 + l2) / denom,
            beta: (2.0 * l2 + l1) / denom,
        }
    }
}

/// Apply `alpha T_1 + beta T_2 + 1` to a black-box field at `mu`.
pub fn apply_lemma_t<F>(
    k: MultiplicityParam,
    lambda: &ChamberPoint,
    f: &F,
    mu: &Point3,
    h: f64,
) -> Result<f64>
where
    F: Fn(&Point3) -> f64 + ?Sized,
{
    let coeffs = LemmaCoefficients::new(lambda);
    Ok(coeffs.alpha * apply_dunkl_t(1, k, f, mu, h)?
        + coeffs.beta * apply_dunkl_t(2, k, f, mu, h)?
        + f(mu))
}

/// Nested application of `(T1-T2)(T2-T3)(T1-T3)`; third-order differencing,
/// roughly 1e-4 relative accuracy on smooth fields. Constants-sensitive
/// checks belong to the exact oracle; this is a smoke-test tool.
pub fn apply_t_v<F>(k: MultiplicityParam, f: &F, x: &Point3, h: f64) -> Result<f64>
where
    F: Fn(&Point3) -> f64 + ?Sized,
{
    let innermost = |p: &Point3| -> f64 {
        let a = apply_dunkl_t(1, k, f, p, h).unwrap_or(f64::NAN);
        let b = apply_dunkl_t(3, k, f, p, h).unwrap_or(f64::NAN);
        a - b
    };
    let middle = |p: &Point3| -> f64 {
        let a = apply_dunkl_t(2, k, &innermost, p, 2.0 * h).unwrap_or(f64::NAN);
        let b = apply_dunkl_t(3, k, &innermost, p, 2.0 * h).unwrap_or(f64::NAN);
        a - b
    };
    let outer_a = apply_dunkl_t(1, k, &middle, x, 4.0 * h)?;
    let outer_b = apply_dunkl_t(2, k, &middle, x, 4.0 * h)?;
    Ok(outer_a - outer_b)
}

/// Residuals of the eigenvalue property `T_i E(., lambda)(mu)
/// = lambda_i E(mu, lambda)`, relative to `(1 + |lambda|)(1 + |E|)`.
pub fn verify_eigen(
    k: MultiplicityParam,
    mu: &Point3,
    lambda: &ChamberPoint,
    h: f64,
    n_nodes: usize,
) -> Result<[f64; 3]> {
    let field = |p: &Point3| dunkl_e(k, p, lambda, n_nodes).expect("kernel evaluation");
    let e_val = field(mu);
    let scale = (1.0 + lambda.norm()) * (1.0 + e_val.abs());
    let mut out = [0.0; 3];
    for (i, slot) in out.iter_mut().enumerate() {
        let applied = apply_dunkl_t(i + 1, k, &field, mu, h)?;
        *slot = (applied - lambda.coords()[i] * e_val).abs() / scale;
    }
    Ok(out)
}

/// The recombination identity: applying `alpha T_1 + beta T_2 + 1` to
/// `g = (c/6) V(lambda) V(.) J_{k+1}(., lambda) + J_k(., lambda)` with the
/// exact antisymmetrization constant `c` reproduces the kernel at `mu`.
pub fn lemma_residual(
    k: MultiplicityParam,
    mu: &Point3,
    lambda: &ChamberPoint,
    h: f64,
    n_nodes: usize,
) -> Result<f64> {
    let c = crate::poly_oracle::antisym_constant_f64(k.get());
    let v_lambda = lambda.vandermonde();
    let g = |p: &Point3| {
        let v_p = crate::types::vandermonde_point(p);
        let j_up = gen_bessel_j(k.raised(), p, lambda, n_nodes).expect("raised evaluation");
        let j = gen_bessel_j(k, p, lambda, n_nodes).expect("evaluation");
        c / 6.0 * v_lambda * v_p * j_up + j
    };
    let got = apply_lemma_t(k, lambda, &g, mu, h)?;
    let want = dunkl_e(k, mu, lambda, n_nodes)?;
    Ok((got - want).abs() / (1.0 + want.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly_oracle::{self, poly_dunkl_t, rat, rational_to_f64, RationalPoly};

    fn mult(k: f64) -> MultiplicityParam {
        MultiplicityParam::new(k).unwrap()
    }

    fn p3(a: f64, b: f64, c: f64) -> Point3 {
        Point3::new(a, b, c).unwrap()
    }

    #[test]
    fn annihilates_constants() {
        let f = |_: &Point3| 1.0;
        let x = p3(0.4, -0.2, 0.9);
        for i in 1..=3 {
            let got = apply_dunkl_t(i, mult(0.7), &f, &x, default_step(&x)).unwrap();
            assert!(got.abs() < 1e-11, "T{i} 1 = {got}");
        }
    }

    #[test]
    fn linear_field_hand_values() {
        // T1 x2 = -k and T1 x1 = 1 + 2k at a generic point
        let k = 0.85;
        let x = p3(1.0, 0.0, -1.0);
        let f2 = |p: &Point3| p.get(1);
        let got = apply_dunkl_t(1, mult(k), &f2, &x, default_step(&x)).unwrap();
        assert!((got + k).abs() < 1e-10, "T1 x2 = {got}");

        let f1 = |p: &Point3| p.get(0);
        let got = apply_dunkl_t(1, mult(k), &f1, &x, default_step(&x)).unwrap();
        assert!((got - (1.0 + 2.0 * k)).abs() < 1e-10, "T1 x1 = {got}");
    }

    #[test]
    fn agrees_with_the_exact_operator_on_polynomials() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let k_exact = rat(2, 3);
        let k = mult(2.0 / 3.0);
        for _ in 0..4 {
            let mut p = RationalPoly::zero(3);
            for _ in 0..10 {
                let e = [
                    rng.gen_range(0..4u16),
                    rng.gen_range(0..3u16),
                    rng.gen_range(0..3u16),
                ];
                p = p.add(&RationalPoly::monomial(
                    3,
                    &e,
                    rat(rng.gen_range(-4..=4i64), 1),
                ));
            }
            let x = p3(
                rng.gen_range(-1.5..1.5),
                rng.gen_range(-1.5..1.5),
                rng.gen_range(-1.5..1.5),
            );
            let f = |q: &Point3| p.eval_f64(&q.coords());
            for i in 1..=3 {
                let got = apply_dunkl_t(i, k, &f, &x, default_step(&x)).unwrap();
                let want = poly_dunkl_t(i - 1, &k_exact, &p).eval_f64(&x.coords());
                let scale = 1.0 + want.abs();
                assert!(
                    (got - want).abs() <= 1e-8 * scale,
                    "T{i}: got {got}, exact {want}"
                );
            }
        }
    }

    #[test]
    fn eigen_property_of_the_kernel() {
        let lam = ChamberPoint::new(1.0, 0.0, -1.0).unwrap();
        let mu = p3(0.3, 0.1, -0.4);
        let r = verify_eigen(mult(1.0), &mu, &lam, default_step(&mu), 64).unwrap();
        for (i, resid) in r.iter().enumerate() {
            assert!(*resid <= 5e-7, "residual {} for T{}", resid, i + 1);
        }
    }

    #[test]
    fn eigen_property_through_the_symmetric_limit_branch() {
        // mu with two equal coordinates exercises the diagonal branch
        let lam = ChamberPoint::new(1.5, 0.2, -1.7).unwrap();
        let mu = p3(0.2, 0.2, -0.4);
        for &k in &[0.5, 2.0] {
            let r = verify_eigen(mult(k), &mu, &lam, default_step(&mu), 64).unwrap();
            for resid in r {
                assert!(resid <= 5e-7, "k = {k}: residual {resid}");
            }
        }
    }

    #[test]
    fn operator_sum_annihilates_on_the_hyperplane() {
        // sum_i T_i E(., lambda) = (l1+l2+l3) E = 0
        let lam = ChamberPoint::new(1.5, 0.2, -1.7).unwrap();
        let mu = p3(0.5, -0.1, -0.3);
        let k = mult(0.8);
        let field = |p: &Point3| dunkl_e(k, p, &lam, 64).unwrap();
        let mut acc = 0.0;
        for i in 1..=3 {
            acc += apply_dunkl_t(i, k, &field, &mu, default_step(&mu)).unwrap();
        }
        assert!(acc.abs() <= 1e-6 * field(&mu).abs(), "sum = {acc}");
    }

    #[test]
    fn lemma_denominator_is_positive_on_the_chamber() {
        for lam in crate::verify::chamber_test_set() {
            let [l1, l2, _] = lam.coords();
            let denom = l1 * l1 + l2 * l2 + l1 * l2;
            assert!(denom > 0.0, "lambda = {:?}", lam.coords());
            let c = LemmaCoefficients::new(&lam);
            assert!(c.alpha.is_finite() && c.beta.is_finite());
        }
    }

    #[test]
    fn lemma_operator_trivial_fields() {
        let lam = ChamberPoint::new(1.0, 0.0, -1.0).unwrap();
        let mu = p3(0.3, 0.1, -0.4);
        let zero = |_: &Point3| 0.0;
        let one = |_: &Point3| 1.0;
        let k = mult(1.0);
        assert!(apply_lemma_t(k, &lam, &zero, &mu, 1e-4).unwrap().abs() < 1e-12);
        assert!((apply_lemma_t(k, &lam, &one, &mu, 1e-4).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn recombination_reproduces_the_kernel() {
        let lam = ChamberPoint::new(1.5, 0.2, -1.7).unwrap();
        let mu = p3(0.4, 0.1, -0.5);
        for &k in &[0.5, 1.0] {
            let resid = lemma_residual(mult(k), &mu, &lam, default_step(&mu), 64).unwrap();
            assert!(resid <= 1e-6, "k = {k}: residual {resid}");
        }
    }

    #[test]
    fn nested_alternating_operator_matches_the_exact_constant() {
        // (T1-T2)(T2-T3)(T1-T3) applied to the Vandermonde at the origin
        let k = 0.5;
        let v = |p: &Point3| crate::types::vandermonde_point(p);
        let got = apply_t_v(mult(k), &v, &Point3::zero(), 0.05).unwrap();
        let want = rational_to_f64(&poly_oracle::gamma_k(&rat(1, 2)));
        assert!(
            (got - want).abs() <= 1e-4 * want.abs(),
            "got {got}, exact {want}"
        );
    }

    #[test]
    fn nested_operator_on_a_cubic_monomial() {
        let k_exact = rat(1, 2);
        let k = mult(0.5);
        let p = RationalPoly::monomial(3, &[1, 1, 1], rat(1, 1));
        let x = p3(0.9, 0.3, -0.5);
        let f = |q: &Point3| p.eval_f64(&q.coords());
        let got = apply_t_v(k, &f, &x, 0.05).unwrap();
        let step1 = poly_dunkl_t(0, &k_exact, &p).sub(&poly_dunkl_t(2, &k_exact, &p));
        let step2 = poly_dunkl_t(1, &k_exact, &step1).sub(&poly_dunkl_t(2, &k_exact, &step1));
        let step3 = poly_dunkl_t(0, &k_exact, &step2).sub(&poly_dunkl_t(1, &k_exact, &step2));
        let want = step3.eval_f64(&x.coords());
        assert!(
            (got - want).abs() <= 1e-4 * (1.0 + want.abs()),
            "got {got}, exact {want}"
        );
        // constants are annihilated by the composition
        let c = |_: &Point3| 4.2;
        let got = apply_t_v(k, &c, &x, 0.05).unwrap();
        assert!(got.abs() < 1e-8);
    }

    #[test]
    fn reflection_equivariance_of_the_product_field() {
        // T2 f(mu) = -T1 f(s12 mu) for f = V(.) J_{k+1}(., lambda)
        let lam = ChamberPoint::new(1.5, 0.2, -1.7).unwrap();
        let k = mult(0.5);
        let f = |p: &Point3| {
            crate::types::vandermonde_point(p) * gen_bessel_j(k.raised(), p, &lam, 48).unwrap()
        };
        let mu = p3(0.7, 0.2, -0.9);
        let lhs = apply_dunkl_t(2, k, &f, &mu, default_step(&mu)).unwrap();
        let rhs = -apply_dunkl_t(1, k, &f, &mu.swapped(0, 1), default_step(&mu)).unwrap();
        assert!(
            (lhs - rhs).abs() <= 1e-6 * (1.0 + lhs.abs()),
            "T2 = {lhs}, reflected T1 = {rhs}"
        );
    }
}
