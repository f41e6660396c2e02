//! Gauss-Jacobi rules for weights `(b-t)^p (t-a)^q` with `p, q > -1`, plus
//! 1D/2D assembly helpers and a tanh-sinh fallback for integrands whose
//! endpoint behaviour does not reduce to a single Jacobi exponent.
//!
//! Rules are built on `[-1, 1]` by the Golub-Welsch algorithm (closed-form
//! Jacobi recurrence coefficients, implicit-shift QL on the symmetric
//! tridiagonal matrix) and mapped affinely; the weight mass scales with
//! `((b-a)/2)^(p+q+1)` so the singular factors carry the interval-dependent
//! normalization.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{DunklError, Result};
use crate::gamma::ln_gamma;

/// Nodes and weights of a Gauss-Jacobi rule against `(b-t)^p (t-a)^q` on
/// `(a, b)`. Immutable after construction; share freely across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    interval: (f64, f64),
    exponents: (f64, f64),
}

impl QuadRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn interval(&self) -> (f64, f64) {
        self.interval
    }

    pub fn exponents(&self) -> (f64, f64) {
        self.exponents
    }

    /// Total mass of the weight, `(b-a)^(p+q+1) B(p+1, q+1)`.
    pub fn weight_mass(&self) -> f64 {
        let (a, b) = self.interval;
        let (p, q) = self.exponents;
        ((p + q + 1.0) * (b - a).ln() + ln_beta(p + 1.0, q + 1.0)).exp()
    }
}

fn ln_beta(x: f64, y: f64) -> f64 {
    ln_gamma(x) + ln_gamma(y) - ln_gamma(x + y)
}

/// `n`-point Gauss-Jacobi rule for the weight `(b-t)^p (t-a)^q` on `[a, b]`,
/// exact for polynomials of degree `<= 2n-1`.
pub fn gauss_jacobi(n: usize, p: f64, q: f64, a: f64, b: f64) -> Result<QuadRule> {
    let reference = reference_rule(n, p, q)?;
    map_rule(&reference, a, b)
}

/// Cached variant: reference rules on `[-1, 1]` are memoized by `(n, p, q)`,
/// so repeated evaluations over the same weight only pay the affine map.
pub fn gauss_jacobi_cached(n: usize, p: f64, q: f64, a: f64, b: f64) -> Result<QuadRule> {
    let reference = reference_rule_cached(n, p, q)?;
    map_rule(&reference, a, b)
}

fn map_rule(reference: &QuadRule, a: f64, b: f64) -> Result<QuadRule> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(DunklError::InvalidInterval { a, b });
    }
    let (p, q) = reference.exponents;
    let half = 0.5 * (b - a);
    let scale = half.powf(p + q + 1.0);
    Ok(QuadRule {
        nodes: reference
            .nodes
            .iter()
            .map(|&u| a + half * (u + 1.0))
            .collect(),
        weights: reference.weights.iter().map(|&w| w * scale).collect(),
        interval: (a, b),
        exponents: (p, q),
    })
}

#[derive(PartialEq, Eq, Hash)]
struct RuleKey {
    n: usize,
    p: u64,
    q: u64,
}

fn reference_rule_cached(n: usize, p: f64, q: f64) -> Result<Arc<QuadRule>> {
    static CACHE: OnceLock<Mutex<HashMap<RuleKey, Arc<QuadRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = RuleKey {
        n,
        p: p.to_bits(),
        q: q.to_bits(),
    };
    if let Some(rule) = cache.lock().unwrap().get(&key) {
        return Ok(rule.clone());
    }
    let rule = Arc::new(reference_rule(n, p, q)?);
    cache.lock().unwrap().insert(key, rule.clone());
    Ok(rule)
}

/// Rule on the reference interval `[-1, 1]` with weight `(1-u)^p (1+u)^q`.
fn reference_rule(n: usize, p: f64, q: f64) -> Result<QuadRule> {
    if n == 0 {
        return Err(DunklError::EmptyRule { n });
    }
    for e in [p, q] {
        if !(e.is_finite() && e > -1.0) {
            return Err(DunklError::NonIntegrableEndpoint { exponent: e });
        }
    }

    // total mass of the reference weight
    let mass = ((p + q + 1.0) * 2f64.ln() + ln_beta(p + 1.0, q + 1.0)).exp();

    if n == 1 {
        return Ok(QuadRule {
            nodes: vec![(q - p) / (p + q + 2.0)],
            weights: vec![mass],
            interval: (-1.0, 1.0),
            exponents: (p, q),
        });
    }

    // Jacobi three-term recurrence coefficients: diagonal alpha_j and
    // squared off-diagonal beta_j. The j = 1 off-diagonal uses the dedicated
    // closed form; the generic expression degenerates to 0/0 at p + q = -1.
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n]; // off[j] couples j-1 and j, entries 1..n-1 used
    diag[0] = (q - p) / (p + q + 2.0);
    for j in 1..n {
        let jf = j as f64;
        let s = 2.0 * jf + p + q;
        diag[j] = (q * q - p * p) / (s * (s + 2.0));
        let beta_sq = if j == 1 {
            4.0 * (p + 1.0) * (q + 1.0) / ((p + q + 2.0).powi(2) * (p + q + 3.0))
        } else {
            4.0 * jf * (jf + p) * (jf + q) * (jf + p + q) / (s * s * (s + 1.0) * (s - 1.0))
        };
        off[j] = beta_sq.sqrt();
    }

    // First-row eigenvector components give the weights.
    let mut z = vec![0.0; n];
    z[0] = 1.0;
    tql2_first_row(&mut diag, &mut off, &mut z)?;

    let mut pairs: Vec<(f64, f64)> = diag
        .iter()
        .zip(z.iter())
        .map(|(&d, &zi)| (d, mass * zi * zi))
        .collect();
    pairs.sort_unstable_by(|a, b| a.0.partial_cmp(&b.0).unwrap());

    // Symmetric weights come with symmetric nodes; enforce the pairing
    // exactly so even/odd structure of integrands survives in the rule.
    if p == q {
        let m = pairs.len();
        for i in 0..m / 2 {
            let j = m - 1 - i;
            let node = 0.5 * (pairs[j].0 - pairs[i].0);
            let weight = 0.5 * (pairs[i].1 + pairs[j].1);
            pairs[i] = (-node, weight);
            pairs[j] = (node, weight);
        }
        if m % 2 == 1 {
            pairs[m / 2].0 = 0.0;
        }
    }

    let (nodes, weights) = pairs.into_iter().unzip();
    Ok(QuadRule {
        nodes,
        weights,
        interval: (-1.0, 1.0),
        exponents: (p, q),
    })
}

/// Implicit-shift QL iteration on a symmetric tridiagonal matrix, tracking
/// only the first row of the accumulated eigenvector matrix.
///
/// `d` holds the diagonal, `e[1..]` the sub-diagonal (`e[j]` couples rows
/// `j-1` and `j`), `z` the first-row components (`z = e_1` on entry). On
/// return `d` holds eigenvalues and `z[i]` the first component of the i-th
/// eigenvector.
fn tql2_first_row(d: &mut [f64], e: &mut [f64], z: &mut [f64]) -> Result<()> {
    let n = d.len();
    if n == 1 {
        return Ok(());
    }
    // shift sub-diagonal storage so e[j] couples j and j+1
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    for l in 0..n {
        let mut iter = 0usize;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(DunklError::EigenFailure);
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Apply a rule to the smooth factor of an integrand; the singular weight
/// factors must not be folded into `smooth`.
pub fn integrate_1d<F>(rule: &QuadRule, smooth: F) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let mut acc = 0.0;
    for (&x, &w) in rule.nodes.iter().zip(rule.weights.iter()) {
        let v = smooth(x);
        if !v.is_finite() {
            return Err(DunklError::NonFiniteIntegrand { node: x });
        }
        acc += w * v;
    }
    Ok(acc)
}

/// Tensor-product rule: outer loop over `rule1`, inner over `rule2`, in
/// deterministic index order.
pub fn product_rule_2d<F>(rule1: &QuadRule, rule2: &QuadRule, smooth: F) -> Result<f64>
where
    F: Fn(f64, f64) -> f64,
{
    let mut acc = 0.0;
    for (&x1, &w1) in rule1.nodes.iter().zip(rule1.weights.iter()) {
        let mut inner = 0.0;
        for (&x2, &w2) in rule2.nodes.iter().zip(rule2.weights.iter()) {
            let v = smooth(x1, x2);
            if !v.is_finite() {
                return Err(DunklError::NonFiniteIntegrand { node: x2 });
            }
            inner += w2 * v;
        }
        acc += w1 * inner;
    }
    Ok(acc)
}

/// Tanh-sinh (double-exponential) quadrature of `f` over `(a, b)` with step
/// `h` in the transformed variable. Handles integrable endpoint
/// singularities of unknown exponent; `f` is never evaluated at `a` or `b`.
pub fn tanh_sinh<F>(f: F, a: f64, b: f64, h: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    tanh_sinh_with_distances(|z, _, _| f(z), a, b, h)
}

/// [`tanh_sinh`] variant that hands the integrand each node's distance to
/// both endpoints. The node distances are computed from the transformation
/// directly, so an integrand with endpoint-vanishing factors can form them
/// additively and stay accurate at distances far below the rounding scale of
/// `z - a` or `b - z`; plain subtraction there loses the deep tail of a
/// singular integrand entirely.
pub fn tanh_sinh_with_distances<F>(f: F, a: f64, b: f64, h: f64) -> f64
where
    F: Fn(f64, f64, f64) -> f64,
{
    if !(a < b) {
        return 0.0;
    }
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let pi_half = 0.5 * std::f64::consts::PI;

    let mut acc = 0.0;
    let mut j = 0i64;
    loop {
        let t = h * j as f64;
        let u = pi_half * t.sinh();
        // distance from the mapped node to the nearer endpoint, computed
        // without cancellation: 1 - |tanh u| = 2 exp(-2|u|)/(1+exp(-2|u|))
        let eu = (-2.0 * u.abs()).exp();
        let dist = half * 2.0 * eu / (1.0 + eu);
        let weight = half * pi_half * t.cosh() * (4.0 * eu / (1.0 + eu).powi(2));
        if weight < 1e-300 || dist == 0.0 {
            break;
        }
        let far = 2.0 * half - dist;
        let contrib = if j == 0 {
            weight * f(mid, half, half)
        } else {
            weight * (f(b - dist, far, dist) + f(a + dist, dist, far))
        };
        if contrib.is_finite() {
            acc += contrib;
        }
        j += 1;
        if t > 7.0 {
            break;
        }
    }
    h * acc
}
