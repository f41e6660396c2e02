//! Exact rational arithmetic: sparse multivariate polynomials over
//! `BigRational`, Dunkl operators acting on them without any division
//! remainder, and from those the degree-by-degree reconstruction of the
//! kernel together with exact verification of every polynomial identity the
//! integral formulas rest on.
//!
//! The reflection-difference term `(p - s_ij p)/(x_i - x_j)` is expanded per
//! monomial through the telescoping identity
//! `(u^m - v^m)/(u - v) = sum u^(m-1-l) v^l`, so divisibility is structural
//! and no polynomial long division ever runs.

mod identities;
mod series;

pub use identities::{
    antisym_constant, antisym_constant_f64, gamma_k, gamma_report, verify_opdam,
    verify_polynomial_identities, GammaClassification, GammaReport, OpdamReport,
};
pub use series::{
    fischer_gram, kernel_series, oracle_e, oracle_j, Gram, KernelSeries, OracleValue,
};

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One, Zero};

pub type Rational = BigRational;

/// Convenience constructor for small rationals.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Exponent vector of a monomial; one entry per variable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn constant(n_vars: usize) -> Self {
        Monomial(vec![0; n_vars])
    }

    pub fn var(n_vars: usize, idx: usize) -> Self {
        let mut e = vec![0; n_vars];
        e[idx] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    fn swapped(&self, i: usize, j: usize) -> Monomial {
        let mut e = self.0.clone();
        e.swap(i, j);
        Monomial(e)
    }
}

/// Sparse polynomial over exact rationals; zero coefficients are never
/// stored. Deterministic term order throughout (serialization, display).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoly {
    n_vars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl RationalPoly {
    pub fn zero(n_vars: usize) -> Self {
        Self {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n_vars: usize, c: Rational) -> Self {
        let mut p = Self::zero(n_vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::constant(n_vars), c);
        }
        p
    }

    pub fn one(n_vars: usize) -> Self {
        Self::constant(n_vars, Rational::one())
    }

    pub fn var(n_vars: usize, idx: usize) -> Self {
        assert!(idx < n_vars);
        let mut p = Self::zero(n_vars);
        p.terms.insert(Monomial::var(n_vars, idx), Rational::one());
        p
    }

    pub fn monomial(n_vars: usize, exps: &[u16], c: Rational) -> Self {
        assert_eq!(exps.len(), n_vars);
        let mut p = Self::zero(n_vars);
        if !c.is_zero() {
            p.terms.insert(Monomial(exps.to_vec()), c);
        }
        p
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(Monomial::total_degree)
            .max()
            .unwrap_or(0)
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::constant(self.n_vars))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    fn insert_add(&mut self, mono: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &RationalPoly) -> RationalPoly {
        assert_eq!(self.n_vars, other.n_vars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &RationalPoly) -> RationalPoly {
        assert_eq!(self.n_vars, other.n_vars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> RationalPoly {
        let mut out = RationalPoly::zero(self.n_vars);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> RationalPoly {
        if c.is_zero() {
            return RationalPoly::zero(self.n_vars);
        }
        let mut out = RationalPoly::zero(self.n_vars);
        for (m, coeff) in &self.terms {
            out.terms.insert(m.clone(), coeff * c);
        }
        out
    }

    pub fn mul(&self, other: &RationalPoly) -> RationalPoly {
        assert_eq!(self.n_vars, other.n_vars);
        let mut out = RationalPoly::zero(self.n_vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_add(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, mut n: u32) -> RationalPoly {
        let mut base = self.clone();
        let mut acc = RationalPoly::one(self.n_vars);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Partial derivative with respect to variable `idx`.
    pub fn derivative(&self, idx: usize) -> RationalPoly {
        let mut out = RationalPoly::zero(self.n_vars);
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut me = m.0.clone();
            me[idx] = e - 1;
            out.insert_add(Monomial(me), c * Rational::from_integer(BigInt::from(e)));
        }
        out
    }

    /// Swap variables `i` and `j` (action of the transposition `s_ij`).
    pub fn swap_vars(&self, i: usize, j: usize) -> RationalPoly {
        let mut out = RationalPoly::zero(self.n_vars);
        for (m, c) in &self.terms {
            out.insert_add(m.swapped(i, j), c.clone());
        }
        out
    }

    /// Permute variables: the new variable `i` carries the exponent the old
    /// variable `perm[i]` had.
    pub fn permute_vars(&self, perm: &[usize]) -> RationalPoly {
        assert_eq!(perm.len(), self.n_vars);
        let mut out = RationalPoly::zero(self.n_vars);
        for (m, c) in &self.terms {
            let mut e = vec![0u16; self.n_vars];
            for (new_idx, &old_idx) in perm.iter().enumerate() {
                e[new_idx] = m.0[old_idx];
            }
            out.insert_add(Monomial(e), c.clone());
        }
        out
    }

    /// Substitute a polynomial for variable `idx`.
    pub fn substitute(&self, idx: usize, value: &RationalPoly) -> RationalPoly {
        assert_eq!(self.n_vars, value.n_vars);
        let mut out = RationalPoly::zero(self.n_vars);
        let max_e = self.terms.keys().map(|m| m.0[idx]).max().unwrap_or(0);
        let mut powers = Vec::with_capacity(max_e as usize + 1);
        powers.push(RationalPoly::one(self.n_vars));
        for _ in 0..max_e {
            powers.push(powers.last().unwrap().mul(value));
        }
        for (m, c) in &self.terms {
            let e = m.0[idx];
            let mut rest = m.0.clone();
            rest[idx] = 0;
            let base = RationalPoly::monomial(self.n_vars, &rest, c.clone());
            out = out.add(&base.mul(&powers[e as usize]));
        }
        out
    }

    pub fn eval_rational(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.n_vars);
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (idx, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    term *= &point[idx];
                }
            }
            acc += term;
        }
        acc
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.n_vars);
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut term = rational_to_f64(c);
            for (idx, &e) in m.0.iter().enumerate() {
                term *= point[idx].powi(e as i32);
            }
            acc += term;
        }
        acc
    }

    /// `(p - s_ij p)/(x_i - x_j)`, exact by monomial telescoping.
    pub fn divided_difference(&self, i: usize, j: usize) -> RationalPoly {
        assert!(i != j && i < self.n_vars && j < self.n_vars);
        let mut out = RationalPoly::zero(self.n_vars);
        for (m, c) in &self.terms {
            let (a, b) = (m.0[i], m.0[j]);
            if a == b {
                continue;
            }
            // (x_i^a x_j^b - x_i^b x_j^a)/(x_i - x_j)
            //   = sign * sum_{l=0}^{hi-lo-1} x_i^(lo+hi-lo-1-l) x_j^(lo+l)
            let (lo, hi, neg) = if a > b { (b, a, false) } else { (a, b, true) };
            for l in 0..(hi - lo) {
                let mut e = m.0.clone();
                e[i] = lo + (hi - lo - 1 - l);
                e[j] = lo + l;
                let coeff = if neg { -c.clone() } else { c.clone() };
                out.insert_add(Monomial(e), coeff);
            }
        }
        out
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (idx, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    write!(f, "*x{idx}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// Convert an exact rational to the nearest f64; numerators and
/// denominators far beyond f64 range are handled by the underlying
/// bit-shifting conversion.
pub fn rational_to_f64(r: &Rational) -> f64 {
    use num::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Dunkl operator `T_i` at rational multiplicity `k`, applied exactly.
///
/// The result has degree `deg(p) - 1`; the difference terms are expanded by
/// telescoping so no remainder can occur.
pub fn poly_dunkl_t(i: usize, k: &Rational, p: &RationalPoly) -> RationalPoly {
    assert!(i < 3, "operator index must be 0, 1 or 2");
    assert!(
        p.n_vars() >= 3,
        "Dunkl operators act on the first 3 variables"
    );
    let mut out = p.derivative(i);
    for j in 0..3 {
        if j != i {
            out = out.add(&p.divided_difference(i, j).scale(k));
        }
    }
    out
}

/// The alternating product `V = (x1-x2)(x1-x3)(x2-x3)` in `n_vars >= 3`
/// variables.
pub fn vandermonde_poly(n_vars: usize) -> RationalPoly {
    let x = |i| RationalPoly::var(n_vars, i);
    x(0).sub(&x(1)).mul(&x(0).sub(&x(2))).mul(&x(1).sub(&x(2)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> RationalPoly {
        RationalPoly::var(3, i)
    }

    #[test]
    fn divided_difference_telescopes() {
        // (x1^3 - x2^3)/(x1 - x2) = x1^2 + x1 x2 + x2^2
        let p = x(0).pow(3);
        let d = p.divided_difference(0, 1);
        let want = x(0).pow(2).add(&x(0).mul(&x(1))).add(&x(1).pow(2));
        assert_eq!(d, want);

        // symmetric polynomials are annihilated
        let sym = x(0).mul(&x(1)).add(&x(2).pow(2));
        assert!(sym.divided_difference(0, 1).is_zero());
    }

    #[test]
    fn dunkl_operator_hand_values() {
        let k = rat(3, 7);
        // T1 x2 = -k
        let got = poly_dunkl_t(0, &k, &x(1));
        assert_eq!(got, RationalPoly::constant(3, -k.clone()));
        // T1 x1 = 1 + 2k
        let got = poly_dunkl_t(0, &k, &x(0));
        assert_eq!(
            got,
            RationalPoly::constant(3, Rational::one() + rat(2, 1) * k.clone())
        );
        // T1 1 = 0
        let got = poly_dunkl_t(0, &k, &RationalPoly::one(3));
        assert!(got.is_zero());
    }

    #[test]
    fn dunkl_operators_commute() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let k = rat(1, 2);
        for _ in 0..6 {
            // random polynomial of degree <= 5 with small integer coefficients
            let mut p = RationalPoly::zero(3);
            for _ in 0..8 {
                let e1 = rng.gen_range(0..3u16);
                let e2 = rng.gen_range(0..2u16);
                let e3 = rng.gen_range(0..2u16);
                let c = rat(rng.gen_range(-5..=5i64), 1);
                p = p.add(&RationalPoly::monomial(3, &[e1, e2, e3], c));
            }
            for i in 0..3 {
                for j in (i + 1)..3 {
                    let ij = poly_dunkl_t(i, &k, &poly_dunkl_t(j, &k, &p));
                    let ji = poly_dunkl_t(j, &k, &poly_dunkl_t(i, &k, &p));
                    assert_eq!(ij, ji, "T{i} T{j} != T{j} T{i}");
                }
            }
        }
    }

    #[test]
    fn substitution_eliminates_a_variable() {
        // eliminate x3 = -x1 - x2 from x1 + x2 + x3
        let sum = x(0).add(&x(1)).add(&x(2));
        let repl = x(0).add(&x(1)).neg();
        assert!(sum.substitute(2, &repl).is_zero());
    }

    #[test]
    fn rational_and_float_evaluation_agree() {
        let p = vandermonde_poly(3);
        let pt = [rat(3, 2), rat(1, 5), rat(-17, 10)];
        let exact = p.eval_rational(&pt);
        let float = p.eval_f64(&[1.5, 0.2, -1.7]);
        assert!((rational_to_f64(&exact) - float).abs() < 1e-12);
    }

    #[test]
    fn vandermonde_is_alternating() {
        let v = vandermonde_poly(3);
        for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
            assert_eq!(v.swap_vars(i, j), v.neg());
        }
    }
}
