//! Degree-by-degree reconstruction of the kernel in exact arithmetic.
//!
//! The bilinear pairing `[p, q] = (p(T) q)(0)` has Gram matrices
//! `G_m[a, b] = (T^a x^b)(0)` over the degree-`m` monomial basis, and the
//! degree-`m` component of the kernel is the Gram inverse contracted with
//! monomials in the two arguments. Rather than inverting `G_m` directly, the
//! components are built by the Euler-type recursion
//!
//! ```text
//! ((m+1) + 3k - k (s12 + s13 + s23)) E_{m+1}(x, y) = <x, y> E_m(x, y),
//! ```
//!
//! which follows from summing `x_i T_i` over the eigenvalue equations; the
//! operator on the left is block diagonal over monomial orbits of the
//! symmetric group, so each degree costs a handful of exact 6x6 solves. The
//! construction is validated on the spot against the defining recurrence
//! `T_i E_{m+1} = y_i E_m` for every `i` and degree, and tests tie it back to
//! the Gram matrices by checking `C_m G_m = I` exactly at low degree.
//!
//! Internally each component is one integer matrix over a shared
//! denominator; gcd reduction runs once per degree instead of once per
//! arithmetic operation, which keeps multiplicities with wide binary
//! denominators (any `f64` value is admissible) affordable.

use std::collections::HashMap;

use num::{BigInt, Integer, One, Zero};

use super::{poly_dunkl_t, rational_to_f64, Rational, RationalPoly};
use crate::types::Point3;

/// Monomials of total degree `m` in three variables, in a fixed order.
pub(crate) fn monomials_of_degree(m: usize) -> Vec<[u16; 3]> {
    let mut out = Vec::new();
    for a in (0..=m).rev() {
        for b in (0..=(m - a)).rev() {
            out.push([a as u16, b as u16, (m - a - b) as u16]);
        }
    }
    out
}

fn index_map(basis: &[[u16; 3]]) -> HashMap<[u16; 3], usize> {
    basis.iter().enumerate().map(|(i, &m)| (m, i)).collect()
}

/// Gram matrix of the pairing `[p, q] = (p(T) q)(0)` on the degree-`m`
/// monomial basis.
#[derive(Debug, Clone)]
pub struct Gram {
    pub basis: Vec<[u16; 3]>,
    pub entries: Vec<Vec<Rational>>,
}

impl Gram {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (i + 1..n).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    /// Exact LDL^T pivots; all strictly positive iff the matrix is positive
    /// definite.
    pub fn ldl_pivots(&self) -> Vec<Rational> {
        let n = self.dim();
        let mut a: Vec<Vec<Rational>> = self.entries.clone();
        let mut pivots = Vec::with_capacity(n);
        for p in 0..n {
            let d = a[p][p].clone();
            pivots.push(d.clone());
            if d.is_zero() {
                break;
            }
            for i in (p + 1)..n {
                let factor = &a[i][p] / &d;
                for j in p..n {
                    let delta = &factor * &a[p][j];
                    a[i][j] = &a[i][j] - &delta;
                }
            }
        }
        pivots
    }

    pub fn is_positive_definite(&self) -> bool {
        let pivots = self.ldl_pivots();
        pivots.len() == self.dim() && pivots.iter().all(|p| p > &Rational::zero())
    }
}

/// Gram matrix of the degree-`m` pairing, built by sharing operator-word
/// prefixes: the row functional of `T^a` extends one operator at a time
/// across the tree of sorted words, and each extension is a sparse
/// matrix-vector product against the monomial action of a single `T_i`.
pub fn fischer_gram(k: &Rational, m: usize) -> Gram {
    let bases: Vec<Vec<[u16; 3]>> = (0..=m).map(monomials_of_degree).collect();
    let maps: Vec<HashMap<[u16; 3], usize>> = bases.iter().map(|b| index_map(b)).collect();

    // sparse columns of T_i on each degree-d basis: action[d][i][col] is the
    // coefficient vector of T_i x^(basis[d][col]) over basis[d-1]
    let mut action: Vec<[Vec<Vec<(usize, Rational)>>; 3]> = Vec::with_capacity(m + 1);
    action.push([vec![], vec![], vec![]]);
    for d in 1..=m {
        let mut per_op: [Vec<Vec<(usize, Rational)>>; 3] = [vec![], vec![], vec![]];
        for (i, slot) in per_op.iter_mut().enumerate() {
            for mono in &bases[d] {
                let p = RationalPoly::monomial(3, mono, Rational::one());
                let tp = poly_dunkl_t(i, k, &p);
                let col: Vec<(usize, Rational)> = tp
                    .terms()
                    .map(|(mo, c)| {
                        let key = [mo.0[0], mo.0[1], mo.0[2]];
                        (maps[d - 1][&key], c.clone())
                    })
                    .collect();
                slot.push(col);
            }
        }
        action.push(per_op);
    }

    let n = bases[m].len();
    let mut rows: Vec<Vec<Rational>> = vec![vec![]; n];

    // depth-first over sorted operator words; `u` is the row functional of
    // the word applied so far, expressed over the degree-`depth` basis
    #[allow(clippy::too_many_arguments)]
    fn descend(
        depth: usize,
        m: usize,
        min_op: usize,
        word: &mut [u16; 3],
        u: &[Rational],
        bases: &[Vec<[u16; 3]>],
        maps: &[HashMap<[u16; 3], usize>],
        action: &[[Vec<Vec<(usize, Rational)>>; 3]],
        rows: &mut [Vec<Rational>],
    ) {
        if depth == m {
            let idx = maps[m][&*word];
            rows[idx] = u.to_vec();
            return;
        }
        for i in min_op..3 {
            let next_len = bases[depth + 1].len();
            let mut v = vec![Rational::zero(); next_len];
            for (col, slot) in v.iter_mut().enumerate() {
                let mut acc = Rational::zero();
                for (row, c) in &action[depth + 1][i][col] {
                    if !u[*row].is_zero() {
                        acc += &u[*row] * c;
                    }
                }
                *slot = acc;
            }
            word[i] += 1;
            descend(depth + 1, m, i, word, &v, bases, maps, action, rows);
            word[i] -= 1;
        }
    }

    let mut word = [0u16; 3];
    descend(
        0,
        m,
        0,
        &mut word,
        &[Rational::one()],
        &bases,
        &maps,
        &action,
        &mut rows,
    );

    Gram {
        basis: bases[m].clone(),
        entries: rows,
    }
}

/// One homogeneous component of the kernel: the coefficient matrix of
/// `E_m(x, y)` over the degree-`m` monomial bases in the two arguments.
#[derive(Debug, Clone)]
pub struct KernelComponent {
    pub degree: usize,
    pub basis: Vec<[u16; 3]>,
    /// `coeffs[a][b]` multiplies `x^basis[a] y^basis[b]`.
    pub coeffs: Vec<Vec<Rational>>,
    /// Integer numerators over the shared `denom`; the arithmetic core.
    int_coeffs: Vec<Vec<BigInt>>,
    denom: BigInt,
    float_coeffs: Vec<Vec<f64>>,
}

impl KernelComponent {
    fn from_integers(
        degree: usize,
        basis: Vec<[u16; 3]>,
        mut ints: Vec<Vec<BigInt>>,
        mut denom: BigInt,
    ) -> Self {
        // one global reduction per degree
        let mut g = denom.clone();
        'scan: for row in &ints {
            for v in row {
                if !v.is_zero() {
                    g = g.gcd(v);
                    if g.is_one() {
                        break 'scan;
                    }
                }
            }
        }
        if !g.is_one() {
            for row in &mut ints {
                for v in row.iter_mut() {
                    *v = &*v / &g;
                }
            }
            denom = &denom / &g;
        }
        let coeffs: Vec<Vec<Rational>> = ints
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| Rational::new(v.clone(), denom.clone()))
                    .collect()
            })
            .collect();
        let float_coeffs = coeffs
            .iter()
            .map(|row| row.iter().map(rational_to_f64).collect())
            .collect();
        Self {
            degree,
            basis,
            coeffs,
            int_coeffs: ints,
            denom,
            float_coeffs,
        }
    }

    fn from_rationals(degree: usize, basis: Vec<[u16; 3]>, coeffs: Vec<Vec<Rational>>) -> Self {
        let mut denom = BigInt::one();
        for row in &coeffs {
            for c in row {
                denom = denom.lcm(c.denom());
            }
        }
        let ints = coeffs
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| c.numer() * (&denom / c.denom()))
                    .collect()
            })
            .collect();
        Self::from_integers(degree, basis, ints, denom)
    }
}

/// Kernel components `E_0 .. E_M` at a fixed rational multiplicity.
#[derive(Debug, Clone)]
pub struct KernelSeries {
    k: Rational,
    components: Vec<KernelComponent>,
}

/// Truncated series value with a crude geometric tail estimate from the last
/// two terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleValue {
    pub value: f64,
    pub tail_estimate: f64,
}

impl KernelSeries {
    pub fn k(&self) -> &Rational {
        &self.k
    }

    pub fn max_degree(&self) -> usize {
        self.components.len() - 1
    }

    pub fn component(&self, m: usize) -> &KernelComponent {
        &self.components[m]
    }

    /// Value of the degree-`m` component at a floating-point argument pair.
    pub fn component_value(&self, m: usize, mu: &Point3, lambda: &Point3) -> f64 {
        let comp = &self.components[m];
        let xm = monomial_values(&comp.basis, mu);
        let ym = monomial_values(&comp.basis, lambda);
        let mut acc = 0.0;
        for (row, xv) in comp.float_coeffs.iter().zip(xm.iter()) {
            let mut inner = 0.0;
            for (c, yv) in row.iter().zip(ym.iter()) {
                inner += c * yv;
            }
            acc += xv * inner;
        }
        acc
    }

    /// Truncated kernel value `sum_m E_m(mu, lambda)`.
    pub fn evaluate_e(&self, mu: &Point3, lambda: &Point3) -> OracleValue {
        let mut terms = Vec::with_capacity(self.components.len());
        for m in 0..self.components.len() {
            terms.push(self.component_value(m, mu, lambda));
        }
        let value: f64 = terms.iter().sum();
        OracleValue {
            value,
            tail_estimate: tail_from_terms(&terms),
        }
    }

    /// Truncated symmetrized value `(1/6) sum_sigma E(sigma mu, lambda)`.
    pub fn evaluate_j(&self, mu: &Point3, lambda: &Point3) -> OracleValue {
        let mut terms = vec![0.0; self.components.len()];
        for (perm, _) in crate::types::S3 {
            let pmu = mu.permuted(&perm);
            for (m, t) in terms.iter_mut().enumerate() {
                *t += self.component_value(m, &pmu, lambda) / 6.0;
            }
        }
        let value: f64 = terms.iter().sum();
        OracleValue {
            value,
            tail_estimate: tail_from_terms(&terms),
        }
    }

    /// Per-degree contributions at an argument pair.
    pub fn degree_contributions(&self, mu: &Point3, lambda: &Point3) -> Vec<f64> {
        (0..self.components.len())
            .map(|m| self.component_value(m, mu, lambda))
            .collect()
    }

    /// Plain-text serialization: one line per coefficient,
    /// `degree exps(x) exps(y) numerator denominator` separated by single
    /// spaces, integers in base 10.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for comp in &self.components {
            for (a, row) in comp.coeffs.iter().enumerate() {
                for (b, c) in row.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let ea = comp.basis[a];
                    let eb = comp.basis[b];
                    out.push_str(&format!(
                        "{} {} {} {} {} {} {} {} {}\n",
                        comp.degree,
                        ea[0],
                        ea[1],
                        ea[2],
                        eb[0],
                        eb[1],
                        eb[2],
                        c.numer(),
                        c.denom()
                    ));
                }
            }
        }
        out
    }

    /// Rebuild a series from [`KernelSeries::to_text`] output.
    pub fn from_text(k: Rational, text: &str) -> Result<KernelSeries, String> {
        let mut max_degree = 0usize;
        let mut entries: Vec<(usize, [u16; 3], [u16; 3], Rational)> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(' ').collect();
            if fields.len() != 9 {
                return Err(format!("line {}: expected 9 fields", lineno + 1));
            }
            let parse_u16 = |s: &str| {
                s.parse::<u16>()
                    .map_err(|e| format!("line {}: {e}", lineno + 1))
            };
            let degree = fields[0]
                .parse::<usize>()
                .map_err(|e| format!("line {}: {e}", lineno + 1))?;
            let ea = [
                parse_u16(fields[1])?,
                parse_u16(fields[2])?,
                parse_u16(fields[3])?,
            ];
            let eb = [
                parse_u16(fields[4])?,
                parse_u16(fields[5])?,
                parse_u16(fields[6])?,
            ];
            let numer: BigInt = fields[7]
                .parse()
                .map_err(|e| format!("line {}: {e}", lineno + 1))?;
            let denom: BigInt = fields[8]
                .parse()
                .map_err(|e| format!("line {}: {e}", lineno + 1))?;
            if denom <= BigInt::zero() {
                return Err(format!("line {}: denominator must be positive", lineno + 1));
            }
            max_degree = max_degree.max(degree);
            entries.push((degree, ea, eb, Rational::new(numer, denom)));
        }
        let mut matrices: Vec<Vec<Vec<Rational>>> = (0..=max_degree)
            .map(|m| {
                let n = monomials_of_degree(m).len();
                vec![vec![Rational::zero(); n]; n]
            })
            .collect();
        let bases: Vec<Vec<[u16; 3]>> = (0..=max_degree).map(monomials_of_degree).collect();
        let maps: Vec<HashMap<[u16; 3], usize>> = bases.iter().map(|b| index_map(b)).collect();
        for (degree, ea, eb, c) in entries {
            let a = *maps[degree]
                .get(&ea)
                .ok_or_else(|| format!("exponents {ea:?} not of degree {degree}"))?;
            let b = *maps[degree]
                .get(&eb)
                .ok_or_else(|| format!("exponents {eb:?} not of degree {degree}"))?;
            matrices[degree][a][b] = c;
        }
        let components = matrices
            .into_iter()
            .enumerate()
            .map(|(m, coeffs)| KernelComponent::from_rationals(m, bases[m].clone(), coeffs))
            .collect();
        Ok(KernelSeries { k, components })
    }
}

fn tail_from_terms(terms: &[f64]) -> f64 {
    let n = terms.len();
    if n < 2 {
        return 0.0;
    }
    let last = terms[n - 1].abs();
    let prev = terms[n - 2].abs();
    if last == 0.0 {
        // a term can vanish by parity alone; fall back to its predecessor
        // as a conservative geometric scale
        return 0.5 * prev;
    }
    let ratio = if prev > 0.0 {
        (last / prev).min(0.9)
    } else {
        0.5
    };
    last * ratio / (1.0 - ratio)
}

fn monomial_values(basis: &[[u16; 3]], p: &Point3) -> Vec<f64> {
    let [x1, x2, x3] = p.coords();
    basis
        .iter()
        .map(|e| x1.powi(e[0] as i32) * x2.powi(e[1] as i32) * x3.powi(e[2] as i32))
        .collect()
}

/// Build the kernel components up to total degree `max_degree`.
///
/// Panics if the construction fails to satisfy the defining recurrence
/// exactly, which would indicate an internal logic error.
pub fn kernel_series(k: &Rational, max_degree: usize) -> KernelSeries {
    let mut components: Vec<KernelComponent> = Vec::with_capacity(max_degree + 1);
    components.push(KernelComponent::from_integers(
        0,
        vec![[0, 0, 0]],
        vec![vec![BigInt::one()]],
        BigInt::one(),
    ));

    for m in 0..max_degree {
        let next = raise_degree(k, &components[m]);
        components.push(next);
    }

    let series = KernelSeries {
        k: k.clone(),
        components,
    };
    validate_recurrence(&series);
    series
}

/// Solve `((d + 3k) - k (s12 + s13 + s23)) E_d = <x, y> E_{d-1}` for the next
/// component; the operator acts on the first argument and is block diagonal
/// over monomial orbits, so each block is handled by an exact adjugate.
fn raise_degree(k: &Rational, prev: &KernelComponent) -> KernelComponent {
    let d = prev.degree + 1;
    let basis = monomials_of_degree(d);
    let n = basis.len();
    let map = index_map(&basis);

    let p_num = k.numer().clone();
    let q_den = k.denom().clone();

    // right-hand side R[a][b] = sum_i N[a - e_i][b - e_i] over the shared
    // denominator of the previous component
    let mut rhs = vec![vec![BigInt::zero(); n]; n];
    for (pa, row) in prev.int_coeffs.iter().enumerate() {
        for (pb, c) in row.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for i in 0..3 {
                let mut ea = prev.basis[pa];
                let mut eb = prev.basis[pb];
                ea[i] += 1;
                eb[i] += 1;
                let a = map[&ea];
                let b = map[&eb];
                rhs[a][b] += c;
            }
        }
    }

    // orbits of the x-basis under coordinate permutations
    let mut orbit_of: Vec<Option<usize>> = vec![None; n];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if orbit_of[start].is_some() {
            continue;
        }
        let id = orbits.len();
        let mut members = vec![start];
        orbit_of[start] = Some(id);
        let mut cursor = 0;
        while cursor < members.len() {
            let mono = basis[members[cursor]];
            for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
                let mut sw = mono;
                sw.swap(i, j);
                let idx = map[&sw];
                if orbit_of[idx].is_none() {
                    orbit_of[idx] = Some(id);
                    members.push(idx);
                }
            }
            cursor += 1;
        }
        orbits.push(members);
    }

    // q-scaled block of (d + 3k) I - k sum s_ij per orbit: diagonal d q + 3p,
    // each transposition contributes -p
    let shift_int = BigInt::from(d as i64) * &q_den + BigInt::from(3) * &p_num;
    let mut blocks: Vec<Vec<Vec<BigInt>>> = Vec::with_capacity(orbits.len());
    for members in &orbits {
        let size = members.len();
        let local: HashMap<usize, usize> = members
            .iter()
            .enumerate()
            .map(|(loc, &glob)| (glob, loc))
            .collect();
        let mut block = vec![vec![BigInt::zero(); size]; size];
        for (col_loc, &col_glob) in members.iter().enumerate() {
            block[col_loc][col_loc] += &shift_int;
            let mono = basis[col_glob];
            for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
                let mut sw = mono;
                sw.swap(i, j);
                let row_loc = local[&map[&sw]];
                block[row_loc][col_loc] -= &p_num;
            }
        }
        blocks.push(block);
    }

    // adjugates and determinants; the determinant is positive (all operator
    // eigenvalues d, d+3k, d+6k are positive for k > 0)
    let solved: Vec<(Vec<Vec<BigInt>>, BigInt)> = blocks
        .iter()
        .map(|b| (int_adjugate(b), int_det(b)))
        .collect();
    let mut lcm_det = BigInt::one();
    for (_, det) in &solved {
        debug_assert!(det > &BigInt::zero());
        lcm_det = lcm_det.lcm(det);
    }

    // X = q adj R / (det D_prev); common denominator lcm(det) D_prev
    let mut ints = vec![vec![BigInt::zero(); n]; n];
    for (members, (adj, det)) in orbits.iter().zip(solved.iter()) {
        let scale = &q_den * (&lcm_det / det);
        for (loc, &glob) in members.iter().enumerate() {
            for b in 0..n {
                let mut acc = BigInt::zero();
                for (c_loc, &c_glob) in members.iter().enumerate() {
                    if !rhs[c_glob][b].is_zero() && !adj[loc][c_loc].is_zero() {
                        acc += &adj[loc][c_loc] * &rhs[c_glob][b];
                    }
                }
                if !acc.is_zero() {
                    ints[glob][b] = acc * &scale;
                }
            }
        }
    }
    let denom = &lcm_det * &prev.denom;
    KernelComponent::from_integers(d, basis, ints, denom)
}

/// Determinant of a small integer matrix by fraction-free (Bareiss)
/// elimination.
fn int_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for p in 0..n {
        if a[p][p].is_zero() {
            let swap = (p + 1..n).find(|&r| !a[r][p].is_zero());
            match swap {
                Some(r) => {
                    a.swap(p, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in (p + 1)..n {
            for j in (p + 1)..n {
                let t = &a[p][p] * &a[i][j] - &a[i][p] * &a[p][j];
                a[i][j] = t / &prev;
            }
            a[i][p] = BigInt::zero();
        }
        prev = a[p][p].clone();
    }
    if sign > 0 {
        prev
    } else {
        -prev
    }
}

/// Adjugate by cofactor expansion; blocks never exceed 6x6.
fn int_adjugate(m: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = m.len();
    if n == 1 {
        return vec![vec![BigInt::one()]];
    }
    let mut adj = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<BigInt>> = (0..n)
                .filter(|&r| r != i)
                .map(|r| {
                    (0..n)
                        .filter(|&c| c != j)
                        .map(|c| m[r][c].clone())
                        .collect()
                })
                .collect();
            let cof = int_det(&minor);
            adj[j][i] = if (i + j) % 2 == 0 { cof } else { -cof };
        }
    }
    adj
}

/// Exact check of `T_i E_{m+1}(., y) = y_i E_m(., y)` for every `i` and every
/// consecutive pair of components, carried out entirely on the shared-
/// denominator integer form. Panics on failure: the construction is wrong if
/// this does not hold.
fn validate_recurrence(series: &KernelSeries) {
    let k = &series.k;
    let q_den = k.denom().clone();

    for m in 0..series.max_degree() {
        let low = &series.components[m];
        let high = &series.components[m + 1];
        let n_low = low.basis.len();
        let low_map = index_map(&low.basis);

        // q-scaled integer action of T_i on each high-basis monomial
        let actions: Vec<[Vec<(usize, BigInt)>; 3]> = high
            .basis
            .iter()
            .map(|mono| {
                let p = RationalPoly::monomial(3, mono, Rational::one());
                let mut per_op: [Vec<(usize, BigInt)>; 3] = [vec![], vec![], vec![]];
                for (i, slot) in per_op.iter_mut().enumerate() {
                    let tp = poly_dunkl_t(i, k, &p);
                    *slot = tp
                        .terms()
                        .map(|(mo, c)| {
                            let key = [mo.0[0], mo.0[1], mo.0[2]];
                            let scaled = c * Rational::from_integer(q_den.clone());
                            debug_assert!(scaled.denom().is_one());
                            (low_map[&key], scaled.numer().clone())
                        })
                        .collect();
                }
                per_op
            })
            .collect();

        // compare q D_hi * RHS with D_lo * (accumulated LHS)
        let rhs_scale = &q_den * &high.denom;
        for i in 0..3 {
            for (b_hi, &eb_hi) in high.basis.iter().enumerate() {
                let mut acc = vec![BigInt::zero(); n_low];
                for (a_hi, row) in high.int_coeffs.iter().enumerate() {
                    let c = &row[b_hi];
                    if c.is_zero() {
                        continue;
                    }
                    for (lo_idx, t) in &actions[a_hi][i] {
                        acc[*lo_idx] += c * t;
                    }
                }
                let rhs_col = if eb_hi[i] > 0 {
                    let mut eb = eb_hi;
                    eb[i] -= 1;
                    low_map.get(&eb).copied()
                } else {
                    None
                };
                for a_lo in 0..n_low {
                    let lhs = &acc[a_lo] * &low.denom;
                    let rhs = match rhs_col {
                        Some(b) => &low.int_coeffs[a_lo][b] * &rhs_scale,
                        None => BigInt::zero(),
                    };
                    assert_eq!(
                        lhs,
                        rhs,
                        "kernel recurrence failed at degree {} (operator {i})",
                        m + 1
                    );
                }
            }
        }
    }
}

/// Truncated kernel value built from scratch; for repeated evaluations build
/// the series once via [`kernel_series`] and call
/// [`KernelSeries::evaluate_e`].
pub fn oracle_e(k: &Rational, mu: &Point3, lambda: &Point3, max_degree: usize) -> OracleValue {
    kernel_series(k, max_degree).evaluate_e(mu, lambda)
}

/// Symmetrized truncated value; see [`oracle_e`].
pub fn oracle_j(k: &Rational, mu: &Point3, lambda: &Point3, max_degree: usize) -> OracleValue {
    kernel_series(k, max_degree).evaluate_j(mu, lambda)
}
