//! Cyclic quotient actions, blow-up weights, and chart lattice arithmetic.
//!
//! A cyclic quotient `A^n / (1/r)(a_1,...,a_n)` is described by a
//! [`QuotientAction`]; a weighted blow-up of it by a [`WeightVector`]
//! `(1/r)(b_1,...,b_n)`.  Each blow-up chart is again a cyclic quotient of
//! affine space; [`chart_decomposition`] computes the two standard diagonal
//! generators of the chart group, the residual order `m` of the exceptional
//! weighted projective space `P(b_1..b_n)/(Z/m)`, and the reduction of the
//! chart group to a single cyclic generator.
//!
//! All arithmetic is exact; lattice indices are computed by integer row
//! reduction (Hermite form) of generator matrices.

use crate::{rat, ratio, Rat};
use num::integer::gcd;
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

/// Errors produced by lattice-level operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QError {
    #[error("invalid construction: {0}")]
    Invalid(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("weight (1/{r})({b:?}) is not compatible with action {action}: no lambda, k_i exist")]
    IncompatibleWeight {
        r: i64,
        b: Vec<i64>,
        action: String,
    },
    #[error("chart index {0} out of range 1..={1}")]
    ChartIndex(usize, usize),
    #[error("chart group is not cyclic (invariant factors {0:?})")]
    NonCyclic(Vec<i64>),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("operation requires a 3-dimensional action, got n={0}")]
    NotThreeDim(usize),
    #[error("action {0} is not a terminal quotient point")]
    NotTerminal(String),
}

/// A diagonal cyclic group action `(1/r)(a_1,...,a_n)` on affine n-space.
///
/// `x_i` is acted on by `xi_r^{a_i}` for a fixed primitive r-th root of
/// unity `xi_r`.  Exponents are stored reduced to `[0, r)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuotientAction {
    r: i64,
    a: Vec<i64>,
}

impl fmt::Display for QuotientAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/{}(", self.r)?;
        for (i, ai) in self.a.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{ai}")?;
        }
        write!(f, ")")
    }
}

impl QuotientAction {
    /// Build an action; `r >= 1`, `2 <= n <= 5`, exponents reduced mod `r`.
    pub fn new(r: i64, a: &[i64]) -> Result<Self, QError> {
        if r < 1 {
            return Err(QError::Invalid(format!("group order r={r} must be >= 1")));
        }
        if !(2..=5).contains(&a.len()) {
            return Err(QError::Invalid(format!(
                "action length {} outside 2..=5",
                a.len()
            )));
        }
        let a = a.iter().map(|x| x.rem_euclid(r)).collect();
        Ok(QuotientAction { r, a })
    }

    /// The trivial action on `n` coordinates.
    pub fn trivial(n: usize) -> Self {
        QuotientAction {
            r: 1,
            a: vec![0; n],
        }
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn exponents(&self) -> &[i64] {
        &self.a
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    /// True iff the group acts trivially.
    pub fn is_trivial(&self) -> bool {
        self.r == 1 || self.a.iter().all(|&x| x == 0)
    }

    /// Order of the faithful image of the group: `r / gcd(r, a_1, ..., a_n)`.
    pub fn faithful_order(&self) -> i64 {
        let d = self.a.iter().fold(self.r, |acc, &x| gcd(acc, x));
        self.r / d
    }

    /// Replace the action by its faithful image (same pointwise action).
    pub fn faithful(&self) -> QuotientAction {
        let s = self.faithful_order();
        let d = self.r / s;
        QuotientAction {
            r: s,
            a: self.a.iter().map(|&x| (x / d).rem_euclid(s)).collect(),
        }
    }

    /// The age of the k-th group element: `(1/r) * sum_i ((k*a_i) mod r)`.
    pub fn age(&self, k: i64) -> Rat {
        let s: i64 = self.a.iter().map(|&ai| (k * ai).rem_euclid(self.r)).sum();
        ratio(s as i128, self.r as i128)
    }

    /// True iff some nontrivial element fixes a hyperplane pointwise
    /// (a quasi-reflection), i.e. all but at most one exponent vanish.
    pub fn has_quasi_reflection(&self) -> bool {
        let n = self.n();
        for k in 1..self.r {
            let exps: Vec<i64> = self.a.iter().map(|&ai| (k * ai).rem_euclid(self.r)).collect();
            if exps.iter().all(|&e| e == 0) {
                continue; // element acts trivially
            }
            let zero = exps.iter().filter(|&&e| e == 0).count();
            if zero >= n - 1 {
                return true;
            }
        }
        false
    }

    /// True iff some nontrivial element fixes a positive-dimensional locus
    /// (any coordinate subspace of dim >= 1), i.e. the quotient singularity
    /// is not isolated.
    pub fn has_positive_dim_fixed_locus(&self) -> bool {
        for k in 1..self.r {
            let exps: Vec<i64> = self.a.iter().map(|&ai| (k * ai).rem_euclid(self.r)).collect();
            if exps.iter().all(|&e| e == 0) {
                continue;
            }
            if exps.iter().any(|&e| e == 0) {
                return true;
            }
        }
        false
    }

    /// Restrict the action to a subset of coordinates (0-based indices) and
    /// replace it by its faithful image.  Used when a chart equation lets a
    /// coordinate be eliminated as an implicit function of the others.
    pub fn restrict(&self, keep: &[usize]) -> Result<QuotientAction, QError> {
        if keep.len() < 2 {
            return Err(QError::Invalid(
                "restriction must keep at least two coordinates".into(),
            ));
        }
        let a: Vec<i64> = keep
            .iter()
            .map(|&i| {
                self.a
                    .get(i)
                    .copied()
                    .ok_or(QError::ChartIndex(i + 1, self.n()))
            })
            .collect::<Result<_, _>>()?;
        QuotientAction::new(self.r, &a).map(|q| q.faithful())
    }

    /// Canonical presentation of the quotient germ: the lexicographically
    /// smallest exponent vector over all generator changes (unit multiples)
    /// and coordinate permutations.  Two quotient germs are isomorphic via a
    /// coordinate permutation iff their canonical forms are equal.
    pub fn canonical(&self) -> QuotientAction {
        let f = self.faithful();
        let r = f.r;
        let mut best: Option<Vec<i64>> = None;
        for u in 1..=r {
            if gcd(u, r) != 1 {
                continue;
            }
            let mut v: Vec<i64> = f.a.iter().map(|&x| (u * x).rem_euclid(r)).collect();
            v.sort_unstable();
            if best.as_ref().is_none_or(|b| v < *b) {
                best = Some(v);
            }
        }
        QuotientAction {
            r,
            a: best.unwrap_or_else(|| f.a.clone()),
        }
    }
}

/// A blow-up weight `w = (1/r)(b_1,...,b_n)` with all `b_i >= 1`.
///
/// Weights are stored exactly as given; no common-factor reduction is
/// applied.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector {
    r: i64,
    b: Vec<i64>,
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.r != 1 {
            write!(f, "1/{}", self.r)?;
        }
        write!(f, "(")?;
        for (i, bi) in self.b.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{bi}")?;
        }
        write!(f, ")")
    }
}

/// Witness that a weight is compatible with an action:
/// `b_i = lambda * a_i + k_i * r` with `lambda` a nonnegative integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Compatibility {
    pub lambda: i64,
    pub k: Vec<i64>,
}

impl WeightVector {
    pub fn new(r: i64, b: &[i64]) -> Result<Self, QError> {
        if r < 1 {
            return Err(QError::Invalid(format!("weight denominator r={r} must be >= 1")));
        }
        if b.is_empty() || b.len() > 5 {
            return Err(QError::Invalid(format!(
                "weight length {} outside 1..=5",
                b.len()
            )));
        }
        if let Some(bad) = b.iter().find(|&&x| x < 1) {
            return Err(QError::Invalid(format!("weight entry {bad} must be >= 1")));
        }
        Ok(WeightVector { r, b: b.to_vec() })
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn entries(&self) -> &[i64] {
        &self.b
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    /// The exact rational weight of the i-th coordinate, `b_i / r` (0-based).
    pub fn value(&self, i: usize) -> Rat {
        ratio(self.b[i] as i128, self.r as i128)
    }

    /// All coordinate weights as rationals.
    pub fn values(&self) -> Vec<Rat> {
        (0..self.n()).map(|i| self.value(i)).collect()
    }

    /// Find the least `lambda >= 0` with `b_i = lambda*a_i + k_i*r` for all i.
    pub fn compatibility(&self, action: &QuotientAction) -> Result<Compatibility, QError> {
        if self.n() != action.n() {
            return Err(QError::DimensionMismatch(self.n(), action.n()));
        }
        if self.r != action.r() {
            return Err(QError::IncompatibleWeight {
                r: self.r,
                b: self.b.clone(),
                action: action.to_string(),
            });
        }
        let r = self.r;
        'outer: for lambda in 0..r.max(1) {
            for (bi, ai) in self.b.iter().zip(action.exponents()) {
                if (bi - lambda * ai).rem_euclid(r) != 0 {
                    continue 'outer;
                }
            }
            let k = self
                .b
                .iter()
                .zip(action.exponents())
                .map(|(bi, ai)| (bi - lambda * ai).div_euclid(r))
                .collect();
            return Ok(Compatibility { lambda, k });
        }
        Err(QError::IncompatibleWeight {
            r: self.r,
            b: self.b.clone(),
            action: action.to_string(),
        })
    }
}

/// The chart group data of a weighted blow-up chart `U_i`.
///
/// The chart is `A^n / <tau, tau'>` where, with `xi_d` a primitive d-th
/// root of unity and `i` the chart coordinate (1-based `chart_index`):
///
/// * `tau`  : `x_i -> xi_{b_i}^{-r} x_i`, `x_j -> xi_{b_i}^{b_j} x_j`;
/// * `tau'` : `x_i -> xi_{b_i}^{a_i} x_i`, `x_j -> xi_{r b_i}^{a_j b_i - a_i b_j} x_j`.
///
/// `m` is the residual order of the exceptional locus `P(b_1..b_n)/(Z/m)`,
/// computed as the lattice index `[T_i N : Z^n + Z*T_i e_i]`; it divides
/// `lambda`.  `reduced` is the chart group rewritten with a single cyclic
/// generator (exact elementary-divisor reduction).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartQuotientData {
    pub chart_index: usize,
    /// Modulus of the `tau` exponent vector (= `b_i`).
    pub order_tau: i64,
    /// Exponents of `tau` modulo `order_tau`.
    pub tau: Vec<i64>,
    /// Modulus of the `tau_prime` exponent vector (= `r * b_i`).
    pub tau_prime_modulus: i64,
    /// Exponents of `tau'` modulo `tau_prime_modulus`.
    pub tau_prime: Vec<i64>,
    /// Residual order of the exceptional locus; divides `lambda`.
    pub m: i64,
    pub lambda: i64,
    pub k: Vec<i64>,
    /// Total order of the chart group.
    pub group_order: i64,
    /// Single-generator presentation of the chart group.
    pub reduced: QuotientAction,
}

impl ChartQuotientData {
    /// True iff the chart is a quotient by the trivial group (smooth ambient).
    pub fn is_trivial(&self) -> bool {
        self.group_order == 1
    }
}

// ---------------------------------------------------------------------------
// integer lattice helpers
// ---------------------------------------------------------------------------

/// Reduce an integer generator matrix (rows spanning a full-rank sublattice
/// of Z^n) to an upper-triangular basis by integer row operations; returns
/// the absolute value of its determinant (the covolume).
fn lattice_covolume(mut rows: Vec<Vec<i128>>, n: usize) -> Result<i128, QError> {
    let mut det: i128 = 1;
    for col in 0..n {
        // gcd-reduce all rows at/below `col` into a single pivot row
        loop {
            let mut pivot: Option<usize> = None;
            for (ri, row) in rows.iter().enumerate().skip(col) {
                if row[col] != 0 {
                    match pivot {
                        None => pivot = Some(ri),
                        Some(p) => {
                            if rows[ri][col].abs() < rows[p][col].abs() {
                                pivot = Some(ri);
                            }
                        }
                    }
                }
            }
            let p = pivot.ok_or_else(|| {
                QError::Internal("generator matrix is not full rank".into())
            })?;
            rows.swap(col, p);
            let mut again = false;
            let head = rows[col][col];
            for ri in (col + 1)..rows.len() {
                if rows[ri][col] != 0 {
                    let q = rows[ri][col].div_euclid(head);
                    for c in 0..n {
                        let sub = q * rows[col][c];
                        rows[ri][c] -= sub;
                    }
                    if rows[ri][col] != 0 {
                        again = true;
                    }
                }
            }
            if !again {
                break;
            }
        }
        det = det
            .checked_mul(rows[col][col])
            .ok_or_else(|| QError::Internal("covolume overflow".into()))?;
    }
    Ok(det.abs())
}

/// Index `[L_big : L_small]` of full-rank lattices given by generator rows
/// scaled by a common denominator (so entries are integers).
fn lattice_index(big: Vec<Vec<i128>>, small: Vec<Vec<i128>>, n: usize) -> Result<i64, QError> {
    let cb = lattice_covolume(big, n)?;
    let cs = lattice_covolume(small, n)?;
    if cb == 0 || cs % cb != 0 {
        return Err(QError::Internal(format!(
            "lattice index is not integral: covolumes {cs}/{cb}"
        )));
    }
    Ok((cs / cb) as i64)
}

/// The finite subgroup of (Q/Z)^n generated by vectors `gens` (entries given
/// as numerators over the common denominator `d`).  Elements are returned as
/// reduced numerator vectors over `d`, sorted.
fn span_mod_one(gens: &[Vec<i64>], d: i64, n: usize) -> Vec<Vec<i64>> {
    let reduce = |v: &[i64]| -> Vec<i64> { v.iter().map(|x| x.rem_euclid(d)).collect() };
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    seen.insert(vec![0; n]);
    let mut frontier: Vec<Vec<i64>> = vec![vec![0; n]];
    while let Some(e) = frontier.pop() {
        for g in gens {
            let s: Vec<i64> = e.iter().zip(g).map(|(a, b)| a + b).collect();
            let s = reduce(&s);
            if seen.insert(s.clone()) {
                frontier.push(s);
            }
        }
    }
    seen.into_iter().collect()
}

fn element_order(v: &[i64], d: i64) -> i64 {
    let g = v.iter().fold(d, |acc, &x| gcd(acc, x));
    d / g
}

// ---------------------------------------------------------------------------
// operations
// ---------------------------------------------------------------------------

/// Decompose blow-up chart `U_i` (1-based `i`) of the weighted blow-up of
/// `A^n/action` with weight `weight` into its two-generator presentation and
/// its single-cyclic-generator reduction.
pub fn chart_decomposition(
    action: &QuotientAction,
    weight: &WeightVector,
    i: usize,
) -> Result<ChartQuotientData, QError> {
    let n = action.n();
    if i < 1 || i > n {
        return Err(QError::ChartIndex(i, n));
    }
    let compat = weight.compatibility(action)?;
    let r = action.r();
    let a = action.exponents();
    let b = weight.entries();
    let i0 = i - 1;
    let bi = b[i0];

    // tau: slot i gets -r, slot j gets b_j (mod b_i)
    let tau: Vec<i64> = (0..n)
        .map(|j| {
            if j == i0 {
                (-r).rem_euclid(bi)
            } else {
                b[j].rem_euclid(bi)
            }
        })
        .collect();
    // tau': slot i gets r*a_i, slot j gets a_j*b_i - a_i*b_j (mod r*b_i)
    let tpm = r * bi;
    let tau_prime: Vec<i64> = (0..n)
        .map(|j| {
            if j == i0 {
                (r * a[i0]).rem_euclid(tpm)
            } else {
                (a[j] * bi - a[i0] * b[j]).rem_euclid(tpm)
            }
        })
        .collect();

    // Chart lattice T_i N is generated over Z^n by
    //   t1 = T_i e_i = (1/b_i) * (slot i: r, slot j: -b_j)
    //   t2 = T_i v   = (1/(r b_i)) * (slot i: r a_i, slot j: a_j b_i - a_i b_j)
    // (t1 = tau^{-1} as a group element; same subgroup.)
    let d = tpm; // common denominator r*b_i
    let t1: Vec<i64> = (0..n)
        .map(|j| if j == i0 { r * r } else { -r * b[j] })
        .collect();
    let t2: Vec<i64> = (0..n)
        .map(|j| {
            if j == i0 {
                r * a[i0]
            } else {
                a[j] * bi - a[i0] * b[j]
            }
        })
        .collect();

    // m = [T_i N : Z^n + Z t1], computed as a ratio of lattice covolumes.
    let mut std_rows: Vec<Vec<i128>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|c| if c == j { d as i128 } else { 0 })
                .collect()
        })
        .collect();
    let mut big = std_rows.clone();
    big.push(t1.iter().map(|&x| x as i128).collect());
    big.push(t2.iter().map(|&x| x as i128).collect());
    std_rows.push(t1.iter().map(|&x| x as i128).collect());
    let m = lattice_index(big.clone(), std_rows, n)?;
    if compat.lambda != 0 && compat.lambda % m != 0 {
        return Err(QError::Internal(format!(
            "residual order m={m} does not divide lambda={}",
            compat.lambda
        )));
    }

    // Full chart group and its cyclic reduction.
    let elements = span_mod_one(&[t1.clone(), t2.clone()], d, n);
    let group_order = elements.len() as i64;
    // group order must be b_i, scaled down if the input action is unfaithful
    let want = (bi as i128) * (action.faithful_order() as i128);
    if want % (r as i128) != 0 || group_order as i128 != want / (r as i128) {
        return Err(QError::Internal(format!(
            "chart group order {group_order} != b_i*faithful/r = {}/{}",
            want, r
        )));
    }
    let reduced = if group_order == 1 {
        QuotientAction::trivial(n)
    } else {
        // pick the lexicographically smallest generator of maximal order
        let gen = elements
            .iter()
            .filter(|e| element_order(e, d) == group_order)
            .min()
            .cloned()
            .ok_or_else(|| {
                // not cyclic: report invariant factors via orders present
                let mut orders: Vec<i64> =
                    elements.iter().map(|e| element_order(e, d)).collect();
                orders.sort_unstable();
                orders.dedup();
                QError::NonCyclic(orders)
            })?;
        let scale = d / group_order;
        let exps: Vec<i64> = gen.iter().map(|&x| x / scale).collect();
        QuotientAction::new(group_order, &exps)?
    };

    Ok(ChartQuotientData {
        chart_index: i,
        order_tau: bi,
        tau,
        tau_prime_modulus: tpm,
        tau_prime,
        m,
        lambda: compat.lambda,
        k: compat.k,
        group_order,
        reduced,
    })
}

/// The set of chart indices (1-based) in which the center of the valuation
/// with weight `b` lies, for the blow-up with weight `a`: exactly the `i`
/// minimising `b_i / a_i`.
pub fn center_chart_test(a: &WeightVector, b: &WeightVector) -> Result<BTreeSet<usize>, QError> {
    if a.n() != b.n() {
        return Err(QError::DimensionMismatch(a.n(), b.n()));
    }
    let ratios: Vec<Rat> = (0..a.n())
        .map(|i| {
            ratio(b.entries()[i] as i128, b.r() as i128)
                / ratio(a.entries()[i] as i128, a.r() as i128)
        })
        .collect();
    let min = ratios.iter().min().copied().expect("nonempty weight");
    Ok(ratios
        .iter()
        .enumerate()
        .filter(|(_, x)| **x == min)
        .map(|(i, _)| i + 1)
        .collect())
}

/// Discrepancy of the exceptional divisor over the ambient quotient space:
/// `(b_1 + ... + b_n)/r - 1`.
pub fn ambient_discrepancy(weight: &WeightVector) -> Rat {
    let s: i64 = weight.entries().iter().sum();
    ratio(s as i128, weight.r() as i128) - rat(1)
}

/// Self-intersection number of the exceptional divisor of the ambient
/// weighted blow-up: `F^n = (-1)^{n-1} r^{n-1} / (b_1 ... b_n m)`.
pub fn exc_self_intersection(weight: &WeightVector, m: i64) -> Rat {
    let n = weight.n() as u32;
    let sign = if n % 2 == 1 { 1 } else { -1 };
    let rpow = (weight.r() as i128).pow(n - 1);
    let prod: i128 = weight.entries().iter().map(|&x| x as i128).product();
    ratio(sign * rpow, prod * m as i128)
}

/// True iff the 3-dimensional action is, up to coordinate permutation and
/// change of group generator, of the form `1/r(a, r-a, 1)` with
/// `gcd(a, r) = 1` — i.e. a terminal quotient point.
pub fn terminal_quotient_check(action: &QuotientAction) -> Result<bool, QError> {
    if action.n() != 3 {
        return Err(QError::NotThreeDim(action.n()));
    }
    let f = action.faithful();
    let r = f.r();
    if r == 1 {
        return Ok(true); // trivial quotient: a smooth point
    }
    for u in 1..r {
        if gcd(u, r) != 1 {
            continue;
        }
        let v: Vec<i64> = f.exponents().iter().map(|&x| (u * x).rem_euclid(r)).collect();
        for p in 0..3 {
            if v[p] != 1 {
                continue;
            }
            let (q, s) = match p {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            if v[q] + v[s] == r && gcd(v[q], r) == 1 {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// The weight of the unique discrepancy-`1/r` weighted blow-up over a
/// terminal quotient point: the action exponents in the generator
/// normalisation `1/r(a, r-a, 1)`.  Errors if the action is trivial or not
/// a terminal quotient point.
pub fn kawamata_weight(action: &QuotientAction) -> Result<WeightVector, QError> {
    if action.n() != 3 {
        return Err(QError::NotThreeDim(action.n()));
    }
    let f = action.faithful();
    let r = f.r();
    if r == 1 {
        return Err(QError::NotTerminal(
            "trivial action has no blow-up of discrepancy 1/r".into(),
        ));
    }
    let mut found: BTreeSet<Vec<i64>> = BTreeSet::new();
    for u in 1..r {
        if gcd(u, r) != 1 {
            continue;
        }
        let v: Vec<i64> = f.exponents().iter().map(|&x| (u * x).rem_euclid(r)).collect();
        for p in 0..3 {
            if v[p] != 1 {
                continue;
            }
            let (q, s) = match p {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            if v[q] + v[s] == r && gcd(v[q], r) == 1 {
                found.insert(v.clone());
            }
        }
    }
    match found.len() {
        0 => Err(QError::NotTerminal(action.to_string())),
        1 => WeightVector::new(r, &found.into_iter().next().expect("len 1")),
        _ => Err(QError::Internal(format!(
            "ambiguous normalised weight for {action}: {found:?}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn act(r: i64, a: &[i64]) -> QuotientAction {
        QuotientAction::new(r, a).unwrap()
    }
    fn wt(r: i64, b: &[i64]) -> WeightVector {
        WeightVector::new(r, b).unwrap()
    }

    // Brute-force terminality oracle: the age of every nontrivial element
    // exceeds 1 and no nontrivial element fixes a positive-dimensional locus.
    fn reid_tai_terminal(action: &QuotientAction) -> bool {
        let f = action.faithful();
        let r = f.r();
        for k in 1..r {
            let exps: Vec<i64> = f.exponents().iter().map(|&a| (k * a).rem_euclid(r)).collect();
            if exps.iter().any(|&e| e == 0) {
                return false; // fixes a coordinate subspace of positive dim
            }
            if f.age(k) <= rat(1) {
                return false;
            }
        }
        true
    }

    #[test]
    fn action_construction_and_reduction() {
        let a = act(3, &[4, -1, 1]);
        assert_eq!(a.exponents(), &[1, 2, 1]);
        assert!(QuotientAction::new(0, &[1, 1]).is_err());
        assert!(QuotientAction::new(2, &[1]).is_err());
        assert!(act(1, &[0, 0, 0]).is_trivial());
        assert_eq!(act(4, &[2, 2, 2]).faithful(), act(2, &[1, 1, 1]));
    }

    #[test]
    fn compatibility_witnesses() {
        // Kawamata weight on the quotient itself: lambda = 1, k = 0
        let a = act(3, &[1, 2, 1]);
        let w = wt(3, &[1, 2, 1]);
        let c = w.compatibility(&a).unwrap();
        assert_eq!(c.lambda, 1);
        assert_eq!(c.k, vec![0, 0, 0]);
        // r=1: lambda = 0, k = b
        let c = wt(1, &[2, 1, 1])
            .compatibility(&act(1, &[0, 0, 0]))
            .unwrap();
        assert_eq!(c.lambda, 0);
        assert_eq!(c.k, vec![2, 1, 1]);
        // incompatible: 1/2(1,0) with weight 1/2(1,1)
        assert!(wt(2, &[1, 1]).compatibility(&act(2, &[1, 0])).is_err());
    }

    #[test]
    fn chart_decomposition_trivial_cases() {
        // standard blow-up of A^3: all charts smooth
        let a = QuotientAction::trivial(3);
        let w = wt(1, &[1, 1, 1]);
        for i in 1..=3 {
            let c = chart_decomposition(&a, &w, i).unwrap();
            assert!(c.is_trivial(), "chart {i} should be trivial");
            assert_eq!(c.m, 1);
        }
        // 1/2(1,1,1) with its own weight: b_1 = 1 forces a trivial chart
        let a = act(2, &[1, 1, 1]);
        let w = wt(2, &[1, 1, 1]);
        let c = chart_decomposition(&a, &w, 1).unwrap();
        assert_eq!(c.order_tau, 1);
        assert!(c.is_trivial());
    }

    #[test]
    fn chart_decomposition_kawamata_chain_step() {
        // 1/3(1,2,1), weight 1/3(1,2,1), chart 2 => A^3 / (1/2)(1,1,1)
        let a = act(3, &[1, 2, 1]);
        let w = wt(3, &[1, 2, 1]);
        let c = chart_decomposition(&a, &w, 2).unwrap();
        assert_eq!(c.group_order, 2);
        assert_eq!(c.reduced.canonical(), act(2, &[1, 1, 1]).canonical());
        assert_eq!(c.m, 1);
    }

    #[test]
    fn tau_relation_holds() {
        // tau^{k_i} = tau'^{lambda} as elements of mu_{r b_i}, across a sweep
        for (a, w) in [
            (act(3, &[1, 2, 1]), wt(3, &[1, 2, 1])),
            (act(2, &[1, 1, 1]), wt(2, &[1, 1, 1])),
            (act(3, &[1, 2, 1, 0]), wt(3, &[4, 2, 1, 3])),
            (act(3, &[1, 2, 1, 0]), wt(3, &[1, 5, 1, 3])),
            (act(5, &[1, 4, 1]), wt(5, &[1, 4, 1])),
        ] {
            for i in 1..=a.n() {
                let c = chart_decomposition(&a, &w, i).unwrap();
                let d = c.tau_prime_modulus;
                let ki = c.k[i - 1];
                for j in 0..a.n() {
                    // tau^{k_i} has exponent r*k_i*tau_j in mu_{r b_i}
                    let lhs = (a.r() * ki * c.tau[j]).rem_euclid(d);
                    let rhs = (c.lambda * c.tau_prime[j]).rem_euclid(d);
                    assert_eq!(lhs, rhs, "relation fails at chart {i}, slot {j}");
                }
            }
        }
    }

    #[test]
    fn chart_group_order_oracle() {
        // group order equals b_i for faithful actions (covolume identity)
        let cases = [
            (act(3, &[1, 2, 1, 0]), wt(3, &[4, 2, 1, 3])),
            (act(3, &[1, 2, 1, 0]), wt(3, &[1, 5, 1, 3])),
            (act(7, &[1, 6, 3]), wt(7, &[5, 2, 1])),
            (act(1, &[0, 0, 0, 0]), wt(1, &[3, 2, 2, 1])),
        ];
        for (a, w) in cases {
            for i in 1..=a.n() {
                let c = chart_decomposition(&a, &w, i).unwrap();
                assert_eq!(c.group_order, w.entries()[i - 1], "at chart {i} of {a} {w}");
            }
        }
    }

    #[test]
    fn center_chart_examples() {
        let t = |a: &WeightVector, b: &WeightVector| -> Vec<usize> {
            center_chart_test(a, b).unwrap().into_iter().collect()
        };
        assert_eq!(t(&wt(1, &[1, 1, 1, 1]), &wt(1, &[2, 1, 1, 1])), vec![2, 3, 4]);
        assert_eq!(t(&wt(1, &[4, 2, 1, 1]), &wt(1, &[4, 3, 2, 1])), vec![1, 4]);
        let a = wt(3, &[4, 2, 1, 3]);
        assert_eq!(t(&a, &a), vec![1, 2, 3, 4]);
        assert!(center_chart_test(&wt(1, &[1, 1]), &wt(1, &[1, 1, 1])).is_err());
    }

    #[test]
    fn ambient_discrepancy_examples() {
        assert_eq!(ambient_discrepancy(&wt(2, &[1, 1, 1])), ratio(1, 2));
        assert_eq!(ambient_discrepancy(&wt(1, &[1, 1, 1, 1])), rat(3));
        assert_eq!(ambient_discrepancy(&wt(3, &[1, 2, 1])), ratio(1, 3));
    }

    #[test]
    fn exc_self_intersection_examples() {
        assert_eq!(exc_self_intersection(&wt(1, &[1, 1, 1]), 1), rat(1));
        assert_eq!(exc_self_intersection(&wt(2, &[1, 1, 1]), 1), rat(4));
        assert_eq!(exc_self_intersection(&wt(1, &[1, 1, 1, 1]), 1), rat(-1));
    }

    #[test]
    fn terminal_quotient_examples() {
        assert!(terminal_quotient_check(&act(2, &[1, 1, 1])).unwrap());
        assert!(!terminal_quotient_check(&act(4, &[1, 3, 2])).unwrap());
        assert!(terminal_quotient_check(&act(7, &[1, 6, 3])).unwrap());
        assert!(terminal_quotient_check(&QuotientAction::trivial(3)).unwrap());
        assert!(terminal_quotient_check(&act(2, &[1, 1])).is_err());
    }

    #[test]
    fn terminal_check_agrees_with_reid_tai_oracle() {
        // exhaustive sweep r <= 30 over all exponent triples
        for r in 1..=30 {
            for a1 in 0..r {
                for a2 in 0..r {
                    for a3 in 0..r {
                        let a = act(r, &[a1, a2, a3]);
                        let got = terminal_quotient_check(&a).unwrap();
                        let want = reid_tai_terminal(&a);
                        assert_eq!(
                            got, want,
                            "disagreement at 1/{r}({a1},{a2},{a3}): canonical-form {got}, Reid-Tai {want}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn kawamata_weight_examples() {
        assert_eq!(kawamata_weight(&act(2, &[1, 1, 1])).unwrap(), wt(2, &[1, 1, 1]));
        assert_eq!(kawamata_weight(&act(7, &[1, 6, 3])).unwrap(), wt(7, &[5, 2, 1]));
        assert_eq!(kawamata_weight(&act(3, &[1, 2, 1])).unwrap(), wt(3, &[1, 2, 1]));
        assert!(kawamata_weight(&QuotientAction::trivial(3)).is_err());
        assert!(kawamata_weight(&act(4, &[1, 3, 2])).is_err());
    }

    #[test]
    fn quasi_reflection_detection() {
        assert!(act(2, &[0, 0, 1]).has_quasi_reflection());
        assert!(!act(2, &[1, 1, 1]).has_quasi_reflection());
        assert!(!act(3, &[1, 2, 1]).has_quasi_reflection());
        assert!(act(4, &[0, 0, 2, 1]).has_quasi_reflection()); // square fixes hyperplane
        assert!(act(2, &[1, 1, 0]).has_positive_dim_fixed_locus());
        assert!(!act(2, &[1, 1, 0]).has_quasi_reflection());
    }

    #[test]
    fn restriction_is_faithful() {
        // drop the acted-on 4th slot of 1/3(1,2,1,0): stays order 3
        let a = act(3, &[1, 2, 1, 0]);
        assert_eq!(a.restrict(&[0, 1, 2]).unwrap(), act(3, &[1, 2, 1]));
        // restriction with a common factor reduces the order
        let a = act(4, &[2, 1, 2, 0]);
        assert_eq!(a.restrict(&[0, 2]).unwrap(), act(2, &[1, 1]));
    }

    #[test]
    fn canonical_presentation() {
        assert_eq!(act(7, &[1, 6, 3]).canonical(), act(7, &[3, 4, 5]).canonical());
        assert_ne!(act(7, &[1, 2, 4]).canonical(), act(7, &[1, 6, 3]).canonical());
        assert_eq!(act(5, &[2, 3, 2]).canonical(), act(5, &[1, 4, 1]).canonical());
    }
}
