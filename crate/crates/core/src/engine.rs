//! Delta-vectors and Ehrhart counting functions.
//!
//! Two independent routes compute the delta-vector of a simplex:
//!
//! * [`delta_from_box`] enumerates the integer points of the half-open
//!   fundamental parallelepiped spanned by the lifted vertices `(v_i, 1)`,
//!   graded by their last coordinate. The points are coset representatives of
//!   `Z^{d+1}` modulo the row lattice of the lifted matrix, read off from its
//!   Smith normal form.
//! * [`delta_from_counts`] applies the binomial transform to brute-force
//!   lattice point counts of the dilates `nP`, obtained by [`count_points`].
//!
//! The second route is exponential in `d` and serves as an oracle.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, AdjugateSolver, Rational};
use crate::polytope::{LatticeSimplex, Membership};

/// Default cap on brute-force work: candidate points for [`count_points`],
/// parallelepiped size for [`box_points`].
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// `(delta_0, ..., delta_d)` with `delta_0 = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeltaVector(Vec<u64>);

impl DeltaVector {
    pub fn new(entries: Vec<u64>) -> Result<Self> {
        match entries.first() {
            Some(1) => Ok(DeltaVector(entries)),
            Some(v) => Err(Error::Parameter(format!("delta_0 must be 1, got {v}"))),
            None => Err(Error::Parameter("empty delta-vector".into())),
        }
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// Normalized volume `sum delta_i`.
    pub fn sum(&self) -> u64 {
        self.0.iter().sum()
    }

    /// `s = max { i : delta_i != 0 }`.
    pub fn degree(&self) -> usize {
        self.0.iter().rposition(|&v| v != 0).unwrap_or(0)
    }

    pub fn with_trailing_zero(&self) -> DeltaVector {
        let mut e = self.0.clone();
        e.push(0);
        DeltaVector(e)
    }
}

impl fmt::Display for DeltaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// An integer point `sum r_i (v_i, 1)` of a fundamental parallelepiped.
///
/// For points of `S` every `r_i` lies in `[0, 1)`; for the interior set `S*`
/// returned by [`interior_box_points`] they lie in `(0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxPoint {
    pub point: Vec<BigInt>,
    pub degree: usize,
    pub coefficients: Vec<Rational>,
}

/// The integer points of the half-open parallelepiped, sorted by degree then
/// coordinates. The origin always comes first.
pub fn box_points(s: &LatticeSimplex) -> Result<Vec<BoxPoint>> {
    let m = s.lifted_matrix()?;
    let snf = smith_normal_form(&m)?;
    let order: BigInt = snf.diag.iter().product();
    if order.is_zero() {
        return Err(Error::Internal(
            "lifted matrix of a simplex is singular".into(),
        ));
    }
    if order > BigInt::from(DEFAULT_BUDGET) {
        return Err(Error::BudgetExceeded {
            needed: order.to_string(),
            budget: DEFAULT_BUDGET,
        });
    }
    let solver = AdjugateSolver::new(&m)?;
    let n = m.rows();
    let moduli: Vec<u64> = snf.diag.iter().map(|v| v.to_u64().unwrap()).collect();

    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut y = vec![0u64; n];
    loop {
        let y_big: Vec<BigInt> = y.iter().map(|&v| BigInt::from(v)).collect();
        let x = snf.right_inverse.left_apply(&y_big)?;
        let r = solver.solve_row(&x);
        let floors: Vec<BigInt> = r.iter().map(|c| c.floor().to_integer()).collect();
        let reduced: Vec<Rational> = r
            .iter()
            .zip(&floors)
            .map(|(c, f)| c - Rational::from_integer(f.clone()))
            .collect();
        let shift = m.left_apply(&floors)?;
        let point: Vec<BigInt> = x.iter().zip(&shift).map(|(a, b)| a - b).collect();
        let degree_sum: Rational = reduced.iter().sum();
        if !degree_sum.is_integer() || degree_sum.to_integer() != point[n - 1] {
            return Err(Error::Internal(format!(
                "parallelepiped point {point:?} has coefficient sum {degree_sum}"
            )));
        }
        let degree = point[n - 1]
            .to_usize()
            .filter(|&d| d < n)
            .ok_or_else(|| Error::Internal(format!("degree {} out of range", point[n - 1])))?;
        if seen.insert(reduced.clone()) {
            out.push(BoxPoint {
                point,
                degree,
                coefficients: reduced,
            });
        }
        if !advance(&mut y, &moduli) {
            break;
        }
    }
    if BigInt::from(out.len()) != order {
        return Err(Error::Internal(format!(
            "found {} parallelepiped points, expected {order}",
            out.len()
        )));
    }
    out.sort_by(|a, b| (a.degree, &a.point).cmp(&(b.degree, &b.point)));
    Ok(out)
}

/// Mixed-radix odometer; returns false after wrapping around.
fn advance(digits: &mut [u64], moduli: &[u64]) -> bool {
    for (d, &m) in digits.iter_mut().zip(moduli).rev() {
        *d += 1;
        if *d < m {
            return true;
        }
        *d = 0;
    }
    false
}

/// The set `S*` of interior parallelepiped points, obtained from `S` by the
/// complement map `r_i -> 1 - r_i` (the origin goes to `sum (v_i, 1)`).
pub fn interior_box_points(s: &LatticeSimplex) -> Result<Vec<BoxPoint>> {
    let m = s.lifted_matrix()?;
    let n = m.rows();
    let total: Vec<BigInt> = (0..n)
        .map(|c| (0..n).map(|r| m.get(r, c).clone()).sum())
        .collect();
    let mut out: Vec<BoxPoint> = box_points(s)?
        .into_iter()
        .map(|b| BoxPoint {
            point: total.iter().zip(&b.point).map(|(t, p)| t - p).collect(),
            degree: n - b.degree,
            coefficients: b.coefficients.iter().map(|c| Rational::one() - c).collect(),
        })
        .collect();
    out.sort_by(|a, b| (a.degree, &a.point).cmp(&(b.degree, &b.point)));
    Ok(out)
}

/// `delta_i` = number of parallelepiped points of degree `i`.
pub fn delta_from_box(s: &LatticeSimplex) -> Result<DeltaVector> {
    let mut delta = vec![0u64; s.dim() + 1];
    for b in box_points(s)? {
        delta[b.degree] += 1;
    }
    DeltaVector::new(delta)
}

/// `delta*_i` for `i = 0..=d+1` (entry 0 is always 0).
pub fn delta_star(s: &LatticeSimplex) -> Result<Vec<u64>> {
    let mut star = vec![0u64; s.dim() + 2];
    for b in interior_box_points(s)? {
        star[b.degree] += 1;
    }
    Ok(star)
}

/// Brute-force `|nP ∩ Z^N|`, or `|n(P - dP) ∩ Z^N|` when `strict`.
///
/// Scans the integer bounding box of `nP`. `n = 0` counts `{0}` (1 point)
/// when not strict and nothing when strict. Fails with
/// [`Error::BudgetExceeded`] if the box holds more than `budget` points.
pub fn count_points(s: &LatticeSimplex, n: u64, strict: bool, budget: u64) -> Result<u64> {
    if n == 0 {
        return Ok(u64::from(!strict));
    }
    let bbox = s.bounding_box(n);
    let size: BigInt = bbox.iter().map(|(lo, hi)| hi - lo + 1).product();
    if size > BigInt::from(budget) {
        return Err(Error::BudgetExceeded {
            needed: size.to_string(),
            budget,
        });
    }
    let membership = Membership::new(s)?;
    let limit = BigInt::from(i64::MAX / 4);
    let small: Option<Vec<(i64, i64)>> = bbox
        .iter()
        .map(|(lo, hi)| {
            if lo.abs() < limit && hi.abs() < limit {
                Some((lo.to_i64()?, hi.to_i64()?))
            } else {
                None
            }
        })
        .collect();
    let nn = i64::try_from(n).ok().filter(|_| small.is_some());
    match (small, nn) {
        (Some(ranges), Some(nn)) => count_small(&membership, &ranges, nn, strict),
        _ => count_big(&membership, &bbox, n, strict),
    }
}

fn count_small(m: &Membership<'_>, ranges: &[(i64, i64)], n: i64, strict: bool) -> Result<u64> {
    let Some((&(lo0, hi0), rest)) = ranges.split_first() else {
        return Ok(u64::from(m.contains_small(&[n], strict)?));
    };
    (lo0..=hi0)
        .into_par_iter()
        .map(|x0| {
            let mut p: Vec<i64> = std::iter::once(x0)
                .chain(rest.iter().map(|r| r.0))
                .chain(std::iter::once(n))
                .collect();
            let mut count = 0u64;
            loop {
                if m.contains_small(&p, strict)? {
                    count += 1;
                }
                // odometer over coordinates 1..N
                let mut k = rest.len();
                loop {
                    if k == 0 {
                        return Ok(count);
                    }
                    let (lo, hi) = rest[k - 1];
                    if p[k] < hi {
                        p[k] += 1;
                        break;
                    }
                    p[k] = lo;
                    k -= 1;
                }
            }
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))
}

fn count_big(m: &Membership<'_>, bbox: &[(BigInt, BigInt)], n: u64, strict: bool) -> Result<u64> {
    let mut p: Vec<BigInt> = bbox.iter().map(|r| r.0.clone()).collect();
    let mut count = 0u64;
    loop {
        if m.contains(&p, n, strict)? {
            count += 1;
        }
        let mut k = p.len();
        loop {
            if k == 0 {
                return Ok(count);
            }
            if p[k - 1] < bbox[k - 1].1 {
                p[k - 1] += 1;
                break;
            }
            p[k - 1] = bbox[k - 1].0.clone();
            k -= 1;
        }
    }
}

/// `C(a, k)` as the polynomial `a (a-1) ... (a-k+1) / k!`, valid for any
/// integer `a`.
pub fn binomial(a: &BigInt, k: usize) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for t in 0..k {
        num *= a - BigInt::from(t);
        den *= BigInt::from(t + 1);
    }
    num / den
}

/// Recovers the delta-vector from `i(P, 1), ..., i(P, d)` by reading off the
/// coefficients of `(1 - t)^{d+1} sum_n i(P, n) t^n`.
pub fn delta_from_counts(counts: &[u64], d: usize) -> Result<DeltaVector> {
    if counts.len() != d {
        return Err(Error::Dimension(format!(
            "need i(P,1..{d}), got {} counts",
            counts.len()
        )));
    }
    let count = |n: usize| -> BigInt {
        if n == 0 {
            BigInt::one()
        } else {
            BigInt::from(counts[n - 1])
        }
    };
    let mut delta = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let mut acc = BigInt::zero();
        for j in 0..=i {
            let term = binomial(&BigInt::from(d + 1), j) * count(i - j);
            if j.is_even() {
                acc += term;
            } else {
                acc -= term;
            }
        }
        let value = acc.to_u64().ok_or_else(|| Error::InconsistentCounts {
            index: i,
            value: acc.to_string(),
        })?;
        delta.push(value);
    }
    DeltaVector::new(delta)
}

/// `i(P, n) = sum_i delta_i C(n + d - i, d)`, for any integer `n`.
pub fn evaluate_ehrhart(delta: &DeltaVector, n: i64) -> BigInt {
    let d = delta.dim();
    delta
        .entries()
        .iter()
        .enumerate()
        .filter(|(_, &v)| v != 0)
        .map(|(i, &v)| {
            let top = BigInt::from(n) + BigInt::from(d) - BigInt::from(i);
            BigInt::from(v) * binomial(&top, d)
        })
        .sum()
}

/// `i*(P, n) = (-1)^d i(P, -n)` for `n >= 1`.
pub fn evaluate_interior(delta: &DeltaVector, n: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::Parameter("interior counts need n >= 1".into()));
    }
    let n = i64::try_from(n).map_err(|_| Error::Parameter(format!("n = {n} too large")))?;
    let mut v = evaluate_ehrhart(delta, -n);
    if delta.dim() % 2 == 1 {
        v = -v;
    }
    if v.is_negative() {
        return Err(Error::Internal(format!(
            "reciprocity gave a negative interior count {v} for {delta}"
        )));
    }
    Ok(v)
}

/// Coefficients of the Ehrhart polynomial in `n`, constant term first.
pub fn ehrhart_polynomial(delta: &DeltaVector) -> Vec<Rational> {
    let d = delta.dim();
    let mut acc = vec![BigInt::zero(); d + 1];
    for (i, &v) in delta.entries().iter().enumerate() {
        if v == 0 {
            continue;
        }
        // prod_{t=0}^{d-1} (n + d - i - t)
        let mut poly = vec![BigInt::one()];
        for t in 0..d {
            let c = BigInt::from(d as i64 - i as i64 - t as i64);
            let mut next = vec![BigInt::zero(); poly.len() + 1];
            for (k, a) in poly.iter().enumerate() {
                next[k] += a * &c;
                next[k + 1] += a;
            }
            poly = next;
        }
        for (a, p) in acc.iter_mut().zip(poly) {
            *a += p * BigInt::from(v);
        }
    }
    let fact: BigInt = (1..=d).map(BigInt::from).product();
    acc.into_iter()
        .map(|c| Rational::new(c, fact.clone()))
        .collect()
}
