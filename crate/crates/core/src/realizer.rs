//! Witness simplices for every realizable candidate of normalized volume at
//! most 3.
//!
//! Each candidate is reduced to a base simplex from one of a handful of
//! explicit vertex families, then padded to the target dimension by repeated
//! pyramids (each pyramid appends a zero to the delta-vector). Vertex
//! coordinates below are written 1-indexed in comments and stored 0-indexed.

use std::fmt;

use crate::classifier::{is_realizable, CandidateDelta, Verdict};
use crate::engine::{delta_from_box, DeltaVector};
use crate::error::{Error, Result};
use crate::polytope::LatticeSimplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Standard unimodular simplex.
    Unit,
    /// Segment `[0, v]` of length 2 or 3.
    SegmentVolV,
    /// Volume-2 odd-dimensional family, `v_d = e_1 + e_d`.
    Section2,
    /// Volume-3 variant with `v_d = 2 e_1 + e_d`.
    Section3Two,
    /// Volume-3 family in dimension `3k + 2`.
    LemmaFirst,
    /// Volume-3 family in dimension `2l + 2`.
    LemmaSecondStep1,
    /// Volume-3 family in dimension `3k + 2 + 2l`, `k >= 1`.
    LemmaSecondStep2,
    /// Triangle `conv{(0,0), (2,1), (1,2)}`.
    Triangle111,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Unit => "UNIT",
            Family::SegmentVolV => "SEGMENT_VOL_V",
            Family::Section2 => "SECTION2",
            Family::Section3Two => "SECTION3_TWO",
            Family::LemmaFirst => "LEMMA_FIRST",
            Family::LemmaSecondStep1 => "LEMMA_SECOND_STEP1",
            Family::LemmaSecondStep2 => "LEMMA_SECOND_STEP2",
            Family::Triangle111 => "TRIANGLE_111",
        }
    }
}

/// How a witness was built: a base family instance plus pyramid lifts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionPlan {
    pub family: Family,
    /// Family parameters in a fixed order, e.g. `[("k", 1), ("l", 1)]`.
    pub parameters: Vec<(&'static str, usize)>,
    pub base_dim: usize,
    pub lifts: usize,
}

impl ConstructionPlan {
    pub fn target_dim(&self) -> usize {
        self.base_dim + self.lifts
    }
}

impl fmt::Display for ConstructionPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "family={}", self.family.name())?;
        for (k, v) in &self.parameters {
            write!(f, " {k}={v}")?;
        }
        write!(f, " base_dim={} lifts={}", self.base_dim, self.lifts)
    }
}

/// Builds a simplex from 0/1/2 rows; row 0 is the origin and is implicit.
fn from_rows(d: usize, rows: Vec<Vec<i64>>) -> Result<LatticeSimplex> {
    debug_assert_eq!(rows.len(), d);
    let mut vertices = vec![vec![0i64; d]];
    vertices.extend(rows);
    LatticeSimplex::from_coords(&vertices)
}

fn ones_at(d: usize, positions: &[usize]) -> Vec<i64> {
    let mut v = vec![0i64; d];
    for &p in positions {
        v[p - 1] += 1;
    }
    v
}

pub fn construct_unit(d: usize) -> Result<LatticeSimplex> {
    from_rows(d, (1..=d).map(|i| ones_at(d, &[i])).collect())
}

/// `v_0 = 0`, `v_i = e_i + e_{i+1}` for `1 <= i < d`, `v_d = c e_1 + e_d`.
fn chain_family(d: usize, corner: i64) -> Result<LatticeSimplex> {
    if d < 3 || d.is_multiple_of(2) {
        return Err(Error::Parameter(format!(
            "family needs an odd dimension >= 3, got {d}"
        )));
    }
    let mut rows: Vec<Vec<i64>> = (1..d).map(|i| ones_at(d, &[i, i + 1])).collect();
    let mut last = ones_at(d, &[d]);
    last[0] += corner;
    rows.push(last);
    from_rows(d, rows)
}

/// Normalized volume 2, delta nonzero at `(d + 1) / 2`.
pub fn construct_section2(d: usize) -> Result<LatticeSimplex> {
    chain_family(d, 1)
}

/// Normalized volume 3, `delta_{(d+1)/2} = 2`.
pub fn construct_section3_two(d: usize) -> Result<LatticeSimplex> {
    chain_family(d, 2)
}

pub fn construct_segment(volume: u64) -> Result<LatticeSimplex> {
    match volume {
        2 | 3 => LatticeSimplex::from_coords(&[[0], [volume as i64]]),
        _ => Err(Error::Parameter(format!(
            "segment base supports volume 2 or 3, got {volume}"
        ))),
    }
}

pub fn construct_triangle_111() -> Result<LatticeSimplex> {
    LatticeSimplex::from_coords(&[[0, 0], [2, 1], [1, 2]])
}

/// Dimension `d = 3k + 2`, delta `(1, 0^k, 1, 0^k, 1, 0^k)`.
pub fn construct_lemma_first(k: usize) -> Result<LatticeSimplex> {
    if k == 0 {
        return Err(Error::Parameter(
            "k must be >= 1; the k = 0 case is the triangle".into(),
        ));
    }
    let d = 3 * k + 2;
    let mut rows: Vec<Vec<i64>> = (1..=d - 2)
        .map(|i| ones_at(d, &[i, i + 1, i + 2]))
        .collect();
    rows.push(ones_at(d, &[1, d - 1, d]));
    rows.push(ones_at(d, &[1, 2, d]));
    from_rows(d, rows)
}

/// Dimension `3k + 2 + 2l`, delta nonzero at `k + l + 1` and `2k + l + 2`.
pub fn construct_lemma_second(k: usize, l: usize) -> Result<LatticeSimplex> {
    if l == 0 {
        return Err(Error::Parameter(
            "l must be >= 1; the l = 0 case is the first family".into(),
        ));
    }
    if k == 0 {
        second_first_step(l)
    } else {
        second_second_step(k, l)
    }
}

fn second_first_step(l: usize) -> Result<LatticeSimplex> {
    let d = 2 * l + 2;
    let mut rows = Vec::with_capacity(d);
    let mut v1 = ones_at(d, &[2]);
    v1[0] = 2;
    rows.push(v1);
    let mut v2 = ones_at(d, &[3]);
    v2[1] = 2;
    rows.push(v2);
    for i in 3..=2 * l + 1 {
        rows.push(ones_at(d, &[i, i + 1]));
    }
    rows.push(ones_at(d, &[1, d]));
    from_rows(d, rows)
}

fn second_second_step(k: usize, l: usize) -> Result<LatticeSimplex> {
    let head = 3 * k + 2;
    let d = head + 2 * l;
    // Tail block over coordinates head+1..=d.
    let all_ones: Vec<usize> = (head + 1..=d).collect();
    let alternating: Vec<usize> = (head + 1..=d).step_by(2).collect();
    let with = |mut front: Vec<usize>, tail: &[usize]| {
        front.extend_from_slice(tail);
        ones_at(d, &front)
    };

    let mut rows = Vec::with_capacity(d);
    rows.push(with(vec![1, 2, 3], &all_ones));
    rows.push(with(vec![2, 3, 4], &all_ones));
    for i in 3..=3 * k {
        rows.push(with(vec![i, i + 1, i + 2], &alternating));
    }
    rows.push(with(vec![1, 3 * k + 1, head], &alternating));
    rows.push(with(vec![1, 2, head], &alternating));
    for i in head + 1..=d {
        let offset = i - head;
        let tail: Vec<usize> = if offset % 2 == 1 {
            // 1 at i, then 0,1,0,1,... : ones at i, i+2, ...
            (i..=d).step_by(2).collect()
        } else {
            // 1 at i, then 1,0,1,0,... : ones at i, i+1, i+3, ...
            std::iter::once(i).chain((i + 1..d).step_by(2)).collect()
        };
        rows.push(ones_at(d, &tail));
    }
    from_rows(d, rows)
}

/// Builds a witness for a candidate the classifier accepts.
pub fn realize(c: &CandidateDelta) -> Result<(LatticeSimplex, ConstructionPlan)> {
    match is_realizable(c) {
        Verdict::Yes => {}
        other => {
            return Err(Error::Parameter(format!(
                "candidate {c} is not realizable here: {other}"
            )))
        }
    }
    let plan = plan_for(c)?;
    if plan.base_dim > c.dim() {
        return Err(Error::Internal(format!(
            "plan {plan} needs base dimension above {}",
            c.dim()
        )));
    }
    let base = build_base(&plan)?;
    Ok((base.lift(plan.lifts), plan))
}

/// Like [`realize`], then recomputes the delta-vector of the witness and
/// checks it against the candidate.
pub fn realize_verified(c: &CandidateDelta) -> Result<(LatticeSimplex, ConstructionPlan)> {
    let (simplex, plan) = realize(c)?;
    let got = delta_from_box(&simplex)?;
    if CandidateDelta::from(&got) != *c {
        return Err(Error::Internal(format!(
            "witness built by {plan} has delta {got}, expected {c}"
        )));
    }
    Ok((simplex, plan))
}

/// Checks a witness: full-dimensional and with the expected delta-vector.
pub fn verify(simplex: &LatticeSimplex, expected: &DeltaVector) -> Result<bool> {
    Ok(simplex.is_full_dimensional() && delta_from_box(simplex)? == *expected)
}

fn plan_for(c: &CandidateDelta) -> Result<ConstructionPlan> {
    let d = c.dim();
    let e = c.entries();
    let support: Vec<usize> = (1..=d).filter(|&i| e[i] != 0).collect();
    let plan = |family, parameters: Vec<(&'static str, usize)>, base_dim: usize| ConstructionPlan {
        family,
        parameters,
        base_dim,
        lifts: d.saturating_sub(base_dim),
    };
    let odd_base = |i: usize, vol: usize| {
        if i == 1 {
            plan(Family::SegmentVolV, vec![("volume", vol)], 1)
        } else {
            let family = if vol == 2 {
                Family::Section2
            } else {
                Family::Section3Two
            };
            plan(family, vec![("d", 2 * i - 1)], 2 * i - 1)
        }
    };
    Ok(match (c.sum(), support.as_slice()) {
        (1, []) => plan(Family::Unit, vec![("d", d)], d),
        (2, &[i]) if e[i] == 1 => odd_base(i, 2),
        (3, &[i]) if e[i] == 2 => odd_base(i, 3),
        (3, &[1, 2]) => plan(Family::Triangle111, vec![], 2),
        (3, &[m, n]) if 1 < m && m < n && n < d => {
            let p = m - 1;
            let q = n - m - 1;
            if p == q {
                plan(Family::LemmaFirst, vec![("k", q)], 3 * q + 2)
            } else if q == 0 {
                plan(
                    Family::LemmaSecondStep1,
                    vec![("k", 0), ("l", p)],
                    2 * p + 2,
                )
            } else {
                plan(
                    Family::LemmaSecondStep2,
                    vec![("k", q), ("l", p - q)],
                    3 * q + 2 + 2 * (p - q),
                )
            }
        }
        _ => {
            return Err(Error::Internal(format!(
                "accepted candidate {c} matches no construction"
            )))
        }
    })
}

fn build_base(plan: &ConstructionPlan) -> Result<LatticeSimplex> {
    let param = |name: &str| {
        plan.parameters
            .iter()
            .find(|(k, _)| *k == name)
            .map(|(_, v)| *v)
            .ok_or_else(|| Error::Internal(format!("plan lacks parameter {name}")))
    };
    match plan.family {
        Family::Unit => construct_unit(plan.base_dim),
        Family::SegmentVolV => construct_segment(param("volume")? as u64),
        Family::Section2 => construct_section2(param("d")?),
        Family::Section3Two => construct_section3_two(param("d")?),
        Family::Triangle111 => construct_triangle_111(),
        Family::LemmaFirst => construct_lemma_first(param("k")?),
        Family::LemmaSecondStep1 | Family::LemmaSecondStep2 => {
            construct_lemma_second(param("k")?, param("l")?)
        }
    }
}
