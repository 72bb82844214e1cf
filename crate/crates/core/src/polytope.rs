//! Integral simplices, exact dilate membership, and pyramid lifting.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{
    determinant, first_dependent, solve_overdetermined, AdjugateSolver, IntegerMatrix, Rational,
    ScaledCoords, Solution,
};

/// An integral simplex: `d + 1` affinely independent points of `Z^N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeSimplex {
    ambient_dim: usize,
    vertices: Vec<Vec<BigInt>>,
}

impl LatticeSimplex {
    pub fn new(vertices: Vec<Vec<BigInt>>) -> Result<Self> {
        let Some(first) = vertices.first() else {
            return Err(Error::Parameter(
                "a simplex needs at least one vertex".into(),
            ));
        };
        let ambient_dim = first.len();
        if let Some(i) = vertices.iter().position(|v| v.len() != ambient_dim) {
            return Err(Error::Dimension(format!(
                "vertex {i} has {} coordinates, expected {ambient_dim}",
                vertices[i].len()
            )));
        }
        let diffs: Vec<Vec<BigInt>> = vertices[1..]
            .iter()
            .map(|v| v.iter().zip(first).map(|(a, b)| a - b).collect())
            .collect();
        if let Some(i) = first_dependent(&diffs) {
            return Err(Error::Degenerate { index: i + 1 });
        }
        Ok(LatticeSimplex {
            ambient_dim,
            vertices,
        })
    }

    /// Convenience constructor from small integer coordinates.
    pub fn from_coords<R: AsRef<[i64]>>(vertices: &[R]) -> Result<Self> {
        Self::new(
            vertices
                .iter()
                .map(|v| v.as_ref().iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Affine dimension `d`.
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertices(&self) -> &[Vec<BigInt>] {
        &self.vertices
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.ambient_dim == self.dim()
    }

    /// The `(d+1) x (d+1)` matrix with rows `(v_i, 1)`.
    pub fn lifted_matrix(&self) -> Result<IntegerMatrix> {
        if !self.is_full_dimensional() {
            return Err(Error::Dimension(format!(
                "lifted matrix needs a full-dimensional simplex, got d = {} in Z^{}",
                self.dim(),
                self.ambient_dim
            )));
        }
        let rows: Vec<Vec<BigInt>> = self
            .vertices
            .iter()
            .map(|v| {
                v.iter()
                    .cloned()
                    .chain(std::iter::once(BigInt::from(1)))
                    .collect()
            })
            .collect();
        IntegerMatrix::from_rows(&rows)
    }

    /// `d! vol(P)`, the absolute determinant of the lifted matrix.
    pub fn normalized_volume(&self) -> Result<BigInt> {
        Ok(determinant(&self.lifted_matrix()?)?.abs())
    }

    /// Pyramid over `self` with apex `e_{N+1}`; the base sits at height 0.
    pub fn pyramid(&self) -> LatticeSimplex {
        let mut vertices: Vec<Vec<BigInt>> = self
            .vertices
            .iter()
            .map(|v| {
                v.iter()
                    .cloned()
                    .chain(std::iter::once(BigInt::zero()))
                    .collect()
            })
            .collect();
        let mut apex = vec![BigInt::zero(); self.ambient_dim + 1];
        apex[self.ambient_dim] = BigInt::from(1);
        vertices.push(apex);
        LatticeSimplex {
            ambient_dim: self.ambient_dim + 1,
            vertices,
        }
    }

    /// Applies [`pyramid`](Self::pyramid) `times` times.
    pub fn lift(&self, times: usize) -> LatticeSimplex {
        (0..times).fold(self.clone(), |s, _| s.pyramid())
    }

    /// Whether `p` lies in `nP` (or in the interior `n(P - dP)` when `strict`).
    ///
    /// Interior is taken relative to the affine hull of `nP`.
    pub fn contains(&self, p: &[BigInt], n: u64, strict: bool) -> Result<bool> {
        Membership::new(self)?.contains(p, n, strict)
    }

    /// Exact coefficients `s_i` with `(p, n) = sum s_i (v_i, 1)`, or `None`
    /// if `p` is off the affine hull of `nP`.
    pub fn barycentric(&self, p: &[BigInt], n: u64) -> Result<Option<Vec<Rational>>> {
        self.check_point(p)?;
        let system = self.column_system();
        let rhs: Vec<BigInt> = p
            .iter()
            .cloned()
            .chain(std::iter::once(BigInt::from(n)))
            .collect();
        match solve_overdetermined(&system, &rhs)? {
            Solution::Unique(x) => Ok(Some(x)),
            Solution::Inconsistent => Ok(None),
            Solution::RankDeficient => Err(Error::Internal(
                "validated simplex produced a rank-deficient system".into(),
            )),
        }
    }

    /// Integer bounding box of `nP`, one inclusive range per coordinate.
    pub fn bounding_box(&self, n: u64) -> Vec<(BigInt, BigInt)> {
        let n = BigInt::from(n);
        (0..self.ambient_dim)
            .map(|c| {
                let lo = self.vertices.iter().map(|v| &v[c]).min().unwrap();
                let hi = self.vertices.iter().map(|v| &v[c]).max().unwrap();
                (lo * &n, hi * &n)
            })
            .collect()
    }

    fn check_point(&self, p: &[BigInt]) -> Result<()> {
        if p.len() != self.ambient_dim {
            return Err(Error::Dimension(format!(
                "point has {} coordinates, simplex lives in Z^{}",
                p.len(),
                self.ambient_dim
            )));
        }
        Ok(())
    }

    /// `(N+1) x (d+1)` matrix whose columns are `(v_i, 1)`.
    fn column_system(&self) -> IntegerMatrix {
        let rows = self.ambient_dim + 1;
        let cols = self.vertices.len();
        let mut m = IntegerMatrix::zeros(rows, cols);
        for (j, v) in self.vertices.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                m.set(i, j, x.clone());
            }
            m.set(self.ambient_dim, j, BigInt::from(1));
        }
        m
    }
}

/// Reusable membership test for the dilates of one simplex.
pub(crate) struct Membership<'a> {
    simplex: &'a LatticeSimplex,
    fast: Option<(AdjugateSolver, bool)>,
}

impl<'a> Membership<'a> {
    pub(crate) fn new(simplex: &'a LatticeSimplex) -> Result<Self> {
        let fast = if simplex.is_full_dimensional() {
            let solver = AdjugateSolver::new(&simplex.lifted_matrix()?)?;
            let positive = solver.det().is_positive();
            Some((solver, positive))
        } else {
            None
        };
        Ok(Membership { simplex, fast })
    }

    pub(crate) fn contains(&self, p: &[BigInt], n: u64, strict: bool) -> Result<bool> {
        if n == 0 {
            return Err(Error::Parameter("dilation factor must be positive".into()));
        }
        self.simplex.check_point(p)?;
        match &self.fast {
            Some((solver, positive)) => {
                let x: Vec<BigInt> = p
                    .iter()
                    .cloned()
                    .chain(std::iter::once(BigInt::from(n)))
                    .collect();
                let coords = ScaledCoords::Big(solver.scaled(&x));
                Ok(coords.all_nonnegative(*positive, strict))
            }
            None => Ok(self.simplex.barycentric(p, n)?.is_some_and(|r| {
                r.iter().all(|c| {
                    if strict {
                        c.is_positive()
                    } else {
                        !c.is_negative()
                    }
                })
            })),
        }
    }

    /// Fast path for points given as `i64` with the dilation appended.
    pub(crate) fn contains_small(&self, lifted_point: &[i64], strict: bool) -> Result<bool> {
        match &self.fast {
            Some((solver, positive)) => Ok(solver
                .scaled_small(lifted_point)
                .all_nonnegative(*positive, strict)),
            None => {
                let (p, n) = lifted_point.split_at(lifted_point.len() - 1);
                let p: Vec<BigInt> = p.iter().map(|&x| BigInt::from(x)).collect();
                self.contains(&p, n[0] as u64, strict)
            }
        }
    }
}
