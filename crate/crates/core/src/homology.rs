//! Finite chain complexes of exact matrices and reduced (co)homology of
//! simplicial complexes.

use std::fmt;

use serde::Serialize;

use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, FieldSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Differentials lower the degree by one.
    Homological,
    /// Differentials raise the degree by one.
    Cohomological,
}

/// A bounded complex of finite-dimensional vector spaces.
///
/// `differentials[j]` is the map out of degree `lo + j`, shaped
/// `target dim × source dim`; maps leaving the range have a zero-dimensional
/// target.
#[derive(Clone, Debug)]
pub struct FiniteChainComplex {
    field: FieldSpec,
    direction: Direction,
    lo: i64,
    dims: Vec<usize>,
    differentials: Vec<ExactMatrix>,
}

impl FiniteChainComplex {
    pub fn new(
        field: FieldSpec,
        direction: Direction,
        lo: i64,
        dims: Vec<usize>,
        differentials: Vec<ExactMatrix>,
    ) -> Result<Self> {
        if dims.len() != differentials.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} degrees but {} differentials",
                dims.len(),
                differentials.len()
            )));
        }
        let complex = FiniteChainComplex {
            field,
            direction,
            lo,
            dims,
            differentials,
        };
        for (j, d) in complex.differentials.iter().enumerate() {
            let degree = lo + j as i64;
            let target = complex.dim(complex.target_of(degree));
            if d.field() != field || d.rows() != target || d.cols() != complex.dims[j] {
                return Err(Error::ShapeMismatch(format!(
                    "differential out of degree {degree} is {}x{} over {}, expected {}x{} over {}",
                    d.rows(),
                    d.cols(),
                    d.field(),
                    target,
                    complex.dims[j],
                    field
                )));
            }
        }
        Ok(complex)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    /// Dimension of the term in `degree`; zero outside the range.
    pub fn dim(&self, degree: i64) -> usize {
        self.index(degree).map_or(0, |j| self.dims[j])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    fn index(&self, degree: i64) -> Option<usize> {
        usize::try_from(degree - self.lo)
            .ok()
            .filter(|&j| j < self.dims.len())
    }

    fn target_of(&self, degree: i64) -> i64 {
        match self.direction {
            Direction::Homological => degree - 1,
            Direction::Cohomological => degree + 1,
        }
    }

    /// The differential leaving `degree`, if `degree` is in range.
    pub fn differential_from(&self, degree: i64) -> Option<&ExactMatrix> {
        self.index(degree).map(|j| &self.differentials[j])
    }

    /// Checks that consecutive differentials compose to zero.
    pub fn check_composite_zero(&self) -> Result<()> {
        for j in 0..self.dims.len() {
            let degree = self.lo + j as i64;
            let Some(next) = self.differential_from(self.target_of(degree)) else {
                continue;
            };
            let composite = next.multiply(&self.differentials[j])?;
            if !composite.is_zero() {
                return Err(Error::Invariant(format!(
                    "differentials out of degrees {degree} and {} do not compose to zero",
                    self.target_of(degree)
                )));
            }
        }
        Ok(())
    }

    /// The dual complex: transposed differentials, opposite direction.
    pub fn dual(&self) -> FiniteChainComplex {
        let direction = match self.direction {
            Direction::Homological => Direction::Cohomological,
            Direction::Cohomological => Direction::Homological,
        };
        let differentials = (0..self.dims.len())
            .map(|j| {
                let degree = self.lo + j as i64;
                // The dual map out of `degree` is the transpose of the map into it.
                let source = match self.direction {
                    Direction::Homological => degree + 1,
                    Direction::Cohomological => degree - 1,
                };
                match self.differential_from(source) {
                    Some(d) => d.transpose(),
                    None => ExactMatrix::zeros(self.field, 0, self.dims[j]),
                }
            })
            .collect();
        FiniteChainComplex {
            field: self.field,
            direction,
            lo: self.lo,
            dims: self.dims.clone(),
            differentials,
        }
    }
}

/// Dimensions indexed by degree. Degrees outside the stored range count as
/// zero, and equality compares all degrees.
#[derive(Clone, Serialize)]
pub struct BettiVector {
    pub lo: i64,
    pub dims: Vec<usize>,
}

impl BettiVector {
    pub fn new(lo: i64, dims: Vec<usize>) -> Self {
        BettiVector { lo, dims }
    }

    pub fn get(&self, degree: i64) -> usize {
        usize::try_from(degree - self.lo)
            .ok()
            .and_then(|j| self.dims.get(j).copied())
            .unwrap_or(0)
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|d| *d == 0)
    }

    /// Degrees with nonzero dimension, increasing.
    pub fn support(&self) -> Vec<i64> {
        (self.lo..=self.hi())
            .filter(|d| self.get(*d) != 0)
            .collect()
    }

    pub fn scaled(&self, g: usize) -> BettiVector {
        BettiVector {
            lo: self.lo,
            dims: self.dims.iter().map(|d| d * g).collect(),
        }
    }

    /// `Σ (−1)^i dim_i`.
    pub fn euler_characteristic(&self) -> i64 {
        (self.lo..=self.hi())
            .map(|d| sign(d) * self.get(d) as i64)
            .sum()
    }
}

impl PartialEq for BettiVector {
    fn eq(&self, other: &Self) -> bool {
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        (lo..=hi).all(|d| self.get(d) == other.get(d))
    }
}

impl Eq for BettiVector {}

impl fmt::Debug for BettiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BettiVector(from {}: {:?})", self.lo, self.dims)
    }
}

fn sign(degree: i64) -> i64 {
    if degree.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `dim H = dim ker(out) − rank(in)` in every degree.
pub fn homology_dims(complex: &FiniteChainComplex) -> Result<BettiVector> {
    complex.check_composite_zero()?;
    let ranks: Vec<usize> = complex
        .differentials
        .iter()
        .map(ExactMatrix::rank)
        .collect();
    let rank_out = |degree: i64| complex.index(degree).map_or(0, |j| ranks[j]);
    let dims = (complex.lo..=complex.hi())
        .map(|degree| {
            let incoming = match complex.direction {
                Direction::Homological => degree + 1,
                Direction::Cohomological => degree - 1,
            };
            complex.dim(degree) - rank_out(degree) - rank_out(incoming)
        })
        .collect();
    Ok(BettiVector {
        lo: complex.lo,
        dims,
    })
}

/// Column of `∂σ = Σ_j (−1)^j σ_j` for the deletion of the j-th vertex.
fn boundary_matrix(field: FieldSpec, rows: &[Face], cols: &[Face]) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(field, rows.len(), cols.len());
    for (c, sigma) in cols.iter().enumerate() {
        for (j, v) in sigma.vertices().enumerate() {
            let face = sigma.without(v);
            let r = rows.binary_search(&face).expect("faces of faces are faces");
            m.set_integer(r, c, if j % 2 == 0 { 1 } else { -1 });
        }
    }
    m
}

/// The augmented chain complex, degrees −1 through `dim Σ`, with bases in
/// graded-lex face order and `C_{−1}` spanned by ∅.
pub fn augmented_chain_complex(
    complex: &SimplicialComplex,
    field: FieldSpec,
) -> FiniteChainComplex {
    let top = complex.dim();
    let bases: Vec<Vec<Face>> = (-1..=top).map(|d| complex.faces_of_dim(d)).collect();
    let dims = bases.iter().map(Vec::len).collect();
    let differentials = (0..bases.len())
        .map(|j| {
            if j == 0 {
                ExactMatrix::zeros(field, 0, 1)
            } else {
                boundary_matrix(field, &bases[j - 1], &bases[j])
            }
        })
        .collect();
    FiniteChainComplex {
        field,
        direction: Direction::Homological,
        lo: -1,
        dims,
        differentials,
    }
}

/// The augmented cochain complex, with `∂̄φ = φ ∘ ∂`.
pub fn augmented_cochain_complex(
    complex: &SimplicialComplex,
    field: FieldSpec,
) -> FiniteChainComplex {
    augmented_chain_complex(complex, field).dual()
}

pub fn reduced_homology(complex: &SimplicialComplex, field: FieldSpec) -> BettiVector {
    homology_dims(&augmented_chain_complex(complex, field)).expect("∂∘∂ = 0 on simplicial chains")
}

pub fn reduced_cohomology(complex: &SimplicialComplex, field: FieldSpec) -> BettiVector {
    homology_dims(&augmented_cochain_complex(complex, field))
        .expect("∂̄∘∂̄ = 0 on simplicial cochains")
}
