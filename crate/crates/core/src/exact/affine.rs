//! Affine and polynomial maps between coordinate spaces.

use num_traits::{One, Zero};

use super::poly::MultiPoly;
use super::rational::Q;
use crate::error::{Error, Result};

/// `x ↦ matrix·x + offset`, with `matrix` of shape `n_out × n_in`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap {
    n_in: usize,
    matrix: Vec<Vec<Q>>,
    offset: Vec<Q>,
}

impl AffineMap {
    pub fn new(matrix: Vec<Vec<Q>>, offset: Vec<Q>) -> Result<Self> {
        if matrix.len() != offset.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} matrix rows but offset of length {}",
                matrix.len(),
                offset.len()
            )));
        }
        let n_in = matrix.first().map(Vec::len).unwrap_or(0);
        if matrix.iter().any(|r| r.len() != n_in) {
            return Err(Error::DimensionMismatch("ragged matrix".into()));
        }
        Ok(AffineMap {
            n_in,
            matrix,
            offset,
        })
    }

    /// A map with no output coordinates still needs to know its input width.
    pub fn with_input_dim(n_in: usize, matrix: Vec<Vec<Q>>, offset: Vec<Q>) -> Result<Self> {
        let mut m = Self::new(matrix, offset)?;
        if m.matrix.is_empty() {
            m.n_in = n_in;
        } else if m.n_in != n_in {
            return Err(Error::DimensionMismatch("declared input width".into()));
        }
        Ok(m)
    }

    pub fn identity(n: usize) -> Self {
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
            .collect();
        AffineMap {
            n_in: n,
            matrix,
            offset: vec![Q::zero(); n],
        }
    }

    pub fn constant(n_in: usize, value: Vec<Q>) -> Self {
        AffineMap {
            n_in,
            matrix: vec![vec![Q::zero(); n_in]; value.len()],
            offset: value,
        }
    }

    /// The chart `t ↦ p_0 + Σ_i t_i (p_i − p_0)` of the simplex with the given vertices.
    pub fn simplex_chart(points: &[Vec<Q>]) -> Result<Self> {
        let p0 = points
            .first()
            .ok_or_else(|| Error::DimensionMismatch("simplex without vertices".into()))?;
        let m = p0.len();
        let k = points.len() - 1;
        if points.iter().any(|p| p.len() != m) {
            return Err(Error::DimensionMismatch("vertices of mixed dimension".into()));
        }
        let matrix = (0..m)
            .map(|r| (1..=k).map(|i| &points[i][r] - &p0[r]).collect())
            .collect();
        Self::with_input_dim(k, matrix, p0.clone())
    }

    pub fn n_in(&self) -> usize {
        self.n_in
    }

    pub fn n_out(&self) -> usize {
        self.offset.len()
    }

    pub fn matrix(&self) -> &[Vec<Q>] {
        &self.matrix
    }

    pub fn offset(&self) -> &[Q] {
        &self.offset
    }

    pub fn apply(&self, x: &[Q]) -> Result<Vec<Q>> {
        if x.len() != self.n_in {
            return Err(Error::Arity {
                expected: self.n_in,
                got: x.len(),
            });
        }
        Ok(self
            .matrix
            .iter()
            .zip(&self.offset)
            .map(|(row, c)| row.iter().zip(x).fold(c.clone(), |acc, (a, b)| acc + a * b))
            .collect())
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AffineMap) -> Result<AffineMap> {
        if inner.n_out() != self.n_in {
            return Err(Error::DimensionMismatch(format!(
                "composing {}→{} after {}→{}",
                self.n_in,
                self.n_out(),
                inner.n_in,
                inner.n_out()
            )));
        }
        let matrix = self
            .matrix
            .iter()
            .map(|row| {
                (0..inner.n_in)
                    .map(|j| {
                        row.iter()
                            .zip(&inner.matrix)
                            .fold(Q::zero(), |acc, (a, r)| acc + a * &r[j])
                    })
                    .collect()
            })
            .collect();
        let offset = self.apply(&inner.offset)?;
        AffineMap::with_input_dim(inner.n_in, matrix, offset)
    }

    pub fn to_poly_map(&self) -> PolyMap {
        let comps = self
            .matrix
            .iter()
            .zip(&self.offset)
            .map(|(row, c)| {
                let mut p = MultiPoly::constant(self.n_in, c.clone());
                for (i, a) in row.iter().enumerate() {
                    p = &p + &MultiPoly::var(self.n_in, i).unwrap().scale(a);
                }
                p
            })
            .collect();
        PolyMap {
            n_in: self.n_in,
            comps,
        }
    }
}

/// A map whose components are polynomials in `n_in` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMap {
    n_in: usize,
    comps: Vec<MultiPoly>,
}

impl PolyMap {
    pub fn new(n_in: usize, comps: Vec<MultiPoly>) -> Result<Self> {
        if let Some(p) = comps.iter().find(|p| p.vars() != n_in) {
            return Err(Error::VarMismatch {
                left: n_in,
                right: p.vars(),
            });
        }
        Ok(PolyMap { n_in, comps })
    }

    pub fn n_in(&self) -> usize {
        self.n_in
    }

    pub fn n_out(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[MultiPoly] {
        &self.comps
    }

    pub fn apply(&self, x: &[Q]) -> Result<Vec<Q>> {
        self.comps.iter().map(|p| p.eval(x)).collect()
    }
}
