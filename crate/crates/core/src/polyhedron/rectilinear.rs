//! Maps between polyhedra that are affine on each simplex.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::Zero;

use super::{Polyhedron, Simplex};
use crate::error::{Error, Result};
use crate::exact::affine::AffineMap;
use crate::exact::rational::Q;

/// A continuous map `|K| → |L|` that is affine on every simplex of `K` and
/// sends each simplex into a simplex of `L`. It is determined by the images
/// of the vertices of `K`.
#[derive(Clone, Debug)]
pub struct RectilinearMap {
    source: Arc<Polyhedron>,
    target: Arc<Polyhedron>,
    images: Vec<Vec<Q>>,
    image_carriers: Vec<Simplex>,
}

fn union(simplices: impl IntoIterator<Item = Simplex>) -> Simplex {
    let set: BTreeSet<usize> = simplices.into_iter().flatten().collect();
    set.into_iter().collect()
}

impl RectilinearMap {
    /// Build from the image point of every source vertex.
    pub fn from_vertex_images(
        source: Arc<Polyhedron>,
        target: Arc<Polyhedron>,
        images: Vec<Vec<Q>>,
    ) -> Result<Self> {
        if images.len() != source.num_vertices() {
            return Err(Error::Arity {
                expected: source.num_vertices(),
                got: images.len(),
            });
        }
        let mut image_carriers = Vec::with_capacity(images.len());
        for (v, p) in images.iter().enumerate() {
            if p.len() != target.ambient_dim() {
                return Err(Error::DimensionMismatch(format!(
                    "image of vertex {v} has {} coordinates",
                    p.len()
                )));
            }
            let c = target.carrier(p).ok_or_else(|| {
                Error::InvalidMap(format!("vertex {v} is sent outside the target"))
            })?;
            image_carriers.push(c);
        }
        let map = RectilinearMap {
            source,
            target,
            images,
            image_carriers,
        };
        for a in map.source.maximal_simplices() {
            if map.carrier_of(&a).is_none() {
                return Err(Error::InvalidMap(format!(
                    "simplex {a:?} is not sent into a single simplex"
                )));
            }
        }
        Ok(map)
    }

    /// Build from affine maps (in ambient coordinates) on the maximal simplices
    /// of the source, each tagged with a target simplex containing its image.
    pub fn from_assignments(
        source: Arc<Polyhedron>,
        target: Arc<Polyhedron>,
        assignments: &[(Simplex, Simplex, AffineMap)],
    ) -> Result<Self> {
        let mut images: Vec<Option<Vec<Q>>> = vec![None; source.num_vertices()];
        let mut covered = BTreeSet::new();
        for (a, b, f) in assignments {
            if !source.contains_simplex(a) {
                return Err(Error::InvalidMap(format!("{a:?} is not a source simplex")));
            }
            if !target.contains_simplex(b) {
                return Err(Error::InvalidMap(format!("{b:?} is not a target simplex")));
            }
            if f.n_in() != source.ambient_dim() || f.n_out() != target.ambient_dim() {
                return Err(Error::DimensionMismatch("assignment map shape".into()));
            }
            for &v in a {
                let w = f.apply(source.vertex(v))?;
                if !target.simplex_contains(b, &w) {
                    return Err(Error::InvalidMap(format!(
                        "vertex {v} of {a:?} leaves the assigned simplex {b:?}"
                    )));
                }
                match &images[v] {
                    Some(old) if *old != w => {
                        return Err(Error::InvalidMap(format!(
                            "pieces disagree at vertex {v}"
                        )))
                    }
                    _ => images[v] = Some(w),
                }
            }
            covered.insert(a.clone());
        }
        let missing: Vec<Simplex> = source
            .maximal_simplices()
            .into_iter()
            .filter(|m| !covered.iter().any(|a: &Simplex| super::is_face(m, a)))
            .collect();
        if let Some(m) = missing.into_iter().next() {
            return Err(Error::MissingAssignment(m));
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(v, p)| p.ok_or_else(|| Error::MissingAssignment(vec![v])))
            .collect::<Result<Vec<_>>>()?;
        Self::from_vertex_images(source, target, images)
    }

    /// Simplicial map given by a vertex assignment.
    pub fn simplicial(source: Arc<Polyhedron>, target: Arc<Polyhedron>, vertex_map: &[usize]) -> Result<Self> {
        let images = vertex_map
            .iter()
            .map(|&w| {
                if w < target.num_vertices() {
                    Ok(target.vertex(w).to_vec())
                } else {
                    Err(Error::NotAVertex(w))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_vertex_images(source, target, images)
    }

    pub fn identity(k: Arc<Polyhedron>) -> Self {
        let images = k.vertices().to_vec();
        Self::from_vertex_images(k.clone(), k, images).expect("identity is rectilinear")
    }

    /// The constant map onto a point of the target.
    pub fn constant(source: Arc<Polyhedron>, target: Arc<Polyhedron>, point: Vec<Q>) -> Result<Self> {
        let images = vec![point; source.num_vertices()];
        Self::from_vertex_images(source, target, images)
    }

    pub fn source(&self) -> &Arc<Polyhedron> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Polyhedron> {
        &self.target
    }

    pub fn image(&self, v: usize) -> &[Q] {
        &self.images[v]
    }

    pub fn images(&self) -> &[Vec<Q>] {
        &self.images
    }

    /// Smallest target simplex containing the image of the source simplex `a`.
    pub fn carrier_of(&self, a: &[usize]) -> Option<Simplex> {
        let u = union(a.iter().map(|&v| self.image_carriers[v].clone()));
        self.target.contains_simplex(&u).then_some(u)
    }

    /// Affine map in ambient coordinates on the source simplex `a`.
    pub fn ambient_piece(&self, a: &[usize]) -> Result<AffineMap> {
        let img: Vec<Vec<Q>> = a.iter().map(|&v| self.images[v].clone()).collect();
        AffineMap::simplex_chart(&img)?.compose(&self.source.chart_inverse(a)?)
    }

    /// The map from the chart of source simplex `a` to the chart of target simplex `b`.
    pub fn local_map(&self, a: &[usize], b: &[usize]) -> Result<AffineMap> {
        let img: Vec<Vec<Q>> = a.iter().map(|&v| self.images[v].clone()).collect();
        if let Some(p) = img.iter().find(|p| !self.target.simplex_contains(b, p)) {
            return Err(Error::InvalidMap(format!("{p:?} is not in simplex {b:?}")));
        }
        self.target
            .chart_inverse(b)?
            .compose(&AffineMap::simplex_chart(&img)?)
    }

    /// Evaluate at a point of `|K|`.
    pub fn apply(&self, x: &[Q]) -> Result<Vec<Q>> {
        let s = self.source.carrier(x).ok_or(Error::OutsidePolyhedron)?;
        let lambda = self.source.barycentric(&s, x).expect("carrier contains the point");
        let mut out = vec![Q::zero(); self.target.ambient_dim()];
        for (l, &v) in lambda.iter().zip(&s) {
            for (o, c) in out.iter_mut().zip(&self.images[v]) {
                *o += l * c;
            }
        }
        Ok(out)
    }

    /// `self ∘ inner`, when that composite is again rectilinear on the
    /// simplices of `inner`'s source.
    pub fn compose(&self, inner: &RectilinearMap) -> Result<RectilinearMap> {
        if !same(inner.target(), &self.source) {
            return Err(Error::BaseMismatch);
        }
        let images = inner
            .images
            .iter()
            .map(|p| self.apply(p))
            .collect::<Result<Vec<_>>>()?;
        let out = Self::from_vertex_images(inner.source.clone(), self.target.clone(), images)?;
        // the composite must be affine on each simplex: every simplex of the
        // inner source must land in a single simplex of our source
        for a in inner.source.maximal_simplices() {
            if inner.carrier_of(&a).is_none() {
                return Err(Error::InvalidMap("composite is not rectilinear".into()));
            }
        }
        Ok(out)
    }
}

pub(crate) fn same(a: &Arc<Polyhedron>, b: &Arc<Polyhedron>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Two maps are adjacent when every source simplex `a` has a target simplex
/// containing both `f(a)` and `g(a)`.
pub fn are_adjacent(f: &RectilinearMap, g: &RectilinearMap) -> Result<bool> {
    if !same(&f.source, &g.source) || !same(&f.target, &g.target) {
        return Err(Error::BaseMismatch);
    }
    Ok(f.source
        .maximal_simplices()
        .iter()
        .all(|a| common_carrier(f, g, a).is_some()))
}

/// Smallest target simplex containing `f(a) ∪ g(a)`.
pub fn common_carrier(f: &RectilinearMap, g: &RectilinearMap, a: &[usize]) -> Option<Simplex> {
    let u = union(
        a.iter()
            .flat_map(|&v| [f.image_carriers[v].clone(), g.image_carriers[v].clone()]),
    );
    f.target.contains_simplex(&u).then_some(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::exact::rational::{q, qf};

    #[test]
    fn identity_and_rotation_adjacency() {
        let k = Arc::new(corpus::triangle_boundary());
        let id = RectilinearMap::identity(k.clone());
        let rot = RectilinearMap::simplicial(k.clone(), k.clone(), &[1, 2, 0]).unwrap();
        assert!(are_adjacent(&id, &id).unwrap());
        assert!(!are_adjacent(&id, &rot).unwrap());
        let c = RectilinearMap::constant(k.clone(), k.clone(), vec![q(0), q(0)]).unwrap();
        // the boundary edge {1,2} together with vertex 0 is not a simplex
        assert!(!are_adjacent(&id, &c).unwrap());
    }

    #[test]
    fn folding_map_is_not_rectilinear() {
        let k = Arc::new(corpus::triangle_boundary());
        // sending the edge {1,2} across the missing interior
        let bad = RectilinearMap::from_vertex_images(
            k.clone(),
            k.clone(),
            vec![vec![q(1), q(0)], vec![q(0), q(1)], vec![q(1), q(0)]],
        );
        assert!(bad.is_ok());
        let bad = RectilinearMap::from_vertex_images(
            k.clone(),
            k,
            vec![vec![q(0), q(0)], vec![qf(1, 2), q(0)], vec![q(0), q(1)]],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn apply_and_local_map() {
        let k = Arc::new(corpus::interval().barycentric_subdivide());
        let l = Arc::new(corpus::interval());
        // fold [0,1] with 1/2 ↦ 1, 1 ↦ 0 is piecewise affine
        let f = RectilinearMap::from_vertex_images(
            k.clone(),
            l,
            vec![vec![q(0)], vec![q(0)], vec![q(1)]],
        )
        .unwrap();
        assert_eq!(f.apply(&[qf(1, 4)]).unwrap(), vec![qf(1, 2)]);
        assert_eq!(f.apply(&[qf(3, 4)]).unwrap(), vec![qf(1, 2)]);
        let m = f.local_map(&[1, 2], &[0, 1]).unwrap();
        assert_eq!(m.apply(&[q(0)]).unwrap(), vec![q(0)]);
        assert_eq!(m.apply(&[q(1)]).unwrap(), vec![q(1)]);
        assert!(f.apply(&[q(2)]).is_err());
    }

    #[test]
    fn missing_assignment_reported() {
        let k = Arc::new(corpus::triangle_boundary());
        let id = AffineMap::identity(2);
        let r = RectilinearMap::from_assignments(
            k.clone(),
            k.clone(),
            &[(vec![0, 1], vec![0, 1], id.clone()), (vec![0, 2], vec![0, 2], id)],
        );
        assert!(matches!(r, Err(Error::MissingAssignment(s)) if s == vec![1, 2]));
    }
}
