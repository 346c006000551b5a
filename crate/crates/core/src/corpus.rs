//! Standard small complexes and maps used by tests, benchmarks and the CLI self-test.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::exact::rational::{q, qf, Q};
use crate::polyhedron::{Polyhedron, RectilinearMap, Simplex, Star};

fn pts(raw: &[&[i64]]) -> Vec<Vec<Q>> {
    raw.iter().map(|p| p.iter().map(|&c| q(c)).collect()).collect()
}

fn unit_vector(m: usize, i: usize) -> Vec<Q> {
    (0..m).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()
}

pub fn point() -> Polyhedron {
    Polyhedron::new(1, pts(&[&[0]]), vec![]).unwrap()
}

/// The unit interval `[0, 1]`.
pub fn interval() -> Polyhedron {
    Polyhedron::new(1, pts(&[&[0], &[1]]), vec![vec![0, 1]]).unwrap()
}

pub fn full_triangle() -> Polyhedron {
    Polyhedron::new(2, pts(&[&[0, 0], &[1, 0], &[0, 1]]), vec![vec![0, 1, 2]]).unwrap()
}

pub fn triangle_boundary() -> Polyhedron {
    Polyhedron::new(
        2,
        pts(&[&[0, 0], &[1, 0], &[0, 1]]),
        vec![vec![0, 1], vec![1, 2], vec![0, 2]],
    )
    .unwrap()
}

/// Boundary of the standard tetrahedron in ℝ³.
pub fn tetrahedron_boundary() -> Polyhedron {
    Polyhedron::new(
        3,
        pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
        vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
    )
    .unwrap()
}

/// The solid standard tetrahedron with all faces.
pub fn tetrahedron() -> Polyhedron {
    Polyhedron::new(
        3,
        pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
        vec![vec![0, 1, 2, 3]],
    )
    .unwrap()
}

/// Möbius' 7-vertex torus: triangles `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7,
/// vertices at `0, e_1, …, e_6` in ℝ⁶ so every simplex is a face of one
/// non-degenerate 6-simplex.
pub fn torus() -> Polyhedron {
    let mut vertices = vec![vec![Q::zero(); 6]];
    vertices.extend((0..6).map(|i| unit_vector(6, i)));
    let mut gens = Vec::new();
    for i in 0..7 {
        gens.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
        gens.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
    }
    Polyhedron::new(6, vertices, gens).unwrap()
}

/// Two disjoint full triangles in the plane.
pub fn two_triangles() -> Polyhedron {
    Polyhedron::new(
        2,
        pts(&[&[0, 0], &[1, 0], &[0, 1], &[2, 0], &[3, 0], &[2, 1]]),
        vec![vec![0, 1, 2], vec![3, 4, 5]],
    )
    .unwrap()
}

/// The complexes whose cohomology is compared against the simplicial oracle.
pub fn named_complexes() -> Vec<(&'static str, Polyhedron)> {
    vec![
        ("interval", interval()),
        ("triangle_boundary", triangle_boundary()),
        ("full_triangle", full_triangle()),
        ("tetrahedron_boundary", tetrahedron_boundary()),
        ("torus", torus()),
        ("two_triangles", two_triangles()),
    ]
}

/// Cone over the 1-skeleton of `k`. The graph vertices are placed at the
/// unit vectors of ℝⁿ and the apex at the origin, which is the last vertex.
pub fn cone_over_one_skeleton(k: &Polyhedron) -> Star {
    let n = k.num_vertices();
    let mut vertices: Vec<Vec<Q>> = (0..n).map(|i| unit_vector(n, i)).collect();
    vertices.push(vec![Q::zero(); n]);
    let mut gens: Vec<Simplex> = k.simplices_of_dim(1).map(|e| vec![e[0], e[1], n]).collect();
    // isolated vertices still get joined to the apex
    for v in 0..n {
        if !k.simplices_of_dim(1).any(|e| e.contains(&v)) {
            gens.push(vec![v, n]);
        }
    }
    let base = Polyhedron::new(n, vertices, gens).unwrap();
    Star::new(base, n).unwrap()
}

/// Cone over the boundary of the standard triangle with apex at its centroid.
pub fn cone_over_triangle_boundary() -> Polyhedron {
    let mut vertices = pts(&[&[0, 0], &[1, 0], &[0, 1]]);
    vertices.push(vec![qf(1, 3), qf(1, 3)]);
    Polyhedron::new(2, vertices, vec![vec![0, 1, 3], vec![1, 2, 3], vec![0, 2, 3]]).unwrap()
}

/// The five star complexes: cones over the 1-skeleta of the interval, the
/// triangle, the tetrahedron, the 7-vertex torus and two disjoint triangles.
pub fn stars() -> Vec<(&'static str, Star)> {
    vec![
        ("cone_interval", cone_over_one_skeleton(&interval())),
        ("cone_triangle", cone_over_one_skeleton(&triangle_boundary())),
        ("cone_tetrahedron", cone_over_one_skeleton(&tetrahedron_boundary())),
        ("cone_torus", cone_over_one_skeleton(&torus())),
        ("cone_two_triangles", cone_over_one_skeleton(&two_triangles())),
    ]
}

/// Translate a polyhedron by a vector.
pub fn translate(k: &Polyhedron, shift: &[Q]) -> Polyhedron {
    let vertices = k
        .vertices()
        .iter()
        .map(|v| v.iter().zip(shift).map(|(a, b)| a + b).collect())
        .collect();
    Polyhedron::new(k.ambient_dim(), vertices, k.maximal_simplices()).unwrap()
}

/// Disjoint union of complexes in a common ambient space, each shifted along
/// the first axis far enough to separate it from the previous ones.
pub fn disjoint_union(parts: &[Polyhedron]) -> Polyhedron {
    let m = parts.iter().map(Polyhedron::ambient_dim).max().unwrap_or(1).max(1);
    let mut vertices: Vec<Vec<Q>> = Vec::new();
    let mut gens: Vec<Simplex> = Vec::new();
    let mut next_x = Q::zero();
    for p in parts {
        let xs: Vec<Q> = p.vertices().iter().map(|v| v.first().cloned().unwrap_or_default()).collect();
        let lo = xs.iter().min().cloned().unwrap_or_default();
        let hi = xs.iter().max().cloned().unwrap_or_default();
        let shift = &next_x - &lo;
        let base = vertices.len();
        for v in p.vertices() {
            let mut w: Vec<Q> = v.clone();
            w.resize(m, Q::zero());
            w[0] += &shift;
            vertices.push(w);
        }
        for s in p.maximal_simplices() {
            gens.push(s.iter().map(|i| i + base).collect());
        }
        next_x = &hi + &shift + Q::one();
    }
    Polyhedron::new(m, vertices, gens).unwrap()
}

/// `[0, 1]` subdivided twice (vertices 0, 1, 1/2, 1/4, 3/4) mapped to `[0, 1]`
/// subdivided once (vertices 0, 1, 1/2) by two adjacent simplicial
/// approximations of the identity.
pub fn subdivided_interval_maps() -> (RectilinearMap, RectilinearMap) {
    let once = Arc::new(interval().barycentric_subdivide());
    let twice = Arc::new(once.barycentric_subdivide());
    let image = |x: &Q, round_up: bool| -> Vec<Q> {
        // snap to the coarse grid {0, 1/2, 1}
        let two_x = x * q(2);
        let snapped = if round_up { two_x.ceil() } else { two_x.floor() };
        vec![snapped / q(2)]
    };
    let lower = twice.vertices().iter().map(|v| image(&v[0], false)).collect();
    let upper = twice.vertices().iter().map(|v| image(&v[0], true)).collect();
    let f0 = RectilinearMap::from_vertex_images(twice.clone(), once.clone(), lower).unwrap();
    let f1 = RectilinearMap::from_vertex_images(twice, once, upper).unwrap();
    (f0, f1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_valid() {
        for (name, k) in named_complexes() {
            assert!(k.validate().valid, "{name}");
        }
        for (name, s) in stars() {
            assert!(s.base().validate().valid, "{name}");
        }
        assert!(cone_over_triangle_boundary().validate().valid);
        assert!(tetrahedron().validate().valid);
    }

    #[test]
    fn torus_counts() {
        let t = torus();
        assert_eq!(
            (t.count_of_dim(0), t.count_of_dim(1), t.count_of_dim(2)),
            (7, 21, 14)
        );
    }

    #[test]
    fn disjoint_union_separates() {
        let u = disjoint_union(&[full_triangle(), triangle_boundary(), interval()]);
        assert!(u.validate().valid);
        assert_eq!(u.connected_components().count, 3);
    }

    #[test]
    fn interval_maps_are_adjacent() {
        let (f0, f1) = subdivided_interval_maps();
        assert!(crate::polyhedron::are_adjacent(&f0, &f1).unwrap());
        assert_eq!(f0.image(3), &[q(0)]);
        assert_eq!(f1.image(3), &[qf(1, 2)]);
    }
}
