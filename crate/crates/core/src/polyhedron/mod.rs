//! Geometric simplicial complexes with rational vertices.
//!
//! A [`Polyhedron`] stores its vertex coordinates and the full face closure
//! of its simplices. Every listed vertex is a 0-simplex. Simplices are sorted
//! vertex-index tuples; the orientation of a simplex is its sorted order.
//!
//! Every geometric question (membership, intersection, containment) is
//! answered in exact arithmetic. Intersections of simplex pairs are decided
//! by a linear program over ℚ.

mod rectilinear;

pub use rectilinear::{are_adjacent, common_carrier, RectilinearMap};

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::affine::AffineMap;
use crate::exact::rational::Q;
use crate::linalg::{lp_maximize, solve_rows, Echelon, LpOutcome, QMatrix, QRow};

pub type Simplex = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polyhedron {
    ambient_dim: usize,
    vertices: Vec<Vec<Q>>,
    simplices: Vec<Simplex>,
    index: HashMap<Simplex, usize>,
}

/// Outcome of [`Polyhedron::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidityReport {
    pub valid: bool,
    /// Simplices whose vertices are affinely dependent.
    pub degenerate: Vec<Simplex>,
    /// Pairs of maximal simplices whose intersection is not a common face.
    pub bad_pairs: Vec<(Simplex, Simplex)>,
}

/// Connected components of a polyhedron.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Components {
    pub count: usize,
    /// Vertex indices of each component, each sorted, components ordered by smallest vertex.
    pub parts: Vec<Vec<usize>>,
}

/// All non-empty subsets of a sorted simplex, as sorted tuples.
pub fn faces_of(s: &[usize]) -> Vec<Simplex> {
    let n = s.len();
    (1u64..(1u64 << n))
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect())
        .collect()
}

fn by_dim_then_lex(a: &Simplex, b: &Simplex) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

impl Polyhedron {
    /// Build from vertex coordinates and generating simplices; faces are
    /// added automatically. Geometric validity is not checked here, see
    /// [`Polyhedron::validate`].
    pub fn new(ambient_dim: usize, vertices: Vec<Vec<Q>>, generators: Vec<Vec<usize>>) -> Result<Self> {
        if let Some(v) = vertices.iter().find(|v| v.len() != ambient_dim) {
            return Err(Error::DimensionMismatch(format!(
                "vertex with {} coordinates in ambient dimension {ambient_dim}",
                v.len()
            )));
        }
        let mut set: BTreeSet<Simplex> = (0..vertices.len()).map(|i| vec![i]).collect();
        for g in generators {
            let mut s = g.clone();
            s.sort_unstable();
            s.dedup();
            if s.len() != g.len() {
                return Err(Error::InvalidPolyhedron(format!("repeated vertex in simplex {g:?}")));
            }
            if s.is_empty() {
                return Err(Error::InvalidPolyhedron("empty simplex".into()));
            }
            if let Some(&i) = s.iter().find(|&&i| i >= vertices.len()) {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    bound: vertices.len(),
                });
            }
            if s.len() > 20 {
                return Err(Error::InvalidPolyhedron("simplex too large".into()));
            }
            set.extend(faces_of(&s));
        }
        let mut simplices: Vec<Simplex> = set.into_iter().collect();
        simplices.sort_by(by_dim_then_lex);
        let index = simplices.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        Ok(Polyhedron {
            ambient_dim,
            vertices,
            simplices,
            index,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex(&self, i: usize) -> &[Q] {
        &self.vertices[i]
    }

    pub fn vertices(&self) -> &[Vec<Q>] {
        &self.vertices
    }

    /// All simplices, sorted by dimension and then lexicographically.
    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn simplex_index(&self, s: &[usize]) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn contains_simplex(&self, s: &[usize]) -> bool {
        self.index.contains_key(s)
    }

    /// Dimension of the complex (0 for a set of points).
    pub fn dim(&self) -> usize {
        self.simplices.last().map(|s| s.len() - 1).unwrap_or(0)
    }

    pub fn simplices_of_dim(&self, k: usize) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter().filter(move |s| s.len() == k + 1)
    }

    pub fn count_of_dim(&self, k: usize) -> usize {
        self.simplices_of_dim(k).count()
    }

    /// Simplices that are not a proper face of another simplex.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut covered: BTreeSet<&Simplex> = BTreeSet::new();
        let mut faces: Vec<Simplex> = Vec::new();
        for s in &self.simplices {
            if s.len() > 1 {
                for i in 0..s.len() {
                    let mut f = s.clone();
                    f.remove(i);
                    faces.push(f);
                }
            }
        }
        for f in &faces {
            covered.insert(f);
        }
        self.simplices
            .iter()
            .filter(|s| !covered.contains(s))
            .cloned()
            .collect()
    }

    /// Maximal simplices having `s` as a face.
    pub fn maximal_cofaces(&self, s: &[usize]) -> Vec<Simplex> {
        self.maximal_simplices()
            .into_iter()
            .filter(|m| is_face(s, m))
            .collect()
    }

    pub fn points(&self, s: &[usize]) -> Vec<Vec<Q>> {
        s.iter().map(|&i| self.vertices[i].clone()).collect()
    }

    pub fn barycenter(&self, s: &[usize]) -> Vec<Q> {
        let k = Q::from_integer((s.len() as i64).into());
        (0..self.ambient_dim)
            .map(|r| s.iter().fold(Q::zero(), |acc, &i| acc + &self.vertices[i][r]) / &k)
            .collect()
    }

    /// The chart `t ↦ v_0 + Σ t_i (v_i − v_0)` of a simplex (sorted vertices).
    pub fn chart(&self, s: &[usize]) -> AffineMap {
        AffineMap::simplex_chart(&self.points(s)).expect("simplex vertices share a dimension")
    }

    pub fn is_affinely_independent(&self, s: &[usize]) -> bool {
        let p0 = &self.vertices[s[0]];
        let rows: Vec<Vec<Q>> = s[1..]
            .iter()
            .map(|&i| self.vertices[i].iter().zip(p0).map(|(a, b)| a - b).collect())
            .collect();
        if rows.is_empty() {
            return true;
        }
        QMatrix::from_rows(rows).rank() == s.len() - 1
    }

    /// An affine left inverse of [`Polyhedron::chart`]: an affine map
    /// `ℝ^m → ℝ^k` that is the inverse chart on the affine hull of `s`.
    pub fn chart_inverse(&self, s: &[usize]) -> Result<AffineMap> {
        let k = s.len() - 1;
        let m = self.ambient_dim;
        let chart = self.chart(s);
        let cm = chart.matrix();
        // pick k independent coordinate rows
        let mut e = Echelon::new();
        let mut picked = Vec::new();
        for r in 0..m {
            let row: QRow = cm[r].iter().cloned().enumerate().collect();
            if e.insert_q(&row).is_some() {
                picked.push(r);
                if picked.len() == k {
                    break;
                }
            }
        }
        if picked.len() != k {
            return Err(Error::InvalidPolyhedron(format!("simplex {s:?} is degenerate")));
        }
        // invert the k×k block
        let block: Vec<QRow> = picked
            .iter()
            .map(|&r| cm[r].iter().cloned().enumerate().collect())
            .collect();
        let mut inv = vec![vec![Q::zero(); m]; k];
        for (col, &r) in picked.iter().enumerate() {
            let rhs: Vec<Q> = (0..k)
                .map(|i| if i == col { Q::one() } else { Q::zero() })
                .collect();
            let x = solve_rows(&block, &rhs, k).expect("invertible block");
            for i in 0..k {
                inv[i][r] = x[i].clone();
            }
        }
        let p0 = chart.offset();
        let offset: Vec<Q> = inv
            .iter()
            .map(|row| -row.iter().zip(p0).fold(Q::zero(), |acc, (a, b)| acc + a * b))
            .collect();
        AffineMap::with_input_dim(m, inv, offset)
    }

    /// Barycentric coordinates of `x` with respect to `s`, if `x` lies on the
    /// affine hull of `s`.
    pub fn barycentric(&self, s: &[usize], x: &[Q]) -> Option<Vec<Q>> {
        let chart = self.chart(s);
        let k = chart.n_in();
        let rows: Vec<QRow> = chart
            .matrix()
            .iter()
            .map(|r| r.iter().cloned().enumerate().collect())
            .collect();
        let rhs: Vec<Q> = x.iter().zip(chart.offset()).map(|(a, b)| a - b).collect();
        let t = solve_rows(&rows, &rhs, k)?;
        let mut lambda = Vec::with_capacity(k + 1);
        lambda.push(t.iter().fold(Q::one(), |acc, v| acc - v));
        lambda.extend(t);
        Some(lambda)
    }

    pub fn simplex_contains(&self, s: &[usize], x: &[Q]) -> bool {
        self.barycentric(s, x)
            .is_some_and(|l| l.iter().all(|v| !v.is_negative()))
    }

    /// The smallest simplex containing `x`, or `None` if `x ∉ |K|`.
    pub fn carrier(&self, x: &[Q]) -> Option<Simplex> {
        if x.len() != self.ambient_dim {
            return None;
        }
        self.simplices
            .iter()
            .find(|s| self.simplex_contains(s, x))
            .cloned()
    }

    pub fn contains_point(&self, x: &[Q]) -> bool {
        self.carrier(x).is_some()
    }

    /// Check affine independence and the common-face intersection condition.
    pub fn validate(&self) -> ValidityReport {
        let degenerate: Vec<Simplex> = self
            .simplices
            .iter()
            .filter(|s| !self.is_affinely_independent(s))
            .cloned()
            .collect();
        let maximal = self.maximal_simplices();
        let mut bad_pairs = Vec::new();
        for i in 0..maximal.len() {
            for j in i + 1..maximal.len() {
                if !self.intersect_properly(&maximal[i], &maximal[j]) {
                    bad_pairs.push((maximal[i].clone(), maximal[j].clone()));
                }
            }
        }
        ValidityReport {
            valid: degenerate.is_empty() && bad_pairs.is_empty(),
            degenerate,
            bad_pairs,
        }
    }

    /// `conv(a) ∩ conv(b) = conv(a ∩ b)`, decided by maximising the weight
    /// an intersection point puts on the vertices of `a` outside `b`.
    fn intersect_properly(&self, a: &[usize], b: &[usize]) -> bool {
        let outside: Vec<bool> = a.iter().map(|v| !b.contains(v)).collect();
        if !outside.iter().any(|&o| o) || b.iter().all(|v| a.contains(v)) {
            return true;
        }
        let (na, nb) = (a.len(), b.len());
        let n = na + nb;
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        rows.push((0..n).map(|j| if j < na { Q::one() } else { Q::zero() }).collect());
        rhs.push(Q::one());
        rows.push((0..n).map(|j| if j >= na { Q::one() } else { Q::zero() }).collect());
        rhs.push(Q::one());
        for r in 0..self.ambient_dim {
            let row: Vec<Q> = a
                .iter()
                .map(|&v| self.vertices[v][r].clone())
                .chain(b.iter().map(|&v| -&self.vertices[v][r]))
                .collect();
            rows.push(row);
            rhs.push(Q::zero());
        }
        let cost: Vec<Q> = (0..n)
            .map(|j| if j < na && outside[j] { Q::one() } else { Q::zero() })
            .collect();
        match lp_maximize(&cost, &rows, &rhs) {
            LpOutcome::Infeasible => true,
            LpOutcome::Optimal { value, .. } => value.is_zero(),
            LpOutcome::Unbounded => unreachable!("weights are bounded by one"),
        }
    }

    /// Barycentric subdivision. New vertex `i` is the barycenter of
    /// `self.simplices()[i]`, so the original vertices keep their indices.
    pub fn barycentric_subdivide(&self) -> Polyhedron {
        let vertices: Vec<Vec<Q>> = self.simplices.iter().map(|s| self.barycenter(s)).collect();
        let mut generators = Vec::new();
        for m in self.maximal_simplices() {
            for perm in permutations(&m) {
                let chain: Vec<usize> = (1..=perm.len())
                    .map(|l| {
                        let mut pre = perm[..l].to_vec();
                        pre.sort_unstable();
                        self.index[&pre]
                    })
                    .collect();
                generators.push(chain);
            }
        }
        Polyhedron::new(self.ambient_dim, vertices, generators).expect("subdivision is well formed")
    }

    /// The subcomplex generated by the given simplices, with vertices
    /// renumbered. Returns it together with the new-to-old vertex map.
    pub fn subcomplex(&self, generators: &[Simplex]) -> Result<(Polyhedron, Vec<usize>)> {
        let mut used: BTreeSet<usize> = BTreeSet::new();
        for g in generators {
            if !self.contains_simplex(g) {
                return Err(Error::InvalidPolyhedron(format!("{g:?} is not a simplex")));
            }
            used.extend(g.iter().copied());
        }
        let old: Vec<usize> = used.into_iter().collect();
        let new_of: HashMap<usize, usize> = old.iter().enumerate().map(|(n, &o)| (o, n)).collect();
        let vertices = old.iter().map(|&o| self.vertices[o].clone()).collect();
        let gens = generators
            .iter()
            .map(|g| g.iter().map(|v| new_of[v]).collect())
            .collect();
        Ok((Polyhedron::new(self.ambient_dim, vertices, gens)?, old))
    }

    /// Closed vertex star of `v`: every simplex containing `v`, with faces.
    pub fn star_neighborhood(&self, v: usize) -> Result<Star> {
        if v >= self.vertices.len() {
            return Err(Error::NotAVertex(v));
        }
        let gens: Vec<Simplex> = self
            .maximal_simplices()
            .into_iter()
            .filter(|s| s.contains(&v))
            .collect();
        let (base, old) = self.subcomplex(&gens)?;
        let center = old.iter().position(|&o| o == v).expect("center is used");
        // every simplex of K containing v must be in the star (interior condition)
        for s in self.simplices.iter().filter(|s| s.contains(&v)) {
            let mapped: Option<Vec<usize>> =
                s.iter().map(|o| old.iter().position(|x| x == o)).collect();
            match mapped {
                Some(m) if base.contains_simplex(&m) => {}
                _ => return Err(Error::NotAStar(format!("simplex {s:?} escapes the star"))),
            }
        }
        let star = Star::new(base, center)?;
        Ok(star.with_vertex_map(old))
    }

    /// Components of the 1-skeleton (equivalently of `|K|`).
    pub fn connected_components(&self) -> Components {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for e in self.simplices_of_dim(1) {
            let (a, b) = (find(&mut parent, e[0]), find(&mut parent, e[1]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..n {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        let parts: Vec<Vec<usize>> = groups.into_values().collect();
        Components {
            count: parts.len(),
            parts,
        }
    }
}

/// `a ⊆ b` for sorted tuples.
pub fn is_face(a: &[usize], b: &[usize]) -> bool {
    let mut j = 0;
    for x in a {
        while j < b.len() && b[j] < *x {
            j += 1;
        }
        if j == b.len() || b[j] != *x {
            return false;
        }
    }
    true
}

/// The chart of `face` written in the chart coordinates of `a ⊇ face`:
/// vertex `a_0` sits at the origin and `a_i` at `e_i`.
pub fn face_embedding(face: &[usize], a: &[usize]) -> Result<AffineMap> {
    let n = a.len() - 1;
    let position = |v: usize| -> Result<Vec<Q>> {
        let i = a
            .iter()
            .position(|&w| w == v)
            .ok_or_else(|| Error::InvalidPolyhedron(format!("{face:?} is not a face of {a:?}")))?;
        Ok((1..=n).map(|j| if j == i { Q::one() } else { Q::zero() }).collect())
    };
    let corners = face.iter().map(|&v| position(v)).collect::<Result<Vec<_>>>()?;
    AffineMap::simplex_chart(&corners)
}

fn permutations(s: &[usize]) -> Vec<Vec<usize>> {
    if s.len() <= 1 {
        return vec![s.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..s.len() {
        let mut rest = s.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// A polyhedron all of whose maximal simplices contain the center vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Star {
    base: Arc<Polyhedron>,
    center: usize,
    vertex_map: Option<Vec<usize>>,
}

impl Star {
    pub fn new(base: Polyhedron, center: usize) -> Result<Self> {
        if center >= base.num_vertices() {
            return Err(Error::NotAVertex(center));
        }
        if let Some(m) = base.maximal_simplices().into_iter().find(|m| !m.contains(&center)) {
            return Err(Error::NotAStar(format!(
                "maximal simplex {m:?} misses the center {center}"
            )));
        }
        Ok(Star {
            base: Arc::new(base),
            center,
            vertex_map: None,
        })
    }

    /// Find a vertex lying on every maximal simplex (the smallest such index).
    pub fn detect(base: Polyhedron) -> Result<Self> {
        let maximal = base.maximal_simplices();
        let center = (0..base.num_vertices())
            .find(|v| maximal.iter().all(|m| m.contains(v)))
            .ok_or_else(|| Error::NotAStar("no vertex lies on every maximal simplex".into()))?;
        Star::new(base, center)
    }

    fn with_vertex_map(mut self, map: Vec<usize>) -> Self {
        self.vertex_map = Some(map);
        self
    }

    pub fn base(&self) -> &Arc<Polyhedron> {
        &self.base
    }

    pub fn center(&self) -> usize {
        self.center
    }

    /// For stars cut out of a larger polyhedron: new-to-old vertex indices.
    pub fn vertex_map(&self) -> Option<&[usize]> {
        self.vertex_map.as_deref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::exact::rational::{q, qf};

    #[test]
    fn closure_and_counts() {
        let t = corpus::full_triangle();
        assert_eq!(t.simplices().len(), 7);
        assert_eq!(t.dim(), 2);
        assert_eq!(t.maximal_simplices(), vec![vec![0, 1, 2]]);
        let b = corpus::triangle_boundary();
        assert_eq!(b.maximal_simplices().len(), 3);
    }

    #[test]
    fn validate_examples() {
        assert!(corpus::triangle_boundary().validate().valid);
        assert!(corpus::tetrahedron().validate().valid);
        // second triangle's vertex (1/2, 0) sits inside the first one's edge
        let k = Polyhedron::new(
            2,
            vec![
                vec![q(0), q(0)],
                vec![q(1), q(0)],
                vec![q(0), q(1)],
                vec![qf(1, 2), q(0)],
                vec![qf(3, 2), q(0)],
                vec![q(1), q(-1)],
            ],
            vec![vec![0, 1, 2], vec![3, 4, 5]],
        )
        .unwrap();
        let r = k.validate();
        assert!(!r.valid);
        assert_eq!(r.bad_pairs, vec![(vec![0, 1, 2], vec![3, 4, 5])]);
        let flat = Polyhedron::new(
            2,
            vec![vec![q(0), q(0)], vec![q(1), q(1)], vec![q(2), q(2)]],
            vec![vec![0, 1, 2]],
        )
        .unwrap();
        assert_eq!(flat.validate().degenerate, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn subdivision_counts() {
        let i = corpus::interval();
        let s = i.barycentric_subdivide();
        assert_eq!(s.count_of_dim(1), 2);
        assert_eq!(s.vertex(2), &[qf(1, 2)]);
        let s2 = s.barycentric_subdivide();
        assert_eq!(s2.count_of_dim(1), 4);
        let t = corpus::full_triangle().barycentric_subdivide();
        assert_eq!(t.count_of_dim(2), 6);
        assert_eq!(t.num_vertices(), 7);
        assert!(t.validate().valid);
    }

    #[test]
    fn star_examples() {
        let s = corpus::interval().barycentric_subdivide();
        let st = s.star_neighborhood(2).unwrap();
        assert_eq!(st.base().count_of_dim(1), 2);
        let b = corpus::triangle_boundary();
        let st = b.star_neighborhood(0).unwrap();
        assert_eq!(st.base().count_of_dim(1), 2);
        assert_eq!(st.base().num_vertices(), 3);
        let cone = corpus::cone_over_triangle_boundary();
        let apex = cone.num_vertices() - 1;
        let st = cone.star_neighborhood(apex).unwrap();
        assert_eq!(st.base().simplices().len(), cone.simplices().len());
        assert!(b.star_neighborhood(9).is_err());
        assert!(Star::new(corpus::triangle_boundary(), 0).is_err());
    }

    #[test]
    fn components_examples() {
        assert_eq!(corpus::triangle_boundary().connected_components().count, 1);
        assert_eq!(corpus::two_triangles().connected_components().count, 2);
        assert_eq!(corpus::point().connected_components().count, 1);
    }

    #[test]
    fn chart_inverse_is_left_inverse() {
        let k = corpus::torus();
        for s in k.maximal_simplices() {
            let c = k.chart(&s);
            let p = k.chart_inverse(&s).unwrap();
            let id = p.compose(&c).unwrap();
            assert_eq!(id, AffineMap::identity(2));
        }
    }

    #[test]
    fn carrier_finds_smallest() {
        let t = corpus::full_triangle();
        assert_eq!(t.carrier(&[qf(1, 2), q(0)]), Some(vec![0, 1]));
        assert_eq!(t.carrier(&[qf(1, 4), qf(1, 4)]), Some(vec![0, 1, 2]));
        assert_eq!(t.carrier(&[q(1), q(1)]), None);
    }
}
