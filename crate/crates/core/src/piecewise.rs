//! Piecewise polynomial forms on polyhedra.
//!
//! A [`PiecewiseForm`] holds one polynomial form per maximal simplex. Each
//! piece is written in the chart coordinates of its simplex `a = [a_0 … a_n]`
//! (sorted vertices), `t ↦ a_0 + Σ t_i (a_i − a_0)`, so a piece has exactly
//! `dim a` variables and its representation is unique. Conversion to and from
//! ambient coordinates happens at the I/O boundary.
//!
//! Pieces are compatible when their traces on every shared face agree.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::affine::PolyMap;
use crate::exact::form::{sort_sign, PolyForm};
use crate::exact::poly::MultiPoly;
use crate::exact::rational::{factorial, Q};
use crate::polyhedron::{are_adjacent, common_carrier, face_embedding, is_face, Polyhedron, RectilinearMap, Simplex, Star};

fn same(a: &Arc<Polyhedron>, b: &Arc<Polyhedron>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

#[derive(Clone, Debug)]
pub struct PiecewiseForm {
    base: Arc<Polyhedron>,
    degree: usize,
    pieces: BTreeMap<Simplex, PolyForm>,
}

impl PartialEq for PiecewiseForm {
    fn eq(&self, other: &Self) -> bool {
        same(&self.base, &other.base) && self.degree == other.degree && self.pieces == other.pieces
    }
}

/// A face on which two pieces disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub face: Simplex,
    pub first: Simplex,
    pub second: Simplex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompatibilityReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

/// Barycentric coordinate functions of the simplex `a` in its own chart.
pub fn chart_barycentrics(n: usize) -> Vec<MultiPoly> {
    let ts: Vec<MultiPoly> = (0..n).map(|i| MultiPoly::var(n, i).unwrap()).collect();
    let mut l0 = MultiPoly::one(n);
    for t in &ts {
        l0 = &l0 - t;
    }
    std::iter::once(l0).chain(ts).collect()
}

impl PiecewiseForm {
    pub fn zero(base: Arc<Polyhedron>, degree: usize) -> Self {
        let pieces = base
            .maximal_simplices()
            .into_iter()
            .map(|a| {
                let n = a.len() - 1;
                (a, PolyForm::zero(n, degree))
            })
            .collect();
        PiecewiseForm {
            base,
            degree,
            pieces,
        }
    }

    pub fn constant(base: Arc<Polyhedron>, c: Q) -> Self {
        let mut out = Self::zero(base, 0);
        for (a, p) in out.pieces.iter_mut() {
            *p = PolyForm::function(MultiPoly::constant(a.len() - 1, c.clone()));
        }
        out
    }

    /// Build from pieces in chart coordinates. Missing maximal simplices get
    /// the zero form; compatibility is not checked (see [`Self::validate`]).
    pub fn from_chart_pieces(
        base: Arc<Polyhedron>,
        degree: usize,
        pieces: impl IntoIterator<Item = (Simplex, PolyForm)>,
    ) -> Result<Self> {
        let mut out = Self::zero(base, degree);
        for (a, form) in pieces {
            let slot = out
                .pieces
                .get_mut(&a)
                .ok_or_else(|| Error::InvalidPolyhedron(format!("{a:?} is not a maximal simplex")))?;
            if form.vars() != a.len() - 1 {
                return Err(Error::VarMismatch {
                    left: a.len() - 1,
                    right: form.vars(),
                });
            }
            if form.degree() != degree {
                return Err(Error::DegreeMismatch(format!(
                    "piece of degree {} in a {degree}-form",
                    form.degree()
                )));
            }
            *slot = form;
        }
        Ok(out)
    }

    /// Build from pieces written in the ambient coordinates of `base`.
    pub fn from_ambient_pieces(
        base: Arc<Polyhedron>,
        degree: usize,
        pieces: impl IntoIterator<Item = (Simplex, PolyForm)>,
    ) -> Result<Self> {
        let mut chart_pieces = Vec::new();
        for (a, form) in pieces {
            if form.vars() != base.ambient_dim() {
                return Err(Error::VarMismatch {
                    left: base.ambient_dim(),
                    right: form.vars(),
                });
            }
            if !base.contains_simplex(&a) {
                return Err(Error::InvalidPolyhedron(format!("{a:?} is not a simplex")));
            }
            let chart = base.chart(&a).to_poly_map();
            chart_pieces.push((a, form.pullback(&chart)?));
        }
        Self::from_chart_pieces(base, degree, chart_pieces)
    }

    /// Pieces expressed in ambient coordinates (one representative each).
    pub fn ambient_pieces(&self) -> Result<Vec<(Simplex, PolyForm)>> {
        self.pieces
            .iter()
            .map(|(a, p)| {
                let inv = self.base.chart_inverse(a)?.to_poly_map();
                Ok((a.clone(), p.pullback(&inv)?))
            })
            .collect()
    }

    pub fn base(&self) -> &Arc<Polyhedron> {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn pieces(&self) -> &BTreeMap<Simplex, PolyForm> {
        &self.pieces
    }

    pub fn piece(&self, a: &[usize]) -> Option<&PolyForm> {
        self.pieces.get(a)
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.values().all(PolyForm::is_zero)
    }

    /// Largest per-term total degree over all pieces.
    pub fn total_degree(&self) -> Option<i64> {
        self.pieces.values().filter_map(PolyForm::total_degree).max()
    }

    /// Restriction to the face `f` of the maximal simplex `a`, in the chart of `f`.
    pub fn trace(&self, a: &[usize], f: &[usize]) -> Result<PolyForm> {
        let piece = self
            .pieces
            .get(a)
            .ok_or_else(|| Error::InvalidPolyhedron(format!("{a:?} is not a maximal simplex")))?;
        piece.pullback(&face_embedding(f, a)?.to_poly_map())
    }

    /// Restriction to an arbitrary simplex, computed through any maximal coface.
    pub fn restrict(&self, s: &[usize]) -> Result<PolyForm> {
        let a = self
            .pieces
            .keys()
            .find(|a| is_face(s, a))
            .ok_or_else(|| Error::InvalidPolyhedron(format!("{s:?} is not a simplex")))?;
        self.trace(a, s)
    }

    pub fn validate(&self) -> CompatibilityReport {
        let maximal: Vec<&Simplex> = self.pieces.keys().collect();
        let mut violations = Vec::new();
        for f in self.base.simplices() {
            if f.len() - 1 < self.degree {
                continue;
            }
            let cofaces: Vec<&&Simplex> = maximal.iter().filter(|a| is_face(f, a)).collect();
            if cofaces.len() < 2 {
                continue;
            }
            let first = self.trace(cofaces[0], f).expect("face of its coface");
            for a in &cofaces[1..] {
                if self.trace(a, f).expect("face of its coface") != first {
                    violations.push(Violation {
                        face: f.clone(),
                        first: (*cofaces[0]).clone(),
                        second: (**a).clone(),
                    });
                }
            }
        }
        CompatibilityReport {
            valid: violations.is_empty(),
            violations,
        }
    }

    fn zip_with(&self, other: &Self, degree: usize, op: impl Fn(&PolyForm, &PolyForm) -> PolyForm) -> Result<Self> {
        if !same(&self.base, &other.base) {
            return Err(Error::BaseMismatch);
        }
        let pieces = self
            .pieces
            .iter()
            .map(|(a, p)| (a.clone(), op(p, &other.pieces[a])))
            .collect();
        Ok(PiecewiseForm {
            base: self.base.clone(),
            degree,
            pieces,
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch("adding forms of different degree".into()));
        }
        self.zip_with(other, self.degree, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch("subtracting forms of different degree".into()));
        }
        self.zip_with(other, self.degree, |a, b| a - b)
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, self.degree + other.degree, |a, b| a.wedge(b))
    }

    pub fn scale(&self, c: &Q) -> Self {
        self.map_pieces(self.degree, |p| p.scale(c))
    }

    pub fn d(&self) -> Self {
        self.map_pieces(self.degree + 1, PolyForm::d)
    }

    fn map_pieces(&self, degree: usize, f: impl Fn(&PolyForm) -> PolyForm) -> Self {
        PiecewiseForm {
            base: self.base.clone(),
            degree,
            pieces: self.pieces.iter().map(|(a, p)| (a.clone(), f(p))).collect(),
        }
    }

    /// Value of a 0-form at a point of `|K|`.
    pub fn eval(&self, x: &[Q]) -> Result<Q> {
        if self.degree != 0 {
            return Err(Error::DegreeMismatch("only functions can be evaluated".into()));
        }
        let s = self.base.carrier(x).ok_or(Error::OutsidePolyhedron)?;
        let a = self.pieces.keys().find(|a| is_face(&s, a)).expect("carrier has a maximal coface");
        let lambda = self.base.barycentric(a, x).expect("point lies on the simplex");
        let f = self.pieces[a].as_function().expect("degree zero");
        f.eval(&lambda[1..])
    }

    /// Pull back along a rectilinear map whose target is our base.
    pub fn pullback(&self, f: &RectilinearMap) -> Result<Self> {
        if !same(f.target(), &self.base) {
            return Err(Error::BaseMismatch);
        }
        let src = f.source().clone();
        let mut pieces = Vec::new();
        for a in src.maximal_simplices() {
            let carrier = f.carrier_of(&a).ok_or_else(|| Error::InvalidMap(format!("{a:?}")))?;
            let b = self.containing_piece(&carrier);
            let local = f.local_map(&a, b)?.to_poly_map();
            pieces.push((a, self.pieces[b].pullback(&local)?));
        }
        Self::from_chart_pieces(src, self.degree, pieces)
    }

    fn containing_piece(&self, s: &[usize]) -> &Simplex {
        self.pieces
            .keys()
            .find(|b| is_face(s, b))
            .expect("every simplex lies in a maximal one")
    }
}

/// Values of a simplicial cochain on sorted simplices. The orientation of a
/// simplex is the order of its sorted vertex tuple.
#[derive(Clone, Debug)]
pub struct SimplicialCochain {
    base: Arc<Polyhedron>,
    degree: usize,
    values: BTreeMap<Simplex, Q>,
}

impl PartialEq for SimplicialCochain {
    fn eq(&self, other: &Self) -> bool {
        same(&self.base, &other.base) && self.degree == other.degree && self.values == other.values
    }
}

impl SimplicialCochain {
    pub fn zero(base: Arc<Polyhedron>, degree: usize) -> Self {
        SimplicialCochain {
            base,
            degree,
            values: BTreeMap::new(),
        }
    }

    /// Characteristic cochain of an oriented simplex (any vertex order).
    pub fn indicator(base: Arc<Polyhedron>, oriented: &[usize]) -> Result<Self> {
        let mut c = Self::zero(base, oriented.len() - 1);
        c.set(oriented, Q::one())?;
        Ok(c)
    }

    /// From coefficients on `base.simplices_of_dim(degree)`, in that order.
    pub fn from_vector(base: Arc<Polyhedron>, degree: usize, v: &[Q]) -> Self {
        let values = base
            .simplices_of_dim(degree)
            .zip(v)
            .filter(|(_, c)| !c.is_zero())
            .map(|(s, c)| (s.clone(), c.clone()))
            .collect();
        SimplicialCochain {
            base,
            degree,
            values,
        }
    }

    pub fn to_vector(&self) -> Vec<Q> {
        self.base
            .simplices_of_dim(self.degree)
            .map(|s| self.values.get(s).cloned().unwrap_or_else(Q::zero))
            .collect()
    }

    pub fn base(&self) -> &Arc<Polyhedron> {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &BTreeMap<Simplex, Q> {
        &self.values
    }

    fn sorted(&self, oriented: &[usize]) -> Result<(Simplex, bool)> {
        let mut s = oriented.to_vec();
        let odd = sort_sign(&mut s);
        if s.len() != self.degree + 1 || !self.base.contains_simplex(&s) {
            return Err(Error::InvalidPolyhedron(format!("{oriented:?} is not a {}-simplex", self.degree)));
        }
        Ok((s, odd))
    }

    /// Value on an oriented simplex; reversing orientation flips the sign.
    pub fn value(&self, oriented: &[usize]) -> Result<Q> {
        let (s, odd) = self.sorted(oriented)?;
        let v = self.values.get(&s).cloned().unwrap_or_else(Q::zero);
        Ok(if odd { -v } else { v })
    }

    pub fn set(&mut self, oriented: &[usize], v: Q) -> Result<()> {
        let (s, odd) = self.sorted(oriented)?;
        let v = if odd { -v } else { v };
        if v.is_zero() {
            self.values.remove(&s);
        } else {
            self.values.insert(s, v);
        }
        Ok(())
    }

    /// `(δc)(τ) = Σ_j (−1)^j c(τ without its j-th vertex)`.
    pub fn coboundary(&self) -> Self {
        let mut out = Self::zero(self.base.clone(), self.degree + 1);
        for t in self.base.simplices_of_dim(self.degree + 1) {
            let mut acc = Q::zero();
            for j in 0..t.len() {
                let mut f = t.clone();
                f.remove(j);
                if let Some(v) = self.values.get(&f) {
                    if j % 2 == 0 {
                        acc += v;
                    } else {
                        acc -= v;
                    }
                }
            }
            if !acc.is_zero() {
                out.values.insert(t.clone(), acc);
            }
        }
        out
    }
}

/// Elementary Whitney form of the oriented simplex `sigma` (sorted).
pub fn whitney_elementary(base: &Arc<Polyhedron>, sigma: &[usize]) -> PiecewiseForm {
    let k = sigma.len() - 1;
    let kf = Q::from_integer(factorial(k));
    let mut pieces = Vec::new();
    for a in base.maximal_simplices() {
        if !is_face(sigma, &a) {
            continue;
        }
        let n = a.len() - 1;
        let lambda = chart_barycentrics(n);
        let pos: Vec<usize> = sigma.iter().map(|v| a.iter().position(|w| w == v).unwrap()).collect();
        let dl: Vec<PolyForm> = pos.iter().map(|&i| PolyForm::function(lambda[i].clone()).d()).collect();
        let mut form = PolyForm::zero(n, k);
        for j in 0..=k {
            let mut term = PolyForm::function(lambda[pos[j]].clone());
            for (i, d) in dl.iter().enumerate() {
                if i != j {
                    term = term.wedge(d);
                }
            }
            form = if j % 2 == 0 { &form + &term } else { &form - &term };
        }
        pieces.push((a, form.scale(&kf)));
    }
    PiecewiseForm::from_chart_pieces(base.clone(), k, pieces).expect("pieces match the base")
}

/// The Whitney map from simplicial cochains to piecewise forms.
pub fn whitney(c: &SimplicialCochain) -> PiecewiseForm {
    let mut out = PiecewiseForm::zero(c.base().clone(), c.degree());
    for (s, v) in c.values() {
        out = out
            .try_add(&whitney_elementary(c.base(), s).scale(v))
            .expect("same base");
    }
    out
}

/// Barycentric hat function of a vertex.
pub fn hat(base: &Arc<Polyhedron>, v: usize) -> PiecewiseForm {
    whitney_elementary(base, &[v])
}

/// The hats of all vertices: a partition of unity subordinate to the vertex stars.
pub fn pou_from_stars(base: &Arc<Polyhedron>) -> Vec<PiecewiseForm> {
    (0..base.num_vertices()).map(|v| hat(base, v)).collect()
}

/// Cartan homotopy operator for the straight-line homotopy between two
/// adjacent maps. Returns `h(ω)` with `f₀*ω − f₁*ω = d h(ω) + h(dω)`.
pub fn adjacency_homotopy(f0: &RectilinearMap, f1: &RectilinearMap, omega: &PiecewiseForm) -> Result<PiecewiseForm> {
    if !are_adjacent(f0, f1)? {
        return Err(Error::NotAdjacent(Vec::new()));
    }
    if !same(f0.target(), omega.base()) {
        return Err(Error::BaseMismatch);
    }
    let src = f0.source().clone();
    let k = omega.degree();
    if k == 0 {
        return Ok(PiecewiseForm::zero(src, 0));
    }
    let mut pieces = Vec::new();
    for a in src.maximal_simplices() {
        let common = common_carrier(f0, f1, &a)
            .ok_or_else(|| Error::NotAdjacent(a.clone()))?;
        let b = omega.containing_piece(&common);
        let n = a.len() - 1;
        let g0 = f0.local_map(&a, b)?.to_poly_map();
        let g1 = f1.local_map(&a, b)?.to_poly_map();
        // H(s, t) = (1 − t) g0(s) + t g1(s), with t the last variable
        let widen = |p: &MultiPoly| p.relabel(n + 1, &(0..n).collect::<Vec<_>>());
        let t = MultiPoly::var(n + 1, n).unwrap();
        let one_minus_t = &MultiPoly::one(n + 1) - &t;
        let comps = g0
            .components()
            .iter()
            .zip(g1.components())
            .map(|(p0, p1)| &(&one_minus_t * &widen(p0)) + &(&t * &widen(p1)))
            .collect();
        let h = PolyMap::new(n + 1, comps)?;
        let pulled = omega.pieces[b].pullback(&h)?;
        pieces.push((a, fiber_integral(&pulled, n).scale(&-Q::one())));
    }
    PiecewiseForm::from_chart_pieces(src, k - 1, pieces)
}

/// `K(g ds_J ∧ dt) = (−1)^{|J|} (∫₀¹ g dt) ds_J`, terms without `dt` map to 0.
/// The variable `t` is the last one, index `n`.
fn fiber_integral(form: &PolyForm, n: usize) -> PolyForm {
    let k = form.degree();
    let mut out = PolyForm::zero(n, k - 1);
    for (idx, g) in form.terms() {
        if idx.last() != Some(&n) {
            continue;
        }
        let j = &idx[..idx.len() - 1];
        let integral = g.integrate_unit(n).expect("t is a variable");
        let sign = if j.len() % 2 == 0 { Q::one() } else { -Q::one() };
        let term = PolyForm::monomial_form(integral.scale(&sign), j).expect("valid indices");
        out = &out + &term;
    }
    out
}

/// Primitive of a closed form of positive degree on a star, by contracting
/// the star onto its center.
pub fn star_contraction_exactness(star: &Star, omega: &PiecewiseForm) -> Result<PiecewiseForm> {
    let base = star.base();
    if !same(base, omega.base()) {
        return Err(Error::BaseMismatch);
    }
    if omega.degree() == 0 {
        return Err(Error::DegreeMismatch("a primitive needs positive degree".into()));
    }
    if !omega.d().is_zero() {
        return Err(Error::NotClosed);
    }
    let id = RectilinearMap::identity(base.clone());
    let center = base.vertex(star.center()).to_vec();
    let collapse = RectilinearMap::constant(base.clone(), base.clone(), center)?;
    adjacency_homotopy(&id, &collapse, omega)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::exact::rational::{q, qf};

    fn arc(k: Polyhedron) -> Arc<Polyhedron> {
        Arc::new(k)
    }

    #[test]
    fn constant_and_hats_are_valid() {
        let k = arc(corpus::triangle_boundary());
        assert!(PiecewiseForm::constant(k.clone(), q(1)).validate().valid);
        let hats = pou_from_stars(&k);
        let mut sum = PiecewiseForm::zero(k.clone(), 0);
        for h in &hats {
            assert!(h.validate().valid);
            sum = sum.try_add(h).unwrap();
        }
        assert_eq!(sum, PiecewiseForm::constant(k, q(1)));
    }

    #[test]
    fn mismatched_pieces_reported() {
        let k = arc(corpus::triangle_boundary());
        // x on edge {0,1} vs x + 1 on edge {1,2}, zero elsewhere
        let x = MultiPoly::var(2, 0).unwrap();
        let x1 = &x + &MultiPoly::one(2);
        let w = PiecewiseForm::from_ambient_pieces(
            k.clone(),
            0,
            vec![
                (vec![0, 1], PolyForm::function(x.clone())),
                (vec![1, 2], PolyForm::function(x1)),
                (vec![0, 2], PolyForm::function(x)),
            ],
        )
        .unwrap();
        let r = w.validate();
        assert!(!r.valid);
        // x + 1 disagrees with x at both ends of {1, 2}
        let faces: Vec<Simplex> = r.violations.iter().map(|v| v.face.clone()).collect();
        assert_eq!(faces, vec![vec![1], vec![2]]);
    }

    #[test]
    fn hat_on_interval() {
        let k = arc(corpus::interval());
        let h = hat(&k, 1);
        assert_eq!(h.piece(&[0, 1]).unwrap(), &PolyForm::function(MultiPoly::var(1, 0).unwrap()));
        assert_eq!(h.d().piece(&[0, 1]).unwrap(), &PolyForm::dx(1, 0).unwrap());
        assert_eq!(h.eval(&[qf(1, 3)]).unwrap(), qf(1, 3));
        let e = whitney(&SimplicialCochain::indicator(k.clone(), &[0, 1]).unwrap());
        assert_eq!(e.piece(&[0, 1]).unwrap(), &PolyForm::dx(1, 0).unwrap());
        let c = SimplicialCochain::indicator(k.clone(), &[1]).unwrap();
        assert_eq!(whitney(&c.coboundary()), whitney(&c).d());
    }

    #[test]
    fn whitney_is_compatible_and_chain_map() {
        let k = arc(corpus::tetrahedron_boundary());
        for dim in 0..=2 {
            for s in k.simplices_of_dim(dim) {
                let c = SimplicialCochain::indicator(k.clone(), s).unwrap();
                let w = whitney(&c);
                assert!(w.validate().valid);
                assert_eq!(w.d(), whitney(&c.coboundary()));
            }
        }
    }

    #[test]
    fn pullback_examples() {
        let k = arc(corpus::interval());
        let id = RectilinearMap::identity(k.clone());
        let dt = whitney(&SimplicialCochain::indicator(k.clone(), &[0, 1]).unwrap());
        assert_eq!(dt.pullback(&id).unwrap(), dt);
        // source edge [0, 1/2] stretched onto [0, 1]
        let src = arc(Polyhedron::new(1, vec![vec![q(0)], vec![qf(1, 2)]], vec![vec![0, 1]]).unwrap());
        let f = RectilinearMap::simplicial(src, k.clone(), &[0, 1]).unwrap();
        let pulled = dt.pullback(&f).unwrap();
        let amb = pulled.ambient_pieces().unwrap();
        assert_eq!(amb[0].1, PolyForm::dx(1, 0).unwrap().scale(&q(2)));
        let one = PiecewiseForm::constant(k, q(1));
        assert!(one.pullback(&f).unwrap().try_sub(&PiecewiseForm::constant(f.source().clone(), q(1))).unwrap().is_zero());
    }

    #[test]
    fn homotopy_formula_on_star() {
        let star = corpus::cone_over_one_skeleton(&corpus::triangle_boundary());
        let k = star.base().clone();
        let center = star.center();
        let omega = hat(&k, center).d();
        let eta = star_contraction_exactness(&star, &omega).unwrap();
        assert!(eta.validate().valid);
        assert_eq!(eta.d(), omega);
        // a 2-form: Whitney form of a triangle
        let tri = k.maximal_simplices()[0].clone();
        let w = whitney_elementary(&k, &tri);
        let eta = star_contraction_exactness(&star, &w).unwrap();
        assert!(eta.validate().valid);
        assert_eq!(eta.d(), w);
    }

    #[test]
    fn homotopy_identity_degree_zero_and_equal_maps() {
        let k = arc(corpus::full_triangle());
        let id = RectilinearMap::identity(k.clone());
        let w = whitney_elementary(&k, &[0, 1]);
        assert!(adjacency_homotopy(&id, &id, &w).unwrap().is_zero());
        let h = hat(&k, 2);
        let c = RectilinearMap::constant(k.clone(), k.clone(), vec![q(0), q(0)]).unwrap();
        assert!(adjacency_homotopy(&id, &c, &h).unwrap().is_zero());
        // f0*h − f1*h = h(dh)
        let lhs = h.pullback(&id).unwrap().try_sub(&h.pullback(&c).unwrap()).unwrap();
        assert_eq!(lhs, adjacency_homotopy(&id, &c, &h.d()).unwrap());
    }
}
