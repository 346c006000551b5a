//! Finitely presented ℚ-algebras, their Kähler de Rham complexes and real points.
//!
//! Elements and form coefficients are stored as Laurent polynomials in the
//! generators; the polynomial kinds simply never carry negative exponents.
//! Every kind has a confluent normal form, so equality is structural after
//! normalisation:
//!
//! * `Polynomial`, `Laurent`: Ω is free on the `dx_I`; nothing to reduce.
//! * `MonomialQuotient`: terms whose coefficient lies in the ideal vanish, and
//!   the relations `x^β dm ∧ dx_K` (for ideal generators `m`) are reduced away
//!   one multidegree block at a time by exact elimination.
//! * `UnivariateQuotient`: `ℚ[x]/(f)` with `f` monic. Functions reduce mod `f`,
//!   one-forms mod `gcd(f, f')`, and forms of degree ≥ 2 vanish.

mod solve;

pub use solve::{
    euler_equation_solve, graded_exactness_solve, torus_witness, truncated_exactness_solve,
    verify_certificate, zero_diff_certificate, Certificate, ExactnessOutcome,
};

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::form::{index_tuples, merge_indices, LaurentForm};
use crate::exact::poly::{LaurentPoly, MultiPoly};
use crate::exact::rational::Q;
use crate::linalg::{Echelon, QRow};
use crate::piecewise::PiecewiseForm;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraKind {
    Polynomial,
    Laurent,
    /// Quotient by the ideal generated by these monomials (a minimal generating set).
    MonomialQuotient(Vec<Vec<u32>>),
    /// `ℚ[x]/(f)` with `f` monic of positive degree, coefficients from the constant term up.
    UnivariateQuotient(Vec<Q>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinPresAlgebra {
    vars: usize,
    kind: AlgebraKind,
}

/// A multidegree-homogeneous basis element `x^α dx_I` of the free module.
pub(crate) type Key = (Vec<usize>, Vec<i32>);

fn divides(m: &[u32], e: &[i32]) -> bool {
    m.iter().zip(e).all(|(&a, &b)| (a as i64) <= b as i64)
}

fn poly_from_coeffs(c: &[Q]) -> MultiPoly {
    MultiPoly::from_terms(1, c.iter().enumerate().map(|(i, v)| (vec![i as u32], v.clone()))).unwrap()
}

/// Coefficients (low to high) of a univariate polynomial.
fn coeffs_of(p: &LaurentPoly) -> Vec<Q> {
    let deg = p.terms().map(|(e, _)| e.0[0]).max().unwrap_or(-1);
    let mut out = vec![Q::zero(); (deg + 1).max(0) as usize];
    for (e, c) in p.terms() {
        out[e.0[0] as usize] = c.clone();
    }
    out
}

/// Remainder of `a` modulo a monic `m` (coefficient vectors, low to high).
fn rem_monic(a: &[Q], m: &[Q]) -> Vec<Q> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = r.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let shift = r.len() - dm;
        for i in 0..dm {
            r[shift + i] -= &lead * &m[i];
        }
    }
    while r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
    r
}

/// Monic gcd of two univariate polynomials.
fn gcd_monic(a: &[Q], b: &[Q]) -> Vec<Q> {
    let trim = |v: &[Q]| {
        let mut v = v.to_vec();
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    };
    let monic = |v: Vec<Q>| {
        let l = v.last().cloned().unwrap();
        v.into_iter().map(|c| c / &l).collect::<Vec<_>>()
    };
    let (mut a, mut b) = (trim(a), trim(b));
    while !b.is_empty() {
        let bm = monic(b.clone());
        let r = rem_monic(&a, &bm);
        a = bm;
        b = r;
    }
    if a.is_empty() {
        a
    } else {
        monic(a)
    }
}

impl FinPresAlgebra {
    pub fn polynomial(vars: usize) -> Self {
        FinPresAlgebra {
            vars,
            kind: AlgebraKind::Polynomial,
        }
    }

    pub fn laurent(vars: usize) -> Self {
        FinPresAlgebra {
            vars,
            kind: AlgebraKind::Laurent,
        }
    }

    /// The generators are minimalised (monomials divisible by another one are dropped).
    pub fn monomial_quotient(vars: usize, monomials: Vec<Vec<u32>>) -> Result<Self> {
        if let Some(m) = monomials.iter().find(|m| m.len() != vars) {
            return Err(Error::Arity {
                expected: vars,
                got: m.len(),
            });
        }
        let set: BTreeSet<Vec<u32>> = monomials.into_iter().collect();
        let minimal: Vec<Vec<u32>> = set
            .iter()
            .filter(|m| {
                !set.iter().any(|n| n != *m && n.iter().zip(m.iter()).all(|(a, b)| a <= b))
            })
            .cloned()
            .collect();
        Ok(FinPresAlgebra {
            vars,
            kind: AlgebraKind::MonomialQuotient(minimal),
        })
    }

    /// `ℚ[x]/(f)`; `modulus` lists the coefficients of `f` from the constant
    /// term up and must be monic of positive degree.
    pub fn univariate_quotient(modulus: Vec<Q>) -> Result<Self> {
        if modulus.len() < 2 || !modulus.last().unwrap().is_one() {
            return Err(Error::Unsupported("modulus must be monic of positive degree".into()));
        }
        Ok(FinPresAlgebra {
            vars: 1,
            kind: AlgebraKind::UnivariateQuotient(modulus),
        })
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn kind(&self) -> &AlgebraKind {
        &self.kind
    }

    /// Whether the grading by multidegree (with `deg dx_i = e_i`) is respected.
    pub fn is_multigraded(&self) -> bool {
        !matches!(self.kind, AlgebraKind::UnivariateQuotient(_))
    }

    fn check_poly(&self, p: &LaurentPoly) -> Result<()> {
        if p.vars() != self.vars {
            return Err(Error::VarMismatch {
                left: self.vars,
                right: p.vars(),
            });
        }
        if self.kind != AlgebraKind::Laurent && p.terms().any(|(e, _)| e.0.iter().any(|&x| x < 0)) {
            return Err(Error::Unsupported("negative exponents outside a Laurent algebra".into()));
        }
        Ok(())
    }

    /// Normal form of an element.
    pub fn normalize(&self, p: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_poly(p)?;
        Ok(match &self.kind {
            AlgebraKind::Polynomial | AlgebraKind::Laurent => p.clone(),
            AlgebraKind::MonomialQuotient(gens) => {
                p.filter_terms(|e| !gens.iter().any(|m| divides(m, &e.0)))
            }
            AlgebraKind::UnivariateQuotient(f) => {
                let r = rem_monic(&coeffs_of(p), f);
                poly_from_coeffs(&r).to_laurent()
            }
        })
    }

    /// Normal form of a form.
    pub fn normalize_form(&self, w: &LaurentForm) -> Result<LaurentForm> {
        if w.vars() != self.vars {
            return Err(Error::VarMismatch {
                left: self.vars,
                right: w.vars(),
            });
        }
        for (_, p) in w.terms() {
            self.check_poly(p)?;
        }
        match &self.kind {
            AlgebraKind::Polynomial | AlgebraKind::Laurent => Ok(w.clone()),
            AlgebraKind::UnivariateQuotient(f) => {
                let modulus = match w.degree() {
                    0 => f.clone(),
                    1 => {
                        let df: Vec<Q> = f
                            .iter()
                            .enumerate()
                            .skip(1)
                            .map(|(i, c)| c * Q::from_integer((i as i64).into()))
                            .collect();
                        gcd_monic(f, &df)
                    }
                    _ => return Ok(LaurentForm::zero(1, w.degree())),
                };
                let mut out = LaurentForm::zero(1, w.degree());
                if modulus.len() <= 1 {
                    return Ok(out); // the module is zero
                }
                for (idx, p) in w.terms() {
                    let r = rem_monic(&coeffs_of(p), &modulus);
                    out = &out + &LaurentForm::monomial_form(poly_from_coeffs(&r).to_laurent(), idx)?;
                }
                Ok(out)
            }
            AlgebraKind::MonomialQuotient(gens) => Ok(self.normalize_monomial_form(gens, w)),
        }
    }

    fn normalize_monomial_form(&self, gens: &[Vec<u32>], w: &LaurentForm) -> LaurentForm {
        let k = w.degree();
        let n = self.vars;
        // group terms by combined multidegree
        let mut blocks: BTreeMap<Vec<i32>, Vec<(Key, Q)>> = BTreeMap::new();
        for (idx, p) in w.terms() {
            for (e, c) in p.terms() {
                if gens.iter().any(|m| divides(m, &e.0)) {
                    continue;
                }
                let mut mu = e.0.clone();
                for &i in idx {
                    mu[i] += 1;
                }
                blocks.entry(mu).or_default().push(((idx.clone(), e.0.clone()), c.clone()));
            }
        }
        let mut out = LaurentForm::zero(n, k);
        for (mu, entries) in blocks {
            let block = MonomialBlock::new(n, gens, &mu, k);
            let v: QRow = entries.iter().map(|(key, c)| (block.column[key], c.clone())).collect();
            for (col, c) in block.reduce(&v) {
                let (idx, e) = &block.basis[col];
                let term = LaurentForm::from_terms(n, k, [(idx.clone(), LaurentPoly::monomial(e.clone(), c))])
                    .expect("well-formed basis element");
                out = &out + &term;
            }
        }
        out
    }

    /// `d` followed by normalisation.
    pub fn d(&self, w: &LaurentForm) -> Result<LaurentForm> {
        self.normalize_form(&w.d())
    }

    pub fn wedge(&self, a: &LaurentForm, b: &LaurentForm) -> Result<LaurentForm> {
        self.normalize_form(&a.try_wedge(b)?)
    }

    /// Whether `x` is a real point: every relation vanishes (and Laurent
    /// coordinates are nonzero).
    pub fn is_point(&self, x: &[Q]) -> Result<bool> {
        if x.len() != self.vars {
            return Err(Error::Arity {
                expected: self.vars,
                got: x.len(),
            });
        }
        Ok(match &self.kind {
            AlgebraKind::Polynomial => true,
            AlgebraKind::Laurent => x.iter().all(|c| !c.is_zero()),
            AlgebraKind::MonomialQuotient(gens) => gens.iter().all(|m| {
                MultiPoly::monomial(m.clone(), Q::one()).eval(x).expect("arity checked").is_zero()
            }),
            AlgebraKind::UnivariateQuotient(f) => poly_from_coeffs(f).eval(x).expect("arity checked").is_zero(),
        })
    }

    /// `b̂(ψ) = ψ(b)` for the point `ψ` with the given generator values.
    pub fn evaluate(&self, b: &LaurentPoly, point: &RealPoint) -> Result<Q> {
        self.check_poly(b)?;
        b.eval(&point.coords)
    }

    /// The relations that cut out the real points: monomials for a monomial
    /// quotient, the modulus for a univariate quotient.
    pub fn relations(&self) -> Vec<MultiPoly> {
        match &self.kind {
            AlgebraKind::Polynomial | AlgebraKind::Laurent => Vec::new(),
            AlgebraKind::MonomialQuotient(gens) => {
                gens.iter().map(|m| MultiPoly::monomial(m.clone(), Q::one())).collect()
            }
            AlgebraKind::UnivariateQuotient(f) => vec![poly_from_coeffs(f)],
        }
    }
}

/// One multidegree block of `Ω^k` of a monomial quotient: its basis and the
/// reduced relation rows.
struct MonomialBlock {
    basis: Vec<Key>,
    column: BTreeMap<Key, usize>,
    relations: crate::linalg::Reduced,
}

impl MonomialBlock {
    fn new(n: usize, gens: &[Vec<u32>], mu: &[i32], k: usize) -> Self {
        let in_ideal = |e: &[i32]| gens.iter().any(|m| divides(m, e));
        let mut basis = Vec::new();
        for idx in index_tuples(n, k) {
            let mut e = mu.to_vec();
            for &i in &idx {
                e[i] -= 1;
            }
            if e.iter().all(|&x| x >= 0) && !in_ideal(&e) {
                basis.push((idx, e));
            }
        }
        let column: BTreeMap<Key, usize> = basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
        let mut ech = Echelon::new();
        if k >= 1 {
            for m in gens {
                for kk in index_tuples(n, k - 1) {
                    // β = μ − m − 1_K must be non-negative
                    let mut beta: Vec<i32> = mu.iter().zip(m).map(|(&a, &b)| a - b as i32).collect();
                    for &i in &kk {
                        beta[i] -= 1;
                    }
                    if beta.iter().any(|&x| x < 0) {
                        continue;
                    }
                    let mut row: QRow = Vec::new();
                    for i in 0..n {
                        if m[i] == 0 {
                            continue;
                        }
                        let Some((idx, odd)) = merge_indices(&[i], &kk) else { continue };
                        let mut e: Vec<i32> = beta.iter().zip(m).map(|(&b, &a)| b + a as i32).collect();
                        e[i] -= 1;
                        if let Some(&col) = column.get(&(idx, e)) {
                            let c = Q::from_integer((m[i] as i64).into());
                            row.push((col, if odd { -c } else { c }));
                        }
                    }
                    ech.insert_q(&row);
                }
            }
        }
        MonomialBlock {
            basis,
            column,
            relations: ech.into_reduced(),
        }
    }

    fn reduce(&self, v: &QRow) -> QRow {
        self.relations.reduce_q(v)
    }
}

/// A point of the real spectrum, given by its generator values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealPoint {
    pub coords: Vec<Q>,
}

impl RealPoint {
    pub fn new(alg: &FinPresAlgebra, coords: Vec<Q>) -> Result<Self> {
        if !alg.is_point(&coords)? {
            return Err(Error::NotInVariety(format!("{coords:?}")));
        }
        Ok(RealPoint { coords })
    }
}

/// The point of the real spectrum of a subalgebra of piecewise polynomial
/// functions (given by generator functions) determined by `x ∈ |K|`.
pub fn gamma_point(alg: &FinPresAlgebra, generators: &[PiecewiseForm], x: &[Q]) -> Result<RealPoint> {
    if generators.len() != alg.vars() {
        return Err(Error::Arity {
            expected: alg.vars(),
            got: generators.len(),
        });
    }
    let coords = generators.iter().map(|g| g.eval(x)).collect::<Result<Vec<_>>>()?;
    RealPoint::new(alg, coords)
}

/// A form of a finitely presented algebra, kept in normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgForm {
    algebra: Arc<FinPresAlgebra>,
    form: LaurentForm,
}

impl AlgForm {
    pub fn new(algebra: Arc<FinPresAlgebra>, form: LaurentForm) -> Result<Self> {
        let form = algebra.normalize_form(&form)?;
        Ok(AlgForm { algebra, form })
    }

    pub fn function(algebra: Arc<FinPresAlgebra>, p: LaurentPoly) -> Result<Self> {
        Self::new(algebra, LaurentForm::function(p))
    }

    pub fn algebra(&self) -> &Arc<FinPresAlgebra> {
        &self.algebra
    }

    pub fn form(&self) -> &LaurentForm {
        &self.form
    }

    pub fn degree(&self) -> usize {
        self.form.degree()
    }

    pub fn is_zero(&self) -> bool {
        self.form.is_zero()
    }

    pub fn d(&self) -> AlgForm {
        AlgForm {
            algebra: self.algebra.clone(),
            form: self.algebra.d(&self.form).expect("normal forms stay in the algebra"),
        }
    }

    pub fn wedge(&self, other: &AlgForm) -> Result<AlgForm> {
        if self.algebra != other.algebra {
            return Err(Error::Unsupported("forms over different algebras".into()));
        }
        Ok(AlgForm {
            algebra: self.algebra.clone(),
            form: self.algebra.wedge(&self.form, &other.form)?,
        })
    }

    pub fn try_add(&self, other: &AlgForm) -> Result<AlgForm> {
        if self.algebra != other.algebra {
            return Err(Error::Unsupported("forms over different algebras".into()));
        }
        AlgForm::new(self.algebra.clone(), self.form.try_add(&other.form)?)
    }

    pub fn scale(&self, c: &Q) -> AlgForm {
        AlgForm {
            algebra: self.algebra.clone(),
            form: self.form.scale(c),
        }
    }
}

/// Sparse coordinates of a form in the monomial basis `x^α dx_I`.
pub(crate) fn coordinates(w: &LaurentForm) -> BTreeMap<Key, Q> {
    let mut out = BTreeMap::new();
    for (idx, p) in w.terms() {
        for (e, c) in p.terms() {
            out.insert((idx.clone(), e.0.clone()), c.clone());
        }
    }
    out
}

/// Build a form from basis coordinates.
pub(crate) fn from_coordinates(vars: usize, degree: usize, coords: impl IntoIterator<Item = (Key, Q)>) -> LaurentForm {
    let mut by_idx: BTreeMap<Vec<usize>, LaurentPoly> = BTreeMap::new();
    for ((idx, e), c) in coords {
        let p = by_idx.entry(idx).or_insert_with(|| LaurentPoly::zero(vars));
        *p = &*p + &LaurentPoly::monomial(e, c);
    }
    LaurentForm::from_terms(vars, degree, by_idx).expect("well-formed coordinates")
}

/// The basis element `x^α dx_I`.
pub(crate) fn basis_form(vars: usize, key: &Key) -> LaurentForm {
    LaurentForm::from_terms(vars, key.0.len(), [(key.0.clone(), LaurentPoly::monomial(key.1.clone(), Q::one()))])
        .expect("well-formed basis element")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{q, qf};

    fn lvar(n: usize, i: usize) -> LaurentPoly {
        LaurentPoly::var(n, i).unwrap()
    }

    #[test]
    fn laurent_differential() {
        let a = FinPresAlgebra::laurent(1);
        let inv = LaurentPoly::monomial(vec![-1], q(1));
        let d = a.d(&LaurentForm::function(inv)).unwrap();
        let expected = LaurentForm::monomial_form(LaurentPoly::monomial(vec![-2], q(-1)), &[0]).unwrap();
        assert_eq!(d, expected);
        let one = &lvar(1, 0) * &LaurentPoly::monomial(vec![-1], q(1));
        assert!(a.d(&LaurentForm::function(one)).unwrap().is_zero());
        let p = FinPresAlgebra::polynomial(2);
        let f = &(&lvar(2, 0) * &lvar(2, 0)) * &lvar(2, 1);
        let df = p.d(&LaurentForm::function(f)).unwrap();
        let expected = &LaurentForm::monomial_form(LaurentPoly::monomial(vec![1, 1], q(2)), &[0]).unwrap()
            + &LaurentForm::monomial_form(LaurentPoly::monomial(vec![2, 0], q(1)), &[1]).unwrap();
        assert_eq!(df, expected);
    }

    #[test]
    fn points() {
        let a = FinPresAlgebra::monomial_quotient(2, vec![vec![1, 1]]).unwrap();
        assert!(a.is_point(&[q(0), q(3)]).unwrap());
        assert!(!a.is_point(&[q(1), q(1)]).unwrap());
        assert!(!FinPresAlgebra::laurent(1).is_point(&[q(0)]).unwrap());
        assert!(a.is_point(&[q(1)]).is_err());
    }

    #[test]
    fn monomial_quotient_relations() {
        // ℚ[x]/(x²): d(x²) = 2x dx vanishes, dx survives
        let a = FinPresAlgebra::monomial_quotient(1, vec![vec![2]]).unwrap();
        let xdx = LaurentForm::monomial_form(lvar(1, 0), &[0]).unwrap();
        assert!(a.normalize_form(&xdx).unwrap().is_zero());
        let dx = LaurentForm::dx(1, 0).unwrap();
        assert_eq!(a.normalize_form(&dx).unwrap(), dx);
        // ℚ[x,y]/(xy): y dx = −x dy, and the torsion class x dy is nonzero
        let b = FinPresAlgebra::monomial_quotient(2, vec![vec![1, 1]]).unwrap();
        let ydx = LaurentForm::monomial_form(lvar(2, 1), &[0]).unwrap();
        let xdy = LaurentForm::monomial_form(lvar(2, 0), &[1]).unwrap();
        let n1 = b.normalize_form(&ydx).unwrap();
        let n2 = b.normalize_form(&(-&xdy)).unwrap();
        assert_eq!(n1, n2);
        assert!(!n1.is_zero());
        // x·(x dy) = x² dy = −xy dx = 0
        let x2dy = LaurentForm::monomial_form(&lvar(2, 0) * &lvar(2, 0), &[1]).unwrap();
        assert!(b.normalize_form(&x2dy).unwrap().is_zero());
        // dx ∧ dy survives in degree 2? x dy ∧ ... : d(xy) ∧ dx = x dy∧dx, so x dx∧dy = 0
        let xdxdy = LaurentForm::monomial_form(lvar(2, 0), &[0, 1]).unwrap();
        assert!(b.normalize_form(&xdxdy).unwrap().is_zero());
        let dxdy = LaurentForm::monomial_form(LaurentPoly::one(2), &[0, 1]).unwrap();
        assert!(!b.normalize_form(&dxdy).unwrap().is_zero());
    }

    #[test]
    fn normal_form_is_idempotent_and_linear_on_small_cases() {
        let algs = [
            FinPresAlgebra::monomial_quotient(2, vec![vec![1, 1]]).unwrap(),
            FinPresAlgebra::monomial_quotient(2, vec![vec![2, 0], vec![0, 2]]).unwrap(),
            FinPresAlgebra::monomial_quotient(3, vec![vec![1, 1, 0], vec![0, 1, 1]]).unwrap(),
        ];
        for a in &algs {
            let n = a.vars();
            for k in 0..=n {
                for idx in index_tuples(n, k) {
                    for e in exps_box(n, 3) {
                        let w = LaurentForm::monomial_form(LaurentPoly::monomial(e.clone(), q(1)), &idx).unwrap();
                        let nf = a.normalize_form(&w).unwrap();
                        assert_eq!(a.normalize_form(&nf).unwrap(), nf);
                        // d is well defined on classes
                        assert_eq!(a.d(&nf).unwrap(), a.d(&w).unwrap());
                        assert!(a.d(&a.d(&w).unwrap()).unwrap().is_zero());
                    }
                }
            }
        }
    }

    fn exps_box(n: usize, max: i32) -> Vec<Vec<i32>> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..=max).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn univariate_quotient_forms() {
        // e² − e: Ω¹ = 0 because gcd(e² − e, 2e − 1) = 1
        let a = FinPresAlgebra::univariate_quotient(vec![q(0), q(-1), q(1)]).unwrap();
        let e = LaurentForm::function(lvar(1, 0));
        assert!(a.d(&e).unwrap().is_zero());
        let e2 = LaurentForm::function(&lvar(1, 0) * &lvar(1, 0));
        assert_eq!(a.normalize_form(&e2).unwrap(), e);
        // x² in ℚ[x]/(x²): dx survives, x dx = 0
        let b = FinPresAlgebra::univariate_quotient(vec![q(0), q(0), q(1)]).unwrap();
        assert!(!b.d(&LaurentForm::function(lvar(1, 0))).unwrap().is_zero());
        assert!(b.normalize_form(&LaurentForm::monomial_form(lvar(1, 0), &[0]).unwrap()).unwrap().is_zero());
        assert!(FinPresAlgebra::univariate_quotient(vec![q(0), q(2)]).is_err());
    }

    #[test]
    fn gamma_on_axes() {
        use crate::piecewise::PiecewiseForm;
        use crate::polyhedron::Polyhedron;
        let k = Arc::new(
            Polyhedron::new(
                2,
                vec![vec![q(0), q(0)], vec![q(1), q(0)], vec![q(0), q(1)]],
                vec![vec![0, 1], vec![0, 2]],
            )
            .unwrap(),
        );
        let coord = |i: usize| {
            let x = crate::exact::poly::MultiPoly::var(2, i).unwrap();
            PiecewiseForm::from_ambient_pieces(
                k.clone(),
                0,
                k.maximal_simplices()
                    .into_iter()
                    .map(|a| (a, crate::exact::form::PolyForm::function(x.clone()))),
            )
            .unwrap()
        };
        let a = FinPresAlgebra::monomial_quotient(2, vec![vec![1, 1]]).unwrap();
        let gens = [coord(0), coord(1)];
        let p = gamma_point(&a, &gens, &[q(0), qf(1, 2)]).unwrap();
        assert_eq!(p.coords, vec![q(0), qf(1, 2)]);
        let b = &lvar(2, 0) + &lvar(2, 1);
        assert_eq!(a.evaluate(&b, &p).unwrap(), qf(1, 2));
        assert!(gamma_point(&a, &gens, &[q(1), q(1)]).is_err());
        let five = PiecewiseForm::constant(k.clone(), q(5));
        let poly = FinPresAlgebra::polynomial(1);
        assert_eq!(gamma_point(&poly, &[five], &[q(1), q(0)]).unwrap().coords, vec![q(5)]);
    }
}
