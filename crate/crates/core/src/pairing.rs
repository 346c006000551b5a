//! Integration of polynomial forms over affine chains.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::affine::{AffineMap, PolyMap};
use crate::exact::form::{sort_sign, LaurentForm, PolyForm};
use crate::exact::poly::MultiPoly;
use crate::exact::rational::{factorial, Q};
use crate::kahler::{AlgebraKind, FinPresAlgebra};
use crate::linalg::QMatrix;
use crate::piecewise::{PiecewiseForm, SimplicialCochain};

/// `∫_{Δ^k} ω` for a top-degree form on the standard simplex
/// `{t ≥ 0, Σ t ≤ 1}`, oriented by `dt_0 ∧ … ∧ dt_{k−1}`.
pub fn integrate_simplex(omega: &PolyForm) -> Result<Q> {
    let k = omega.vars();
    if omega.degree() != k {
        return Err(Error::DegreeMismatch(format!(
            "integrating a {}-form over a {k}-simplex",
            omega.degree()
        )));
    }
    let top: Vec<usize> = (0..k).collect();
    let coeff = omega.coefficient(&top);
    let mut total = Q::zero();
    for (e, c) in coeff.terms() {
        let mut num = BigInt::one();
        let mut s = 0usize;
        for &a in &e.0 {
            num *= factorial(a as usize);
            s += a as usize;
        }
        total += c * Q::new(num, factorial(k + s));
    }
    Ok(total)
}

/// A formal rational combination of ordered affine simplices in ℝ^m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineChain {
    ambient_dim: usize,
    degree: usize,
    terms: Vec<(Q, Vec<Vec<Q>>)>,
}

impl AffineChain {
    pub fn new(ambient_dim: usize, degree: usize, terms: Vec<(Q, Vec<Vec<Q>>)>) -> Result<Self> {
        for (_, s) in &terms {
            if s.len() != degree + 1 {
                return Err(Error::DegreeMismatch(format!(
                    "{} vertices in a {degree}-chain",
                    s.len()
                )));
            }
            if s.iter().any(|p| p.len() != ambient_dim) {
                return Err(Error::DimensionMismatch(format!(
                    "vertex outside ℝ^{ambient_dim}"
                )));
            }
        }
        Ok(AffineChain {
            ambient_dim,
            degree,
            terms,
        })
    }

    pub fn simplex(vertices: Vec<Vec<Q>>) -> Result<Self> {
        let m = vertices.first().map(Vec::len).unwrap_or(0);
        let k = vertices.len().saturating_sub(1);
        Self::new(m, k, vec![(Q::one(), vertices)])
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &[(Q, Vec<Vec<Q>>)] {
        &self.terms
    }

    /// `∂[p_0 … p_k] = Σ_i (−1)^i [p_0 … p̂_i … p_k]`.
    pub fn boundary(&self) -> Result<AffineChain> {
        if self.degree == 0 {
            return Err(Error::DegreeMismatch("boundary of a 0-chain".into()));
        }
        let mut terms = Vec::new();
        for (c, s) in &self.terms {
            for i in 0..s.len() {
                let mut f = s.clone();
                f.remove(i);
                terms.push((if i % 2 == 0 { c.clone() } else { -c }, f));
            }
        }
        Ok(AffineChain {
            ambient_dim: self.ambient_dim,
            degree: self.degree - 1,
            terms,
        })
    }

    /// Sort each vertex tuple (adjusting the sign), merge equal simplices and
    /// drop zero coefficients.
    pub fn normalized(&self) -> AffineChain {
        let mut acc: BTreeMap<Vec<Vec<Q>>, Q> = BTreeMap::new();
        for (c, s) in &self.terms {
            let mut order: Vec<usize> = (0..s.len()).collect();
            order.sort_by(|&a, &b| s[a].cmp(&s[b]));
            let mut perm = order.clone();
            let odd = sort_sign(&mut perm);
            let sorted: Vec<Vec<Q>> = order.iter().map(|&i| s[i].clone()).collect();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                continue; // repeated vertex: degenerate, integrates to zero
            }
            let e = acc.entry(sorted).or_insert_with(Q::zero);
            if odd {
                *e -= c;
            } else {
                *e += c;
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(s, c)| (c, s)).collect();
        AffineChain {
            ambient_dim: self.ambient_dim,
            degree: self.degree,
            terms,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.normalized().terms.is_empty()
    }

    pub fn try_sub(&self, other: &AffineChain) -> Result<AffineChain> {
        if self.ambient_dim != other.ambient_dim || self.degree != other.degree {
            return Err(Error::DimensionMismatch("chains of different shape".into()));
        }
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().map(|(c, s)| (-c, s.clone())));
        Ok(AffineChain {
            ambient_dim: self.ambient_dim,
            degree: self.degree,
            terms,
        })
    }
}

/// `Σ c_i ∫_{Δ^k} σ_i^* ω` with `ω` in ambient coordinates.
pub fn pair_form_chain(omega: &PolyForm, chain: &AffineChain) -> Result<Q> {
    if omega.vars() != chain.ambient_dim {
        return Err(Error::DimensionMismatch(format!(
            "form on ℝ^{} paired with a chain in ℝ^{}",
            omega.vars(),
            chain.ambient_dim
        )));
    }
    if omega.degree() != chain.degree {
        return Err(Error::DegreeMismatch(format!(
            "{}-form paired with a {}-chain",
            omega.degree(),
            chain.degree
        )));
    }
    let mut total = Q::zero();
    for (c, s) in &chain.terms {
        let chart = AffineMap::simplex_chart(s)?.to_poly_map();
        total += c * integrate_simplex(&omega.pullback(&chart)?)?;
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StokesReport {
    #[serde(with = "crate::exact::rational::serde_q")]
    pub integral_of_d: Q,
    #[serde(with = "crate::exact::rational::serde_q")]
    pub boundary_integral: Q,
    pub equal: bool,
}

/// Both sides of `∫_c dω = ∫_{∂c} ω`.
pub fn stokes_check(omega: &PolyForm, chain: &AffineChain) -> Result<StokesReport> {
    let lhs = pair_form_chain(&omega.d(), chain)?;
    let rhs = pair_form_chain(omega, &chain.boundary()?)?;
    Ok(StokesReport {
        equal: lhs == rhs,
        integral_of_d: lhs,
        boundary_integral: rhs,
    })
}

/// Integrate a piecewise form over every simplex of its degree.
pub fn derham_map(omega: &PiecewiseForm) -> Result<SimplicialCochain> {
    let base = omega.base().clone();
    let k = omega.degree();
    let values = base
        .simplices_of_dim(k)
        .map(|s| integrate_simplex(&omega.restrict(s)?))
        .collect::<Result<Vec<Q>>>()?;
    Ok(SimplicialCochain::from_vector(base, k, &values))
}

/// Pull a form of a presented algebra back along an affine simplex. Negative
/// powers of a generator are allowed only where it is constant on the simplex.
fn pullback_algebraic(omega: &LaurentForm, chart: &PolyMap) -> Result<PolyForm> {
    let k = chart.n_in();
    let comps = chart.components();
    let mut out = PolyForm::zero(k, omega.degree());
    for (idx, p) in omega.terms() {
        let mut coeff = MultiPoly::zero(k);
        for (e, c) in p.terms() {
            let mut mono = MultiPoly::constant(k, c.clone());
            for (i, &a) in e.0.iter().enumerate() {
                if a >= 0 {
                    mono = &mono * &comps[i].pow(a as u32);
                } else {
                    if !comps[i].is_constant() || comps[i].is_zero() {
                        return Err(Error::Unsupported(format!(
                            "x{i} has a negative power and is not a nonzero constant on the simplex"
                        )));
                    }
                    let v = comps[i].constant_term().recip();
                    mono = mono.scale(&num_traits::pow(v, (-a) as usize));
                }
            }
            coeff = &coeff + &mono;
        }
        let mut term = PolyForm::function(coeff);
        for &i in idx {
            term = term.wedge(&PolyForm::function(comps[i].clone()).d());
        }
        out = &out + &term;
    }
    Ok(out)
}

/// Integrate a form of a presented algebra over an affine chain lying in its
/// real points. Containment is certified by substituting each simplex's
/// parametrisation into the relations and demanding the zero polynomial.
pub fn xi_evaluate(alg: &FinPresAlgebra, omega: &LaurentForm, chain: &AffineChain) -> Result<Q> {
    if chain.ambient_dim != alg.vars() || omega.vars() != alg.vars() {
        return Err(Error::DimensionMismatch(format!(
            "chain in ℝ^{} for an algebra on {} generators",
            chain.ambient_dim,
            alg.vars()
        )));
    }
    if omega.degree() != chain.degree {
        return Err(Error::DegreeMismatch(format!(
            "{}-form paired with a {}-chain",
            omega.degree(),
            chain.degree
        )));
    }
    let relations = alg.relations();
    let mut total = Q::zero();
    for (c, s) in &chain.terms {
        for v in s {
            if !alg.is_point(v)? {
                return Err(Error::NotInVariety(format!("vertex {v:?}")));
            }
        }
        let chart = AffineMap::simplex_chart(s)?.to_poly_map();
        for r in &relations {
            if !r.compose(chart.components())?.is_zero() {
                return Err(Error::NotInVariety(format!("relation {r} does not vanish on {s:?}")));
            }
        }
        if *alg.kind() == AlgebraKind::Laurent {
            // an affine function without zeros at the vertices of a simplex
            // has none inside only if all vertex values share a sign
            for i in 0..alg.vars() {
                let pos = s.iter().filter(|v| v[i].is_positive()).count();
                if pos != 0 && pos != s.len() {
                    return Err(Error::NotInVariety(format!("x{i} changes sign on {s:?}")));
                }
            }
        }
        total += c * integrate_simplex(&pullback_algebraic(omega, &chart)?)?;
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MassReport {
    /// Squared k-volume of each simplex of the normalized chain.
    #[serde(with = "crate::exact::rational::serde_qvec")]
    pub squared_volumes: Vec<Q>,
    /// `Σ |c_i| vol(σ_i)`, a float since volumes are square roots.
    pub mass_float: f64,
}

/// Squared k-volume of an affine simplex: `det(G) / (k!)²` for the Gram
/// matrix `G` of its edge vectors.
pub fn squared_volume(vertices: &[Vec<Q>]) -> Q {
    let k = vertices.len() - 1;
    if k == 0 {
        return Q::one();
    }
    let edges: Vec<Vec<Q>> = vertices[1..]
        .iter()
        .map(|p| p.iter().zip(&vertices[0]).map(|(a, b)| a - b).collect())
        .collect();
    let gram: Vec<Vec<Q>> = edges
        .iter()
        .map(|u| {
            edges
                .iter()
                .map(|v| u.iter().zip(v).fold(Q::zero(), |acc, (a, b)| acc + a * b))
                .collect()
        })
        .collect();
    let kf = Q::from_integer(factorial(k));
    determinant(QMatrix::from_rows(gram)) / (&kf * &kf)
}

fn determinant(m: QMatrix) -> Q {
    let n = m.nrows();
    let mut a: Vec<Vec<Q>> = m.rows().to_vec();
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let pivot = a[c][c].clone();
        det *= &pivot;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &pivot;
            for j in c..n {
                let v = &f * &a[c][j];
                a[r][j] -= v;
            }
        }
    }
    det
}

fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn chain_mass(chain: &AffineChain) -> MassReport {
    let norm = chain.normalized();
    let squared_volumes: Vec<Q> = norm.terms.iter().map(|(_, s)| squared_volume(s)).collect();
    let mass_float = norm
        .terms
        .iter()
        .zip(&squared_volumes)
        .map(|((c, _), v)| to_f64(&c.abs()) * to_f64(v).sqrt())
        .sum();
    MassReport {
        squared_volumes,
        mass_float,
    }
}

/// Upper bound `min(|c|, |c − ∂β| + |β|)` for the flat seminorm over the
/// supplied `(k+1)`-chains `β`.
pub fn flat_upper_bound(chain: &AffineChain, betas: &[AffineChain]) -> Result<f64> {
    let mut best = chain_mass(chain).mass_float;
    for b in betas {
        let rest = chain.try_sub(&b.boundary()?)?;
        best = best.min(chain_mass(&rest).mass_float + chain_mass(b).mass_float);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::exact::poly::LaurentPoly;
    use crate::exact::rational::{q, qf};
    use crate::piecewise::{hat, whitney};
    use std::sync::Arc;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i).unwrap()
    }

    fn pt(c: &[i64]) -> Vec<Q> {
        c.iter().map(|&v| q(v)).collect()
    }

    #[test]
    fn standard_simplex_integrals() {
        assert_eq!(integrate_simplex(&PolyForm::dx(1, 0).unwrap()).unwrap(), q(1));
        let area = PolyForm::dx(2, 0).unwrap().wedge(&PolyForm::dx(2, 1).unwrap());
        assert_eq!(integrate_simplex(&area).unwrap(), qf(1, 2));
        let tdt = PolyForm::function(x(1, 0)).wedge(&PolyForm::dx(1, 0).unwrap());
        assert_eq!(integrate_simplex(&tdt).unwrap(), qf(1, 2));
        assert!(integrate_simplex(&PolyForm::dx(2, 0).unwrap()).is_err());
    }

    #[test]
    fn pairing_examples() {
        let seg = AffineChain::simplex(vec![pt(&[0]), pt(&[1])]).unwrap();
        assert_eq!(pair_form_chain(&PolyForm::dx(1, 0).unwrap(), &seg).unwrap(), q(1));
        let xy = PolyForm::function(&x(2, 0) * &x(2, 1));
        let diag = AffineChain::simplex(vec![pt(&[0, 0]), pt(&[1, 1])]).unwrap();
        assert_eq!(pair_form_chain(&xy.d(), &diag).unwrap(), q(1));
        let xdy = PolyForm::function(x(2, 0)).wedge(&PolyForm::dx(2, 1).unwrap());
        let tri = AffineChain::simplex(vec![pt(&[0, 0]), pt(&[1, 0]), pt(&[1, 1])]).unwrap();
        // ∫∫_{0≤y≤x≤1} dx dy = 1/2 with the triangle positively oriented
        assert_eq!(pair_form_chain(&xdy.d(), &tri).unwrap(), qf(1, 2));
        assert_eq!(pair_form_chain(&xdy, &tri.boundary().unwrap()).unwrap(), qf(1, 2));
        assert!(pair_form_chain(&xdy, &tri).is_err());
    }

    #[test]
    fn stokes_examples() {
        let xy = PolyForm::function(&x(2, 0) * &x(2, 1));
        let diag = AffineChain::simplex(vec![pt(&[0, 0]), pt(&[1, 1])]).unwrap();
        let r = stokes_check(&xy, &diag).unwrap();
        assert!(r.equal);
        assert_eq!(r.integral_of_d, q(1));
        let xdy = PolyForm::function(x(2, 0)).wedge(&PolyForm::dx(2, 1).unwrap());
        let tri = AffineChain::simplex(vec![pt(&[0, 0]), pt(&[1, 0]), pt(&[0, 1])]).unwrap();
        assert!(stokes_check(&xdy, &tri).unwrap().equal);
        assert!(stokes_check(&PolyForm::zero(2, 1), &tri).unwrap().equal);
    }

    #[test]
    fn boundary_squares_to_zero() {
        let tet = AffineChain::simplex(vec![pt(&[0, 0, 0]), pt(&[1, 0, 0]), pt(&[0, 1, 0]), pt(&[0, 0, 1])]).unwrap();
        assert!(tet.boundary().unwrap().boundary().unwrap().is_zero());
    }

    #[test]
    fn derham_of_whitney_and_constants() {
        let k = Arc::new(corpus::interval());
        let one = PiecewiseForm::constant(k.clone(), q(1));
        assert_eq!(derham_map(&one).unwrap().to_vector(), vec![q(1), q(1)]);
        let e = whitney(&SimplicialCochain::indicator(k.clone(), &[0, 1]).unwrap());
        assert_eq!(derham_map(&e).unwrap().to_vector(), vec![q(1)]);
        let h = hat(&k, 1);
        assert_eq!(derham_map(&h.d()).unwrap(), derham_map(&h).unwrap().coboundary());
    }

    #[test]
    fn xi_examples() {
        let seg = AffineChain::simplex(vec![pt(&[0, 0]), pt(&[1, 0])]).unwrap();
        let dx = LaurentForm::dx(2, 0).unwrap();
        let poly = FinPresAlgebra::polynomial(2);
        assert_eq!(xi_evaluate(&poly, &dx, &seg).unwrap(), q(1));
        let axes = FinPresAlgebra::monomial_quotient(2, vec![vec![1, 1]]).unwrap();
        assert_eq!(xi_evaluate(&axes, &dx, &seg).unwrap(), q(1));
        let across = AffineChain::simplex(vec![pt(&[1, 0]), pt(&[0, 1])]).unwrap();
        assert!(matches!(xi_evaluate(&axes, &dx, &across), Err(Error::NotInVariety(_))));
        // dy/x along a vertical segment where x = 2: (1/2)·2
        let laurent = FinPresAlgebra::laurent(2);
        let w = LaurentForm::monomial_form(LaurentPoly::monomial(vec![-1, 0], q(1)), &[1]).unwrap();
        let vert = AffineChain::simplex(vec![pt(&[2, 1]), pt(&[2, 3])]).unwrap();
        assert_eq!(xi_evaluate(&laurent, &w, &vert).unwrap(), q(1));
        let bad = AffineChain::simplex(vec![pt(&[1, 1]), pt(&[2, 1])]).unwrap();
        let dxx = LaurentForm::monomial_form(LaurentPoly::monomial(vec![-1, 0], q(1)), &[0]).unwrap();
        assert!(xi_evaluate(&laurent, &dxx, &bad).is_err());
    }

    #[test]
    fn masses() {
        let seg = AffineChain::simplex(vec![pt(&[0]), pt(&[1])]).unwrap();
        assert_eq!(chain_mass(&seg).mass_float, 1.0);
        let tri = AffineChain::simplex(vec![pt(&[0, 0]), pt(&[1, 0]), pt(&[0, 1])]).unwrap();
        assert_eq!(chain_mass(&tri).squared_volumes, vec![qf(1, 4)]);
        assert_eq!(chain_mass(&tri).mass_float, 0.5);
        let diag = AffineChain::simplex(vec![pt(&[0, 0]), pt(&[1, 1])]).unwrap();
        let m = chain_mass(&diag);
        assert_eq!(m.squared_volumes, vec![q(2)]);
        assert!((m.mass_float - 2f64.sqrt()).abs() < 1e-12);
        // the two legs of a right triangle: flat bound via the triangle itself
        let legs = AffineChain::new(
            2,
            1,
            vec![(q(1), vec![pt(&[0, 0]), pt(&[1, 0])]), (q(1), vec![pt(&[1, 0]), pt(&[1, 1])])],
        )
        .unwrap();
        let beta = AffineChain::simplex(vec![pt(&[0, 0]), pt(&[1, 0]), pt(&[1, 1])]).unwrap();
        let bound = flat_upper_bound(&legs, &[beta]).unwrap();
        assert!((bound - (2f64.sqrt() + 0.5)).abs() < 1e-12);
    }
}
