//! Exact linear solvers over presented algebras: primitives of closed forms,
//! the Euler equation, and algebraicity certificates.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Zero};
use serde::Serialize;

use super::{basis_form, coordinates, divides, from_coordinates, AlgebraKind, FinPresAlgebra, Key};
use crate::error::{Error, Result};
use crate::exact::form::{index_tuples, LaurentForm};
use crate::exact::poly::LaurentPoly;
use crate::exact::rational::Q;
use crate::linalg::{solve_rows, QRow};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactnessOutcome {
    /// A primitive `η` with `dη = ω`.
    Exact(LaurentForm),
    /// No primitive among the searched forms. `conclusive` is set when the
    /// search space contains every form that could possibly map to `ω`,
    /// which proves `ω` is not exact.
    Infeasible { conclusive: bool },
}

impl ExactnessOutcome {
    pub fn is_infeasible(&self) -> bool {
        matches!(self, ExactnessOutcome::Infeasible { .. })
    }
}

fn check_target(alg: &FinPresAlgebra, omega: &LaurentForm) -> Result<LaurentForm> {
    let w = alg.normalize_form(omega)?;
    if w.degree() == 0 {
        return Err(Error::DegreeMismatch("a primitive needs positive degree".into()));
    }
    if !alg.d(&w)?.is_zero() {
        return Err(Error::NotClosed);
    }
    Ok(w)
}

/// Combined multidegrees `α + 1_I` of the terms of a form.
fn multidegrees(w: &LaurentForm) -> BTreeSet<Vec<i32>> {
    w.term_multidegrees().into_iter().collect()
}

/// Basis of the degree-`j` block of multidegree `mu`: all `x^{μ − 1_J} dx_J`
/// that are nonzero in normal form.
fn block_basis(alg: &FinPresAlgebra, j: usize, mu: &[i32]) -> Vec<Key> {
    let n = alg.vars();
    let mut out = Vec::new();
    for idx in index_tuples(n, j) {
        let mut e = mu.to_vec();
        for &i in &idx {
            e[i] -= 1;
        }
        let ok = match alg.kind() {
            AlgebraKind::Laurent => true,
            AlgebraKind::Polynomial => e.iter().all(|&x| x >= 0),
            AlgebraKind::MonomialQuotient(gens) => {
                e.iter().all(|&x| x >= 0) && !gens.iter().any(|m| divides(m, &e))
            }
            AlgebraKind::UnivariateQuotient(_) => unreachable!("not multigraded"),
        };
        if ok {
            out.push((idx, e));
        }
    }
    out
}

fn box_exponents(n: usize, lo: i32, hi: i32, max_total: Option<i32>) -> Vec<Vec<i32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i32>| {
                (lo..=hi).filter_map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    match max_total {
                        Some(t) if w.iter().sum::<i32>() > t => None,
                        _ => Some(w),
                    }
                })
            })
            .collect();
    }
    out
}

/// Degree-`j` forms searched at bound `D`: total degree ≤ D for the
/// polynomial kinds, coefficient exponents in `[−D, D]` for Laurent.
fn box_basis(alg: &FinPresAlgebra, j: usize, bound: i64) -> Vec<Key> {
    let n = alg.vars();
    let d = bound.clamp(0, i32::MAX as i64) as i32;
    let mut out = Vec::new();
    match alg.kind() {
        AlgebraKind::Laurent => {
            for idx in index_tuples(n, j) {
                for e in box_exponents(n, -d, d, None) {
                    out.push((idx.clone(), e));
                }
            }
        }
        AlgebraKind::Polynomial | AlgebraKind::MonomialQuotient(_) => {
            let coeff_deg = d - j as i32;
            if coeff_deg >= 0 {
                for idx in index_tuples(n, j) {
                    for e in box_exponents(n, 0, coeff_deg, Some(coeff_deg)) {
                        if let AlgebraKind::MonomialQuotient(gens) = alg.kind() {
                            if gens.iter().any(|m| divides(m, &e)) {
                                continue;
                            }
                        }
                        out.push((idx.clone(), e));
                    }
                }
            }
        }
        AlgebraKind::UnivariateQuotient(f) => {
            let deg_f = f.len() as i32 - 1;
            match j {
                0 => {
                    for i in 0..deg_f.min(d + 1) {
                        out.push((vec![], vec![i]));
                    }
                }
                1 => {
                    for i in 0..deg_f.min(d + 1) {
                        out.push((vec![0], vec![i]));
                    }
                }
                _ => {}
            }
        }
    }
    out
}

/// Look for `η` in the span of `basis` with `dη = ω` (normal forms).
fn solve_in_span(alg: &FinPresAlgebra, omega: &LaurentForm, basis: &[Key]) -> Result<Option<LaurentForm>> {
    let n = alg.vars();
    let mut rows: Vec<QRow> = Vec::new();
    let mut row_of: HashMap<Key, usize> = HashMap::new();
    let mut row_index = |key: Key, rows: &mut Vec<QRow>| -> usize {
        *row_of.entry(key).or_insert_with(|| {
            rows.push(Vec::new());
            rows.len() - 1
        })
    };
    for (col, key) in basis.iter().enumerate() {
        let image = alg.d(&basis_form(n, key))?;
        for (k, c) in coordinates(&image) {
            let r = row_index(k, &mut rows);
            rows[r].push((col, c));
        }
    }
    let mut rhs_entries = Vec::new();
    for (k, c) in coordinates(omega) {
        let r = row_index(k, &mut rows);
        rhs_entries.push((r, c));
    }
    let mut rhs = vec![Q::zero(); rows.len()];
    for (r, c) in rhs_entries {
        rhs[r] = c;
    }
    let Some(x) = solve_rows(&rows, &rhs, basis.len()) else {
        return Ok(None);
    };
    let eta = from_coordinates(
        n,
        omega.degree() - 1,
        basis.iter().cloned().zip(x).filter(|(_, c)| !c.is_zero()),
    );
    let eta = alg.normalize_form(&eta)?;
    debug_assert_eq!(alg.d(&eta)?, alg.normalize_form(omega)?);
    Ok(Some(eta))
}

/// Search for a primitive of the closed form `ω` among forms within bound `D`.
pub fn truncated_exactness_solve(alg: &FinPresAlgebra, omega: &LaurentForm, bound: i64) -> Result<ExactnessOutcome> {
    let w = check_target(alg, omega)?;
    let j = w.degree() - 1;
    let basis = box_basis(alg, j, bound);
    if let Some(eta) = solve_in_span(alg, &w, &basis)? {
        return Ok(ExactnessOutcome::Exact(eta));
    }
    let conclusive = if alg.is_multigraded() {
        let in_box: BTreeSet<&Key> = basis.iter().collect();
        multidegrees(&w)
            .iter()
            .all(|mu| block_basis(alg, j, mu).iter().all(|k| in_box.contains(k)))
    } else {
        // the search covered the whole of Ω^j
        match alg.kind() {
            AlgebraKind::UnivariateQuotient(f) => bound + 1 >= f.len() as i64 - 1,
            _ => false,
        }
    };
    Ok(ExactnessOutcome::Infeasible { conclusive })
}

/// Solve in the multidegree blocks of `ω` only. Since `d` preserves
/// multidegree and each block is finite, the answer is conclusive.
pub fn graded_exactness_solve(alg: &FinPresAlgebra, omega: &LaurentForm) -> Result<ExactnessOutcome> {
    if !alg.is_multigraded() {
        return Err(Error::Unsupported("the algebra is not multigraded".into()));
    }
    let w = check_target(alg, omega)?;
    let j = w.degree() - 1;
    let basis: Vec<Key> = multidegrees(&w)
        .iter()
        .flat_map(|mu| block_basis(alg, j, mu))
        .collect();
    Ok(match solve_in_span(alg, &w, &basis)? {
        Some(eta) => ExactnessOutcome::Exact(eta),
        None => ExactnessOutcome::Infeasible { conclusive: true },
    })
}

/// `(dx_0/x_0) ∧ … ∧ (dx_{n−1}/x_{n−1})` in the Laurent algebra on `n` generators.
pub fn torus_witness(n: usize) -> LaurentForm {
    let idx: Vec<usize> = (0..n).collect();
    LaurentForm::monomial_form(LaurentPoly::monomial(vec![-1; n], Q::one()), &idx).expect("valid indices")
}

/// Laurent polynomials `F_1 … F_n` with exponents in `[−D, D]` solving
/// `Σ x_i ∂F_i/∂x_i = c`, or `None` when there are none.
pub fn euler_equation_solve(n: usize, c: &Q, bound: i64) -> Option<Vec<LaurentPoly>> {
    let d = bound.clamp(0, 64) as i32;
    let monomials = box_exponents(n, -d, d, None);
    let m = monomials.len();
    // unknown (i, α) has column i·m + position of α; one equation per α
    let mut rows: Vec<QRow> = vec![Vec::new(); m];
    let mut rhs = vec![Q::zero(); m];
    for (a, alpha) in monomials.iter().enumerate() {
        for (i, &ai) in alpha.iter().enumerate() {
            if ai != 0 {
                rows[a].push((i * m + a, Q::from_integer(ai.into())));
            }
        }
        if alpha.iter().all(|&x| x == 0) {
            rhs[a] = c.clone();
        }
    }
    if n == 0 {
        return c.is_zero().then(Vec::new);
    }
    let x = solve_rows(&rows, &rhs, n * m)?;
    Some(
        (0..n)
            .map(|i| {
                LaurentPoly::from_terms(n, monomials.iter().enumerate().map(|(a, e)| (e.clone(), x[i * m + a].clone())))
                    .expect("arity")
            })
            .collect(),
    )
}

/// Evidence that `da = 0`: a monic `q` with `q(a) = 0` and `h₁` with
/// `h₁(a) q'(a) = 1`, so `q'(a) da = d(q(a)) = 0` forces `da = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    /// Coefficients of `q`, constant term first.
    #[serde(with = "crate::exact::rational::serde_qvec")]
    pub q: Vec<Q>,
    /// Coefficients of `h₁`, constant term first.
    #[serde(with = "crate::exact::rational::serde_qvec")]
    pub h1: Vec<Q>,
}

fn element_coords(p: &LaurentPoly) -> BTreeMap<Vec<i32>, Q> {
    p.terms().map(|(e, c)| (e.0.clone(), c.clone())).collect()
}

/// `Σ c_i a^i` in normal form.
fn eval_at(alg: &FinPresAlgebra, coeffs: &[Q], a: &LaurentPoly) -> Result<LaurentPoly> {
    let mut acc = LaurentPoly::zero(alg.vars());
    for c in coeffs.iter().rev() {
        acc = alg.normalize(&(&(&acc * a) + &LaurentPoly::constant(alg.vars(), c.clone())))?;
    }
    Ok(acc)
}

fn derivative(coeffs: &[Q]) -> Vec<Q> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Q::from_integer((i as i64).into()))
        .collect()
}

/// Express `target` as a combination of `vectors`, if possible.
fn combination(vectors: &[LaurentPoly], target: &LaurentPoly) -> Option<Vec<Q>> {
    let mut row_of: HashMap<Vec<i32>, usize> = HashMap::new();
    let mut rows: Vec<QRow> = Vec::new();
    for (col, v) in vectors.iter().enumerate() {
        for (e, c) in element_coords(v) {
            let r = *row_of.entry(e).or_insert_with(|| {
                rows.push(Vec::new());
                rows.len() - 1
            });
            rows[r].push((col, c));
        }
    }
    let mut rhs = vec![Q::zero(); rows.len()];
    for (e, c) in element_coords(target) {
        match row_of.get(&e) {
            Some(&r) => rhs[r] = c,
            None => return None,
        }
    }
    solve_rows(&rows, &rhs, vectors.len())
}

/// Search for a certificate with `deg q ≤ D`. The minimal polynomial of `a`
/// is used for `q`: any other annihilator is a multiple of it, so if `q'(a)`
/// is not invertible for the minimal one it is not for any.
pub fn zero_diff_certificate(alg: &FinPresAlgebra, a: &LaurentPoly, bound: usize) -> Result<Option<Certificate>> {
    let a = alg.normalize(a)?;
    let mut powers = vec![alg.normalize(&LaurentPoly::one(alg.vars()))?];
    for d in 1..=bound {
        let next = alg.normalize(&(&powers[d - 1] * &a))?;
        if let Some(c) = combination(&powers, &next) {
            let mut q: Vec<Q> = c.into_iter().map(|x| -x).collect();
            q.push(Q::one());
            let dq = eval_at(alg, &derivative(&q), &a)?;
            let products = powers
                .iter()
                .map(|p| alg.normalize(&(p * &dq)))
                .collect::<Result<Vec<_>>>()?;
            let one = alg.normalize(&LaurentPoly::one(alg.vars()))?;
            return Ok(combination(&products, &one).map(|h1| Certificate { q, h1 }));
        }
        powers.push(next);
    }
    Ok(None)
}

/// Check both identities of a certificate after normal-form reduction.
pub fn verify_certificate(alg: &FinPresAlgebra, a: &LaurentPoly, cert: &Certificate) -> Result<bool> {
    let a = alg.normalize(a)?;
    let q_a = eval_at(alg, &cert.q, &a)?;
    let monic = cert.q.last().is_some_and(|c| c.is_one());
    let h = eval_at(alg, &cert.h1, &a)?;
    let dq = eval_at(alg, &derivative(&cert.q), &a)?;
    let prod = alg.normalize(&(&h * &dq))?;
    Ok(monic && q_a.is_zero() && prod == alg.normalize(&LaurentPoly::one(alg.vars()))?)
}
