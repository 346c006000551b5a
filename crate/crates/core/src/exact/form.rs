//! Exterior differential forms with polynomial coefficients on one chart.
//!
//! A form of degree `n` is a finite sum `Σ_I p_I dx_I` over strictly
//! increasing index tuples `I` with `|I| = n`. Zero coefficients are never
//! stored, so equality is structural.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use super::affine::PolyMap;
use super::poly::{Exponent, Poly};
use super::rational::Q;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Form<E: Exponent> {
    vars: usize,
    degree: usize,
    terms: BTreeMap<Vec<usize>, Poly<E>>,
}

pub type PolyForm = Form<u32>;
pub type LaurentForm = Form<i32>;

/// Merge two increasing index tuples. Returns `None` if they overlap,
/// otherwise the merged tuple and whether the shuffle is odd.
pub fn merge_indices(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut odd = false;
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j] < a[i] {
            // b[j] jumps over the remaining elements of a
            if (a.len() - i) % 2 == 1 {
                odd = !odd;
            }
            out.push(b[j]);
            j += 1;
        } else {
            return None;
        }
    }
    Some((out, odd))
}

/// All strictly increasing tuples of length `k` drawn from `0..n`.
pub fn index_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

impl<E: Exponent> Form<E> {
    pub fn zero(vars: usize, degree: usize) -> Self {
        Form {
            vars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// A function viewed as a 0-form.
    pub fn function(p: Poly<E>) -> Self {
        let mut f = Self::zero(p.vars(), 0);
        f.add_term(Vec::new(), p);
        f
    }

    pub fn dx(vars: usize, i: usize) -> Result<Self> {
        if i >= vars {
            return Err(Error::IndexOutOfRange {
                index: i,
                bound: vars,
            });
        }
        let mut f = Self::zero(vars, 1);
        f.add_term(vec![i], Poly::one(vars));
        Ok(f)
    }

    /// `p dx_{i_1} ∧ … ∧ dx_{i_n}`; the indices may be in any order and
    /// the sign of the sorting permutation is applied.
    pub fn monomial_form(p: Poly<E>, indices: &[usize]) -> Result<Self> {
        let vars = p.vars();
        let mut f = Self::zero(vars, 0);
        f.add_term(Vec::new(), p);
        for &i in indices {
            f = f.try_wedge(&Self::dx(vars, i)?)?;
        }
        Ok(f)
    }

    pub fn from_terms<I>(vars: usize, degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Poly<E>)>,
    {
        let mut f = Self::zero(vars, degree);
        for (idx, p) in terms {
            if idx.len() != degree {
                return Err(Error::DegreeMismatch(format!(
                    "index tuple {idx:?} in a {degree}-form"
                )));
            }
            if idx.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Parse(format!(
                    "index tuple {idx:?} is not strictly increasing"
                )));
            }
            if let Some(&i) = idx.iter().find(|&&i| i >= vars) {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    bound: vars,
                });
            }
            if p.vars() != vars {
                return Err(Error::VarMismatch {
                    left: vars,
                    right: p.vars(),
                });
            }
            f.add_term(idx, p);
        }
        Ok(f)
    }

    pub(crate) fn add_term(&mut self, idx: Vec<usize>, p: Poly<E>) {
        if p.is_zero() {
            return;
        }
        match self.terms.entry(idx) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(p);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &p;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Poly<E>)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, idx: &[usize]) -> Poly<E> {
        self.terms
            .get(idx)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.vars))
    }

    /// The coefficient of a 0-form.
    pub fn as_function(&self) -> Option<Poly<E>> {
        (self.degree == 0).then(|| self.coefficient(&[]))
    }

    /// Largest per-term total degree (coefficient degree + form degree).
    pub fn total_degree(&self) -> Option<i64> {
        self.terms
            .values()
            .filter_map(|p| p.total_degree())
            .max()
            .map(|d| d + self.degree as i64)
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars, self.degree);
        }
        Form {
            vars: self.vars,
            degree: self.degree,
            terms: self.terms.iter().map(|(i, p)| (i.clone(), p.scale(c))).collect(),
        }
    }

    /// Multiply by a function.
    pub fn mul_fn(&self, f: &Poly<E>) -> Self {
        let mut out = Self::zero(self.vars, self.degree);
        for (i, p) in &self.terms {
            out.add_term(i.clone(), p * f);
        }
        out
    }

    /// Apply a coefficient-wise map, keeping the exterior structure.
    pub fn map_coefficients(&self, mut f: impl FnMut(&Poly<E>) -> Poly<E>) -> Self {
        let mut out = Self::zero(self.vars, self.degree);
        for (i, p) in &self.terms {
            out.add_term(i.clone(), f(p));
        }
        out
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VarMismatch {
                left: self.vars,
                right: other.vars,
            });
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(format!(
                "adding a {}-form to a {}-form",
                self.degree, other.degree
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(self - other)
    }

    pub fn try_wedge(&self, other: &Self) -> Result<Self> {
        if self.vars != other.vars {
            return Err(Error::VarMismatch {
                left: self.vars,
                right: other.vars,
            });
        }
        let mut out = Self::zero(self.vars, self.degree + other.degree);
        for (i, p) in &self.terms {
            for (j, r) in &other.terms {
                if let Some((k, odd)) = merge_indices(i, j) {
                    let c = p * r;
                    out.add_term(k, if odd { -&c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Wedge product; panics on a variable-count mismatch.
    pub fn wedge(&self, other: &Self) -> Self {
        self.try_wedge(other).expect("wedge of forms on different charts")
    }

    /// Exterior derivative `d(p dx_I) = Σ_i ∂_i p dx_i ∧ dx_I`.
    pub fn d(&self) -> Self {
        let mut out = Self::zero(self.vars, self.degree + 1);
        for (idx, p) in &self.terms {
            for i in 0..self.vars {
                if idx.contains(&i) {
                    continue;
                }
                let dp = p.partial(i).expect("index in range");
                if dp.is_zero() {
                    continue;
                }
                let (k, odd) = merge_indices(&[i], idx).expect("disjoint");
                out.add_term(k, if odd { -&dp } else { dp });
            }
        }
        out
    }
}

impl PolyForm {
    /// Pull back along a polynomial map `φ: ℚ^{n_in} → ℚ^{vars}`:
    /// coefficients are composed with `φ` and `dx_j ↦ dφ_j`.
    pub fn pullback(&self, map: &PolyMap) -> Result<PolyForm> {
        if map.n_out() != self.vars {
            return Err(Error::DimensionMismatch(format!(
                "pullback of a form on {} variables along a map into {} variables",
                self.vars,
                map.n_out()
            )));
        }
        let n_in = map.n_in();
        let mut differentials: Vec<Option<PolyForm>> = vec![None; self.vars];
        let mut out = PolyForm::zero(n_in, self.degree);
        if self.degree > n_in {
            return Ok(out);
        }
        for (idx, p) in &self.terms {
            let coeff = p.compose(map.components())?;
            if coeff.is_zero() {
                continue;
            }
            let mut term = PolyForm::function(coeff);
            for &j in idx {
                let dj = differentials[j]
                    .get_or_insert_with(|| PolyForm::function(map.components()[j].clone()).d());
                term = term.wedge(dj);
                if term.is_zero() {
                    break;
                }
            }
            if !term.is_zero() {
                out = &out + &term;
            }
        }
        Ok(out)
    }

    /// Substitute coordinate values into every coefficient (a 0-form gives a constant).
    pub fn eval_coefficients(&self, x: &[Q]) -> Result<BTreeMap<Vec<usize>, Q>> {
        self.terms
            .iter()
            .map(|(i, p)| Ok((i.clone(), p.eval(x)?)))
            .collect()
    }

    pub fn to_laurent(&self) -> LaurentForm {
        let mut out = LaurentForm::zero(self.vars, self.degree);
        for (i, p) in &self.terms {
            out.add_term(i.clone(), p.to_laurent());
        }
        out
    }

    /// Insert or remove variables: `x_i` becomes `x_{map[i]}` in a chart with `vars` variables.
    pub fn relabel(&self, vars: usize, map: &[usize]) -> PolyForm {
        let mut out = PolyForm::zero(vars, self.degree);
        for (idx, p) in &self.terms {
            let mut sorted: Vec<usize> = idx.iter().map(|&i| map[i]).collect();
            let odd = sort_sign(&mut sorted);
            let c = p.relabel(vars, map);
            out.add_term(sorted, if odd { -&c } else { c });
        }
        out
    }
}

impl LaurentForm {
    pub fn to_poly(&self) -> Option<PolyForm> {
        let mut out = PolyForm::zero(self.vars, self.degree);
        for (i, p) in &self.terms {
            out.add_term(i.clone(), p.to_multi()?);
        }
        Some(out)
    }

    /// Combined multidegree of one term: coefficient exponents plus the
    /// indicator of the differentials (each `dx_i` has multidegree `e_i`).
    pub fn term_multidegrees(&self) -> Vec<Vec<i32>> {
        let mut out = Vec::new();
        for (idx, p) in &self.terms {
            for (e, _) in p.terms() {
                let mut m = e.0.clone();
                for &i in idx {
                    m[i] += 1;
                }
                out.push(m);
            }
        }
        out
    }
}

/// Sort in place; return whether the permutation was odd.
pub fn sort_sign(v: &mut [usize]) -> bool {
    let mut odd = false;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    odd
}

impl<E: Exponent> Add for &Form<E> {
    type Output = Form<E>;
    fn add(self, other: &Form<E>) -> Form<E> {
        self.compatible(other).expect("incompatible forms");
        let mut out = self.clone();
        for (i, p) in &other.terms {
            out.add_term(i.clone(), p.clone());
        }
        out
    }
}

impl<E: Exponent> Sub for &Form<E> {
    type Output = Form<E>;
    fn sub(self, other: &Form<E>) -> Form<E> {
        self.compatible(other).expect("incompatible forms");
        let mut out = self.clone();
        for (i, p) in &other.terms {
            out.add_term(i.clone(), -p);
        }
        out
    }
}

impl<E: Exponent> Neg for &Form<E> {
    type Output = Form<E>;
    fn neg(self) -> Form<E> {
        Form {
            vars: self.vars,
            degree: self.degree,
            terms: self.terms.iter().map(|(i, p)| (i.clone(), -p)).collect(),
        }
    }
}

impl<E: Exponent> fmt::Debug for Form<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<E: Exponent> fmt::Display for Form<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(i, p)| {
                let dx: Vec<String> = i.iter().map(|k| format!("dx{k}")).collect();
                if dx.is_empty() {
                    format!("({p})")
                } else {
                    format!("({p}) {}", dx.join("^"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
