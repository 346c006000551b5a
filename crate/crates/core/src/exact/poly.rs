//! Sparse multivariate polynomials over ℚ.
//!
//! One generic type serves both the ordinary polynomial ring (non-negative
//! exponents) and the Laurent ring (signed exponents). Terms are kept in a
//! `BTreeMap` under graded-lexicographic order, zero coefficients are never
//! stored, so two polynomials are equal exactly when their term maps are.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{format_q, Q};
use crate::error::{Error, Result};

/// Exponent type of a polynomial ring.
pub trait Exponent: Copy + Ord + Eq + Hash + fmt::Debug + Send + Sync + 'static {
    const SIGNED: bool;
    fn zero() -> Self;
    fn to_i64(self) -> i64;
    fn from_i64(v: i64) -> Option<Self>;
}

impl Exponent for u32 {
    const SIGNED: bool = false;
    fn zero() -> Self {
        0
    }
    fn to_i64(self) -> i64 {
        self as i64
    }
    fn from_i64(v: i64) -> Option<Self> {
        u32::try_from(v).ok()
    }
}

impl Exponent for i32 {
    const SIGNED: bool = true;
    fn zero() -> Self {
        0
    }
    fn to_i64(self) -> i64 {
        self as i64
    }
    fn from_i64(v: i64) -> Option<Self> {
        i32::try_from(v).ok()
    }
}

/// Exponent vector ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Exps<E>(pub Vec<E>);

impl<E: Exponent> Exps<E> {
    pub fn zero(vars: usize) -> Self {
        Exps(vec![E::zero(); vars])
    }

    pub fn unit(vars: usize, i: usize) -> Self {
        let mut v = vec![E::zero(); vars];
        v[i] = E::from_i64(1).unwrap();
        Exps(v)
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|e| e.to_i64()).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        Exps(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| E::from_i64(a.to_i64() + b.to_i64()).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn as_i64(&self) -> Vec<i64> {
        self.0.iter().map(|e| e.to_i64()).collect()
    }
}

impl<E: Exponent> Ord for Exps<E> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl<E: Exponent> PartialOrd for Exps<E> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<E: Exponent> {
    vars: usize,
    terms: BTreeMap<Exps<E>, Q>,
}

/// Polynomials with non-negative exponents.
pub type MultiPoly = Poly<u32>;
/// Laurent polynomials: exponents may be negative.
pub type LaurentPoly = Poly<i32>;

impl<E: Exponent> Poly<E> {
    pub fn zero(vars: usize) -> Self {
        Poly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: usize, c: Q) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(Exps::zero(vars), c);
        p
    }

    pub fn one(vars: usize) -> Self {
        Self::constant(vars, Q::one())
    }

    /// The coordinate function `x_i`.
    pub fn var(vars: usize, i: usize) -> Result<Self> {
        if i >= vars {
            return Err(Error::IndexOutOfRange {
                index: i,
                bound: vars,
            });
        }
        let mut p = Self::zero(vars);
        p.add_term(Exps::unit(vars, i), Q::one());
        Ok(p)
    }

    pub fn monomial(exps: Vec<E>, c: Q) -> Self {
        let vars = exps.len();
        let mut p = Self::zero(vars);
        p.add_term(Exps(exps), c);
        p
    }

    pub fn from_terms<I>(vars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<E>, Q)>,
    {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            if e.len() != vars {
                return Err(Error::Arity {
                    expected: vars,
                    got: e.len(),
                });
            }
            p.add_term(Exps(e), c);
        }
        Ok(p)
    }

    pub(crate) fn add_term(&mut self, e: Exps<E>, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exps<E>, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[E]) -> Q {
        self.terms
            .get(&Exps(e.to_vec()))
            .cloned()
            .unwrap_or_else(Q::zero)
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(&vec![E::zero(); self.vars])
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.0.iter().all(|&x| x == E::zero()))
    }

    /// Largest total degree of a stored term; `None` for zero.
    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(Exps::degree).max()
    }

    /// Degree in one variable (max exponent), `None` for zero.
    pub fn degree_in(&self, i: usize) -> Option<i64> {
        self.terms.keys().map(|e| e.0[i].to_i64()).max()
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars);
        }
        Poly {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (e.clone(), x * c))
                .collect(),
        }
    }

    /// Multiply by the monomial `c·x^e`.
    pub fn mul_monomial(&self, e: &Exps<E>, c: &Q) -> Self {
        let mut out = Self::zero(self.vars);
        for (f, x) in &self.terms {
            out.add_term(f.add(e), x * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.vars);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn check_vars(&self, other: &Self) {
        assert_eq!(
            self.vars, other.vars,
            "polynomial variable counts differ ({} vs {})",
            self.vars, other.vars
        );
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.vars != other.vars {
            return Err(Error::VarMismatch {
                left: self.vars,
                right: other.vars,
            });
        }
        Ok(self + other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.vars != other.vars {
            return Err(Error::VarMismatch {
                left: self.vars,
                right: other.vars,
            });
        }
        Ok(self * other)
    }

    /// Exact value at `x`. Negative powers of a zero coordinate are rejected.
    pub fn eval(&self, x: &[Q]) -> Result<Q> {
        if x.len() != self.vars {
            return Err(Error::Arity {
                expected: self.vars,
                got: x.len(),
            });
        }
        let mut total = Q::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (xi, ei) in x.iter().zip(&e.0) {
                let k = ei.to_i64();
                if k == 0 {
                    continue;
                }
                if k < 0 && xi.is_zero() {
                    return Err(Error::Unsupported(
                        "negative power of a vanishing coordinate".into(),
                    ));
                }
                let p = num_traits::pow(xi.clone(), k.unsigned_abs() as usize);
                term = if k > 0 { term * p } else { term / p };
            }
            total += term;
        }
        Ok(total)
    }

    /// Exact partial derivative in variable `i`.
    pub fn partial(&self, i: usize) -> Result<Self> {
        if i >= self.vars {
            return Err(Error::IndexOutOfRange {
                index: i,
                bound: self.vars,
            });
        }
        let mut out = Self::zero(self.vars);
        for (e, c) in &self.terms {
            let k = e.0[i].to_i64();
            if k == 0 {
                continue;
            }
            let mut f = e.clone();
            f.0[i] = E::from_i64(k - 1).expect("exponent underflow");
            out.add_term(f, c * Q::from_integer(k.into()));
        }
        Ok(out)
    }

    /// `x_i ∂/∂x_i`, the Euler operator in one variable.
    pub fn euler(&self, i: usize) -> Result<Self> {
        if i >= self.vars {
            return Err(Error::IndexOutOfRange {
                index: i,
                bound: self.vars,
            });
        }
        let mut out = Self::zero(self.vars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * Q::from_integer(e.0[i].to_i64().into()));
        }
        Ok(out)
    }

    /// Reinterpret in a ring with `vars` variables, sending `x_i` to `x_{map[i]}`.
    pub fn relabel(&self, vars: usize, map: &[usize]) -> Self {
        let mut out = Self::zero(vars);
        for (e, c) in &self.terms {
            let mut f = vec![E::zero(); vars];
            for (i, &ei) in e.0.iter().enumerate() {
                f[map[i]] = ei;
            }
            out.add_term(Exps(f), c.clone());
        }
        out
    }

    /// Keep only the terms satisfying `keep`.
    pub fn filter_terms(&self, mut keep: impl FnMut(&Exps<E>) -> bool) -> Self {
        Poly {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }
}

impl MultiPoly {
    /// Substitute polynomials for the variables: `p(g_0, …, g_{n-1})`.
    pub fn compose(&self, g: &[MultiPoly]) -> Result<MultiPoly> {
        if g.len() != self.vars {
            return Err(Error::Arity {
                expected: self.vars,
                got: g.len(),
            });
        }
        let out_vars = g.first().map(|p| p.vars).unwrap_or(0);
        if g.iter().any(|p| p.vars != out_vars) {
            return Err(Error::DimensionMismatch(
                "substituted polynomials live in different rings".into(),
            ));
        }
        let mut powers: Vec<Vec<MultiPoly>> = g.iter().map(|p| vec![MultiPoly::one(p.vars)]).collect();
        let mut out = MultiPoly::zero(out_vars);
        for (e, c) in &self.terms {
            let mut term = MultiPoly::constant(out_vars, c.clone());
            for (i, &k) in e.0.iter().enumerate() {
                let k = k as usize;
                while powers[i].len() <= k {
                    let next = powers[i].last().unwrap() * &g[i];
                    powers[i].push(next);
                }
                if k > 0 {
                    term = &term * &powers[i][k];
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// `∫_0^1 p dx_i`, returned in the ring without `x_i`.
    pub fn integrate_unit(&self, i: usize) -> Result<MultiPoly> {
        if i >= self.vars {
            return Err(Error::IndexOutOfRange {
                index: i,
                bound: self.vars,
            });
        }
        let mut out = MultiPoly::zero(self.vars - 1);
        for (e, c) in &self.terms {
            let k = e.0[i] as i64;
            let mut f = e.0.clone();
            f.remove(i);
            out.add_term(Exps(f), c / Q::from_integer((k + 1).into()));
        }
        Ok(out)
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.vars);
        for (e, c) in &self.terms {
            out.add_term(Exps(e.0.iter().map(|&k| k as i32).collect()), c.clone());
        }
        out
    }
}

impl LaurentPoly {
    /// The polynomial part if no exponent is negative.
    pub fn to_multi(&self) -> Option<MultiPoly> {
        let mut out = MultiPoly::zero(self.vars);
        for (e, c) in &self.terms {
            let f: Option<Vec<u32>> = e.0.iter().map(|&k| u32::try_from(k).ok()).collect();
            out.add_term(Exps(f?), c.clone());
        }
        Some(out)
    }

    /// Multidegree if the polynomial is homogeneous for the ℤⁿ grading.
    pub fn multidegree(&self) -> Option<Vec<i32>> {
        let mut it = self.terms.keys();
        let first = it.next()?.0.clone();
        it.all(|e| e.0 == first).then_some(first)
    }
}

impl<E: Exponent> Add for &Poly<E> {
    type Output = Poly<E>;
    fn add(self, other: &Poly<E>) -> Poly<E> {
        self.check_vars(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<E: Exponent> Sub for &Poly<E> {
    type Output = Poly<E>;
    fn sub(self, other: &Poly<E>) -> Poly<E> {
        self.check_vars(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl<E: Exponent> Mul for &Poly<E> {
    type Output = Poly<E>;
    fn mul(self, other: &Poly<E>) -> Poly<E> {
        self.check_vars(other);
        let mut out = Poly::zero(self.vars);
        for (e, c) in &self.terms {
            for (f, d) in &other.terms {
                out.add_term(e.add(f), c * d);
            }
        }
        out
    }
}

impl<E: Exponent> Neg for &Poly<E> {
    type Output = Poly<E>;
    fn neg(self) -> Poly<E> {
        Poly {
            vars: self.vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl<E: Exponent> fmt::Debug for Poly<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<E: Exponent> fmt::Display for Poly<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .0
                .iter()
                .enumerate()
                .filter(|(_, k)| k.to_i64() != 0)
                .map(|(i, k)| match k.to_i64() {
                    1 => format!("x{i}"),
                    k => format!("x{i}^{k}"),
                })
                .collect();
            let (sign, mag) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if n == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mono.is_empty() {
                write!(f, "{}", format_q(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", format_q(&mag), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{q, qf};

    fn mp(vars: usize, terms: &[(&[u32], i64)]) -> MultiPoly {
        MultiPoly::from_terms(vars, terms.iter().map(|(e, c)| (e.to_vec(), q(*c)))).unwrap()
    }

    #[test]
    fn eval_examples() {
        let p = mp(1, &[(&[2], 1), (&[0], 1)]);
        assert_eq!(p.eval(&[q(2)]).unwrap(), q(5));
        assert_eq!(MultiPoly::zero(3).eval(&[q(1), q(2), q(3)]).unwrap(), q(0));
        let p = mp(2, &[(&[1, 1], 1), (&[0, 1], -1)]);
        assert_eq!(p.eval(&[q(1), q(7)]).unwrap(), q(0));
        assert_eq!(
            p.eval(&[q(1)]),
            Err(Error::Arity {
                expected: 2,
                got: 1
            })
        );
    }

    #[test]
    fn partial_examples() {
        assert_eq!(mp(1, &[(&[3], 1)]).partial(0).unwrap(), mp(1, &[(&[2], 3)]));
        assert!(mp(2, &[(&[1, 0], 1)]).partial(1).unwrap().is_zero());
        let p = mp(2, &[(&[2, 1], 1), (&[0, 1], 1)]);
        assert_eq!(p.partial(0).unwrap(), mp(2, &[(&[1, 1], 2)]));
        assert!(p.partial(2).is_err());
    }

    #[test]
    fn laurent_eval_and_derivative() {
        let p = LaurentPoly::monomial(vec![-1], q(1));
        assert_eq!(p.eval(&[q(4)]).unwrap(), qf(1, 4));
        assert!(p.eval(&[q(0)]).is_err());
        assert_eq!(p.partial(0).unwrap(), LaurentPoly::monomial(vec![-2], q(-1)));
        let x = LaurentPoly::var(1, 0).unwrap();
        assert_eq!(&x * &p, LaurentPoly::one(1));
    }

    #[test]
    fn compose_and_integrate() {
        // (x0 + x1)^2 at x0 = 2t, x1 = 1
        let p = mp(2, &[(&[2, 0], 1), (&[1, 1], 2), (&[0, 2], 1)]);
        let g = [mp(1, &[(&[1], 2)]), mp(1, &[(&[0], 1)])];
        let r = p.compose(&g).unwrap();
        assert_eq!(r, mp(1, &[(&[2], 4), (&[1], 4), (&[0], 1)]));
        // ∫_0^1 (4t^2 + 4t + 1) dt = 4/3 + 2 + 1
        let i = r.integrate_unit(0).unwrap();
        assert_eq!(i.constant_term(), qf(13, 3));
    }

    #[test]
    fn display() {
        let p = mp(2, &[(&[2, 0], 3), (&[0, 1], -1), (&[0, 0], 1)]);
        assert_eq!(p.to_string(), "3*x0^2 - x1 + 1");
    }
}
