//! Exact linear algebra over ℚ.
//!
//! Elimination is fraction-free: every row is scaled to a primitive integer
//! vector (content removed) and combined as `p·r − a·s`, so no rational
//! arithmetic happens inside the inner loop. Rows are sparse and pivots are
//! keyed by leading column, which keeps block-structured systems (one block
//! per simplex or per multidegree) from filling in across blocks.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::rational::Q;

/// Sparse integer row sorted by column.
pub type IntRow = Vec<(usize, BigInt)>;

/// Sparse rational row; need not be sorted.
pub type QRow = Vec<(usize, Q)>;

/// Clear denominators and remove content; the result is primitive with a
/// positive leading entry. Zero entries are dropped.
pub fn to_int_row(row: &[(usize, Q)]) -> IntRow {
    let mut entries: Vec<(usize, Q)> = Vec::with_capacity(row.len());
    let mut sorted: Vec<&(usize, Q)> = row.iter().filter(|(_, v)| !v.is_zero()).collect();
    sorted.sort_by_key(|(c, _)| *c);
    for (c, v) in sorted {
        match entries.last_mut() {
            Some((lc, lv)) if lc == c => *lv += v,
            _ => entries.push((*c, v.clone())),
        }
    }
    entries.retain(|(_, v)| !v.is_zero());
    let lcm = entries
        .iter()
        .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let mut out: IntRow = entries
        .into_iter()
        .map(|(c, v)| (c, (v * Q::from_integer(lcm.clone())).to_integer()))
        .collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut IntRow) {
    if row.is_empty() {
        return;
    }
    let g = row
        .iter()
        .fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    let neg = row[0].1.is_negative();
    if !g.is_one() || neg {
        let g = if neg { -g } else { g };
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

/// `p·r − a·s` where `p` is `s`'s pivot entry and `a` is `r`'s entry in the
/// same column, so the column cancels.
fn eliminate(r: &IntRow, s: &IntRow, col: usize) -> IntRow {
    let a = match r.binary_search_by_key(&col, |(c, _)| *c) {
        Ok(i) => r[i].1.clone(),
        Err(_) => return r.clone(),
    };
    let p = &s[s.binary_search_by_key(&col, |(c, _)| *c).unwrap()].1;
    let g = a.gcd(p);
    let (a, p) = (&a / &g, p / &g);
    let mut out = Vec::with_capacity(r.len() + s.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < s.len() {
        let take_r = j == s.len() || (i < r.len() && r[i].0 < s[j].0);
        let take_s = i == r.len() || (j < s.len() && s[j].0 < r[i].0);
        if take_r {
            out.push((r[i].0, &p * &r[i].1));
            i += 1;
        } else if take_s {
            out.push((s[j].0, -(&a * &s[j].1)));
            j += 1;
        } else {
            let v = &p * &r[i].1 - &a * &s[j].1;
            if !v.is_zero() {
                out.push((r[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    make_primitive(&mut out);
    out
}

/// Incremental row echelon form keyed by leading column.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: HashMap<usize, IntRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduce a row against the current pivots (leading columns only).
    pub fn reduce(&self, mut row: IntRow) -> IntRow {
        while let Some(&(c, _)) = row.first() {
            match self.pivots.get(&c) {
                Some(p) => row = eliminate(&row, p, c),
                None => break,
            }
        }
        row
    }

    /// Insert a row; returns its leading column if it was independent.
    pub fn insert(&mut self, row: IntRow) -> Option<usize> {
        let row = self.reduce(row);
        let c = row.first()?.0;
        self.pivots.insert(c, row);
        Some(c)
    }

    pub fn insert_q(&mut self, row: &[(usize, Q)]) -> Option<usize> {
        self.insert(to_int_row(row))
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.pivots.keys().copied().collect();
        v.sort_unstable();
        v
    }

    /// Gauss–Jordan back substitution: afterwards every pivot row is zero in
    /// every other pivot column.
    pub fn into_reduced(mut self) -> Reduced {
        let cols = self.pivot_columns();
        for &c in cols.iter().rev() {
            let pr = self.pivots[&c].clone();
            for &c2 in &cols {
                if c2 >= c {
                    break;
                }
                let r = &self.pivots[&c2];
                if r.binary_search_by_key(&c, |(k, _)| *k).is_ok() {
                    let nr = eliminate(r, &pr, c);
                    self.pivots.insert(c2, nr);
                }
            }
        }
        Reduced {
            cols,
            rows: self.pivots,
        }
    }
}

/// Reduced row echelon form (rows primitive integer, pivots not normalised).
#[derive(Clone, Debug)]
pub struct Reduced {
    cols: Vec<usize>,
    rows: HashMap<usize, IntRow>,
}

impl Reduced {
    pub fn rank(&self) -> usize {
        self.cols.len()
    }

    pub fn pivot_columns(&self) -> &[usize] {
        &self.cols
    }

    /// Basis of the null space of the original matrix (columns `0..ncols`).
    pub fn kernel(&self, ncols: usize) -> Vec<Vec<Q>> {
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; ncols];
            for &c in &self.cols {
                if c < ncols {
                    v[c] = true;
                }
            }
            v
        };
        let mut basis = Vec::new();
        for f in (0..ncols).filter(|&f| !is_pivot[f]) {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for &c in &self.cols {
                let row = &self.rows[&c];
                if let Ok(i) = row.binary_search_by_key(&f, |(k, _)| *k) {
                    let lead = &row[0].1;
                    v[c] = -Q::new(row[i].1.clone(), lead.clone());
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Reduce a vector against the pivot rows so that it vanishes in every
    /// pivot column. Two vectors differ by an element of the row space iff
    /// their reductions agree.
    pub fn reduce_q(&self, v: &[(usize, Q)]) -> Vec<(usize, Q)> {
        let mut acc: std::collections::BTreeMap<usize, Q> = std::collections::BTreeMap::new();
        for (c, x) in v {
            *acc.entry(*c).or_insert_with(Q::zero) += x;
        }
        for &c in &self.cols {
            let Some(x) = acc.get(&c).cloned() else { continue };
            if x.is_zero() {
                continue;
            }
            let row = &self.rows[&c];
            let f = x / Q::from_integer(row[0].1.clone());
            for (k, a) in row {
                *acc.entry(*k).or_insert_with(Q::zero) -= &f * Q::from_integer(a.clone());
            }
        }
        acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }

    /// Particular solution when the last column (index `ncols`) is the
    /// right-hand side; free variables are set to zero.
    pub fn particular(&self, ncols: usize) -> Option<Vec<Q>> {
        if self.cols.contains(&ncols) {
            return None;
        }
        let mut x = vec![Q::zero(); ncols];
        for &c in &self.cols {
            let row = &self.rows[&c];
            if let Ok(i) = row.binary_search_by_key(&ncols, |(k, _)| *k) {
                x[c] = Q::new(row[i].1.clone(), row[0].1.clone());
            }
        }
        Some(x)
    }
}

/// Rank of a set of sparse rational rows.
pub fn rank_of_rows<'a, I>(rows: I) -> usize
where
    I: IntoIterator<Item = &'a QRow>,
{
    let mut e = Echelon::new();
    for r in rows {
        e.insert_q(r);
    }
    e.rank()
}

/// Null space basis of the matrix whose rows are given.
pub fn kernel_of_rows<'a, I>(rows: I, ncols: usize) -> Vec<Vec<Q>>
where
    I: IntoIterator<Item = &'a QRow>,
{
    let mut e = Echelon::new();
    for r in rows {
        e.insert_q(r);
    }
    e.into_reduced().kernel(ncols)
}

/// Solve `M x = b` for sparse rows of `M`; `None` when inconsistent.
pub fn solve_rows(rows: &[QRow], rhs: &[Q], ncols: usize) -> Option<Vec<Q>> {
    assert_eq!(rows.len(), rhs.len());
    let mut e = Echelon::new();
    for (r, b) in rows.iter().zip(rhs) {
        let mut aug = r.clone();
        if !b.is_zero() {
            aug.push((ncols, b.clone()));
        }
        if e.insert_q(&aug) == Some(ncols) {
            return None;
        }
    }
    e.into_reduced().particular(ncols)
}

/// Dense rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Q>>,
}

impl QMatrix {
    pub fn from_rows(data: Vec<Vec<Q>>) -> Self {
        let rows = data.len();
        let cols = data.first().map(Vec::len).unwrap_or(0);
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        QMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![vec![Q::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Q::one();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i][j] = v;
    }

    pub fn rows(&self) -> &[Vec<Q>] {
        &self.data
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self.data.iter().enumerate().all(|(i, r)| {
                r.iter()
                    .enumerate()
                    .all(|(j, v)| if i == j { v.is_one() } else { v.is_zero() })
            })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(Q::is_zero))
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|r| r.iter().zip(v).fold(Q::zero(), |acc, (a, b)| acc + a * b))
            .collect()
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.data[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    if !other.data[k][j].is_zero() {
                        out.data[i][j] += &self.data[i][k] * &other.data[k][j];
                    }
                }
            }
        }
        out
    }

    pub fn sparse_rows(&self) -> Vec<QRow> {
        self.data
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(j, v)| (j, v.clone()))
                    .collect()
            })
            .collect()
    }

    /// Exact rank and a basis of the null space; each basis vector `v`
    /// satisfies `M·v = 0`.
    pub fn rank_kernel(&self) -> (usize, Vec<Vec<Q>>) {
        let rows = self.sparse_rows();
        let mut e = Echelon::new();
        for r in &rows {
            e.insert_q(r);
        }
        let red = e.into_reduced();
        (red.rank(), red.kernel(self.cols))
    }

    pub fn rank(&self) -> usize {
        rank_of_rows(&self.sparse_rows())
    }
}

/// Result of an exact linear program.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Q, point: Vec<Q> },
}

/// Maximise `c·z` subject to `A z = b`, `z ≥ 0`, by the two-phase simplex
/// method with Bland's rule (terminates, no cycling), in exact arithmetic.
pub fn lp_maximize(c: &[Q], a: &[Vec<Q>], b: &[Q]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    assert_eq!(b.len(), m);
    let width = n + m;
    let mut t: Vec<Vec<Q>> = Vec::with_capacity(m);
    let mut rhs: Vec<Q> = Vec::with_capacity(m);
    for i in 0..m {
        assert_eq!(a[i].len(), n);
        let flip = b[i].is_negative();
        let mut row: Vec<Q> = a[i].iter().map(|v| if flip { -v } else { v.clone() }).collect();
        row.extend((0..m).map(|k| if k == i { Q::one() } else { Q::zero() }));
        t.push(row);
        rhs.push(if flip { -&b[i] } else { b[i].clone() });
    }
    let mut basis: Vec<usize> = (n..width).collect();

    let phase1: Vec<Q> = (0..width)
        .map(|j| if j >= n { -Q::one() } else { Q::zero() })
        .collect();
    let all: Vec<bool> = vec![true; width];
    if simplex(&mut t, &mut rhs, &mut basis, &phase1, &all) {
        unreachable!("phase one objective is bounded above by zero");
    }
    let infeas: Q = basis
        .iter()
        .zip(&rhs)
        .fold(Q::zero(), |acc, (&j, v)| acc + &phase1[j] * v);
    if infeas.is_negative() {
        return LpOutcome::Infeasible;
    }
    for i in 0..m {
        if basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !t[i][j].is_zero()) {
                pivot(&mut t, &mut rhs, &mut basis, i, j);
            }
        }
    }

    let phase2: Vec<Q> = (0..width)
        .map(|j| if j < n { c[j].clone() } else { Q::zero() })
        .collect();
    let allowed: Vec<bool> = (0..width).map(|j| j < n).collect();
    if simplex(&mut t, &mut rhs, &mut basis, &phase2, &allowed) {
        return LpOutcome::Unbounded;
    }
    let mut point = vec![Q::zero(); n];
    for (i, &j) in basis.iter().enumerate() {
        if j < n {
            point[j] = rhs[i].clone();
        }
    }
    let value = point
        .iter()
        .zip(c)
        .fold(Q::zero(), |acc, (x, w)| acc + x * w);
    LpOutcome::Optimal { value, point }
}

fn pivot(t: &mut [Vec<Q>], rhs: &mut [Q], basis: &mut [usize], r: usize, col: usize) {
    let p = t[r][col].clone();
    for v in t[r].iter_mut() {
        *v = &*v / &p;
    }
    rhs[r] = &rhs[r] / &p;
    let prow = t[r].clone();
    let prhs = rhs[r].clone();
    for i in 0..t.len() {
        if i == r || t[i][col].is_zero() {
            continue;
        }
        let f = t[i][col].clone();
        for (v, pv) in t[i].iter_mut().zip(&prow) {
            if !pv.is_zero() {
                *v -= &f * pv;
            }
        }
        rhs[i] -= &f * &prhs;
    }
    basis[r] = col;
}

/// Returns `true` if the objective is unbounded.
fn simplex(
    t: &mut [Vec<Q>],
    rhs: &mut [Q],
    basis: &mut [usize],
    cost: &[Q],
    allowed: &[bool],
) -> bool {
    let width = cost.len();
    loop {
        let entering = (0..width).find(|&j| {
            if !allowed[j] || basis.contains(&j) {
                return false;
            }
            let reduced = basis
                .iter()
                .enumerate()
                .fold(cost[j].clone(), |acc, (i, &bj)| acc - &cost[bj] * &t[i][j]);
            reduced.is_positive()
        });
        let Some(j) = entering else {
            return false;
        };
        let mut best: Option<(usize, Q)> = None;
        for i in 0..t.len() {
            if t[i][j].is_positive() {
                let ratio = &rhs[i] / &t[i][j];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && basis[i] < basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
        }
        match best {
            None => return true,
            Some((i, _)) => pivot(t, rhs, basis, i, j),
        }
    }
}
