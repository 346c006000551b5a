//! Cohomology over ℚ: simplicial cochains, the truncated piecewise de Rham
//! complex, Laurent blocks, and the comparison and homotopy harnesses.
//!
//! The truncated piecewise complex in degree `k` is the space `C^k` of
//! compatible families of `k`-forms with per-term total degree ≤ D. It sits
//! inside the free space `F^k = ⊕_a F^k(a)` over maximal simplices `a` as the
//! kernel of the trace-difference map `R_k`. With `d_k: F^k → F^{k+1}`,
//!
//! ```text
//! dim C^k = dim F^k − rank R_k
//! dim Z^k = dim F^k − rank [R_k; d_k]
//! dim B^k = dim C^{k−1} − dim Z^{k−1}
//! ```

use std::collections::HashMap;
use std::sync::Arc;
use std::time::Instant;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::affine::PolyMap;
use crate::exact::form::{index_tuples, LaurentForm, PolyForm};
use crate::exact::poly::{LaurentPoly, MultiPoly};
use crate::exact::rational::Q;
use crate::kahler::FinPresAlgebra;
use crate::linalg::{rank_of_rows, Echelon, QMatrix, QRow};
use crate::pairing::derham_map;
use crate::piecewise::{adjacency_homotopy, whitney, whitney_elementary, PiecewiseForm, SimplicialCochain};
use crate::polyhedron::{are_adjacent, face_embedding, is_face, Polyhedron, RectilinearMap, Simplex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiReport {
    /// Dimension of the cochain space in each degree.
    pub dims: Vec<usize>,
    pub kernel_dims: Vec<usize>,
    pub image_dims: Vec<usize>,
    pub betti: Vec<usize>,
    /// Truncation bound, when the complex is truncated.
    pub bound: Option<i64>,
    /// Whether recomputing at `bound + 1` gave the same Betti numbers.
    pub stabilized: Option<bool>,
    pub elapsed_ms: u64,
}

impl BettiReport {
    fn from_ranks(dims: Vec<usize>, kernel_dims: Vec<usize>, image_dims: Vec<usize>) -> Self {
        let betti = kernel_dims.iter().zip(&image_dims).map(|(z, b)| z - b).collect();
        BettiReport {
            dims,
            kernel_dims,
            image_dims,
            betti,
            bound: None,
            stabilized: None,
            elapsed_ms: 0,
        }
    }
}

/// A finite cochain complex of ℚ-vector spaces with sparse differentials.
/// `differentials[k]` lists the rows of `d_k: V^k → V^{k+1}`.
#[derive(Clone, Debug)]
pub struct ChainComplexQ {
    dims: Vec<usize>,
    differentials: Vec<Vec<QRow>>,
}

impl ChainComplexQ {
    pub fn new(dims: Vec<usize>, differentials: Vec<Vec<QRow>>) -> Result<Self> {
        if differentials.len() + 1 != dims.len() {
            return Err(Error::DimensionMismatch("one differential between consecutive spaces".into()));
        }
        for (k, rows) in differentials.iter().enumerate() {
            if rows.len() != dims[k + 1] || rows.iter().flatten().any(|(c, _)| *c >= dims[k]) {
                return Err(Error::DimensionMismatch(format!("differential {k} has the wrong shape")));
            }
        }
        Ok(ChainComplexQ { dims, differentials })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn differential(&self, k: usize) -> QMatrix {
        let mut m = QMatrix::zeros(self.dims[k + 1], self.dims[k]);
        for (r, row) in self.differentials[k].iter().enumerate() {
            for (c, v) in row {
                m.set(r, *c, m.get(r, *c) + v);
            }
        }
        m
    }

    /// `d_{k+1} ∘ d_k = 0` for every `k`.
    pub fn is_complex(&self) -> bool {
        (0..self.differentials.len().saturating_sub(1))
            .all(|k| self.differential(k + 1).mul(&self.differential(k)).is_zero())
    }

    pub fn betti(&self) -> BettiReport {
        let ranks: Vec<usize> = self.differentials.iter().map(rank_of_rows).collect();
        let n = self.dims.len();
        let kernel_dims = (0..n).map(|k| self.dims[k] - ranks.get(k).copied().unwrap_or(0)).collect();
        let image_dims = (0..n).map(|k| if k == 0 { 0 } else { ranks[k - 1] }).collect();
        BettiReport::from_ranks(self.dims.clone(), kernel_dims, image_dims)
    }
}

/// `(rank, kernel basis)` of a rational matrix.
pub fn rank_kernel(m: &QMatrix) -> (usize, Vec<Vec<Q>>) {
    m.rank_kernel()
}

/// The simplicial cochain complex of `K` with the standard coboundary.
pub fn simplicial_complex(k: &Polyhedron) -> ChainComplexQ {
    let top = k.dim();
    let index: Vec<HashMap<&Simplex, usize>> = (0..=top)
        .map(|d| k.simplices_of_dim(d).enumerate().map(|(i, s)| (s, i)).collect())
        .collect();
    let dims: Vec<usize> = index.iter().map(HashMap::len).collect();
    let mut differentials = Vec::new();
    for d in 0..top {
        let rows = k
            .simplices_of_dim(d + 1)
            .map(|t| {
                (0..t.len())
                    .map(|j| {
                        let mut f = t.clone();
                        f.remove(j);
                        let sign = if j % 2 == 0 { Q::one() } else { -Q::one() };
                        (index[d][&f], sign)
                    })
                    .collect()
            })
            .collect();
        differentials.push(rows);
    }
    ChainComplexQ::new(dims, differentials).expect("well-formed coboundary")
}

pub fn simplicial_cohomology(k: &Polyhedron) -> BettiReport {
    let start = Instant::now();
    let mut r = simplicial_complex(k).betti();
    r.elapsed_ms = start.elapsed().as_millis() as u64;
    r
}

/// A basis element of the free space: `x^e dx_I` on the maximal simplex with
/// the given position among the maximal simplices.
type PieceKey = (usize, Vec<usize>, Vec<u32>);

/// Degree-by-degree data of the truncated piecewise complex.
pub struct TruncatedComplex {
    base: Arc<Polyhedron>,
    bound: i64,
    maximal: Vec<Simplex>,
    /// `basis[k]` enumerates the free space `F^k`.
    basis: Vec<Vec<PieceKey>>,
    column: Vec<HashMap<PieceKey, usize>>,
    /// Sparse images `d_k(e_j)` in `F^{k+1}` coordinates.
    d_images: Vec<Vec<QRow>>,
    /// Rows of the compatibility map `R_k`.
    compat_rows: Vec<Vec<QRow>>,
}

fn exponents_up_to(n: usize, max_total: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                let used: u32 = v.iter().sum();
                (0..=max_total - used).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn transpose(images: &[QRow], nrows: usize) -> Vec<QRow> {
    let mut rows: Vec<QRow> = vec![Vec::new(); nrows];
    for (c, img) in images.iter().enumerate() {
        for (r, v) in img {
            rows[*r].push((c, v.clone()));
        }
    }
    rows
}

impl TruncatedComplex {
    pub fn new(base: Arc<Polyhedron>, bound: i64) -> Self {
        let maximal = base.maximal_simplices();
        let top = base.dim();
        let mut basis = Vec::new();
        for k in 0..=top {
            let mut b = Vec::new();
            if bound >= k as i64 {
                let coeff = (bound - k as i64) as u32;
                for (ai, a) in maximal.iter().enumerate() {
                    let n = a.len() - 1;
                    for idx in index_tuples(n, k) {
                        for e in exponents_up_to(n, coeff) {
                            b.push((ai, idx.clone(), e));
                        }
                    }
                }
            }
            basis.push(b);
        }
        let column: Vec<HashMap<PieceKey, usize>> = basis
            .iter()
            .map(|b| b.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect())
            .collect();
        let mut out = TruncatedComplex {
            base,
            bound,
            maximal,
            basis,
            column,
            d_images: Vec::new(),
            compat_rows: Vec::new(),
        };
        out.d_images = (0..=top).map(|k| out.build_d(k)).collect();
        out.compat_rows = (0..=top).map(|k| out.build_compat(k)).collect();
        out
    }

    fn monomial(&self, key: &PieceKey) -> PolyForm {
        let n = self.maximal[key.0].len() - 1;
        PolyForm::from_terms(n, key.1.len(), [(key.1.clone(), MultiPoly::monomial(key.2.clone(), Q::one()))])
            .expect("valid basis element")
    }

    fn build_d(&self, k: usize) -> Vec<QRow> {
        self.basis[k]
            .iter()
            .map(|key| {
                let img = self.monomial(key).d();
                let mut row = Vec::new();
                for (idx, p) in img.terms() {
                    for (e, c) in p.terms() {
                        let target = (key.0, idx.clone(), e.0.clone());
                        row.push((self.column[k + 1][&target], c.clone()));
                    }
                }
                row
            })
            .collect()
    }

    fn build_compat(&self, k: usize) -> Vec<QRow> {
        // shared faces of dimension ≥ k and the maximal simplices containing them
        let mut shared: Vec<(Simplex, Vec<usize>)> = Vec::new();
        for f in self.base.simplices() {
            if f.len() < k + 1 {
                continue;
            }
            let cof: Vec<usize> = (0..self.maximal.len()).filter(|&i| is_face(f, &self.maximal[i])).collect();
            if cof.len() >= 2 {
                shared.push((f.clone(), cof));
            }
        }
        let mut row_of: HashMap<(usize, usize, Vec<usize>, Vec<u32>), usize> = HashMap::new();
        let mut rows: Vec<QRow> = Vec::new();
        let mut embeddings: HashMap<(usize, usize), PolyMap> = HashMap::new();
        for (col, key) in self.basis[k].iter().enumerate() {
            let form = self.monomial(key);
            for (fi, (f, cof)) in shared.iter().enumerate() {
                let Some(pos) = cof.iter().position(|&a| a == key.0) else { continue };
                let emb = embeddings
                    .entry((fi, key.0))
                    .or_insert_with(|| face_embedding(f, &self.maximal[key.0]).unwrap().to_poly_map());
                let tr = form.pullback(emb).expect("face embedding fits");
                let targets: Vec<(usize, bool)> = if pos == 0 {
                    (1..cof.len()).map(|j| (j, true)).collect()
                } else {
                    vec![(pos, false)]
                };
                for (idx, p) in tr.terms() {
                    for (e, c) in p.terms() {
                        for &(j, plus) in &targets {
                            let rk = (fi, j, idx.clone(), e.0.clone());
                            let r = *row_of.entry(rk).or_insert_with(|| {
                                rows.push(Vec::new());
                                rows.len() - 1
                            });
                            rows[r].push((col, if plus { c.clone() } else { -c }));
                        }
                    }
                }
            }
        }
        rows
    }

    pub fn base(&self) -> &Arc<Polyhedron> {
        &self.base
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn top_degree(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn free_dim(&self, k: usize) -> usize {
        self.basis.get(k).map_or(0, Vec::len)
    }

    fn d_rows(&self, k: usize) -> Vec<QRow> {
        transpose(&self.d_images[k], self.free_dim(k + 1))
    }

    /// Rows cutting out the closed compatible forms in `F^k`.
    fn closed_rows(&self, k: usize) -> Vec<QRow> {
        let mut rows = self.compat_rows[k].clone();
        rows.extend(self.d_rows(k));
        rows
    }

    pub fn betti(&self) -> BettiReport {
        let top = self.top_degree();
        let mut dims = Vec::new();
        let mut kernel_dims = Vec::new();
        for k in 0..=top {
            let n = self.free_dim(k);
            dims.push(n - rank_of_rows(&self.compat_rows[k]));
            kernel_dims.push(n - rank_of_rows(&self.closed_rows(k)));
        }
        let image_dims = (0..=top)
            .map(|k| if k == 0 { 0 } else { dims[k - 1] - kernel_dims[k - 1] })
            .collect();
        let mut r = BettiReport::from_ranks(dims, kernel_dims, image_dims);
        r.bound = Some(self.bound);
        r
    }

    fn to_form(&self, k: usize, v: &[Q]) -> PiecewiseForm {
        let mut pieces: Vec<PolyForm> = self
            .maximal
            .iter()
            .map(|a| PolyForm::zero(a.len() - 1, k))
            .collect();
        for (key, c) in self.basis[k].iter().zip(v) {
            if !c.is_zero() {
                let p = &pieces[key.0] + &self.monomial(key).scale(c);
                pieces[key.0] = p;
            }
        }
        PiecewiseForm::from_chart_pieces(self.base.clone(), k, self.maximal.iter().cloned().zip(pieces))
            .expect("pieces match the base")
    }

    /// Coordinates of a piecewise form in `F^k`; fails if it exceeds the bound.
    pub fn coordinates(&self, w: &PiecewiseForm) -> Result<QRow> {
        let k = w.degree();
        let mut out = Vec::new();
        for (ai, a) in self.maximal.iter().enumerate() {
            let piece = w.piece(a).expect("same base");
            for (idx, p) in piece.terms() {
                for (e, c) in p.terms() {
                    let key = (ai, idx.clone(), e.0.clone());
                    let col = self.column.get(k).and_then(|m| m.get(&key)).ok_or_else(|| {
                        Error::DegreeMismatch(format!("form exceeds total degree {}", self.bound))
                    })?;
                    out.push((*col, c.clone()));
                }
            }
        }
        Ok(out)
    }

    /// A basis of the compatible `k`-forms `C^k`.
    pub fn compatible_basis(&self, k: usize) -> Vec<PiecewiseForm> {
        match self.compat_rows.get(k) {
            Some(rows) => self.kernel_forms(k, rows),
            None => Vec::new(),
        }
    }

    /// A basis of the closed compatible `k`-forms.
    pub fn closed_basis(&self, k: usize) -> Vec<PiecewiseForm> {
        if k > self.top_degree() {
            return Vec::new();
        }
        self.kernel_forms(k, &self.closed_rows(k))
    }

    fn kernel_forms(&self, k: usize, rows: &[QRow]) -> Vec<PiecewiseForm> {
        let mut e = Echelon::new();
        for r in rows {
            e.insert_q(r);
        }
        e.into_reduced()
            .kernel(self.free_dim(k))
            .iter()
            .map(|v| self.to_form(k, v))
            .collect()
    }

    /// Whether the given closed forms are linearly independent modulo
    /// `d(C^{k−1})`: the system `Σ c_i w_i = dη, R η = 0` forces `c = 0`.
    pub fn independent_classes(&self, k: usize, forms: &[PiecewiseForm]) -> Result<bool> {
        if k == 0 {
            let cols: Vec<QRow> = forms.iter().map(|w| self.coordinates(w)).collect::<Result<_>>()?;
            return Ok(rank_of_rows(&transpose(&cols, self.free_dim(0))) == forms.len());
        }
        let m = forms.len();
        let mut images = self.d_images[k - 1].clone();
        for w in forms {
            images.push(self.coordinates(w)?);
        }
        let mut full = transpose(&images, self.free_dim(k));
        full.extend(self.compat_rows[k - 1].iter().cloned());
        let mut part = self.d_rows(k - 1);
        part.extend(self.compat_rows[k - 1].iter().cloned());
        Ok(rank_of_rows(&full) == rank_of_rows(&part) + m)
    }
}

/// Betti numbers of the truncated piecewise de Rham complex at bound `D`,
/// with a stabilization check at `D + 1`.
pub fn truncated_pw_derham(k: &Arc<Polyhedron>, bound: i64) -> BettiReport {
    let start = Instant::now();
    let (mut here, next) = std::thread::scope(|s| {
        let a = s.spawn(|| TruncatedComplex::new(k.clone(), bound).betti());
        let b = s.spawn(|| TruncatedComplex::new(k.clone(), bound + 1).betti());
        (a.join().expect("worker"), b.join().expect("worker"))
    });
    here.stabilized = Some(here.betti == next.betti);
    here.elapsed_ms = start.elapsed().as_millis() as u64;
    here
}

/// Betti numbers of the truncated complex at one bound, without the stabilization pass.
pub fn truncated_pw_betti(k: &Arc<Polyhedron>, bound: i64) -> BettiReport {
    let start = Instant::now();
    let mut r = TruncatedComplex::new(k.clone(), bound).betti();
    r.elapsed_ms = start.elapsed().as_millis() as u64;
    r
}

/// Cohomology of the Laurent de Rham complex on `n` generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LaurentReport {
    /// All multidegrees `μ = α + 1_I` in the box `[−D, D]^n`.
    pub truncated: BettiReport,
    /// The multidegree-0 block alone.
    pub block_zero: BettiReport,
}

/// The complex of one multidegree block: basis `x^{μ − 1_I} dx_I` in degree `|I|`.
pub fn laurent_block(n: usize, mu: &[i32]) -> ChainComplexQ {
    let alg = FinPresAlgebra::laurent(n);
    let bases: Vec<Vec<Vec<usize>>> = (0..=n).map(|k| index_tuples(n, k)).collect();
    let element = |idx: &[usize]| {
        let mut e = mu.to_vec();
        for &i in idx {
            e[i] -= 1;
        }
        LaurentForm::monomial_form(LaurentPoly::monomial(e, Q::one()), idx).expect("valid indices")
    };
    let mut differentials = Vec::new();
    for k in 0..n {
        let pos: HashMap<&Vec<usize>, usize> = bases[k + 1].iter().enumerate().map(|(i, b)| (b, i)).collect();
        let mut images: Vec<QRow> = Vec::new();
        for idx in &bases[k] {
            let img = alg.d(&element(idx)).expect("Laurent forms");
            let mut row = Vec::new();
            for (j, p) in img.terms() {
                // every term of the image lies in the same block
                let c = p.terms().next().map(|(_, c)| c.clone()).unwrap_or_else(Q::zero);
                row.push((pos[j], c));
            }
            images.push(row);
        }
        differentials.push(transpose(&images, bases[k + 1].len()));
    }
    ChainComplexQ::new(bases.iter().map(Vec::len).collect(), differentials).expect("block shapes")
}

pub fn truncated_laurent_derham(n: usize, bound: i64) -> LaurentReport {
    let start = Instant::now();
    let d = bound.clamp(0, 64) as i32;
    let mut dims = vec![0; n + 1];
    let mut kernel_dims = vec![0; n + 1];
    let mut image_dims = vec![0; n + 1];
    let mut mus: Vec<Vec<i32>> = vec![vec![]];
    for _ in 0..n {
        mus = mus
            .into_iter()
            .flat_map(|v| {
                (-d..=d).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    let zero = vec![0; n];
    let mut block_zero = None;
    for mu in &mus {
        let r = laurent_block(n, mu).betti();
        for k in 0..=n {
            dims[k] += r.dims[k];
            kernel_dims[k] += r.kernel_dims[k];
            image_dims[k] += r.image_dims[k];
        }
        if *mu == zero {
            block_zero = Some(r);
        }
    }
    let mut truncated = BettiReport::from_ranks(dims, kernel_dims, image_dims);
    truncated.bound = Some(bound);
    truncated.elapsed_ms = start.elapsed().as_millis() as u64;
    LaurentReport {
        truncated,
        block_zero: block_zero.expect("zero lies in every box"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeComparison {
    pub degree: usize,
    /// `derham_map ∘ whitney` on the basis of oriented `k`-simplices.
    #[serde(with = "crate::exact::rational::serde_qmat")]
    pub matrix: Vec<Vec<Q>>,
    pub is_identity: bool,
    /// Number of simplicial cohomology classes checked.
    pub classes: usize,
    /// Whitney images of cocycles are closed and compatible.
    pub cocycles_closed: bool,
    /// Those images are independent modulo exact truncated forms.
    pub classes_independent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub degrees: Vec<DegreeComparison>,
    pub ok: bool,
}

/// Representatives of a basis of `Z^k / B^k` of the simplicial complex.
fn cohomology_representatives(c: &ChainComplexQ, k: usize) -> Vec<Vec<Q>> {
    let n = c.dims()[k];
    let cocycles = if k < c.dims().len() - 1 {
        c.differential(k).rank_kernel().1
    } else {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
            .collect()
    };
    let mut e = Echelon::new();
    if k > 0 {
        // columns of d_{k−1} span the coboundaries
        let d = c.differential(k - 1);
        for j in 0..d.ncols() {
            let col: QRow = (0..d.nrows()).map(|i| (i, d.get(i, j).clone())).collect();
            e.insert_q(&col);
        }
    }
    let mut reps = Vec::new();
    for z in cocycles {
        let row: QRow = z.iter().cloned().enumerate().collect();
        if e.insert_q(&row).is_some() {
            reps.push(z);
        }
    }
    reps
}

/// The integration map after the Whitney map on every cochain basis, and the
/// independence of Whitney images of cohomology classes in the truncated
/// complex at total degree `dim K + 1`.
pub fn compare_lambda_psi(k: &Arc<Polyhedron>) -> Result<ComparisonReport> {
    let simp = simplicial_complex(k);
    let trunc = TruncatedComplex::new(k.clone(), k.dim() as i64 + 1);
    let mut degrees = Vec::new();
    for deg in 0..=k.dim() {
        let simplices: Vec<Simplex> = k.simplices_of_dim(deg).cloned().collect();
        let mut matrix = vec![vec![Q::zero(); simplices.len()]; simplices.len()];
        for (j, s) in simplices.iter().enumerate() {
            let col = derham_map(&whitney_elementary(k, s))?.to_vector();
            for (i, v) in col.into_iter().enumerate() {
                matrix[i][j] = v;
            }
        }
        let is_identity = QMatrix::from_rows(matrix.clone()).is_identity();
        let reps = cohomology_representatives(&simp, deg);
        let forms: Vec<PiecewiseForm> = reps
            .iter()
            .map(|z| whitney(&SimplicialCochain::from_vector(k.clone(), deg, z)))
            .collect();
        let cocycles_closed = forms.iter().all(|w| w.d().is_zero() && w.validate().valid);
        let classes_independent = trunc.independent_classes(deg, &forms)?;
        degrees.push(DegreeComparison {
            degree: deg,
            matrix,
            is_identity,
            classes: reps.len(),
            cocycles_closed,
            classes_independent,
        });
    }
    let ok = degrees
        .iter()
        .all(|d| d.is_identity && d.cocycles_closed && d.classes_independent);
    Ok(ComparisonReport { degrees, ok })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomotopyReport {
    pub bound: i64,
    /// Number of basis forms checked in each degree.
    pub forms_checked: Vec<usize>,
    /// `f₀*ω − f₁*ω = d h(ω) + h(dω)` held on every form.
    pub identity_holds: bool,
    /// Largest total degree of any `h(ω)`.
    pub max_homotopy_degree: Option<i64>,
}

/// Check the homotopy formula on a basis of the compatible forms of the
/// target truncated at `D`, in every degree.
pub fn homotopy_invariance_check(f0: &RectilinearMap, f1: &RectilinearMap, bound: i64) -> Result<HomotopyReport> {
    if !are_adjacent(f0, f1)? {
        return Err(Error::NotAdjacent(Vec::new()));
    }
    let target = f0.target().clone();
    let trunc = TruncatedComplex::new(target, bound);
    let mut forms_checked = Vec::new();
    let mut identity_holds = true;
    let mut max_degree: Option<i64> = None;
    for k in 0..=trunc.top_degree() {
        let basis = trunc.compatible_basis(k);
        for w in &basis {
            let h = adjacency_homotopy(f0, f1, w)?;
            let hd = adjacency_homotopy(f0, f1, &w.d())?;
            let lhs = w.pullback(f0)?.try_sub(&w.pullback(f1)?)?;
            let rhs = if k == 0 { hd.clone() } else { h.d().try_add(&hd)? };
            identity_holds &= lhs == rhs && h.validate().valid;
            max_degree = max_degree.max(h.total_degree());
        }
        forms_checked.push(basis.len());
    }
    Ok(HomotopyReport {
        bound,
        forms_checked,
        identity_holds,
        max_homotopy_degree: max_degree,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H0Report {
    pub dim_h0: usize,
    pub components: usize,
    pub equal: bool,
    /// Every kernel element has zero differential on every simplex.
    pub locally_constant: bool,
}

pub fn h0_report(k: &Arc<Polyhedron>) -> H0Report {
    let trunc = TruncatedComplex::new(k.clone(), 1);
    let basis = trunc.closed_basis(0);
    let locally_constant = basis
        .iter()
        .all(|w| w.pieces().values().all(|p| p.d().is_zero()) && w.validate().valid);
    let components = k.connected_components().count;
    H0Report {
        dim_h0: basis.len(),
        components,
        equal: basis.len() == components,
        locally_constant,
    }
}
