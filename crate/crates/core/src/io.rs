//! JSON representations of the crate's objects.
//!
//! Rationals are always strings (`"p/q"` or `"p"`). Each object has a plain
//! serde record type (`*Json`) plus conversion functions; parse errors carry
//! the line and column reported by the JSON reader.

use std::path::Path;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::form::Form;
use crate::exact::poly::{Exponent, Poly};
use crate::exact::rational::{format_q, parse_q, Q};
use crate::kahler::{AlgebraKind, FinPresAlgebra};
use crate::pairing::AffineChain;
use crate::piecewise::PiecewiseForm;
use crate::polyhedron::{Polyhedron, Star};

/// Deserialize `text`, annotating failures with their position.
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        Error::Parse(format!("line {}, column {}: {}", e.line(), e.column(), e))
    })
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    // Serialising plain records into a string cannot fail.
    serde_json::to_string_pretty(value).expect("serialisable value")
}

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn strings(v: &[Q]) -> Vec<String> {
    v.iter().map(format_q).collect()
}

fn rationals(v: &[String]) -> Result<Vec<Q>> {
    v.iter().map(|s| parse_q(s)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<i64>,
    pub c: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: usize,
    pub terms: Vec<TermJson>,
}

fn exps_from<E: Exponent>(vars: usize, exp: &[i64]) -> Result<Vec<E>> {
    if exp.len() != vars {
        return Err(Error::Arity {
            expected: vars,
            got: exp.len(),
        });
    }
    exp.iter()
        .map(|&a| {
            E::from_i64(a).ok_or_else(|| Error::Parse(format!("exponent {a} not allowed here")))
        })
        .collect()
}

pub fn poly_to_json<E: Exponent>(p: &Poly<E>) -> PolyJson {
    PolyJson {
        vars: p.vars(),
        terms: p
            .terms()
            .map(|(e, c)| TermJson {
                exp: e.as_i64(),
                c: format_q(c),
            })
            .collect(),
    }
}

pub fn poly_from_json<E: Exponent>(j: &PolyJson) -> Result<Poly<E>> {
    let terms = j
        .terms
        .iter()
        .map(|t| Ok((exps_from::<E>(j.vars, &t.exp)?, parse_q(&t.c)?)))
        .collect::<Result<Vec<_>>>()?;
    Poly::from_terms(j.vars, terms)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormTermJson {
    pub dvars: Vec<usize>,
    pub exp: Vec<i64>,
    pub c: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormJson {
    pub vars: usize,
    /// May be omitted when there is at least one term.
    #[serde(default)]
    pub degree: Option<usize>,
    pub terms: Vec<FormTermJson>,
}

pub fn form_to_json<E: Exponent>(w: &Form<E>) -> FormJson {
    let mut terms = Vec::new();
    for (idx, p) in w.terms() {
        for (e, c) in p.terms() {
            terms.push(FormTermJson {
                dvars: idx.clone(),
                exp: e.as_i64(),
                c: format_q(c),
            });
        }
    }
    FormJson {
        vars: w.vars(),
        degree: Some(w.degree()),
        terms,
    }
}

/// Terms may list `dvars` in any order; the sign of the permutation is applied.
pub fn form_from_json<E: Exponent>(j: &FormJson) -> Result<Form<E>> {
    let degree = match (j.degree, j.terms.first()) {
        (Some(k), _) => k,
        (None, Some(t)) => t.dvars.len(),
        (None, None) => 0,
    };
    let mut terms = Vec::new();
    for t in &j.terms {
        let mut idx = t.dvars.clone();
        let odd = crate::exact::form::sort_sign(&mut idx);
        if idx.windows(2).any(|w| w[0] == w[1]) {
            continue; // dx_i ∧ dx_i = 0
        }
        let mut c = parse_q(&t.c)?;
        if odd {
            c = -c;
        }
        let p = Poly::monomial(exps_from::<E>(j.vars, &t.exp)?, c);
        terms.push((idx, p));
    }
    Form::from_terms(j.vars, degree, terms)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyhedronJson {
    pub ambient_dim: usize,
    pub vertices: Vec<Vec<String>>,
    #[serde(default)]
    pub simplices: Vec<Vec<usize>>,
    /// Only meaningful for stars; ignored elsewhere.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<usize>,
}

pub fn polyhedron_to_json(k: &Polyhedron) -> PolyhedronJson {
    PolyhedronJson {
        ambient_dim: k.ambient_dim(),
        vertices: k.vertices().iter().map(|v| strings(v)).collect(),
        simplices: k.simplices().to_vec(),
        center: None,
    }
}

pub fn polyhedron_from_json(j: &PolyhedronJson) -> Result<Polyhedron> {
    let vertices = j.vertices.iter().map(|v| rationals(v)).collect::<Result<Vec<_>>>()?;
    Polyhedron::new(j.ambient_dim, vertices, j.simplices.clone())
}

pub fn star_to_json(s: &Star) -> PolyhedronJson {
    PolyhedronJson {
        center: Some(s.center()),
        ..polyhedron_to_json(s.base())
    }
}

/// Uses `center` when given, otherwise looks for a vertex shared by every
/// maximal simplex.
pub fn star_from_json(j: &PolyhedronJson) -> Result<Star> {
    let k = polyhedron_from_json(j)?;
    match j.center {
        Some(c) => Star::new(k, c),
        None => Star::detect(k),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub kind: String,
    pub vars: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ideal_monomials: Vec<Vec<u32>>,
    /// Coefficients of the monic modulus, constant term first.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub modulus: Vec<String>,
}

pub fn algebra_to_json(a: &FinPresAlgebra) -> AlgebraJson {
    let (kind, ideal_monomials, modulus) = match a.kind() {
        AlgebraKind::Polynomial => ("polynomial", vec![], vec![]),
        AlgebraKind::Laurent => ("laurent", vec![], vec![]),
        AlgebraKind::MonomialQuotient(g) => ("monomial_quotient", g.clone(), vec![]),
        AlgebraKind::UnivariateQuotient(f) => ("univariate_quotient", vec![], strings(f)),
    };
    AlgebraJson {
        kind: kind.into(),
        vars: a.vars(),
        ideal_monomials,
        modulus,
    }
}

pub fn algebra_from_json(j: &AlgebraJson) -> Result<FinPresAlgebra> {
    match j.kind.as_str() {
        "polynomial" => Ok(FinPresAlgebra::polynomial(j.vars)),
        "laurent" => Ok(FinPresAlgebra::laurent(j.vars)),
        "monomial_quotient" => FinPresAlgebra::monomial_quotient(j.vars, j.ideal_monomials.clone()),
        "univariate_quotient" => {
            if j.vars != 1 {
                return Err(Error::Arity {
                    expected: 1,
                    got: j.vars,
                });
            }
            FinPresAlgebra::univariate_quotient(rationals(&j.modulus)?)
        }
        other => Err(Error::Parse(format!("unknown algebra kind {other:?}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainTermJson {
    pub c: String,
    pub vertices: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainJson {
    pub ambient_dim: usize,
    pub degree: usize,
    pub terms: Vec<ChainTermJson>,
}

pub fn chain_to_json(c: &AffineChain) -> ChainJson {
    ChainJson {
        ambient_dim: c.ambient_dim(),
        degree: c.degree(),
        terms: c
            .terms()
            .iter()
            .map(|(c, s)| ChainTermJson {
                c: format_q(c),
                vertices: s.iter().map(|v| strings(v)).collect(),
            })
            .collect(),
    }
}

pub fn chain_from_json(j: &ChainJson) -> Result<AffineChain> {
    let terms = j
        .terms
        .iter()
        .map(|t| {
            let vs = t.vertices.iter().map(|v| rationals(v)).collect::<Result<Vec<_>>>()?;
            Ok((parse_q(&t.c)?, vs))
        })
        .collect::<Result<Vec<_>>>()?;
    AffineChain::new(j.ambient_dim, j.degree, terms)
}

/// A polyhedron given inline or as a path to a polyhedron file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PolyhedronRef {
    Inline(PolyhedronJson),
    Path(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceJson {
    pub simplex: Vec<usize>,
    pub form: FormJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiecewiseJson {
    pub polyhedron: PolyhedronRef,
    pub degree: usize,
    pub pieces: Vec<PieceJson>,
}

/// Pieces are written in ambient coordinates.
pub fn piecewise_to_json(w: &PiecewiseForm) -> Result<PiecewiseJson> {
    let pieces = w
        .ambient_pieces()?
        .iter()
        .map(|(s, f)| PieceJson {
            simplex: s.clone(),
            form: form_to_json(f),
        })
        .collect();
    Ok(PiecewiseJson {
        polyhedron: PolyhedronRef::Inline(polyhedron_to_json(w.base())),
        degree: w.degree(),
        pieces,
    })
}

/// `dir` resolves a polyhedron given by relative path.
pub fn piecewise_from_json(j: &PiecewiseJson, dir: Option<&Path>) -> Result<PiecewiseForm> {
    let base = match &j.polyhedron {
        PolyhedronRef::Inline(p) => polyhedron_from_json(p)?,
        PolyhedronRef::Path(p) => {
            let path = match dir {
                Some(d) => d.join(p),
                None => p.into(),
            };
            polyhedron_from_json(&from_json(&read_file(&path)?)?)?
        }
    };
    let pieces = j
        .pieces
        .iter()
        .map(|p| Ok((p.simplex.clone(), form_from_json::<u32>(&p.form)?)))
        .collect::<Result<Vec<_>>>()?;
    PiecewiseForm::from_ambient_pieces(Arc::new(base), j.degree, pieces)
}
