//! Seeded generators of random test objects.
//!
//! All draws come from a ChaCha stream, so a seed fixes every object on
//! every platform.

use std::sync::Arc;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus;
use crate::exact::affine::PolyMap;
use crate::exact::form::{index_tuples, Form, LaurentForm, PolyForm};
use crate::exact::poly::{Exponent, LaurentPoly, MultiPoly, Poly};
use crate::exact::rational::{qf, Q};
use crate::pairing::AffineChain;
use crate::piecewise::PiecewiseForm;
use crate::polyhedron::Polyhedron;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational with small numerator and denominator.
pub fn rational(rng: &mut TestRng) -> Q {
    qf(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

fn nonzero_rational(rng: &mut TestRng) -> Q {
    loop {
        let c = rational(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

/// Up to `terms` monomials of total degree ≤ `max_degree` (polynomial
/// exponents) or with every exponent in `[-max_degree, max_degree]` (Laurent).
pub fn poly<E: Exponent>(rng: &mut TestRng, vars: usize, max_degree: u32, terms: usize) -> Poly<E> {
    let mut out = Poly::zero(vars);
    for _ in 0..rng.gen_range(0..=terms) {
        let exps: Vec<E> = if E::SIGNED {
            let m = max_degree as i64;
            (0..vars).map(|_| E::from_i64(rng.gen_range(-m..=m)).unwrap()).collect()
        } else {
            let mut left = max_degree as i64;
            let mut order: Vec<usize> = (0..vars).collect();
            order.shuffle(rng);
            let mut e = vec![0i64; vars];
            for i in order {
                let a = rng.gen_range(0..=left);
                e[i] = a;
                left -= a;
            }
            e.into_iter().map(|a| E::from_i64(a).unwrap()).collect()
        };
        out = &out + &Poly::monomial(exps, nonzero_rational(rng));
    }
    out
}

pub fn form<E: Exponent>(rng: &mut TestRng, vars: usize, degree: usize, max_degree: u32) -> Form<E> {
    let mut terms = Vec::new();
    for idx in index_tuples(vars, degree) {
        if rng.gen_bool(0.6) {
            terms.push((idx, poly::<E>(rng, vars, max_degree, 3)));
        }
    }
    Form::from_terms(vars, degree, terms).expect("well-formed random form")
}

pub fn poly_form(rng: &mut TestRng, vars: usize, degree: usize, max_degree: u32) -> PolyForm {
    form(rng, vars, degree, max_degree)
}

pub fn laurent_form(rng: &mut TestRng, vars: usize, degree: usize, max_abs: u32) -> LaurentForm {
    form(rng, vars, degree, max_abs)
}

pub fn laurent_poly(rng: &mut TestRng, vars: usize, max_abs: u32) -> LaurentPoly {
    poly(rng, vars, max_abs, 4)
}

/// A polynomial map ℝ^n_in → ℝ^n_out with components of degree ≤ `max_degree`.
pub fn poly_map(rng: &mut TestRng, n_in: usize, n_out: usize, max_degree: u32) -> PolyMap {
    let comps: Vec<MultiPoly> = (0..n_out).map(|_| poly(rng, n_in, max_degree, 3)).collect();
    PolyMap::new(n_in, comps).expect("components share the input arity")
}

/// A chain of up to `terms` random `degree`-simplices in ℝ^ambient.
pub fn affine_chain(rng: &mut TestRng, ambient: usize, degree: usize, terms: usize) -> AffineChain {
    let terms = (0..rng.gen_range(1..=terms))
        .map(|_| {
            let vs = (0..=degree)
                .map(|_| (0..ambient).map(|_| rational(rng)).collect())
                .collect();
            (nonzero_rational(rng), vs)
        })
        .collect();
    AffineChain::new(ambient, degree, terms).expect("consistent random chain")
}

/// A random rational combination of `basis`, or the zero form if it is empty.
pub fn combination(
    rng: &mut TestRng,
    base: &Arc<Polyhedron>,
    degree: usize,
    basis: &[PiecewiseForm],
) -> PiecewiseForm {
    let mut out = PiecewiseForm::zero(base.clone(), degree);
    for b in basis {
        if rng.gen_bool(0.5) {
            out = out.try_add(&b.scale(&rational(rng))).expect("same base");
        }
    }
    out
}

/// A disjoint union of two to four translated corpus complexes.
pub fn disjoint_union(rng: &mut TestRng) -> Polyhedron {
    let pool = [
        corpus::point(),
        corpus::interval(),
        corpus::full_triangle(),
        corpus::triangle_boundary(),
        corpus::tetrahedron_boundary(),
        corpus::two_triangles(),
    ];
    let parts: Vec<Polyhedron> = (0..rng.gen_range(2..=4))
        .map(|_| pool.choose(rng).unwrap().clone())
        .collect();
    corpus::disjoint_union(&parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_objects() {
        let a: Vec<PolyForm> = {
            let mut r = rng(7);
            (0..5).map(|_| poly_form(&mut r, 3, 1, 4)).collect()
        };
        let b: Vec<PolyForm> = {
            let mut r = rng(7);
            (0..5).map(|_| poly_form(&mut r, 3, 1, 4)).collect()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn degree_bounds_respected() {
        let mut r = rng(1);
        for _ in 0..50 {
            let p: MultiPoly = poly(&mut r, 3, 4, 5);
            assert!(p.total_degree().unwrap_or(0) <= 4);
            let l: LaurentPoly = poly(&mut r, 2, 2, 5);
            assert!(l.terms().all(|(e, _)| e.0.iter().all(|a| a.abs() <= 2)));
        }
    }
}
