//! A quick randomized consistency suite, reproducible from its seed.

use std::sync::Arc;

use serde::Serialize;

use derham::cohomology::{h0_report, TruncatedComplex};
use derham::corpus;
use derham::exact::form::PolyForm;
use derham::kahler::FinPresAlgebra;
use derham::pairing::stokes_check;
use derham::random::{self, TestRng};

#[derive(Debug, Serialize)]
pub struct Suite {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
}

#[derive(Debug, Serialize)]
pub struct SelftestReport {
    pub checks: usize,
    pub failures: usize,
    pub suites: Vec<Suite>,
}

fn suite(name: &'static str, cases: usize, mut check: impl FnMut(usize) -> bool) -> Suite {
    let failures = (0..cases).filter(|&i| !check(i)).count();
    Suite {
        name,
        cases,
        failures,
    }
}

fn sign(p: usize) -> derham::exact::rational::Q {
    derham::exact::rational::q(if p.is_multiple_of(2) { 1 } else { -1 })
}

fn leibniz(a: &PolyForm, b: &PolyForm) -> bool {
    let lhs = a.wedge(b).d();
    let rhs = &a.d().wedge(b) + &a.wedge(&b.d()).scale(&sign(a.degree()));
    lhs == rhs
}

pub fn run(seed: u64, cases: usize) -> SelftestReport {
    let mut rng: TestRng = random::rng(seed);
    let r = &mut rng;
    let mut suites = Vec::new();

    suites.push(suite("stokes", cases, |i| {
        let m = 1 + i % 3;
        let k = 1 + i % m;
        let w = random::poly_form(r, m, k - 1, 3);
        let c = random::affine_chain(r, m, k, 2);
        stokes_check(&w, &c).is_ok_and(|s| s.equal)
    }));
    suites.push(suite("d_squared", cases, |i| {
        let w = random::poly_form(r, 3, i % 3, 4);
        w.d().d().is_zero()
    }));
    suites.push(suite("leibniz", cases, |i| {
        let a = random::poly_form(r, 3, i % 2, 3);
        let b = random::poly_form(r, 3, (i / 2) % 2, 3);
        leibniz(&a, &b)
    }));
    suites.push(suite("graded_commutativity", cases, |i| {
        let (p, q) = (i % 3, (i / 3) % 2);
        let a = random::poly_form(r, 3, p, 3);
        let b = random::poly_form(r, 3, q, 3);
        a.wedge(&b) == b.wedge(&a).scale(&sign(p * q))
    }));
    suites.push(suite("pullback_naturality", cases, |i| {
        let f = random::poly_map(r, 2, 3, 2);
        let w = random::poly_form(r, 3, i % 2, 2);
        match (w.d().pullback(&f), w.pullback(&f)) {
            (Ok(a), Ok(b)) => a == b.d(),
            _ => false,
        }
    }));
    let alg = FinPresAlgebra::monomial_quotient(2, vec![vec![2, 1], vec![0, 3]]).expect("valid ideal");
    suites.push(suite("quotient_d_squared", cases, |i| {
        let w = random::poly_form(r, 2, i % 2, 4).to_laurent();
        match alg.d(&w).and_then(|dw| alg.d(&dw)) {
            Ok(dd) => dd.is_zero(),
            Err(_) => false,
        }
    }));
    let base = Arc::new(corpus::triangle_boundary());
    let trunc = TruncatedComplex::new(base.clone(), 3);
    let basis0 = trunc.compatible_basis(0);
    suites.push(suite("piecewise_d_squared", cases, |_| {
        let w = random::combination(r, &base, 0, &basis0);
        w.d().d().is_zero() && w.d().validate().valid
    }));
    suites.push(suite("h0_components", cases.min(10), |_| {
        let k = Arc::new(random::disjoint_union(r));
        h0_report(&k).equal
    }));

    SelftestReport {
        checks: suites.iter().map(|s| s.cases).sum(),
        failures: suites.iter().map(|s| s.failures).sum(),
        suites,
    }
}
