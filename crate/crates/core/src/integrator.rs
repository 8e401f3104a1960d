//! Exact integration of multivariate rational-coefficient polynomials over
//! rational simplices and polytopes.
//!
//! Everything reduces to the standard-simplex identity
//! `int_{Delta_d} prod u_i^{a_i} du = (prod a_i!) / (d + sum a_i)!`
//! after an affine pullback; no floating point appears anywhere.

use crate::polytope::{self, RationalPolytope};
use crate::ratio::{factorial, Rat};
use crate::{Error, Result};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Degree cap for composed polynomials; the worst supported integrand (A4,
/// with ten positive roots) has degree 20.
pub const MAX_DEGREE: usize = 20;

/// Sparse multivariate polynomial with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    pub arity: usize,
    /// Exponent vector -> nonzero coefficient.
    pub terms: BTreeMap<Vec<u32>, Rat>,
}

impl MultiPoly {
    pub fn zero(arity: usize) -> Self {
        MultiPoly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: Rat) -> Self {
        let mut p = MultiPoly::zero(arity);
        p.add_term(vec![0; arity], c);
        p
    }

    /// The coordinate monomial `x_i`.
    pub fn coordinate(arity: usize, i: usize) -> Self {
        let mut expo = vec![0u32; arity];
        expo[i] = 1;
        let mut p = MultiPoly::zero(arity);
        p.add_term(expo, Rat::one());
        p
    }

    /// A linear form `sum coeffs_i x_i`.
    pub fn linear_form(coeffs: &[Rat]) -> Self {
        let mut p = MultiPoly::zero(coeffs.len());
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut expo = vec![0u32; coeffs.len()];
                expo[i] = 1;
                p.add_term(expo, c.clone());
            }
        }
        p
    }

    pub fn add_term(&mut self, expo: Vec<u32>, c: Rat) {
        debug_assert_eq!(expo.len(), self.arity);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(expo).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            let key: Vec<Vec<u32>> = self
                .terms
                .iter()
                .filter(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .collect();
            for k in key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        debug_assert_eq!(self.arity, other.arity);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.arity);
        }
        MultiPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        debug_assert_eq!(self.arity, other.arity);
        let mut out = MultiPoly::zero(self.arity);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let expo: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(expo, ca * cb);
            }
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, x: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (expo, c) in &self.terms {
            let mut term = c.clone();
            for (xi, &e) in x.iter().zip(expo) {
                for _ in 0..e {
                    term *= xi;
                }
            }
            acc += term;
        }
        acc
    }
}

/// Affine map `u -> v0 + sum u_i (v_i - v0)` given by a simplex vertex tuple;
/// also usable as a plain affine substitution with arbitrary columns.
#[derive(Debug, Clone)]
pub struct AffineMap {
    /// Dimension of the source variables `u`.
    pub source_arity: usize,
    /// `target[j]` is an affine form `v0_j + sum columns[i][j] u_i`.
    pub offset: Vec<Rat>,
    pub columns: Vec<Vec<Rat>>,
}

impl AffineMap {
    pub fn from_simplex(vertices: &[Vec<Rat>]) -> Self {
        let v0 = &vertices[0];
        AffineMap {
            source_arity: vertices.len() - 1,
            offset: v0.clone(),
            columns: vertices[1..]
                .iter()
                .map(|v| v.iter().zip(v0).map(|(a, b)| a - b).collect())
                .collect(),
        }
    }

    fn target_arity(&self) -> usize {
        self.offset.len()
    }
}

/// Exact composition `p(v0 + sum u_i (v_i - v0))`, expanded termwise.
pub fn poly_compose_affine(p: &MultiPoly, map: &AffineMap) -> Result<MultiPoly> {
    if p.arity != map.target_arity() {
        return Err(Error::DimensionMismatch {
            expected: p.arity,
            got: map.target_arity(),
        });
    }
    if p.degree() > MAX_DEGREE {
        return Err(Error::DegreeCap {
            degree: p.degree(),
            cap: MAX_DEGREE,
        });
    }
    let arity = map.source_arity;
    // Affine form for each target coordinate.
    let forms: Vec<MultiPoly> = (0..map.target_arity())
        .map(|j| {
            let mut f = MultiPoly::constant(arity, map.offset[j].clone());
            for (i, col) in map.columns.iter().enumerate() {
                if !col[j].is_zero() {
                    f = f.add(&MultiPoly::coordinate(arity, i).scale(&col[j]));
                }
            }
            f
        })
        .collect();
    let mut out = MultiPoly::zero(arity);
    for (expo, c) in &p.terms {
        let mut term = MultiPoly::constant(arity, c.clone());
        for (j, &e) in expo.iter().enumerate() {
            for _ in 0..e {
                term = term.mul(&forms[j]);
            }
        }
        out = out.add(&term);
    }
    Ok(out)
}

/// `int_{Delta_d} prod u_i^{a_i} du` over the standard simplex.
fn standard_simplex_monomial(expo: &[u32]) -> Rat {
    let d = expo.len();
    let total: usize = expo.iter().map(|&e| e as usize).sum();
    let mut num = num_bigint::BigInt::one();
    for &e in expo {
        num *= factorial(e as usize);
    }
    Rat::new(num, factorial(d + total))
}

fn simplex_determinant(vertices: &[Vec<Rat>]) -> Rat {
    let base = &vertices[0];
    let rows: Vec<Vec<Rat>> = vertices[1..]
        .iter()
        .map(|v| v.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    crate::linalg::det(&rows)
}

/// Exact `int_S prod x_j^{a_j} dx` over a nondegenerate simplex `S` with
/// `d + 1` vertices in dimension `d`, via pullback to the standard simplex.
pub fn integrate_monomial_simplex(exponents: &[u32], simplex: &[Vec<Rat>]) -> Result<Rat> {
    let d = exponents.len();
    if simplex.len() != d + 1 || simplex.iter().any(|v| v.len() != d) {
        return Err(Error::DimensionMismatch {
            expected: d + 1,
            got: simplex.len(),
        });
    }
    let det = simplex_determinant(simplex);
    if det.is_zero() {
        return Err(Error::DegenerateSimplex);
    }
    let mut mono = MultiPoly::zero(d);
    mono.add_term(exponents.to_vec(), Rat::one());
    let pulled = poly_compose_affine(&mono, &AffineMap::from_simplex(simplex))?;
    let mut acc = Rat::zero();
    for (expo, c) in &pulled.terms {
        acc += c * standard_simplex_monomial(expo);
    }
    Ok(acc * det.abs())
}

/// Integral over the standard simplex of an already-composed polynomial in
/// the simplex coordinates.
pub fn integrate_standard_simplex(p: &MultiPoly) -> Rat {
    let mut acc = Rat::zero();
    for (expo, c) in &p.terms {
        acc += c * standard_simplex_monomial(expo);
    }
    acc
}

/// Exact integral of a polynomial over one simplex.
pub fn integrate_poly_simplex(p: &MultiPoly, simplex: &[Vec<Rat>]) -> Result<Rat> {
    let det = simplex_determinant(simplex);
    if det.is_zero() {
        return Err(Error::DegenerateSimplex);
    }
    let pulled = poly_compose_affine(p, &AffineMap::from_simplex(simplex))?;
    let mut acc = Rat::zero();
    for (expo, c) in &pulled.terms {
        acc += c * standard_simplex_monomial(expo);
    }
    Ok(acc * det.abs())
}

/// Exact integral of `p` over a polytope, summed over a triangulation.
/// Lower-dimensional polytopes integrate to zero; the flag in the result
/// records that the domain had measure zero.
pub fn integrate_polynomial(p: &RationalPolytope, poly: &MultiPoly) -> Result<(Rat, bool)> {
    if poly.arity != p.dim_ambient {
        return Err(Error::ArityMismatch {
            poly: poly.arity,
            domain: p.dim_ambient,
        });
    }
    if !p.is_full_dimensional() {
        return Ok((Rat::zero(), true));
    }
    let mut acc = Rat::zero();
    for simplex in polytope::triangulate(p)? {
        let vertices: Vec<Vec<Rat>> = simplex.iter().map(|&i| p.vertices[i].clone()).collect();
        acc += integrate_poly_simplex(poly, &vertices)?;
    }
    Ok((acc, false))
}
