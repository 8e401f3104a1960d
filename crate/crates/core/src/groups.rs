//! Rational points and representation matrices for the enumerable groups:
//! split tori, SL2, and GL2 over a finite field, plus the first-order
//! perturbation directions used by the critical-point tests.
//!
//! Representation matrices are computed over any [`RingCtx`], so the same
//! code evaluates over `Fq` and over dual numbers.

use crate::ffield::{DualCtx, DualFq, Fq, FqElem, RingCtx};
use crate::{Error, Result};

/// Hard cap on enumerated group points.
pub const ENUM_LIMIT: u128 = 10_000_000;

/// A group with an explicit matrix model and finite point enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Group {
    Torus { n: usize },
    Sl2,
    Gl2,
}

/// Representation descriptor for an enumerable group: a torus character, or
/// `Sym^m` of the standard representation with an optional determinant
/// twist.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rep {
    TorusChar(Vec<i64>),
    /// `Sym^m` for SL2.
    Sym { m: u32 },
    /// `Sym^m tensor det^k` for GL2, `k >= 0`.
    SymDet { m: u32, k: u32 },
}

impl Rep {
    pub fn dim(&self) -> usize {
        match self {
            Rep::TorusChar(_) => 1,
            Rep::Sym { m } | Rep::SymDet { m, .. } => *m as usize + 1,
        }
    }
}

/// A rational point of the group, generic over the coefficient ring.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenPoint<T> {
    Torus(Vec<T>),
    /// Row-major 2x2 matrix `[a, b, c, d]`.
    Mat2([T; 4]),
}

pub type GroupPoint = GenPoint<FqElem>;

impl GroupPoint {
    /// Lifts a field point to constant dual numbers.
    pub fn to_dual(&self, fq: &Fq) -> GenPoint<DualFq> {
        match self {
            GenPoint::Torus(t) => {
                GenPoint::Torus(t.iter().map(|x| fq.dual_const(x.clone())).collect())
            }
            GenPoint::Mat2(m) => GenPoint::Mat2([
                fq.dual_const(m[0].clone()),
                fq.dual_const(m[1].clone()),
                fq.dual_const(m[2].clone()),
                fq.dual_const(m[3].clone()),
            ]),
        }
    }
}

/// Dense square matrix over a ring, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat<T> {
    pub n: usize,
    pub data: Vec<T>,
}

impl<T: Clone> Mat<T> {
    pub fn at(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.n + c]
    }
}

pub fn mat_identity<C: RingCtx>(ctx: &C, n: usize) -> Mat<C::El> {
    let mut data = vec![ctx.zero(); n * n];
    for i in 0..n {
        data[i * n + i] = ctx.one();
    }
    Mat { n, data }
}

pub fn mat_mul<C: RingCtx>(ctx: &C, a: &Mat<C::El>, b: &Mat<C::El>) -> Mat<C::El> {
    debug_assert_eq!(a.n, b.n);
    let n = a.n;
    let mut data = vec![ctx.zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a.at(i, k);
            if ctx.is_zero(aik) {
                continue;
            }
            for j in 0..n {
                let prod = ctx.mul(aik, b.at(k, j));
                data[i * n + j] = ctx.add(&data[i * n + j], &prod);
            }
        }
    }
    Mat { n, data }
}

pub fn mat_trace<C: RingCtx>(ctx: &C, a: &Mat<C::El>) -> C::El {
    let mut acc = ctx.zero();
    for i in 0..a.n {
        acc = ctx.add(&acc, a.at(i, i));
    }
    acc
}

/// Trace of a product `a * b` without forming the product.
pub fn mat_trace_product<C: RingCtx>(ctx: &C, a: &Mat<C::El>, b: &Mat<C::El>) -> C::El {
    debug_assert_eq!(a.n, b.n);
    let mut acc = ctx.zero();
    for i in 0..a.n {
        for k in 0..a.n {
            let x = a.at(i, k);
            if ctx.is_zero(x) {
                continue;
            }
            acc = ctx.add(&acc, &ctx.mul(x, b.at(k, i)));
        }
    }
    acc
}

impl Group {
    pub fn dim(&self) -> usize {
        match self {
            Group::Torus { n } => *n,
            Group::Sl2 => 3,
            Group::Gl2 => 4,
        }
    }

    pub fn validate_rep(&self, rep: &Rep) -> Result<()> {
        match (self, rep) {
            (Group::Torus { n }, Rep::TorusChar(w)) if w.len() == *n => Ok(()),
            (Group::Sl2, Rep::Sym { .. }) => Ok(()),
            (Group::Gl2, Rep::SymDet { .. }) => Ok(()),
            _ => Err(Error::InvalidRep(format!(
                "{rep:?} is not a representation of {self:?}"
            ))),
        }
    }

    pub fn identity(&self, fq: &Fq) -> GroupPoint {
        match self {
            Group::Torus { n } => GenPoint::Torus(vec![fq.one(); *n]),
            Group::Sl2 | Group::Gl2 => GenPoint::Mat2([fq.one(), fq.zero(), fq.zero(), fq.one()]),
        }
    }
}

/// `|G(F_q)|`: `(q-1)^n`, `q^3 - q`, `(q^2-1)(q^2-q)`.
pub fn group_order(group: Group, q: u64) -> u128 {
    let q = q as u128;
    match group {
        Group::Torus { n } => (q - 1).pow(n as u32),
        Group::Sl2 => q * q * q - q,
        Group::Gl2 => (q * q - 1) * (q * q - q),
    }
}

/// Every rational point exactly once, in a deterministic order. The list is
/// chunkable into disjoint ranges for parallel consumers.
pub fn enumerate_points(group: Group, fq: &Fq) -> Result<Vec<GroupPoint>> {
    if let Group::Torus { n } = group {
        if n > 3 {
            return Err(Error::SizeGuard {
                what: "torus rank",
                size: n as u128,
                limit: 3,
            });
        }
    }
    let order = group_order(group, fq.q());
    if order > ENUM_LIMIT {
        return Err(Error::SizeGuard {
            what: "group order",
            size: order,
            limit: ENUM_LIMIT,
        });
    }
    let q = fq.q();
    let mut points = Vec::with_capacity(order as usize);
    match group {
        Group::Torus { n } => {
            // Nonzero elements are exactly the indices 1..q.
            let mut idx = vec![1u64; n];
            loop {
                points.push(GenPoint::Torus(
                    idx.iter().map(|&i| fq.element(i)).collect(),
                ));
                let mut k = 0;
                loop {
                    if k == n {
                        return Ok(points);
                    }
                    idx[k] += 1;
                    if idx[k] < q {
                        break;
                    }
                    idx[k] = 1;
                    k += 1;
                }
            }
        }
        Group::Sl2 => {
            // Free (a, b, c) with d solved from ad - bc = 1; casework a = 0.
            for ai in 1..q {
                let a = fq.element(ai);
                let a_inv = fq.inv(&a).expect("nonzero");
                for bi in 0..q {
                    let b = fq.element(bi);
                    for ci in 0..q {
                        let c = fq.element(ci);
                        let d = fq.mul(&a_inv, &fq.add(&fq.one(), &fq.mul(&b, &c)));
                        points.push(GenPoint::Mat2([a.clone(), b.clone(), c, d]));
                    }
                }
            }
            for bi in 1..q {
                let b = fq.element(bi);
                let c = fq.neg(&fq.inv(&b).expect("nonzero"));
                for di in 0..q {
                    let d = fq.element(di);
                    points.push(GenPoint::Mat2([fq.zero(), b.clone(), c.clone(), d]));
                }
            }
            debug_assert_eq!(points.len() as u128, order);
            Ok(points)
        }
        Group::Gl2 => {
            for ai in 0..q {
                let a = fq.element(ai);
                for bi in 0..q {
                    let b = fq.element(bi);
                    for ci in 0..q {
                        let c = fq.element(ci);
                        for di in 0..q {
                            let d = fq.element(di);
                            let det = fq.sub(&fq.mul(&a, &d), &fq.mul(&b, &c));
                            if !fq.is_zero(&det) {
                                points.push(GenPoint::Mat2([a.clone(), b.clone(), c.clone(), d]));
                            }
                        }
                    }
                }
            }
            debug_assert_eq!(points.len() as u128, order);
            Ok(points)
        }
    }
}

/// Coefficients of `(x_coef * x + y_coef * y)^e` as a degree-`e` binary
/// form; index `j` holds the coefficient of `x^{e-j} y^j`.
fn binary_form_pow<C: RingCtx>(ctx: &C, x_coef: &C::El, y_coef: &C::El, e: u32) -> Vec<C::El> {
    let mut form = vec![ctx.one()];
    for _ in 0..e {
        let mut next = vec![ctx.zero(); form.len() + 1];
        for (j, coeff) in form.iter().enumerate() {
            next[j] = ctx.add(&next[j], &ctx.mul(coeff, x_coef));
            next[j + 1] = ctx.add(&next[j + 1], &ctx.mul(coeff, y_coef));
        }
        form = next;
    }
    form
}

fn convolve<C: RingCtx>(ctx: &C, f: &[C::El], g: &[C::El]) -> Vec<C::El> {
    let mut out = vec![ctx.zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        if ctx.is_zero(a) {
            continue;
        }
        for (j, b) in g.iter().enumerate() {
            out[i + j] = ctx.add(&out[i + j], &ctx.mul(a, b));
        }
    }
    out
}

/// Matrix of the representation at a group point, over any coefficient ring.
///
/// `Sym^m` acts on the monomial basis `x^{m-i} y^i` (`i = 0..m`): for
/// `g = [[a, b], [c, d]]`, column `i` holds the coefficients of
/// `(a x + c y)^{m-i} (b x + d y)^i`, scaled by `det(g)^k` for GL2 twists.
/// Torus characters give the 1x1 matrix `prod t_j^{w_j}`.
pub fn rep_matrix_in<C: RingCtx>(
    ctx: &C,
    group: Group,
    rep: &Rep,
    point: &GenPoint<C::El>,
) -> Result<Mat<C::El>> {
    group.validate_rep(rep)?;
    match (rep, point) {
        (Rep::TorusChar(w), GenPoint::Torus(t)) => {
            if t.len() != w.len() {
                return Err(Error::DimensionMismatch {
                    expected: w.len(),
                    got: t.len(),
                });
            }
            let mut acc = ctx.one();
            for (x, &e) in t.iter().zip(w) {
                let factor = if e >= 0 {
                    ring_pow(ctx, x, e as u64)
                } else {
                    let inv = ctx.inv(x).ok_or_else(|| {
                        Error::InvalidSystem("torus point with non-invertible entry".into())
                    })?;
                    ring_pow(ctx, &inv, (-e) as u64)
                };
                acc = ctx.mul(&acc, &factor);
            }
            Ok(Mat { n: 1, data: vec![acc] })
        }
        (Rep::Sym { m }, GenPoint::Mat2(g)) => Ok(sym_matrix(ctx, *m, g, 0)),
        (Rep::SymDet { m, k }, GenPoint::Mat2(g)) => Ok(sym_matrix(ctx, *m, g, *k)),
        _ => Err(Error::InvalidRep(
            "point shape does not match the group".into(),
        )),
    }
}

/// Representation matrix over the base field.
pub fn rep_matrix(fq: &Fq, group: Group, rep: &Rep, point: &GroupPoint) -> Result<Mat<FqElem>> {
    rep_matrix_in(fq, group, rep, point)
}

fn sym_matrix<C: RingCtx>(ctx: &C, m: u32, g: &[C::El; 4], det_twist: u32) -> Mat<C::El> {
    let n = m as usize + 1;
    let (a, b, c, d) = (&g[0], &g[1], &g[2], &g[3]);
    let mut data = vec![ctx.zero(); n * n];
    for i in 0..n {
        let left = binary_form_pow(ctx, a, c, m - i as u32);
        let right = binary_form_pow(ctx, b, d, i as u32);
        let column = convolve(ctx, &left, &right);
        debug_assert_eq!(column.len(), n);
        for (r, entry) in column.into_iter().enumerate() {
            data[r * n + i] = entry;
        }
    }
    if det_twist > 0 {
        let det = ctx.sub(&ctx.mul(a, d), &ctx.mul(b, c));
        let scale = ring_pow(ctx, &det, det_twist as u64);
        for entry in &mut data {
            *entry = ctx.mul(entry, &scale);
        }
    }
    Mat { n, data }
}

fn ring_pow<C: RingCtx>(ctx: &C, base: &C::El, mut e: u64) -> C::El {
    let mut acc = ctx.one();
    let mut b = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = ctx.mul(&acc, &b);
        }
        b = ctx.mul(&b, &b);
        e >>= 1;
    }
    acc
}

/// A first-order perturbation direction `xi` in the Lie algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LieDirection {
    /// `t_i -> t_i (1 + eps)`.
    TorusCoord(usize),
    /// `g -> (1 + eps xi) g` for an integer matrix `xi`.
    Mat2([[i64; 2]; 2]),
}

/// Basis of perturbation directions: `n` coordinate directions for a torus,
/// `{E, F, H}` for SL2, and the four matrix units for GL2; the count equals
/// `dim G` in every case.
pub fn lie_basis_directions(group: Group) -> Vec<LieDirection> {
    match group {
        Group::Torus { n } => (0..n).map(LieDirection::TorusCoord).collect(),
        Group::Sl2 => vec![
            LieDirection::Mat2([[0, 1], [0, 0]]),
            LieDirection::Mat2([[0, 0], [1, 0]]),
            LieDirection::Mat2([[1, 0], [0, -1]]),
        ],
        Group::Gl2 => vec![
            LieDirection::Mat2([[1, 0], [0, 0]]),
            LieDirection::Mat2([[0, 1], [0, 0]]),
            LieDirection::Mat2([[0, 0], [1, 0]]),
            LieDirection::Mat2([[0, 0], [0, 1]]),
        ],
    }
}

/// The dual-number point `(1 + eps xi) g`.
pub fn perturb(fq: &Fq, dir: &LieDirection, point: &GroupPoint) -> GenPoint<DualFq> {
    match (dir, point) {
        (LieDirection::TorusCoord(i), GenPoint::Torus(t)) => GenPoint::Torus(
            t.iter()
                .enumerate()
                .map(|(j, x)| {
                    if j == *i {
                        fq.dual(x.clone(), x.clone())
                    } else {
                        fq.dual_const(x.clone())
                    }
                })
                .collect(),
        ),
        (LieDirection::Mat2(xi), GenPoint::Mat2(g)) => {
            let ent = |r: usize, c: usize| -> DualFq {
                // value g_rc, derivative (xi g)_rc.
                let mut deriv = fq.zero();
                for k in 0..2 {
                    if xi[r][k] != 0 {
                        let scaled = fq.mul(&fq.from_int(xi[r][k]), &g[k * 2 + c]);
                        deriv = fq.add(&deriv, &scaled);
                    }
                }
                fq.dual(g[r * 2 + c].clone(), deriv)
            };
            GenPoint::Mat2([ent(0, 0), ent(0, 1), ent(1, 0), ent(1, 1)])
        }
        _ => panic!("perturbation direction does not match the point shape"),
    }
}

/// The Lie-algebra representation matrix `d rho(xi)`, extracted exactly via
/// dual numbers at the identity: `rho((1 + eps xi) * 1) = 1 + eps d rho(xi)`.
pub fn lie_rep_matrix(fq: &Fq, group: Group, rep: &Rep, dir: &LieDirection) -> Result<Mat<FqElem>> {
    let id = group.identity(fq);
    let dual_pt = perturb(fq, dir, &id);
    let ctx = DualCtx(fq);
    let dual_mat = rep_matrix_in(&ctx, group, rep, &dual_pt)?;
    Ok(Mat {
        n: dual_mat.n,
        data: dual_mat.data.into_iter().map(|d| d.deriv).collect(),
    })
}

/// Multiplies two group points.
pub fn point_mul(fq: &Fq, group: Group, a: &GroupPoint, b: &GroupPoint) -> GroupPoint {
    match (group, a, b) {
        (Group::Torus { .. }, GenPoint::Torus(x), GenPoint::Torus(y)) => {
            GenPoint::Torus(x.iter().zip(y).map(|(u, v)| fq.mul(u, v)).collect())
        }
        (_, GenPoint::Mat2(x), GenPoint::Mat2(y)) => {
            let ent = |r: usize, c: usize| {
                fq.add(
                    &fq.mul(&x[r * 2], &y[c]),
                    &fq.mul(&x[r * 2 + 1], &y[2 + c]),
                )
            };
            GenPoint::Mat2([ent(0, 0), ent(0, 1), ent(1, 0), ent(1, 1)])
        }
        _ => panic!("mismatched point shapes"),
    }
}
