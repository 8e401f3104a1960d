//! Exact finite-field arithmetic `F_{p^m}`: deterministic field
//! construction, traces to the prime field, dual numbers for derivative
//! tests, and exact character-count accumulation.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use smallvec::{smallvec, SmallVec};

/// Inline storage for field elements: extensions up to degree 4 never touch
/// the heap.
pub type Coeffs = SmallVec<[u64; 4]>;

/// Enumeration guard: fields are capped at `p^m <= 10^7` elements.
pub const FIELD_SIZE_LIMIT: u128 = 10_000_000;

/// A finite field `F_{p^m}`, represented as `F_p[x] / (modulus)` with the
/// lexicographically smallest monic irreducible modulus of degree `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fq {
    pub p: u64,
    pub m: usize,
    /// Monic modulus, little-endian, length `m + 1`, leading coefficient 1.
    pub modulus: Vec<u64>,
}

/// Field element as a residue polynomial, little-endian, length `m`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FqElem(pub Coeffs);

/// Dual number `value + eps * deriv` with `eps^2 = 0`, over `Fq`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualFq {
    pub value: FqElem,
    pub deriv: FqElem,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Constructs `F_{p^m}` with a deterministic modulus: candidates are scanned
/// with the high-degree coefficients most significant, so repeated runs agree
/// bit for bit.
pub fn make_field(p: u64, m: usize) -> Result<Fq> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m == 0 {
        return Err(Error::InvalidSystem("field extension degree must be >= 1".into()));
    }
    let mut size: u128 = 1;
    for _ in 0..m {
        size = size.saturating_mul(p as u128);
        if size > FIELD_SIZE_LIMIT {
            return Err(Error::SizeGuard {
                what: "field size p^m",
                size,
                limit: FIELD_SIZE_LIMIT,
            });
        }
    }
    if m == 1 {
        return Ok(Fq {
            p,
            m,
            modulus: vec![0, 1],
        });
    }
    let total = size; // p^m candidates
    let mut counter: u128 = 0;
    while counter < total {
        // Base-p digits of the counter give the candidate's coefficients,
        // with the top-degree coefficient most significant.
        let mut coeffs = vec![0u64; m];
        let mut rem = counter;
        for slot in coeffs.iter_mut() {
            *slot = (rem % p as u128) as u64;
            rem /= p as u128;
        }
        let mut modulus = coeffs;
        modulus.push(1);
        if poly_is_irreducible(p, &modulus) {
            return Ok(Fq { p, m, modulus });
        }
        counter += 1;
    }
    unreachable!("an irreducible polynomial of every degree exists over F_p")
}

// ---- dense univariate polynomial arithmetic over F_p ----

fn poly_trim(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

fn poly_mul_mod_p(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + (x as u128 * y as u128 % p as u128) as u64) % p;
        }
    }
    poly_trim(&mut out);
    out
}

fn poly_rem(p: u64, a: &[u64], m: &[u64]) -> Vec<u64> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    if dm == 0 {
        return vec![0]; // division by a unit leaves no remainder
    }
    let lead_inv = mod_inv(p, m[dm]);
    while r.len() > dm {
        let dr = r.len() - 1;
        let factor = (r[dr] as u128 * lead_inv as u128 % p as u128) as u64;
        if factor != 0 {
            for i in 0..=dm {
                let idx = dr - dm + i;
                let sub = (factor as u128 * m[i] as u128 % p as u128) as u64;
                r[idx] = (r[idx] + p - sub) % p;
            }
        }
        r.pop();
        poly_trim(&mut r);
    }
    r
}

fn poly_gcd_mod_p(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !(y.len() == 1 && y[0] == 0) {
        let r = poly_rem(p, &x, &y);
        x = y;
        y = r;
    }
    // Normalize monic.
    let lead = *x.last().unwrap();
    if lead != 0 && lead != 1 {
        let inv = mod_inv(p, lead);
        for c in &mut x {
            *c = (*c as u128 * inv as u128 % p as u128) as u64;
        }
    }
    x
}

fn poly_powmod_xq(p: u64, q_exp: u128, m: &[u64]) -> Vec<u64> {
    // x^(q_exp) mod m by square and multiply.
    let mut result = vec![1u64];
    let mut base = poly_rem(p, &[0, 1], m);
    let mut e = q_exp;
    while e > 0 {
        if e & 1 == 1 {
            result = poly_rem(p, &poly_mul_mod_p(p, &result, &base), m);
        }
        base = poly_rem(p, &poly_mul_mod_p(p, &base, &base), m);
        e >>= 1;
    }
    result
}

/// Irreducibility over `F_p` by the standard gcd criterion:
/// `x^{p^m} = x (mod f)` and `gcd(x^{p^{m/r}} - x, f) = 1` for every prime
/// `r` dividing `m`.
fn poly_is_irreducible(p: u64, modulus: &[u64]) -> bool {
    let m = modulus.len() - 1;
    if modulus[0] == 0 && m > 1 {
        return false; // divisible by x
    }
    let pm = (p as u128).pow(m as u32);
    let xq = poly_powmod_xq(p, pm, modulus);
    let mut xq_minus_x = xq;
    if xq_minus_x.len() < 2 {
        xq_minus_x.resize(2, 0);
    }
    xq_minus_x[1] = (xq_minus_x[1] + p - 1) % p;
    poly_trim(&mut xq_minus_x);
    if !(xq_minus_x.len() == 1 && xq_minus_x[0] == 0) {
        return false;
    }
    let mut rest = m;
    let mut r = 2usize;
    let mut prime_divisors = Vec::new();
    while r * r <= rest {
        if rest % r == 0 {
            prime_divisors.push(r);
            while rest % r == 0 {
                rest /= r;
            }
        }
        r += 1;
    }
    if rest > 1 {
        prime_divisors.push(rest);
    }
    for r in prime_divisors {
        let e = (p as u128).pow((m / r) as u32);
        let xe = poly_powmod_xq(p, e, modulus);
        let mut diff = xe;
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = (diff[1] + p - 1) % p;
        poly_trim(&mut diff);
        let g = poly_gcd_mod_p(p, &diff, modulus);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

fn mod_inv(p: u64, a: u64) -> u64 {
    // Fermat; p prime, a nonzero mod p.
    mod_pow(p, a % p, p - 2)
}

fn mod_pow(p: u64, mut base: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

impl Fq {
    pub fn q(&self) -> u64 {
        let mut acc = 1u64;
        for _ in 0..self.m {
            acc *= self.p;
        }
        acc
    }

    pub fn zero(&self) -> FqElem {
        FqElem(smallvec![0; self.m])
    }

    pub fn one(&self) -> FqElem {
        let mut v: Coeffs = smallvec![0; self.m];
        v[0] = 1;
        FqElem(v)
    }

    /// The residue of an integer, embedded into the prime subfield.
    pub fn from_int(&self, n: i64) -> FqElem {
        let mut v: Coeffs = smallvec![0; self.m];
        v[0] = n.rem_euclid(self.p as i64) as u64;
        FqElem(v)
    }

    /// Element from little-endian generator coefficients (extra coefficients
    /// are folded in by reduction).
    pub fn from_coeffs(&self, coeffs: &[i64]) -> FqElem {
        let reduced: Vec<u64> = coeffs
            .iter()
            .map(|&c| c.rem_euclid(self.p as i64) as u64)
            .collect();
        let rem = poly_rem(self.p, if reduced.is_empty() { &[0] } else { &reduced }, &self.modulus);
        let mut v: Coeffs = rem.into_iter().collect();
        v.resize(self.m, 0);
        FqElem(v)
    }

    /// The generator `x` of the field over its prime subfield (equals 0 when
    /// `m = 1`, where the modulus is `x`).
    pub fn generator(&self) -> FqElem {
        let mut coeffs = vec![0i64; self.m + 1];
        coeffs[1] = 1;
        self.from_coeffs(&coeffs)
    }

    /// The element with the given enumeration index; indices run over
    /// little-endian base-`p` digit vectors, so index 0 is zero.
    pub fn element(&self, index: u64) -> FqElem {
        let mut v: Coeffs = smallvec![0u64; self.m];
        let mut rem = index;
        for slot in v.iter_mut() {
            *slot = rem % self.p;
            rem /= self.p;
        }
        debug_assert_eq!(rem, 0);
        FqElem(v)
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.q()).map(|i| self.element(i))
    }

    pub fn is_zero(&self, a: &FqElem) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        FqElem(
            a.0.iter()
                .zip(&b.0)
                .map(|(&x, &y)| (x + y) % self.p)
                .collect(),
        )
    }

    pub fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        FqElem(
            a.0.iter()
                .zip(&b.0)
                .map(|(&x, &y)| (x + self.p - y) % self.p)
                .collect(),
        )
    }

    pub fn neg(&self, a: &FqElem) -> FqElem {
        FqElem(a.0.iter().map(|&x| (self.p - x) % self.p).collect())
    }

    pub fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        if self.m == 1 {
            return FqElem(smallvec![
                (a.0[0] as u128 * b.0[0] as u128 % self.p as u128) as u64
            ]);
        }
        let prod = poly_mul_mod_p(self.p, &a.0, &b.0);
        let rem = poly_rem(self.p, &prod, &self.modulus);
        let mut v: Coeffs = rem.into_iter().collect();
        v.resize(self.m, 0);
        FqElem(v)
    }

    pub fn pow(&self, a: &FqElem, mut e: u64) -> FqElem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &FqElem) -> Option<FqElem> {
        if self.is_zero(a) {
            return None;
        }
        Some(self.pow(a, self.q() - 2))
    }

    /// Frobenius `x -> x^p`.
    pub fn frobenius(&self, a: &FqElem) -> FqElem {
        self.pow(a, self.p)
    }

    /// Trace to the prime field: `sum_{i<m} x^{p^i}`, returned as a residue
    /// mod `p`.
    pub fn trace_to_prime(&self, a: &FqElem) -> u64 {
        let mut acc = self.zero();
        let mut frob = a.clone();
        for _ in 0..self.m {
            acc = self.add(&acc, &frob);
            frob = self.frobenius(&frob);
        }
        debug_assert!(acc.0[1..].iter().all(|&c| c == 0), "trace lands in F_p");
        acc.0[0]
    }

    /// Image of this field's generator inside a larger field with the same
    /// characteristic and `self.m | big.m`: the lexicographically smallest
    /// root of this field's modulus. Enables coefficient transport to
    /// extension fields.
    pub fn embed_generator(&self, big: &Fq) -> Result<FqElem> {
        if big.p != self.p || big.m % self.m != 0 {
            return Err(Error::InvalidSystem(format!(
                "no embedding of F_{{{}^{}}} into F_{{{}^{}}}",
                self.p, self.m, big.p, big.m
            )));
        }
        if self.m == 1 {
            return Ok(big.zero());
        }
        for idx in 0..big.q() {
            let cand = big.element(idx);
            // Evaluate this field's modulus at cand in the big field.
            let mut acc = big.zero();
            for &c in self.modulus.iter().rev() {
                acc = big.mul(&acc, &cand);
                let cc = big.from_int(c as i64);
                acc = big.add(&acc, &cc);
            }
            if big.is_zero(&acc) {
                return Ok(cand);
            }
        }
        unreachable!("a splitting root exists whenever m divides big.m")
    }

    /// Transports an element given by generator coefficients into `big`,
    /// using a precomputed generator image.
    pub fn lift_coeffs(&self, big: &Fq, gen_image: &FqElem, coeffs: &[i64]) -> FqElem {
        let mut acc = big.zero();
        for &c in coeffs.iter().rev() {
            acc = big.mul(&acc, gen_image);
            acc = big.add(&acc, &big.from_int(c));
        }
        acc
    }

    // ---- dual numbers ----

    pub fn dual(&self, value: FqElem, deriv: FqElem) -> DualFq {
        DualFq { value, deriv }
    }

    pub fn dual_const(&self, value: FqElem) -> DualFq {
        DualFq {
            value,
            deriv: self.zero(),
        }
    }

    pub fn dual_add(&self, a: &DualFq, b: &DualFq) -> DualFq {
        DualFq {
            value: self.add(&a.value, &b.value),
            deriv: self.add(&a.deriv, &b.deriv),
        }
    }

    pub fn dual_sub(&self, a: &DualFq, b: &DualFq) -> DualFq {
        DualFq {
            value: self.sub(&a.value, &b.value),
            deriv: self.sub(&a.deriv, &b.deriv),
        }
    }

    pub fn dual_neg(&self, a: &DualFq) -> DualFq {
        DualFq {
            value: self.neg(&a.value),
            deriv: self.neg(&a.deriv),
        }
    }

    /// `(a + eps b)(c + eps d) = ac + eps (ad + bc)`.
    pub fn dual_mul(&self, a: &DualFq, b: &DualFq) -> DualFq {
        DualFq {
            value: self.mul(&a.value, &b.value),
            deriv: self.add(
                &self.mul(&a.value, &b.deriv),
                &self.mul(&a.deriv, &b.value),
            ),
        }
    }

    /// `(a + eps b)^{-1} = a^{-1} - eps b a^{-2}`; defined when `a != 0`.
    pub fn dual_inv(&self, a: &DualFq) -> Option<DualFq> {
        let vinv = self.inv(&a.value)?;
        let vinv2 = self.mul(&vinv, &vinv);
        Some(DualFq {
            value: vinv,
            deriv: self.neg(&self.mul(&a.deriv, &vinv2)),
        })
    }

    /// Evaluates a univariate polynomial (little-endian `Fq` coefficients)
    /// at a dual point; the derivative slot of the result carries `f'`.
    pub fn dual_eval_poly(&self, coeffs: &[FqElem], at: &DualFq) -> DualFq {
        let mut acc = self.dual_const(self.zero());
        for c in coeffs.iter().rev() {
            acc = self.dual_mul(&acc, at);
            acc = self.dual_add(&acc, &self.dual_const(c.clone()));
        }
        acc
    }
}

/// Generic ring context so representation matrices can be evaluated over
/// `Fq` and over dual numbers with the same code path.
pub trait RingCtx {
    type El: Clone + PartialEq + std::fmt::Debug;
    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn from_int(&self, n: i64) -> Self::El;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn inv(&self, a: &Self::El) -> Option<Self::El>;
    fn is_zero(&self, a: &Self::El) -> bool;
}

impl RingCtx for Fq {
    type El = FqElem;
    fn zero(&self) -> FqElem {
        Fq::zero(self)
    }
    fn one(&self) -> FqElem {
        Fq::one(self)
    }
    fn from_int(&self, n: i64) -> FqElem {
        Fq::from_int(self, n)
    }
    fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        Fq::add(self, a, b)
    }
    fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        Fq::sub(self, a, b)
    }
    fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        Fq::mul(self, a, b)
    }
    fn inv(&self, a: &FqElem) -> Option<FqElem> {
        Fq::inv(self, a)
    }
    fn is_zero(&self, a: &FqElem) -> bool {
        Fq::is_zero(self, a)
    }
}

/// Dual-number ring context over a base field.
pub struct DualCtx<'a>(pub &'a Fq);

impl RingCtx for DualCtx<'_> {
    type El = DualFq;
    fn zero(&self) -> DualFq {
        self.0.dual_const(self.0.zero())
    }
    fn one(&self) -> DualFq {
        self.0.dual_const(self.0.one())
    }
    fn from_int(&self, n: i64) -> DualFq {
        self.0.dual_const(self.0.from_int(n))
    }
    fn add(&self, a: &DualFq, b: &DualFq) -> DualFq {
        self.0.dual_add(a, b)
    }
    fn sub(&self, a: &DualFq, b: &DualFq) -> DualFq {
        self.0.dual_sub(a, b)
    }
    fn mul(&self, a: &DualFq, b: &DualFq) -> DualFq {
        self.0.dual_mul(a, b)
    }
    fn inv(&self, a: &DualFq) -> Option<DualFq> {
        self.0.dual_inv(a)
    }
    fn is_zero(&self, a: &DualFq) -> bool {
        self.0.is_zero(&a.value) && self.0.is_zero(&a.deriv)
    }
}

/// Exact per-residue counts of an additive character sum:
/// `counts[j] = #{points with trace value j}`, so the sum itself is
/// `sum_j counts[j] zeta_p^j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharCounts {
    pub p: u64,
    pub counts: Vec<u64>,
}

impl CharCounts {
    pub fn new(p: u64) -> Self {
        CharCounts {
            p,
            counts: vec![0; p as usize],
        }
    }

    pub fn record(&mut self, residue: u64) {
        self.counts[residue as usize] += 1;
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Associative, commutative merge of partial counts.
    pub fn merge(&mut self, other: &CharCounts) {
        debug_assert_eq!(self.p, other.p);
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
    }

    /// `|sum_j counts_j e^{2 pi i j / p}|` in double precision, with a
    /// conservative rounding bound (far below the 1e-9 * total budget).
    pub fn eval_magnitude(&self) -> (f64, f64) {
        let p = self.p as f64;
        let mut re = 0.0f64;
        let mut im = 0.0f64;
        for (j, &c) in self.counts.iter().enumerate() {
            let theta = 2.0 * std::f64::consts::PI * (j as f64) / p;
            re += c as f64 * theta.cos();
            im += c as f64 * theta.sin();
        }
        let magnitude = re.hypot(im);
        let error_bound = self.total() as f64 * 1e-12;
        (magnitude, error_bound)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_moduli() {
        assert_eq!(make_field(2, 1).unwrap().modulus, vec![0, 1]);
        assert_eq!(make_field(3, 2).unwrap().modulus, vec![1, 0, 1]); // x^2 + 1
        assert_eq!(make_field(2, 2).unwrap().modulus, vec![1, 1, 1]); // x^2 + x + 1
        assert!(matches!(make_field(6, 1), Err(Error::NotPrime(6))));
        assert!(matches!(make_field(2, 30), Err(Error::SizeGuard { .. })));
    }

    #[test]
    fn field_axioms_spot_checks() {
        for (p, m) in [(5u64, 1usize), (2, 2), (3, 2), (2, 3)] {
            let f = make_field(p, m).unwrap();
            assert_eq!(f.elements().count() as u64, f.q());
            for a in f.elements() {
                assert_eq!(f.add(&a, &f.zero()), a);
                assert_eq!(f.mul(&a, &f.one()), a);
                assert!(f.is_zero(&f.sub(&a, &a)));
                if !f.is_zero(&a) {
                    let inv = f.inv(&a).unwrap();
                    assert_eq!(f.mul(&a, &inv), f.one());
                }
            }
        }
    }

    #[test]
    fn frobenius_fixes_exactly_prime_field() {
        let f = make_field(3, 2).unwrap();
        let fixed: Vec<FqElem> = f
            .elements()
            .filter(|a| f.frobenius(a) == *a)
            .collect();
        assert_eq!(fixed.len(), 3);
        assert!(fixed.iter().all(|a| a.0[1] == 0));
        // Frobenius has order m.
        for a in f.elements() {
            assert_eq!(f.frobenius(&f.frobenius(&a)), a);
        }
    }

    #[test]
    fn trace_examples() {
        // Trace of a prime-field element is m * x.
        let f = make_field(3, 2).unwrap();
        for x in 0..3i64 {
            assert_eq!(
                f.trace_to_prime(&f.from_int(x)),
                ((2 * x) % 3) as u64
            );
        }
        assert_eq!(f.trace_to_prime(&f.zero()), 0);

        // F_4 = F_2(g) with g^2 = g + 1: Tr(g) = g + g^2 = 1.
        let f4 = make_field(2, 2).unwrap();
        let g = f4.generator();
        assert_eq!(f4.trace_to_prime(&g), 1);
    }

    #[test]
    fn trace_is_additive_and_surjective() {
        for (p, m) in [(2u64, 2usize), (3, 2), (2, 3), (5, 2)] {
            let f = make_field(p, m).unwrap();
            let elems: Vec<FqElem> = f.elements().collect();
            for a in elems.iter().take(6) {
                for b in elems.iter().take(6) {
                    let lhs = f.trace_to_prime(&f.add(a, b));
                    let rhs = (f.trace_to_prime(a) + f.trace_to_prime(b)) % p;
                    assert_eq!(lhs, rhs);
                }
            }
            let mut hit = vec![false; p as usize];
            for a in &elems {
                hit[f.trace_to_prime(a) as usize] = true;
            }
            assert!(hit.iter().all(|&h| h), "trace is onto F_p");
        }
    }

    #[test]
    fn dual_derivative_matches_formal_derivative() {
        let mut state = 0x1234_5678_9abc_def0u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for (p, m) in [(5u64, 1usize), (3, 2)] {
            let f = make_field(p, m).unwrap();
            for _ in 0..20 {
                let deg = (next() % 9) as usize;
                let coeffs: Vec<FqElem> =
                    (0..=deg).map(|_| f.element(next() % f.q())).collect();
                let at = f.element(next() % f.q());
                let dual_at = f.dual(at.clone(), f.one());
                let result = f.dual_eval_poly(&coeffs, &dual_at);
                // Formal derivative: sum i c_i x^{i-1}.
                let mut deriv = f.zero();
                for (i, c) in coeffs.iter().enumerate().skip(1) {
                    let term = f.mul(&f.from_int(i as i64), c);
                    deriv = f.add(&deriv, &f.mul(&term, &f.pow(&at, (i - 1) as u64)));
                }
                let mut value = f.zero();
                for (i, c) in coeffs.iter().enumerate() {
                    value = f.add(&value, &f.mul(c, &f.pow(&at, i as u64)));
                }
                assert_eq!(result.value, value);
                assert_eq!(result.deriv, deriv);
            }
        }
    }

    #[test]
    fn dual_inverse() {
        let f = make_field(7, 1).unwrap();
        let a = f.dual(f.from_int(3), f.from_int(2));
        let inv = f.dual_inv(&a).unwrap();
        let prod = f.dual_mul(&a, &inv);
        assert_eq!(prod.value, f.one());
        assert!(f.is_zero(&prod.deriv));
        assert!(f.dual_inv(&f.dual(f.zero(), f.one())).is_none());
    }

    #[test]
    fn embedding_into_extension() {
        let small = make_field(3, 1).unwrap();
        let big = make_field(3, 2).unwrap();
        let img = small.embed_generator(&big).unwrap();
        assert!(big.is_zero(&img)); // prime field embeds trivially
        let lifted = small.lift_coeffs(&big, &img, &[2]);
        assert_eq!(lifted, big.from_int(2));

        let f4 = make_field(2, 2).unwrap();
        let f16 = make_field(2, 4).unwrap();
        let img = f4.embed_generator(&f16).unwrap();
        // The image satisfies g^2 + g + 1 = 0 in F_16.
        let sq = f16.mul(&img, &img);
        let sum = f16.add(&f16.add(&sq, &img), &f16.one());
        assert!(f16.is_zero(&sum));
        // Embedding is a ring homomorphism on a sample product.
        let a = f4.generator();
        let prod_small = f4.mul(&a, &f4.add(&a, &f4.one()));
        let lift = |x: &FqElem| {
            let coeffs: Vec<i64> = x.0.iter().map(|&c| c as i64).collect();
            f4.lift_coeffs(&f16, &img, &coeffs)
        };
        let prod_big = f16.mul(&lift(&a), &lift(&f4.add(&a, &f4.one())));
        assert_eq!(lift(&prod_small), prod_big);
    }

    #[test]
    fn char_counts_merge_and_eval() {
        let mut a = CharCounts::new(3);
        a.record(0);
        a.record(1);
        let mut b = CharCounts::new(3);
        b.record(0);
        b.record(2);
        let mut merged = a.clone();
        merged.merge(&b);
        assert_eq!(merged.counts, vec![2, 1, 1]);
        assert_eq!(merged.total(), 4);

        // |2 + zeta_3 + zeta_3^2| = |2 - 1| = 1.
        let (mag, err) = merged.eval_magnitude();
        assert!((mag - 1.0).abs() < 1e-9);
        assert!(err <= 1e-9 * merged.total() as f64);

        // All mass on j = 0: magnitude is the count itself.
        let mut c = CharCounts::new(5);
        for _ in 0..7 {
            c.record(0);
        }
        let (mag, _) = c.eval_magnitude();
        assert!((mag - 7.0).abs() < 1e-9);

        // p = 2: |c0 - c1|.
        let mut d = CharCounts::new(2);
        for _ in 0..4 {
            d.record(0);
        }
        for _ in 0..2 {
            d.record(1);
        }
        let (mag, _) = d.eval_magnitude();
        assert!((mag - 2.0).abs() < 1e-9);
    }
}
