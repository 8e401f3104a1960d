//! Split root-system data: Cartan matrices, positive roots with coroots,
//! Weyl groups, orbits, the Weyl dimension formula and its Freudenthal
//! oracle.
//!
//! All weights live in the fundamental-weight basis, so the weight lattice is
//! `Z^rank`, the dominant chamber is the positive orthant, and the simple
//! root `alpha_j` has coordinates given by column `j` of the Cartan matrix.

use crate::linalg;
use crate::polytope::Halfspace;
use crate::ratio::{rat_int, Rat};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// Integer weight in fundamental-weight coordinates.
pub type Weight = Vec<i64>;

/// Supported families of irreducible root systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
pub enum Family {
    A,
    B,
    G,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Family::A => write!(f, "A"),
            Family::B => write!(f, "B"),
            Family::G => write!(f, "G"),
        }
    }
}

/// A positive root, carried in three coordinate systems at once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositiveRoot {
    /// Coordinates in the simple-root basis.
    pub root_coords: Vec<i64>,
    /// Coordinates of the coroot in the simple-coroot basis. Pairing a weight
    /// against this root is the dot product with these coordinates.
    pub coroot_coords: Vec<i64>,
    /// Coordinates in the fundamental-weight basis (`cartan * root_coords`).
    pub fw_coords: Vec<i64>,
}

impl PositiveRoot {
    pub fn is_simple(&self) -> bool {
        self.root_coords.iter().sum::<i64>() == 1
    }
}

/// Root-system data for one of the supported families.
#[derive(Debug, Clone)]
pub struct RootSystem {
    pub family: Family,
    pub rank: usize,
    /// Cartan matrix with `cartan[i][j] = <alpha_j, alpha_i^vee>`.
    pub cartan: Vec<Vec<i64>>,
    /// Positive roots; the simple roots come first, in index order.
    pub positive_roots: Vec<PositiveRoot>,
    /// All Weyl group elements as matrices acting on fundamental-weight
    /// coordinates (row-major, `rank x rank`).
    pub weyl_elements: Vec<Vec<i64>>,
    pub weyl_order: usize,
    /// Symmetrizers `d_i = (alpha_i, alpha_i)/2` of the invariant form,
    /// normalized so short simple roots get 1.
    symmetrizer: Vec<i64>,
}

fn cartan_matrix(family: Family, rank: usize) -> Option<Vec<Vec<i64>>> {
    match (family, rank) {
        (Family::A, 1..=4) => {
            let mut c = vec![vec![0i64; rank]; rank];
            for i in 0..rank {
                c[i][i] = 2;
                if i + 1 < rank {
                    c[i][i + 1] = -1;
                    c[i + 1][i] = -1;
                }
            }
            Some(c)
        }
        (Family::B, 2) => Some(vec![vec![2, -1], vec![-2, 2]]),
        (Family::G, 2) => Some(vec![vec![2, -1], vec![-3, 2]]),
        _ => None,
    }
}

fn symmetrizer(family: Family, rank: usize) -> Vec<i64> {
    match family {
        Family::A => vec![1; rank],
        Family::B => vec![2, 1],
        Family::G => vec![3, 1],
    }
}

/// Builds the root system for `(family, rank)`.
///
/// Positive roots and their coroots are generated by reflection closure from
/// the simple roots; the Weyl group is generated by breadth-first closure of
/// the simple reflection matrices.
pub fn build_root_system(family: Family, rank: usize) -> Result<RootSystem> {
    let cartan = cartan_matrix(family, rank).ok_or(Error::UnsupportedFamily {
        family: family.to_string(),
        rank,
    })?;

    // Reflection closure on (root, coroot) pairs, keeping positive roots.
    //   s_i(beta)  = beta - (C beta)_i alpha_i        (simple-root coords)
    //   s_i(coroot) = coroot - (C^T coroot)_i alpha_i^vee
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut roots: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
    let mut queue: VecDeque<(Vec<i64>, Vec<i64>)> = VecDeque::new();
    for i in 0..rank {
        let mut b = vec![0i64; rank];
        b[i] = 1;
        let h = b.clone();
        seen.insert(b.clone());
        roots.push((b.clone(), h.clone()));
        queue.push_back((b, h));
    }
    while let Some((b, h)) = queue.pop_front() {
        for i in 0..rank {
            let pairing: i64 = (0..rank).map(|j| cartan[i][j] * b[j]).sum();
            let copairing: i64 = (0..rank).map(|j| cartan[j][i] * h[j]).sum();
            let mut nb = b.clone();
            nb[i] -= pairing;
            if nb.iter().any(|&x| x < 0) {
                continue;
            }
            let mut nh = h.clone();
            nh[i] -= copairing;
            if seen.insert(nb.clone()) {
                roots.push((nb.clone(), nh.clone()));
                queue.push_back((nb, nh));
            }
        }
    }
    // Simple roots stay first in index order; the rest sort by height then
    // coordinates.
    let tail = roots.split_off(rank);
    let mut tail = tail;
    tail.sort_by_key(|(b, _)| (b.iter().sum::<i64>(), b.clone()));
    roots.extend(tail);
    let positive_roots: Vec<PositiveRoot> = roots
        .into_iter()
        .map(|(b, h)| {
            let fw = (0..rank)
                .map(|i| (0..rank).map(|j| cartan[i][j] * b[j]).sum())
                .collect();
            PositiveRoot {
                root_coords: b,
                coroot_coords: h,
                fw_coords: fw,
            }
        })
        .collect();

    // Weyl group closure from the simple reflection matrices
    // S_i = I - alpha_i e_i^T (alpha_i in fundamental-weight coordinates).
    let mut gens = Vec::with_capacity(rank);
    for i in 0..rank {
        let mut s = linalg::mat_identity(rank);
        for r in 0..rank {
            s[r * rank + i] -= cartan[r][i];
        }
        gens.push(s);
    }
    let mut elements: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
    let id = linalg::mat_identity(rank);
    elements.insert(id.clone());
    queue.push_back(id);
    while let Some(w) = queue.pop_front() {
        for g in &gens {
            let next = linalg::mat_mul(rank, g, &w);
            if elements.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let weyl_elements: Vec<Vec<i64>> = elements.into_iter().collect();
    let weyl_order = weyl_elements.len();

    Ok(RootSystem {
        family,
        rank,
        cartan,
        positive_roots,
        weyl_elements,
        weyl_order,
        symmetrizer: symmetrizer(family, rank),
    })
}

impl RootSystem {
    /// `dim G = rank + 2 |R^+|` for the corresponding semisimple group.
    pub fn dim_group(&self) -> usize {
        self.rank + 2 * self.positive_roots.len()
    }

    pub fn is_dominant(&self, lambda: &[i64]) -> bool {
        lambda.iter().all(|&x| x >= 0)
    }

    fn check_len(&self, lambda: &[i64]) -> Result<()> {
        if lambda.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: lambda.len(),
            });
        }
        Ok(())
    }

    /// Applies the simple reflection `s_i` to a weight.
    pub fn simple_reflect(&self, lambda: &[i64], i: usize) -> Weight {
        let mut out = lambda.to_vec();
        let coeff = lambda[i];
        for r in 0..self.rank {
            out[r] -= coeff * self.cartan[r][i];
        }
        out
    }

    /// The Weyl orbit of a weight: the reflection closure under all simple
    /// reflections.
    pub fn weyl_orbit(&self, lambda: &[i64]) -> Result<BTreeSet<Weight>> {
        self.check_len(lambda)?;
        let mut orbit: BTreeSet<Weight> = BTreeSet::new();
        let mut queue: VecDeque<Weight> = VecDeque::new();
        orbit.insert(lambda.to_vec());
        queue.push_back(lambda.to_vec());
        while let Some(mu) = queue.pop_front() {
            for i in 0..self.rank {
                let next = self.simple_reflect(&mu, i);
                if orbit.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        Ok(orbit)
    }

    /// The unique dominant weight in the orbit of `lambda`.
    pub fn dominant_representative(&self, lambda: &[i64]) -> Weight {
        let mut mu = lambda.to_vec();
        loop {
            match (0..self.rank).find(|&i| mu[i] < 0) {
                Some(i) => mu = self.simple_reflect(&mu, i),
                None => return mu,
            }
        }
    }

    /// `(lambda, alpha) = lambda(H_alpha)` against the positive root with the
    /// given index.
    pub fn coroot_pairing(&self, lambda: &[i64], root_index: usize) -> Result<i64> {
        self.check_len(lambda)?;
        let root = self
            .positive_roots
            .get(root_index)
            .ok_or(Error::IndexOutOfRange {
                index: root_index,
                limit: self.positive_roots.len(),
            })?;
        Ok(root
            .coroot_coords
            .iter()
            .zip(lambda)
            .map(|(&h, &l)| h * l)
            .sum())
    }

    /// Weyl dimension formula: `prod (lambda + rho, alpha) / (rho, alpha)`
    /// over positive roots, with `rho` the all-ones weight.
    pub fn weyl_dimension(&self, lambda: &[i64]) -> Result<BigInt> {
        self.check_len(lambda)?;
        if !self.is_dominant(lambda) {
            return Err(Error::NotDominant(lambda.to_vec()));
        }
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for root in &self.positive_roots {
            let shifted: i64 = root
                .coroot_coords
                .iter()
                .zip(lambda)
                .map(|(&h, &l)| h * (l + 1))
                .sum();
            let rho: i64 = root.coroot_coords.iter().sum();
            num *= BigInt::from(shifted);
            den *= BigInt::from(rho);
        }
        let (q, r) = num_integer::Integer::div_rem(&num, &den);
        debug_assert!(r.is_zero(), "Weyl dimension must be an exact integer");
        Ok(q)
    }

    /// Gram matrix of the fundamental weights under the W-invariant form,
    /// `(omega_i, omega_j) = d_i (C^{-1})_{ij}`.
    fn fundamental_gram(&self) -> Vec<Vec<Rat>> {
        let n = self.rank;
        let c: Vec<Vec<Rat>> = self
            .cartan
            .iter()
            .map(|row| row.iter().map(|&x| rat_int(x)).collect())
            .collect();
        let mut inv = vec![vec![Rat::zero(); n]; n];
        for j in 0..n {
            let mut e = vec![Rat::zero(); n];
            e[j] = Rat::one();
            let col = linalg::solve(&c, &e).expect("Cartan matrix is invertible");
            for i in 0..n {
                inv[i][j] = col[i].clone();
            }
        }
        let mut gram = vec![vec![Rat::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                gram[i][j] = rat_int(self.symmetrizer[i]) * &inv[i][j];
            }
        }
        gram
    }

    fn inner(gram: &[Vec<Rat>], u: &[i64], v: &[i64]) -> Rat {
        let mut acc = Rat::zero();
        for (i, &ui) in u.iter().enumerate() {
            if ui == 0 {
                continue;
            }
            for (j, &vj) in v.iter().enumerate() {
                if vj != 0 {
                    acc += rat_int(ui * vj) * &gram[i][j];
                }
            }
        }
        acc
    }

    /// Full weight multiset of the irreducible module with highest weight
    /// `lambda`, via Freudenthal's recursion. The multiplicity total equals
    /// `weyl_dimension(lambda)`.
    pub fn freudenthal_multiplicities(&self, lambda: &[i64]) -> Result<BTreeMap<Weight, u64>> {
        self.check_len(lambda)?;
        if !self.is_dominant(lambda) {
            return Err(Error::NotDominant(lambda.to_vec()));
        }
        let gram = self.fundamental_gram();

        // Half the squared length of each positive root, so that
        // (mu, alpha) = <mu, alpha^vee> * d_alpha.
        let d_alpha: Vec<Rat> = self
            .positive_roots
            .iter()
            .map(|r| Self::inner(&gram, &r.fw_coords, &r.fw_coords) / rat_int(2))
            .collect();

        // Dominant weights mu <= lambda: mu = lambda - C k with k >= 0. The
        // bound k_i <= (lambda, omega_i) / d_i is exact for dominant mu.
        let mut bounds = vec![0i64; self.rank];
        for i in 0..self.rank {
            let mut val = Rat::zero();
            for (j, &lj) in lambda.iter().enumerate() {
                if lj != 0 {
                    val += rat_int(lj) * &gram[j][i];
                }
            }
            let limit = val / rat_int(self.symmetrizer[i]);
            bounds[i] = limit.floor().to_integer().try_into().unwrap_or(0);
        }
        let mut dominant: Vec<(i64, Weight)> = Vec::new();
        let mut k = vec![0i64; self.rank];
        'outer: loop {
            let mu: Weight = (0..self.rank)
                .map(|i| lambda[i] - (0..self.rank).map(|j| self.cartan[i][j] * k[j]).sum::<i64>())
                .collect();
            if mu.iter().all(|&x| x >= 0) {
                dominant.push((k.iter().sum(), mu));
            }
            let mut idx = 0;
            loop {
                if idx == self.rank {
                    break 'outer;
                }
                k[idx] += 1;
                if k[idx] <= bounds[idx] {
                    break;
                }
                k[idx] = 0;
                idx += 1;
            }
        }
        dominant.sort();

        let rho = vec![1i64; self.rank];
        let add = |a: &[i64], b: &[i64]| -> Weight { a.iter().zip(b).map(|(&x, &y)| x + y).collect() };
        let lambda_rho_sq = Self::inner(&gram, &add(lambda, &rho), &add(lambda, &rho));

        let mut mult: BTreeMap<Weight, u64> = BTreeMap::new();
        let dominant_set: BTreeSet<Weight> = dominant.iter().map(|(_, m)| m.clone()).collect();
        for (height, mu) in &dominant {
            if *height == 0 {
                mult.insert(mu.clone(), 1);
                continue;
            }
            let mut num = Rat::zero();
            for (idx, root) in self.positive_roots.iter().enumerate() {
                let mut s = 1i64;
                loop {
                    let nu: Weight = (0..self.rank)
                        .map(|i| mu[i] + s * root.fw_coords[i])
                        .collect();
                    let dom = self.dominant_representative(&nu);
                    if !dominant_set.contains(&dom) {
                        break;
                    }
                    let m_nu = *mult
                        .get(&dom)
                        .expect("weights closer to lambda are computed first");
                    let pairing: i64 = root
                        .coroot_coords
                        .iter()
                        .zip(&nu)
                        .map(|(&h, &x)| h * x)
                        .sum();
                    num += rat_int(m_nu as i64 * pairing) * &d_alpha[idx];
                    s += 1;
                }
            }
            let denom = &lambda_rho_sq - Self::inner(&gram, &add(mu, &rho), &add(mu, &rho));
            let m_mu = rat_int(2) * num / denom;
            debug_assert!(m_mu.is_integer() && m_mu.is_positive());
            mult.insert(mu.clone(), u64::try_from(m_mu.to_integer()).unwrap());
        }

        // Extend from dominant weights to full orbits; multiplicity is
        // W-invariant.
        let mut full: BTreeMap<Weight, u64> = BTreeMap::new();
        for (mu, m) in &mult {
            for w in self.weyl_orbit(mu)? {
                full.insert(w, *m);
            }
        }
        Ok(full)
    }

    /// The dominant chamber as `rank` halfspaces `lambda_i >= 0`, encoded as
    /// `-lambda_i <= 0`.
    pub fn dominant_chamber(&self) -> Vec<Halfspace> {
        (0..self.rank)
            .map(|i| {
                let mut normal = vec![Rat::zero(); self.rank];
                normal[i] = -Rat::one();
                Halfspace {
                    normal,
                    offset: Rat::zero(),
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(f: Family, r: usize) -> RootSystem {
        build_root_system(f, r).unwrap()
    }

    #[test]
    fn classical_counts() {
        let expected = [
            (Family::A, 1, 1, 2),
            (Family::A, 2, 3, 6),
            (Family::A, 3, 6, 24),
            (Family::A, 4, 10, 120),
            (Family::B, 2, 4, 8),
            (Family::G, 2, 6, 12),
        ];
        for (f, r, roots, order) in expected {
            let sys = rs(f, r);
            assert_eq!(sys.positive_roots.len(), roots, "{f}{r} roots");
            assert_eq!(sys.weyl_order, order, "{f}{r} Weyl order");
            assert_eq!(sys.dim_group(), r + 2 * roots);
        }
    }

    #[test]
    fn unsupported_families_rejected() {
        assert!(build_root_system(Family::A, 5).is_err());
        assert!(build_root_system(Family::B, 3).is_err());
        assert!(build_root_system(Family::G, 1).is_err());
        assert!(build_root_system(Family::A, 0).is_err());
    }

    #[test]
    fn cartan_shape() {
        for sys in [rs(Family::A, 3), rs(Family::B, 2), rs(Family::G, 2)] {
            for i in 0..sys.rank {
                assert_eq!(sys.cartan[i][i], 2);
                for j in 0..sys.rank {
                    if i != j {
                        assert!(sys.cartan[i][j] <= 0);
                    }
                }
            }
        }
    }

    #[test]
    fn simple_roots_come_first() {
        let sys = rs(Family::G, 2);
        for i in 0..2 {
            assert!(sys.positive_roots[i].is_simple());
            let mut e = vec![0i64; 2];
            e[i] = 1;
            assert_eq!(sys.positive_roots[i].root_coords, e);
            assert_eq!(sys.positive_roots[i].coroot_coords, e);
        }
    }

    #[test]
    fn g2_roots_match_exhaustive_closure() {
        // Independent oracle: close the set {+-simple} under reflection by
        // every known root (not only simple reflections), then count the
        // positive half.
        let sys = rs(Family::G, 2);
        let c = &sys.cartan;
        let pair = |b: &Vec<i64>, i: usize| -> i64 { (0..2).map(|j| c[i][j] * b[j]).sum() };
        let mut all: BTreeSet<Vec<i64>> = BTreeSet::new();
        for i in 0..2 {
            let mut e = vec![0i64; 2];
            e[i] = 1;
            all.insert(e.clone());
            all.insert(e.iter().map(|x| -x).collect());
        }
        loop {
            let snapshot: Vec<Vec<i64>> = all.iter().cloned().collect();
            let before = all.len();
            for b in &snapshot {
                for i in 0..2 {
                    let mut nb = b.clone();
                    nb[i] -= pair(b, i);
                    all.insert(nb);
                }
            }
            if all.len() == before {
                break;
            }
        }
        let positives: BTreeSet<Vec<i64>> = all
            .into_iter()
            .filter(|b| b.iter().all(|&x| x >= 0) && b.iter().any(|&x| x != 0))
            .collect();
        assert_eq!(positives.len(), 6);
        let ours: BTreeSet<Vec<i64>> = sys
            .positive_roots
            .iter()
            .map(|r| r.root_coords.clone())
            .collect();
        assert_eq!(positives, ours);
    }

    #[test]
    fn orbits_by_hand() {
        let a1 = rs(Family::A, 1);
        let orbit = a1.weyl_orbit(&[3]).unwrap();
        assert_eq!(orbit, BTreeSet::from([vec![3], vec![-3]]));

        let a2 = rs(Family::A, 2);
        let orbit = a2.weyl_orbit(&[1, 0]).unwrap();
        assert_eq!(
            orbit,
            BTreeSet::from([vec![1, 0], vec![-1, 1], vec![0, -1]])
        );

        for sys in [rs(Family::A, 2), rs(Family::B, 2), rs(Family::G, 2)] {
            let zero = vec![0i64; sys.rank];
            assert_eq!(sys.weyl_orbit(&zero).unwrap(), BTreeSet::from([zero]));
        }

        assert!(a2.weyl_orbit(&[1]).is_err());
    }

    #[test]
    fn orbit_sizes_divide_weyl_order() {
        for sys in [rs(Family::A, 2), rs(Family::B, 2), rs(Family::G, 2)] {
            for lambda in [[0, 0], [1, 0], [0, 2], [1, 1], [2, 3]] {
                let orbit = sys.weyl_orbit(&lambda).unwrap();
                assert_eq!(sys.weyl_order % orbit.len(), 0);
                let dominant: Vec<_> = orbit.iter().filter(|w| sys.is_dominant(w)).collect();
                assert_eq!(dominant.len(), 1, "exactly one dominant weight per orbit");
            }
        }
    }

    #[test]
    fn coroot_pairing_examples() {
        let a1 = rs(Family::A, 1);
        assert_eq!(a1.coroot_pairing(&[5], 0).unwrap(), 5);

        let a2 = rs(Family::A, 2);
        let highest = a2
            .positive_roots
            .iter()
            .position(|r| r.root_coords == vec![1, 1])
            .unwrap();
        assert_eq!(a2.coroot_pairing(&[1, 1], highest).unwrap(), 2);
        assert_eq!(a2.coroot_pairing(&[0, 0], highest).unwrap(), 0);
        assert!(a2.coroot_pairing(&[1, 1], 9).is_err());
    }

    #[test]
    fn pairing_is_weyl_equivariant() {
        // (w lambda, w alpha) = (lambda, alpha): transporting both sides by
        // the same simple reflection preserves the pairing. Reflected roots
        // are located by their fundamental-weight coordinates.
        for sys in [rs(Family::A, 2), rs(Family::B, 2), rs(Family::G, 2)] {
            let root_by_fw: BTreeMap<Vec<i64>, usize> = sys
                .positive_roots
                .iter()
                .enumerate()
                .map(|(idx, r)| (r.fw_coords.clone(), idx))
                .collect();
            for lambda in [[1i64, 2], [3, 0], [2, 2]] {
                for i in 0..sys.rank {
                    for (idx, root) in sys.positive_roots.iter().enumerate() {
                        let w_lambda = sys.simple_reflect(&lambda, i);
                        let w_alpha = sys.simple_reflect(&root.fw_coords, i);
                        let neg: Vec<i64> = w_alpha.iter().map(|x| -x).collect();
                        let (target, sign) = match root_by_fw.get(&w_alpha) {
                            Some(&t) => (t, 1),
                            None => (root_by_fw[&neg], -1),
                        };
                        let lhs = sys.coroot_pairing(&w_lambda, target).unwrap() * sign;
                        let rhs = sys.coroot_pairing(&lambda, idx).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn reflections_are_involutions() {
        for sys in [rs(Family::A, 3), rs(Family::B, 2), rs(Family::G, 2)] {
            for i in 0..sys.rank {
                let mut s = linalg::mat_identity(sys.rank);
                for r in 0..sys.rank {
                    s[r * sys.rank + i] -= sys.cartan[r][i];
                }
                assert_eq!(
                    linalg::mat_mul(sys.rank, &s, &s),
                    linalg::mat_identity(sys.rank)
                );
            }
            assert_eq!(sys.weyl_elements.len(), sys.weyl_order);
        }
    }

    #[test]
    fn weyl_dimension_examples() {
        let a1 = rs(Family::A, 1);
        for m in 0..6 {
            assert_eq!(a1.weyl_dimension(&[m]).unwrap(), BigInt::from(m + 1));
        }
        let a2 = rs(Family::A, 2);
        assert_eq!(a2.weyl_dimension(&[1, 1]).unwrap(), BigInt::from(8));
        assert_eq!(a2.weyl_dimension(&[0, 0]).unwrap(), BigInt::from(1));
        let g2 = rs(Family::G, 2);
        assert_eq!(g2.weyl_dimension(&[0, 0]).unwrap(), BigInt::from(1));
        // Adjoint representation of G2.
        assert_eq!(g2.weyl_dimension(&[1, 0]).unwrap(), BigInt::from(14));
        assert_eq!(g2.weyl_dimension(&[0, 1]).unwrap(), BigInt::from(7));
        assert!(a2.weyl_dimension(&[-1, 0]).is_err());
    }

    #[test]
    fn freudenthal_examples() {
        let a1 = rs(Family::A, 1);
        let sym2 = a1.freudenthal_multiplicities(&[2]).unwrap();
        assert_eq!(
            sym2,
            BTreeMap::from([(vec![2], 1), (vec![0], 1), (vec![-2], 1)])
        );

        let a2 = rs(Family::A, 2);
        let fund = a2.freudenthal_multiplicities(&[1, 0]).unwrap();
        assert_eq!(fund.len(), 3);
        assert!(fund.values().all(|&m| m == 1));
        let orbit = a2.weyl_orbit(&[1, 0]).unwrap();
        assert_eq!(fund.keys().cloned().collect::<BTreeSet<_>>(), orbit);

        // Adjoint of A2: six roots plus the zero weight with multiplicity 2.
        let adjoint = a2.freudenthal_multiplicities(&[1, 1]).unwrap();
        assert_eq!(adjoint[&vec![0, 0]], 2);
        assert_eq!(adjoint.len(), 7);

        let zero = a2.freudenthal_multiplicities(&[0, 0]).unwrap();
        assert_eq!(zero, BTreeMap::from([(vec![0, 0], 1)]));
    }

    #[test]
    fn freudenthal_total_matches_weyl_dimension() {
        for sys in [rs(Family::A, 1), rs(Family::A, 2), rs(Family::B, 2), rs(Family::G, 2)] {
            let coords: Vec<Vec<i64>> = match sys.rank {
                1 => (0..=3).map(|a| vec![a]).collect(),
                _ => (0..=3)
                    .flat_map(|a| (0..=3).map(move |b| vec![a, b]))
                    .collect(),
            };
            for lambda in coords {
                let dim = sys.weyl_dimension(&lambda).unwrap();
                let total: u64 = sys
                    .freudenthal_multiplicities(&lambda)
                    .unwrap()
                    .values()
                    .sum();
                assert_eq!(BigInt::from(total), dim, "{:?} in {}{}", lambda, sys.family, sys.rank);
            }
        }
    }

    #[test]
    fn dominant_chamber_shape() {
        for (sys, n) in [(rs(Family::A, 1), 1), (rs(Family::A, 2), 2), (rs(Family::B, 2), 2)] {
            let hs = sys.dominant_chamber();
            assert_eq!(hs.len(), n);
        }
    }
}
