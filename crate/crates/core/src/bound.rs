//! Assembles the bound pipeline: representation systems, their Newton
//! polytopes, the squared Weyl-dimension integrand, the exact rational
//! rank/sum bound, and the homogenization transform that adjoins a central
//! `G_m` factor.

use crate::groups::{Group, Rep};
use crate::integrator::{self, MultiPoly};
use crate::linalg;
use crate::polytope::{self, Halfspace, RationalPolytope};
use crate::ratio::{factorial, rat_int, Rat};
use crate::rootsys::{build_root_system, Family};
use crate::{Error, Result};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

/// The group underlying a representation system. `GmExt` wraps a group with
/// an extra central `G_m` factor acting by a character; it is produced by
/// [`homogenize`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupKind {
    Torus { n: usize },
    Sl2,
    Gl2,
    RootSystem { family: Family, rank: usize },
    GmExt(Box<GroupKind>),
}

/// One irreducible representation, specified structurally (highest weight or
/// symmetric-power degree), never by matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RepDescriptor {
    TorusChar(Vec<i64>),
    Sym { m: u32 },
    SymDet { m: u32, k: u32 },
    HighestWeight(Vec<i64>),
    /// Character `t^c` of the adjoined `G_m`, tensored with a representation
    /// of the inner group (`None` means the trivial one).
    GmTwist {
        c: i64,
        inner: Option<Box<RepDescriptor>>,
    },
}

/// Entries of a coefficient matrix are integer polynomials in the field
/// generator, little-endian.
pub type CoeffMatrix = Vec<Vec<Vec<i64>>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldDesc {
    pub p: u64,
    pub m: usize,
}

/// A group descriptor together with its list of representations and,
/// optionally, a coefficient tuple and a working field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepSystem {
    pub group: GroupKind,
    pub reps: Vec<RepDescriptor>,
    pub coefficients: Option<Vec<CoeffMatrix>>,
    pub field: Option<FieldDesc>,
}

/// Output of [`rank_bound`].
#[derive(Debug, Clone)]
pub struct BoundResult {
    pub d: usize,
    pub delta_infty: RationalPolytope,
    pub bound: Rat,
    /// Set when the integration domain is not full-dimensional, in which
    /// case the reported bound 0 is vacuous.
    pub lowdim_flag: bool,
}

/// Weight-lattice data shared by every group kind: Weyl matrices acting on
/// lattice coordinates, coroot linear forms for the positive roots, and the
/// dominant chamber cut out by the simple ones.
#[derive(Debug, Clone)]
pub struct LatticeData {
    pub rank: usize,
    pub weyl: Vec<Vec<i64>>,
    pub pos_root_forms: Vec<Vec<i64>>,
    pub rho_pairings: Vec<i64>,
    pub simple_indices: Vec<usize>,
    pub d: usize,
}

impl GroupKind {
    pub fn lattice_data(&self) -> Result<LatticeData> {
        match self {
            GroupKind::Torus { n } => Ok(LatticeData {
                rank: *n,
                weyl: vec![linalg::mat_identity(*n)],
                pos_root_forms: Vec::new(),
                rho_pairings: Vec::new(),
                simple_indices: Vec::new(),
                d: *n,
            }),
            GroupKind::Sl2 => Ok(LatticeData {
                rank: 1,
                weyl: vec![vec![1], vec![-1]],
                pos_root_forms: vec![vec![1]],
                rho_pairings: vec![1],
                simple_indices: vec![0],
                d: 3,
            }),
            GroupKind::Gl2 => Ok(LatticeData {
                rank: 2,
                weyl: vec![vec![1, 0, 0, 1], vec![0, 1, 1, 0]],
                pos_root_forms: vec![vec![1, -1]],
                rho_pairings: vec![1],
                simple_indices: vec![0],
                d: 4,
            }),
            GroupKind::RootSystem { family, rank } => {
                let rs = build_root_system(*family, *rank)?;
                Ok(LatticeData {
                    rank: *rank,
                    weyl: rs.weyl_elements.clone(),
                    pos_root_forms: rs
                        .positive_roots
                        .iter()
                        .map(|r| r.coroot_coords.clone())
                        .collect(),
                    rho_pairings: rs
                        .positive_roots
                        .iter()
                        .map(|r| r.coroot_coords.iter().sum())
                        .collect(),
                    simple_indices: (0..*rank).collect(),
                    d: rs.dim_group(),
                })
            }
            GroupKind::GmExt(inner) => {
                let lat = inner.lattice_data()?;
                let rank = lat.rank + 1;
                let weyl = lat
                    .weyl
                    .iter()
                    .map(|w| {
                        let mut m = linalg::mat_identity(rank);
                        for r in 0..lat.rank {
                            for c in 0..lat.rank {
                                m[(r + 1) * rank + (c + 1)] = w[r * lat.rank + c];
                            }
                        }
                        m
                    })
                    .collect();
                let lift = |forms: &[Vec<i64>]| -> Vec<Vec<i64>> {
                    forms
                        .iter()
                        .map(|f| {
                            let mut v = vec![0i64];
                            v.extend_from_slice(f);
                            v
                        })
                        .collect()
                };
                Ok(LatticeData {
                    rank,
                    weyl,
                    pos_root_forms: lift(&lat.pos_root_forms),
                    rho_pairings: lat.rho_pairings.clone(),
                    simple_indices: lat.simple_indices.clone(),
                    d: lat.d + 1,
                })
            }
        }
    }

    /// The enumerable matrix model behind this group kind, when one exists.
    pub fn enumerable(&self) -> Option<Group> {
        match self {
            GroupKind::Torus { n } => Some(Group::Torus { n: *n }),
            GroupKind::Sl2 => Some(Group::Sl2),
            GroupKind::Gl2 => Some(Group::Gl2),
            _ => None,
        }
    }

    /// Rank of the lattice of central cocharacters.
    fn central_rank(&self) -> usize {
        match self {
            GroupKind::Torus { n } => *n,
            GroupKind::Sl2 | GroupKind::RootSystem { .. } => 0,
            GroupKind::Gl2 => 1,
            GroupKind::GmExt(inner) => 1 + inner.central_rank(),
        }
    }
}

impl RepDescriptor {
    /// Compatibility with the group kind, plus per-rep invariants.
    fn validate(&self, group: &GroupKind) -> Result<()> {
        match (group, self) {
            (GroupKind::Torus { n }, RepDescriptor::TorusChar(w)) => {
                if w.len() != *n {
                    return Err(Error::InvalidSystem(format!(
                        "torus character of length {} for a rank-{n} torus",
                        w.len()
                    )));
                }
                Ok(())
            }
            (GroupKind::Sl2, RepDescriptor::Sym { .. }) => Ok(()),
            (GroupKind::Gl2, RepDescriptor::SymDet { .. }) => Ok(()),
            (GroupKind::RootSystem { family, rank }, RepDescriptor::HighestWeight(v)) => {
                if v.len() != *rank {
                    return Err(Error::InvalidSystem(format!(
                        "highest weight of length {} for rank {rank}",
                        v.len()
                    )));
                }
                if v.iter().any(|&x| x < 0) {
                    return Err(Error::InvalidSystem(format!(
                        "highest weight {v:?} is not dominant"
                    )));
                }
                let _ = build_root_system(*family, *rank)?;
                Ok(())
            }
            (GroupKind::GmExt(inner), RepDescriptor::GmTwist { inner: rep, .. }) => match rep {
                Some(r) => r.validate(inner),
                None => Ok(()),
            },
            _ => Err(Error::InvalidSystem(format!(
                "representation {self:?} does not fit group {group:?}"
            ))),
        }
    }

    /// Maximal weight in the group's lattice coordinates.
    pub fn max_weight(&self, group: &GroupKind) -> Result<Vec<i64>> {
        match self {
            RepDescriptor::TorusChar(w) => Ok(w.clone()),
            RepDescriptor::Sym { m } => Ok(vec![*m as i64]),
            RepDescriptor::SymDet { m, k } => Ok(vec![*m as i64 + *k as i64, *k as i64]),
            RepDescriptor::HighestWeight(v) => Ok(v.clone()),
            RepDescriptor::GmTwist { c, inner } => {
                let GroupKind::GmExt(inner_group) = group else {
                    return Err(Error::InvalidSystem("GmTwist outside GmExt".into()));
                };
                let rank = inner_group.lattice_data()?.rank;
                let mut v = vec![*c];
                match inner {
                    Some(r) => v.extend(r.max_weight(inner_group)?),
                    None => v.extend(std::iter::repeat(0).take(rank)),
                }
                Ok(v)
            }
        }
    }

    /// Every weight of the representation (with repetition collapsed), used
    /// by the quasi-finiteness span test.
    pub fn all_weights(&self, group: &GroupKind) -> Result<Vec<Vec<i64>>> {
        match self {
            RepDescriptor::TorusChar(w) => Ok(vec![w.clone()]),
            RepDescriptor::Sym { m } => Ok((0..=*m as i64).map(|i| vec![*m as i64 - 2 * i]).collect()),
            RepDescriptor::SymDet { m, k } => Ok((0..=*m as i64)
                .map(|i| vec![*m as i64 - i + *k as i64, i + *k as i64])
                .collect()),
            RepDescriptor::HighestWeight(v) => {
                let GroupKind::RootSystem { family, rank } = group else {
                    return Err(Error::InvalidSystem("highest weight outside root system".into()));
                };
                let rs = build_root_system(*family, *rank)?;
                Ok(rs.freudenthal_multiplicities(v)?.into_keys().collect())
            }
            RepDescriptor::GmTwist { c, inner } => {
                let GroupKind::GmExt(inner_group) = group else {
                    return Err(Error::InvalidSystem("GmTwist outside GmExt".into()));
                };
                let rank = inner_group.lattice_data()?.rank;
                let inner_weights = match inner {
                    Some(r) => r.all_weights(inner_group)?,
                    None => vec![vec![0; rank]],
                };
                Ok(inner_weights
                    .into_iter()
                    .map(|w| {
                        let mut v = vec![*c];
                        v.extend(w);
                        v
                    })
                    .collect())
            }
        }
    }

    /// Dimension of the representation space.
    pub fn dim(&self, group: &GroupKind) -> Result<usize> {
        match self {
            RepDescriptor::TorusChar(_) => Ok(1),
            RepDescriptor::Sym { m } | RepDescriptor::SymDet { m, .. } => Ok(*m as usize + 1),
            RepDescriptor::HighestWeight(v) => {
                let GroupKind::RootSystem { family, rank } = group else {
                    return Err(Error::InvalidSystem("highest weight outside root system".into()));
                };
                let rs = build_root_system(*family, *rank)?;
                let dim = rs.weyl_dimension(v)?;
                usize::try_from(&dim).map_err(|_| {
                    Error::SizeGuard {
                        what: "representation dimension",
                        size: u128::MAX,
                        limit: usize::MAX as u128,
                    }
                })
            }
            RepDescriptor::GmTwist { inner, .. } => {
                let GroupKind::GmExt(inner_group) = group else {
                    return Err(Error::InvalidSystem("GmTwist outside GmExt".into()));
                };
                match inner {
                    Some(r) => r.dim(inner_group),
                    None => Ok(1),
                }
            }
        }
    }

    /// The enumerable-group representation behind this descriptor.
    pub fn enumerable(&self) -> Option<Rep> {
        match self {
            RepDescriptor::TorusChar(w) => Some(Rep::TorusChar(w.clone())),
            RepDescriptor::Sym { m } => Some(Rep::Sym { m: *m }),
            RepDescriptor::SymDet { m, k } => Some(Rep::SymDet { m: *m, k: *k }),
            _ => None,
        }
    }

    /// Pairing of this representation's central character against a basis of
    /// central cocharacters (length = `central_rank` of the group).
    fn central_pairing(&self, group: &GroupKind) -> Vec<i64> {
        match (group, self) {
            (GroupKind::Torus { .. }, RepDescriptor::TorusChar(w)) => w.clone(),
            (GroupKind::Sl2, _) | (GroupKind::RootSystem { .. }, _) => Vec::new(),
            (GroupKind::Gl2, RepDescriptor::SymDet { m, k }) => {
                vec![*m as i64 + 2 * *k as i64]
            }
            (GroupKind::GmExt(inner_group), RepDescriptor::GmTwist { c, inner }) => {
                let mut row = vec![*c];
                match inner {
                    Some(r) => row.extend(r.central_pairing(inner_group)),
                    None => row.extend(std::iter::repeat(0).take(inner_group.central_rank())),
                }
                row
            }
            _ => unreachable!("validated systems pair reps with their groups"),
        }
    }
}

impl RepSystem {
    pub fn new(group: GroupKind, reps: Vec<RepDescriptor>) -> Self {
        RepSystem {
            group,
            reps,
            coefficients: None,
            field: None,
        }
    }

    /// Checks the structural invariants: nonempty reps, group/rep
    /// compatibility, and coefficient matrices square of the right size.
    pub fn validate(&self) -> Result<()> {
        if self.reps.is_empty() {
            return Err(Error::InvalidSystem("no representations given".into()));
        }
        for rep in &self.reps {
            rep.validate(&self.group)?;
        }
        if let Some(coeffs) = &self.coefficients {
            if coeffs.len() != self.reps.len() {
                return Err(Error::InvalidSystem(format!(
                    "{} coefficient matrices for {} representations",
                    coeffs.len(),
                    self.reps.len()
                )));
            }
            for (rep, mat) in self.reps.iter().zip(coeffs) {
                let dim = rep.dim(&self.group)?;
                if mat.len() != dim || mat.iter().any(|row| row.len() != dim) {
                    return Err(Error::InvalidSystem(format!(
                        "coefficient matrix must be {dim}x{dim} for {rep:?}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn lattice_data(&self) -> Result<LatticeData> {
        self.group.lattice_data()
    }

    /// Maximal weights of all representations.
    pub fn max_weights(&self) -> Result<Vec<Vec<i64>>> {
        self.reps.iter().map(|r| r.max_weight(&self.group)).collect()
    }
}

fn weight_to_rat(w: &[i64]) -> Vec<Rat> {
    w.iter().map(|&x| rat_int(x)).collect()
}

/// The Newton polytope `Delta` (hull of the Weyl orbits of the maximal
/// weights) and the Newton polytope at infinity `Delta_infty` (the same hull
/// with the origin adjoined).
pub fn newton_polytopes(sys: &RepSystem) -> Result<(RationalPolytope, RationalPolytope)> {
    sys.validate()?;
    let lat = sys.lattice_data()?;
    let mut orbit_points: BTreeSet<Vec<i64>> = BTreeSet::new();
    for w in sys.max_weights()? {
        for mat in &lat.weyl {
            orbit_points.insert(linalg::mat_apply(lat.rank, mat, &w));
        }
    }
    let delta_pts: Vec<Vec<Rat>> = orbit_points.iter().map(|w| weight_to_rat(w)).collect();
    let delta = polytope::convex_hull(&delta_pts)?;
    let mut infty_pts = delta_pts;
    infty_pts.push(vec![Rat::zero(); lat.rank]);
    let delta_infty = polytope::convex_hull(&infty_pts)?;
    Ok((delta, delta_infty))
}

/// Dominant-chamber halfspaces in lattice coordinates: `(lambda, alpha) >= 0`
/// for every simple positive root.
pub fn chamber_halfspaces(lat: &LatticeData) -> Vec<Halfspace> {
    lat.simple_indices
        .iter()
        .map(|&i| Halfspace {
            normal: lat.pos_root_forms[i].iter().map(|&x| rat_int(-x)).collect(),
            offset: Rat::zero(),
        })
        .collect()
}

/// The integrand `prod_{alpha in R+} (lambda, alpha)^2 / (rho, alpha)^2` as
/// an exact polynomial in lattice coordinates; the empty product (torus) is
/// the constant 1.
pub fn bound_integrand(lat: &LatticeData) -> MultiPoly {
    let mut poly = MultiPoly::constant(lat.rank, Rat::one());
    for (form, rho) in lat.pos_root_forms.iter().zip(&lat.rho_pairings) {
        let coeffs: Vec<Rat> = form.iter().map(|&x| rat_int(x)).collect();
        let linear = MultiPoly::linear_form(&coeffs);
        let squared = linear.mul(&linear);
        poly = poly.mul(&squared).scale(&Rat::new(1.into(), (rho * rho).into()));
    }
    poly
}

/// Integral of the bound integrand over a full-dimensional domain, keeping
/// the product structure: each root's linear form is composed with the
/// simplex map first (staying linear), then squared and multiplied in. This
/// grows polynomially with the number of roots, where composing the expanded
/// integrand monomial by monomial would not.
fn integrate_bound_integrand(domain: &RationalPolytope, lat: &LatticeData) -> Result<Rat> {
    let rank = lat.rank;
    let rho_sq: i64 = lat.rho_pairings.iter().map(|r| r * r).product();
    let mut acc = Rat::zero();
    for simplex in polytope::triangulate(domain)? {
        let vertices: Vec<&Vec<Rat>> = simplex.iter().map(|&i| &domain.vertices[i]).collect();
        let base = vertices[0];
        let columns: Vec<Vec<Rat>> = vertices[1..]
            .iter()
            .map(|v| v.iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        let det = linalg::det(&columns).abs();
        if det.is_zero() {
            return Err(Error::DegenerateSimplex);
        }
        let mut prod = MultiPoly::constant(rank, Rat::one());
        for form in &lat.pos_root_forms {
            let eval = |x: &Vec<Rat>| -> Rat {
                form.iter()
                    .zip(x.iter())
                    .filter(|(f, _)| **f != 0)
                    .map(|(&f, v)| rat_int(f) * v)
                    .sum()
            };
            let mut linear = MultiPoly::constant(rank, eval(base));
            for (j, col) in columns.iter().enumerate() {
                let coeff = eval(col);
                if !coeff.is_zero() {
                    linear = linear.add(&MultiPoly::coordinate(rank, j).scale(&coeff));
                }
            }
            let squared = linear.mul(&linear);
            prod = prod.mul(&squared);
        }
        acc += integrator::integrate_standard_simplex(&prod) * det;
    }
    Ok(acc / rat_int(rho_sq))
}

/// The explicit rank/sum bound
/// `d! * integral over (Delta_infty intersect dominant chamber)` of the
/// squared Weyl-dimension integrand, as an exact rational.
pub fn rank_bound(sys: &RepSystem) -> Result<BoundResult> {
    let lat = sys.lattice_data()?;
    let (_, delta_infty) = newton_polytopes(sys)?;
    let domain = polytope::intersect_halfspaces(&delta_infty, &chamber_halfspaces(&lat))?;
    if !domain.is_full_dimensional() {
        return Ok(BoundResult {
            d: lat.d,
            delta_infty,
            bound: Rat::zero(),
            lowdim_flag: true,
        });
    }
    let integral = integrate_bound_integrand(&domain, &lat)?;
    let bound = integral * Rat::from_integer(factorial(lat.d));
    debug_assert!(bound >= Rat::zero());
    Ok(BoundResult {
        d: lat.d,
        delta_infty,
        bound,
        lowdim_flag: false,
    })
}

/// Adjoins a central `G_m`: the new system has one extra lattice coordinate,
/// an extra weight-1 character, and every original weight lifted to
/// `(1, lambda_j)`. The result always satisfies the homogeneity condition,
/// and its rank bound equals the original one. Coefficients and field do not
/// transport.
pub fn homogenize(sys: &RepSystem) -> Result<RepSystem> {
    sys.validate()?;
    match &sys.group {
        GroupKind::GmExt(_) => Err(Error::AlreadyHomogenized),
        GroupKind::Torus { n } => {
            let mut reps = Vec::with_capacity(sys.reps.len() + 1);
            let mut first = vec![0i64; n + 1];
            first[0] = 1;
            reps.push(RepDescriptor::TorusChar(first));
            for rep in &sys.reps {
                let RepDescriptor::TorusChar(w) = rep else {
                    unreachable!("validated torus system");
                };
                let mut lifted = vec![1i64];
                lifted.extend_from_slice(w);
                reps.push(RepDescriptor::TorusChar(lifted));
            }
            Ok(RepSystem::new(GroupKind::Torus { n: n + 1 }, reps))
        }
        inner => {
            let mut reps = Vec::with_capacity(sys.reps.len() + 1);
            reps.push(RepDescriptor::GmTwist { c: 1, inner: None });
            for rep in &sys.reps {
                reps.push(RepDescriptor::GmTwist {
                    c: 1,
                    inner: Some(Box::new(rep.clone())),
                });
            }
            Ok(RepSystem::new(GroupKind::GmExt(Box::new(inner.clone())), reps))
        }
    }
}

/// Whether a central `G_m` acts by the identity character in every
/// representation: an integer cocharacter `u` with `<w_j, u> = 1` for all
/// reps, decided exactly by integer linear algebra on the central pairings.
pub fn check_homogeneity(sys: &RepSystem) -> Result<bool> {
    sys.validate()?;
    let rows: Vec<Vec<i64>> = sys
        .reps
        .iter()
        .map(|r| r.central_pairing(&sys.group))
        .collect();
    let ones = vec![1i64; rows.len()];
    Ok(linalg::int_solvable(&rows, &ones))
}

/// Sufficient quasi-finiteness criterion: the weights of all representations
/// span the rational weight lattice. A kernel containing a torus direction
/// would pair to zero against every weight, so a full span forces the joint
/// representation map to have finite fibers.
pub fn quasi_finiteness_check(sys: &RepSystem) -> Result<bool> {
    sys.validate()?;
    let lat = sys.lattice_data()?;
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for rep in &sys.reps {
        rows.extend(rep.all_weights(&sys.group)?);
    }
    Ok(linalg::rank_i64(&rows) == lat.rank)
}
