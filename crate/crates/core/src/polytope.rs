//! Exact rational convex geometry in ambient dimension <= 5: hulls with both
//! V- and H-representations, face lattices, halfspace intersection,
//! triangulation, and Lebesgue volume.
//!
//! Facets are found by exhaustive search over affinely independent vertex
//! subsets with a one-sidedness check; orbit polytopes at desk scale have few
//! enough vertices that exactness wins over an incremental hull.

use crate::linalg;
use crate::ratio::{factorial, Rat};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};

pub const MAX_AMBIENT_DIM: usize = 5;

/// A closed halfspace `normal . x <= offset` (or the hyperplane
/// `normal . x = offset` when used as an equality).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Halfspace {
    pub normal: Vec<Rat>,
    pub offset: Rat,
}

/// Convex polytope with exact rational coordinates.
///
/// `facets` cut the polytope inside its affine span; `span_equalities` pin
/// the span itself when the polytope is lower-dimensional. The empty
/// polytope has `affine_dim = -1`.
#[derive(Debug, Clone)]
pub struct RationalPolytope {
    pub dim_ambient: usize,
    /// Irredundant vertex list, sorted lexicographically.
    pub vertices: Vec<Vec<Rat>>,
    pub facets: Vec<Halfspace>,
    pub span_equalities: Vec<Halfspace>,
    pub affine_dim: i64,
}

/// A nonempty face, identified by the vertices of the polytope lying on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub vertex_indices: BTreeSet<usize>,
    pub affine_dim: i64,
    pub contains_origin: bool,
}

impl RationalPolytope {
    pub fn empty(dim_ambient: usize) -> Self {
        RationalPolytope {
            dim_ambient,
            vertices: Vec::new(),
            facets: Vec::new(),
            span_equalities: Vec::new(),
            affine_dim: -1,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.affine_dim < 0
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim == self.dim_ambient as i64
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        if self.is_empty() {
            return false;
        }
        self.facets
            .iter()
            .all(|f| linalg::dot(&f.normal, x) <= f.offset)
            && self
                .span_equalities
                .iter()
                .all(|e| linalg::dot(&e.normal, x) == e.offset)
    }

    pub fn contains_origin(&self) -> bool {
        let zero = vec![Rat::zero(); self.dim_ambient];
        self.contains(&zero)
    }

    /// Indices of facets tight at every vertex of the given face.
    fn facets_containing(&self, face: &Face) -> Vec<usize> {
        self.facets
            .iter()
            .enumerate()
            .filter(|(_, f)| {
                face.vertex_indices
                    .iter()
                    .all(|&v| linalg::dot(&f.normal, &self.vertices[v]) == f.offset)
            })
            .map(|(i, _)| i)
            .collect()
    }

    /// Whether an ambient point lies on the given face.
    pub fn face_contains(&self, face: &Face, x: &[Rat]) -> bool {
        if !self.contains(x) {
            return false;
        }
        self.facets_containing(face).into_iter().all(|i| {
            let f = &self.facets[i];
            linalg::dot(&f.normal, x) == f.offset
        })
    }
}

fn check_uniform(points: &[Vec<Rat>]) -> Result<usize> {
    let dim = points[0].len();
    for p in points {
        if p.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: p.len(),
            });
        }
    }
    if dim > MAX_AMBIENT_DIM {
        return Err(Error::SizeGuard {
            what: "ambient dimension",
            size: dim as u128,
            limit: MAX_AMBIENT_DIM as u128,
        });
    }
    Ok(dim)
}

fn normalize_halfspace(normal: &[Rat], offset: &Rat) -> (Vec<BigInt>, Vec<Rat>, Rat) {
    let mut joint: Vec<Rat> = normal.to_vec();
    joint.push(offset.clone());
    let prim = linalg::primitive_direction(&joint);
    let key = prim.clone();
    let n: Vec<Rat> = prim[..normal.len()]
        .iter()
        .map(|x| Rat::from_integer(x.clone()))
        .collect();
    let o = Rat::from_integer(prim[normal.len()].clone());
    (key, n, o)
}

struct Combinations {
    n: usize,
    k: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            k,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        // Advance.
        let mut i = self.k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] + 1 <= self.n - (self.k - i) {
                self.idx[i] += 1;
                for j in (i + 1)..self.k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Facets of a full-dimensional point set, by exhaustive hyperplane search.
/// Small-integer inputs (every Weyl-orbit polytope) take an i128 fast path;
/// general rational inputs use the same search over exact rationals.
fn facets_full_dim(points: &[Vec<Rat>], dim: usize) -> Vec<Halfspace> {
    if let Some(int_points) = small_integer_points(points) {
        return facets_full_dim_int(&int_points, dim);
    }
    let mut found: BTreeMap<Vec<BigInt>, Halfspace> = BTreeMap::new();
    for subset in Combinations::new(points.len(), dim) {
        let base = &points[subset[0]];
        let rows: Vec<Vec<Rat>> = subset[1..]
            .iter()
            .map(|&i| {
                points[i]
                    .iter()
                    .zip(base)
                    .map(|(a, b)| a - b)
                    .collect::<Vec<Rat>>()
            })
            .collect();
        let ns = linalg::nullspace(&rows, dim);
        if ns.len() != 1 {
            continue;
        }
        let normal = &ns[0];
        let offset = linalg::dot(normal, base);
        let mut above = false;
        let mut below = false;
        for p in points {
            let v = linalg::dot(normal, p);
            if v > offset {
                above = true;
            } else if v < offset {
                below = true;
            }
            if above && below {
                break;
            }
        }
        if above && below {
            continue;
        }
        let (normal, offset) = if above {
            (normal.iter().map(|x| -x).collect::<Vec<Rat>>(), -offset.clone())
        } else {
            (normal.clone(), offset)
        };
        let (key, n, o) = normalize_halfspace(&normal, &offset);
        found.entry(key).or_insert(Halfspace { normal: n, offset: o });
    }
    found.into_values().collect()
}

/// Extracts the coordinates as i128 when every entry is an integer small
/// enough that all determinant and dot-product intermediates stay far from
/// overflow (|x| <= 10^4 gives dim!-scaled products below 10^24).
fn small_integer_points(points: &[Vec<Rat>]) -> Option<Vec<Vec<i128>>> {
    const LIMIT: i128 = 10_000;
    points
        .iter()
        .map(|p| {
            p.iter()
                .map(|x| {
                    if !x.is_integer() {
                        return None;
                    }
                    let v = i128::try_from(x.to_integer()).ok()?;
                    (v.abs() <= LIMIT).then_some(v)
                })
                .collect()
        })
        .collect()
}

/// Determinant of a small i128 matrix by cofactor expansion (n <= 4 here).
fn det_i128(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        n => {
            let mut acc = 0i128;
            for col in 0..n {
                if m[0][col] == 0 {
                    continue;
                }
                let minor: Vec<Vec<i128>> = (1..n)
                    .map(|r| (0..n).filter(|&c| c != col).map(|c| m[r][c]).collect())
                    .collect();
                let term = m[0][col] * det_i128(&minor);
                acc += if col % 2 == 0 { term } else { -term };
            }
            acc
        }
    }
}

fn facets_full_dim_int(points: &[Vec<i128>], dim: usize) -> Vec<Halfspace> {
    let mut found: BTreeMap<(Vec<i128>, i128), ()> = BTreeMap::new();
    for subset in Combinations::new(points.len(), dim) {
        let base = &points[subset[0]];
        let diffs: Vec<Vec<i128>> = subset[1..]
            .iter()
            .map(|&i| points[i].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        // Generalized cross product: the hyperplane normal through the
        // subset has components (-1)^j det(diffs without column j); all
        // components vanish exactly when the points are affinely dependent.
        let mut normal = vec![0i128; dim];
        let mut nonzero = false;
        for (j, slot) in normal.iter_mut().enumerate() {
            let minor: Vec<Vec<i128>> = diffs
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, &v)| v)
                        .collect()
                })
                .collect();
            let cof = det_i128(&minor);
            *slot = if j % 2 == 0 { cof } else { -cof };
            nonzero |= cof != 0;
        }
        if !nonzero {
            continue;
        }
        let offset: i128 = normal.iter().zip(base).map(|(n, b)| n * b).sum();
        let mut above = false;
        let mut below = false;
        for p in points {
            let v: i128 = normal.iter().zip(p).map(|(n, x)| n * x).sum();
            if v > offset {
                above = true;
            } else if v < offset {
                below = true;
            }
            if above && below {
                break;
            }
        }
        if above && below {
            continue;
        }
        let (mut normal, mut offset) = if above {
            (normal.iter().map(|x| -x).collect::<Vec<i128>>(), -offset)
        } else {
            (normal, offset)
        };
        // Primitive form for deduplication.
        let mut g = offset.unsigned_abs();
        for &x in &normal {
            g = gcd_u128(g, x.unsigned_abs());
        }
        if g > 1 {
            for x in &mut normal {
                *x /= g as i128;
            }
            offset /= g as i128;
        }
        found.entry((normal, offset)).or_insert(());
    }
    found
        .into_keys()
        .map(|(normal, offset)| Halfspace {
            normal: normal
                .into_iter()
                .map(|x| Rat::from_integer(BigInt::from(x)))
                .collect(),
            offset: Rat::from_integer(BigInt::from(offset)),
        })
        .collect()
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Convex hull with exact V- and H-representations.
///
/// Duplicate points are removed; interior and non-extreme points are dropped
/// from the vertex list. Lower-dimensional hulls record their affine span as
/// equality constraints and carry facets valid within that span.
pub fn convex_hull(points: &[Vec<Rat>]) -> Result<RationalPolytope> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    let dim = check_uniform(points)?;
    let dedup: Vec<Vec<Rat>> = points
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();

    // Affine basis by greedy rank growth.
    let base = dedup[0].clone();
    let mut basis: Vec<Vec<Rat>> = Vec::new();
    for p in &dedup[1..] {
        let diff: Vec<Rat> = p.iter().zip(&base).map(|(a, b)| a - b).collect();
        let mut trial = basis.clone();
        trial.push(diff.clone());
        if linalg::rank(&trial) > basis.len() {
            basis.push(diff);
        }
    }
    let k = basis.len();

    // Span equalities: directions orthogonal to every basis difference.
    let span_equalities: Vec<Halfspace> = linalg::nullspace(&basis, dim)
        .into_iter()
        .map(|v| {
            let offset = linalg::dot(&v, &base);
            let (_, normal, offset) = normalize_halfspace(&v, &offset);
            Halfspace { normal, offset }
        })
        .collect();

    if k == 0 {
        return Ok(RationalPolytope {
            dim_ambient: dim,
            vertices: vec![base],
            facets: Vec::new(),
            span_equalities,
            affine_dim: 0,
        });
    }

    // Work in chart coordinates when the hull is lower-dimensional.
    let (chart_points, lift): (Vec<Vec<Rat>>, Option<(Vec<Vec<Rat>>, Vec<Vec<Rat>>)>) = if k == dim
    {
        (dedup.clone(), None)
    } else {
        // Solve basis^T-restricted systems: coords c with sum_i c_i basis_i = p - base.
        let mut rows: Vec<Vec<Rat>> = vec![Vec::with_capacity(k); dim];
        for b in &basis {
            for (r, x) in b.iter().enumerate() {
                rows[r].push(x.clone());
            }
        }
        // Select k independent rows of the d x k matrix.
        let mut sel: Vec<usize> = Vec::new();
        let mut acc: Vec<Vec<Rat>> = Vec::new();
        for (r, row) in rows.iter().enumerate() {
            let mut trial = acc.clone();
            trial.push(row.clone());
            if linalg::rank(&trial) > acc.len() {
                acc.push(row.clone());
                sel.push(r);
            }
            if sel.len() == k {
                break;
            }
        }
        let square: Vec<Vec<Rat>> = sel.iter().map(|&r| rows[r].clone()).collect();
        let chart: Vec<Vec<Rat>> = dedup
            .iter()
            .map(|p| {
                let rhs: Vec<Rat> = sel
                    .iter()
                    .map(|&r| &p[r] - &base[r])
                    .collect();
                linalg::solve(&square, &rhs).expect("selected rows are independent")
            })
            .collect();
        // Gram matrix for lifting chart normals back to ambient space.
        let gram: Vec<Vec<Rat>> = (0..k)
            .map(|i| (0..k).map(|j| linalg::dot(&basis[i], &basis[j])).collect())
            .collect();
        (chart, Some((gram, basis.clone())))
    };

    let chart_facets = facets_full_dim(&chart_points, k);

    // A point is a vertex exactly when its tight facet normals span the
    // chart.
    let mut vertex_idx: Vec<usize> = Vec::new();
    for (i, p) in chart_points.iter().enumerate() {
        let tight: Vec<Vec<Rat>> = chart_facets
            .iter()
            .filter(|f| linalg::dot(&f.normal, p) == f.offset)
            .map(|f| f.normal.clone())
            .collect();
        if linalg::rank(&tight) == k {
            vertex_idx.push(i);
        }
    }

    let facets: Vec<Halfspace> = match &lift {
        None => chart_facets,
        Some((gram, basis)) => chart_facets
            .iter()
            .map(|f| {
                let coeff = linalg::solve(gram, &f.normal).expect("Gram matrix is invertible");
                let mut normal = vec![Rat::zero(); dim];
                for (c, b) in coeff.iter().zip(basis) {
                    for (slot, x) in normal.iter_mut().zip(b) {
                        *slot += c * x;
                    }
                }
                let offset = &f.offset + linalg::dot(&normal, &base);
                let (_, normal, offset) = normalize_halfspace(&normal, &offset);
                Halfspace { normal, offset }
            })
            .collect(),
    };

    let mut vertices: Vec<Vec<Rat>> = vertex_idx.into_iter().map(|i| dedup[i].clone()).collect();
    vertices.sort();

    Ok(RationalPolytope {
        dim_ambient: dim,
        vertices,
        facets,
        span_equalities,
        affine_dim: k as i64,
    })
}

/// All nonempty faces of the polytope, including its vertices and the
/// polytope itself, produced by closing facet incidence sets under
/// intersection.
pub fn enumerate_faces(p: &RationalPolytope) -> Vec<Face> {
    if p.is_empty() {
        return Vec::new();
    }
    let all: BTreeSet<usize> = (0..p.vertices.len()).collect();
    let mut sets: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    sets.insert(all.clone());
    for f in &p.facets {
        let tight: BTreeSet<usize> = (0..p.vertices.len())
            .filter(|&i| linalg::dot(&f.normal, &p.vertices[i]) == f.offset)
            .collect();
        if !tight.is_empty() {
            sets.insert(tight);
        }
    }
    loop {
        let snapshot: Vec<BTreeSet<usize>> = sets.iter().cloned().collect();
        let before = sets.len();
        for i in 0..snapshot.len() {
            for j in (i + 1)..snapshot.len() {
                let meet: BTreeSet<usize> =
                    snapshot[i].intersection(&snapshot[j]).cloned().collect();
                if !meet.is_empty() {
                    sets.insert(meet);
                }
            }
        }
        if sets.len() == before {
            break;
        }
    }

    let polytope_has_origin = p.contains_origin();
    let mut faces: Vec<Face> = sets
        .into_iter()
        .map(|vertex_indices| {
            let pts: Vec<&Vec<Rat>> = vertex_indices.iter().map(|&i| &p.vertices[i]).collect();
            let rows: Vec<Vec<Rat>> = pts[1..]
                .iter()
                .map(|q| q.iter().zip(pts[0]).map(|(a, b)| a - b).collect())
                .collect();
            let affine_dim = linalg::rank(&rows) as i64;
            let face = Face {
                vertex_indices,
                affine_dim,
                contains_origin: false,
            };
            let contains_origin = polytope_has_origin && {
                let zero = vec![Rat::zero(); p.dim_ambient];
                p.facets_containing(&face).into_iter().all(|i| {
                    let f = &p.facets[i];
                    linalg::dot(&f.normal, &zero) == f.offset
                })
            };
            Face {
                contains_origin,
                ..face
            }
        })
        .collect();
    faces.sort_by_key(|f| (f.affine_dim, f.vertex_indices.clone()));
    faces
}

/// Exact intersection of a polytope with additional halfspaces. The result
/// may drop dimension or be empty; emptiness is a value, not an error.
///
/// Candidate vertices are driven by the face lattice: a vertex of the
/// intersection lies in the relative interior of some face of `p`, pinned
/// there by a subset of the new hyperplanes, so it solves the face's affine
/// hull equations together with that subset. This keeps the enumeration at
/// `#faces * 2^#halfspaces` small systems instead of a binomial blowup over
/// all facets.
pub fn intersect_halfspaces(
    p: &RationalPolytope,
    halfspaces: &[Halfspace],
) -> Result<RationalPolytope> {
    if p.is_empty() {
        return Ok(RationalPolytope::empty(p.dim_ambient));
    }
    if halfspaces.len() > 16 {
        return Err(Error::SizeGuard {
            what: "halfspaces in one intersection",
            size: halfspaces.len() as u128,
            limit: 16,
        });
    }
    let dim = p.dim_ambient;
    let faces = enumerate_faces(p);

    let inside = |x: &Vec<Rat>| -> bool {
        p.contains(x)
            && halfspaces
                .iter()
                .all(|h| linalg::dot(&h.normal, x) <= h.offset)
    };

    let mut candidates: BTreeSet<Vec<Rat>> = BTreeSet::new();
    for face in &faces {
        // Affine hull of the face: its containing facet hyperplanes plus
        // the polytope's span equalities.
        let mut hull_rows: Vec<Vec<Rat>> = Vec::new();
        let mut hull_rhs: Vec<Rat> = Vec::new();
        for e in &p.span_equalities {
            hull_rows.push(e.normal.clone());
            hull_rhs.push(e.offset.clone());
        }
        for fi in p.facets_containing(face) {
            hull_rows.push(p.facets[fi].normal.clone());
            hull_rhs.push(p.facets[fi].offset.clone());
        }
        for mask in 0u32..(1 << halfspaces.len()) {
            let mut rows = hull_rows.clone();
            let mut rhs = hull_rhs.clone();
            for (i, h) in halfspaces.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    rows.push(h.normal.clone());
                    rhs.push(h.offset.clone());
                }
            }
            let Some(x) = solve_unique(&rows, &rhs, dim) else {
                continue;
            };
            if inside(&x) {
                candidates.insert(x);
            }
        }
    }
    if candidates.is_empty() {
        return Ok(RationalPolytope::empty(dim));
    }
    let pts: Vec<Vec<Rat>> = candidates.into_iter().collect();
    convex_hull(&pts)
}

/// Unique solution of a consistent, possibly overdetermined linear system;
/// `None` when under-determined or inconsistent.
fn solve_unique(rows: &[Vec<Rat>], rhs: &[Rat], ncols: usize) -> Option<Vec<Rat>> {
    let mut work: Vec<Vec<Rat>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let rank = linalg::echelon(&mut work);
    // Inconsistent: a row 0 = nonzero.
    for row in &work {
        if row[..ncols].iter().all(|x| x.is_zero()) && !row[ncols].is_zero() {
            return None;
        }
    }
    if rank < ncols {
        return None;
    }
    // echelon produces reduced row echelon form, and with full column rank
    // every column is a pivot column, so each row pins one coordinate.
    let mut x = vec![Rat::zero(); ncols];
    for row in work.iter().take(rank) {
        let pivot = (0..ncols).find(|&c| !row[c].is_zero())?;
        x[pivot] = &row[ncols] / &row[pivot];
    }
    Some(x)
}

/// Which vertex a triangulation fan is coned from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ApexRule {
    LexMin,
    LexMax,
}

/// Triangulation into simplices with disjoint interiors covering `p`,
/// produced by coning from a vertex over the triangulated boundary faces.
/// Simplices are returned as tuples of vertex indices into `p.vertices`.
pub fn triangulate(p: &RationalPolytope) -> Result<Vec<Vec<usize>>> {
    triangulate_with(p, ApexRule::LexMin)
}

pub fn triangulate_with(p: &RationalPolytope, rule: ApexRule) -> Result<Vec<Vec<usize>>> {
    if !p.is_full_dimensional() {
        return Err(Error::DegeneratePolytope {
            affine_dim: p.affine_dim,
        });
    }
    let faces = enumerate_faces(p);
    let mut cache: BTreeMap<BTreeSet<usize>, Vec<Vec<usize>>> = BTreeMap::new();
    let top = faces
        .iter()
        .position(|f| f.affine_dim == p.affine_dim)
        .expect("full-dimensional polytope has a top face");
    let result = triangulate_face(&faces, top, rule, &mut cache);
    Ok(result)
}

fn triangulate_face(
    faces: &[Face],
    idx: usize,
    rule: ApexRule,
    cache: &mut BTreeMap<BTreeSet<usize>, Vec<Vec<usize>>>,
) -> Vec<Vec<usize>> {
    let face = &faces[idx];
    if let Some(hit) = cache.get(&face.vertex_indices) {
        return hit.clone();
    }
    let result = if face.vertex_indices.len() as i64 == face.affine_dim + 1 {
        vec![face.vertex_indices.iter().cloned().collect::<Vec<usize>>()]
    } else {
        // Vertices are stored in lexicographic coordinate order, so index
        // order realizes the lexicographic apex rule.
        let apex = match rule {
            ApexRule::LexMin => *face.vertex_indices.iter().next().unwrap(),
            ApexRule::LexMax => *face.vertex_indices.iter().next_back().unwrap(),
        };
        let mut simplices = Vec::new();
        for (child_idx, child) in faces.iter().enumerate() {
            if child.affine_dim == face.affine_dim - 1
                && child.vertex_indices.is_subset(&face.vertex_indices)
                && !child.vertex_indices.contains(&apex)
            {
                for mut simplex in triangulate_face(faces, child_idx, rule, cache) {
                    simplex.push(apex);
                    simplices.push(simplex);
                }
            }
        }
        simplices
    };
    cache.insert(face.vertex_indices.clone(), result.clone());
    result
}

/// Exact Lebesgue volume of a full-dimensional polytope.
pub fn volume(p: &RationalPolytope) -> Result<Rat> {
    let simplices = triangulate(p)?;
    let d = p.dim_ambient;
    let dfact = Rat::from_integer(factorial(d));
    let mut total = Rat::zero();
    for s in simplices {
        let base = &p.vertices[s[0]];
        let rows: Vec<Vec<Rat>> = s[1..]
            .iter()
            .map(|&i| {
                p.vertices[i]
                    .iter()
                    .zip(base)
                    .map(|(a, b)| a - b)
                    .collect()
            })
            .collect();
        let det = linalg::det(&rows);
        total += det.abs() / &dfact;
    }
    Ok(total)
}
