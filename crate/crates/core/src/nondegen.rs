//! Nondegeneracy testing of coefficient tuples: face enumeration of the
//! Newton polytope at infinity, block-diagonal face projectors, and a
//! finite-field search for critical points of the face functions
//! `f_{tau,A}(g,h) = sum_j Tr(A_j rho_j(g) e(tau)_j rho_j(h))`.
//!
//! The search is a semidecision: a found witness certifies degeneracy
//! exactly (all directional derivatives vanish, re-verified with dual
//! numbers), while exhausting the budget only reports "no witness up to the
//! extension cap". Univariate torus systems get an exact decision instead.

use crate::bound::{newton_polytopes, RepSystem};
use crate::ffield::{make_field, DualCtx, Fq, FqElem, RingCtx};
use crate::groups::{
    self, enumerate_points, group_order, lie_basis_directions, lie_rep_matrix, mat_mul,
    rep_matrix, rep_matrix_in, Group, GroupPoint, LieDirection, Mat, Rep,
};
use crate::polytope::{enumerate_faces, Face, RationalPolytope};
use crate::ratio::{rat_int, Rat};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Budget on pair evaluations per extension level.
pub const EVAL_LIMIT: u128 = 100_000_000;

/// Block-diagonal 0/1 projector onto the weight spaces whose weights lie on
/// a face; one flag per basis vector of the representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceProjector {
    pub diag: Vec<bool>,
}

/// Outcome of a nondegeneracy test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum NondegenStatus {
    /// A checkable witness: all directional derivatives of the face function
    /// vanish at `(g, h)` over the extension field `F_{q^extension}`.
    Degenerate {
        face: Vec<Vec<i64>>,
        witness_g: GroupPoint,
        witness_h: GroupPoint,
        extension: usize,
    },
    NoWitnessUpTo { extension_cap: u32 },
    ExactNondegenerate,
    ExactDegenerate,
}

impl NondegenStatus {
    /// Whether the bound may be asserted for this coefficient tuple.
    pub fn assertable(&self) -> bool {
        matches!(
            self,
            NondegenStatus::NoWitnessUpTo { .. } | NondegenStatus::ExactNondegenerate
        )
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(
            self,
            NondegenStatus::Degenerate { .. } | NondegenStatus::ExactDegenerate
        )
    }
}

/// All faces of `Delta_infty` not containing the origin.
pub fn faces_without_origin(delta_infty: &RationalPolytope) -> Vec<Face> {
    enumerate_faces(delta_infty)
        .into_iter()
        .filter(|f| !f.contains_origin)
        .collect()
}

/// Groups face indices into Weyl orbits. Used for reporting counts only;
/// every face is still checked independently.
pub fn face_weyl_orbits(
    delta_infty: &RationalPolytope,
    weyl: &[Vec<i64>],
    faces: &[Face],
) -> Vec<Vec<usize>> {
    let rank = delta_infty.dim_ambient;
    let sorted_coords = |f: &Face| -> Vec<Vec<Rat>> {
        let mut v: Vec<Vec<Rat>> = f
            .vertex_indices
            .iter()
            .map(|&i| delta_infty.vertices[i].clone())
            .collect();
        v.sort();
        v
    };
    let index_of: std::collections::BTreeMap<Vec<Vec<Rat>>, usize> = faces
        .iter()
        .enumerate()
        .map(|(i, f)| (sorted_coords(f), i))
        .collect();
    let mut orbit_of = vec![usize::MAX; faces.len()];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for (i, f) in faces.iter().enumerate() {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let orbit_id = orbits.len();
        let mut members = vec![i];
        orbit_of[i] = orbit_id;
        for w in weyl {
            let mut mapped: Vec<Vec<Rat>> = f
                .vertex_indices
                .iter()
                .map(|&vi| {
                    let x = &delta_infty.vertices[vi];
                    (0..rank)
                        .map(|r| (0..rank).map(|c| rat_int(w[r * rank + c]) * &x[c]).sum())
                        .collect()
                })
                .collect();
            mapped.sort();
            if let Some(&j) = index_of.get(&mapped) {
                if orbit_of[j] == usize::MAX {
                    orbit_of[j] = orbit_id;
                    members.push(j);
                }
            }
        }
        members.sort_unstable();
        orbits.push(members);
    }
    orbits
}

/// Weights of the basis vectors of an enumerable representation, in basis
/// order.
pub fn basis_weights(rep: &Rep) -> Vec<Vec<i64>> {
    match rep {
        Rep::TorusChar(w) => vec![w.clone()],
        Rep::Sym { m } => (0..=*m as i64).map(|i| vec![*m as i64 - 2 * i]).collect(),
        Rep::SymDet { m, k } => (0..=*m as i64)
            .map(|i| vec![*m as i64 - i + *k as i64, i + *k as i64])
            .collect(),
    }
}

/// The diagonal indicator of basis weights lying on the face, as rational
/// points of the weight space.
pub fn face_projector(rep: &Rep, delta_infty: &RationalPolytope, face: &Face) -> FaceProjector {
    let diag = basis_weights(rep)
        .iter()
        .map(|w| {
            let point: Vec<Rat> = w.iter().map(|&x| rat_int(x)).collect();
            delta_infty.face_contains(face, &point)
        })
        .collect();
    FaceProjector { diag }
}

fn face_vertex_coords(delta_infty: &RationalPolytope, face: &Face) -> Vec<Vec<i64>> {
    face.vertex_indices
        .iter()
        .map(|&i| {
            delta_infty.vertices[i]
                .iter()
                .map(|x| {
                    debug_assert!(x.is_integer());
                    i64::try_from(x.to_integer()).expect("desk-scale lattice point")
                })
                .collect()
        })
        .collect()
}

/// Masks columns of `m` by the projector (right multiplication by the
/// diagonal 0/1 matrix).
fn mask_cols(fq: &Fq, m: &Mat<FqElem>, diag: &[bool]) -> Mat<FqElem> {
    let n = m.n;
    let mut data = m.data.clone();
    for c in 0..n {
        if !diag[c] {
            for r in 0..n {
                data[r * n + c] = fq.zero();
            }
        }
    }
    Mat { n, data }
}

/// Incremental elimination: `rows[..len-1]` are already pivot rows in
/// echelon form; the last row is reduced against them and dropped if it
/// vanishes. Returns the rank so far.
fn fq_rank_incremental(fq: &Fq, rows: &mut Vec<Vec<FqElem>>) -> usize {
    let new_idx = rows.len() - 1;
    for pivot_row in 0..new_idx {
        let pivot_col = rows[pivot_row]
            .iter()
            .position(|x| !fq.is_zero(x))
            .expect("pivot rows are nonzero");
        if fq.is_zero(&rows[new_idx][pivot_col]) {
            continue;
        }
        let factor = fq.mul(
            &rows[new_idx][pivot_col],
            &fq.inv(&rows[pivot_row][pivot_col]).expect("nonzero pivot"),
        );
        for c in pivot_col..rows[new_idx].len() {
            if !fq.is_zero(&rows[pivot_row][c]) {
                let delta = fq.mul(&factor, &rows[pivot_row][c]);
                rows[new_idx][c] = fq.sub(&rows[new_idx][c], &delta);
            }
        }
    }
    if rows[new_idx].iter().all(|x| fq.is_zero(x)) {
        rows.pop();
    } else {
        // Keep pivot rows ordered by pivot column.
        let key = |row: &Vec<FqElem>| row.iter().position(|x| !fq.is_zero(x)).unwrap();
        let mut i = rows.len() - 1;
        while i > 0 && key(&rows[i]) < key(&rows[i - 1]) {
            rows.swap(i, i - 1);
            i -= 1;
        }
    }
    rows.len()
}

/// One extension level of the witness search: the field `F_{q^s}`, its
/// points, and the representation data evaluated there.
pub struct SearchLevel {
    s: usize,
    fq: Fq,
    gen_image: FqElem,
    points: Vec<GroupPoint>,
    /// Per rep, per point.
    rho: Vec<Vec<Mat<FqElem>>>,
    /// Per rep, per Lie direction.
    drho: Vec<Vec<Mat<FqElem>>>,
    /// Concatenated row-major entries of all `rho_j(h)`, per point.
    flat: Vec<Vec<FqElem>>,
}

/// Precomputed search state, shared across coefficient tuples in a sweep.
pub struct SearchSpace {
    pub group: Group,
    pub reps: Vec<Rep>,
    pub base: Fq,
    pub delta_infty: RationalPolytope,
    pub faces: Vec<Face>,
    projectors: Vec<Vec<FaceProjector>>,
    levels: Vec<SearchLevel>,
    directions: Vec<LieDirection>,
    cap: u32,
}

impl SearchSpace {
    /// Builds the shared state for witness searches up to extension degree
    /// `cap`. Errors with `SizeGuard` when any level would exceed the
    /// evaluation budget (`order^2` pair evaluations for matrix groups, one
    /// pass over the torus otherwise).
    pub fn build(sys: &RepSystem, base: &Fq, cap: u32) -> Result<SearchSpace> {
        sys.validate()?;
        let group = sys.group.enumerable().ok_or(Error::NotEnumerable)?;
        let reps: Vec<Rep> = sys
            .reps
            .iter()
            .map(|r| r.enumerable().ok_or(Error::NotEnumerable))
            .collect::<Result<_>>()?;
        let (_, delta_infty) = newton_polytopes(sys)?;
        let faces = faces_without_origin(&delta_infty);
        let projectors: Vec<Vec<FaceProjector>> = faces
            .iter()
            .map(|face| {
                reps.iter()
                    .map(|rep| face_projector(rep, &delta_infty, face))
                    .collect()
            })
            .collect();
        let directions = lie_basis_directions(group);

        let mut levels = Vec::new();
        for s in 1..=cap as usize {
            let fq = make_field(base.p, base.m * s)?;
            let order = group_order(group, fq.q());
            let evals = match group {
                Group::Torus { .. } => order,
                _ => order.saturating_mul(order),
            };
            if evals > EVAL_LIMIT {
                return Err(Error::SizeGuard {
                    what: "witness-search evaluations",
                    size: evals,
                    limit: EVAL_LIMIT,
                });
            }
            let gen_image = base.embed_generator(&fq)?;
            let points = enumerate_points(group, &fq)?;
            let rho: Vec<Vec<Mat<FqElem>>> = reps
                .iter()
                .map(|rep| {
                    points
                        .iter()
                        .map(|g| rep_matrix(&fq, group, rep, g).expect("validated rep"))
                        .collect()
                })
                .collect();
            let drho: Vec<Vec<Mat<FqElem>>> = reps
                .iter()
                .map(|rep| {
                    directions
                        .iter()
                        .map(|dir| lie_rep_matrix(&fq, group, rep, dir).expect("validated rep"))
                        .collect()
                })
                .collect();
            let flat: Vec<Vec<FqElem>> = (0..points.len())
                .map(|pi| {
                    let mut v = Vec::new();
                    for r in &rho {
                        v.extend(r[pi].data.iter().cloned());
                    }
                    v
                })
                .collect();
            levels.push(SearchLevel {
                s,
                fq,
                gen_image,
                points,
                rho,
                drho,
                flat,
            });
        }
        Ok(SearchSpace {
            group,
            reps,
            base: base.clone(),
            delta_infty,
            faces,
            projectors,
            levels,
            directions,
            cap,
        })
    }

    /// Lifts base-field coefficient matrices (integer generator polynomials)
    /// into a level's field.
    fn lift_coeffs(
        &self,
        level: &SearchLevel,
        coeffs: &[crate::bound::CoeffMatrix],
    ) -> Vec<Mat<FqElem>> {
        coeffs
            .iter()
            .map(|m| {
                let n = m.len();
                let mut data = Vec::with_capacity(n * n);
                for row in m {
                    for entry in row {
                        data.push(self.base.lift_coeffs(&level.fq, &level.gen_image, entry));
                    }
                }
                Mat { n, data }
            })
            .collect()
    }

    /// Searches one face for a critical point of `f_{tau,A}` across all
    /// extension levels; the first witness in scan order is returned.
    pub fn search_face(
        &self,
        coeffs: &[crate::bound::CoeffMatrix],
        face_idx: usize,
    ) -> NondegenStatus {
        for level in &self.levels {
            let a_mats = self.lift_coeffs(level, coeffs);
            if let Some((gi, hi)) = self.search_face_level(level, &a_mats, face_idx) {
                let g = level.points[gi].clone();
                let h = level.points[hi].clone();
                debug_assert!(self.witness_verifies(level, &a_mats, face_idx, &g, &h));
                return NondegenStatus::Degenerate {
                    face: face_vertex_coords(&self.delta_infty, &self.faces[face_idx]),
                    witness_g: g,
                    witness_h: h,
                    extension: level.s,
                };
            }
        }
        NondegenStatus::NoWitnessUpTo {
            extension_cap: self.cap,
        }
    }

    /// Combined status over every face without the origin.
    pub fn status(&self, coeffs: &[crate::bound::CoeffMatrix]) -> NondegenStatus {
        for face_idx in 0..self.faces.len() {
            if let s @ NondegenStatus::Degenerate { .. } = self.search_face(coeffs, face_idx) {
                return s;
            }
        }
        NondegenStatus::NoWitnessUpTo {
            extension_cap: self.cap,
        }
    }

    fn search_face_level(
        &self,
        level: &SearchLevel,
        a_mats: &[Mat<FqElem>],
        face_idx: usize,
    ) -> Option<(usize, usize)> {
        let fq = &level.fq;
        let projs = &self.projectors[face_idx];
        match self.group {
            Group::Torus { .. } => {
                // f_{tau,A}(g,h) = f_tau(g h): the derivative conditions
                // collapse to the single-factor check t_i d_i f_tau(t) = 0.
                let identity = self.group.identity(fq);
                let id_idx = level
                    .points
                    .iter()
                    .position(|p| *p == identity)
                    .expect("identity is a torus point");
                for (ti, t) in level.points.iter().enumerate() {
                    let derivs =
                        self.directional_derivatives(level, a_mats, face_idx, t, &identity);
                    if derivs.iter().all(|d| fq.is_zero(d)) {
                        return Some((ti, id_idx));
                    }
                }
                None
            }
            _ => {
                let total_cols: usize = self.reps.iter().map(|r| r.dim() * r.dim()).sum();
                let ndir = self.directions.len();
                // A_j drho_j(xi), reused for every g.
                let left: Vec<Vec<Mat<FqElem>>> = (0..self.reps.len())
                    .map(|j| {
                        (0..ndir)
                            .map(|x| mat_mul(fq, &a_mats[j], &level.drho[j][x]))
                            .collect()
                    })
                    .collect();
                'g_scan: for gi in 0..level.points.len() {
                    // Rows are built lazily (g-side perturbations first,
                    // then h-side) and folded into an incremental echelon;
                    // once the conditions reach full column rank no nonzero
                    // vector can satisfy them, and rho(h) is never the zero
                    // matrix, so the rest of the work for this g is skipped.
                    let mut rows: Vec<Vec<FqElem>> = Vec::with_capacity(2 * ndir);
                    let mut echelon: Vec<Vec<FqElem>> = Vec::with_capacity(total_cols);
                    let mut masked: Option<Vec<Mat<FqElem>>> = None;
                    for ridx in 0..2 * ndir {
                        let mut row = Vec::with_capacity(total_cols);
                        if ridx < ndir {
                            // Perturbing g: Tr(A drho(xi) rho(g) e rho(h)).
                            // Row entry at the rho(h) slot (r, c) is P[c][r],
                            // so the dot product against the row-major
                            // entries of rho(h) is Tr(P rho(h)).
                            let x = ridx;
                            for j in 0..self.reps.len() {
                                let p = mat_mul(fq, &left[j][x], &level.rho[j][gi]);
                                let n = p.n;
                                for r in 0..n {
                                    for c in 0..n {
                                        if projs[j].diag[r] {
                                            row.push(p.at(c, r).clone());
                                        } else {
                                            row.push(fq.zero());
                                        }
                                    }
                                }
                            }
                        } else {
                            // Perturbing h: Tr(A rho(g) e drho(xi) rho(h)).
                            let x = ridx - ndir;
                            let masked = masked.get_or_insert_with(|| {
                                (0..self.reps.len())
                                    .map(|j| {
                                        mask_cols(
                                            fq,
                                            &mat_mul(fq, &a_mats[j], &level.rho[j][gi]),
                                            &projs[j].diag,
                                        )
                                    })
                                    .collect()
                            });
                            for j in 0..self.reps.len() {
                                let p = mat_mul(fq, &masked[j], &level.drho[j][x]);
                                let n = p.n;
                                for r in 0..n {
                                    for c in 0..n {
                                        row.push(p.at(c, r).clone());
                                    }
                                }
                            }
                        }
                        echelon.push(row.clone());
                        rows.push(row);
                        if fq_rank_incremental(fq, &mut echelon) == total_cols {
                            continue 'g_scan;
                        }
                    }
                    'h_scan: for (hi, flat_h) in level.flat.iter().enumerate() {
                        for row in &rows {
                            let mut acc = fq.zero();
                            for (a, b) in row.iter().zip(flat_h) {
                                if !fq.is_zero(a) && !fq.is_zero(b) {
                                    acc = fq.add(&acc, &fq.mul(a, b));
                                }
                            }
                            if !fq.is_zero(&acc) {
                                continue 'h_scan;
                            }
                        }
                        return Some((gi, hi));
                    }
                }
                None
            }
        }
    }

    /// All `2 dim G` directional derivatives of `f_{tau,A}` at `(g, h)`,
    /// computed from scratch with dual numbers: each factor is perturbed by
    /// `(1 + eps xi)` in turn.
    pub fn directional_derivatives(
        &self,
        level: &SearchLevel,
        a_mats: &[Mat<FqElem>],
        face_idx: usize,
        g: &GroupPoint,
        h: &GroupPoint,
    ) -> Vec<FqElem> {
        let fq = &level.fq;
        let projs = &self.projectors[face_idx];
        let ctx = DualCtx(fq);
        let mut out = Vec::with_capacity(2 * self.directions.len());
        for side in 0..2 {
            for dir in &self.directions {
                let (gp, hp) = if side == 0 {
                    (groups::perturb(fq, dir, g), h.to_dual(fq))
                } else {
                    (g.to_dual(fq), groups::perturb(fq, dir, h))
                };
                let mut deriv = fq.zero();
                for (j, rep) in self.reps.iter().enumerate() {
                    let rho_g = rep_matrix_in(&ctx, self.group, rep, &gp).expect("validated");
                    let rho_h = rep_matrix_in(&ctx, self.group, rep, &hp).expect("validated");
                    let n = rho_g.n;
                    let a = &a_mats[j];
                    // Tr(A rho(g) e rho(h)).
                    let mut trace = ctx.zero();
                    for r in 0..n {
                        for k in 0..n {
                            if fq.is_zero(a.at(r, k)) {
                                continue;
                            }
                            let a_dual = fq.dual_const(a.at(r, k).clone());
                            for l in 0..n {
                                if !projs[j].diag[l] {
                                    continue;
                                }
                                let t1 = ctx.mul(&a_dual, rho_g.at(k, l));
                                let t2 = ctx.mul(&t1, rho_h.at(l, r));
                                trace = ctx.add(&trace, &t2);
                            }
                        }
                    }
                    deriv = fq.add(&deriv, &trace.deriv);
                }
                out.push(deriv);
            }
        }
        out
    }

    fn witness_verifies(
        &self,
        level: &SearchLevel,
        a_mats: &[Mat<FqElem>],
        face_idx: usize,
        g: &GroupPoint,
        h: &GroupPoint,
    ) -> bool {
        self.directional_derivatives(level, a_mats, face_idx, g, h)
            .iter()
            .all(|d| level.fq.is_zero(d))
    }

    /// Re-verifies a reported witness from scratch via dual numbers.
    pub fn verify_witness(
        &self,
        coeffs: &[crate::bound::CoeffMatrix],
        status: &NondegenStatus,
    ) -> bool {
        let NondegenStatus::Degenerate {
            face,
            witness_g,
            witness_h,
            extension,
        } = status
        else {
            return false;
        };
        let Some(level) = self.levels.iter().find(|l| l.s == *extension) else {
            return false;
        };
        let Some(face_idx) = self
            .faces
            .iter()
            .position(|f| &face_vertex_coords(&self.delta_infty, f) == face)
        else {
            return false;
        };
        let a_mats = self.lift_coeffs(level, coeffs);
        self.witness_verifies(level, &a_mats, face_idx, witness_g, witness_h)
    }
}

/// Witness search for one face of `Delta_infty` (indexed into
/// [`faces_without_origin`] order), per the module contract.
pub fn critical_witness_search(
    sys: &RepSystem,
    base: &Fq,
    face_idx: usize,
    extension_cap: u32,
) -> Result<NondegenStatus> {
    let coeffs = sys
        .coefficients
        .as_ref()
        .ok_or(Error::MissingCoefficients)?;
    let space = SearchSpace::build(sys, base, extension_cap)?;
    if face_idx >= space.faces.len() {
        return Err(Error::IndexOutOfRange {
            index: face_idx,
            limit: space.faces.len(),
        });
    }
    Ok(space.search_face(coeffs, face_idx))
}

/// Combined nondegeneracy status of the system's coefficient tuple: the
/// exact univariate decision when available, otherwise a witness search over
/// every face without the origin.
pub fn nondegen_status(sys: &RepSystem, base: &Fq, extension_cap: u32) -> Result<NondegenStatus> {
    if matches!(sys.group, crate::bound::GroupKind::Torus { n: 1 }) {
        return torus_nondegen_exact_univariate(sys, base);
    }
    let coeffs = sys
        .coefficients
        .as_ref()
        .ok_or(Error::MissingCoefficients)?;
    let space = SearchSpace::build(sys, base, extension_cap)?;
    Ok(space.status(coeffs))
}

// ---- univariate polynomials over Fq, for the exact torus decision ----

fn upoly_trim(fq: &Fq, v: &mut Vec<FqElem>) {
    while v.len() > 1 && fq.is_zero(v.last().unwrap()) {
        v.pop();
    }
}

fn upoly_is_zero(fq: &Fq, v: &[FqElem]) -> bool {
    v.iter().all(|c| fq.is_zero(c))
}

fn upoly_rem(fq: &Fq, a: &[FqElem], b: &[FqElem]) -> Vec<FqElem> {
    let mut r = a.to_vec();
    upoly_trim(fq, &mut r);
    let db = b.len() - 1;
    if db == 0 {
        return vec![fq.zero()];
    }
    let lead_inv = fq.inv(&b[db]).expect("nonzero leading coefficient");
    while r.len() > db && !upoly_is_zero(fq, &r) {
        let dr = r.len() - 1;
        let factor = fq.mul(&r[dr], &lead_inv);
        if !fq.is_zero(&factor) {
            for i in 0..=db {
                let delta = fq.mul(&factor, &b[i]);
                r[dr - db + i] = fq.sub(&r[dr - db + i], &delta);
            }
        }
        r.pop();
        upoly_trim(fq, &mut r);
    }
    r
}

fn upoly_gcd(fq: &Fq, a: &[FqElem], b: &[FqElem]) -> Vec<FqElem> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    upoly_trim(fq, &mut x);
    upoly_trim(fq, &mut y);
    while !upoly_is_zero(fq, &y) {
        let r = upoly_rem(fq, &x, &y);
        x = y;
        y = r;
    }
    x
}

/// Exact nondegeneracy decision for univariate torus systems, by polynomial
/// gcd over the base field.
///
/// For each face `tau` of `Delta_infty` not containing the origin, with
/// `f_tau = sum_{w_j in tau} a_j t^{w_j}`:
/// * `f_tau` identically zero: degenerate (every orbit point is critical);
/// * `tau` a vertex `{w}`: degenerate iff the monomial derivative `w c t^w`
///   vanishes identically, i.e. `p` divides `w` times the coefficient;
/// * `tau` a segment (only possible when the origin misses `Delta_infty`):
///   degenerate iff `gcd(f_tau, t f_tau')`, stripped of powers of `t`, is
///   non-constant, i.e. has a nonzero root in the algebraic closure.
pub fn torus_nondegen_exact_univariate(sys: &RepSystem, fq: &Fq) -> Result<NondegenStatus> {
    sys.validate()?;
    if !matches!(sys.group, crate::bound::GroupKind::Torus { n: 1 }) {
        return Err(Error::NotUnivariateTorus);
    }
    let coeffs = sys
        .coefficients
        .as_ref()
        .ok_or(Error::MissingCoefficients)?;
    let weights = sys.max_weights()?;
    let (_, delta_infty) = newton_polytopes(sys)?;
    let faces = faces_without_origin(&delta_infty);

    for face in &faces {
        // Laurent support of f_tau: weight -> coefficient sum.
        let mut support: std::collections::BTreeMap<i64, FqElem> =
            std::collections::BTreeMap::new();
        for (j, w) in weights.iter().enumerate() {
            let point = vec![rat_int(w[0])];
            if delta_infty.face_contains(face, &point) {
                let a = fq.from_coeffs(&coeffs[j][0][0]);
                let entry = support.entry(w[0]).or_insert_with(|| fq.zero());
                *entry = fq.add(entry, &a);
            }
        }
        support.retain(|_, c| !fq.is_zero(c));
        if support.is_empty() {
            return Ok(NondegenStatus::ExactDegenerate);
        }
        if face.affine_dim == 0 {
            let (&w, c) = support.iter().next().expect("nonempty");
            let deriv = fq.mul(&fq.from_int(w), c);
            if fq.is_zero(&deriv) {
                return Ok(NondegenStatus::ExactDegenerate);
            }
        } else {
            // Segment face: normalize by t^{-min} and run the gcd test.
            let min_w = *support.keys().next().expect("nonempty");
            let max_w = *support.keys().next_back().expect("nonempty");
            let degree = (max_w - min_w) as usize;
            let mut f = vec![fq.zero(); degree + 1];
            let mut tf_prime = vec![fq.zero(); degree + 1];
            for (&w, c) in &support {
                f[(w - min_w) as usize] = c.clone();
                tf_prime[(w - min_w) as usize] = fq.mul(&fq.from_int(w), c);
            }
            let g = upoly_gcd(fq, &f, &tf_prime);
            let mut stripped = g;
            while stripped.len() > 1 && fq.is_zero(&stripped[0]) {
                stripped.remove(0);
            }
            if stripped.len() > 1 {
                return Ok(NondegenStatus::ExactDegenerate);
            }
        }
    }
    Ok(NondegenStatus::ExactNondegenerate)
}
