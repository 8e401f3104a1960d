//! Exact hypergeometric exponential sums over the enumerable groups and the
//! bound-verification harness.
//!
//! A sum is never evaluated in floating point: it is accumulated as the
//! exact integer vector of trace-residue counts, so
//! `Hyp(A) = sum_j counts[j] zeta_p^j` holds on the nose. Only the final
//! magnitude/threshold comparison uses doubles, with an explicit rounding
//! term.

use crate::bound::{rank_bound, CoeffMatrix, GroupKind, RepSystem};
use crate::ffield::{CharCounts, Fq, FqElem};
use crate::groups::{enumerate_points, mat_trace_product, rep_matrix, Group, GroupPoint, Mat, Rep};
use crate::nondegen::{self, NondegenStatus, SearchSpace};
use crate::ratio::{format_rat, rat_to_f64};
use crate::{Error, Result};
use rayon::prelude::*;
use serde::Serialize;

/// Guard on exhaustive coefficient sweeps.
pub const TUPLE_LIMIT: u128 = 1_000_000;

/// Relative slack in every bound assertion, covering the floating-point
/// evaluation of `q^{d/2} * bound`.
pub const REL_TOLERANCE: f64 = 1e-9;

/// Reduces the system's coefficient tuple into matrices over the working
/// field.
pub fn coefficient_matrices(sys: &RepSystem, fq: &Fq) -> Result<Vec<Mat<FqElem>>> {
    sys.validate()?;
    let coeffs = sys
        .coefficients
        .as_ref()
        .ok_or(Error::MissingCoefficients)?;
    Ok(coeffs
        .iter()
        .map(|m| {
            let n = m.len();
            let mut data = Vec::with_capacity(n * n);
            for row in m {
                for entry in row {
                    data.push(fq.from_coeffs(entry));
                }
            }
            Mat { n, data }
        })
        .collect())
}

fn enumerable_parts(sys: &RepSystem) -> Result<(Group, Vec<Rep>)> {
    let group = sys.group.enumerable().ok_or(Error::NotEnumerable)?;
    let reps = sys
        .reps
        .iter()
        .map(|r| r.enumerable().ok_or(Error::NotEnumerable))
        .collect::<Result<Vec<_>>>()?;
    Ok((group, reps))
}

/// Accumulates the counts of `Tr_{F_q/F_p}(sum_j Tr(A_j rho_j(g)))` over a
/// slice of group points with precomputed representation matrices.
fn accumulate_counts(
    fq: &Fq,
    a_mats: &[Mat<FqElem>],
    rho: &[Vec<Mat<FqElem>>],
    range: std::ops::Range<usize>,
) -> CharCounts {
    let mut counts = CharCounts::new(fq.p);
    for gi in range {
        let mut value = fq.zero();
        for (j, a) in a_mats.iter().enumerate() {
            value = fq.add(&value, &mat_trace_product(fq, a, &rho[j][gi]));
        }
        counts.record(fq.trace_to_prime(&value));
    }
    counts
}

/// `Hyp(A) = sum_{g in G(F_q)} psi(sum_j Tr(A_j rho_j(g)))` as exact
/// residue counts, accumulated in parallel over disjoint chunks of the point
/// enumeration and merged associatively.
pub fn hyp_sum(sys: &RepSystem, fq: &Fq) -> Result<CharCounts> {
    let (group, reps) = enumerable_parts(sys)?;
    let a_mats = coefficient_matrices(sys, fq)?;
    let points = enumerate_points(group, fq)?;
    let rho = precompute_rho(fq, group, &reps, &points)?;
    Ok(hyp_sum_prepared(fq, &a_mats, &rho, points.len()))
}

fn precompute_rho(
    fq: &Fq,
    group: Group,
    reps: &[Rep],
    points: &[GroupPoint],
) -> Result<Vec<Vec<Mat<FqElem>>>> {
    reps.iter()
        .map(|rep| {
            points
                .iter()
                .map(|g| rep_matrix(fq, group, rep, g))
                .collect::<Result<Vec<_>>>()
        })
        .collect()
}

fn hyp_sum_prepared(
    fq: &Fq,
    a_mats: &[Mat<FqElem>],
    rho: &[Vec<Mat<FqElem>>],
    npoints: usize,
) -> CharCounts {
    let chunk = 1024usize;
    let starts: Vec<usize> = (0..npoints).step_by(chunk).collect();
    starts
        .par_iter()
        .map(|&start| {
            accumulate_counts(fq, a_mats, rho, start..(start + chunk).min(npoints))
        })
        .reduce(
            || CharCounts::new(fq.p),
            |mut acc, part| {
                acc.merge(&part);
                acc
            },
        )
}

/// Coefficient selection for [`verify_bound`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Selection {
    /// Every tuple in the coefficient space (guarded at 10^6).
    All,
    /// A seeded reproducible sample that always contains the zero tuple and
    /// the identity tuple as anchors.
    Sample { n: usize, seed: u64 },
}

/// One verified coefficient tuple.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyEntry {
    pub coefficients: Vec<CoeffMatrix>,
    pub counts: Vec<u64>,
    pub magnitude: f64,
    pub error_bound: f64,
    pub nondegen: NondegenStatus,
    /// Whether the bound is asserted for this tuple (degenerate tuples are
    /// reported but never asserted).
    pub asserted: bool,
    pub pass: bool,
}

/// Result of a bound-verification sweep.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub system: String,
    pub q: u64,
    pub d: usize,
    pub bound: String,
    pub threshold: f64,
    /// Set when the integration domain was lower-dimensional, making the
    /// reported bound vacuous.
    pub lowdim: bool,
    pub entries: Vec<VerifyEntry>,
    pub asserted_entries: usize,
    pub degenerate_entries: usize,
    pub all_asserted_pass: bool,
    /// Max magnitude/threshold over asserted entries.
    pub worst_ratio: f64,
}

pub fn system_summary(sys: &RepSystem) -> String {
    let group = match &sys.group {
        GroupKind::Torus { n } => format!("torus^{n}"),
        GroupKind::Sl2 => "sl2".into(),
        GroupKind::Gl2 => "gl2".into(),
        GroupKind::RootSystem { family, rank } => format!("rootsys {family}{rank}"),
        GroupKind::GmExt(inner) => format!(
            "gm x {}",
            system_summary(&RepSystem::new((**inner).clone(), vec![]))
                .split(' ')
                .next()
                .unwrap_or("?")
        ),
    };
    let reps: Vec<String> = sys
        .reps
        .iter()
        .map(|r| match r {
            crate::bound::RepDescriptor::TorusChar(w) => format!("chi{w:?}"),
            crate::bound::RepDescriptor::Sym { m } => format!("sym{m}"),
            crate::bound::RepDescriptor::SymDet { m, k } => format!("sym{m}det{k}"),
            crate::bound::RepDescriptor::HighestWeight(v) => format!("hw{v:?}"),
            crate::bound::RepDescriptor::GmTwist { c, inner } => match inner {
                Some(r) => format!(
                    "t^{c}*{}",
                    match r.as_ref() {
                        crate::bound::RepDescriptor::Sym { m } => format!("sym{m}"),
                        other => format!("{other:?}"),
                    }
                ),
                None => format!("t^{c}"),
            },
        })
        .collect();
    format!("{group} [{}]", reps.join(", "))
}

/// Total number of matrix entries across the coefficient tuple.
fn entry_slots(sys: &RepSystem) -> Result<Vec<usize>> {
    sys.reps.iter().map(|r| r.dim(&sys.group).map(|d| d * d)).collect()
}

fn tuple_from_indices(slots: &[usize], fq: &Fq, indices: &[u64]) -> Vec<CoeffMatrix> {
    let mut out = Vec::with_capacity(slots.len());
    let mut pos = 0;
    for &s in slots {
        let dim = (s as f64).sqrt().round() as usize;
        let mut mat = Vec::with_capacity(dim);
        for r in 0..dim {
            let mut row = Vec::with_capacity(dim);
            for c in 0..dim {
                let elem = fq.element(indices[pos + r * dim + c]);
                row.push(elem.0.iter().map(|&x| x as i64).collect());
            }
            mat.push(row);
        }
        pos += s;
        out.push(mat);
    }
    out
}

fn identity_tuple(sys: &RepSystem, fq: &Fq) -> Result<Vec<CoeffMatrix>> {
    Ok(sys
        .reps
        .iter()
        .map(|r| {
            let dim = r.dim(&sys.group).expect("validated");
            (0..dim)
                .map(|i| {
                    (0..dim)
                        .map(|j| {
                            if i == j {
                                fq.one().0.iter().map(|&x| x as i64).collect()
                            } else {
                                vec![0]
                            }
                        })
                        .collect()
                })
                .collect()
        })
        .collect())
}

fn zero_tuple(sys: &RepSystem) -> Vec<CoeffMatrix> {
    sys.reps
        .iter()
        .map(|r| {
            let dim = r.dim(&sys.group).expect("validated");
            vec![vec![vec![0i64]; dim]; dim]
        })
        .collect()
}

/// Runs `hyp_sum` for each selected coefficient tuple, attaches the
/// nondegeneracy status, and asserts the bound
/// `|Hyp(A)| <= q^{d/2} * bound` for nondegenerate entries only. Entries are
/// reported in canonical (coefficient-encoding) order regardless of the
/// parallel schedule.
pub fn verify_bound(
    sys: &RepSystem,
    fq: &Fq,
    selection: Selection,
    extension_cap: u32,
) -> Result<VerifyReport> {
    sys.validate()?;
    let (group, reps) = enumerable_parts(sys)?;
    let bound_result = rank_bound(sys)?;
    let q = fq.q();
    let threshold = (q as f64).powf(bound_result.d as f64 / 2.0) * rat_to_f64(&bound_result.bound);

    let slots = entry_slots(sys)?;
    let total_slots: usize = slots.iter().sum();
    let tuples: Vec<Vec<CoeffMatrix>> = match selection {
        Selection::All => {
            let space_size = (q as u128).checked_pow(total_slots as u32).unwrap_or(u128::MAX);
            if space_size > TUPLE_LIMIT {
                return Err(Error::SizeGuard {
                    what: "coefficient tuples",
                    size: space_size,
                    limit: TUPLE_LIMIT,
                });
            }
            let mut tuples = Vec::with_capacity(space_size as usize);
            let mut indices = vec![0u64; total_slots];
            loop {
                tuples.push(tuple_from_indices(&slots, fq, &indices));
                let mut k = 0;
                loop {
                    if k == total_slots {
                        break;
                    }
                    indices[k] += 1;
                    if indices[k] < q {
                        break;
                    }
                    indices[k] = 0;
                    k += 1;
                }
                if indices.iter().all(|&i| i == 0) {
                    break;
                }
            }
            tuples
        }
        Selection::Sample { n, seed } => {
            let mut tuples = vec![zero_tuple(sys), identity_tuple(sys, fq)?];
            let mut state = seed ^ 0x9e37_79b9_7f4a_7c15;
            let mut next = move || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                state
            };
            while tuples.len() < n.max(2) {
                let indices: Vec<u64> = (0..total_slots).map(|_| next() % q).collect();
                tuples.push(tuple_from_indices(&slots, fq, &indices));
            }
            tuples
        }
    };

    // Shared per-sweep state.
    let points = enumerate_points(group, fq)?;
    let rho = precompute_rho(fq, group, &reps, &points)?;
    let univariate = matches!(sys.group, GroupKind::Torus { n: 1 });
    let space = if univariate {
        None
    } else {
        Some(SearchSpace::build(sys, fq, extension_cap)?)
    };

    let entries: Vec<VerifyEntry> = tuples
        .par_iter()
        .map(|coeffs| {
            let mut with_coeffs = sys.clone();
            with_coeffs.coefficients = Some(coeffs.clone());
            let a_mats = coefficient_matrices(&with_coeffs, fq).expect("validated");
            let counts = hyp_sum_prepared(fq, &a_mats, &rho, points.len());
            let (magnitude, error_bound) = counts.eval_magnitude();
            let nondegen = if univariate {
                nondegen::torus_nondegen_exact_univariate(&with_coeffs, fq)
                    .expect("univariate torus")
            } else {
                space.as_ref().expect("built").status(coeffs)
            };
            let asserted = nondegen.assertable();
            let pass = magnitude <= threshold * (1.0 + REL_TOLERANCE) + error_bound;
            VerifyEntry {
                coefficients: coeffs.clone(),
                counts: counts.counts,
                magnitude,
                error_bound,
                nondegen,
                asserted,
                pass,
            }
        })
        .collect();

    let asserted_entries = entries.iter().filter(|e| e.asserted).count();
    let degenerate_entries = entries.iter().filter(|e| e.nondegen.is_degenerate()).count();
    let all_asserted_pass = entries.iter().filter(|e| e.asserted).all(|e| e.pass);
    let worst_ratio = entries
        .iter()
        .filter(|e| e.asserted)
        .map(|e| e.magnitude / threshold)
        .fold(0.0f64, f64::max);

    Ok(VerifyReport {
        system: system_summary(sys),
        q,
        d: bound_result.d,
        bound: format_rat(&bound_result.bound),
        threshold,
        lowdim: bound_result.lowdim_flag,
        entries,
        asserted_entries,
        degenerate_entries,
        all_asserted_pass,
        worst_ratio,
    })
}
