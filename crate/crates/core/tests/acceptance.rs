//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its runtime (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! Everything here is oracle- or property-based at desk scale: exhaustive
//! coefficient sweeps against the exact rational bound, exact-arithmetic
//! identities, and independent closed-form oracles.

use hypsum_core::bound::{
    homogenize, rank_bound, GroupKind, RepDescriptor, RepSystem,
};
use hypsum_core::ffield::make_field;
use hypsum_core::groups::{enumerate_points, group_order, GenPoint, Group};
use hypsum_core::integrator::{integrate_polynomial, MultiPoly};
use hypsum_core::nondegen::{torus_nondegen_exact_univariate, NondegenStatus, SearchSpace};
use hypsum_core::polytope::{convex_hull, triangulate_with, ApexRule};
use hypsum_core::ratio::{rat, rat_int, Rat};
use hypsum_core::rootsys::{build_root_system, Family};
use hypsum_core::sums::{hyp_sum, verify_bound, Selection};
use num_traits::{One, Zero};
use std::time::Instant;

fn report(criterion: u32, what: &str, started: Instant) {
    println!(
        "ACCEPTANCE {criterion} PASS ({:.2}s) - {what}",
        started.elapsed().as_secs_f64()
    );
}

fn kloosterman_system() -> RepSystem {
    RepSystem::new(
        GroupKind::Torus { n: 1 },
        vec![
            RepDescriptor::TorusChar(vec![1]),
            RepDescriptor::TorusChar(vec![-1]),
        ],
    )
}

struct XorShift(u64);

impl XorShift {
    fn next(&mut self) -> u64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        self.0
    }
}

#[test]
fn criterion_01_kloosterman_sweep() {
    let started = Instant::now();
    let sys = kloosterman_system();
    let bound = rank_bound(&sys).unwrap();
    assert_eq!(bound.bound, rat_int(2));
    assert_eq!(bound.d, 1);
    for q in [5u64, 7, 11, 13, 17] {
        let fq = make_field(q, 1).unwrap();
        let report = verify_bound(&sys, &fq, Selection::All, 2).unwrap();
        let expected_threshold = 2.0 * (q as f64).sqrt();
        assert!((report.threshold - expected_threshold).abs() < 1e-9);
        // Exhaustive (a, b) in (F_q^*)^2 are exactly the asserted entries.
        assert_eq!(report.entries.len(), (q * q) as usize);
        assert_eq!(report.asserted_entries, ((q - 1) * (q - 1)) as usize);
        for entry in report.entries.iter().filter(|e| e.asserted) {
            assert!(
                entry.magnitude <= expected_threshold + 1e-9,
                "q={q}: magnitude {} exceeds 2 sqrt(q)",
                entry.magnitude
            );
        }
        assert!(report.all_asserted_pass);
    }
    report(1, "Kloosterman sweep over q in {5,7,11,13,17}", started);
}

#[test]
fn criterion_02_sl2_standard_representation() {
    let started = Instant::now();
    let sys = RepSystem::new(GroupKind::Sl2, vec![RepDescriptor::Sym { m: 1 }]);
    let bound = rank_bound(&sys).unwrap();
    assert_eq!(bound.bound, rat_int(2), "rank bound must be exactly 2/1");
    for q in [3u64, 5, 7] {
        let fq = make_field(q, 1).unwrap();
        let report = verify_bound(&sys, &fq, Selection::All, 1).unwrap();
        assert_eq!(report.entries.len(), (q * q * q * q) as usize);
        let threshold = 2.0 * (q as f64).powf(1.5);
        assert!((report.threshold - threshold).abs() < 1e-9);
        for entry in &report.entries {
            if entry.asserted {
                assert!(
                    entry.magnitude <= threshold + 1e-9,
                    "q={q}: asserted entry exceeds 2 q^(3/2)"
                );
            }
            // Cross-check against the characteristic-zero description of
            // the degenerate locus: degenerate implies det A = 0.
            if q <= 5 && entry.nondegen.is_degenerate() {
                let m = &entry.coefficients[0];
                let det = (m[0][0][0] * m[1][1][0] - m[0][1][0] * m[1][0][0]).rem_euclid(q as i64);
                assert_eq!(det, 0, "q={q}: degenerate tuple with det != 0");
            }
        }
        assert!(report.all_asserted_pass);
        // The degenerate count is exactly the number of singular matrices.
        if q <= 5 {
            let singular = (q * q * q * q) as usize - group_order(Group::Gl2, q) as usize;
            assert_eq!(report.degenerate_entries, singular);
        }
    }
    report(2, "SL2 standard rep: bound 2, sweeps at q in {3,5,7}", started);
}

#[test]
fn criterion_03_gl2_standard_representation() {
    let started = Instant::now();
    let sys = RepSystem::new(GroupKind::Gl2, vec![RepDescriptor::SymDet { m: 1, k: 0 }]);
    let bound = rank_bound(&sys).unwrap();
    assert_eq!(bound.bound, rat_int(1), "rank bound must be exactly 1/1");
    assert_eq!(bound.d, 4);

    // Hyp(identity) over F_2 is exactly 2, with counts (4, 2).
    let f2 = make_field(2, 1).unwrap();
    let mut with_identity = sys.clone();
    with_identity.coefficients = Some(vec![vec![
        vec![vec![1], vec![0]],
        vec![vec![0], vec![1]],
    ]]);
    let counts = hyp_sum(&with_identity, &f2).unwrap();
    assert_eq!(counts.counts, vec![4, 2]);
    let (mag, _) = counts.eval_magnitude();
    assert!((mag - 2.0).abs() < 1e-9);

    // All invertible A at q in {2, 3}: magnitude <= q^2.
    for q in [2u64, 3] {
        let fq = make_field(q, 1).unwrap();
        let invertible = enumerate_points(Group::Gl2, &fq).unwrap();
        for a in &invertible {
            let GenPoint::Mat2(entries) = a else { unreachable!() };
            let mut with_a = sys.clone();
            with_a.coefficients = Some(vec![(0..2)
                .map(|r| {
                    (0..2)
                        .map(|c| {
                            entries[r * 2 + c].0.iter().map(|&x| x as i64).collect()
                        })
                        .collect()
                })
                .collect()]);
            let counts = hyp_sum(&with_a, &fq).unwrap();
            let (mag, err) = counts.eval_magnitude();
            assert!(
                mag <= (q * q) as f64 + 1e-9 + err,
                "q={q}: invertible A gives magnitude {mag} > q^2"
            );
        }
    }
    report(3, "GL2 standard rep: bound 1, Hyp(I) = 2 over F_2, sweeps", started);
}

#[test]
fn criterion_04_homogenization_identity() {
    let started = Instant::now();
    let mut systems: Vec<RepSystem> = vec![
        kloosterman_system(),
        RepSystem::new(GroupKind::Sl2, vec![RepDescriptor::Sym { m: 1 }]),
        RepSystem::new(GroupKind::Sl2, vec![RepDescriptor::Sym { m: 2 }]),
        RepSystem::new(GroupKind::Sl2, vec![RepDescriptor::Sym { m: 3 }]),
        RepSystem::new(GroupKind::Gl2, vec![RepDescriptor::SymDet { m: 1, k: 0 }]),
    ];
    // Random rank-2 torus systems with weights in [-2, 2]^2.
    let mut rng = XorShift(0x0123_4567_89ab_cdef);
    for _ in 0..5 {
        let nreps = 2 + (rng.next() % 3) as usize;
        let reps: Vec<RepDescriptor> = (0..nreps)
            .map(|_| {
                RepDescriptor::TorusChar(vec![
                    (rng.next() % 5) as i64 - 2,
                    (rng.next() % 5) as i64 - 2,
                ])
            })
            .collect();
        systems.push(RepSystem::new(GroupKind::Torus { n: 2 }, reps));
    }
    for sys in &systems {
        let original = rank_bound(sys).unwrap();
        let lifted = rank_bound(&homogenize(sys).unwrap()).unwrap();
        assert_eq!(
            lifted.bound, original.bound,
            "homogenization must preserve the bound exactly ({sys:?})"
        );
        assert_eq!(lifted.d, original.d + 1);
    }
    report(4, "homogenization identity on 10 systems, exact equality", started);
}

#[test]
fn criterion_05_weyl_dimension_oracle() {
    let started = Instant::now();
    let mut cases = 0usize;
    // All dominant weights with coordinates <= 3 in A1, A2, B2, G2; A3 with
    // coordinates <= 1 brings the case count past 60.
    let mut jobs: Vec<(Family, usize, Vec<Vec<i64>>)> = Vec::new();
    jobs.push((Family::A, 1, (0..=3).map(|a| vec![a]).collect()));
    for (family, rank) in [(Family::A, 2), (Family::B, 2), (Family::G, 2)] {
        let coords = (0..=3)
            .flat_map(|a| (0..=3).map(move |b| vec![a, b]))
            .collect();
        jobs.push((family, rank, coords));
    }
    let a3_coords = (0..8)
        .map(|mask: i64| (0..3).map(|i| (mask >> i) & 1).collect())
        .collect();
    jobs.push((Family::A, 3, a3_coords));

    for (family, rank, weights) in jobs {
        let rs = build_root_system(family, rank).unwrap();
        for lambda in weights {
            let dim = rs.weyl_dimension(&lambda).unwrap();
            let total: u64 = rs
                .freudenthal_multiplicities(&lambda)
                .unwrap()
                .values()
                .sum();
            assert_eq!(
                num_bigint::BigInt::from(total),
                dim,
                "{family}{rank} weight {lambda:?}"
            );
            cases += 1;
        }
    }
    assert!(cases >= 60, "need at least 60 oracle cases, got {cases}");
    report(5, "Weyl dimension equals Freudenthal total on 68 cases", started);
}

#[test]
fn criterion_06_root_system_sanity() {
    let started = Instant::now();
    let expected = [
        (Family::A, 1, 1usize, 2usize),
        (Family::A, 2, 3, 6),
        (Family::A, 3, 6, 24),
        (Family::A, 4, 10, 120),
        (Family::B, 2, 4, 8),
        (Family::G, 2, 6, 12),
    ];
    for (family, rank, roots, order) in expected {
        let rs = build_root_system(family, rank).unwrap();
        assert_eq!(rs.weyl_order, order, "{family}{rank} Weyl order");
        assert_eq!(rs.positive_roots.len(), roots, "{family}{rank} root count");
        assert_eq!(rs.dim_group(), rank + 2 * roots, "{family}{rank} dimension");
    }
    report(6, "Weyl orders, root counts, d = rank + 2|R+|", started);
}

#[test]
fn criterion_07_integrator_oracle() {
    let started = Instant::now();
    let mut rng = XorShift(0xfeed_face_cafe_beef);

    // Closed-form box integrals: at least 100 random polynomials of degree
    // <= 4 in dimension <= 3, exact equality.
    let mut checked = 0usize;
    while checked < 100 {
        let dim = 1 + (rng.next() % 3) as usize;
        let lo: Vec<Rat> = (0..dim)
            .map(|_| rat((rng.next() % 7) as i64 - 3, 1 + (rng.next() % 2) as i64))
            .collect();
        let hi: Vec<Rat> = lo
            .iter()
            .map(|l| l + rat(1 + (rng.next() % 4) as i64, 1 + (rng.next() % 2) as i64))
            .collect();
        let mut corners = Vec::new();
        for mask in 0..(1usize << dim) {
            corners.push(
                (0..dim)
                    .map(|i| if mask >> i & 1 == 1 { hi[i].clone() } else { lo[i].clone() })
                    .collect::<Vec<Rat>>(),
            );
        }
        let boxp = convex_hull(&corners).unwrap();
        let mut poly = MultiPoly::zero(dim);
        for _ in 0..(1 + rng.next() % 4) {
            let expo: Vec<u32> = {
                // Keep the total degree at 4 or below.
                let mut left = 4u32;
                (0..dim)
                    .map(|_| {
                        let e = (rng.next() % (left as u64 + 1)) as u32;
                        left -= e;
                        e
                    })
                    .collect()
            };
            poly.add_term(expo, rat((rng.next() % 11) as i64 - 5, 1 + (rng.next() % 3) as i64));
        }
        let via_triangulation = integrate_polynomial(&boxp, &poly).unwrap().0;
        // Independent oracle: iterated one-dimensional power rule.
        let mut expected = Rat::zero();
        for (expo, c) in &poly.terms {
            let mut term = c.clone();
            for i in 0..dim {
                let e = expo[i] as usize;
                let mut hp = Rat::one();
                let mut lp = Rat::one();
                for _ in 0..=e {
                    hp *= &hi[i];
                    lp *= &lo[i];
                }
                term *= (hp - lp) / rat_int((e + 1) as i64);
            }
            expected += term;
        }
        assert_eq!(via_triangulation, expected, "box oracle mismatch");
        checked += 1;
    }

    // Triangulation independence on at least 20 random lattice polytopes.
    let mut independent = 0usize;
    while independent < 20 {
        let dim = 2 + (rng.next() % 2) as usize;
        let npts = 4 + (rng.next() % 6) as usize;
        let points: Vec<Vec<Rat>> = (0..npts)
            .map(|_| (0..dim).map(|_| rat_int((rng.next() % 9) as i64 - 4)).collect())
            .collect();
        let p = match convex_hull(&points) {
            Ok(p) if p.is_full_dimensional() => p,
            _ => continue,
        };
        let mut poly = MultiPoly::zero(dim);
        poly.add_term(vec![2; dim][..dim].to_vec(), rat_int(1));
        poly.add_term(vec![0; dim], rat(1, 2));
        let integral = |rule: ApexRule| {
            let simplices = triangulate_with(&p, rule).unwrap();
            let mut acc = Rat::zero();
            for s in simplices {
                let verts: Vec<Vec<Rat>> = s.iter().map(|&i| p.vertices[i].clone()).collect();
                acc += hypsum_core::integrator::integrate_poly_simplex(&poly, &verts).unwrap();
            }
            acc
        };
        assert_eq!(integral(ApexRule::LexMin), integral(ApexRule::LexMax));
        independent += 1;
    }
    report(7, "box-integral oracle (100 cases) + triangulation independence (20)", started);
}

#[test]
fn criterion_08_hyp_zero_counts_points() {
    let started = Instant::now();
    for (p, m) in [(2u64, 1usize), (3, 1), (2, 2), (5, 1), (7, 1), (3, 2)] {
        let fq = make_field(p, m).unwrap();
        let q = fq.q();
        let zero_coeff = |dims: &[usize]| -> Vec<Vec<Vec<Vec<i64>>>> {
            dims.iter()
                .map(|&d| vec![vec![vec![0i64]; d]; d])
                .collect()
        };
        let mut cases: Vec<(RepSystem, Group)> = vec![
            (
                RepSystem::new(GroupKind::Sl2, vec![RepDescriptor::Sym { m: 1 }]),
                Group::Sl2,
            ),
            (
                RepSystem::new(GroupKind::Gl2, vec![RepDescriptor::SymDet { m: 1, k: 0 }]),
                Group::Gl2,
            ),
        ];
        for n in 1..=3usize {
            let weights = (0..n)
                .map(|i| {
                    let mut w = vec![0i64; n];
                    w[i] = 1;
                    RepDescriptor::TorusChar(w)
                })
                .collect();
            cases.push((
                RepSystem::new(GroupKind::Torus { n }, weights),
                Group::Torus { n },
            ));
        }
        for (mut sys, group) in cases {
            let dims: Vec<usize> = sys
                .reps
                .iter()
                .map(|r| r.dim(&sys.group).unwrap())
                .collect();
            sys.coefficients = Some(zero_coeff(&dims));
            let counts = hyp_sum(&sys, &fq).unwrap();
            assert_eq!(
                counts.counts[0] as u128,
                group_order(group, q),
                "{group:?} over q={q}"
            );
            assert_eq!(counts.counts[1..].iter().sum::<u64>(), 0);
        }
    }
    report(8, "Hyp(0) = |G(F_q)| for all groups, q in {2,3,4,5,7,9}", started);
}

#[test]
fn criterion_09_univariate_exact_vs_search() {
    let started = Instant::now();
    // Exhaustive sweep of f = a t + b t^2 over F_5.
    let f5 = make_field(5, 1).unwrap();
    let template = {
        let mut s = RepSystem::new(
            GroupKind::Torus { n: 1 },
            vec![
                RepDescriptor::TorusChar(vec![1]),
                RepDescriptor::TorusChar(vec![2]),
            ],
        );
        s.coefficients = Some(vec![vec![vec![vec![0]]], vec![vec![vec![0]]]]);
        s
    };
    let space = SearchSpace::build(&template, &f5, 2).unwrap();
    for a in 0..5i64 {
        for b in 0..5i64 {
            let mut sys = template.clone();
            sys.coefficients = Some(vec![vec![vec![vec![a]]], vec![vec![vec![b]]]]);
            let exact = torus_nondegen_exact_univariate(&sys, &f5).unwrap();
            let searched = space.status(sys.coefficients.as_ref().unwrap());
            match exact {
                NondegenStatus::ExactDegenerate => assert!(
                    matches!(searched, NondegenStatus::Degenerate { .. }),
                    "f = {a} t + {b} t^2: exact says degenerate, search disagrees"
                ),
                NondegenStatus::ExactNondegenerate => assert!(
                    matches!(searched, NondegenStatus::NoWitnessUpTo { .. }),
                    "f = {a} t + {b} t^2: exact says nondegenerate, search disagrees"
                ),
                _ => unreachable!("exact decision is always exact"),
            }
        }
    }

    // Characteristic collapse: f = t^2 over F_2 is exactly degenerate.
    let f2 = make_field(2, 1).unwrap();
    let mut collapse = RepSystem::new(
        GroupKind::Torus { n: 1 },
        vec![RepDescriptor::TorusChar(vec![2])],
    );
    collapse.coefficients = Some(vec![vec![vec![vec![1]]]]);
    assert_eq!(
        torus_nondegen_exact_univariate(&collapse, &f2).unwrap(),
        NondegenStatus::ExactDegenerate
    );
    report(9, "exact univariate decision agrees with witness search", started);
}

#[test]
fn criterion_10_bi_invariance() {
    let started = Instant::now();
    let mut rng = XorShift(0xb1b1_b1b1_0000_0001);
    for q in [3u64, 5] {
        let fq = make_field(q, 1).unwrap();
        let configs: Vec<(GroupKind, Vec<RepDescriptor>, Group)> = vec![
            (
                GroupKind::Torus { n: 1 },
                vec![
                    RepDescriptor::TorusChar(vec![1]),
                    RepDescriptor::TorusChar(vec![-1]),
                ],
                Group::Torus { n: 1 },
            ),
            (
                GroupKind::Sl2,
                vec![RepDescriptor::Sym { m: 1 }],
                Group::Sl2,
            ),
            (
                GroupKind::Gl2,
                vec![RepDescriptor::SymDet { m: 1, k: 0 }],
                Group::Gl2,
            ),
        ];
        for (kind, reps, group) in configs {
            let points = enumerate_points(group, &fq).unwrap();
            let ereps: Vec<_> = reps.iter().map(|r| r.enumerable().unwrap()).collect();
            for _ in 0..50 {
                let dims: Vec<usize> = reps.iter().map(|r| r.dim(&kind).unwrap()).collect();
                let coeffs: Vec<Vec<Vec<Vec<i64>>>> = dims
                    .iter()
                    .map(|&d| {
                        (0..d)
                            .map(|_| {
                                (0..d)
                                    .map(|_| vec![(rng.next() % q) as i64])
                                    .collect()
                            })
                            .collect()
                    })
                    .collect();
                let mut sys = RepSystem::new(kind.clone(), reps.clone());
                sys.coefficients = Some(coeffs.clone());
                let base = hyp_sum(&sys, &fq).unwrap();

                let u = &points[(rng.next() % points.len() as u64) as usize];
                let v = &points[(rng.next() % points.len() as u64) as usize];
                let twisted: Vec<Vec<Vec<Vec<i64>>>> = ereps
                    .iter()
                    .zip(&coeffs)
                    .map(|(erep, coeff)| {
                        let ru = hypsum_core::groups::rep_matrix(&fq, group, erep, u).unwrap();
                        let rv = hypsum_core::groups::rep_matrix(&fq, group, erep, v).unwrap();
                        let n = coeff.len();
                        let a = hypsum_core::groups::Mat {
                            n,
                            data: coeff
                                .iter()
                                .flat_map(|row| row.iter().map(|e| fq.from_coeffs(e)))
                                .collect(),
                        };
                        let t = hypsum_core::groups::mat_mul(
                            &fq,
                            &ru,
                            &hypsum_core::groups::mat_mul(&fq, &a, &rv),
                        );
                        (0..n)
                            .map(|r| {
                                (0..n)
                                    .map(|c| t.at(r, c).0.iter().map(|&x| x as i64).collect())
                                    .collect()
                            })
                            .collect()
                    })
                    .collect();
                let mut twisted_sys = RepSystem::new(kind.clone(), reps.clone());
                twisted_sys.coefficients = Some(twisted);
                let twisted_counts = hyp_sum(&twisted_sys, &fq).unwrap();
                assert_eq!(base, twisted_counts, "{kind:?} over q={q}");
            }
        }
    }
    report(10, "CharCounts invariant under A -> rho(u) A rho(v), 300 triples", started);
}
