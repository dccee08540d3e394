use num_bigint::BigUint;
use num_rational::Ratio;
use proptest::prelude::*;

use np_atlas::bott::{bbw_cohomology, twisted_vanishing_threshold, BlockedWeight, CohomologyResult};
use np_atlas::geometry::{catalog, FlagShape, LineBundleCoeffs, Positivity, VarietySpec};
use np_atlas::partitions::{weyl_dimension, DominantWeight, Partition};
use np_atlas::schur::{filtration_quotients, tensor_decompose};
use np_atlas::syzygy::{np_certify, np_threshold, ThresholdFamily};

fn all_shapes(max_n: usize) -> Vec<FlagShape> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        for mask in 1u32..(1 << (n - 1)) {
            let dims: Vec<usize> = (1..n).rev().filter(|d| mask & (1 << (d - 1)) != 0).collect();
            out.push(FlagShape::new(dims, n).unwrap());
        }
    }
    out
}

fn nef_coeffs(k: usize, max: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                let cap = v.last().copied().unwrap_or(max);
                (0..=cap).map(move |x| {
                    let mut u = v.clone();
                    u.push(x);
                    u
                })
            })
            .collect();
    }
    out
}

#[test]
fn borel_weil_and_kodaira() {
    for shape in all_shapes(6) {
        for a in nef_coeffs(shape.k(), 3) {
            let line = LineBundleCoeffs::new(a.clone());
            let w = line.weight(&shape).unwrap();
            let r = bbw_cohomology(&w);
            let dom = DominantWeight::new(w.concatenated()).unwrap();
            let want = weyl_dimension(&dom, shape.n()).unwrap();
            match r {
                CohomologyResult::NonZero { degree, dimension, .. } => {
                    assert_eq!(degree, 0, "{shape} {a:?}");
                    assert_eq!(dimension, want);
                }
                CohomologyResult::Vanishes => panic!("nef {a:?} on {shape} has no sections"),
            }
        }
    }
}

#[test]
fn kodaira_for_ample_up_to_five() {
    for shape in all_shapes(6).into_iter().filter(|s| s.k() <= 3) {
        for a in nef_coeffs(shape.k(), 5) {
            let line = LineBundleCoeffs::new(a.clone());
            if line.positivity() != Positivity::Ample {
                continue;
            }
            assert_eq!(bbw_cohomology(&line.weight(&shape).unwrap()).degree(), Some(0), "{shape} {a:?}");
        }
    }
}

#[test]
fn canonical_bundles() {
    for r in 1..8 {
        for n in r + 1..=8 {
            let k = FlagShape::grassmannian(r, n).unwrap().canonical_weight();
            let b = k.blocks();
            // Plücker degree of K_{Gr(r,n)} is -n.
            assert_eq!(b[0][0] - b[1][0], -(n as i64), "Gr({r},{n})");
        }
    }
}

#[test]
fn quotient_ranks_sum() {
    for s in all_shapes(8) {
        assert_eq!(s.quotient_ranks().iter().sum::<usize>(), s.n());
        assert_eq!(s.quotient_ranks().len(), s.k() + 1);
    }
}

#[test]
fn bott_examples() {
    for d in 0..10 {
        let r = bbw_cohomology(&BlockedWeight::new(vec![vec![d], vec![0]]).unwrap());
        assert_eq!(r.degree(), Some(0));
        assert_eq!(r.dimension(), BigUint::from(d as u64 + 1));
    }
    let r = bbw_cohomology(&"[0],[3]".parse().unwrap());
    match r {
        CohomologyResult::NonZero { degree, weight, dimension } => {
            assert_eq!(degree, 1);
            assert_eq!(weight.entries(), &[2, 1]);
            assert_eq!(dimension, BigUint::from(2u32));
        }
        _ => panic!("expected H^1"),
    }
}

#[test]
fn threshold_examples() {
    let p3 = |v: &[u32]| Partition::new(v.to_vec()).unwrap();
    assert_eq!(twisted_vanishing_threshold(&[Partition::empty(), Partition::empty()], &[2, 3], 1).unwrap(), 0);
    assert_eq!(twisted_vanishing_threshold(&[p3(&[3])], &[1], 1).unwrap(), 1);
    assert_eq!(twisted_vanishing_threshold(&[p3(&[3])], &[1], 3).unwrap(), 0);
}

#[test]
fn restriction_on_the_whole_catalog() {
    for spec in catalog(8) {
        let k = spec.shape().k();
        let a: Vec<i64> = (1..=k as i64).rev().collect();
        let rep = np_atlas::geometry::restriction_surjectivity_check(&spec, &LineBundleCoeffs::new(a)).unwrap();
        assert!(rep.holds, "{spec}");
    }
}

#[test]
fn low_picard_rank_certifies_at_the_floor() {
    for name in ["sfl(3;6)", "sfl(3,1;8)", "ofl(2;7)", "ofl(3,2;8)", "ofl(4,1;10)", "g2q"] {
        let spec: VarietySpec = name.parse().unwrap();
        let floor = if name.starts_with("sfl") { 0 } else { 1 };
        for p in 1..=4i64 {
            let l = p + floor;
            let a: Vec<i64> = (1..=spec.shape().k() as i64).rev().map(|i| i * l).collect();
            assert!(np_certify(&spec, &LineBundleCoeffs::new(a.clone()), p as u32).unwrap().is_certified(), "{name} {a:?}");
            if l > 1 {
                let b: Vec<i64> = (1..=spec.shape().k() as i64).rev().map(|i| i * (l - 1)).collect();
                assert!(!np_certify(&spec, &LineBundleCoeffs::new(b), p as u32).unwrap().is_certified());
            }
        }
    }
}

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(0u32..4, 0..4).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

proptest! {
    #[test]
    fn weight_twist_shifts_but_keeps_dimension(blocks in prop::collection::vec(prop::collection::vec(-3i64..4, 1..3), 2..4), c in -3i64..4) {
        let blocks: Vec<Vec<i64>> = blocks.into_iter().map(|mut b| { b.sort_unstable_by(|x, y| y.cmp(x)); b }).collect();
        let w = BlockedWeight::new(blocks).unwrap();
        let k = w.blocks().len();
        let shifted = w.twisted(&vec![c; k]).unwrap();
        let (a, b) = (bbw_cohomology(&w), bbw_cohomology(&shifted));
        prop_assert_eq!(a.degree(), b.degree());
        prop_assert_eq!(a.dimension(), b.dimension());
    }

    #[test]
    fn tensor_dimensions_multiply(mu in partition(), nu in partition(), n in 1usize..5) {
        use np_atlas::partitions::schur_dimension;
        let total: BigUint = tensor_decompose(&mu, &nu, n)
            .iter()
            .map(|s| schur_dimension(&s.shape, n) * &s.multiplicity)
            .sum();
        prop_assert_eq!(total, schur_dimension(&mu, n) * schur_dimension(&nu, n));
    }

    #[test]
    fn filtration_dimensions_add_up(alpha in partition(), r1 in 1usize..3, r2 in 1usize..3) {
        use np_atlas::partitions::schur_dimension;
        prop_assume!(alpha.len() <= r1 + r2);
        let pieces = filtration_quotients(&alpha, &[r1, r2]).unwrap();
        let total: BigUint = pieces
            .iter()
            .map(|t| schur_dimension(&t.shapes[0], r1) * schur_dimension(&t.shapes[1], r2) * &t.multiplicity)
            .sum();
        prop_assert_eq!(total, schur_dimension(&alpha, r1 + r2));
    }

    #[test]
    fn vanishing_threshold_monotone(parts in prop::collection::vec(partition(), 1..4), l in 1u32..4) {
        let ranks: Vec<usize> = parts.iter().map(|p| p.len().max(1)).collect();
        let t = twisted_vanishing_threshold(&parts, &ranks, l).unwrap();
        prop_assert!(twisted_vanishing_threshold(&parts, &ranks, l + 1).unwrap() <= t);
        let grown: Vec<Partition> = parts.iter().map(|p| {
            if p.is_empty() { p.clone() } else {
                let mut v = p.parts().to_vec();
                v[0] += 1;
                Partition::new(v).unwrap()
            }
        }).collect();
        prop_assert!(twisted_vanishing_threshold(&grown, &ranks, l).unwrap() >= t);
    }

    #[test]
    fn symplectic_general_bound(ranks in prop::collection::vec(1usize..5, 1..6), p in 1u32..11) {
        let n1 = ranks.iter().sum::<usize>() as i64;
        let t = np_threshold(ThresholdFamily::Symplectic, &ranks, p).unwrap().ratio();
        let general = Ratio::new(i64::from(p) + 1, n1) + Ratio::new(n1 - 3, 2);
        prop_assert!(t <= general.max(Ratio::from_integer(i64::from(p))));
    }
}
