use std::collections::BTreeSet;

use proptest::prelude::*;

use cone_zeta::corpus::{random_instance, standard_corpus};
use cone_zeta::genfun::{
    genfun_closed_cone, validate_weight, GenFunEngine, GenFunSpec, PiecewiseWeight,
};
use cone_zeta::geometry::{face_leq, CellComplex, SignVector};
use cone_zeta::linalg::{dot, rank};
use cone_zeta::oracle::{compare, lattice_sum_truncated, series_expand};
use cone_zeta::FactoredRational;

fn lattice_box(m: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (-r..=r).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Every lattice point of C lies in exactly one enumerated cell, and the
    /// cell's closure contains it and has the right dimension.
    #[test]
    fn cells_partition_the_cone(seed in 0u64..10_000, m in 1usize..=3, k in 0usize..=3) {
        let inst = random_instance(seed, m, k).unwrap();
        let cx = &inst.complex;
        let cells = cx.enumerate_cells().unwrap();
        let signs: BTreeSet<&SignVector> = cells.iter().map(|c| &c.signs).collect();
        prop_assert_eq!(signs.len(), cells.len());
        for x in lattice_box(m, 3) {
            if let Some(s) = cx.locate(&x) {
                prop_assert!(signs.contains(&s), "{:?} located in unknown cell {}", x, s);
                prop_assert!(cx.closure(&s).contains(&x));
            }
        }
        for c in &cells {
            prop_assert_eq!(rank(&c.rays), c.dim);
            let sum: Vec<i64> = (0..m).map(|j| c.rays.iter().map(|r| r[j]).sum()).collect();
            // the barycenter of the rays is in the open cell
            prop_assert_eq!(cx.locate(&sum), Some(c.signs.clone()));
        }
    }

    /// Face relation by signs agrees with closure containment of rays.
    #[test]
    fn faces_are_sound(seed in 0u64..10_000, m in 2usize..=3, k in 1usize..=3) {
        let inst = random_instance(seed, m, k).unwrap();
        let cx = &inst.complex;
        let cells = cx.enumerate_cells().unwrap();
        for f in &cells {
            let closure = cx.closure(&f.signs);
            for g in &cells {
                let contained = g.rays.iter().all(|r| closure.contains(r));
                prop_assert_eq!(face_leq(g, f), contained, "{} vs {}", g.signs, f.signs);
            }
        }
    }

    /// The cell genfuns of a whole complex add up to the closed cone.
    #[test]
    fn cells_add_up_to_the_cone(seed in 0u64..10_000, m in 1usize..=3, k in 0usize..=3) {
        let inst = random_instance(seed, m, k).unwrap();
        let cx = &inst.complex;
        let spec = GenFunSpec::new(inst.spec.a.clone(), inst.spec.b.clone(), PiecewiseWeight::Zero);
        let engine = GenFunEngine::new(cx).unwrap();
        let total = engine.genfun_region(&[], &spec).unwrap();
        let rays = cx.cone().extreme_rays().unwrap();
        let closed = genfun_closed_cone(&rays, &spec.a, &spec.b).unwrap();
        prop_assert!(total.eq_rational(&closed));
        let parts: Vec<FactoredRational> = engine
            .cells()
            .iter()
            .map(|c| engine.genfun_cell(&c.signs, &spec).unwrap())
            .collect();
        prop_assert!(FactoredRational::sum(&parts).eq_rational(&closed));
    }

    /// The weights produced by the corpus generator are piecewise constant.
    #[test]
    fn corpus_weights_are_compatible(seed in 0u64..10_000, m in 1usize..=3, k in 0usize..=3) {
        let inst = random_instance(seed, m, k).unwrap();
        let cells = inst.complex.enumerate_cells().unwrap();
        prop_assert!(validate_weight(&cells, &inst.spec.gamma, m).valid);
    }
}

#[test]
fn closed_cones_match_the_oracle() {
    // non-simplicial: square pyramid
    let rays = vec![vec![1, 0, 1], vec![0, 1, 1], vec![-1, 0, 1], vec![0, -1, 1]];
    let normals = vec![
        vec![1, 1, 1],
        vec![1, -1, 1],
        vec![-1, 1, 1],
        vec![-1, -1, 1],
    ];
    let cx = CellComplex::from_normals(3, normals, vec![]).unwrap();
    let mut got = cx.cone().extreme_rays().unwrap();
    got.sort();
    let mut want = rays.clone();
    want.sort();
    assert_eq!(got, want);
    let spec = GenFunSpec::new(vec![1, -1, 0], vec![0, 0, 1], PiecewiseWeight::Zero);
    let g = genfun_closed_cone(&rays, &spec.a, &spec.b).unwrap();
    let brute = lattice_sum_truncated(&cx, &[], &spec, 8).unwrap();
    assert!(
        compare(&series_expand(&g, 8).unwrap(), &brute)
            .unwrap()
            .equal
    );
    assert!(rays.iter().all(|r| dot(&spec.b, r) > 0));
}

#[test]
fn reciprocity_fails_outside_its_hypotheses() {
    // the torus cone has three bounding hyperplanes in the plane
    let cx =
        CellComplex::from_normals(2, vec![vec![1, 0], vec![0, 1], vec![3, -1]], vec![]).unwrap();
    let spec = GenFunSpec::new(vec![0, 0], vec![4, 0], PiecewiseWeight::Zero);
    let err = GenFunEngine::new(&cx)
        .unwrap()
        .check_reciprocity(&[], &spec)
        .unwrap_err();
    assert!(matches!(err, cone_zeta::Error::Hypothesis(_)));
}

#[test]
fn corpus_is_large_enough() {
    let corpus = standard_corpus().unwrap();
    assert!(corpus.len() >= 20);
    let dims: BTreeSet<usize> = corpus.iter().map(|i| i.complex.dim()).collect();
    assert_eq!(dims, BTreeSet::from([1, 2, 3]));
    for inst in &corpus {
        inst.complex.require_reciprocity_hypotheses().unwrap();
    }
}
