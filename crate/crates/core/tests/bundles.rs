use std::sync::Arc;

use csx::bundles::*;
use csx::homology::{homology_of, HomologyReport, OverflowPolicy};
use csx::perm::Permutation;
use csx::simpset::{build_delta, semi_simplex, twisted_product, CircularPermutation, GroupKind, SimplicialSet};

fn homology(b: &BundleTotalSpace) -> HomologyReport {
    homology_of(&b.total, OverflowPolicy::Bigint).unwrap()
}

fn tetra(cochain: &TwoCochain) -> BundleTotalSpace {
    let d = decorate_from_cochain(tetrahedron_boundary(), cochain).unwrap();
    let b = total_space(&d, 4).unwrap();
    b.verify().unwrap();
    b
}

#[test]
fn pullback_lemma_for_all_small_g() {
    let mut cases = 0;
    for n in 0..=3 {
        for g in Permutation::all(n) {
            pullback_lemma_check(&g, n + 1).unwrap();
            cases += 1;
        }
    }
    assert_eq!(cases, 33);
}

#[test]
fn upsilon_for_all_small_g() {
    for n in 0..=3 {
        for g in Permutation::all(n) {
            assert!(upsilon_comparison(&g), "g = {g}");
        }
    }
}

#[test]
fn orbit_counts_match_the_twisted_product() {
    for n in 0..=3 {
        let t = twisted_product(GroupKind::C, &build_delta(n, n + 1));
        for g in Permutation::all(n) {
            let e = e_of(&g, n + 1).unwrap();
            assert_eq!(e.total.counts(), t.counts());
            assert_eq!(e.total.nondegenerate_counts(), t.nondegenerate_counts());
        }
    }
}

#[test]
fn tetrahedron_bundles_by_degree() {
    let expect = |d: i64| -> Vec<(usize, Vec<u64>)> {
        match d.abs() {
            0 => vec![(1, vec![]), (1, vec![]), (1, vec![]), (1, vec![])],
            1 => vec![(1, vec![]), (0, vec![]), (0, vec![]), (1, vec![])],
            _ => vec![(1, vec![]), (0, vec![2]), (0, vec![]), (1, vec![])],
        }
    };
    for d in -2..=2 {
        let h = homology(&tetra(&tetrahedron_cochain(d).unwrap()));
        let got: Vec<(usize, Vec<u64>)> = h.groups[..4].iter().map(|g| (g.betti, g.torsion.clone())).collect();
        assert_eq!(got, expect(d), "degree {d}");
    }
}

#[test]
fn every_tetrahedron_cochain_follows_its_degree() {
    let base = tetrahedron_boundary();
    for bits in 0..16u8 {
        let c = TwoCochain::new((0..4).map(|k| (bits >> k) & 1).collect()).unwrap();
        let d = boundary_degree(&base, &c).unwrap();
        let h = homology(&tetra(&c));
        assert_eq!(h.groups[1].betti, usize::from(d == 0), "{:?}", c.values);
        let torsion: Vec<u64> = if d.abs() >= 2 { vec![d.unsigned_abs()] } else { vec![] };
        assert_eq!(h.groups[1].torsion, torsion, "{:?}", c.values);
        assert!(h.groups[3].is_z());
    }
}

#[test]
fn fibers_over_nondegenerate_simplices() {
    let b = tetra(&tetrahedron_cochain(1).unwrap());
    for n in 0..=2 {
        let sizes = b.projection.fiber_sizes(n);
        for id in b.base.nondegenerate(n) {
            assert_eq!(sizes[id], n + 1);
        }
    }
}

#[test]
fn decorated_triangle_is_an_orbit() {
    let base = Arc::new(semi_simplex(2));
    let d = decorate_from_cochain(base, &TwoCochain::new(vec![1]).unwrap()).unwrap();
    let b = total_space(&d, 4).unwrap();
    b.verify().unwrap();
    let g = Permutation::new(vec![0, 2, 1]).unwrap();
    let e = e_of(&g, 4).unwrap();
    assert_eq!(b.total.counts(), e.total.counts());
    assert_eq!(b.total.nondegenerate_counts(), e.total.nondegenerate_counts());
    assert_eq!(homology(&b), homology(&e));
}

#[test]
fn point_and_zero_cochain() {
    let e = e_of(&Permutation::identity(0), 4).unwrap();
    let h = homology(&e);
    assert_eq!(h.bettis()[..4], [1, 1, 0, 0]);
    let d = decorate_from_cochain(tetrahedron_boundary(), &TwoCochain::zero(4)).unwrap();
    assert_eq!(chern_cochain(&d).sum(), 0);
}

#[test]
fn extension_over_the_solid_tetrahedron() {
    // oracle: the boundaries of the six necklaces of size four
    let solid = Arc::new(semi_simplex(3));
    let bd = tetrahedron_boundary();
    let mut boundaries = std::collections::BTreeSet::new();
    for c in CircularPermutation::all(3) {
        let faces: Vec<u8> = (0..4)
            .map(|id| {
                // triangle id of the boundary is the face missing vertex 3 - id
                let face = c.face(3 - id).unwrap();
                u8::from(face == chern_necklace())
            })
            .collect();
        boundaries.insert(faces);
    }
    assert_eq!(boundaries.len(), 6);
    let mut extendable = 0;
    for bits in 0..16u8 {
        let c = TwoCochain::new((0..4).map(|k| (bits >> k) & 1).collect()).unwrap();
        let decor = decorate_from_cochain(bd.clone(), &c).unwrap();
        let ext = extend_decoration(solid.clone(), &restrict_partial(&solid, &decor)).unwrap();
        let complete = matches!(ext, Extension::Complete(_));
        assert_eq!(complete, boundaries.contains(&c.values), "{:?}", c.values);
        assert_eq!(complete, boundary_degree(&bd, &c).unwrap() == 0);
        if !complete {
            assert_eq!(ext, Extension::Obstructed { dim: 3, id: 0 });
            assert!(ext.obstruction_json().unwrap().contains("\"dim\":3"));
        }
        extendable += usize::from(complete);
    }
    assert_eq!(extendable, 6);
}

#[test]
fn extension_of_two_dimensional_bases_always_succeeds() {
    let base = tetrahedron_boundary();
    let empty: Vec<Vec<Option<CircularPermutation>>> =
        (0..=2).map(|n| vec![None; base.count(n)]).collect();
    let Extension::Complete(d) = extend_decoration(base.clone(), &empty).unwrap() else {
        panic!("two-dimensional bases always extend")
    };
    // the search takes the first necklace, the flat one
    assert_eq!(chern_cochain(&d).sum(), 0);
    let full = decorate_from_cochain(base.clone(), &tetrahedron_cochain(1).unwrap()).unwrap();
    let again = extend_decoration(base.clone(), &restrict_partial(&base, &full)).unwrap();
    assert_eq!(again, Extension::Complete(full));
}

#[test]
fn decoration_json_with_degenerate_base() {
    // a base with degeneracy tables is used as is
    let base: Arc<SimplicialSet> = Arc::new(build_delta(1, 3));
    let assignment = (0..=3)
        .map(|n| (0..base.count(n)).map(|_| CircularPermutation::new((0..=n).collect()).unwrap()).collect())
        .collect();
    let d = Decoration::new(base, assignment).unwrap();
    let b = total_space(&d, 3).unwrap();
    b.verify().unwrap();
    let h = homology(&b);
    assert_eq!(h.bettis()[..3], [1, 1, 0]);
    let back = Decoration::from_json(&d.to_json()).unwrap();
    assert_eq!(back, d);
}
