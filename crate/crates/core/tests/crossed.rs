//! Crossed-group structure maps against brute-force oracles built from
//! plain maps of finite ordinals.

use csx::delta::{coface, codegeneracy, sort_factorization, MonotoneOperator, SetMap};
use csx::perm::Permutation;
use itertools::Itertools;

fn compose(outer: &[usize], inner: &[usize]) -> Vec<usize> {
    inner.iter().map(|&j| outer[j]).collect()
}

#[test]
fn face_is_the_unique_filler_of_the_coface_square() {
    // d_i f is the unique g with delta_i . g = f . delta_{f^-1(i)}
    for n in 1..=5 {
        for f in Permutation::all(n) {
            for i in 0..=n {
                let k = f.pulled_index(i).unwrap();
                let rhs = compose(f.word(), coface(n, k).unwrap().values());
                let fillers: Vec<Permutation> = Permutation::all(n - 1)
                    .into_iter()
                    .filter(|g| compose(coface(n, i).unwrap().values(), g.word()) == rhs)
                    .collect();
                assert_eq!(fillers, vec![f.face(i).unwrap()], "d_{i} {f}");
            }
        }
    }
}

#[test]
fn degeneracy_is_the_order_preserving_filler_of_the_codegeneracy_square() {
    // s_i f is the g with sigma_i . g = f . sigma_{f^-1(i)} sending the
    // doubled pair in order
    for n in 0..=4 {
        for f in Permutation::all(n) {
            for i in 0..=n {
                let k = f.pulled_index(i).unwrap();
                let rhs = compose(f.word(), codegeneracy(n, k).unwrap().values());
                let fillers: Vec<Permutation> = Permutation::all(n + 1)
                    .into_iter()
                    .filter(|g| compose(codegeneracy(n, i).unwrap().values(), g.word()) == rhs)
                    .filter(|g| g.apply(k) < g.apply(k + 1))
                    .collect();
                assert_eq!(fillers, vec![f.degeneracy(i).unwrap()], "s_{i} {f}");
            }
        }
    }
}

#[test]
fn crossed_relations_exhaustive() {
    for n in 0..=4 {
        let all = Permutation::all(n);
        for h in &all {
            for f in &all {
                let hf = h.multiply(f).unwrap();
                for i in 0..=n {
                    let k = h.pulled_index(i).unwrap();
                    if n > 0 {
                        assert_eq!(
                            hf.face(i).unwrap(),
                            h.face(i).unwrap().multiply(&f.face(k).unwrap()).unwrap()
                        );
                    }
                    assert_eq!(
                        hf.degeneracy(i).unwrap(),
                        h.degeneracy(i).unwrap().multiply(&f.degeneracy(k).unwrap()).unwrap()
                    );
                }
                assert_eq!(hf.inverse(), f.inverse().multiply(&h.inverse()).unwrap());
            }
        }
    }
}

#[test]
fn inversion_exchanges_indices() {
    for n in 0..=4 {
        for f in Permutation::all(n) {
            let finv = f.inverse();
            assert_eq!(finv.inverse(), f);
            for i in 0..=n {
                let k = f.pulled_index(i).unwrap();
                if n > 0 {
                    assert_eq!(f.face(i).unwrap().inverse(), finv.face(k).unwrap());
                }
                assert_eq!(f.degeneracy(i).unwrap().inverse(), finv.degeneracy(k).unwrap());
            }
        }
    }
}

#[test]
fn structure_maps_satisfy_simplicial_identities() {
    for n in 0..=6 {
        for f in Permutation::all(n) {
            for j in 0..=n {
                for i in 0..j {
                    if n >= 2 {
                        assert_eq!(
                            f.face(j).unwrap().face(i).unwrap(),
                            f.face(i).unwrap().face(j - 1).unwrap()
                        );
                    }
                }
                for i in 0..=j {
                    assert_eq!(
                        f.degeneracy(j).unwrap().degeneracy(i).unwrap(),
                        f.degeneracy(i).unwrap().degeneracy(j + 1).unwrap()
                    );
                }
                let s = f.degeneracy(j).unwrap();
                assert_eq!(s.face(j).unwrap(), f);
                assert_eq!(s.face(j + 1).unwrap(), f);
            }
        }
    }
}

#[test]
fn degenerate_means_image_of_a_degeneracy() {
    for n in 1..=5 {
        let image: std::collections::HashSet<Permutation> = Permutation::all(n - 1)
            .iter()
            .flat_map(|g| (0..n).map(move |i| g.degeneracy(i).unwrap()))
            .collect();
        for f in Permutation::all(n) {
            assert_eq!(f.is_degenerate(), image.contains(&f), "{f}");
        }
    }
}

#[test]
fn nondegenerate_counts_by_inclusion_exclusion() {
    // sum_k (-1)^k C(n, k) (n + 1 - k)!
    fn binom(n: i64, k: i64) -> i64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }
    fn fact(n: i64) -> i64 {
        (1..=n).product()
    }
    for n in 0..=6i64 {
        let expected: i64 = (0..=n).map(|k| (-1i64).pow(k as u32) * binom(n, k) * fact(n + 1 - k)).sum();
        let got = Permutation::all(n as usize).iter().filter(|f| !f.is_degenerate()).count();
        assert_eq!(got as i64, expected, "n = {n}");
    }
}

#[test]
fn sort_factorization_is_the_unique_fiber_ordered_pair() {
    for m in 0..4usize {
        for t in 1..=4usize {
            for values in (0..m + 1).map(|_| 0..t).multi_cartesian_product() {
                let phi = SetMap::new(t, values.clone()).unwrap();
                let (xi, g) = sort_factorization(&phi);
                assert_eq!(compose(xi.values(), g.word()), values);
                let mut found = Vec::new();
                for cand_xi in MonotoneOperator::enumerate(m, t - 1) {
                    for cand_g in Permutation::all(m) {
                        if compose(cand_xi.values(), cand_g.word()) != values {
                            continue;
                        }
                        // positions sharing a value keep their order
                        let ordered = (0..=m).tuple_combinations().all(|(a, b)| {
                            values[a] != values[b] || cand_g.apply(a) < cand_g.apply(b)
                        });
                        if ordered {
                            found.push((cand_xi.clone(), cand_g.clone()));
                        }
                    }
                }
                assert_eq!(found, vec![(xi, g)], "{values:?}");
            }
        }
    }
}

#[test]
fn pushforward_is_the_fiber_ordered_filler() {
    // alpha_* f = g and f^* alpha = xi with alpha . g = f . xi (as maps
    // [m] -> [n]) and g^-1 increasing on each fiber of alpha
    for n in 0..=3 {
        for m in 0..=3 {
            for alpha in MonotoneOperator::enumerate(m, n) {
                for f in Permutation::all(n) {
                    let g = f.act(&alpha).unwrap();
                    let xi = f.pull_operator(&alpha).unwrap();
                    let mut found = Vec::new();
                    for cand_xi in MonotoneOperator::enumerate(m, n) {
                        for cand_g in Permutation::all(m) {
                            let lhs = compose(alpha.values(), cand_g.word());
                            let rhs = compose(f.word(), cand_xi.values());
                            let ginv = cand_g.inverse();
                            let fiber_ordered = (0..=m).tuple_combinations().all(|(a, b)| {
                                alpha.apply(a) != alpha.apply(b) || ginv.apply(a) < ginv.apply(b)
                            });
                            if lhs == rhs && fiber_ordered {
                                found.push((cand_xi.clone(), cand_g));
                            }
                        }
                    }
                    assert_eq!(found, vec![(xi, g)], "alpha = {alpha}, f = {f}");
                }
            }
        }
    }
}

#[test]
fn pushforward_along_cofaces_and_codegeneracies_is_word_surgery() {
    for n in 1..=4 {
        for f in Permutation::all(n) {
            for i in 0..=n {
                assert_eq!(f.act(&coface(n, i).unwrap()).unwrap(), f.face(i).unwrap());
            }
        }
    }
    for n in 0..=4 {
        for f in Permutation::all(n) {
            for i in 0..=n {
                assert_eq!(f.act(&codegeneracy(n, i).unwrap()).unwrap(), f.degeneracy(i).unwrap());
            }
        }
    }
}
