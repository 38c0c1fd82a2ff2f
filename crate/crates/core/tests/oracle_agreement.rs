use std::collections::BTreeSet;

use theta_core::abelian::{enumerate_aut, theta_spectrum, Rank2PGroup};
use theta_core::dihedral::{dihedral_theta_spectrum, enumerate_dihedral_aut, DihedralGroup};
use theta_core::oracle::{
    brute_force_automorphisms, build_dihedral, build_direct_sum, oracle_theta_spectrum,
};

fn oracle_perms(g: &theta_core::oracle::CayleyGroup) -> BTreeSet<Vec<usize>> {
    brute_force_automorphisms(g)
        .unwrap()
        .into_iter()
        .map(|f| f.image)
        .collect()
}

#[test]
fn matrix_enumeration_equals_oracle() {
    for (p, a, b) in [(2, 1, 2), (3, 1, 2), (2, 1, 3)] {
        let g = Rank2PGroup::new(p, a, b).unwrap();
        let matrices: BTreeSet<Vec<usize>> = enumerate_aut(&g)
            .iter()
            .map(|m| m.as_permutation())
            .collect();
        let table = build_direct_sum(&[g.first_modulus(), g.second_modulus()]).unwrap();
        assert_eq!(matrices, oracle_perms(&table), "{g}");
        assert!(theta_spectrum(&g)
            .unwrap()
            .same_counts(&oracle_theta_spectrum(&table).unwrap()));
    }
}

#[test]
fn holomorph_enumeration_equals_oracle() {
    for n in 3..=7u64 {
        let g = DihedralGroup::new(n).unwrap();
        let hol: BTreeSet<Vec<usize>> = enumerate_dihedral_aut(&g)
            .iter()
            .map(|f| f.as_permutation())
            .collect();
        let table = build_dihedral(n as usize).unwrap();
        assert_eq!(hol, oracle_perms(&table), "{g}");
        assert!(dihedral_theta_spectrum(&g).same_counts(&oracle_theta_spectrum(&table).unwrap()));
    }
}

#[test]
fn oracle_labels_line_up_with_enumeration_order() {
    let g = Rank2PGroup::new(3, 1, 2).unwrap();
    let table = build_direct_sum(&[3, 9]).unwrap();
    for (i, e) in g.elements().enumerate() {
        assert_eq!(table.labels()[i], e.to_string());
    }
    let d = DihedralGroup::new(6).unwrap();
    let table = build_dihedral(6).unwrap();
    for (i, e) in d.elements().enumerate() {
        assert_eq!(table.labels()[i], e.to_string());
    }
}

#[test]
fn rank_three_and_equal_exponent_cases() {
    // Outside the matrix module: the oracle alone answers these.
    let s = oracle_theta_spectrum(&build_direct_sum(&[2, 2, 4]).unwrap()).unwrap();
    let auts = brute_force_automorphisms(&build_direct_sum(&[2, 2, 4]).unwrap()).unwrap();
    assert_eq!(s.mass(), auts.len() as u64);
    assert_eq!(s.get(16), Some(1));

    let s = oracle_theta_spectrum(&build_direct_sum(&[3, 3]).unwrap()).unwrap();
    assert_eq!(s.mass(), 48);
}

mod relabeling {
    use proptest::prelude::*;
    use theta_core::oracle::{brute_force_automorphisms, build_dihedral, build_direct_sum};

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn automorphism_count_ignores_labels(
            which in 0usize..3,
            perm in Just((0..10usize).collect::<Vec<_>>()).prop_shuffle(),
        ) {
            let g = match which {
                0 => build_direct_sum(&[2, 4]).unwrap(),
                1 => build_dihedral(4).unwrap(),
                _ => build_dihedral(5).unwrap(),
            };
            // Restrict the shuffled 0..10 to a permutation of 0..|G|.
            let perm: Vec<usize> = perm.into_iter().filter(|&i| i < g.size()).collect();
            let h = g.relabel(&perm).unwrap();
            prop_assert_eq!(
                brute_force_automorphisms(&g).unwrap().len(),
                brute_force_automorphisms(&h).unwrap().len()
            );
        }
    }
}
