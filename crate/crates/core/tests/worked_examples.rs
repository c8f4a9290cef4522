mod common;

use std::collections::{BTreeMap, BTreeSet};

use karpelevic_core::algebra::{charpoly_exact, rat, RatScalar};
use karpelevic_core::farey::arc_with_denominators;
use karpelevic_core::itopoly::reduced_ito;
use karpelevic_core::realize::{
    conjecture_probe, type2_augment, type2_sparsest, type3_family, verify_realization,
    AugmentedTypeII, Composition, ProbeOutcome, TypeIIIFamilySpec,
};

fn x(parts: &[usize]) -> Composition {
    Composition::new(parts.to_vec(), 4).unwrap()
}

fn params(pairs: &[(&str, RatScalar)]) -> BTreeMap<String, RatScalar> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

#[test]
fn sparsest_type_two_constructions_match_printed_matrices() {
    let arc = arc_with_denominators(12, 4, 9).unwrap();
    for alpha in [rat(1, 3), rat(1, 2), rat(4, 5)] {
        let cases = [
            (common::a1(&alpha), [0, 3, 3]),
            (common::a2(&alpha), [2, 2, 2]),
            (common::a3(&alpha), [1, 2, 3]),
            (common::a4(&alpha), [1, 3, 2]),
        ];
        for (printed, parts) in cases {
            assert_eq!(type2_sparsest(4, 3, 3, &alpha, &x(&parts)).unwrap(), printed, "{parts:?}");
            let report = verify_realization(&printed, &arc, &alpha).unwrap();
            assert!(report.holds(), "{parts:?}: {report}");
            assert!(report.structure.holds());
        }
    }
}

#[test]
fn augmented_type_two_matches_printed_matrices() {
    let alpha = rat(1, 2);
    let (p, q, r) = (rat(9, 10), rat(19, 20), rat(7, 8));
    let base = AugmentedTypeII::from_sparsest(4, 3, 3, &alpha, &x(&[0, 3, 3])).unwrap();
    let arc = arc_with_denominators(12, 4, 9).unwrap();
    let expected = reduced_ito(&arc, &alpha).unwrap().poly;

    let mut g11 = base.clone();
    for row in 1..4 {
        g11 = type2_augment(&g11, (row, row + 4)).unwrap();
    }
    let m11 = g11
        .instantiate(&params(&[("alpha1", p.clone()), ("alpha2", q.clone()), ("alpha3", r.clone())]))
        .unwrap();
    assert_eq!(m11, common::a11(&alpha, &p, &q, &r));
    assert_eq!(charpoly_exact(&m11), expected);

    let mut g12 = base.clone();
    for row in [8, 9, 11] {
        g12 = type2_augment(&g12, (row, base.connector_target(row))).unwrap();
    }
    let m12 = g12
        .instantiate(&params(&[("alpha9", p.clone()), ("alpha10", q.clone()), ("alpha11", r.clone())]))
        .unwrap();
    assert_eq!(m12, common::a12(&alpha, &p, &q, &r));
    assert_eq!(charpoly_exact(&m12), expected);

    let mut g13 = base.clone();
    for row in [1, 8, 9] {
        g13 = type2_augment(&g13, (row, base.connector_target(row))).unwrap();
    }
    let m13 = g13
        .instantiate(&params(&[("alpha1", p.clone()), ("alpha9", q.clone()), ("alpha10", r.clone())]))
        .unwrap();
    assert_eq!(m13, common::a13(&alpha, &p, &q, &r));
    assert_eq!(charpoly_exact(&m13), expected);
}

#[test]
fn printed_type_three_family_members() {
    let alpha = rat(1, 2);
    let arc = arc_with_denominators(15, 4, 15).unwrap();
    let (a1, b1, c1) = (rat(3, 4), rat(2, 3), rat(5, 6));
    let d1 = common::d1(&alpha, &a1, &b1, &c1);
    let spec1 = TypeIIIFamilySpec {
        n: 15,
        q: 4,
        d: 3,
        y: 3,
        alpha: alpha.clone(),
        blocks: vec![BTreeSet::from([3, 4]), BTreeSet::from([8, 9]), BTreeSet::from([13, 14])],
        weights: BTreeMap::from([
            (3, a1.clone()),
            (4, &alpha / &a1),
            (8, b1.clone()),
            (9, &alpha / &b1),
            (13, c1.clone()),
            (14, &alpha / &c1),
        ]),
    };
    assert_eq!(type3_family(&spec1).unwrap(), d1);

    let (p, q, r) = (rat(9, 10), rat(4, 5), rat(5, 6));
    let d2 = common::d2(&alpha, &p, &q, &r);
    for m in [&d1, &d2] {
        let report = verify_realization(m, &arc, &alpha).unwrap();
        assert!(report.holds() && report.structure.holds(), "{report}");
        assert!(matches!(conjecture_probe(m, &arc, &alpha).unwrap(), ProbeOutcome::Found { .. }));
    }
}
