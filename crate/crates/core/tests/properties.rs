use std::sync::OnceLock;

use num_rational::BigRational;
use proptest::prelude::*;

use somino::{
    enumerate, path_to_tower, tower_to_path, Block, ClassSpec, EnumSpec, MSeries, Tower, TowerGf,
    WidthList,
};

fn widths() -> WidthList {
    WidthList::new(vec![2, 3]).unwrap()
}

fn u_towers() -> &'static [Tower] {
    static CELL: OnceLock<Vec<Tower>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut all = Vec::new();
        for nvec in [[2, 1], [1, 2], [3, 1], [2, 2]] {
            let spec = EnumSpec::new(widths(), nvec.to_vec(), ClassSpec::U).unwrap();
            all.extend(enumerate(&spec).unwrap());
        }
        all
    })
}

fn any_towers() -> &'static [Tower] {
    static CELL: OnceLock<Vec<Tower>> = OnceLock::new();
    CELL.get_or_init(|| {
        let spec = EnumSpec::new(widths(), vec![2, 2], ClassSpec::AnyConvexBottom).unwrap();
        enumerate(&spec).unwrap()
    })
}

fn arb_blocks() -> impl Strategy<Value = Vec<Block>> {
    prop::collection::vec((0u32..3, -4i64..5, prop::sample::select(vec![2u32, 3])), 1..6)
        .prop_map(|v| v.into_iter().map(|(r, o, w)| Block::new(r, o, w)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn canonical_form_is_stable(blocks in arb_blocks(), d in -6i64..7) {
        let t = Tower::new(widths(), blocks);
        let c = t.canonicalize().unwrap();
        prop_assert_eq!(c.canonicalize().unwrap(), c.clone());
        prop_assert_eq!(t.shifted(d).canonicalize().unwrap(), c.clone());
        prop_assert_eq!(t.is_valid(), c.is_valid() && t == c);
    }

    #[test]
    fn json_round_trip(i in 0usize..10_000) {
        let t = &any_towers()[i % any_towers().len()];
        prop_assert_eq!(&Tower::from_json(&t.to_json()).unwrap(), t);
    }

    #[test]
    fn collapse_is_restricted_and_keeps_validity(i in 0usize..10_000) {
        let t = &any_towers()[i % any_towers().len()];
        let c = t.collapse_stacks();
        prop_assert!(c.is_valid());
        prop_assert!(c.is_restricted().unwrap());
        if t.is_restricted().unwrap() {
            prop_assert_eq!(&c, t);
        }
    }

    #[test]
    fn path_prefix_sums_stay_nonnegative(i in 0usize..10_000) {
        let t = &u_towers()[i % u_towers().len()];
        let p = tower_to_path(t).unwrap();
        let h = p.heights();
        prop_assert!(h.iter().all(|&x| x >= 0));
        prop_assert_eq!(h.last(), Some(&0));
        prop_assert_eq!(p.word.len() as u64, p.spec.path_len());
        prop_assert_eq!(&path_to_tower(&p, &widths()).unwrap(), t);
    }

    #[test]
    fn substitutions_are_inverse(coeffs in prop::collection::vec(-4i64..5, 1..10)) {
        let mut s = MSeries::zero(2, 4);
        for (k, c) in coeffs.iter().enumerate() {
            let e = vec![(k % 3) as u32, (k / 3 % 2) as u32];
            let term = MSeries::monomial(2, 4, e, BigRational::from_integer((*c).into()));
            s = s.add(&term);
        }
        let there = s.restricted_transform().unwrap();
        prop_assert_eq!(there.unrestricted_transform().unwrap(), s);
    }
}

#[test]
fn restricted_series_matches_restricted_enumeration() {
    let gf = TowerGf::new(widths(), 5).unwrap();
    let restricted = gf.restricted_total().unwrap();
    for nvec in somino::verify::nvecs(2, 5) {
        let spec = EnumSpec::new(widths(), nvec.clone(), ClassSpec::AnyConvexBottom)
            .unwrap()
            .restricted(true);
        let n = enumerate(&spec).unwrap().len();
        assert_eq!(restricted.coefficient(&nvec), BigRational::from_integer((n as i64).into()), "{nvec:?}");
    }
}
