use std::sync::OnceLock;

use obstrukt::cohomology::{cohomology_group, is_coboundary, Cochain};
use obstrukt::fingroup::{catalog, enumerate_homs, AbelianAction, FiniteGroup};
use obstrukt::io::{serialize_object, Bundle, Object};
use obstrukt::verify;
use obstrukt::Limits;
use proptest::prelude::*;

fn modules() -> &'static [AbelianAction] {
    static MODULES: OnceLock<Vec<AbelianAction>> = OnceLock::new();
    MODULES.get_or_init(|| verify::small_modules(4, &Limits::default()).unwrap())
}

fn groups() -> &'static [FiniteGroup] {
    static GROUPS: OnceLock<Vec<FiniteGroup>> = OnceLock::new();
    GROUPS.get_or_init(|| catalog::groups_up_to(8).into_iter().map(|g| g.group).collect())
}

/// Relabels `g` by a permutation fixing the identity.
fn relabel(g: &FiniteGroup, perm: &[usize]) -> Vec<Vec<usize>> {
    let mut rows = vec![vec![0; g.order()]; g.order()];
    for a in g.elements() {
        for b in g.elements() {
            rows[perm[a]][perm[b]] = perm[g.mul(a, b)];
        }
    }
    rows
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..n).collect::<Vec<_>>()).prop_shuffle().prop_map(|rest| {
        let mut p = vec![0];
        p.extend(rest);
        p
    })
}

fn cochain(m: &AbelianAction, degree: usize, seed: &[usize]) -> Cochain {
    let order = m.module().order();
    let mut i = 0;
    Cochain::from_fn(degree, m, |_| {
        i += 1;
        seed[i % seed.len()] % order
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn relabelled_tables_are_groups((g, perm) in (0..groups().len()).prop_flat_map(|i| (Just(i), permutation(groups()[i].order())))) {
        let g = &groups()[g];
        let h = FiniteGroup::from_table(&relabel(g, &perm)).unwrap();
        prop_assert_eq!(h.order(), g.order());
        for a in h.elements() {
            prop_assert_eq!(h.mul(a, h.inv(a)), h.identity());
            prop_assert_eq!(h.mul(h.identity(), a), a);
            for b in h.elements() {
                for c in h.elements() {
                    prop_assert_eq!(h.mul(h.mul(a, b), c), h.mul(a, h.mul(b, c)));
                }
            }
        }
        prop_assert_eq!(h.closure(h.generators()).len(), h.order());
    }

    #[test]
    fn group_blocks_round_trip((g, perm) in (0..groups().len()).prop_flat_map(|i| (Just(i), permutation(groups()[i].order())))) {
        let h = FiniteGroup::from_table(&relabel(&groups()[g], &perm)).unwrap();
        let text = serialize_object("G", &Object::Group(h.clone()));
        let mut bundle = Bundle::new();
        let names = bundle.parse_str("random", &text).unwrap();
        prop_assert_eq!(bundle.group("G").unwrap().rows(), h.rows());
        prop_assert_eq!(bundle.serialize(&names).unwrap(), text);
    }

    #[test]
    fn composites_of_homs_are_homs(a in 0..12usize, b in 0..12usize, c in 0..12usize, i in any::<usize>(), j in any::<usize>()) {
        let gs = groups();
        let (x, y, z) = (&gs[a % gs.len()], &gs[b % gs.len()], &gs[c % gs.len()]);
        let f = enumerate_homs(x, y).unwrap();
        let g = enumerate_homs(y, z).unwrap();
        let (f, g) = (&f[i % f.len()], &g[j % g.len()]);
        let h = g.after(f);
        for u in x.elements() {
            prop_assert_eq!(h.apply(u), g.apply(f.apply(u)));
            for v in x.elements() {
                prop_assert_eq!(h.apply(x.mul(u, v)), z.mul(h.apply(u), h.apply(v)));
            }
        }
    }

    #[test]
    fn differential_squares_to_zero(m in 0..1000usize, degree in 0..3usize, seed in prop::collection::vec(0..64usize, 1..40)) {
        let m = &modules()[m % modules().len()];
        let c = cochain(m, degree, &seed);
        let dd = c.differential().unwrap().differential().unwrap();
        prop_assert!(dd.is_zero());
    }

    #[test]
    fn coboundaries_have_witnesses(m in 0..1000usize, degree in 1..3usize, seed in prop::collection::vec(0..64usize, 1..40)) {
        let m = &modules()[m % modules().len()];
        let dc = cochain(m, degree - 1, &seed).differential().unwrap();
        let w = is_coboundary(&dc).unwrap();
        prop_assert_eq!(w.map(|w| w.differential().unwrap()), Some(dc));
    }

    #[test]
    fn class_coordinates_ignore_coboundaries(m in 0..1000usize, pick in any::<usize>(), seed in prop::collection::vec(0..64usize, 1..40)) {
        let m = &modules()[m % modules().len()];
        let h = cohomology_group(2, m).unwrap();
        let reps = h.class_representatives();
        prop_assert_eq!(reps.len(), h.order());
        let k = pick % reps.len();
        let shifted = reps[k].add(&cochain(m, 1, &seed).differential().unwrap()).unwrap();
        prop_assert_eq!(h.decompose(&shifted).unwrap(), h.decompose(&reps[k]).unwrap());
        // coordinates are additive
        let l = (pick / 7) % reps.len();
        let sum = reps[k].add(&reps[l]).unwrap();
        let expected: Vec<usize> = h.decompose(&reps[k]).unwrap().iter()
            .zip(h.decompose(&reps[l]).unwrap())
            .zip(&h.invariant_factors)
            .map(|((a, b), d)| (a + b) % d)
            .collect();
        prop_assert_eq!(h.decompose(&sum).unwrap(), expected);
    }
}
