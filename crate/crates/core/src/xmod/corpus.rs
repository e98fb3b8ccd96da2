//! Every crossed extension built from small groups, one per isomorphism class
//! of the underlying crossed module.

use std::collections::HashSet;

use super::{CrossedExtension, CrossedModule};
use crate::fingroup::{catalog, enumerate_homs, structure_of, Action};

#[derive(Debug, Clone)]
pub struct NamedXExt {
    pub name: String,
    pub xext: CrossedExtension,
}

/// Crossed extensions with `|G₂|, |G₁| ≤ n` (so every component has order at most `n`),
/// deduplicated up to isomorphism of crossed modules, in a deterministic order.
pub fn crossed_extensions_up_to(n: usize) -> Vec<NamedXExt> {
    let groups = catalog::groups_up_to(n);
    let mut out = Vec::new();
    for h2 in &groups {
        let s2 = structure_of(&h2.group).expect("small group");
        for h1 in &groups {
            let s1 = structure_of(&h1.group).expect("small group");
            let mut seen: HashSet<(Vec<usize>, Vec<usize>)> = HashSet::new();
            let mut k = 0;
            for d in enumerate_homs(&h2.group, &h1.group).expect("small") {
                for rho in enumerate_homs(&h1.group, &s2.automorphisms).expect("small") {
                    let act = Action::from_fn_unchecked(&h1.group, &h2.group, |g, x| s2.eval(rho.apply(g), x));
                    let Ok(xm) = CrossedModule::new(d.clone(), act) else { continue };
                    let key = canonical_key(&xm, &s1.maps, &s2.maps);
                    if seen.insert(key) {
                        out.push(NamedXExt {
                            name: format!("xm-{}-{}-{}", h2.name, h1.name, k),
                            xext: CrossedExtension::of_xmod(xm),
                        });
                        k += 1;
                    }
                }
            }
        }
    }
    out
}

/// Lexicographically smallest `(∂, act)` table over all automorphism pairs.
fn canonical_key(xm: &CrossedModule, aut1: &[Vec<usize>], aut2: &[Vec<usize>]) -> (Vec<usize>, Vec<usize>) {
    let (g1, g2) = (xm.g1(), xm.g2());
    let invert = |a: &[usize]| {
        let mut inv = vec![0; a.len()];
        for (x, &y) in a.iter().enumerate() {
            inv[y] = x;
        }
        inv
    };
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    for a1 in aut1 {
        let a1_inv = invert(a1);
        for a2 in aut2 {
            let a2_inv = invert(a2);
            let d: Vec<usize> = g2.elements().map(|x| a1[xm.d().apply(a2_inv[x])]).collect();
            let act: Vec<usize> = g1
                .elements()
                .flat_map(|g| g2.elements().map(move |x| (g, x)))
                .map(|(g, x)| a2[xm.act(a1_inv[g], a2_inv[x])])
                .collect();
            let key = (d, act);
            if best.as_ref().is_none_or(|b| &key < b) {
                best = Some(key);
            }
        }
    }
    best.expect("automorphism groups are nonempty")
}

/// `true` if some pair of automorphisms carries `a` onto `b`.
#[cfg(test)]
pub(crate) fn isomorphic(a: &CrossedModule, b: &CrossedModule) -> bool {
    if a.g1() != b.g1() || a.g2() != b.g2() {
        return false;
    }
    let s1 = structure_of(a.g1()).unwrap();
    let s2 = structure_of(a.g2()).unwrap();
    s1.maps.iter().any(|m1| {
        s2.maps.iter().any(|m2| {
            let f1 = crate::fingroup::Homomorphism::new_unchecked(a.g1(), b.g1(), m1.clone());
            let f2 = crate::fingroup::Homomorphism::new_unchecked(a.g2(), b.g2(), m2.clone());
            b.d().after(&f2) == f1.after(a.d())
                && a.g1().elements().all(|g| a.g2().elements().all(|x| f2.apply(a.act(g, x)) == b.act(f1.apply(g), f2.apply(x))))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_nonempty_and_pairwise_non_isomorphic() {
        let all = crossed_extensions_up_to(4);
        assert!(all.len() > 20);
        for (i, a) in all.iter().enumerate() {
            for b in &all[i + 1..] {
                assert!(!isomorphic(a.xext.xmod(), b.xext.xmod()), "{} ≅ {}", a.name, b.name);
            }
            assert!(a.xext.b().order() <= 4 && a.xext.c().order() <= 4);
        }
    }
}
