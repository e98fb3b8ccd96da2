use std::collections::HashMap;

use super::{FiniteGroup, HomSearch, Homomorphism, Quotient, Subgroup};
use crate::limits::{BudgetExceeded, Limits};

/// Center, automorphism group, inner and outer automorphisms, and `conj: G → Aut(G)`.
///
/// Automorphisms are listed in lexicographic order of their image tuples, so the
/// identity automorphism has index 0. Composition in `automorphisms` is
/// `(a ∘ b)(x) = a(b(x))`.
#[derive(Debug, Clone)]
pub struct GroupStructureReport {
    pub group: FiniteGroup,
    pub center: Vec<usize>,
    pub automorphisms: FiniteGroup,
    /// `maps[a][x]` is the image of `x` under automorphism `a`.
    pub maps: Vec<Vec<usize>>,
    pub inner: Subgroup,
    pub outer: Quotient,
    pub conj: Homomorphism,
    index: HashMap<Vec<usize>, usize>,
}

impl GroupStructureReport {
    #[inline]
    pub fn eval(&self, a: usize, x: usize) -> usize {
        self.maps[a][x]
    }

    pub fn aut_index(&self, images: &[usize]) -> Option<usize> {
        self.index.get(images).copied()
    }

    /// `Aut(G) → Out(G)`.
    pub fn out_projection(&self) -> &Homomorphism {
        &self.outer.projection
    }
}

pub fn structure_of(g: &FiniteGroup) -> Result<GroupStructureReport, BudgetExceeded> {
    structure_of_with(g, &Limits::default())
}

pub fn structure_of_with(g: &FiniteGroup, limits: &Limits) -> Result<GroupStructureReport, BudgetExceeded> {
    let maps: Vec<Vec<usize>> = HomSearch::new(g, g)
        .all(limits)?
        .into_iter()
        .filter(Homomorphism::is_bijective)
        .map(|h| h.images().to_vec())
        .collect();
    let index: HashMap<Vec<usize>, usize> =
        maps.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let automorphisms = FiniteGroup::from_fn_unchecked(maps.len(), |a, b| {
        let composite: Vec<usize> = maps[b].iter().map(|&y| maps[a][y]).collect();
        index[&composite]
    });
    let conj_images: Vec<usize> = g
        .elements()
        .map(|x| {
            let m: Vec<usize> = g.elements().map(|y| g.conj(x, y)).collect();
            index[&m]
        })
        .collect();
    let conj = Homomorphism::new_unchecked(g, &automorphisms, conj_images);
    let inner = Subgroup::new(&automorphisms, &conj.image());
    let outer = Quotient::new(&automorphisms, &inner.elements);
    Ok(GroupStructureReport {
        group: g.clone(),
        center: g.center(),
        automorphisms,
        maps,
        inner,
        outer,
        conj,
        index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingroup::catalog;

    /// Oracle: all permutations of the elements that respect the table.
    fn brute_force_aut_count(g: &FiniteGroup) -> usize {
        fn rec(g: &FiniteGroup, img: &mut Vec<usize>, used: &mut Vec<bool>, count: &mut usize) {
            let n = g.order();
            if img.len() == n {
                if g.elements().all(|x| {
                    g.elements().all(|y| img[g.mul(x, y)] == g.mul(img[x], img[y]))
                }) {
                    *count += 1;
                }
                return;
            }
            for y in 0..n {
                if !used[y] {
                    used[y] = true;
                    img.push(y);
                    rec(g, img, used, count);
                    img.pop();
                    used[y] = false;
                }
            }
        }
        let mut count = 0;
        rec(g, &mut Vec::new(), &mut vec![false; g.order()], &mut count);
        count
    }

    #[test]
    fn s3() {
        let r = structure_of(&catalog::symmetric3()).unwrap();
        assert_eq!(r.center.len(), 1);
        assert_eq!(r.automorphisms.order(), 6);
        assert_eq!(r.inner.group.order(), 6);
        assert_eq!(r.outer.group.order(), 1);
    }

    #[test]
    fn z4() {
        let r = structure_of(&catalog::cyclic(4)).unwrap();
        assert_eq!(r.center.len(), 4);
        assert_eq!(r.automorphisms.order(), 2);
        assert_eq!(r.inner.group.order(), 1);
        assert_eq!(r.outer.group.order(), 2);
    }

    #[test]
    fn trivial_group() {
        let r = structure_of(&FiniteGroup::trivial()).unwrap();
        assert_eq!(r.center, vec![0]);
        assert_eq!(r.automorphisms.order(), 1);
        assert_eq!(r.outer.group.order(), 1);
    }

    #[test]
    fn invariants_on_catalog() {
        for item in catalog::groups_up_to(8) {
            let g = &item.group;
            let r = structure_of(g).unwrap();
            if g.order() <= 6 {
                assert_eq!(r.automorphisms.order(), brute_force_aut_count(g), "{}", item.name);
            }
            assert_eq!(r.maps[0], g.elements().collect::<Vec<_>>());
            for x in g.elements() {
                for y in g.elements() {
                    assert_eq!(r.eval(r.conj.apply(x), y), g.conj(x, y));
                }
            }
            assert_eq!(r.automorphisms.order(), r.inner.group.order() * r.outer.group.order());
            assert_eq!(r.conj.kernel(), r.center);
            assert!(r.automorphisms.is_normal(&r.inner.elements));
        }
    }
}
