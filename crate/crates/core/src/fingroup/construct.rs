//! Subgroups, quotients, products, pullbacks and semidirect products.

use std::collections::HashMap;

use super::{FiniteGroup, Homomorphism};

/// A subgroup with its own dense indexing; index `i` is parent element `elements[i]`.
#[derive(Debug, Clone)]
pub struct Subgroup {
    pub group: FiniteGroup,
    pub elements: Vec<usize>,
    pub inclusion: Homomorphism,
    position: Vec<Option<usize>>,
}

impl Subgroup {
    /// `elems` must be a subgroup of `parent` (checked in debug builds).
    pub fn new(parent: &FiniteGroup, elems: &[usize]) -> Subgroup {
        debug_assert!(parent.is_subgroup(elems));
        let mut elements = elems.to_vec();
        elements.sort_unstable();
        elements.dedup();
        let mut position = vec![None; parent.order()];
        for (i, &x) in elements.iter().enumerate() {
            position[x] = Some(i);
        }
        let group = FiniteGroup::from_fn_unchecked(elements.len(), |a, b| {
            position[parent.mul(elements[a], elements[b])].unwrap()
        });
        let inclusion = Homomorphism::new_unchecked(&group, parent, elements.clone());
        Subgroup { group, elements, inclusion, position }
    }

    pub fn generated(parent: &FiniteGroup, gens: &[usize]) -> Subgroup {
        Subgroup::new(parent, &parent.closure(gens))
    }

    /// Local index of a parent element, if it lies in the subgroup.
    pub fn index_of(&self, x: usize) -> Option<usize> {
        self.position[x]
    }
}

/// `G/N` with cosets ordered by their smallest element.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: FiniteGroup,
    pub projection: Homomorphism,
    /// Smallest element of each coset.
    pub representatives: Vec<usize>,
}

impl Quotient {
    /// `normal` must be a normal subgroup of `parent` (checked in debug builds).
    pub fn new(parent: &FiniteGroup, normal: &[usize]) -> Quotient {
        debug_assert!(parent.is_normal(normal));
        let mut coset = vec![usize::MAX; parent.order()];
        let mut representatives = Vec::new();
        for g in parent.elements() {
            if coset[g] == usize::MAX {
                let c = representatives.len();
                representatives.push(g);
                for &n in normal {
                    coset[parent.mul(g, n)] = c;
                }
            }
        }
        let group = FiniteGroup::from_fn_unchecked(representatives.len(), |a, b| {
            coset[parent.mul(representatives[a], representatives[b])]
        });
        let projection = Homomorphism::new_unchecked(parent, &group, coset);
        Quotient { group, projection, representatives }
    }
}

/// A group on pairs `(a, b)` stored at index `a + left·b`, as used by direct and semidirect products.
#[derive(Debug, Clone)]
pub struct PairGroup {
    pub group: FiniteGroup,
    pub left: usize,
}

impl PairGroup {
    #[inline]
    pub fn pair(&self, a: usize, b: usize) -> usize {
        a + self.left * b
    }

    #[inline]
    pub fn split(&self, x: usize) -> (usize, usize) {
        (x % self.left, x / self.left)
    }
}

/// `A × B`.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> PairGroup {
    let left = a.order();
    let group = FiniteGroup::from_fn_unchecked(left * b.order(), |x, y| {
        a.mul(x % left, y % left) + left * b.mul(x / left, y / left)
    });
    PairGroup { group, left }
}

/// `N ⋊ H` with `(n, h)(n′, h′) = (n · θ(h, n′), h h′)`; `theta` must be an action by automorphisms.
pub fn semidirect_product(
    n: &FiniteGroup,
    h: &FiniteGroup,
    theta: impl Fn(usize, usize) -> usize,
) -> PairGroup {
    let left = n.order();
    let group = FiniteGroup::from_fn_unchecked(left * h.order(), |x, y| {
        let (n1, h1) = (x % left, x / left);
        let (n2, h2) = (y % left, y / left);
        n.mul(n1, theta(h1, n2)) + left * h.mul(h1, h2)
    });
    PairGroup { group, left }
}

/// `A ×_C B = {(a, b) | f(a) = g(b)}`, elements sorted by `(b, a)` so the identity comes first.
#[derive(Debug, Clone)]
pub struct Pullback {
    pub group: FiniteGroup,
    pub pairs: Vec<(usize, usize)>,
    pub left: Homomorphism,
    pub right: Homomorphism,
    index: HashMap<(usize, usize), usize>,
}

impl Pullback {
    pub fn new(f: &Homomorphism, g: &Homomorphism) -> Pullback {
        let (a, b) = (f.source(), g.source());
        let mut pairs = Vec::new();
        for y in b.elements() {
            for x in a.elements() {
                if f.apply(x) == g.apply(y) {
                    pairs.push((x, y));
                }
            }
        }
        let index: HashMap<(usize, usize), usize> =
            pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let group = FiniteGroup::from_fn_unchecked(pairs.len(), |i, j| {
            let (x1, y1) = pairs[i];
            let (x2, y2) = pairs[j];
            index[&(a.mul(x1, x2), b.mul(y1, y2))]
        });
        let left = Homomorphism::new_unchecked(&group, a, pairs.iter().map(|p| p.0).collect());
        let right = Homomorphism::new_unchecked(&group, b, pairs.iter().map(|p| p.1).collect());
        Pullback { group, pairs, left, right, index }
    }

    pub fn index_of(&self, a: usize, b: usize) -> Option<usize> {
        self.index.get(&(a, b)).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingroup::catalog;

    fn assert_group_axioms(g: &FiniteGroup) {
        for x in g.elements() {
            assert_eq!(g.mul(0, x), x);
            assert_eq!(g.mul(x, g.inv(x)), 0);
            for y in g.elements() {
                for z in g.elements() {
                    assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
                }
            }
        }
    }

    #[test]
    fn center_subgroup_of_d4() {
        let d4 = catalog::dihedral(4);
        let z = Subgroup::new(&d4, &d4.center());
        assert_eq!(z.group.order(), 2);
        assert_group_axioms(&z.group);
    }

    #[test]
    fn quotient_by_center_of_d4_is_klein() {
        let d4 = catalog::dihedral(4);
        let q = Quotient::new(&d4, &d4.center());
        assert_eq!(q.group.order(), 4);
        assert!(q.group.elements().all(|x| q.group.element_order(x) <= 2));
        assert_group_axioms(&q.group);
        assert!(Homomorphism::new(&d4, &q.group, q.projection.images().to_vec()).is_ok());
    }

    #[test]
    fn z2_semidirect_z3_by_inversion_is_s3() {
        let z3 = catalog::cyclic(3);
        let z2 = catalog::cyclic(2);
        let s = semidirect_product(&z3, &z2, |h, n| if h == 0 { n } else { z3.inv(n) });
        assert_group_axioms(&s.group);
        assert!(!s.group.is_abelian());
        assert_eq!(s.group.center(), vec![0]);
    }

    #[test]
    fn pullback_over_z2() {
        let z4 = catalog::cyclic(4);
        let z2 = catalog::cyclic(2);
        let q = Homomorphism::new(&z4, &z2, vec![0, 1, 0, 1]).unwrap();
        let p = Pullback::new(&q, &q);
        assert_eq!(p.group.order(), 8);
        assert_group_axioms(&p.group);
        assert!(p.left.is_surjective());
    }
}
