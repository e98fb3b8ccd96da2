//! Small named groups used by fixtures, sweeps and tests.

use super::construct::{direct_product, semidirect_product};
use super::FiniteGroup;

#[derive(Debug, Clone)]
pub struct NamedGroup {
    pub name: String,
    pub group: FiniteGroup,
}

pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n > 0);
    FiniteGroup::from_fn_unchecked(n, |a, b| (a + b) % n)
}

pub fn product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    direct_product(a, b).group
}

/// `(Z/p)ᵏ`.
pub fn elementary_abelian(p: usize, k: usize) -> FiniteGroup {
    (0..k).fold(FiniteGroup::trivial(), |acc, _| product(&acc, &cyclic(p)))
}

/// Dihedral group of order `2n`: rotation `r` at index `i`, reflection `s·rⁱ` at `n + i`.
pub fn dihedral(n: usize) -> FiniteGroup {
    let rn = cyclic(n);
    semidirect_product(&rn, &cyclic(2), |h, x| if h == 0 { x } else { rn.inv(x) }).group
}

pub fn symmetric3() -> FiniteGroup {
    dihedral(3)
}

/// Quaternion group `{±1, ±i, ±j, ±k}`.
pub fn quaternion() -> FiniteGroup {
    // element (s, u) with s ∈ {0,1} the sign and u ∈ {1,i,j,k}; index u + 4s
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    FiniteGroup::from_fn_unchecked(8, |a, b| {
        let (s, u) = UNIT[a % 4][b % 4];
        u + 4 * ((s + a / 4 + b / 4) % 2)
    })
}

/// One representative of each isomorphism class of order at most `n` (supported up to 8).
pub fn groups_up_to(n: usize) -> Vec<NamedGroup> {
    let mut out = Vec::new();
    let mut push = |name: &str, group: FiniteGroup| {
        if group.order() <= n {
            out.push(NamedGroup { name: name.to_string(), group });
        }
    };
    push("Z1", FiniteGroup::trivial());
    push("Z2", cyclic(2));
    push("Z3", cyclic(3));
    push("Z4", cyclic(4));
    push("Z2xZ2", elementary_abelian(2, 2));
    push("Z5", cyclic(5));
    push("Z6", cyclic(6));
    push("S3", symmetric3());
    push("Z7", cyclic(7));
    push("Z8", cyclic(8));
    push("Z4xZ2", product(&cyclic(4), &cyclic(2)));
    push("Z2xZ2xZ2", elementary_abelian(2, 3));
    push("D4", dihedral(4));
    push("Q8", quaternion());
    out
}

pub fn by_name(name: &str) -> Option<FiniteGroup> {
    groups_up_to(8).into_iter().find(|g| g.name == name).map(|g| g.group)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_groups_are_groups() {
        for item in groups_up_to(8) {
            let g = &item.group;
            assert!(FiniteGroup::from_table(&g.rows()).is_ok(), "{}", item.name);
        }
    }

    #[test]
    fn distinguishing_invariants() {
        let q = quaternion();
        assert_eq!(q.elements().filter(|&x| q.element_order(x) == 2).count(), 1);
        let d = dihedral(4);
        assert_eq!(d.elements().filter(|&x| d.element_order(x) == 2).count(), 5);
        assert!(!q.is_abelian() && !d.is_abelian());
        assert_eq!(groups_up_to(4).len(), 5);
    }
}
