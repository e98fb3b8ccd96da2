use thiserror::Error;

use super::FiniteGroup;
use crate::limits::{space, BudgetExceeded, Limits};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomError {
    #[error("image list has {got} entries, source has order {expected}")]
    LengthMismatch { got: usize, expected: usize },
    #[error("image of {element} is {image}, outside the target")]
    OutOfRange { element: usize, image: usize },
    #[error("not multiplicative at ({0}, {1})")]
    NotMultiplicative(usize, usize),
}

/// A group homomorphism, stored as its image table.
#[derive(Clone, PartialEq, Eq)]
pub struct Homomorphism {
    source: FiniteGroup,
    target: FiniteGroup,
    images: Vec<usize>,
}

impl std::fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Hom{:?}", self.images)
    }
}

impl Homomorphism {
    pub fn new(
        source: &FiniteGroup,
        target: &FiniteGroup,
        images: Vec<usize>,
    ) -> Result<Self, HomError> {
        if images.len() != source.order() {
            return Err(HomError::LengthMismatch { got: images.len(), expected: source.order() });
        }
        if let Some((x, &y)) = images.iter().enumerate().find(|(_, &y)| y >= target.order()) {
            return Err(HomError::OutOfRange { element: x, image: y });
        }
        for x in source.elements() {
            for y in source.elements() {
                if images[source.mul(x, y)] != target.mul(images[x], images[y]) {
                    return Err(HomError::NotMultiplicative(x, y));
                }
            }
        }
        Ok(Self::new_unchecked(source, target, images))
    }

    pub(crate) fn new_unchecked(source: &FiniteGroup, target: &FiniteGroup, images: Vec<usize>) -> Self {
        debug_assert_eq!(images.len(), source.order());
        Homomorphism { source: source.clone(), target: target.clone(), images }
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        Self::new_unchecked(g, g, g.elements().collect())
    }

    pub fn zero(source: &FiniteGroup, target: &FiniteGroup) -> Self {
        Self::new_unchecked(source, target, vec![0; source.order()])
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `self ∘ first`
    pub fn after(&self, first: &Homomorphism) -> Homomorphism {
        debug_assert!(first.target == self.source);
        let images = first.images.iter().map(|&y| self.images[y]).collect();
        Self::new_unchecked(&first.source, &self.target, images)
    }

    pub fn kernel(&self) -> Vec<usize> {
        self.source.elements().filter(|&x| self.images[x] == 0).collect()
    }

    /// Image elements in increasing order.
    pub fn image(&self) -> Vec<usize> {
        let mut hit = vec![false; self.target.order()];
        for &y in &self.images {
            hit[y] = true;
        }
        (0..hit.len()).filter(|&y| hit[y]).collect()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().len() == 1
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.target.order()
    }

    pub fn is_bijective(&self) -> bool {
        self.source.order() == self.target.order() && self.is_injective()
    }

    pub fn is_trivial(&self) -> bool {
        self.images.iter().all(|&y| y == 0)
    }

    pub fn inverse(&self) -> Option<Homomorphism> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Some(Self::new_unchecked(&self.target, &self.source, inv))
    }

    /// Preimage of `y` with the smallest index, if any.
    pub fn first_preimage(&self, y: usize) -> Option<usize> {
        self.images.iter().position(|&z| z == y)
    }
}

type Filter<'a> = Box<dyn Fn(usize, usize) -> bool + 'a>;

/// Backtracking search for homomorphisms with optional pinned images and per-element filters.
///
/// Only generator images are branched on; everything else is forced by closure,
/// so the search space is `Π |candidates(gᵢ)|` over the deterministic generators.
pub struct HomSearch<'a> {
    source: &'a FiniteGroup,
    target: &'a FiniteGroup,
    fixed: Vec<Option<usize>>,
    filter: Option<Filter<'a>>,
}

impl<'a> HomSearch<'a> {
    pub fn new(source: &'a FiniteGroup, target: &'a FiniteGroup) -> Self {
        HomSearch { source, target, fixed: vec![None; source.order()], filter: None }
    }

    /// Pins `x ↦ y`. Conflicting pins make the search empty.
    pub fn fix(mut self, x: usize, y: usize) -> Self {
        match self.fixed[x] {
            Some(z) if z != y => self.fixed[x] = Some(usize::MAX),
            _ => self.fixed[x] = Some(y),
        }
        self
    }

    /// Only admit maps with `allowed(x, image(x))` for every `x`.
    pub fn filter(mut self, allowed: impl Fn(usize, usize) -> bool + 'a) -> Self {
        self.filter = Some(Box::new(allowed));
        self
    }

    fn admissible(&self, x: usize, y: usize) -> bool {
        match self.fixed[x] {
            Some(z) if z != y => return false,
            _ => {}
        }
        self.filter.as_ref().is_none_or(|f| f(x, y))
    }

    /// All homomorphisms, lexicographic in their image tuples.
    pub fn all(&self, limits: &Limits) -> Result<Vec<Homomorphism>, BudgetExceeded> {
        let mut out = Vec::new();
        self.run(limits, &mut |h| {
            out.push(h);
            true
        })?;
        out.sort_by(|a, b| a.images.cmp(&b.images));
        Ok(out)
    }

    pub fn first(&self, limits: &Limits) -> Result<Option<Homomorphism>, BudgetExceeded> {
        let mut found = None;
        self.run(limits, &mut |h| {
            found = Some(h);
            false
        })?;
        Ok(found)
    }

    pub fn count(&self, limits: &Limits) -> Result<usize, BudgetExceeded> {
        let mut n = 0;
        self.run(limits, &mut |_| {
            n += 1;
            true
        })?;
        Ok(n)
    }

    /// Visits every solution; the visitor returns `false` to stop early.
    pub fn run(
        &self,
        limits: &Limits,
        visit: &mut dyn FnMut(Homomorphism) -> bool,
    ) -> Result<(), BudgetExceeded> {
        if self.fixed.iter().any(|f| *f == Some(usize::MAX)) || !self.admissible(0, 0) {
            return Ok(());
        }
        let gens = self.source.generators();
        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| {
                let ord = self.source.element_order(g);
                self.target
                    .elements()
                    .filter(|&y| ord % self.target.element_order(y) == 0 && self.admissible(g, y))
                    .collect()
            })
            .collect();
        limits.charge(space(candidates.iter().map(Vec::len)))?;
        let mut img = vec![usize::MAX; self.source.order()];
        img[0] = 0;
        let known = vec![0];
        self.descend(gens, &candidates, 0, img, known, visit);
        Ok(())
    }

    fn descend(
        &self,
        gens: &[usize],
        candidates: &[Vec<usize>],
        level: usize,
        img: Vec<usize>,
        known: Vec<usize>,
        visit: &mut dyn FnMut(Homomorphism) -> bool,
    ) -> bool {
        if level == gens.len() {
            return visit(Homomorphism::new_unchecked(self.source, self.target, img));
        }
        for &c in &candidates[level] {
            let mut img = img.clone();
            let mut known = known.clone();
            // greedy generators never lie in the span of earlier ones
            img[gens[level]] = c;
            known.push(gens[level]);
            if !self.close(&gens[..=level], &mut img, &mut known) {
                continue;
            }
            if !self.descend(gens, candidates, level + 1, img, known, visit) {
                return false;
            }
        }
        true
    }

    /// Extends `img` over the subgroup generated by `gens`; false on any conflict.
    fn close(&self, gens: &[usize], img: &mut [usize], known: &mut Vec<usize>) -> bool {
        let (s, t) = (self.source, self.target);
        let mut i = 0;
        while i < known.len() {
            let a = known[i];
            for &g in gens {
                let b = s.mul(a, g);
                let expected = t.mul(img[a], img[g]);
                if img[b] == usize::MAX {
                    if !self.admissible(b, expected) {
                        return false;
                    }
                    img[b] = expected;
                    known.push(b);
                } else if img[b] != expected {
                    return false;
                }
            }
            i += 1;
        }
        true
    }
}

/// All homomorphisms `g → h` in lexicographic order of image tuples.
pub fn enumerate_homs(g: &FiniteGroup, h: &FiniteGroup) -> Result<Vec<Homomorphism>, BudgetExceeded> {
    enumerate_homs_with(g, h, &Limits::default())
}

pub fn enumerate_homs_with(
    g: &FiniteGroup,
    h: &FiniteGroup,
    limits: &Limits,
) -> Result<Vec<Homomorphism>, BudgetExceeded> {
    HomSearch::new(g, h).all(limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingroup::catalog;

    /// Oracle: every map fixing the identity, checked against the full table.
    fn brute_force_homs(g: &FiniteGroup, h: &FiniteGroup) -> Vec<Vec<usize>> {
        let n = g.order();
        let m = h.order();
        let total = m.pow(n as u32 - 1);
        let mut out = Vec::new();
        for code in 0..total {
            let mut images = vec![0; n];
            let mut c = code;
            for slot in images.iter_mut().skip(1).rev() {
                *slot = c % m;
                c /= m;
            }
            if g.elements().all(|x| {
                g.elements()
                    .all(|y| images[g.mul(x, y)] == h.mul(images[x], images[y]))
            }) {
                out.push(images);
            }
        }
        out
    }

    #[test]
    fn small_hom_counts() {
        let z2 = catalog::cyclic(2);
        let z3 = catalog::cyclic(3);
        let one = FiniteGroup::trivial();
        assert_eq!(enumerate_homs(&z2, &z2).unwrap().len(), 2);
        assert_eq!(enumerate_homs(&z3, &z2).unwrap().len(), 1);
        for g in catalog::groups_up_to(6) {
            assert_eq!(enumerate_homs(&g.group, &one).unwrap().len(), 1);
        }
    }

    #[test]
    fn matches_brute_force_on_small_pairs() {
        let groups = catalog::groups_up_to(6);
        for g in &groups {
            for h in &groups {
                if (h.group.order() as f64).powi(g.group.order() as i32) > 1e6 {
                    continue;
                }
                let fast: Vec<Vec<usize>> = enumerate_homs(&g.group, &h.group)
                    .unwrap()
                    .into_iter()
                    .map(|f| f.images)
                    .collect();
                assert_eq!(fast, brute_force_homs(&g.group, &h.group), "{} -> {}", g.name, h.name);
            }
        }
    }

    #[test]
    fn pins_and_filters() {
        let z4 = catalog::cyclic(4);
        let homs = HomSearch::new(&z4, &z4).fix(1, 3).all(&Limits::default()).unwrap();
        assert_eq!(homs.len(), 1);
        assert_eq!(homs[0].images(), &[0, 3, 2, 1]);
        let injective = HomSearch::new(&z4, &z4)
            .filter(|x, y| x == 0 || y != 0)
            .count(&Limits::default())
            .unwrap();
        assert_eq!(injective, 2);
    }

    #[test]
    fn budget_is_enforced() {
        let v = catalog::elementary_abelian(2, 3);
        let err = enumerate_homs_with(&v, &v, &Limits::default().with_candidates(10)).unwrap_err();
        assert_eq!(err.needed, 8 * 8 * 8);
    }

    #[test]
    fn validation_rejects_non_homs() {
        let z2 = catalog::cyclic(2);
        let z3 = catalog::cyclic(3);
        assert!(matches!(
            Homomorphism::new(&z3, &z2, vec![0, 1, 0]),
            Err(HomError::NotMultiplicative(..))
        ));
        assert!(matches!(
            Homomorphism::new(&z2, &z2, vec![0]),
            Err(HomError::LengthMismatch { .. })
        ));
    }
}
