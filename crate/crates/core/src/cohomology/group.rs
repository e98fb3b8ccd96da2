//! Cocycles, coboundaries and cohomology through lattices in `(Z/e)^N`.
//!
//! `B ≅ ⊕ Z/dⱼ` is embedded in `(Z/e)^r` (with `e` the exponent) by scaling
//! coordinate `j` with `e/dⱼ`. A normalized `n`-cochain then becomes a vector
//! with one block of `r` entries per tuple of non-identity arguments, and the
//! differential becomes a linear map of such vectors.

use std::collections::HashMap;

use super::lattice::Lattice;
use super::{index_of, tuple_of, Cochain, CohomologyError};
use crate::fingroup::{decompose_abelian, AbelianAction, AbelianDecomposition};
use crate::limits::{power, BudgetExceeded, Limits};
use crate::snf::smith;

/// Cap on the size of an enumerated cohomology or cocycle group.
const MAX_ENUMERATED: u128 = 1 << 22;

#[derive(Debug, Clone)]
struct Coords {
    action: AbelianAction,
    decomposition: AbelianDecomposition,
    e: i64,
    scale: Vec<i64>,
    c: usize,
}

impl Coords {
    fn new(action: &AbelianAction) -> Self {
        let decomposition = decompose_abelian(action.module()).expect("module is abelian");
        let e = decomposition.exponent() as i64;
        let scale = decomposition.orders.iter().map(|&d| e / d as i64).collect();
        Coords { action: action.clone(), decomposition, e, scale, c: action.actor().order() }
    }

    fn r(&self) -> usize {
        self.scale.len()
    }

    /// Non-identity tuples of length `n` in index order.
    fn tuples(&self, n: usize) -> Vec<Vec<usize>> {
        (0..self.c.pow(n as u32))
            .map(|i| tuple_of(i, n, self.c))
            .filter(|t| !t.contains(&0))
            .collect()
    }

    fn dim(&self, n: usize) -> usize {
        (self.c - 1).pow(n as u32) * self.r()
    }

    fn to_vec(&self, cochain: &Cochain) -> Vec<i64> {
        let r = self.r();
        let mut v = Vec::with_capacity(self.dim(cochain.degree()));
        for t in self.tuples(cochain.degree()) {
            let coords = self.decomposition.coords(cochain.at(&t));
            for j in 0..r {
                v.push(coords[j] as i64 * self.scale[j]);
            }
        }
        v
    }

    fn from_vec(&self, n: usize, v: &[i64]) -> Cochain {
        let r = self.r();
        let mut values = vec![0; self.c.pow(n as u32)];
        for (k, t) in self.tuples(n).into_iter().enumerate() {
            let coords: Vec<i64> = (0..r).map(|j| v[k * r + j].rem_euclid(self.e) / self.scale[j]).collect();
            values[index_of(&t, self.c)] = self.decomposition.element(&coords);
        }
        Cochain::new(n, &self.action, values).expect("vector decodes to a normalized cochain")
    }

    /// Basis cochains of degree `n`: generator `j` placed at one tuple.
    fn basis(&self, n: usize) -> Vec<(Cochain, Vec<i64>)> {
        let r = self.r();
        let tuples = self.tuples(n);
        let dim = self.dim(n);
        let mut out = Vec::with_capacity(dim);
        for (k, t) in tuples.iter().enumerate() {
            for j in 0..r {
                let mut values = vec![0; self.c.pow(n as u32)];
                values[index_of(t, self.c)] = self.decomposition.generators[j];
                let cochain = Cochain { degree: n, action: self.action.clone(), values };
                let mut unit = vec![0; dim];
                unit[k * r + j] = self.scale[j];
                out.push((cochain, unit));
            }
        }
        out
    }

    /// Howell form of `{[d(x) | x]}` over degree-`n` cochains `x`.
    fn augmented(&self, n: usize) -> Lattice {
        let (rows, cols) = (self.dim(n + 1), self.dim(n));
        let mut lat = Lattice::zero(rows + cols, self.e);
        for (cochain, unit) in self.basis(n) {
            let mut v = self.to_vec(&cochain.differential().expect("degree at most 3"));
            v.extend(unit);
            lat.insert(&v);
        }
        lat
    }

    fn coboundaries(&self, n: usize) -> Lattice {
        let mut lat = Lattice::zero(self.dim(n), self.e);
        for (cochain, _) in self.basis(n - 1) {
            lat.insert(&self.to_vec(&cochain.differential().expect("degree at most 3")));
        }
        lat
    }

    fn cocycles(&self, n: usize) -> Lattice {
        self.augmented(n).tail(self.dim(n + 1))
    }
}

fn check_size(action: &AbelianAction, n: usize, limits: &Limits) -> Result<(), BudgetExceeded> {
    let r = decompose_abelian(action.module()).map_or(0, |d| d.rank());
    let needed = power(action.actor().order(), n + 1).saturating_mul(r.max(1) as u128);
    if needed > limits.matrix as u128 {
        Err(BudgetExceeded { needed, budget: limits.matrix })
    } else {
        Ok(())
    }
}

/// `Hⁿ(C, B)` with invariant factors `d₁ | d₂ | …`, one representative per factor.
#[derive(Debug, Clone)]
pub struct CohomologyGroup {
    pub degree: usize,
    pub invariant_factors: Vec<usize>,
    pub representatives: Vec<Cochain>,
    coords: Coords,
    coboundaries: Lattice,
    classes: HashMap<Vec<i64>, Vec<i64>>,
    v: Vec<Vec<i64>>,
    keep: Vec<usize>,
}

impl CohomologyGroup {
    pub fn order(&self) -> usize {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn action(&self) -> &AbelianAction {
        &self.coords.action
    }

    /// Coordinates of the class of a cocycle in the invariant-factor presentation.
    pub fn decompose(&self, cocycle: &Cochain) -> Result<Vec<usize>, CohomologyError> {
        if cocycle.degree() != self.degree || cocycle.action() != &self.coords.action {
            return Err(CohomologyError::ActionMismatch);
        }
        if !cocycle.is_cocycle() {
            return Err(CohomologyError::NotACocycle);
        }
        let canon = self.coboundaries.reduce(&self.coords.to_vec(cocycle));
        let x = &self.classes[&canon];
        Ok(self
            .keep
            .iter()
            .zip(&self.invariant_factors)
            .map(|(&col, &d)| {
                let y: i64 = x.iter().zip(&self.v).map(|(xi, row)| xi * row[col]).sum();
                y.rem_euclid(d as i64) as usize
            })
            .collect())
    }

    /// One cocycle per class: `Σ aᵢ·repᵢ` for `0 ≤ aᵢ < dᵢ`, with the zero class first.
    pub fn class_representatives(&self) -> Vec<Cochain> {
        let mut out = vec![Cochain::zero(self.degree, &self.coords.action)];
        for (rep, &d) in self.representatives.iter().zip(&self.invariant_factors) {
            let mut next = Vec::with_capacity(out.len() * d);
            for base in &out {
                let mut c = base.clone();
                for _ in 0..d {
                    next.push(c.clone());
                    c = c.add(rep).expect("same module");
                }
            }
            out = next;
        }
        out
    }

    /// Whether two cocycles define the same class.
    pub fn same_class(&self, a: &Cochain, b: &Cochain) -> Result<bool, CohomologyError> {
        Ok(self.decompose(a)? == self.decompose(b)?)
    }
}

pub fn cohomology_group(n: usize, action: &AbelianAction) -> Result<CohomologyGroup, CohomologyError> {
    cohomology_group_with(n, action, &Limits::default())
}

pub fn cohomology_group_with(
    n: usize,
    action: &AbelianAction,
    limits: &Limits,
) -> Result<CohomologyGroup, CohomologyError> {
    if !(1..=3).contains(&n) {
        return Err(CohomologyError::UnsupportedDegree(n));
    }
    check_size(action, n, limits)?;
    let coords = Coords::new(action);
    let cocycles = coords.cocycles(n);
    let coboundaries = coords.coboundaries(n);
    let order = cocycles.size() / coboundaries.size();
    if order > MAX_ENUMERATED {
        return Err(BudgetExceeded { needed: order, budget: MAX_ENUMERATED as u64 }.into());
    }
    let gens: Vec<Vec<i64>> = cocycles.generators().cloned().collect();
    let k = gens.len();
    let e = coords.e;
    let add = |a: &[i64], b: &[i64]| -> Vec<i64> { a.iter().zip(b).map(|(x, y)| (x + y) % e).collect() };

    // incremental presentation of Z/B on the Howell generators of Z
    let zero = vec![0i64; coords.dim(n)];
    let mut classes: HashMap<Vec<i64>, Vec<i64>> = HashMap::from([(zero.clone(), vec![0; k])]);
    let mut members = vec![zero];
    let mut relations = Vec::with_capacity(k);
    for (i, g) in gens.iter().enumerate() {
        let mut m = 1i64;
        let mut x = coboundaries.reduce(g);
        while !classes.contains_key(&x) {
            x = coboundaries.reduce(&add(&x, g));
            m += 1;
        }
        let mut rel: Vec<i64> = classes[&x].iter().map(|c| -c).collect();
        rel[i] += m;
        relations.push(rel);
        let old = members.clone();
        let mut step = vec![0i64; g.len()];
        for t in 1..m {
            step = add(&step, g);
            for h in &old {
                let y = coboundaries.reduce(&add(h, &step));
                let mut c = classes[h].clone();
                c[i] += t;
                classes.insert(y.clone(), c);
                members.push(y);
            }
        }
    }
    debug_assert_eq!(members.len() as u128, order);

    let s = smith(&relations, k);
    let keep: Vec<usize> = (0..k).filter(|&i| s.diagonal[i] != 1).collect();
    let invariant_factors: Vec<usize> = keep.iter().map(|&i| s.diagonal[i] as usize).collect();
    let representatives = keep
        .iter()
        .map(|&i| {
            let mut v = vec![0i64; coords.dim(n)];
            for (j, g) in gens.iter().enumerate() {
                let c = s.v_inv[i][j].rem_euclid(e);
                for (slot, x) in v.iter_mut().zip(g) {
                    *slot = (*slot + c * x) % e;
                }
            }
            coords.from_vec(n, &v)
        })
        .collect();
    Ok(CohomologyGroup {
        degree: n,
        invariant_factors,
        representatives,
        coords,
        coboundaries,
        classes,
        v: s.v,
        keep,
    })
}

/// `Zⁿ(C, B)` as an explicit finite group of cochains.
#[derive(Debug, Clone)]
pub struct CocycleGroup {
    pub degree: usize,
    /// All cocycles, zero first, then in lexicographic order of values.
    pub elements: Vec<Cochain>,
    index: HashMap<Vec<usize>, usize>,
}

impl CocycleGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, c: &Cochain) -> Option<usize> {
        self.index.get(c.values()).copied()
    }
}

pub fn cocycle_group(n: usize, action: &AbelianAction, limits: &Limits) -> Result<CocycleGroup, CohomologyError> {
    if n > 3 {
        return Err(CohomologyError::DegreeTooHigh(n));
    }
    check_size(action, n, limits)?;
    let coords = Coords::new(action);
    let lat = coords.cocycles(n);
    let size = lat.size();
    limits.charge(size)?;
    if size > MAX_ENUMERATED {
        return Err(BudgetExceeded { needed: size, budget: MAX_ENUMERATED as u64 }.into());
    }
    let e = coords.e;
    let gens: Vec<Vec<i64>> = lat.generators().cloned().collect();
    let zero = vec![0i64; coords.dim(n)];
    let mut seen = std::collections::HashSet::from([zero.clone()]);
    let mut all = vec![zero];
    let mut i = 0;
    while i < all.len() {
        for g in &gens {
            let y: Vec<i64> = all[i].iter().zip(g).map(|(a, b)| (a + b) % e).collect();
            if seen.insert(y.clone()) {
                all.push(y);
            }
        }
        i += 1;
    }
    let mut elements: Vec<Cochain> = all.iter().map(|v| coords.from_vec(n, v)).collect();
    elements.sort_by(|a, b| a.values().cmp(b.values()));
    let index = elements.iter().enumerate().map(|(i, c)| (c.values().to_vec(), i)).collect();
    Ok(CocycleGroup { degree: n, elements, index })
}

/// A cochain `b` with `d(b) = c`, if `c` is a coboundary.
pub fn is_coboundary(c: &Cochain) -> Result<Option<Cochain>, CohomologyError> {
    let n = c.degree();
    if n > 3 || !c.is_cocycle() {
        return Err(CohomologyError::NotACocycle);
    }
    if c.is_zero() {
        return Ok(Some(Cochain::zero(n.saturating_sub(1), c.action())));
    }
    if n == 0 {
        return Ok(None);
    }
    let coords = Coords::new(c.action());
    if coords.r() == 0 {
        return Ok(Some(Cochain::zero(n - 1, c.action())));
    }
    let lat = coords.augmented(n - 1);
    let split = coords.dim(n);
    let mut v = coords.to_vec(c);
    v.extend(std::iter::repeat_n(0, coords.dim(n - 1)));
    let reduced = lat.reduce(&v);
    if reduced[..split].iter().any(|&x| x != 0) {
        return Ok(None);
    }
    let witness: Vec<i64> = reduced[split..].iter().map(|&x| (-x).rem_euclid(coords.e)).collect();
    let b = coords.from_vec(n - 1, &witness);
    debug_assert_eq!(b.differential().ok().as_ref(), Some(c));
    Ok(Some(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::brute;
    use crate::fingroup::{catalog, Homomorphism};

    fn triv(c: usize, b: usize) -> AbelianAction {
        AbelianAction::trivial(&catalog::cyclic(c), &catalog::cyclic(b)).unwrap()
    }

    fn inversion_z2_z3() -> AbelianAction {
        AbelianAction::new(&catalog::cyclic(2), &catalog::cyclic(3), &[vec![0, 1, 2], vec![0, 2, 1]]).unwrap()
    }

    #[test]
    fn h2_examples() {
        assert_eq!(cohomology_group(2, &triv(2, 2)).unwrap().invariant_factors, vec![2]);
        assert_eq!(cohomology_group(2, &triv(3, 3)).unwrap().invariant_factors, vec![3]);
        assert!(cohomology_group(2, &inversion_z2_z3()).unwrap().is_trivial());
        assert_eq!(cocycle_group(1, &triv(2, 2), &Limits::default()).unwrap().order(), 2);
    }

    #[test]
    fn trivial_actor_has_trivial_cohomology() {
        for n in 1..=3 {
            let a = AbelianAction::trivial(&crate::fingroup::FiniteGroup::trivial(), &catalog::cyclic(4)).unwrap();
            assert!(cohomology_group(n, &a).unwrap().is_trivial());
        }
    }

    #[test]
    fn representatives_decompose_to_unit_vectors() {
        let v4 = catalog::elementary_abelian(2, 2);
        let actions = vec![
            triv(2, 2),
            triv(4, 2),
            AbelianAction::trivial(&v4, &catalog::cyclic(2)).unwrap(),
            AbelianAction::trivial(&catalog::cyclic(2), &v4).unwrap(),
            AbelianAction::trivial(&catalog::cyclic(4), &catalog::cyclic(4)).unwrap(),
        ];
        for a in actions {
            for n in 1..=3 {
                let h = cohomology_group(n, &a).unwrap();
                for (i, rep) in h.representatives.iter().enumerate() {
                    assert!(rep.is_cocycle());
                    let mut unit = vec![0; h.invariant_factors.len()];
                    unit[i] = 1;
                    assert_eq!(h.decompose(rep).unwrap(), unit);
                }
            }
        }
    }

    #[test]
    fn z4_extension_cocycle_is_not_a_coboundary() {
        // carry cocycle of Z4 = Z2 ⋉ Z2: ε(1,1) = 1
        let a = triv(2, 2);
        let eps = Cochain::new(2, &a, vec![0, 0, 0, 1]).unwrap();
        assert_eq!(is_coboundary(&eps).unwrap(), None);
        assert_eq!(brute::coboundary_witness(&eps).unwrap(), None);
        let zero = Cochain::zero(2, &a);
        assert_eq!(is_coboundary(&zero).unwrap(), Some(Cochain::zero(1, &a)));
    }

    #[test]
    fn d3_of_three_cochain_requires_cocycle() {
        let a = triv(2, 2);
        let c = Cochain::new(1, &a, vec![0, 1]).unwrap();
        assert!(is_coboundary(&c).unwrap().is_none());
        let s3 = catalog::symmetric3();
        let b = AbelianAction::trivial(&s3, &catalog::cyclic(2)).unwrap();
        let bad = Cochain::from_fn(2, &b, |t| usize::from(t == [1, 1]));
        assert_eq!(is_coboundary(&bad).unwrap_err(), CohomologyError::NotACocycle);
    }

    #[test]
    fn pullback_sends_coboundaries_to_coboundaries() {
        let z4 = catalog::cyclic(4);
        let a = triv(2, 2);
        let psi = Homomorphism::new(&z4, &catalog::cyclic(2), vec![0, 1, 0, 1]).unwrap();
        let h = cohomology_group(2, &a).unwrap();
        let eps = h.representatives[0].clone();
        // the carry cocycle pulls back to a coboundary along Z4 → Z2
        let pulled = eps.pullback(&psi);
        assert!(is_coboundary(&pulled).unwrap().is_some());
    }
}
