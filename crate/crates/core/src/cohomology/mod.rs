//! Normalized bar-resolution cochains and their cohomology.
//!
//! An `n`-cochain stores one value per tuple in `Cⁿ`, indexed lexicographically
//! with the first argument most significant. Normalized cochains vanish on any
//! tuple containing the identity.

pub mod brute;
mod group;
mod lattice;

use thiserror::Error;

use crate::fingroup::{AbelianAction, FiniteGroup, Homomorphism};
use crate::limits::BudgetExceeded;

pub use group::{cocycle_group, cohomology_group, cohomology_group_with, is_coboundary, CocycleGroup, CohomologyGroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("differential of a degree {0} cochain is not supported")]
    DegreeTooHigh(usize),
    #[error("cohomology in degree {0} is not supported (expected 1, 2 or 3)")]
    UnsupportedDegree(usize),
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("cochain value at {0:?} must vanish (identity argument)")]
    NotNormalized(Vec<usize>),
    #[error("cochain has {got} values, expected {expected}")]
    WrongLength { got: usize, expected: usize },
    #[error("value {0} is outside the module")]
    OutOfRange(usize),
    #[error("cochains live over different actions")]
    ActionMismatch,
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

/// A normalized cochain `Cⁿ → B` over a module `B` of `C`.
#[derive(Clone, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    action: AbelianAction,
    values: Vec<usize>,
}

impl std::fmt::Debug for Cochain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Cochain{}{:?}", self.degree, self.values)
    }
}

/// Decodes a flat index into its argument tuple.
pub(crate) fn tuple_of(mut index: usize, degree: usize, c: usize) -> Vec<usize> {
    let mut t = vec![0; degree];
    for slot in t.iter_mut().rev() {
        *slot = index % c;
        index /= c;
    }
    t
}

pub(crate) fn index_of(tuple: &[usize], c: usize) -> usize {
    tuple.iter().fold(0, |acc, &x| acc * c + x)
}

impl Cochain {
    pub fn new(degree: usize, action: &AbelianAction, values: Vec<usize>) -> Result<Self, CohomologyError> {
        let c = action.actor().order();
        let expected = c.pow(degree as u32);
        if values.len() != expected {
            return Err(CohomologyError::WrongLength { got: values.len(), expected });
        }
        if let Some(&b) = values.iter().find(|&&b| b >= action.module().order()) {
            return Err(CohomologyError::OutOfRange(b));
        }
        for (i, &b) in values.iter().enumerate() {
            let t = tuple_of(i, degree, c);
            if b != 0 && t.contains(&0) {
                return Err(CohomologyError::NotNormalized(t));
            }
        }
        Ok(Cochain { degree, action: action.clone(), values })
    }

    pub fn zero(degree: usize, action: &AbelianAction) -> Self {
        let n = action.actor().order().pow(degree as u32);
        Cochain { degree, action: action.clone(), values: vec![0; n] }
    }

    /// Evaluates `f` on tuples without identity arguments; all others map to 0.
    pub fn from_fn(degree: usize, action: &AbelianAction, mut f: impl FnMut(&[usize]) -> usize) -> Self {
        let c = action.actor().order();
        let values = (0..c.pow(degree as u32))
            .map(|i| {
                let t = tuple_of(i, degree, c);
                if t.contains(&0) {
                    0
                } else {
                    f(&t)
                }
            })
            .collect();
        Cochain { degree, action: action.clone(), values }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn action(&self) -> &AbelianAction {
        &self.action
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn actor(&self) -> &FiniteGroup {
        self.action.actor()
    }

    pub fn module(&self) -> &FiniteGroup {
        self.action.module()
    }

    #[inline]
    pub fn at(&self, tuple: &[usize]) -> usize {
        self.values[index_of(tuple, self.actor().order())]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&b| b == 0)
    }

    /// Tuples with a nonzero value, in index order.
    pub fn support(&self) -> impl Iterator<Item = (Vec<usize>, usize)> + '_ {
        let c = self.actor().order();
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &b)| b != 0)
            .map(move |(i, &b)| (tuple_of(i, self.degree, c), b))
    }

    fn check_same(&self, other: &Cochain) -> Result<(), CohomologyError> {
        if self.degree != other.degree || self.action != other.action {
            Err(CohomologyError::ActionMismatch)
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain, CohomologyError> {
        self.check_same(other)?;
        let b = self.module();
        let values = self.values.iter().zip(&other.values).map(|(&x, &y)| b.mul(x, y)).collect();
        Ok(Cochain { values, ..self.clone() })
    }

    pub fn neg(&self) -> Cochain {
        let b = self.module();
        Cochain { values: self.values.iter().map(|&x| b.inv(x)).collect(), ..self.clone() }
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain, CohomologyError> {
        self.add(&other.neg())
    }

    /// `ε ↦ ε ∘ (ψ × … × ψ)`, over the pulled-back action.
    pub fn pullback(&self, psi: &Homomorphism) -> Cochain {
        let action = self.action.pullback(psi);
        Cochain::from_fn(self.degree, &action, |t| {
            let image: Vec<usize> = t.iter().map(|&x| psi.apply(x)).collect();
            self.at(&image)
        })
    }

    /// `ε ↦ φ ∘ ε` for a module map `φ` into the module of `target`.
    ///
    /// `φ` must be equivariant for the result to be meaningful; this is not checked here.
    pub fn push(&self, phi: &Homomorphism, target: &AbelianAction) -> Cochain {
        debug_assert!(target.actor() == self.actor());
        Cochain {
            degree: self.degree,
            action: target.clone(),
            values: self.values.iter().map(|&b| phi.apply(b)).collect(),
        }
    }

    /// The bar differential; the result is again normalized.
    pub fn differential(&self) -> Result<Cochain, CohomologyError> {
        if self.degree > 3 {
            return Err(CohomologyError::DegreeTooHigh(self.degree));
        }
        let g = self.actor();
        let b = self.module();
        let n = self.degree;
        let add = |x: usize, y: usize| b.mul(x, y);
        let sub = |x: usize, y: usize| b.mul(x, b.inv(y));
        if n == 0 {
            let b0 = self.values[0];
            return Ok(Cochain::from_fn(1, &self.action, |t| sub(self.action.act(t[0], b0), b0)));
        }
        Ok(Cochain::from_fn(n + 1, &self.action, |t| {
            // x₀·c(x₁..xₙ) + Σᵢ (−1)ⁱ c(.., xᵢ₋₁xᵢ, ..) + (−1)ⁿ⁺¹ c(x₀..xₙ₋₁)
            let mut acc = self.action.act(t[0], self.at(&t[1..]));
            let mut merged = Vec::with_capacity(n);
            for i in 1..=n {
                merged.clear();
                merged.extend_from_slice(&t[..i - 1]);
                merged.push(g.mul(t[i - 1], t[i]));
                merged.extend_from_slice(&t[i + 1..]);
                let v = self.at(&merged);
                acc = if i % 2 == 1 { sub(acc, v) } else { add(acc, v) };
            }
            let last = self.at(&t[..n]);
            if (n + 1) % 2 == 1 {
                sub(acc, last)
            } else {
                add(acc, last)
            }
        }))
    }

    pub fn is_cocycle(&self) -> bool {
        self.degree > 3 || self.differential().map(|d| d.is_zero()).unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingroup::catalog;
    use rand::{Rng, SeedableRng};

    pub(crate) fn random_cochain(rng: &mut impl Rng, degree: usize, action: &AbelianAction) -> Cochain {
        let m = action.module().order();
        Cochain::from_fn(degree, action, |_| rng.gen_range(0..m))
    }

    fn sample_actions() -> Vec<AbelianAction> {
        let z2 = catalog::cyclic(2);
        let z3 = catalog::cyclic(3);
        let s3 = catalog::symmetric3();
        let sign = crate::fingroup::Homomorphism::new(&s3, &z2, (0..6).map(|x| x / 3).collect()).unwrap();
        let inv = AbelianAction::new(&z2, &z3, &[vec![0, 1, 2], vec![0, 2, 1]]).unwrap();
        vec![
            AbelianAction::trivial(&z2, &z2).unwrap(),
            AbelianAction::trivial(&z3, &z3).unwrap(),
            inv.clone(),
            inv.pullback(&sign),
            AbelianAction::trivial(&s3, &z2).unwrap(),
        ]
    }

    #[test]
    fn zero_maps_to_zero() {
        for a in sample_actions() {
            for n in 0..=3 {
                assert!(Cochain::zero(n, &a).differential().unwrap().is_zero());
            }
        }
    }

    #[test]
    fn identity_is_a_crossed_homomorphism() {
        let z2 = catalog::cyclic(2);
        let triv = AbelianAction::trivial(&z2, &z2).unwrap();
        let t = Cochain::new(1, &triv, vec![0, 1]).unwrap();
        assert!(t.differential().unwrap().is_zero());
    }

    #[test]
    fn d_squared_vanishes_on_random_cochains() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for a in sample_actions() {
            for n in 0..=2 {
                for _ in 0..30 {
                    let c = random_cochain(&mut rng, n, &a);
                    assert!(c.differential().unwrap().differential().unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn normalization_is_enforced() {
        let z2 = catalog::cyclic(2);
        let triv = AbelianAction::trivial(&z2, &z2).unwrap();
        assert_eq!(
            Cochain::new(1, &triv, vec![1, 0]).unwrap_err(),
            CohomologyError::NotNormalized(vec![0])
        );
        assert!(matches!(
            Cochain::zero(4, &triv).differential(),
            Err(CohomologyError::DegreeTooHigh(4))
        ));
    }

    #[test]
    fn pullback_preserves_cocycles_and_coboundaries() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let z4 = catalog::cyclic(4);
        let z2 = catalog::cyclic(2);
        let triv = AbelianAction::trivial(&z2, &z2).unwrap();
        for psi in crate::fingroup::enumerate_homs(&z4, &z2).unwrap() {
            for _ in 0..10 {
                let t = random_cochain(&mut rng, 1, &triv);
                let db = t.differential().unwrap();
                assert_eq!(db.pullback(&psi), t.pullback(&psi).differential().unwrap());
            }
            let eps = Cochain::from_fn(2, &triv, |_| 1);
            assert!(eps.is_cocycle());
            assert!(eps.pullback(&psi).is_cocycle());
        }
    }
}
