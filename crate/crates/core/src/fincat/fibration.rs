use std::collections::HashMap;
use std::sync::Arc;

use super::{FinCategory, FincatError, FunctorTable};

/// A pair `(x′, α)` where composition with `f` is not a bijection onto `X_{P(f)·α}(x′, y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartesianWitness {
    pub x_prime: usize,
    pub alpha: usize,
    /// A morphism `x′ → y` over `P(f)·α` with the wrong number of factorizations.
    pub target: usize,
    /// How many `g` over `α` satisfy `f ∘ g = target` (0 or at least 2).
    pub lifts: usize,
}

/// No cartesian lifting of `phi` at `object`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftingFailure {
    pub phi: usize,
    pub object: usize,
}

fn cartesian_witness(p: &FunctorTable, f: usize) -> Option<CartesianWitness> {
    let (x_cat, b_cat) = (&p.source, &p.target);
    let (x, y) = (x_cat.src(f), x_cat.dst(f));
    let pf = p.mor(f);
    for x_prime in x_cat.objects() {
        for &alpha in b_cat.hom(p.obj(x_prime), p.obj(x)) {
            let over = b_cat.compose(pf, alpha);
            let mut counts: HashMap<usize, usize> = x_cat
                .hom(x_prime, y)
                .iter()
                .filter(|&&g| p.mor(g) == over)
                .map(|&g| (g, 0))
                .collect();
            for &g in x_cat.hom(x_prime, x) {
                if p.mor(g) == alpha {
                    *counts.get_mut(&x_cat.compose(f, g)).expect("P is a functor") += 1;
                }
            }
            let mut bad: Vec<(usize, usize)> = counts.into_iter().filter(|&(_, c)| c != 1).collect();
            bad.sort_unstable();
            if let Some(&(target, lifts)) = bad.first() {
                return Some(CartesianWitness { x_prime, alpha, target, lifts });
            }
        }
    }
    None
}

/// `Ok(())` if `f` is `P`-cartesian, else a violating `(x′, α)`.
pub fn is_cartesian(p: &FunctorTable, f: usize) -> Result<(), CartesianWitness> {
    match cartesian_witness(p, f) {
        None => Ok(()),
        Some(w) => Err(w),
    }
}

/// Memoized cartesianness for one functor.
pub(crate) struct Cartesian<'a> {
    p: &'a FunctorTable,
    memo: Vec<Option<bool>>,
    /// morphisms of X grouped by `(P(f), dst f)`, increasing
    by_image: HashMap<(usize, usize), Vec<usize>>,
}

impl<'a> Cartesian<'a> {
    pub(crate) fn new(p: &'a FunctorTable) -> Self {
        let mut by_image: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for f in p.source.morphisms() {
            by_image.entry((p.mor(f), p.source.dst(f))).or_default().push(f);
        }
        Cartesian { p, memo: vec![None; p.source.morphism_count()], by_image }
    }

    pub(crate) fn check(&mut self, f: usize) -> bool {
        if let Some(v) = self.memo[f] {
            return v;
        }
        let v = cartesian_witness(self.p, f).is_none();
        self.memo[f] = Some(v);
        v
    }

    /// The cartesian lifting of `phi` at `y` with the smallest index.
    pub(crate) fn lifting(&mut self, phi: usize, y: usize) -> Option<usize> {
        let candidates = self.by_image.get(&(phi, y)).cloned().unwrap_or_default();
        candidates.into_iter().find(|&f| self.check(f))
    }

    pub(crate) fn fibration_failure(&mut self) -> Option<LiftingFailure> {
        let (x_cat, b_cat) = (self.p.source.clone(), self.p.target.clone());
        for phi in b_cat.morphisms() {
            for y in x_cat.objects() {
                if self.p.obj(y) == b_cat.dst(phi) && self.lifting(phi, y).is_none() {
                    return Some(LiftingFailure { phi, object: y });
                }
            }
        }
        None
    }
}

/// The cartesian lifting of `phi` at `y` with the smallest morphism index.
pub fn cartesian_lifting(p: &FunctorTable, phi: usize, y: usize) -> Option<usize> {
    Cartesian::new(p).lifting(phi, y)
}

pub fn check_fibration(p: &FunctorTable) -> Result<(), LiftingFailure> {
    match Cartesian::new(p).fibration_failure() {
        None => Ok(()),
        Some(f) => Err(f),
    }
}

/// `P` is an opfibration iff `P^op` is a fibration; failures name opcartesian liftings.
pub fn check_opfibration(p: &FunctorTable) -> Result<(), LiftingFailure> {
    check_fibration(&p.opposite())
}

/// Why a triple fails to be a fibrewise opfibration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FofFailure {
    FNotFibration(LiftingFailure),
    GNotFibration(LiftingFailure),
    /// An `F`-cartesian morphism whose image under `P` is not `G`-cartesian.
    NotFibred { morphism: usize },
    /// The restriction of `P` over `base` has no opcartesian lifting of `phi` at `object`.
    FibreNotOpfibration { base: usize, failure: LiftingFailure },
}

/// `P: X → M`, `F: X → B`, `G: M → B` with `G ∘ P = F`.
#[derive(Debug, Clone)]
pub struct FofTriple {
    pub p: FunctorTable,
    pub f: FunctorTable,
    pub g: FunctorTable,
}

fn same(a: &Arc<FinCategory>, b: &Arc<FinCategory>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl FofTriple {
    pub fn new(p: FunctorTable, f: FunctorTable, g: FunctorTable) -> Result<Self, FincatError> {
        if !same(&p.source, &f.source) || !same(&p.target, &g.source) || !same(&f.target, &g.target) {
            return Err(FincatError::CategoryMismatch);
        }
        for x in p.source.objects() {
            if g.obj(p.obj(x)) != f.obj(x) {
                return Err(FincatError::CompositionMismatch(format!("object {x}")));
            }
        }
        for m in p.source.morphisms() {
            if g.mor(p.mor(m)) != f.mor(m) {
                return Err(FincatError::CompositionMismatch(format!("morphism {m}")));
            }
        }
        Ok(FofTriple { p, f, g })
    }

    pub fn x(&self) -> &Arc<FinCategory> {
        &self.p.source
    }

    pub fn m(&self) -> &Arc<FinCategory> {
        &self.p.target
    }

    pub fn b(&self) -> &Arc<FinCategory> {
        &self.g.target
    }

    /// `P_b: X_b → M_b` with the fibre subcategories.
    pub(crate) fn fibre(&self, b: usize) -> (super::Subcategory, super::Subcategory, FunctorTable) {
        let id_b = self.b().id(b);
        let xb = self.x().subcategory(|h| self.f.mor(h) == id_b);
        let mb = self.m().subcategory(|h| self.g.mor(h) == id_b);
        let objects = xb.objects.iter().map(|&o| mb.local_object(self.p.obj(o)).unwrap()).collect();
        let morphisms = xb.morphisms.iter().map(|&h| mb.local_morphism(self.p.mor(h)).unwrap()).collect();
        let pb = FunctorTable::new_unchecked(
            Arc::new(xb.category.clone()),
            Arc::new(mb.category.clone()),
            objects,
            morphisms,
        );
        (xb, mb, pb)
    }
}

/// First reason the triple is not a fibrewise opfibration, if any.
pub fn check_fibrewise_opfibration(t: &FofTriple) -> Option<FofFailure> {
    let mut f_cart = Cartesian::new(&t.f);
    if let Some(e) = f_cart.fibration_failure() {
        return Some(FofFailure::FNotFibration(e));
    }
    let mut g_cart = Cartesian::new(&t.g);
    if let Some(e) = g_cart.fibration_failure() {
        return Some(FofFailure::GNotFibration(e));
    }
    for h in t.x().morphisms() {
        if f_cart.check(h) && !g_cart.check(t.p.mor(h)) {
            return Some(FofFailure::NotFibred { morphism: h });
        }
    }
    for b in t.b().objects() {
        let (xb, mb, pb) = t.fibre(b);
        if pb.source.object_count() == 0 {
            continue;
        }
        if let Err(e) = check_opfibration(&pb) {
            let failure = LiftingFailure { phi: mb.morphisms[e.phi], object: xb.objects[e.object] };
            return Some(FofFailure::FibreNotOpfibration { base: b, failure });
        }
    }
    None
}

pub fn is_fibrewise_opfibration(t: &FofTriple) -> bool {
    check_fibrewise_opfibration(t).is_none()
}
