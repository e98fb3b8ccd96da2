//! Finite categories and functors given by tables, with decision procedures
//! for cartesian morphisms, fibrations and fibrewise opfibrations.

mod fibration;
pub mod random;
mod torsor;

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

pub use fibration::{
    cartesian_lifting, check_fibration, check_fibrewise_opfibration, check_opfibration, is_cartesian,
    is_fibrewise_opfibration, CartesianWitness, FofFailure, FofTriple, LiftingFailure,
};
pub use torsor::{phi_bijection, torsor_certificate, PhiReport, TorsorReport, TorsorVerdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FincatError {
    #[error("morphism {morphism} has endpoint {object} outside the {count} objects")]
    BadEndpoint { morphism: usize, object: usize, count: usize },
    #[error("identity of object {0} is missing or has wrong endpoints")]
    BadIdentity(usize),
    #[error("composite {0} ∘ {1} is missing")]
    MissingComposite(usize, usize),
    #[error("composite {0} ∘ {1} is given for non-composable morphisms")]
    NotComposable(usize, usize),
    #[error("composite {0} ∘ {1} = {2} has wrong endpoints")]
    BadComposite(usize, usize, usize),
    #[error("unit law fails at morphism {0}")]
    UnitLaw(usize),
    #[error("associativity fails at ({0}, {1}, {2})")]
    Associativity(usize, usize, usize),
    #[error("category has {got} morphisms, limit is {limit}")]
    TooLarge { got: usize, limit: usize },
    #[error("functor tables have the wrong length")]
    FunctorShape,
    #[error("functor does not preserve {0}")]
    NotFunctorial(String),
    #[error("G ∘ P differs from F at {0}")]
    CompositionMismatch(String),
    #[error("functors do not share the categories required")]
    CategoryMismatch,
    #[error("fibre of P over {object} is not a groupoid: vertical morphism {morphism} is not invertible")]
    FibresNotGroupoidal { object: usize, morphism: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no lifting exists: {0}")]
    NoLifting(String),
}

/// A finite category with dense object and morphism indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCategory {
    objects: usize,
    ends: Vec<(usize, usize)>,
    identities: Vec<usize>,
    /// `compose[g·m + f] = g ∘ f` when `dst f = src g`.
    compose: Vec<usize>,
    homs: HashMap<(usize, usize), Vec<usize>>,
}

const UNDEFINED: usize = usize::MAX;

impl FinCategory {
    /// Validates a category given by endpoints, identities and all defined composites `(g, f, g∘f)`.
    pub fn new(
        objects: usize,
        ends: Vec<(usize, usize)>,
        identities: Vec<usize>,
        composites: &[(usize, usize, usize)],
        max_morphisms: usize,
    ) -> Result<Self, FincatError> {
        let m = ends.len();
        if m > max_morphisms {
            return Err(FincatError::TooLarge { got: m, limit: max_morphisms });
        }
        for (i, &(s, t)) in ends.iter().enumerate() {
            for o in [s, t] {
                if o >= objects {
                    return Err(FincatError::BadEndpoint { morphism: i, object: o, count: objects });
                }
            }
        }
        if identities.len() != objects {
            return Err(FincatError::BadIdentity(identities.len().min(objects)));
        }
        for (o, &i) in identities.iter().enumerate() {
            if i >= m || ends[i] != (o, o) {
                return Err(FincatError::BadIdentity(o));
            }
        }
        let mut compose = vec![UNDEFINED; m * m];
        for &(g, f, gf) in composites {
            if g >= m || f >= m || gf >= m || ends[f].1 != ends[g].0 {
                return Err(FincatError::NotComposable(g, f));
            }
            if ends[gf] != (ends[f].0, ends[g].1) {
                return Err(FincatError::BadComposite(g, f, gf));
            }
            compose[g * m + f] = gf;
        }
        for f in 0..m {
            for g in 0..m {
                if ends[f].1 == ends[g].0 && compose[g * m + f] == UNDEFINED {
                    return Err(FincatError::MissingComposite(g, f));
                }
            }
        }
        let cat = Self::assemble(objects, ends, identities, compose);
        cat.validate_laws()?;
        Ok(cat)
    }

    /// Builds a category from a composition function known to satisfy the axioms.
    pub(crate) fn from_fn(
        objects: usize,
        ends: Vec<(usize, usize)>,
        identities: Vec<usize>,
        op: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let m = ends.len();
        let mut compose = vec![UNDEFINED; m * m];
        for f in 0..m {
            for g in 0..m {
                if ends[f].1 == ends[g].0 {
                    compose[g * m + f] = op(g, f);
                }
            }
        }
        Self::assemble(objects, ends, identities, compose)
    }

    fn assemble(objects: usize, ends: Vec<(usize, usize)>, identities: Vec<usize>, compose: Vec<usize>) -> Self {
        let mut homs: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (i, &e) in ends.iter().enumerate() {
            homs.entry(e).or_default().push(i);
        }
        FinCategory { objects, ends, identities, compose, homs }
    }

    pub(crate) fn validate_laws(&self) -> Result<(), FincatError> {
        for f in self.morphisms() {
            let (s, t) = self.ends[f];
            if self.compose(f, self.identities[s]) != f || self.compose(self.identities[t], f) != f {
                return Err(FincatError::UnitLaw(f));
            }
        }
        for f in self.morphisms() {
            for g in self.hom_from(self.dst(f)) {
                let gf = self.compose(g, f);
                for h in self.hom_from(self.dst(g)) {
                    if self.compose(h, gf) != self.compose(self.compose(h, g), f) {
                        return Err(FincatError::Associativity(h, g, f));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn object_count(&self) -> usize {
        self.objects
    }

    pub fn morphism_count(&self) -> usize {
        self.ends.len()
    }

    pub fn objects(&self) -> std::ops::Range<usize> {
        0..self.objects
    }

    pub fn morphisms(&self) -> std::ops::Range<usize> {
        0..self.ends.len()
    }

    #[inline]
    pub fn src(&self, f: usize) -> usize {
        self.ends[f].0
    }

    #[inline]
    pub fn dst(&self, f: usize) -> usize {
        self.ends[f].1
    }

    pub fn ends(&self) -> &[(usize, usize)] {
        &self.ends
    }

    #[inline]
    pub fn id(&self, object: usize) -> usize {
        self.identities[object]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.src(f)] == f
    }

    /// `g ∘ f`; panics if not composable.
    #[inline]
    pub fn compose(&self, g: usize, f: usize) -> usize {
        let gf = self.compose[g * self.ends.len() + f];
        assert!(gf != UNDEFINED, "{g} ∘ {f} is not composable");
        gf
    }

    pub fn try_compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose.get(g * self.ends.len() + f).copied().filter(|&x| x != UNDEFINED)
    }

    /// Morphisms `a → b` in increasing index order.
    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        self.homs.get(&(a, b)).map_or(&[], Vec::as_slice)
    }

    pub fn hom_from(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.morphisms().filter(move |&f| self.src(f) == a)
    }

    pub fn inverse(&self, f: usize) -> Option<usize> {
        let (s, t) = self.ends[f];
        self.hom(t, s)
            .iter()
            .copied()
            .find(|&g| self.compose(g, f) == self.identities[s] && self.compose(f, g) == self.identities[t])
    }

    /// Every composite `(g, f, g∘f)` in lexicographic order of `(g, f)`.
    pub fn composites(&self) -> Vec<(usize, usize, usize)> {
        let m = self.ends.len();
        let mut out = Vec::new();
        for g in 0..m {
            for f in 0..m {
                let gf = self.compose[g * m + f];
                if gf != UNDEFINED {
                    out.push((g, f, gf));
                }
            }
        }
        out
    }

    /// Same objects and morphism indices, arrows reversed.
    pub fn opposite(&self) -> FinCategory {
        let ends = self.ends.iter().map(|&(s, t)| (t, s)).collect();
        FinCategory::from_fn(self.objects, ends, self.identities.clone(), |g, f| self.compose(f, g))
    }

    /// The subcategory on the given morphisms (closed under composition and identities).
    pub fn subcategory(&self, keep: impl Fn(usize) -> bool) -> Subcategory {
        let morphisms: Vec<usize> = self.morphisms().filter(|&f| keep(f)).collect();
        let mut objects: Vec<usize> = morphisms.iter().flat_map(|&f| [self.src(f), self.dst(f)]).collect();
        objects.sort_unstable();
        objects.dedup();
        let obj_local: HashMap<usize, usize> = objects.iter().enumerate().map(|(i, &o)| (o, i)).collect();
        let mor_local: HashMap<usize, usize> = morphisms.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let ends = morphisms.iter().map(|&f| (obj_local[&self.src(f)], obj_local[&self.dst(f)])).collect();
        let identities = objects.iter().map(|&o| mor_local[&self.id(o)]).collect();
        let category = FinCategory::from_fn(objects.len(), ends, identities, |g, f| {
            mor_local[&self.compose(morphisms[g], morphisms[f])]
        });
        Subcategory { category, objects, morphisms, obj_local, mor_local }
    }
}

/// A subcategory with maps between local and ambient indices.
#[derive(Debug, Clone)]
pub struct Subcategory {
    pub category: FinCategory,
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
    obj_local: HashMap<usize, usize>,
    mor_local: HashMap<usize, usize>,
}

impl Subcategory {
    pub fn local_object(&self, o: usize) -> Option<usize> {
        self.obj_local.get(&o).copied()
    }

    pub fn local_morphism(&self, f: usize) -> Option<usize> {
        self.mor_local.get(&f).copied()
    }
}

/// A functor between finite categories, given by its object and morphism maps.
#[derive(Debug, Clone)]
pub struct FunctorTable {
    pub source: Arc<FinCategory>,
    pub target: Arc<FinCategory>,
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
}

impl FunctorTable {
    pub fn new(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        objects: Vec<usize>,
        morphisms: Vec<usize>,
    ) -> Result<Self, FincatError> {
        if objects.len() != source.object_count()
            || morphisms.len() != source.morphism_count()
            || objects.iter().any(|&o| o >= target.object_count())
            || morphisms.iter().any(|&f| f >= target.morphism_count())
        {
            return Err(FincatError::FunctorShape);
        }
        let fun = FunctorTable { source, target, objects, morphisms };
        fun.validate()?;
        Ok(fun)
    }

    pub(crate) fn new_unchecked(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        objects: Vec<usize>,
        morphisms: Vec<usize>,
    ) -> Self {
        FunctorTable { source, target, objects, morphisms }
    }

    fn validate(&self) -> Result<(), FincatError> {
        let (s, t) = (&self.source, &self.target);
        for o in s.objects() {
            if self.morphisms[s.id(o)] != t.id(self.objects[o]) {
                return Err(FincatError::NotFunctorial(format!("identity of object {o}")));
            }
        }
        for f in s.morphisms() {
            if t.ends()[self.morphisms[f]] != (self.objects[s.src(f)], self.objects[s.dst(f)]) {
                return Err(FincatError::NotFunctorial(format!("endpoints of morphism {f}")));
            }
        }
        for (g, f, gf) in s.composites() {
            if t.compose(self.morphisms[g], self.morphisms[f]) != self.morphisms[gf] {
                return Err(FincatError::NotFunctorial(format!("composite {g} ∘ {f}")));
            }
        }
        Ok(())
    }

    pub fn identity(cat: &Arc<FinCategory>) -> Self {
        FunctorTable {
            source: cat.clone(),
            target: cat.clone(),
            objects: cat.objects().collect(),
            morphisms: cat.morphisms().collect(),
        }
    }

    #[inline]
    pub fn obj(&self, o: usize) -> usize {
        self.objects[o]
    }

    #[inline]
    pub fn mor(&self, f: usize) -> usize {
        self.morphisms[f]
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &FunctorTable) -> FunctorTable {
        FunctorTable {
            source: first.source.clone(),
            target: self.target.clone(),
            objects: first.objects.iter().map(|&o| self.objects[o]).collect(),
            morphisms: first.morphisms.iter().map(|&f| self.morphisms[f]).collect(),
        }
    }

    pub fn opposite(&self) -> FunctorTable {
        FunctorTable {
            source: Arc::new(self.source.opposite()),
            target: Arc::new(self.target.opposite()),
            objects: self.objects.clone(),
            morphisms: self.morphisms.clone(),
        }
    }

    /// Whether `f` is vertical: mapped to an identity.
    pub fn is_vertical(&self, f: usize) -> bool {
        self.target.is_identity(self.morphisms[f])
    }
}
