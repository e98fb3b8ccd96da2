//! Small categories built from posets and group actions, and seeded random
//! fibrewise opfibrations obtained by gluing a constant fibre over a poset.

use std::collections::HashMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{FinCategory, FofTriple, FunctorTable};

/// The category of a preorder; `le[a][b]` must be reflexive and transitive.
/// Morphisms are the pairs `a ≤ b` in lexicographic order.
pub fn poset_category(le: &[Vec<bool>]) -> FinCategory {
    let n = le.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| le[a][b]).collect();
    let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let identities = (0..n).map(|a| index[&(a, a)]).collect();
    FinCategory::from_fn(n, pairs.clone(), identities, |g, f| index[&(pairs[f].0, pairs[g].1)])
}

/// Transitive, reflexive closure of a relation.
pub fn closure(mut le: Vec<Vec<bool>>) -> Vec<Vec<bool>> {
    let n = le.len();
    for a in 0..n {
        le[a][a] = true;
    }
    for k in 0..n {
        for a in 0..n {
            for b in 0..n {
                if le[a][k] && le[k][b] {
                    le[a][b] = true;
                }
            }
        }
    }
    le
}

/// Action groupoid of `Z/k` acting on `Z/k`-orbits of the given sizes (each dividing `k`).
/// Morphism `(g, s): s → g·s` is stored at `g·|S| + s`.
pub fn action_groupoid(k: usize, orbits: &[usize]) -> FinCategory {
    let mut act: Vec<usize> = Vec::new(); // generator's action on points
    for &d in orbits {
        assert!(d > 0 && k % d == 0, "orbit size {d} does not divide {k}");
        let base = act.len();
        act.extend((0..d).map(|i| base + (i + 1) % d));
    }
    let s = act.len();
    let apply = |g: usize, x: usize| (0..g).fold(x, |x, _| act[x]);
    let ends = (0..k * s).map(|i| (i % s, apply(i / s, i % s))).collect();
    FinCategory::from_fn(s, ends, (0..s).collect(), |g, f| ((g / s + f / s) % k) * s + f % s)
}

/// `A × C`: object `(a, c)` at `a + |A|·c`, morphism `(f, h)` at `f + |mor A|·h`.
pub fn product(a: &FinCategory, c: &FinCategory) -> FinCategory {
    let (na, ma) = (a.object_count(), a.morphism_count());
    let ends = c
        .morphisms()
        .flat_map(|h| a.morphisms().map(move |f| (h, f)))
        .map(|(h, f)| (a.src(f) + na * c.src(h), a.dst(f) + na * c.dst(h)))
        .collect();
    let identities = c.objects().flat_map(|y| a.objects().map(move |x| a.id(x) + ma * c.id(y))).collect();
    FinCategory::from_fn(na * c.object_count(), ends, identities, |g, f| {
        a.compose(g % ma, f % ma) + ma * c.compose(g / ma, f / ma)
    })
}

/// Product of functors on product categories laid out as in [`product`].
pub fn product_functor(left: &FunctorTable, right: &FunctorTable, source: Arc<FinCategory>, target: Arc<FinCategory>) -> FunctorTable {
    let (na, ma) = (left.source.object_count(), left.source.morphism_count());
    let (nt, mt) = (left.target.object_count(), left.target.morphism_count());
    let objects = source.objects().map(|o| left.obj(o % na) + nt * right.obj(o / na)).collect();
    let morphisms = source.morphisms().map(|f| left.mor(f % ma) + mt * right.mor(f / ma)).collect();
    FunctorTable::new_unchecked(source, target, objects, morphisms)
}

/// The first projection `A × C → A`.
pub fn projection(a: &Arc<FinCategory>, prod: &Arc<FinCategory>) -> FunctorTable {
    let (na, ma) = (a.object_count(), a.morphism_count());
    FunctorTable::new_unchecked(
        prod.clone(),
        a.clone(),
        prod.objects().map(|o| o % na).collect(),
        prod.morphisms().map(|f| f % ma).collect(),
    )
}

/// The endofunctor collapsing everything onto the identity of `object`.
pub fn constant(cat: &Arc<FinCategory>, object: usize) -> FunctorTable {
    FunctorTable::new_unchecked(
        cat.clone(),
        cat.clone(),
        vec![object; cat.object_count()],
        vec![cat.id(object); cat.morphism_count()],
    )
}

fn power(e: &FunctorTable, n: usize) -> FunctorTable {
    (0..n).fold(FunctorTable::identity(&e.source), |acc, _| e.after(&acc))
}

/// Grothendieck construction of the split fibration over a poset category whose
/// every fibre is `fibre` and whose reindexing along `a → b` is `E^(b−a)`.
pub struct Glued {
    pub category: Arc<FinCategory>,
    /// The fibration onto the base.
    pub projection: FunctorTable,
    /// `(φ, y, g) ↦ morphism index`, where `g: x → E^(b−a)(y)` in the fibre.
    pub index: HashMap<(usize, usize, usize), usize>,
    fibre_objects: usize,
}

impl Glued {
    pub fn object(&self, a: usize, x: usize) -> usize {
        a * self.fibre_objects + x
    }
}

/// Returns `None` when the glued category would exceed `max_morphisms`.
pub fn glue(base: &Arc<FinCategory>, fibre: &Arc<FinCategory>, e: &FunctorTable, max_morphisms: usize) -> Option<Glued> {
    let nf = fibre.object_count();
    let steps = |phi: usize| base.dst(phi) - base.src(phi);
    let max_step = base.morphisms().map(steps).max().unwrap_or(0);
    let reindex: Vec<FunctorTable> = (0..=max_step).map(|n| power(e, n)).collect();

    let mut triples = Vec::new();
    for phi in base.morphisms() {
        let r = &reindex[steps(phi)];
        for y in fibre.objects() {
            for g in fibre.morphisms().filter(|&g| fibre.dst(g) == r.obj(y)) {
                triples.push((phi, y, g));
                if triples.len() > max_morphisms {
                    return None;
                }
            }
        }
    }
    let index: HashMap<(usize, usize, usize), usize> = triples.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let ends = triples
        .iter()
        .map(|&(phi, y, g)| (base.src(phi) * nf + fibre.src(g), base.dst(phi) * nf + y))
        .collect();
    let identities = base.objects().flat_map(|a| fibre.objects().map(move |x| (a, x))).map(|(a, x)| index[&(base.id(a), x, fibre.id(x))]).collect();
    let category = Arc::new(FinCategory::from_fn(base.object_count() * nf, ends, identities, |second, first| {
        let (phi, _, g) = triples[first];
        let (psi, z, h) = triples[second];
        let moved = reindex[steps(phi)].mor(h);
        index[&(base.compose(psi, phi), z, fibre.compose(moved, g))]
    }));
    let projection = FunctorTable::new_unchecked(
        category.clone(),
        base.clone(),
        category.objects().map(|o| o / nf).collect(),
        triples.iter().map(|t| t.0).collect(),
    );
    Some(Glued { category, projection, index, fibre_objects: nf })
}

/// The functor between two gluings over the same base induced by `q` with `q∘E = E′∘q`.
pub fn glued_functor(source: &Glued, target: &Glued, q: &FunctorTable) -> FunctorTable {
    let mut morphisms = vec![0; source.category.morphism_count()];
    for (&(phi, y, g), &i) in &source.index {
        morphisms[i] = target.index[&(phi, q.obj(y), q.mor(g))];
    }
    let nf = source.fibre_objects;
    let objects = source.category.objects().map(|o| target.object(o / nf, q.obj(o % nf))).collect();
    FunctorTable::new_unchecked(source.category.clone(), target.category.clone(), objects, morphisms)
}

/// Shape of a generated instance, for reporting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FofShape {
    pub base_objects: usize,
    pub poset_objects: usize,
    pub group_order: usize,
    pub orbits: Vec<usize>,
    pub collapse_poset: bool,
    pub collapse_groupoid: bool,
}

fn random_poset(rng: &mut impl Rng, max: usize) -> Vec<Vec<bool>> {
    let n = rng.gen_range(1..=max);
    let mut le = vec![vec![false; n]; n];
    for a in 0..n {
        for b in a + 1..n {
            le[a][b] = rng.gen_bool(0.5);
        }
    }
    closure(le)
}

/// One random fibrewise opfibration `X → M → B` with groupoidal `P`-fibres,
/// or `None` if the draw exceeds `max_morphisms`.
pub fn random_fof(rng: &mut impl Rng, max_morphisms: usize) -> Option<(FofTriple, FofShape)> {
    let base = Arc::new(poset_category(&random_poset(rng, 3)));
    let m0 = Arc::new(poset_category(&random_poset(rng, 3)));
    let k = *[1usize, 2, 3, 4].choose(rng).unwrap();
    let divisors: Vec<usize> = (1..=k).filter(|d| k % d == 0).collect();
    let orbits: Vec<usize> = (0..rng.gen_range(1..=2)).map(|_| *divisors.choose(rng).unwrap()).collect();
    let gamma = Arc::new(action_groupoid(k, &orbits));
    let x0 = Arc::new(product(&m0, &gamma));

    let collapse_poset = rng.gen_bool(0.5);
    let collapse_groupoid = rng.gen_bool(0.5);
    let e_m = if collapse_poset { constant(&m0, rng.gen_range(0..m0.object_count())) } else { FunctorTable::identity(&m0) };
    let e_g = if collapse_groupoid {
        constant(&gamma, rng.gen_range(0..gamma.object_count()))
    } else {
        FunctorTable::identity(&gamma)
    };
    let e_x = product_functor(&e_m, &e_g, x0.clone(), x0.clone());
    let q = projection(&m0, &x0);

    let x = glue(&base, &x0, &e_x, max_morphisms)?;
    let m = glue(&base, &m0, &e_m, max_morphisms)?;
    let p = glued_functor(&x, &m, &q);
    let triple = FofTriple::new(p, x.projection, m.projection).expect("gluing commutes over the base");
    let shape = FofShape {
        base_objects: base.object_count(),
        poset_objects: m0.object_count(),
        group_order: k,
        orbits,
        collapse_poset,
        collapse_groupoid,
    };
    Some((triple, shape))
}

/// `count` instances from a fixed seed, redrawing any that exceed `max_morphisms`.
pub fn seeded_instances(seed: u64, count: usize, max_morphisms: usize) -> Vec<(FofTriple, FofShape)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        if let Some(inst) = random_fof(&mut rng, max_morphisms) {
            out.push(inst);
        }
    }
    out
}
