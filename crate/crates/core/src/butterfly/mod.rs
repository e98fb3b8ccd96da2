//! Butterflies between crossed extensions: validation, two-cells, composition,
//! the span representation, projection to module morphisms, and enumeration
//! of weak maps over a module morphism.

mod weak;

use thiserror::Error;

use crate::cohomology::CohomologyError;
use crate::fingroup::{
    direct_product, semidirect_product, Action, FiniteGroup, HomSearch, Homomorphism, Pullback, Quotient,
};
use crate::limits::{BudgetExceeded, Limits};
use crate::xmod::{check_module_map, CrossedExtension, CrossedModule, XExtMorphism, XmodError};

pub use weak::{weak_hom_set, WeakHomReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ButterflyError {
    #[error("maps do not fit together: {0}")]
    Mismatch(&'static str),
    #[error("gamma·kappa ≠ 0 at h = {h}")]
    GammaKappa { h: usize },
    #[error("delta·kappa ≠ ∂ at h = {h}")]
    DeltaKappa { h: usize },
    #[error("gamma·iota ≠ ∂′ at g = {g}")]
    GammaIota { g: usize },
    #[error("(delta, iota) is not short exact: {0}")]
    NotExact(&'static str),
    #[error("kappa(delta(e)*h) ≠ e·kappa(h)·e⁻¹ at e = {e}, h = {h}")]
    KappaEquivariance { e: usize, h: usize },
    #[error("iota(gamma(e)*g) ≠ e·iota(g)·e⁻¹ at e = {e}, g = {g}")]
    IotaEquivariance { e: usize, g: usize },
    #[error("target of the first butterfly is not the source of the second")]
    SourceTargetMismatch,
    #[error("butterfly is not flippable")]
    NotFlippable,
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Xmod(#[from] XmodError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ButterflyFlags {
    /// `δ` is split by a homomorphism.
    pub representable: bool,
    /// `(κ, γ)` is short exact as well.
    pub flippable: bool,
}

/// A butterfly `X → X′` where `X` is `H₂ → H₁` and `X′` is `G₂ → G₁`:
///
/// ```text
///   H₂       G₂
///     κ↘   ↙ι
///        E
///     δ↙   ↘γ
///   H₁       G₁
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Butterfly {
    source: CrossedExtension,
    target: CrossedExtension,
    kappa: Homomorphism,
    iota: Homomorphism,
    delta: Homomorphism,
    gamma: Homomorphism,
    flags: ButterflyFlags,
}

impl Butterfly {
    /// Checks every clause, in order: shapes, `γκ = 0`, the wings, exactness of
    /// `(δ, ι)`, then both equivariance conditions.
    pub fn new(
        source: &CrossedExtension,
        target: &CrossedExtension,
        kappa: Homomorphism,
        iota: Homomorphism,
        delta: Homomorphism,
        gamma: Homomorphism,
    ) -> Result<Self, ButterflyError> {
        let e = iota.target();
        if kappa.source() != source.g2() || iota.source() != target.g2() {
            return Err(ButterflyError::Mismatch("κ: H₂ → E and ι: G₂ → E"));
        }
        if kappa.target() != e || delta.source() != e || gamma.source() != e {
            return Err(ButterflyError::Mismatch("κ, ι, δ, γ must share E"));
        }
        if delta.target() != source.g1() || gamma.target() != target.g1() {
            return Err(ButterflyError::Mismatch("δ: E → H₁ and γ: E → G₁"));
        }
        for h in source.g2().elements() {
            if gamma.apply(kappa.apply(h)) != 0 {
                return Err(ButterflyError::GammaKappa { h });
            }
        }
        for h in source.g2().elements() {
            if delta.apply(kappa.apply(h)) != source.d().apply(h) {
                return Err(ButterflyError::DeltaKappa { h });
            }
        }
        for g in target.g2().elements() {
            if gamma.apply(iota.apply(g)) != target.d().apply(g) {
                return Err(ButterflyError::GammaIota { g });
            }
        }
        if !iota.is_injective() {
            return Err(ButterflyError::NotExact("ι is not injective"));
        }
        if !delta.is_surjective() {
            return Err(ButterflyError::NotExact("δ is not surjective"));
        }
        if iota.image() != delta.kernel() {
            return Err(ButterflyError::NotExact("im ι ≠ ker δ"));
        }
        for x in e.elements() {
            for h in source.g2().elements() {
                if kappa.apply(source.xmod().act(delta.apply(x), h)) != e.conj(x, kappa.apply(h)) {
                    return Err(ButterflyError::KappaEquivariance { e: x, h });
                }
            }
            for g in target.g2().elements() {
                if iota.apply(target.xmod().act(gamma.apply(x), g)) != e.conj(x, iota.apply(g)) {
                    return Err(ButterflyError::IotaEquivariance { e: x, g });
                }
            }
        }
        let representable = HomSearch::new(source.g1(), e)
            .filter(|x, y| delta.apply(y) == x)
            .first(&Limits::default())?
            .is_some();
        let flippable = kappa.is_injective() && gamma.is_surjective() && kappa.image() == gamma.kernel();
        Ok(Butterfly {
            source: source.clone(),
            target: target.clone(),
            kappa,
            iota,
            delta,
            gamma,
            flags: ButterflyFlags { representable, flippable },
        })
    }

    pub fn source(&self) -> &CrossedExtension {
        &self.source
    }

    pub fn target(&self) -> &CrossedExtension {
        &self.target
    }

    pub fn e(&self) -> &FiniteGroup {
        self.iota.target()
    }

    pub fn kappa(&self) -> &Homomorphism {
        &self.kappa
    }

    pub fn iota(&self) -> &Homomorphism {
        &self.iota
    }

    pub fn delta(&self) -> &Homomorphism {
        &self.delta
    }

    pub fn gamma(&self) -> &Homomorphism {
        &self.gamma
    }

    pub fn flags(&self) -> ButterflyFlags {
        self.flags
    }
}

/// An isomorphism `α: E → E′` commuting with all four wings, if one exists.
pub fn two_cell(a: &Butterfly, b: &Butterfly, limits: &Limits) -> Result<Option<Homomorphism>, ButterflyError> {
    if a.source != b.source || a.target != b.target {
        return Err(ButterflyError::Mismatch("two-cells need parallel butterflies"));
    }
    if a.e().order() != b.e().order() {
        return Ok(None);
    }
    let mut search = HomSearch::new(a.e(), b.e())
        .filter(|x, y| b.delta.apply(y) == a.delta.apply(x) && b.gamma.apply(y) == a.gamma.apply(x));
    for h in a.source.g2().elements() {
        search = search.fix(a.kappa.apply(h), b.kappa.apply(h));
    }
    for g in a.target.g2().elements() {
        search = search.fix(a.iota.apply(g), b.iota.apply(g));
    }
    let found = search.first(limits)?;
    if let Some(alpha) = &found {
        if !alpha.is_bijective() {
            return Err(ButterflyError::Internal("two-cell is not an isomorphism".into()));
        }
    }
    Ok(found)
}

/// The representable butterfly of `(f₁, f₂): X → X′` on `E = G₂ ⋊ H₁`, where `H₁`
/// acts through `f₁`, with `κ(h) = (f₂(h)⁻¹, ∂h)`, `ι(g) = (g, e)`, `δ = pr₂` and
/// `γ(g, x) = ∂′(g)·f₁(x)`.
pub fn from_morphism(m: &XExtMorphism) -> Butterfly {
    let (x, y) = (&m.source, &m.target);
    let (h1, g2, g1) = (x.g1(), y.g2(), y.g1());
    let sd = semidirect_product(g2, h1, |h, g| y.xmod().act(m.f1.apply(h), g));
    let e = &sd.group;
    let kappa = x.g2().elements().map(|h| sd.pair(g2.inv(m.f2.apply(h)), x.d().apply(h))).collect();
    let iota = g2.elements().map(|g| sd.pair(g, 0)).collect();
    let delta = e.elements().map(|v| sd.split(v).1).collect();
    let gamma = e
        .elements()
        .map(|v| {
            let (g, h) = sd.split(v);
            g1.mul(y.d().apply(g), m.f1.apply(h))
        })
        .collect();
    Butterfly::new(
        x,
        y,
        Homomorphism::new_unchecked(x.g2(), e, kappa),
        Homomorphism::new_unchecked(g2, e, iota),
        Homomorphism::new_unchecked(e, h1, delta),
        Homomorphism::new_unchecked(e, g1, gamma),
    )
    .expect("a morphism of crossed extensions gives a butterfly")
}

pub fn identity(x: &CrossedExtension) -> Butterfly {
    from_morphism(&XExtMorphism::identity(x))
}

/// The butterfly `0 → Z₃ → S₃ → Z₂` from the zero crossed extension over `Z₂` to
/// `Z₃ → Aut(Z₃)` by conjugation: `κ = 0`, `ι` the rotations, `δ` the sign,
/// `γ` conjugation on the rotations.
pub fn s3_example() -> Butterfly {
    use crate::fingroup::{catalog, structure_of, AbelianAction};
    let z2 = catalog::cyclic(2);
    let x = CrossedExtension::zero(&AbelianAction::trivial(&z2, &FiniteGroup::trivial()).expect("abelian"));
    let z3 = catalog::cyclic(3);
    let st = structure_of(&z3).expect("small group");
    let act = Action::from_fn_unchecked(&st.automorphisms, &z3, |a, v| st.eval(a, v));
    let y = CrossedExtension::of_xmod(CrossedModule::new(st.conj.clone(), act).expect("conjugation"));
    let s3 = catalog::symmetric3();
    let r = s3.elements().find(|&g| s3.element_order(g) == 3).expect("S3 has a 3-cycle");
    let rotations = s3.closure(&[r]);
    let sign = Quotient::new(&s3, &rotations);
    let iota = Homomorphism::new(&z3, &s3, vec![0, r, s3.mul(r, r)]).expect("rotation subgroup");
    let rotation_index = |g: usize| z3.elements().find(|&v| iota.apply(v) == g).expect("normal subgroup");
    let gamma: Vec<usize> = s3
        .elements()
        .map(|g| {
            let images: Vec<usize> = z3.elements().map(|v| rotation_index(s3.conj(g, iota.apply(v)))).collect();
            st.aut_index(&images).expect("conjugation restricts to an automorphism")
        })
        .collect();
    let gamma = Homomorphism::new(&s3, &st.automorphisms, gamma).expect("conjugation is a homomorphism");
    let kappa = Homomorphism::zero(&FiniteGroup::trivial(), &s3);
    Butterfly::new(&x, &y, kappa, iota, sign.projection, gamma).expect("the S3 butterfly is valid")
}

/// `X ← M → X′` with `M` the crossed module `κ♯ι: H₂ × G₂ → E`.
#[derive(Debug, Clone)]
pub struct Span {
    pub middle: CrossedExtension,
    /// `(δ, p₁)`, always a weak equivalence.
    pub left: XExtMorphism,
    /// `(γ, p₂)`.
    pub right: XExtMorphism,
}

pub fn span_of(b: &Butterfly) -> Result<Span, ButterflyError> {
    let (x, y, e) = (&b.source, &b.target, b.e());
    let prod = direct_product(x.g2(), y.g2());
    let g2 = &prod.group;
    let d = g2
        .elements()
        .map(|v| {
            let (h, g) = prod.split(v);
            e.mul(b.kappa.apply(h), b.iota.apply(g))
        })
        .collect();
    let d = Homomorphism::new(g2, e, d).map_err(|_| ButterflyError::Internal("κ♯ι is not a homomorphism".into()))?;
    let act = Action::from_fn_unchecked(e, g2, |v, w| {
        let (h, g) = prod.split(w);
        prod.pair(x.xmod().act(b.delta.apply(v), h), y.xmod().act(b.gamma.apply(v), g))
    });
    let middle = CrossedExtension::of_xmod(CrossedModule::new(d, act)?);
    let p1 = Homomorphism::new_unchecked(g2, x.g2(), g2.elements().map(|v| prod.split(v).0).collect());
    let p2 = Homomorphism::new_unchecked(g2, y.g2(), g2.elements().map(|v| prod.split(v).1).collect());
    let left = XExtMorphism::new(&middle, x, b.delta.clone(), p1)?;
    let right = XExtMorphism::new(&middle, y, b.gamma.clone(), p2)?;
    if !left.class().weak_equivalence {
        return Err(ButterflyError::Internal("left leg of the span is not a weak equivalence".into()));
    }
    Ok(Span { middle, left, right })
}

/// `b₂ ∘ b₁` on `(E ×_{G₁} E′)/{(ι(g), κ′(g))}` with `κ″ = [κ, e]`, `ι″ = [e, ι′]`.
pub fn compose(b2: &Butterfly, b1: &Butterfly) -> Result<Butterfly, ButterflyError> {
    if b1.target != b2.source {
        return Err(ButterflyError::SourceTargetMismatch);
    }
    let mid = &b1.target;
    let pb = Pullback::new(&b1.gamma, &b2.delta);
    let mut normal: Vec<usize> = mid
        .g2()
        .elements()
        .map(|g| pb.index_of(b1.iota.apply(g), b2.kappa.apply(g)).expect("γι = ∂ = δ′κ′"))
        .collect();
    normal.sort_unstable();
    let q = Quotient::new(&pb.group, &normal);
    let e = &q.group;
    let kappa = b1
        .source
        .g2()
        .elements()
        .map(|h| q.projection.apply(pb.index_of(b1.kappa.apply(h), 0).expect("γκ = 0")))
        .collect();
    let iota = b2
        .target
        .g2()
        .elements()
        .map(|k| q.projection.apply(pb.index_of(0, b2.iota.apply(k)).expect("δ′ι′ = 0")))
        .collect();
    let delta = q.representatives.iter().map(|&r| b1.delta.apply(pb.pairs[r].0)).collect();
    let gamma = q.representatives.iter().map(|&r| b2.gamma.apply(pb.pairs[r].1)).collect();
    Butterfly::new(
        &b1.source,
        &b2.target,
        Homomorphism::new_unchecked(b1.source.g2(), e, kappa),
        Homomorphism::new_unchecked(b2.target.g2(), e, iota),
        Homomorphism::new_unchecked(e, b1.source.g1(), delta),
        Homomorphism::new_unchecked(e, b2.target.g1(), gamma),
    )
}

/// The same diagram read backwards, `X′ → X`.
pub fn flip(b: &Butterfly) -> Result<Butterfly, ButterflyError> {
    if !b.flags.flippable {
        return Err(ButterflyError::NotFlippable);
    }
    Butterfly::new(&b.target, &b.source, b.iota.clone(), b.kappa.clone(), b.gamma.clone(), b.delta.clone())
}

/// The module morphism `(φ₀, φ): Π(X) → Π(X′)`, with `ι(j′(φ(b))) = κ(j(b))⁻¹`
/// and `φ₀(p(δ(e))) = p′(γ(e))`.
pub fn project(b: &Butterfly) -> Result<(Homomorphism, Homomorphism), ButterflyError> {
    let (x, y, e) = (&b.source, &b.target, b.e());
    let mut iota_inv = vec![None; e.order()];
    for g in y.g2().elements() {
        iota_inv[b.iota.apply(g)] = Some(g);
    }
    let phi = x
        .b()
        .elements()
        .map(|v| {
            let w = e.inv(b.kappa.apply(x.j().apply(v)));
            iota_inv[w].and_then(|g| y.j_inverse(g))
        })
        .collect::<Option<Vec<usize>>>()
        .ok_or_else(|| ButterflyError::Internal("κ(j(B)) does not land in ι(j′(B′))".into()))?;
    let mut phi0 = vec![None; x.c().order()];
    for v in e.elements() {
        let c = x.p().apply(b.delta.apply(v));
        let image = y.p().apply(b.gamma.apply(v));
        match phi0[c] {
            Some(old) if old != image => {
                return Err(ButterflyError::Internal(format!("φ₀ is not well defined at {c}")));
            }
            _ => phi0[c] = Some(image),
        }
    }
    let phi0: Vec<usize> = phi0.into_iter().map(|v| v.expect("δ and p are onto")).collect();
    let phi0 = Homomorphism::new(x.c(), y.c(), phi0).map_err(|_| ButterflyError::Internal("φ₀".into()))?;
    let phi = Homomorphism::new(x.b(), y.b(), phi).map_err(|_| ButterflyError::Internal("φ".into()))?;
    check_module_map(&x.pi(), &y.pi(), &phi0, &phi)?;
    Ok((phi0, phi))
}

/// Whether the class of `b` has an inverse: some `c: X′ → X` over the inverse
/// projection with both composites two-cell isomorphic to identities.
pub fn is_invertible(b: &Butterfly, limits: &Limits) -> Result<bool, ButterflyError> {
    let (phi0, phi) = project(b)?;
    let (Some(phi0_inv), Some(phi_inv)) = (phi0.inverse(), phi.inverse()) else {
        return Ok(false);
    };
    let id_x = identity(&b.source);
    let id_y = identity(&b.target);
    for c in weak_hom_set(&b.target, &b.source, &phi0_inv, &phi_inv, limits)?.classes {
        if two_cell(&compose(&c, b)?, &id_x, limits)?.is_some() && two_cell(&compose(b, &c)?, &id_y, limits)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingroup::{catalog, AbelianAction};
    use crate::xmod::corpus::crossed_extensions_up_to;
    use crate::xmod::morphisms;

    #[test]
    fn s3_butterfly_is_valid_and_projects_to_the_identity() {
        let b = s3_example();
        assert!(b.flags().representable);
        let (phi0, phi) = project(&b).unwrap();
        assert!(phi0.is_bijective());
        assert_eq!(phi.source().order(), 1);
        let zero = Homomorphism::zero(b.e(), b.target().g1());
        let err = Butterfly::new(b.source(), b.target(), b.kappa().clone(), b.iota().clone(), b.delta().clone(), zero)
            .unwrap_err();
        assert!(matches!(err, ButterflyError::IotaEquivariance { .. }), "{err}");
    }

    #[test]
    fn clause_errors_name_witnesses() {
        let z2 = catalog::cyclic(2);
        let x = CrossedExtension::zero(&AbelianAction::trivial(&z2, &z2).unwrap());
        let id = identity(&x);
        // κ landing outside ker γ
        let e = id.e().clone();
        let bad = e.elements().find(|&v| id.gamma().apply(v) != 0).unwrap();
        let kappa = Homomorphism::new(&z2, &e, vec![0, bad]);
        if let Ok(kappa) = kappa {
            let err = Butterfly::new(&x, &x, kappa, id.iota().clone(), id.delta().clone(), id.gamma().clone()).unwrap_err();
            assert_eq!(err, ButterflyError::GammaKappa { h: 1 });
            assert!(err.to_string().starts_with("gamma·kappa ≠ 0"));
        }
    }

    #[test]
    fn identity_projects_to_identity_and_is_flippable() {
        for item in crossed_extensions_up_to(3) {
            let id = identity(&item.xext);
            assert!(id.flags().representable && id.flags().flippable);
            let (phi0, phi) = project(&id).unwrap();
            assert_eq!(phi0, Homomorphism::identity(item.xext.c()));
            assert_eq!(phi, Homomorphism::identity(item.xext.b()));
            let span = span_of(&id).unwrap();
            assert!(span.left.class().weak_equivalence && span.right.class().weak_equivalence);
        }
    }

    #[test]
    fn morphisms_project_to_pi_and_spans_agree() {
        let corpus = crossed_extensions_up_to(2);
        let limits = Limits::default();
        for a in &corpus {
            for b in &corpus {
                for m in morphisms(&a.xext, &b.xext, &limits).unwrap() {
                    let bf = from_morphism(&m);
                    assert_eq!(project(&bf).unwrap(), m.pi());
                    assert_eq!(bf.flags().flippable, m.class().weak_equivalence, "{} → {}", a.name, b.name);
                    let span = span_of(&bf).unwrap();
                    let (l0, l1) = span.left.pi();
                    let (r0, r1) = span.right.pi();
                    let (l0i, l1i) = (l0.inverse().unwrap(), l1.inverse().unwrap());
                    assert_eq!((r0.after(&l0i), r1.after(&l1i)), m.pi());
                }
            }
        }
    }

    #[test]
    fn composition_with_identities_and_flips() {
        let limits = Limits::default();
        for item in crossed_extensions_up_to(3) {
            let x = &item.xext;
            let id = identity(x);
            let twice = compose(&id, &id).unwrap();
            assert!(two_cell(&twice, &id, &limits).unwrap().is_some(), "{}", item.name);
            let back = compose(&flip(&id).unwrap(), &id).unwrap();
            assert!(two_cell(&back, &id, &limits).unwrap().is_some());
        }
    }
}
