//! Crossed modules, crossed extensions, their morphisms, the induced module
//! functor, transport along module morphisms and the attached 3-cocycle.

mod cocycle;
pub mod corpus;

use thiserror::Error;

use crate::cohomology::CohomologyError;
use crate::fingroup::{
    direct_product, AbelianAction, Action, ActionError, FiniteGroup, Homomorphism, Pullback, Quotient, Subgroup,
};

pub use cocycle::{three_cocycle_of, three_cocycle_with, Choice};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum XmodError {
    #[error("maps do not fit together: {0}")]
    Mismatch(&'static str),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error("∂(g₁*g₂) ≠ g₁·∂(g₂)·g₁⁻¹ at g₁ = {g1}, g₂ = {g2}")]
    PrecrossedViolation { g1: usize, g2: usize },
    #[error("∂(g₂)*g₂′ ≠ g₂·g₂′·g₂⁻¹ at g₂ = {g2}, g₂′ = {g2p}")]
    PeifferViolation { g2: usize, g2p: usize },
    #[error("kernel element {0} is not central")]
    KernelNotCentral(usize),
    #[error("sequence is not exact at {0}")]
    NotExact(&'static str),
    #[error("{0} is not equivariant")]
    NotEquivariant(&'static str),
    #[error("square does not commute: {0}")]
    NotCommuting(&'static str),
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

/// `∂: G₂ → G₁` with an action of `G₁` on `G₂` satisfying equivariance and Peiffer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedModule {
    d: Homomorphism,
    act: Action,
}

impl CrossedModule {
    pub fn new(d: Homomorphism, act: Action) -> Result<Self, XmodError> {
        if act.actor() != d.target() || act.target() != d.source() {
            return Err(XmodError::Mismatch("action must be of G₁ on G₂ for ∂: G₂ → G₁"));
        }
        let (g2, g1) = (d.source(), d.target());
        for a in g1.elements() {
            for x in g2.elements() {
                if d.apply(act.act(a, x)) != g1.conj(a, d.apply(x)) {
                    return Err(XmodError::PrecrossedViolation { g1: a, g2: x });
                }
            }
        }
        for x in g2.elements() {
            for y in g2.elements() {
                if act.act(d.apply(x), y) != g2.conj(x, y) {
                    return Err(XmodError::PeifferViolation { g2: x, g2p: y });
                }
            }
        }
        for k in d.kernel() {
            if g2.elements().any(|y| g2.mul(k, y) != g2.mul(y, k)) {
                return Err(XmodError::KernelNotCentral(k));
            }
        }
        Ok(CrossedModule { d, act })
    }

    pub fn g1(&self) -> &FiniteGroup {
        self.d.target()
    }

    pub fn g2(&self) -> &FiniteGroup {
        self.d.source()
    }

    pub fn d(&self) -> &Homomorphism {
        &self.d
    }

    pub fn action(&self) -> &Action {
        &self.act
    }

    #[inline]
    pub fn act(&self, g1: usize, g2: usize) -> usize {
        self.act.act(g1, g2)
    }
}

/// `0 → B →j G₂ →∂ G₁ →p C → 1` exact, with `∂` a crossed module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedExtension {
    xmod: CrossedModule,
    j: Homomorphism,
    p: Homomorphism,
    j_inv: Vec<Option<usize>>,
    section: Vec<usize>,
}

impl CrossedExtension {
    pub fn new(xmod: CrossedModule, j: Homomorphism, p: Homomorphism) -> Result<Self, XmodError> {
        if j.target() != xmod.g2() || p.source() != xmod.g1() {
            return Err(XmodError::Mismatch("j: B → G₂ and p: G₁ → C"));
        }
        if !j.is_injective() || j.image() != xmod.d.kernel() {
            return Err(XmodError::NotExact("B → G₂ → G₁"));
        }
        if !p.is_surjective() || p.kernel() != xmod.d.image() {
            return Err(XmodError::NotExact("G₂ → G₁ → C"));
        }
        let mut j_inv = vec![None; xmod.g2().order()];
        for b in j.source().elements() {
            j_inv[j.apply(b)] = Some(b);
        }
        let section = p.target().elements().map(|c| p.first_preimage(c).unwrap()).collect();
        Ok(CrossedExtension { xmod, j, p, j_inv, section })
    }

    /// Kernel and cokernel computed from the crossed module.
    pub fn of_xmod(xmod: CrossedModule) -> Self {
        let kernel = Subgroup::new(xmod.g2(), &xmod.d.kernel());
        let coker = Quotient::new(xmod.g1(), &xmod.d.image());
        CrossedExtension::new(xmod, kernel.inclusion, coker.projection).expect("kernel and cokernel are exact")
    }

    /// `B →0 C` with `G₂ = B`, `G₁ = C` and the given action.
    pub fn zero(module: &AbelianAction) -> Self {
        let (c, b) = (module.actor(), module.module());
        let xmod = CrossedModule { d: Homomorphism::zero(b, c), act: module.as_action().clone() };
        CrossedExtension::new(xmod, Homomorphism::identity(b), Homomorphism::identity(c)).expect("zero crossed extension")
    }

    pub fn xmod(&self) -> &CrossedModule {
        &self.xmod
    }

    pub fn b(&self) -> &FiniteGroup {
        self.j.source()
    }

    pub fn c(&self) -> &FiniteGroup {
        self.p.target()
    }

    pub fn g1(&self) -> &FiniteGroup {
        self.xmod.g1()
    }

    pub fn g2(&self) -> &FiniteGroup {
        self.xmod.g2()
    }

    pub fn d(&self) -> &Homomorphism {
        &self.xmod.d
    }

    pub fn j(&self) -> &Homomorphism {
        &self.j
    }

    pub fn p(&self) -> &Homomorphism {
        &self.p
    }

    pub fn j_inverse(&self, g2: usize) -> Option<usize> {
        self.j_inv[g2]
    }

    /// Smallest preimage of each element of `C`.
    pub fn section(&self) -> &[usize] {
        &self.section
    }

    /// The induced module `(C, B, ξ)` with `x·b = j⁻¹(s(x) * j(b))`.
    pub fn pi(&self) -> AbelianAction {
        let rows: Vec<Vec<usize>> = self
            .c()
            .elements()
            .map(|x| {
                self.b()
                    .elements()
                    .map(|b| self.j_inv[self.xmod.act(self.section[x], self.j.apply(b))].expect("B is G₁-stable"))
                    .collect()
            })
            .collect();
        // independent of the preimage: elements of im ∂ act trivially on the central kernel
        debug_assert!(self.g1().elements().all(|g| {
            let x = self.p.apply(g);
            self.b().elements().all(|b| self.j_inv[self.xmod.act(g, self.j.apply(b))] == Some(rows[x][b]))
        }));
        AbelianAction::new(self.c(), self.b(), &rows).expect("the kernel of a crossed module is a C-module")
    }
}

/// Flags of a morphism of crossed extensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MorphismClass {
    pub weak_equivalence: bool,
    pub final_: bool,
    pub discrete_fibration: bool,
}

/// `(γ, f₁, f₂, β)` between crossed extensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XExtMorphism {
    pub source: CrossedExtension,
    pub target: CrossedExtension,
    pub f1: Homomorphism,
    pub f2: Homomorphism,
    pub beta: Homomorphism,
    pub gamma: Homomorphism,
}

impl XExtMorphism {
    /// Derives `β` and `γ` from an equivariant pair `(f₁, f₂)` with `∂′·f₂ = f₁·∂`.
    pub fn new(
        source: &CrossedExtension,
        target: &CrossedExtension,
        f1: Homomorphism,
        f2: Homomorphism,
    ) -> Result<Self, XmodError> {
        if f1.source() != source.g1() || f1.target() != target.g1() || f2.source() != source.g2() || f2.target() != target.g2() {
            return Err(XmodError::Mismatch("f₁: G₁ → G₁′ and f₂: G₂ → G₂′"));
        }
        if target.d().after(&f2) != f1.after(source.d()) {
            return Err(XmodError::NotCommuting("∂′·f₂ = f₁·∂"));
        }
        for g in source.g1().elements() {
            for x in source.g2().elements() {
                if f2.apply(source.xmod.act(g, x)) != target.xmod.act(f1.apply(g), f2.apply(x)) {
                    return Err(XmodError::NotEquivariant("(f₁, f₂)"));
                }
            }
        }
        let beta = source
            .b()
            .elements()
            .map(|b| target.j_inverse(f2.apply(source.j.apply(b))).expect("f₂ maps ker ∂ into ker ∂′"))
            .collect();
        let gamma: Vec<usize> = source.c().elements().map(|c| target.p.apply(f1.apply(source.section[c]))).collect();
        let gamma = Homomorphism::new_unchecked(source.c(), target.c(), gamma);
        if target.p.after(&f1) != gamma.after(&source.p) {
            return Err(XmodError::NotCommuting("p′·f₁ = γ·p"));
        }
        let beta = Homomorphism::new_unchecked(source.b(), target.b(), beta);
        Ok(XExtMorphism { source: source.clone(), target: target.clone(), f1, f2, beta, gamma })
    }

    pub fn identity(x: &CrossedExtension) -> Self {
        XExtMorphism {
            source: x.clone(),
            target: x.clone(),
            f1: Homomorphism::identity(x.g1()),
            f2: Homomorphism::identity(x.g2()),
            beta: Homomorphism::identity(x.b()),
            gamma: Homomorphism::identity(x.c()),
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &XExtMorphism) -> XExtMorphism {
        XExtMorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            f1: self.f1.after(&first.f1),
            f2: self.f2.after(&first.f2),
            beta: self.beta.after(&first.beta),
            gamma: self.gamma.after(&first.gamma),
        }
    }

    /// `Π` of the morphism: `(π₀, π₁) = (γ, β)`.
    pub fn pi(&self) -> (Homomorphism, Homomorphism) {
        (self.gamma.clone(), self.beta.clone())
    }

    pub fn class(&self) -> MorphismClass {
        let pi0_iso = self.gamma.is_bijective();
        let pi1_iso = self.beta.is_bijective();
        MorphismClass {
            weak_equivalence: pi0_iso && pi1_iso,
            final_: pi0_iso && self.beta.is_surjective(),
            discrete_fibration: self.f2.is_bijective(),
        }
    }
}

/// Every morphism `(f₁, f₂)` between two crossed extensions, lexicographic in `(f₁, f₂)`.
pub fn morphisms(
    x: &CrossedExtension,
    y: &CrossedExtension,
    limits: &crate::limits::Limits,
) -> Result<Vec<XExtMorphism>, crate::limits::BudgetExceeded> {
    let mut out = Vec::new();
    let f1s = crate::fingroup::enumerate_homs_with(x.g1(), y.g1(), limits)?;
    let f2s = crate::fingroup::enumerate_homs_with(x.g2(), y.g2(), limits)?;
    for f1 in &f1s {
        for f2 in &f2s {
            if let Ok(m) = XExtMorphism::new(x, y, f1.clone(), f2.clone()) {
                out.push(m);
            }
        }
    }
    Ok(out)
}

/// Checks that `φ: B → B′` is a module map `ξ → φ₀*ξ′`.
pub fn check_module_map(
    source: &AbelianAction,
    target: &AbelianAction,
    phi0: &Homomorphism,
    phi: &Homomorphism,
) -> Result<(), XmodError> {
    if phi0.source() != source.actor() || phi0.target() != target.actor() {
        return Err(XmodError::Mismatch("φ₀: C → C′"));
    }
    if phi.source() != source.module() || phi.target() != target.module() {
        return Err(XmodError::Mismatch("φ: B → B′"));
    }
    for c in source.actor().elements() {
        for b in source.module().elements() {
            if phi.apply(source.act(c, b)) != target.act(phi0.apply(c), phi.apply(b)) {
                return Err(XmodError::NotEquivariant("φ"));
            }
        }
    }
    Ok(())
}

/// `φ₀*X′`: `G₁′ ×_{C′} C` with `G₂′` unchanged.
pub fn pullback_xext(x_prime: &CrossedExtension, phi0: &Homomorphism) -> CrossedExtension {
    let pb = Pullback::new(x_prime.p(), phi0);
    let g1 = &pb.group;
    let d: Vec<usize> = x_prime
        .g2()
        .elements()
        .map(|g| pb.index_of(x_prime.d().apply(g), 0).expect("∂′ lands in ker p′"))
        .collect();
    let d = Homomorphism::new_unchecked(x_prime.g2(), g1, d);
    let act = Action::from_fn_unchecked(g1, x_prime.g2(), |i, g| x_prime.xmod.act(pb.pairs[i].0, g));
    let xmod = CrossedModule::new(d, act).expect("pullback of a crossed module");
    CrossedExtension::new(xmod, x_prime.j.clone(), pb.right.clone()).expect("pullback is exact")
}

/// `φ_*X`: `(B′ × G₂)/{(φ(b), j(b)⁻¹)}` over the module `target` on `B′`, with `G₁` and `C` unchanged.
pub fn pushforward_xext(x: &CrossedExtension, phi: &Homomorphism, target: &AbelianAction) -> CrossedExtension {
    let (b2, g2) = (target.module(), x.g2());
    let prod = direct_product(b2, g2);
    let mut normal: Vec<usize> = x.b().elements().map(|b| prod.pair(phi.apply(b), g2.inv(x.j.apply(b)))).collect();
    normal.sort_unstable();
    let q = Quotient::new(&prod.group, &normal);
    let new_g2 = &q.group;
    let d: Vec<usize> = q.representatives.iter().map(|&r| x.d().apply(prod.split(r).1)).collect();
    let d = Homomorphism::new_unchecked(new_g2, x.g1(), d);
    let act = Action::from_fn_unchecked(x.g1(), new_g2, |g, e| {
        let (b, h) = prod.split(q.representatives[e]);
        q.projection.apply(prod.pair(target.act(x.p.apply(g), b), x.xmod.act(g, h)))
    });
    let j = b2.elements().map(|b| q.projection.apply(prod.pair(b, 0))).collect();
    let j = Homomorphism::new_unchecked(b2, new_g2, j);
    let xmod = CrossedModule::new(d, act).expect("push forward of a crossed module");
    CrossedExtension::new(xmod, j, x.p.clone()).expect("push forward is exact")
}

/// `(φ_*X, φ₀*X′)`, both over `(C, B′, φ₀*ξ′)`.
pub fn transport_xext(
    x: &CrossedExtension,
    x_prime: &CrossedExtension,
    phi0: &Homomorphism,
    phi: &Homomorphism,
) -> Result<(CrossedExtension, CrossedExtension), XmodError> {
    let target = x_prime.pi().pullback(phi0);
    check_module_map(&x.pi(), &x_prime.pi(), phi0, phi)?;
    Ok((pushforward_xext(x, phi, &target), pullback_xext(x_prime, phi0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingroup::{catalog, structure_of};
    use crate::limits::Limits;

    fn conj_s3_z3() -> CrossedExtension {
        let s3 = catalog::symmetric3();
        let n = Subgroup::new(&s3, &[0, 1, 2]);
        let act = Action::from_fn_unchecked(&s3, &n.group, |g, x| n.index_of(s3.conj(g, n.elements[x])).unwrap());
        CrossedExtension::of_xmod(CrossedModule::new(n.inclusion.clone(), act).unwrap())
    }

    #[test]
    fn axioms() {
        let x = conj_s3_z3();
        assert_eq!((x.b().order(), x.c().order()), (1, 2));

        let z2 = catalog::cyclic(2);
        let zero = CrossedModule::new(Homomorphism::zero(&z2, &z2), Action::trivial(&z2, &z2));
        assert!(zero.is_ok());

        let s3 = catalog::symmetric3();
        let err = CrossedModule::new(Homomorphism::zero(&s3, &z2), Action::trivial(&z2, &s3)).unwrap_err();
        assert!(matches!(err, XmodError::PeifferViolation { .. }));
    }

    #[test]
    fn induced_modules() {
        let z3 = catalog::cyclic(3);
        let st = structure_of(&z3).unwrap();
        // 0-map Z3 → Aut(Z3) with Aut(Z3) acting by evaluation
        let aut = &st.automorphisms;
        let act = Action::from_fn_unchecked(aut, &z3, |a, x| st.eval(a, x));
        let x = CrossedExtension::of_xmod(CrossedModule::new(st.conj.clone(), act).unwrap());
        let pi = x.pi();
        assert_eq!((pi.actor().order(), pi.module().order()), (2, 3));
        assert!(!pi.is_trivial());
        assert_eq!(pi.act(1, 1), 2);

        let iso = CrossedExtension::of_xmod(
            CrossedModule::new(Homomorphism::identity(&z3), Action::conjugation(&z3)).unwrap(),
        );
        assert!(iso.b().is_trivial() && iso.c().is_trivial());
    }

    #[test]
    fn morphism_flags() {
        let z2 = catalog::cyclic(2);
        let triv = AbelianAction::trivial(&z2, &z2).unwrap();
        let zero = CrossedExtension::zero(&triv);
        let id = XExtMorphism::identity(&zero);
        let flags = id.class();
        assert!(flags.weak_equivalence && flags.final_ && flags.discrete_fibration);

        // inclusion of the trivial group into C: f₂ iso, π₀ not iso
        let trivial = FiniteGroup::trivial();
        let over_one = CrossedExtension::zero(&AbelianAction::trivial(&trivial, &z2).unwrap());
        let incl = Homomorphism::zero(&trivial, &z2);
        let m = XExtMorphism::new(&over_one, &zero, incl, Homomorphism::identity(&z2)).unwrap();
        assert_eq!(m.class(), MorphismClass { weak_equivalence: false, final_: false, discrete_fibration: true });

        // π₀ iso, π₁ = Z2×Z2 → Z2 onto but not injective
        let v4 = catalog::elementary_abelian(2, 2);
        let big = CrossedExtension::zero(&AbelianAction::trivial(&z2, &v4).unwrap());
        let proj = Homomorphism::new(&v4, &z2, vec![0, 1, 0, 1]).unwrap();
        let m = XExtMorphism::new(&big, &zero, Homomorphism::identity(&z2), proj).unwrap();
        assert_eq!(m.class(), MorphismClass { weak_equivalence: false, final_: true, discrete_fibration: false });
        for m in morphisms(&zero, &zero, &Limits::default()).unwrap() {
            let f = m.class();
            assert_eq!(f.weak_equivalence, f.final_ && m.beta.is_bijective());
        }
    }

    #[test]
    fn pi_is_functorial() {
        let z2 = catalog::cyclic(2);
        let z4 = catalog::cyclic(4);
        let xs: Vec<CrossedExtension> = vec![
            CrossedExtension::zero(&AbelianAction::trivial(&z2, &z2).unwrap()),
            CrossedExtension::zero(&AbelianAction::trivial(&z2, &z4).unwrap()),
            CrossedExtension::of_xmod(
                CrossedModule::new(Homomorphism::new(&z4, &z4, vec![0, 2, 0, 2]).unwrap(), Action::trivial(&z4, &z4)).unwrap(),
            ),
        ];
        let limits = Limits::default();
        for a in &xs {
            for b in &xs {
                for c in &xs {
                    for m1 in morphisms(a, b, &limits).unwrap() {
                        for m2 in morphisms(b, c, &limits).unwrap() {
                            let comp = m2.after(&m1);
                            assert_eq!(comp.gamma, m2.gamma.after(&m1.gamma));
                            assert_eq!(comp.beta, m2.beta.after(&m1.beta));
                            let direct = XExtMorphism::new(a, c, comp.f1.clone(), comp.f2.clone()).unwrap();
                            assert_eq!(direct, comp);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn transports_land_in_the_right_fibre() {
        let z2 = catalog::cyclic(2);
        let z4 = catalog::cyclic(4);
        let mult2 = CrossedExtension::of_xmod(
            CrossedModule::new(Homomorphism::new(&z4, &z4, vec![0, 2, 0, 2]).unwrap(), Action::trivial(&z4, &z4)).unwrap(),
        );
        let zero4 = CrossedExtension::zero(&AbelianAction::trivial(&z2, &z4).unwrap());
        for phi0 in crate::fingroup::enumerate_homs(&z2, &z2).unwrap() {
            for phi in crate::fingroup::enumerate_homs(mult2.b(), zero4.b()).unwrap() {
                let (push, pull) = transport_xext(&mult2, &zero4, &phi0, &phi).unwrap();
                let expected = zero4.pi().pullback(&phi0);
                assert_eq!(push.pi(), expected);
                assert_eq!(pull.pi(), expected);
                assert_eq!(push.g2().order(), zero4.b().order() * mult2.g2().order() / mult2.b().order());
            }
        }
        let trivial = FiniteGroup::trivial();
        let from_one = Homomorphism::zero(&trivial, &z2);
        let pulled = pullback_xext(&zero4, &from_one);
        assert!(pulled.c().is_trivial());
        assert_eq!(pulled.g2(), zero4.g2());
    }
}
