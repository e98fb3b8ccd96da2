//! Extensions with abelian kernel, their cocycles, transport along module
//! morphisms, Baer sum, and the classification of morphisms between them.

pub mod encoding;

use thiserror::Error;

use crate::cohomology::{cocycle_group, is_coboundary, CocycleGroup, Cochain, CohomologyError};
use crate::fingroup::{
    semidirect_product, AbelianAction, FiniteGroup, HomSearch, Homomorphism, Pullback, Quotient,
};
use crate::limits::{BudgetExceeded, Limits};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error("kernel map is not injective")]
    NotInjective,
    #[error("projection is not surjective")]
    NotSurjective,
    #[error("image of the kernel map differs from the kernel of the projection")]
    NotExact,
    #[error("kernel group is not abelian")]
    NotAbelian,
    #[error("maps do not compose: {0}")]
    Mismatch(&'static str),
    #[error("module map is not equivariant at ({0}, {1})")]
    NotEquivariant(usize, usize),
    #[error("extensions are over different modules")]
    ModuleMismatch,
    #[error("section does not split the projection or fix the identity")]
    BadSection,
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

/// `B ↣ E ↠ C` with `B` abelian.
#[derive(Debug, Clone)]
pub struct Extension {
    k: Homomorphism,
    f: Homomorphism,
    k_inv: Vec<Option<usize>>,
    section: Vec<usize>,
}

impl Extension {
    pub fn new(k: Homomorphism, f: Homomorphism) -> Result<Self, ExtensionError> {
        if k.target() != f.source() {
            return Err(ExtensionError::Mismatch("k: B → E and f: E → C must share E"));
        }
        if !k.source().is_abelian() {
            return Err(ExtensionError::NotAbelian);
        }
        if !k.is_injective() {
            return Err(ExtensionError::NotInjective);
        }
        if !f.is_surjective() {
            return Err(ExtensionError::NotSurjective);
        }
        if k.image() != f.kernel() {
            return Err(ExtensionError::NotExact);
        }
        let mut k_inv = vec![None; k.target().order()];
        for b in k.source().elements() {
            k_inv[k.apply(b)] = Some(b);
        }
        let section = f.target().elements().map(|x| f.first_preimage(x).unwrap()).collect();
        Ok(Extension { k, f, k_inv, section })
    }

    pub fn b(&self) -> &FiniteGroup {
        self.k.source()
    }

    pub fn e(&self) -> &FiniteGroup {
        self.k.target()
    }

    pub fn c(&self) -> &FiniteGroup {
        self.f.target()
    }

    pub fn k(&self) -> &Homomorphism {
        &self.k
    }

    pub fn f(&self) -> &Homomorphism {
        &self.f
    }

    /// The canonical section: smallest preimage of each element of `C`.
    pub fn section(&self) -> &[usize] {
        &self.section
    }

    pub fn k_inverse(&self, e: usize) -> Option<usize> {
        self.k_inv[e]
    }

    /// `ξ(x, b) = k⁻¹(s(x)·k(b)·s(x)⁻¹)`.
    pub fn action(&self) -> AbelianAction {
        let rows: Vec<Vec<usize>> = self
            .c()
            .elements()
            .map(|x| {
                self.b()
                    .elements()
                    .map(|b| self.k_inv[self.e().conj(self.section[x], self.k.apply(b))].unwrap())
                    .collect()
            })
            .collect();
        AbelianAction::new(self.c(), self.b(), &rows).expect("conjugation on an abelian normal subgroup")
    }

    /// Cocycle of the canonical section.
    pub fn cocycle(&self) -> Cochain {
        self.cocycle_with_section(&self.section).expect("canonical section is valid")
    }

    /// `ε(x, y) = k⁻¹(s(x)·s(y)·s(xy)⁻¹)` for an arbitrary normalized section `s`.
    pub fn cocycle_with_section(&self, s: &[usize]) -> Result<Cochain, ExtensionError> {
        if s.len() != self.c().order()
            || s[0] != 0
            || s.iter().enumerate().any(|(x, &e)| e >= self.e().order() || self.f.apply(e) != x)
        {
            return Err(ExtensionError::BadSection);
        }
        let (e, c) = (self.e(), self.c());
        let eps = Cochain::from_fn(2, &self.action(), |t| {
            let (x, y) = (t[0], t[1]);
            let v = e.mul(e.mul(s[x], s[y]), e.inv(s[c.mul(x, y)]));
            self.k_inv[v].unwrap()
        });
        Ok(eps)
    }

    /// Whether `h: E → E′` commutes with `φ₁` on kernels and `φ₀` on quotients.
    pub fn is_morphism(&self, other: &Extension, phi0: &Homomorphism, phi1: &Homomorphism, h: &Homomorphism) -> bool {
        self.b().elements().all(|b| h.apply(self.k.apply(b)) == other.k.apply(phi1.apply(b)))
            && self.e().elements().all(|e| other.f.apply(h.apply(e)) == phi0.apply(self.f.apply(e)))
    }
}

/// The extension on `B × C` with `(b, x)(b′, y) = (b + x·b′ + ε(x, y), xy)`, stored at `b + |B|·x`.
pub fn ext_of_cocycle(eps: &Cochain) -> Result<Extension, ExtensionError> {
    if eps.degree() != 2 || !eps.is_cocycle() {
        return Err(CohomologyError::NotACocycle.into());
    }
    let (b, c) = (eps.module(), eps.actor());
    let a = eps.action();
    let nb = b.order();
    let e = FiniteGroup::from_fn_unchecked(nb * c.order(), |p, q| {
        let (b1, x) = (p % nb, p / nb);
        let (b2, y) = (q % nb, q / nb);
        b.mul(b.mul(b1, a.act(x, b2)), eps.at(&[x, y])) + nb * c.mul(x, y)
    });
    let k = Homomorphism::new_unchecked(b, &e, b.elements().collect());
    let f = Homomorphism::new_unchecked(&e, c, e.elements().map(|p| p / nb).collect());
    Extension::new(k, f)
}

/// The semidirect product extension of a module.
pub fn split_extension(action: &AbelianAction) -> Extension {
    ext_of_cocycle(&Cochain::zero(2, action)).expect("zero is a cocycle")
}

fn check_equivariant(
    xi: &AbelianAction,
    xi_prime: &AbelianAction,
    phi0: &Homomorphism,
    phi1: &Homomorphism,
) -> Result<(), ExtensionError> {
    if phi0.source() != xi.actor()
        || phi0.target() != xi_prime.actor()
        || phi1.source() != xi.module()
        || phi1.target() != xi_prime.module()
    {
        return Err(ExtensionError::Mismatch("φ₀: C → C′ and φ₁: B → B′ expected"));
    }
    for x in xi.actor().elements() {
        for b in xi.module().elements() {
            if phi1.apply(xi.act(x, b)) != xi_prime.act(phi0.apply(x), phi1.apply(b)) {
                return Err(ExtensionError::NotEquivariant(x, b));
            }
        }
    }
    Ok(())
}

/// `φ₀*E′ = E′ ×_{C′} C`, an extension of `C` by `B′`.
pub fn pullback(e_prime: &Extension, phi0: &Homomorphism) -> Extension {
    let pb = Pullback::new(e_prime.f(), phi0);
    let k = Homomorphism::new_unchecked(
        e_prime.b(),
        &pb.group,
        e_prime.b().elements().map(|b| pb.index_of(e_prime.k.apply(b), 0).unwrap()).collect(),
    );
    Extension::new(k, pb.right.clone()).expect("pullback of an extension is an extension")
}

/// `φ₁*E = (B′ ⋊ E) / {(φ₁(b), k(b)⁻¹)}`, where `E` acts on `B′` through `C` and `target`.
pub fn pushforward(e: &Extension, phi1: &Homomorphism, target: &AbelianAction) -> Extension {
    let bp = phi1.target();
    let sd = semidirect_product(bp, e.e(), |g, b| target.act(e.f.apply(g), b));
    let normal: Vec<usize> = e
        .b()
        .elements()
        .map(|b| sd.pair(phi1.apply(b), e.e().inv(e.k.apply(b))))
        .collect();
    let q = Quotient::new(&sd.group, &normal);
    let k = Homomorphism::new_unchecked(
        bp,
        &q.group,
        bp.elements().map(|b| q.projection.apply(sd.pair(b, 0))).collect(),
    );
    let f = Homomorphism::new_unchecked(
        &q.group,
        e.c(),
        q.representatives.iter().map(|&r| e.f.apply(sd.split(r).1)).collect(),
    );
    Extension::new(k, f).expect("push forward of an extension is an extension")
}

/// Both transports to extensions of `C` by `B′` over `φ₀*ξ′`: `(pushforward, pullback)`.
pub fn transport(
    e: &Extension,
    e_prime: &Extension,
    phi0: &Homomorphism,
    phi1: &Homomorphism,
) -> Result<(Extension, Extension), ExtensionError> {
    let xi_prime = e_prime.action();
    check_equivariant(&e.action(), &xi_prime, phi0, phi1)?;
    let target = xi_prime.pullback(phi0);
    Ok((pushforward(e, phi1, &target), pullback(e_prime, phi0)))
}

/// Same `C`, `B` and induced action.
fn same_module(p: &Extension, q: &Extension) -> bool {
    p.c() == q.c() && p.b() == q.b() && p.action() == q.action()
}

/// A fibre isomorphism `P → Q` (identity on `B` and `C`) built from a coboundary witness.
pub fn fibre_iso(p: &Extension, q: &Extension) -> Result<Option<Homomorphism>, ExtensionError> {
    if !same_module(p, q) {
        return Err(ExtensionError::ModuleMismatch);
    }
    let diff = p.cocycle().sub(&q.cocycle())?;
    let Some(t) = is_coboundary(&diff)? else {
        return Ok(None);
    };
    // h(k_P(b)·s_P(x)) = k_Q(b + t(x))·s_Q(x)
    let (b, ep, eq) = (p.b(), p.e(), q.e());
    let mut images = vec![0; ep.order()];
    for x in p.c().elements() {
        for bb in b.elements() {
            let src = ep.mul(p.k.apply(bb), p.section[x]);
            let tx = if x == 0 { 0 } else { t.at(&[x]) };
            images[src] = eq.mul(q.k.apply(b.mul(bb, tx)), q.section[x]);
        }
    }
    let h = Homomorphism::new(ep, eq, images).expect("witness yields a homomorphism");
    Ok(Some(h))
}

/// Raw search for a fibre isomorphism, used as an oracle for [`fibre_iso`].
pub fn fibre_iso_search(p: &Extension, q: &Extension, limits: &Limits) -> Result<Option<Homomorphism>, ExtensionError> {
    if p.c() != q.c() || p.b() != q.b() {
        return Err(ExtensionError::ModuleMismatch);
    }
    let mut search = HomSearch::new(p.e(), q.e()).filter(|x, y| q.f.apply(y) == p.f.apply(x));
    for b in p.b().elements() {
        search = search.fix(p.k.apply(b), q.k.apply(b));
    }
    Ok(search.first(limits)?)
}

/// Extension of the sum of the canonical cocycles.
pub fn baer_sum(e1: &Extension, e2: &Extension) -> Result<Extension, ExtensionError> {
    if !same_module(e1, e2) {
        return Err(ExtensionError::ModuleMismatch);
    }
    ext_of_cocycle(&e1.cocycle().add(&e2.cocycle())?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// No morphism, and every criterion agrees.
    Empty,
    /// Morphisms form a torsor under `Z¹`, and every criterion agrees.
    Torsor,
    Violation(String),
}

#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub pushforward: Extension,
    pub pullback: Extension,
    /// Fibre isomorphism `φ₁*E → φ₀*E′` from the cocycle computation.
    pub fibre_iso: Option<Homomorphism>,
    /// Whether raw search also found one.
    pub fibre_iso_by_search: bool,
    /// Whether `φ₁·ε − ε′∘(φ₀×φ₀)` is a coboundary.
    pub cocycle_criterion: bool,
    pub homset: Vec<Homomorphism>,
    pub z1: CocycleGroup,
    /// `action_table[t][h]` = index of `t ⋆ h` in `homset`.
    pub action_table: Vec<Vec<usize>>,
    pub verdict: Verdict,
}

/// All morphisms `E → E′` over `(φ₀, φ₁)`, lexicographic.
pub fn homset(
    e: &Extension,
    e_prime: &Extension,
    phi0: &Homomorphism,
    phi1: &Homomorphism,
    limits: &Limits,
) -> Result<Vec<Homomorphism>, BudgetExceeded> {
    let mut search = HomSearch::new(e.e(), e_prime.e())
        .filter(|x, y| e_prime.f.apply(y) == phi0.apply(e.f.apply(x)));
    for b in e.b().elements() {
        search = search.fix(e.k.apply(b), e_prime.k.apply(phi1.apply(b)));
    }
    search.all(limits)
}

/// `(t ⋆ h)(g) = k′(t(f(g)))·h(g)`.
pub fn act_on_morphism(t: &Cochain, h: &Homomorphism, e: &Extension, e_prime: &Extension) -> Homomorphism {
    let target = e_prime.e();
    let images = e
        .e()
        .elements()
        .map(|g| {
            let x = e.f.apply(g);
            let tx = if x == 0 { 0 } else { t.at(&[x]) };
            target.mul(e_prime.k.apply(tx), h.apply(g))
        })
        .collect();
    Homomorphism::new_unchecked(e.e(), target, images)
}

pub fn classify(
    e: &Extension,
    e_prime: &Extension,
    phi0: &Homomorphism,
    phi1: &Homomorphism,
    limits: &Limits,
) -> Result<ClassificationReport, ExtensionError> {
    let (push, pull) = transport(e, e_prime, phi0, phi1)?;
    let fibre = fibre_iso(&push, &pull)?;
    let fibre_iso_by_search = fibre_iso_search(&push, &pull, limits)?.is_some();

    let target = e_prime.action().pullback(phi0);
    let difference = e.cocycle().push(phi1, &target).sub(&e_prime.cocycle().pullback(phi0))?;
    let cocycle_criterion = is_coboundary(&difference)?.is_some();

    let homset = homset(e, e_prime, phi0, phi1, limits)?;
    let z1 = cocycle_group(1, &target, limits)?;
    let mut action_table = Vec::with_capacity(z1.order());
    let mut closed = true;
    for t in &z1.elements {
        let row: Vec<usize> = homset
            .iter()
            .map(|h| {
                let moved = act_on_morphism(t, h, e, e_prime);
                homset.iter().position(|g| g == &moved).unwrap_or_else(|| {
                    closed = false;
                    usize::MAX
                })
            })
            .collect();
        action_table.push(row);
    }

    let nonempty = !homset.is_empty();
    let verdict = if fibre.is_some() != nonempty
        || fibre_iso_by_search != nonempty
        || cocycle_criterion != nonempty
    {
        Verdict::Violation(format!(
            "criteria disagree: homset {}, fibre iso {}, raw search {}, coboundary {}",
            nonempty,
            fibre.is_some(),
            fibre_iso_by_search,
            cocycle_criterion
        ))
    } else if !nonempty {
        Verdict::Empty
    } else if !closed {
        Verdict::Violation("Z¹ action leaves the hom-set".into())
    } else if homset.len() != z1.order() {
        Verdict::Violation(format!("|homset| = {} but |Z¹| = {}", homset.len(), z1.order()))
    } else if !simply_transitive(&action_table, homset.len()) {
        Verdict::Violation("Z¹ action is not simply transitive".into())
    } else {
        Verdict::Torsor
    };
    Ok(ClassificationReport {
        pushforward: push,
        pullback: pull,
        fibre_iso: fibre,
        fibre_iso_by_search,
        cocycle_criterion,
        homset,
        z1,
        action_table,
        verdict,
    })
}

/// Every column of the table (orbit map of one point) is a bijection onto `0..n`.
pub fn simply_transitive(table: &[Vec<usize>], n: usize) -> bool {
    (0..n).all(|h| {
        let mut hit = vec![false; n];
        table.len() == n
            && table.iter().all(|row| row[h] < n && !std::mem::replace(&mut hit[row[h]], true))
    })
}
