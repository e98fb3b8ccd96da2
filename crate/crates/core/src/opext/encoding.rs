//! The triangle extensions → modules → groups over a finite universe of
//! extensions of one group `C` by one abelian group `B`, as finite categories.

use std::sync::Arc;

use super::{classify, Extension, ExtensionError, Verdict};
use crate::fincat::{torsor_certificate, FinCategory, FincatError, FofTriple, FunctorTable, TorsorVerdict};
use crate::fingroup::{enumerate_homs, AbelianAction, Homomorphism};
use crate::limits::Limits;

#[derive(Debug, Clone)]
pub struct ModuleArrow {
    pub source: usize,
    pub target: usize,
    pub phi0: Homomorphism,
    pub phi1: Homomorphism,
}

#[derive(Debug, Clone)]
pub struct ExtensionArrow {
    pub source: usize,
    pub target: usize,
    pub h: Homomorphism,
}

/// `P: X → M`, `F: X → B`, `G: M → B` with one base object `C`, module objects
/// the distinct actions, and extension objects the given extensions.
#[derive(Debug, Clone)]
pub struct OpextEncoding {
    pub triple: FofTriple,
    pub extensions: Vec<Extension>,
    pub modules: Vec<AbelianAction>,
    pub base_arrows: Vec<Homomorphism>,
    pub module_arrows: Vec<ModuleArrow>,
    pub extension_arrows: Vec<ExtensionArrow>,
}

/// Torsor verdict on the encoding next to the concrete classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCheck {
    pub x: usize,
    pub y: usize,
    pub phi: usize,
    pub torsor: TorsorVerdict,
    pub classify: Verdict,
    pub abstract_homset: usize,
    pub concrete_homset: usize,
}

impl CrossCheck {
    pub fn agrees(&self) -> bool {
        let same = matches!(
            (&self.torsor, &self.classify),
            (TorsorVerdict::Empty, Verdict::Empty) | (TorsorVerdict::Torsor, Verdict::Torsor)
        );
        same && self.abstract_homset == self.concrete_homset
    }
}

#[derive(Debug, thiserror::Error)]
pub enum EncodingError {
    #[error("the universe is empty")]
    Empty,
    #[error("extensions do not share C and B")]
    Mixed,
    #[error(transparent)]
    Extension(#[from] ExtensionError),
    #[error(transparent)]
    Category(#[from] FincatError),
}

fn induced(e: &Extension, e_prime: &Extension, h: &Homomorphism) -> Option<(Homomorphism, Homomorphism)> {
    let phi1 = e
        .b()
        .elements()
        .map(|b| e_prime.k_inverse(h.apply(e.k().apply(b))))
        .collect::<Option<Vec<_>>>()?;
    let phi0 = e.c().elements().map(|x| e_prime.f().apply(h.apply(e.section()[x]))).collect();
    Some((
        Homomorphism::new_unchecked(e.b(), e_prime.b(), phi1),
        Homomorphism::new_unchecked(e.c(), e_prime.c(), phi0),
    ))
}

impl OpextEncoding {
    pub fn new(extensions: Vec<Extension>) -> Result<Self, EncodingError> {
        Self::restricted(extensions, |_, _, _| true)
    }

    /// Keeps only the extension morphisms accepted by `keep(arrow, φ₀, φ₁)`;
    /// the caller is responsible for closure under composition.
    pub fn restricted(
        extensions: Vec<Extension>,
        keep: impl Fn(&ExtensionArrow, &Homomorphism, &Homomorphism) -> bool,
    ) -> Result<Self, EncodingError> {
        let first = extensions.first().ok_or(EncodingError::Empty)?;
        let (c, b) = (first.c().clone(), first.b().clone());
        if extensions.iter().any(|e| e.c() != &c || e.b() != &b) {
            return Err(EncodingError::Mixed);
        }
        let limits = Limits::default();
        let base_arrows = enumerate_homs(&c, &c).map_err(ExtensionError::from)?;
        let b_ends = enumerate_homs(&b, &b).map_err(ExtensionError::from)?;

        let mut modules: Vec<AbelianAction> = Vec::new();
        let module_of: Vec<usize> = extensions
            .iter()
            .map(|e| {
                let a = e.action();
                modules.iter().position(|m| m == &a).unwrap_or_else(|| {
                    modules.push(a);
                    modules.len() - 1
                })
            })
            .collect();

        let mut module_arrows = Vec::new();
        for (i, xi) in modules.iter().enumerate() {
            for (j, xj) in modules.iter().enumerate() {
                for phi0 in &base_arrows {
                    for phi1 in &b_ends {
                        let equivariant = c.elements().all(|x| {
                            b.elements().all(|v| phi1.apply(xi.act(x, v)) == xj.act(phi0.apply(x), phi1.apply(v)))
                        });
                        if equivariant {
                            module_arrows.push(ModuleArrow { source: i, target: j, phi0: phi0.clone(), phi1: phi1.clone() });
                        }
                    }
                }
            }
        }

        let mut extension_arrows = Vec::new();
        let mut images = Vec::new();
        for (i, e) in extensions.iter().enumerate() {
            for (j, e_prime) in extensions.iter().enumerate() {
                for h in crate::fingroup::enumerate_homs_with(e.e(), e_prime.e(), &limits).map_err(ExtensionError::from)? {
                    let Some((phi1, phi0)) = induced(e, e_prime, &h) else { continue };
                    let arrow = ExtensionArrow { source: i, target: j, h };
                    if !keep(&arrow, &phi0, &phi1) {
                        continue;
                    }
                    let m = module_arrows
                        .iter()
                        .position(|a| a.source == module_of[i] && a.target == module_of[j] && a.phi0 == phi0 && a.phi1 == phi1)
                        .expect("induced module maps are equivariant");
                    let g = base_arrows.iter().position(|a| a == &phi0).expect("every endomorphism is listed");
                    extension_arrows.push(arrow);
                    images.push((m, g));
                }
            }
        }

        let base = Arc::new(category(1, vec![(0, 0); base_arrows.len()], &base_arrows, |g, f| g.after(f)));
        let m_ends: Vec<_> = module_arrows.iter().map(|a| (a.source, a.target)).collect();
        let m_cat = Arc::new(category(modules.len(), m_ends, &module_arrows, |g, f| ModuleArrow {
            source: f.source,
            target: g.target,
            phi0: g.phi0.after(&f.phi0),
            phi1: g.phi1.after(&f.phi1),
        }));
        let x_ends: Vec<_> = extension_arrows.iter().map(|a| (a.source, a.target)).collect();
        let x_cat = Arc::new(category(extensions.len(), x_ends, &extension_arrows, |g, f| ExtensionArrow {
            source: f.source,
            target: g.target,
            h: g.h.after(&f.h),
        }));

        let p = FunctorTable::new(x_cat.clone(), m_cat.clone(), module_of.clone(), images.iter().map(|i| i.0).collect())?;
        let f = FunctorTable::new(x_cat, base.clone(), vec![0; extensions.len()], images.iter().map(|i| i.1).collect())?;
        let g_mor = module_arrows
            .iter()
            .map(|a| base_arrows.iter().position(|b| b == &a.phi0).unwrap())
            .collect();
        let g = FunctorTable::new(m_cat, base, vec![0; modules.len()], g_mor)?;
        let triple = FofTriple::new(p, f, g)?;
        Ok(OpextEncoding { triple, extensions, modules, base_arrows, module_arrows, extension_arrows })
    }

    /// Runs both the abstract certificate and the concrete classification on `(x, y, φ)`.
    pub fn cross_check(&self, x: usize, y: usize, phi: usize, limits: &Limits) -> Result<CrossCheck, EncodingError> {
        let t = torsor_certificate(&self.triple, x, y, phi)?;
        let arrow = &self.module_arrows[phi];
        let report = classify(&self.extensions[x], &self.extensions[y], &arrow.phi0, &arrow.phi1, limits)?;
        Ok(CrossCheck {
            x,
            y,
            phi,
            torsor: t.verdict,
            classify: report.verdict,
            abstract_homset: t.homset.len(),
            concrete_homset: report.homset.len(),
        })
    }

    /// Every `(x, y, φ: P(x) → P(y))`.
    pub fn cross_check_all(&self, limits: &Limits) -> Result<Vec<CrossCheck>, EncodingError> {
        let (xc, mc) = (self.triple.x(), self.triple.m());
        let mut out = Vec::new();
        for x in xc.objects() {
            for y in xc.objects() {
                for &phi in mc.hom(self.triple.p.obj(x), self.triple.p.obj(y)) {
                    out.push(self.cross_check(x, y, phi, limits)?);
                }
            }
        }
        Ok(out)
    }
}

/// A category whose morphisms are values closed under `op`, located by equality.
fn category<T: PartialEq>(objects: usize, ends: Vec<(usize, usize)>, arrows: &[T], op: impl Fn(&T, &T) -> T) -> FinCategory {
    let identities = (0..objects)
        .map(|o| {
            (0..arrows.len())
                .find(|&i| ends[i] == (o, o) && (0..arrows.len()).all(|f| ends[f].1 != o || op(&arrows[i], &arrows[f]) == arrows[f]))
                .expect("identity present")
        })
        .collect();
    FinCategory::from_fn(objects, ends, identities, |g, f| {
        let gf = op(&arrows[g], &arrows[f]);
        arrows.iter().position(|a| a == &gf).expect("closed under composition")
    })
}

impl PartialEq for ModuleArrow {
    fn eq(&self, other: &Self) -> bool {
        (self.source, self.target) == (other.source, other.target) && self.phi0 == other.phi0 && self.phi1 == other.phi1
    }
}

impl PartialEq for ExtensionArrow {
    fn eq(&self, other: &Self) -> bool {
        (self.source, self.target) == (other.source, other.target) && self.h == other.h
    }
}
