//! Extensions with non-abelian kernel: abstract kernels, factor systems, the
//! canonical crossed extension `Z(K) → K → Aut(K) → Out(K)`, the obstruction
//! class, and the classification of extensions inducing a given abstract kernel.

use std::collections::HashMap;

use thiserror::Error;

use crate::cohomology::{cohomology_group_with, is_coboundary, Cochain, CohomologyError, CohomologyGroup};
use crate::fingroup::{structure_of, Action, FiniteGroup, GroupStructureReport, HomSearch, Homomorphism, Subgroup};
use crate::limits::{power, BudgetExceeded, Limits};
use crate::opext::{simply_transitive, Verdict};
use crate::xmod::{three_cocycle_of, CrossedExtension, CrossedModule, XmodError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchreierError {
    #[error("ψ₀ must map C into Out(K)")]
    NotIntoOut,
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Xmod(#[from] XmodError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

/// `conj: K → Aut(K)` with `Aut(K)` acting by evaluation; kernel `Z(K)`,
/// cokernel `Out(K)` indexed as in [`structure_of`].
pub fn canonical_faithful_xext(k: &FiniteGroup) -> Result<CrossedExtension, SchreierError> {
    let st = structure_of(k)?;
    Ok(canonical_from(&st))
}

fn canonical_from(st: &GroupStructureReport) -> CrossedExtension {
    let act = Action::from_fn_unchecked(&st.automorphisms, &st.group, |a, v| st.eval(a, v));
    let xmod = CrossedModule::new(st.conj.clone(), act).expect("conjugation is a crossed module");
    let center = Subgroup::new(&st.group, &st.center);
    CrossedExtension::new(xmod, center.inclusion, st.out_projection().clone()).expect("Z(K) → K → Aut(K) → Out(K) is exact")
}

/// `ψ₀: C → Out(K)`.
#[derive(Debug, Clone)]
pub struct AbstractKernel {
    psi0: Homomorphism,
    structure: GroupStructureReport,
}

impl AbstractKernel {
    pub fn new(k: &FiniteGroup, psi0: Homomorphism) -> Result<Self, SchreierError> {
        let structure = structure_of(k)?;
        if psi0.target() != &structure.outer.group {
            return Err(SchreierError::NotIntoOut);
        }
        Ok(AbstractKernel { psi0, structure })
    }

    /// Every abstract kernel `C → Out(K)`, lexicographic.
    pub fn all(c: &FiniteGroup, k: &FiniteGroup) -> Result<Vec<Self>, SchreierError> {
        let structure = structure_of(k)?;
        Ok(crate::fingroup::enumerate_homs(c, &structure.outer.group)?
            .into_iter()
            .map(|psi0| AbstractKernel { psi0, structure: structure.clone() })
            .collect())
    }

    pub fn c(&self) -> &FiniteGroup {
        self.psi0.source()
    }

    pub fn k(&self) -> &FiniteGroup {
        &self.structure.group
    }

    pub fn psi0(&self) -> &Homomorphism {
        &self.psi0
    }

    pub fn structure(&self) -> &GroupStructureReport {
        &self.structure
    }

    /// `(C, Z(K), ψ₀*ζ_K)`.
    pub fn center_module(&self) -> crate::fingroup::AbelianAction {
        canonical_from(&self.structure).pi().pullback(&self.psi0)
    }
}

/// `lift: C → Aut(K)` as automorphism indices and a normalized `fset: C × C → K`,
/// giving `(a, x)(b, y) = (a·lift(x)(b)·fset(x, y), xy)` on `K × C`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactorSystem {
    pub lift: Vec<usize>,
    pub fset: Vec<usize>,
}

impl FactorSystem {
    /// The two algebraic conditions and normalization.
    pub fn satisfies_conditions(&self, c: &FiniteGroup, st: &GroupStructureReport) -> bool {
        let (k, aut, n) = (&st.group, &st.automorphisms, c.order());
        let f = |x: usize, y: usize| self.fset[x * n + y];
        if self.lift[0] != 0 || c.elements().any(|x| f(0, x) != 0 || f(x, 0) != 0) {
            return false;
        }
        for x in c.elements() {
            for y in c.elements() {
                let lhs = aut.mul(self.lift[x], self.lift[y]);
                let rhs = aut.mul(st.conj.apply(f(x, y)), self.lift[c.mul(x, y)]);
                if lhs != rhs {
                    return false;
                }
                for z in c.elements() {
                    let l = k.mul(st.eval(self.lift[x], f(y, z)), f(x, c.mul(y, z)));
                    let r = k.mul(f(x, y), f(c.mul(x, y), z));
                    if l != r {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The multiplication table on `K × C`, element `(a, x)` at `a + |K|·x`.
    pub fn table(&self, c: &FiniteGroup, st: &GroupStructureReport) -> Vec<Vec<usize>> {
        let (k, m, n) = (&st.group, st.group.order(), c.order());
        (0..m * n)
            .map(|u| {
                (0..m * n)
                    .map(|v| {
                        let ((a, x), (b, y)) = ((u % m, u / m), (v % m, v / m));
                        k.mul(k.mul(a, st.eval(self.lift[x], b)), self.fset[x * n + y]) + m * c.mul(x, y)
                    })
                    .collect()
            })
            .collect()
    }

    /// The oracle: whether the table is a group.
    pub fn is_group(&self, c: &FiniteGroup, st: &GroupStructureReport) -> bool {
        FiniteGroup::from_table(&self.table(c, st)).is_ok()
    }

    /// The extension `K → E → C`, with `E` on `K × C`.
    pub fn extension(&self, c: &FiniteGroup, st: &GroupStructureReport) -> (Homomorphism, Homomorphism) {
        let m = st.group.order();
        let e = FiniteGroup::from_table(&self.table(c, st)).expect("factor system gives a group");
        let incl = Homomorphism::new_unchecked(&st.group, &e, st.group.elements().collect());
        let proj = Homomorphism::new_unchecked(&e, c, e.elements().map(|v| v / m).collect());
        (incl, proj)
    }

    /// Re-sectioning by a normalized `h: C → K`.
    fn resection(&self, c: &FiniteGroup, st: &GroupStructureReport, h: &[usize]) -> FactorSystem {
        let (k, aut, n) = (&st.group, &st.automorphisms, c.order());
        let lift = c.elements().map(|x| aut.mul(st.conj.apply(h[x]), self.lift[x])).collect();
        let mut fset = vec![0; n * n];
        for x in c.elements() {
            for y in c.elements() {
                let v = k.mul(k.mul(h[x], st.eval(self.lift[x], h[y])), self.fset[x * n + y]);
                fset[x * n + y] = k.mul(v, k.inv(h[c.mul(x, y)]));
            }
        }
        FactorSystem { lift, fset }
    }
}

/// Every normalized `h: C → K`.
fn resections(c: &FiniteGroup, k: &FiniteGroup) -> Vec<Vec<usize>> {
    let mut all = vec![vec![0; c.order()]];
    for x in 1..c.order() {
        all = all
            .into_iter()
            .flat_map(|h| {
                k.elements().map(move |a| {
                    let mut h = h.clone();
                    h[x] = a;
                    h
                })
            })
            .collect();
    }
    all
}

struct Classifier<'a> {
    c: &'a FiniteGroup,
    st: &'a GroupStructureReport,
    gauges: Vec<Vec<usize>>,
}

impl Classifier<'_> {
    fn canonical(&self, fs: &FactorSystem) -> FactorSystem {
        self.gauges.iter().map(|h| fs.resection(self.c, self.st, h)).min().expect("the trivial re-sectioning")
    }

    fn is_orbit_min(&self, fs: &FactorSystem) -> bool {
        self.gauges.iter().all(|h| &fs.resection(self.c, self.st, h) >= fs)
    }
}

/// One canonical factor system per equivalence class of extensions inducing `ψ₀`.
pub fn ext_classes(ak: &AbstractKernel, limits: &Limits) -> Result<Vec<FactorSystem>, SchreierError> {
    let (c, st) = (ak.c(), &ak.structure);
    let (k, aut, n) = (&st.group, &st.automorphisms, c.order());
    limits.charge(power(aut.order(), n.saturating_sub(1)).saturating_mul(power(k.order(), (n.saturating_sub(1)).pow(2))))?;

    let cosets: Vec<Vec<usize>> = c
        .elements()
        .map(|x| {
            if x == 0 {
                vec![0]
            } else {
                aut.elements().filter(|&a| st.out_projection().apply(a) == ak.psi0.apply(x)).collect()
            }
        })
        .collect();
    let classifier = Classifier { c, st, gauges: resections(c, k) };
    let mut found = Vec::new();
    let mut lift = vec![0; n];
    let mut problem = None;
    each_choice(&cosets, 1, &mut lift, &mut |lift| {
        for fs in factor_sets(c, st, lift) {
            let valid = fs.satisfies_conditions(c, st);
            if valid != fs.is_group(c, st) {
                problem = Some(format!("conditions and group oracle disagree on {fs:?}"));
            }
            if valid && classifier.is_orbit_min(&fs) {
                found.push(fs);
            }
        }
    });
    if let Some(p) = problem {
        return Err(SchreierError::Internal(p));
    }
    found.sort();
    // distinct orbits must also be distinct as extensions
    for (i, a) in found.iter().enumerate() {
        for b in &found[i + 1..] {
            if equivalent(a, b, c, st, limits)? {
                return Err(SchreierError::Internal("two re-sectioning orbits give equivalent extensions".into()));
            }
        }
    }
    Ok(found)
}

fn each_choice(options: &[Vec<usize>], at: usize, current: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if at >= options.len() {
        visit(current);
        return;
    }
    for &o in &options[at] {
        current[at] = o;
        each_choice(options, at + 1, current, visit);
    }
}

/// Every normalized `fset` for fixed `lift` with `lift(x)lift(y) = conj(fset(x,y))·lift(xy)`
/// and the twisted cocycle identity.
fn factor_sets(c: &FiniteGroup, st: &GroupStructureReport, lift: &[usize]) -> Vec<FactorSystem> {
    let (k, aut, n) = (&st.group, &st.automorphisms, c.order());
    if n == 1 {
        return vec![FactorSystem { lift: lift.to_vec(), fset: vec![0] }];
    }
    let m = n - 1;
    let cands: Vec<Vec<usize>> = (0..m * m)
        .map(|s| {
            let (x, y) = (s / m + 1, s % m + 1);
            let target = aut.mul(aut.mul(lift[x], lift[y]), aut.inv(lift[c.mul(x, y)]));
            k.elements().filter(|&a| st.conj.apply(a) == target).collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut fset = vec![0; n * n];
    descend(c, st, lift, &cands, 0, &mut fset, &mut out);
    out
}

fn descend(
    c: &FiniteGroup,
    st: &GroupStructureReport,
    lift: &[usize],
    cands: &[Vec<usize>],
    s: usize,
    fset: &mut [usize],
    out: &mut Vec<FactorSystem>,
) {
    let (k, n) = (&st.group, c.order());
    let m = n - 1;
    if s == cands.len() {
        out.push(FactorSystem { lift: lift.to_vec(), fset: fset.to_vec() });
        return;
    }
    let (x0, y0) = (s / m + 1, s % m + 1);
    let assigned = |x: usize, y: usize| x == 0 || y == 0 || (x - 1) * m + (y - 1) <= s;
    for &a in &cands[s] {
        fset[x0 * n + y0] = a;
        let ok = c.elements().all(|x| {
            c.elements().all(|y| {
                c.elements().all(|z| {
                    let (xy, yz) = (c.mul(x, y), c.mul(y, z));
                    let touched = [(x, y), (xy, z), (y, z), (x, yz)].contains(&(x0, y0));
                    if !touched || ![(x, y), (xy, z), (y, z), (x, yz)].iter().all(|&(u, v)| assigned(u, v)) {
                        return true;
                    }
                    let l = k.mul(st.eval(lift[x], fset[y * n + z]), fset[x * n + yz]);
                    let r = k.mul(fset[x * n + y], fset[xy * n + z]);
                    l == r
                })
            })
        });
        if ok {
            descend(c, st, lift, cands, s + 1, fset, out);
        }
    }
    fset[x0 * n + y0] = 0;
}

/// Whether the two extensions are connected by an isomorphism that fixes `K` pointwise
/// and induces the identity on `C`.
pub fn equivalent(
    a: &FactorSystem,
    b: &FactorSystem,
    c: &FiniteGroup,
    st: &GroupStructureReport,
    limits: &Limits,
) -> Result<bool, SchreierError> {
    let (ka, pa) = a.extension(c, st);
    let (kb, pb) = b.extension(c, st);
    let mut search = HomSearch::new(ka.target(), kb.target()).filter(|u, v| pb.apply(v) == pa.apply(u));
    for v in st.group.elements() {
        search = search.fix(ka.apply(v), kb.apply(v));
    }
    Ok(search.first(limits)?.is_some())
}

/// `ω_K ∘ (ψ₀ × ψ₀ × ψ₀)` over `(C, Z(K), ψ₀*ζ_K)` and whether it is a coboundary.
pub fn obstruction_class(ak: &AbstractKernel) -> Result<(Cochain, bool), SchreierError> {
    let omega = three_cocycle_of(&canonical_from(&ak.structure))?.pullback(&ak.psi0);
    let vanishes = is_coboundary(&omega)?.is_some();
    Ok((omega, vanishes))
}

#[derive(Debug, Clone)]
pub struct SmlReport {
    pub obstruction: Cochain,
    pub obstruction_vanishes: bool,
    pub ext_classes: Vec<FactorSystem>,
    /// `H²(C, Z(K), ψ₀*ζ_K)`.
    pub h2: CohomologyGroup,
    /// `action_table[t][i]`: class of `fset·z_t` for the `t`-th cohomology class.
    pub action_table: Vec<Vec<usize>>,
    pub verdict: Verdict,
}

impl SmlReport {
    /// One-line summary.
    pub fn summary(&self) -> String {
        let n = self.ext_classes.len();
        let torsor = match &self.verdict {
            Verdict::Torsor => "torsor verified".to_string(),
            Verdict::Empty => "obstruction does not vanish".to_string(),
            Verdict::Violation(v) => format!("violation: {v}"),
        };
        format!("{n} extension class{}; H² order {}; {torsor}", if n == 1 { "" } else { "es" }, self.h2.order())
    }
}

pub fn sml_report(ak: &AbstractKernel, limits: &Limits) -> Result<SmlReport, SchreierError> {
    let (obstruction, obstruction_vanishes) = obstruction_class(ak)?;
    let classes = ext_classes(ak, limits)?;
    let module = ak.center_module();
    let h2 = cohomology_group_with(2, &module, limits)?;
    let (c, st) = (ak.c(), &ak.structure);
    let classifier = Classifier { c, st, gauges: resections(c, &st.group) };
    let index: HashMap<&FactorSystem, usize> = classes.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let center = &st.center;
    let n = c.order();

    let mut problems = Vec::new();
    for fs in &classes {
        let induced: Vec<usize> = fs.lift.iter().map(|&a| st.out_projection().apply(a)).collect();
        if induced != ak.psi0.images() {
            problems.push("an extension induces a different abstract kernel".to_string());
        }
    }
    let mut action_table = Vec::new();
    if !classes.is_empty() {
        for z in h2.class_representatives() {
            let row = classes
                .iter()
                .map(|fs| {
                    let mut shifted = fs.clone();
                    for x in 1..n {
                        for y in 1..n {
                            let t = center[z.at(&[x, y])];
                            shifted.fset[x * n + y] = st.group.mul(fs.fset[x * n + y], t);
                        }
                    }
                    index.get(&classifier.canonical(&shifted)).copied().unwrap_or_else(|| {
                        problems.push("a central cocycle moves a class outside the set".to_string());
                        usize::MAX
                    })
                })
                .collect();
            action_table.push(row);
        }
    }
    let nonempty = !classes.is_empty();
    if nonempty != obstruction_vanishes {
        problems.push(format!("extensions exist = {nonempty}, obstruction vanishes = {obstruction_vanishes}"));
    }
    if nonempty && classes.len() != h2.order() {
        problems.push(format!("{} classes but |H²| = {}", classes.len(), h2.order()));
    }
    if nonempty && problems.is_empty() && !simply_transitive(&action_table, classes.len()) {
        problems.push("H² action is not simply transitive".to_string());
    }
    let verdict = match (problems.is_empty(), nonempty) {
        (false, _) => Verdict::Violation(problems.join("; ")),
        (true, false) => Verdict::Empty,
        (true, true) => Verdict::Torsor,
    };
    Ok(SmlReport { obstruction, obstruction_vanishes, ext_classes: classes, h2, action_table, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingroup::{catalog, enumerate_homs, Quotient};

    fn kernel(c: &FiniteGroup, k: &FiniteGroup, images: Vec<usize>) -> AbstractKernel {
        let st = structure_of(k).unwrap();
        AbstractKernel::new(k, Homomorphism::new(c, &st.outer.group, images).unwrap()).unwrap()
    }

    #[test]
    fn canonical_crossed_extensions() {
        let x = canonical_faithful_xext(&FiniteGroup::trivial()).unwrap();
        assert_eq!((x.b().order(), x.c().order()), (1, 1));
        let x = canonical_faithful_xext(&catalog::cyclic(3)).unwrap();
        assert_eq!((x.b().order(), x.c().order()), (3, 2));
        assert!(x.d().is_trivial());
        assert_eq!(x.pi().act(1, 1), 2);
        let x = canonical_faithful_xext(&catalog::symmetric3()).unwrap();
        assert_eq!((x.b().order(), x.c().order()), (1, 1));
        assert!(x.d().is_bijective());
    }

    #[test]
    fn pinned_instances() {
        let (z2, z3) = (catalog::cyclic(2), catalog::cyclic(3));
        let r = sml_report(&kernel(&z2, &z3, vec![0, 1]), &Limits::default()).unwrap();
        assert_eq!(r.summary(), "1 extension class; H² order 1; torsor verified");
        let (incl, _) = r.ext_classes[0].extension(&z2, &structure_of(&z3).unwrap());
        assert!(!incl.target().is_abelian());

        let r = sml_report(&kernel(&z2, &z2, vec![0, 0]), &Limits::default()).unwrap();
        assert_eq!(r.ext_classes.len(), 2);
        assert_eq!(r.verdict, Verdict::Torsor);
        let st = structure_of(&z2).unwrap();
        let mut cyclic = r.ext_classes.iter().map(|f| f.extension(&z2, &st).0.target().element_order(3) == 4);
        assert!(cyclic.any(|b| b));

        let r = sml_report(&kernel(&FiniteGroup::trivial(), &catalog::symmetric3(), vec![0]), &Limits::default()).unwrap();
        assert_eq!((r.ext_classes.len(), r.h2.order()), (1, 1));
    }

    #[test]
    fn abelian_kernels_have_no_obstruction() {
        for k in [catalog::cyclic(3), catalog::cyclic(4), catalog::elementary_abelian(2, 2)] {
            for ak in AbstractKernel::all(&catalog::cyclic(2), &k).unwrap() {
                assert!(obstruction_class(&ak).unwrap().1);
            }
        }
    }

    #[test]
    fn conditions_match_the_group_oracle_on_raw_candidates() {
        let c = catalog::cyclic(2);
        for k in [catalog::cyclic(2), catalog::cyclic(3), catalog::symmetric3()] {
            let st = structure_of(&k).unwrap();
            for a in st.automorphisms.elements() {
                for f in k.elements() {
                    let fs = FactorSystem { lift: vec![0, a], fset: vec![0, 0, 0, f] };
                    assert_eq!(fs.satisfies_conditions(&c, &st), fs.is_group(&c, &st), "{fs:?}");
                }
            }
        }
    }

    #[test]
    fn every_extension_in_the_catalog_is_reconstructed() {
        let limits = Limits::default();
        for (c, k) in [(catalog::cyclic(2), catalog::cyclic(2)), (catalog::cyclic(2), catalog::cyclic(3)), (catalog::cyclic(2), catalog::cyclic(4)), (catalog::cyclic(2), catalog::elementary_abelian(2, 2))] {
            let st = structure_of(&k).unwrap();
            for item in catalog::groups_up_to(8).into_iter().filter(|g| g.group.order() == c.order() * k.order()) {
                let e = &item.group;
                for incl in enumerate_homs(&k, e).unwrap().into_iter().filter(|h| h.is_injective() && e.is_normal(&h.image())) {
                    let q = Quotient::new(e, &incl.image());
                    let Some(to_c) = enumerate_homs(&q.group, &c).unwrap().into_iter().find(|h| h.is_bijective()) else { continue };
                    let proj = to_c.after(&q.projection);
                    // factor system of the smallest-index section
                    let s: Vec<usize> = c.elements().map(|x| proj.first_preimage(x).unwrap()).collect();
                    let pre = |g: usize| k.elements().find(|&v| incl.apply(v) == g).unwrap();
                    let lift: Vec<usize> = s
                        .iter()
                        .map(|&sx| st.aut_index(&k.elements().map(|v| pre(e.conj(sx, incl.apply(v)))).collect::<Vec<_>>()).unwrap())
                        .collect();
                    let n = c.order();
                    let mut fset = vec![0; n * n];
                    for x in c.elements() {
                        for y in c.elements() {
                            fset[x * n + y] = pre(e.mul(e.mul(s[x], s[y]), e.inv(s[c.mul(x, y)])));
                        }
                    }
                    let fs = FactorSystem { lift, fset };
                    assert!(fs.satisfies_conditions(&c, &st));
                    let psi0: Vec<usize> = fs.lift.iter().map(|&a| st.out_projection().apply(a)).collect();
                    let ak = AbstractKernel::new(&k, Homomorphism::new(&c, &st.outer.group, psi0).unwrap()).unwrap();
                    let classes = ext_classes(&ak, &limits).unwrap();
                    assert!(
                        classes.iter().any(|g| equivalent(g, &fs, &c, &st, &limits).unwrap()),
                        "{} as an extension of {:?} by {:?}",
                        item.name,
                        c.order(),
                        k.order()
                    );
                }
            }
        }
    }
}
