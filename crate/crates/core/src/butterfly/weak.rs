//! Weak maps `X → X′` over a module morphism `(φ₀, φ)`.
//!
//! Every butterfly is isomorphic to one on the carrier `G₂ × H₁` with `ι(g) = (g, e)`,
//! `δ = pr₂` and `γ(g, x) = ∂′(g)·γ̃(x)`, where `γ̃(x)` is the smallest preimage of
//! `φ₀(p(x))` under `p′`. The group law is then
//! `(g, x)(g′, y) = (g·(γ̃(x)*g′)·f(x, y), xy)` for a normalized `f: H₁ × H₁ → G₂`, and the
//! remaining two-cells are the gauges `(g, x) ↦ (g·u(x), x)` with `u: H₁ → j′(B′)`.

use std::collections::{HashMap, HashSet};

use super::{project, Butterfly, ButterflyError};
use crate::cohomology::{cohomology_group_with, is_coboundary, CohomologyGroup};
use crate::fingroup::{FiniteGroup, HomSearch, Homomorphism};
use crate::limits::{power, Limits};
use crate::opext::{simply_transitive, Verdict};
use crate::xmod::{check_module_map, three_cocycle_of, CrossedExtension};

#[derive(Debug, Clone)]
pub struct WeakHomReport {
    /// One canonical butterfly per isomorphism class.
    pub classes: Vec<Butterfly>,
    /// `H²(C, B′, φ₀*ξ′)`.
    pub h2: CohomologyGroup,
    /// Whether `φ·ε − ε′∘(φ₀×φ₀×φ₀)` is a coboundary.
    pub cocycle_criterion: bool,
    /// `action_table[t][i]`: class of the `t`-th cohomology class acting on `classes[i]`.
    pub action_table: Vec<Vec<usize>>,
    pub verdict: Verdict,
}

/// `(f, κ)`: the factor table on `H₁ × H₁` and the images of `κ` on the carrier.
type Key = (Vec<usize>, Vec<usize>);

struct Frame<'a> {
    x: &'a CrossedExtension,
    y: &'a CrossedExtension,
    /// `γ̃`
    lift: Vec<usize>,
    n1: usize,
    m2: usize,
    gauges: Vec<Vec<usize>>,
}

impl<'a> Frame<'a> {
    fn new(x: &'a CrossedExtension, y: &'a CrossedExtension, phi0: &Homomorphism) -> Self {
        let lift = x.g1().elements().map(|v| y.section()[phi0.apply(x.p().apply(v))]).collect();
        let (n1, m2) = (x.g1().order(), y.g2().order());
        let central: Vec<usize> = y.b().elements().map(|b| y.j().apply(b)).collect();
        let mut gauges = vec![vec![0; n1]];
        for v in 1..n1 {
            gauges = gauges
                .into_iter()
                .flat_map(|u| {
                    central.iter().map(move |&c| {
                        let mut u = u.clone();
                        u[v] = c;
                        u
                    })
                })
                .collect();
        }
        Frame { x, y, lift, n1, m2, gauges }
    }

    fn act(&self, v: usize, g: usize) -> usize {
        self.y.xmod().act(self.lift[v], g)
    }

    fn group(&self, f: &[usize]) -> FiniteGroup {
        let (g2, h1, n1, m2) = (self.y.g2(), self.x.g1(), self.n1, self.m2);
        FiniteGroup::from_fn_unchecked(m2 * n1, |a, b| {
            let ((g, v), (h, w)) = ((a % m2, a / m2), (b % m2, b / m2));
            g2.mul(g2.mul(g, self.act(v, h)), f[v * n1 + w]) + m2 * h1.mul(v, w)
        })
    }

    fn gamma(&self, e: usize) -> usize {
        self.y.g1().mul(self.y.d().apply(e % self.m2), self.lift[e / self.m2])
    }

    /// `(f, κ)` transported along the gauge `u`.
    fn transform(&self, f: &[usize], kappa: &[usize], u: &[usize]) -> Key {
        let (g2, h1, n1, m2) = (self.y.g2(), self.x.g1(), self.n1, self.m2);
        let mut fu = f.to_vec();
        for v in 1..n1 {
            for w in 1..n1 {
                let shift = g2.mul(u[h1.mul(v, w)], g2.inv(g2.mul(u[v], self.act(v, u[w]))));
                fu[v * n1 + w] = g2.mul(f[v * n1 + w], shift);
            }
        }
        let ku = kappa.iter().map(|&e| g2.mul(e % m2, u[e / m2]) + m2 * (e / m2)).collect();
        (fu, ku)
    }

    fn canonical(&self, f: &[usize], kappa: &[usize]) -> Key {
        self.gauges.iter().map(|u| self.transform(f, kappa, u)).min().expect("the zero gauge")
    }

    fn is_orbit_min(&self, f: &[usize]) -> bool {
        self.gauges.iter().all(|u| self.transform(f, &[], u).0.as_slice() >= f)
    }

    fn butterfly(&self, (f, kappa): &Key) -> Result<Butterfly, ButterflyError> {
        let e = self.group(f);
        let (x, y) = (self.x, self.y);
        let kappa = Homomorphism::new_unchecked(x.g2(), &e, kappa.clone());
        let iota = Homomorphism::new_unchecked(y.g2(), &e, y.g2().elements().collect());
        let delta = Homomorphism::new_unchecked(&e, x.g1(), e.elements().map(|v| v / self.m2).collect());
        let gamma = Homomorphism::new_unchecked(&e, y.g1(), e.elements().map(|v| self.gamma(v)).collect());
        Butterfly::new(x, y, kappa, iota, delta, gamma)
    }

    /// Every normalized `f` with `∂′f(x,y) = γ̃(x)γ̃(y)γ̃(xy)⁻¹` satisfying the cocycle
    /// identity `f(x,y)·f(xy,z) = (γ̃(x)*f(y,z))·f(x,yz)`, in lexicographic order.
    fn factor_tables(&self, limits: &Limits, visit: &mut dyn FnMut(&[usize])) -> Result<(), ButterflyError> {
        let (g1, g2, h1, n1) = (self.y.g1(), self.y.g2(), self.x.g1(), self.n1);
        if n1 == 1 {
            visit(&[0]);
            return Ok(());
        }
        let k = n1 - 1;
        limits.charge(power(self.y.b().order(), k * k))?;
        let slot = |v: usize, w: usize| (v - 1) * k + (w - 1);
        let cands: Vec<Vec<usize>> = (0..k * k)
            .map(|s| {
                let (v, w) = (s / k + 1, s % k + 1);
                let target = g1.mul(g1.mul(self.lift[v], self.lift[w]), g1.inv(self.lift[h1.mul(v, w)]));
                g2.elements().filter(|&g| self.y.d().apply(g) == target).collect()
            })
            .collect();
        // each triple is checked at the last slot it depends on
        let mut checks: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); k * k];
        for a in 1..n1 {
            for b in 1..n1 {
                for c in 1..n1 {
                    let (ab, bc) = (h1.mul(a, b), h1.mul(b, c));
                    let last = [(a, b), (ab, c), (b, c), (a, bc)]
                        .iter()
                        .filter(|(v, w)| *v != 0 && *w != 0)
                        .map(|&(v, w)| slot(v, w))
                        .max()
                        .expect("(a, b) is non-trivial");
                    checks[last].push((a, b, c));
                }
            }
        }
        let mut f = vec![0; n1 * n1];
        self.descend(0, &cands, &checks, &mut f, visit);
        Ok(())
    }

    fn descend(
        &self,
        s: usize,
        cands: &[Vec<usize>],
        checks: &[Vec<(usize, usize, usize)>],
        f: &mut [usize],
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if s == cands.len() {
            visit(f);
            return;
        }
        let (g2, h1, n1, k) = (self.y.g2(), self.x.g1(), self.n1, self.n1 - 1);
        let cell = (s / k + 1) * n1 + s % k + 1;
        for &g in &cands[s] {
            f[cell] = g;
            let ok = checks[s].iter().all(|&(a, b, c)| {
                let (ab, bc) = (h1.mul(a, b), h1.mul(b, c));
                let lhs = g2.mul(f[a * n1 + b], f[ab * n1 + c]);
                let rhs = g2.mul(self.act(a, f[b * n1 + c]), f[a * n1 + bc]);
                lhs == rhs
            });
            if ok {
                self.descend(s + 1, cands, checks, f, visit);
            }
        }
        f[cell] = 0;
    }
}

/// Isomorphism classes of butterflies `X → X′` with `project = (φ₀, φ)`, with both
/// classification criteria cross-checked.
pub fn weak_hom_set(
    x: &CrossedExtension,
    y: &CrossedExtension,
    phi0: &Homomorphism,
    phi: &Homomorphism,
    limits: &Limits,
) -> Result<WeakHomReport, ButterflyError> {
    check_module_map(&x.pi(), &y.pi(), phi0, phi)?;
    let frame = Frame::new(x, y, phi0);
    limits.charge(frame.gauges.len() as u128)?;
    let (g2, m2) = (y.g2(), frame.m2);

    let mut orbit_mins = Vec::new();
    frame.factor_tables(limits, &mut |f| {
        if frame.is_orbit_min(f) {
            orbit_mins.push(f.to_vec());
        }
    })?;

    let mut seen: HashSet<Key> = HashSet::new();
    let mut found: Vec<(Key, Butterfly)> = Vec::new();
    for f in &orbit_mins {
        let e = frame.group(f);
        let mut search = HomSearch::new(x.g2(), &e)
            .filter(|h, v| v / m2 == x.d().apply(h) && frame.gamma(v) == 0);
        for b in x.b().elements() {
            search = search.fix(x.j().apply(b), g2.inv(y.j().apply(phi.apply(b))));
        }
        for kappa in search.all(limits)? {
            let key = frame.canonical(f, kappa.images());
            if !seen.insert(key.clone()) {
                continue;
            }
            match frame.butterfly(&key) {
                Ok(b) => found.push((key, b)),
                Err(ButterflyError::KappaEquivariance { .. }) => {}
                Err(other) => return Err(ButterflyError::Internal(format!("normalized butterfly rejected: {other}"))),
            }
        }
    }
    found.sort_by(|a, b| a.0.cmp(&b.0));
    let index: HashMap<Key, usize> = found.iter().enumerate().map(|(i, (k, _))| (k.clone(), i)).collect();

    let module = y.pi().pullback(phi0);
    let h2 = cohomology_group_with(2, &module, limits)?;
    let difference = three_cocycle_of(x)?.push(phi, &module).sub(&three_cocycle_of(y)?.pullback(phi0))?;
    let cocycle_criterion = is_coboundary(&difference)?.is_some();

    let mut problems = Vec::new();
    for (_, b) in &found {
        if project(b)? != (phi0.clone(), phi.clone()) {
            problems.push("a class projects to a different module morphism".to_string());
            break;
        }
    }
    let n1 = frame.n1;
    let mut action_table = Vec::new();
    if !found.is_empty() {
        for z in h2.class_representatives() {
            let mut row = Vec::with_capacity(found.len());
            for ((f, kappa), _) in &found {
                let mut shifted = f.clone();
                for v in 1..n1 {
                    for w in 1..n1 {
                        let (pv, pw) = (x.p().apply(v), x.p().apply(w));
                        let t = if pv == 0 || pw == 0 { 0 } else { z.at(&[pv, pw]) };
                        shifted[v * n1 + w] = g2.mul(f[v * n1 + w], y.j().apply(t));
                    }
                }
                match index.get(&frame.canonical(&shifted, kappa)) {
                    Some(&i) => row.push(i),
                    None => {
                        problems.push("H² moves a class outside the set".to_string());
                        row.push(usize::MAX);
                    }
                }
            }
            action_table.push(row);
        }
    }
    let nonempty = !found.is_empty();
    if nonempty != cocycle_criterion {
        problems.push(format!("enumeration says nonempty = {nonempty}, cocycle test says {cocycle_criterion}"));
    }
    if nonempty && found.len() != h2.order() {
        problems.push(format!("{} classes but |H²| = {}", found.len(), h2.order()));
    }
    if nonempty && problems.is_empty() && !simply_transitive(&action_table, found.len()) {
        problems.push("H² action is not simply transitive".to_string());
    }
    let verdict = match (problems.is_empty(), nonempty) {
        (false, _) => Verdict::Violation(problems.join("; ")),
        (true, false) => Verdict::Empty,
        (true, true) => Verdict::Torsor,
    };
    Ok(WeakHomReport {
        classes: found.into_iter().map(|(_, b)| b).collect(),
        h2,
        cocycle_criterion,
        action_table,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::butterfly::two_cell;
    use crate::fingroup::{catalog, AbelianAction, Action};
    use crate::xmod::CrossedModule;

    fn zero22() -> CrossedExtension {
        let z2 = catalog::cyclic(2);
        CrossedExtension::zero(&AbelianAction::trivial(&z2, &z2).unwrap())
    }

    fn times_two() -> CrossedExtension {
        let z4 = catalog::cyclic(4);
        let d = Homomorphism::new(&z4, &z4, vec![0, 2, 0, 2]).unwrap();
        CrossedExtension::of_xmod(CrossedModule::new(d, Action::trivial(&z4, &z4)).unwrap())
    }

    #[test]
    fn zero_extension_over_identities_has_two_classes() {
        let x = zero22();
        let id = Homomorphism::identity(x.c());
        let r = weak_hom_set(&x, &x, &id, &id, &Limits::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Torsor);
        assert_eq!(r.classes.len(), 2);
        let limits = Limits::default();
        assert!(two_cell(&r.classes[0], &r.classes[1], &limits).unwrap().is_none());
        // the carrier groups really are groups
        for b in &r.classes {
            FiniteGroup::from_table(&b.e().rows()).unwrap();
        }
    }

    #[test]
    fn multiplication_by_two_against_zero() {
        let (x, y) = (times_two(), zero22());
        let id = Homomorphism::identity(x.c());
        let r = weak_hom_set(&x, &y, &id, &id, &Limits::default()).unwrap();
        assert!(matches!(r.verdict, Verdict::Empty | Verdict::Torsor), "{:?}", r.verdict);
        assert!(r.classes.is_empty() || r.classes.len() == 2);
        assert_eq!(!r.classes.is_empty(), r.cocycle_criterion);
    }

    #[test]
    fn trivial_module_target_has_one_class() {
        let x = zero22();
        let z2 = catalog::cyclic(2);
        let y = CrossedExtension::zero(&AbelianAction::trivial(&z2, &FiniteGroup::trivial()).unwrap());
        let r = weak_hom_set(&x, &y, &Homomorphism::identity(&z2), &Homomorphism::zero(&z2, y.b()), &Limits::default())
            .unwrap();
        assert_eq!((r.classes.len(), r.h2.order()), (1, 1));
    }
}
