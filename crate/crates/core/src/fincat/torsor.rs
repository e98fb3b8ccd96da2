//! The bijection `Φ(g) = w ∘ g ∘ u` and the torsor certificate.

use super::fibration::Cartesian;
use super::{FincatError, FofTriple};

/// The data of `Φ: X_{P(φ*y)}(φ_*x, φ*y) → X_φ(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiReport {
    /// `F`-cartesian lifting of `G(φ)` at `y`.
    pub w: usize,
    pub phi_k: usize,
    pub phi_v: usize,
    /// Opcartesian lifting of `φ_v` at `x` inside the `F`-fibre.
    pub u: usize,
    /// `φ*y = src w`.
    pub pulled: usize,
    /// `φ_*x = dst u`.
    pub pushed: usize,
    /// Vertical morphisms `φ_*x → φ*y`.
    pub domain: Vec<usize>,
    /// `X_φ(x, y)`.
    pub codomain: Vec<usize>,
    /// `map[i] = Φ(domain[i])`.
    pub map: Vec<usize>,
    pub bijective: bool,
}

pub fn phi_bijection(t: &FofTriple, x: usize, y: usize, phi: usize) -> Result<PhiReport, FincatError> {
    let (xc, mc) = (t.x(), t.m());
    if mc.src(phi) != t.p.obj(x) || mc.dst(phi) != t.p.obj(y) {
        return Err(FincatError::Precondition(format!("φ = {phi} is not a map P({x}) → P({y})")));
    }
    let w = Cartesian::new(&t.f)
        .lifting(t.g.mor(phi), y)
        .ok_or_else(|| FincatError::NoLifting(format!("F-cartesian lifting of G({phi}) at {y}")))?;
    let pulled = xc.src(w);
    let phi_k = t.p.mor(w);
    let phi_v = mc
        .hom(mc.src(phi), t.p.obj(pulled))
        .iter()
        .copied()
        .find(|&m| t.g.is_vertical(m) && mc.compose(phi_k, m) == phi)
        .ok_or_else(|| FincatError::NoLifting(format!("vertical factor of {phi} through {phi_k}")))?;

    // opcartesian lifting of φ_v at x for P restricted to the F-fibre
    let (xb, mb, pb) = t.fibre(t.f.obj(x));
    let pb_op = pb.opposite();
    let local_u = Cartesian::new(&pb_op)
        .lifting(mb.local_morphism(phi_v).expect("φ_v is G-vertical"), xb.local_object(x).expect("x lies over F(x)"))
        .ok_or_else(|| FincatError::NoLifting(format!("opcartesian lifting of {phi_v} at {x}")))?;
    let u = xb.morphisms[local_u];
    let pushed = xc.dst(u);

    let id_base = mc.id(t.p.obj(pulled));
    let domain: Vec<usize> = xc.hom(pushed, pulled).iter().copied().filter(|&g| t.p.mor(g) == id_base).collect();
    let codomain: Vec<usize> = xc.hom(x, y).iter().copied().filter(|&g| t.p.mor(g) == phi).collect();
    let map: Vec<usize> = domain.iter().map(|&g| xc.compose(w, xc.compose(g, u))).collect();
    let mut sorted = map.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let bijective = sorted.len() == domain.len() && sorted == codomain;
    Ok(PhiReport { w, phi_k, phi_v, u, pulled, pushed, domain, codomain, map, bijective })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TorsorVerdict {
    Empty,
    Torsor,
    Violation(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsorReport {
    pub phi: PhiReport,
    /// `X_φ(x, y)`.
    pub homset: Vec<usize>,
    /// `H = X_{P(φ*y)}(φ*y, φ*y)`.
    pub acting_group: Vec<usize>,
    /// `group_table[i][j]` = index of `H[i] ∘ H[j]`.
    pub group_table: Vec<Vec<usize>>,
    /// `action[i][j]` = index in `homset` of `H[i] · homset[j]`.
    pub action: Vec<Vec<usize>>,
    pub verdict: TorsorVerdict,
}

/// Errors if some `P`-vertical morphism is not invertible.
pub(crate) fn check_groupoidal_fibres(t: &FofTriple) -> Result<(), FincatError> {
    let xc = t.x();
    for h in xc.morphisms() {
        if t.p.is_vertical(h) && xc.inverse(h).is_none() {
            return Err(FincatError::FibresNotGroupoidal { object: t.p.obj(xc.src(h)), morphism: h });
        }
    }
    Ok(())
}

pub fn torsor_certificate(t: &FofTriple, x: usize, y: usize, phi: usize) -> Result<TorsorReport, FincatError> {
    check_groupoidal_fibres(t)?;
    let report = phi_bijection(t, x, y, phi)?;
    let xc = t.x();
    let pulled = report.pulled;
    let id_base = t.m().id(t.p.obj(pulled));
    let h: Vec<usize> = xc.hom(pulled, pulled).iter().copied().filter(|&g| t.p.mor(g) == id_base).collect();
    let pos = |list: &[usize], g: usize| list.iter().position(|&z| z == g);
    let group_table: Vec<Vec<usize>> = h
        .iter()
        .map(|&a| h.iter().map(|&b| pos(&h, xc.compose(a, b)).expect("H is closed")).collect())
        .collect();

    let homset = report.codomain.clone();
    let mut action = Vec::with_capacity(h.len());
    let mut closed = true;
    for &a in &h {
        let row = homset
            .iter()
            .map(|&f| {
                // h · Φ(g) = Φ(h ∘ g)
                let g = pos(&report.map, f).map(|i| report.domain[i]);
                match g.and_then(|g| pos(&report.domain, xc.compose(a, g))) {
                    Some(i) => pos(&homset, report.map[i]).unwrap_or(usize::MAX),
                    None => {
                        closed = false;
                        usize::MAX
                    }
                }
            })
            .collect::<Vec<_>>();
        action.push(row);
    }

    let verdict = if !report.bijective {
        TorsorVerdict::Violation("Φ is not a bijection".into())
    } else if homset.is_empty() {
        TorsorVerdict::Empty
    } else if !closed || homset.len() != h.len() {
        TorsorVerdict::Violation(format!("|homset| = {} but |H| = {}", homset.len(), h.len()))
    } else if !crate::opext::simply_transitive(&action, homset.len()) {
        TorsorVerdict::Violation("action is not simply transitive".into())
    } else {
        TorsorVerdict::Torsor
    };
    Ok(TorsorReport { phi: report, homset, acting_group: h, group_table, action, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{random, FinCategory, FunctorTable};
    use std::sync::Arc;

    fn point() -> Arc<FinCategory> {
        Arc::new(FinCategory::new(1, vec![(0, 0)], vec![0], &[(0, 0, 0)], 200).unwrap())
    }

    #[test]
    fn groupoids_over_a_point() {
        // Z/4 acting on an orbit of size 2: every homset has the two elements of the stabilizer
        let x = Arc::new(random::action_groupoid(4, &[2, 1]));
        let p = FunctorTable::new(x.clone(), point(), vec![0; 3], vec![0; 12]).unwrap();
        let g = FunctorTable::identity(&point());
        let t = FofTriple::new(p.clone(), p, g).unwrap();
        assert!(crate::fincat::is_fibrewise_opfibration(&t));
        let r = torsor_certificate(&t, 0, 1, 0).unwrap();
        assert_eq!(r.verdict, TorsorVerdict::Torsor);
        assert_eq!((r.homset.len(), r.acting_group.len()), (2, 2));
        assert!(r.phi.bijective);
        let r = torsor_certificate(&t, 2, 2, 0).unwrap();
        assert_eq!((r.homset.len(), r.acting_group.len()), (4, 4));
        assert_eq!(r.verdict, TorsorVerdict::Torsor);
        let r = torsor_certificate(&t, 0, 2, 0).unwrap();
        assert_eq!(r.verdict, TorsorVerdict::Empty);
    }

    #[test]
    fn non_groupoidal_fibres_are_rejected() {
        let c = Arc::new(crate::fincat::tests::idempotent_fixture());
        let p = FunctorTable::new(c.clone(), point(), vec![0, 0], vec![0; 5]).unwrap();
        let g = FunctorTable::identity(&point());
        let t = FofTriple::new(p.clone(), p, g).unwrap();
        assert!(matches!(
            torsor_certificate(&t, 0, 1, 0),
            Err(FincatError::FibresNotGroupoidal { object: 0, morphism: 2 })
        ));
    }
}
