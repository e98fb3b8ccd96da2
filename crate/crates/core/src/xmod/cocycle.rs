use super::{CrossedExtension, XmodError};
use crate::cohomology::Cochain;

/// Which preimage to pick for the section `s: C → G₁` and the lifts `m: C × C → G₂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Choice {
    Smallest,
    Largest,
}

/// The 3-cocycle of `X` over `Π(X)` for the smallest-index section and lifts.
pub fn three_cocycle_of(x: &CrossedExtension) -> Result<Cochain, XmodError> {
    three_cocycle_with(x, Choice::Smallest)
}

/// `ω(x,y,z) = j⁻¹(m(x,y)·m(xy,z)·(s(x)*m(y,z)·m(x,yz))⁻¹)` where
/// `∂m(x,y) = s(x)s(y)s(xy)⁻¹`; normalized choices keep `s(e) = e` and `m = e` on identities.
pub fn three_cocycle_with(x: &CrossedExtension, choice: Choice) -> Result<Cochain, XmodError> {
    let (g1, g2, c) = (x.g1(), x.g2(), x.c());
    let pick = |mut it: Box<dyn Iterator<Item = usize> + '_>| match choice {
        Choice::Smallest => it.next(),
        Choice::Largest => it.last(),
    };
    let s: Vec<usize> = c
        .elements()
        .map(|v| if v == 0 { 0 } else { pick(Box::new(g1.elements().filter(|&g| x.p().apply(g) == v))).unwrap() })
        .collect();
    let n = c.order();
    let mut m = vec![0; n * n];
    for a in 1..n {
        for b in 1..n {
            let target = g1.mul(g1.mul(s[a], s[b]), g1.inv(s[c.mul(a, b)]));
            m[a * n + b] = pick(Box::new(g2.elements().filter(|&h| x.d().apply(h) == target)))
                .ok_or_else(|| XmodError::Internal(format!("s({a})s({b})s({a}{b})⁻¹ is not in im ∂")))?;
        }
    }
    let module = x.pi();
    let mut escaped = None;
    let omega = Cochain::from_fn(3, &module, |t| {
        let (a, b, d) = (t[0], t[1], t[2]);
        let (ab, bd) = (c.mul(a, b), c.mul(b, d));
        let lhs = g2.mul(m[a * n + b], m[ab * n + d]);
        let rhs = g2.mul(x.xmod().act(s[a], m[b * n + d]), m[a * n + bd]);
        let v = g2.mul(lhs, g2.inv(rhs));
        x.j_inverse(v).unwrap_or_else(|| {
            escaped = Some((a, b, d));
            0
        })
    });
    if let Some(t) = escaped {
        return Err(XmodError::Internal(format!("ω{t:?} escapes j(B)")));
    }
    if !omega.is_cocycle() {
        return Err(XmodError::Internal("d³ω ≠ 0".into()));
    }
    Ok(omega)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::is_coboundary;
    use crate::fingroup::{catalog, AbelianAction, Action, Homomorphism};
    use crate::xmod::{corpus, CrossedModule};

    #[test]
    fn zero_crossed_extension_has_zero_cocycle() {
        let z2 = catalog::cyclic(2);
        let x = CrossedExtension::zero(&AbelianAction::trivial(&z2, &z2).unwrap());
        assert!(three_cocycle_of(&x).unwrap().is_zero());
    }

    #[test]
    fn multiplication_by_two_on_z4() {
        let z4 = catalog::cyclic(4);
        let d = Homomorphism::new(&z4, &z4, vec![0, 2, 0, 2]).unwrap();
        let x = CrossedExtension::of_xmod(CrossedModule::new(d, Action::trivial(&z4, &z4)).unwrap());
        let omega = three_cocycle_of(&x).unwrap();
        // s(1) = 1 and m(1,1) = 1; with a trivial action ω(1,1,1) = m(1,1) − m(1,1)
        assert!(omega.is_cocycle());
        assert!(omega.is_zero());
        assert!(is_coboundary(&omega).unwrap().is_some());
    }

    #[test]
    fn section_independent_up_to_coboundary() {
        for item in corpus::crossed_extensions_up_to(4) {
            let a = three_cocycle_with(&item.xext, Choice::Smallest).unwrap();
            let b = three_cocycle_with(&item.xext, Choice::Largest).unwrap();
            assert!(is_coboundary(&a.sub(&b).unwrap()).unwrap().is_some(), "{}", item.name);
        }
    }
}
