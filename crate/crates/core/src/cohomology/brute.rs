//! Exhaustive cohomology over all normalized cochains.
//!
//! Independent of the lattice machinery; used as a test oracle and by the
//! verification suites wherever `|B|^((|C|−1)ⁿ)` is small.

use std::collections::HashSet;

use super::{tuple_of, Cochain, CohomologyError};
use crate::fingroup::AbelianAction;
use crate::limits::{power, BudgetExceeded};

/// Cap on the number of cochains enumerated.
pub const MAX_SEARCH: u128 = 1_000_000;

/// Every normalized `n`-cochain, in lexicographic order of values.
pub fn all_cochains(n: usize, action: &AbelianAction) -> Result<Vec<Cochain>, BudgetExceeded> {
    let c = action.actor().order();
    let m = action.module().order();
    let free: Vec<usize> = (0..c.pow(n as u32)).filter(|&i| !tuple_of(i, n, c).contains(&0)).collect();
    let total = power(m, free.len());
    if total > MAX_SEARCH {
        return Err(BudgetExceeded { needed: total, budget: MAX_SEARCH as u64 });
    }
    let mut out = Vec::with_capacity(total as usize);
    let mut digits = vec![0usize; free.len()];
    loop {
        let mut values = vec![0; c.pow(n as u32)];
        for (&slot, &d) in free.iter().zip(&digits) {
            values[slot] = d;
        }
        out.push(Cochain { degree: n, action: action.clone(), values });
        // odometer, last slot fastest
        let mut k = digits.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < m {
                break;
            }
            digits[k] = 0;
        }
    }
}

/// Brute-force description of `Hⁿ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteCohomology {
    pub cocycles: usize,
    pub coboundaries: usize,
    /// `killed[k]` = number of classes `h` with `k·h = 0`, for `k` in `0..=exponent bound`.
    pub killed: Vec<usize>,
}

impl BruteCohomology {
    pub fn order(&self) -> usize {
        self.cocycles / self.coboundaries
    }
}

pub fn cohomology(n: usize, action: &AbelianAction) -> Result<BruteCohomology, CohomologyError> {
    let cocycles: Vec<Cochain> = all_cochains(n, action)?.into_iter().filter(Cochain::is_cocycle).collect();
    let coboundaries: HashSet<Vec<usize>> = all_cochains(n - 1, action)?
        .iter()
        .map(|b| b.differential().map(|d| d.values().to_vec()))
        .collect::<Result<_, _>>()?;
    let bound = action.module().order();
    let killed = (0..=bound)
        .map(|k| {
            let hits = cocycles
                .iter()
                .filter(|z| {
                    let multiple = (0..k).fold(Cochain::zero(n, action), |acc, _| acc.add(z).unwrap());
                    coboundaries.contains(multiple.values())
                })
                .count();
            hits / coboundaries.len()
        })
        .collect();
    Ok(BruteCohomology { cocycles: cocycles.len(), coboundaries: coboundaries.len(), killed })
}

/// Number of classes killed by `k` in `⊕ Z/dᵢ`, for comparison with [`BruteCohomology::killed`].
pub fn killed_by(invariant_factors: &[usize], k: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    invariant_factors.iter().map(|&d| gcd(k, d)).product()
}

/// Exhaustive search for `b` with `d(b) = c`; the smallest in value order is returned.
pub fn coboundary_witness(c: &Cochain) -> Result<Option<Cochain>, CohomologyError> {
    if c.degree() == 0 {
        return Ok(c.is_zero().then(|| c.clone()));
    }
    for b in all_cochains(c.degree() - 1, c.action())? {
        if &b.differential()? == c {
            return Ok(Some(b));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{cocycle_group, cohomology_group, is_coboundary};
    use crate::fingroup::{catalog, enumerate_homs, structure_of};
    use crate::limits::Limits;

    /// Every module structure of small groups on small abelian groups.
    fn fixture_actions() -> Vec<AbelianAction> {
        let mut out = Vec::new();
        let actors = catalog::groups_up_to(4);
        let mut modules: Vec<_> = catalog::groups_up_to(4).into_iter().filter(|g| g.group.is_abelian()).collect();
        modules.retain(|m| m.group.order() > 1);
        for c in &actors {
            for m in &modules {
                let st = structure_of(&m.group).unwrap();
                for rho in enumerate_homs(&c.group, &st.automorphisms).unwrap() {
                    let rows: Vec<Vec<usize>> = c.group.elements().map(|x| st.maps[rho.apply(x)].clone()).collect();
                    out.push(AbelianAction::new(&c.group, &m.group, &rows).unwrap());
                }
            }
        }
        out
    }

    #[test]
    fn lattice_path_matches_brute_force() {
        for a in fixture_actions() {
            for n in 1..=3 {
                let brute = match cohomology(n, &a) {
                    Ok(b) => b,
                    Err(CohomologyError::Budget(_)) => continue,
                    Err(e) => panic!("{e}"),
                };
                let h = cohomology_group(n, &a).unwrap();
                assert_eq!(h.order(), brute.order(), "n={n} {a:?}");
                for k in 0..brute.killed.len() {
                    assert_eq!(killed_by(&h.invariant_factors, k), brute.killed[k]);
                }
                let z = cocycle_group(n, &a, &Limits::default()).unwrap();
                assert_eq!(z.order(), brute.cocycles);
            }
        }
    }

    #[test]
    fn witnesses_agree_with_exhaustive_search() {
        for a in fixture_actions() {
            for n in 1..=2 {
                let Ok(all) = all_cochains(n, &a) else { continue };
                if all.len() > 5000 {
                    continue;
                }
                for c in all.iter().filter(|c| c.is_cocycle()) {
                    let fast = is_coboundary(c).unwrap();
                    let slow = coboundary_witness(c).unwrap();
                    assert_eq!(fast.is_some(), slow.is_some());
                    if let Some(b) = fast {
                        assert_eq!(&b.differential().unwrap(), c);
                    }
                }
            }
        }
    }
}
