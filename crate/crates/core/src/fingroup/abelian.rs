//! Cyclic decomposition of finite abelian groups.

use super::FiniteGroup;
use crate::snf::smith;

/// `B ≅ Z/d₀ ⊕ … ⊕ Z/d_{r−1}` with `d₀ | d₁ | …` and every `dᵢ > 1`.
#[derive(Debug, Clone)]
pub struct AbelianDecomposition {
    pub group: FiniteGroup,
    pub orders: Vec<usize>,
    /// Element of `B` generating each cyclic factor.
    pub generators: Vec<usize>,
    coords: Vec<Vec<usize>>,
    element: std::collections::HashMap<Vec<usize>, usize>,
}

impl AbelianDecomposition {
    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    /// Coordinates of `b`, each reduced into `0..dᵢ`.
    pub fn coords(&self, b: usize) -> &[usize] {
        &self.coords[b]
    }

    /// Element with the given coordinates (reduced modulo the factor orders).
    pub fn element(&self, coords: &[i64]) -> usize {
        let key: Vec<usize> = coords
            .iter()
            .zip(&self.orders)
            .map(|(&c, &d)| c.rem_euclid(d as i64) as usize)
            .collect();
        self.element[&key]
    }

    /// Exponent of `B` (largest factor order, 1 for the trivial group).
    pub fn exponent(&self) -> usize {
        self.orders.last().copied().unwrap_or(1)
    }
}

/// Decomposes an abelian group; `None` if `b` is not abelian.
pub fn decompose_abelian(b: &FiniteGroup) -> Option<AbelianDecomposition> {
    if !b.is_abelian() {
        return None;
    }
    let gens = b.generators().to_vec();
    let k = gens.len();
    // incremental presentation: every element gets a coordinate vector over gens
    let mut coord: Vec<Option<Vec<i64>>> = vec![None; b.order()];
    coord[0] = Some(vec![0; k]);
    let mut members = vec![0usize];
    let mut relations: Vec<Vec<i64>> = Vec::new();
    for (i, &g) in gens.iter().enumerate() {
        let mut m = 1;
        let mut x = g;
        while coord[x].is_none() {
            x = b.mul(x, g);
            m += 1;
        }
        let mut rel = coord[x].clone().unwrap().iter().map(|c| -c).collect::<Vec<_>>();
        rel[i] += m;
        relations.push(rel);
        let old = members.clone();
        let mut step = 0usize;
        for t in 1..m {
            step = b.mul(step, g);
            for &h in &old {
                let y = b.mul(h, step);
                let mut c = coord[h].clone().unwrap();
                c[i] += t as i64;
                coord[y] = Some(c);
                members.push(y);
            }
        }
    }
    let s = smith(&relations, k);
    let keep: Vec<usize> = (0..k).filter(|&i| s.diagonal[i] != 1).collect();
    let orders: Vec<usize> = keep.iter().map(|&i| s.diagonal[i] as usize).collect();
    let generators: Vec<usize> = keep
        .iter()
        .map(|&i| {
            (0..k).fold(0, |acc, j| {
                let e = s.v_inv[i][j].rem_euclid(b.element_order(gens[j]) as i64) as usize;
                b.mul(acc, b.pow(gens[j], e))
            })
        })
        .collect();
    let mut coords = Vec::with_capacity(b.order());
    let mut element = std::collections::HashMap::new();
    for x in b.elements() {
        let c = coord[x].as_ref().unwrap();
        let y: Vec<usize> = keep
            .iter()
            .zip(&orders)
            .map(|(&col, &d)| {
                let v: i64 = (0..k).map(|j| c[j] * s.v[j][col]).sum();
                v.rem_euclid(d as i64) as usize
            })
            .collect();
        element.insert(y.clone(), x);
        coords.push(y);
    }
    debug_assert_eq!(element.len(), b.order());
    Some(AbelianDecomposition { group: b.clone(), orders, generators, coords, element })
}
