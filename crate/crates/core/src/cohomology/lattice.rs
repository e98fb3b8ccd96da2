//! Subgroups of `(Z/e)^N` in Howell form.
//!
//! A lattice `L` with `e·Zᴺ ⊆ L ⊆ Zᴺ` is stored as one row per column: row `i`
//! has zeros before column `i`, pivot `pᵢ | e` at column `i`, and later entries
//! in `0..e`. Rows with pivot `e` carry no information. The Howell property
//! (every multiple of a row that kills its pivot is again spanned by later
//! rows) makes reduction against the rows a correct membership test.

use crate::snf::xgcd;

#[derive(Debug, Clone)]
pub(crate) struct Lattice {
    pub modulus: i64,
    pub rows: Vec<Vec<i64>>,
}

impl Lattice {
    /// `e·Zᴺ`.
    pub fn zero(n: usize, modulus: i64) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![0; n];
                r[i] = modulus;
                r
            })
            .collect();
        Lattice { modulus, rows }
    }

    fn normalize(&self, v: &mut [i64]) {
        for x in v.iter_mut() {
            *x = x.rem_euclid(self.modulus);
        }
    }

    /// Adds `v` to the generating set.
    pub fn insert(&mut self, v: &[i64]) {
        let e = self.modulus;
        let mut pending = vec![v.to_vec()];
        while let Some(mut v) = pending.pop() {
            self.normalize(&mut v);
            let mut i = 0;
            while i < v.len() {
                if v[i] == 0 {
                    i += 1;
                    continue;
                }
                let p = self.rows[i][i];
                if v[i] % p == 0 {
                    let q = v[i] / p;
                    for k in i..v.len() {
                        v[k] = (v[k] - q * self.rows[i][k]).rem_euclid(e);
                    }
                    i += 1;
                    continue;
                }
                // combine row i and v into a row with pivot gcd(p, v[i])
                let (g, a, b) = xgcd(p, v[i]);
                let (pr, vr) = (p / g, v[i] / g);
                let row = self.rows[i].clone();
                let mut new_row = vec![0; v.len()];
                for k in i..v.len() {
                    new_row[k] = (a * row[k] + b * v[k]).rem_euclid(e);
                    v[k] = (pr * v[k] - vr * row[k]).rem_euclid(e);
                }
                if new_row[i] == 0 {
                    new_row[i] = e;
                }
                // Howell closure: (e / pivot) · row with its pivot removed
                let mult = e / new_row[i];
                let mut tail = vec![0; v.len()];
                for k in i + 1..v.len() {
                    tail[k] = (mult * new_row[k]).rem_euclid(e);
                }
                self.rows[i] = new_row;
                if tail.iter().any(|&x| x != 0) {
                    pending.push(tail);
                }
                i += 1;
            }
        }
        self.reduce_above();
    }

    /// Keeps entries above each pivot reduced, which makes the form canonical.
    fn reduce_above(&mut self) {
        let e = self.modulus;
        let n = self.rows.len();
        for i in (0..n).rev() {
            let p = self.rows[i][i];
            if p == e {
                continue;
            }
            for r in 0..i {
                let q = self.rows[r][i].div_euclid(p);
                if q != 0 {
                    for k in i..n {
                        let t = self.rows[i][k];
                        self.rows[r][k] = (self.rows[r][k] - q * t).rem_euclid(e);
                    }
                }
            }
        }
    }

    /// Canonical representative of `v` modulo the lattice, all entries in `0..pᵢ`.
    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        let mut v = v.to_vec();
        self.normalize(&mut v);
        for i in 0..v.len() {
            let p = self.rows[i][i];
            let q = v[i].div_euclid(p);
            if q != 0 {
                for k in i..v.len() {
                    v[k] = (v[k] - q * self.rows[i][k]).rem_euclid(self.modulus);
                }
            }
        }
        v
    }

    #[cfg(test)]
    pub fn contains(&self, v: &[i64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Rows with a proper pivot, which together with `e·Zᴺ` generate the lattice.
    pub fn generators(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.rows.iter().enumerate().filter(|(i, r)| r[*i] != self.modulus).map(|(_, r)| r)
    }

    /// `|L / e·Zᴺ|`.
    pub fn size(&self) -> u128 {
        self.rows
            .iter()
            .enumerate()
            .map(|(i, r)| (self.modulus / r[i]) as u128)
            .product()
    }

    /// Projects the rows whose pivots lie at or beyond `from` onto those columns.
    /// For an augmented lattice `[target | source]` this is the kernel of the map.
    pub fn tail(&self, from: usize) -> Lattice {
        let rows = self.rows[from..].iter().map(|r| r[from..].to_vec()).collect();
        Lattice { modulus: self.modulus, rows }
    }
}
