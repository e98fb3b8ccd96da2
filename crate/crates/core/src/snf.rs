//! Smith normal form of small integer matrices.

/// `D = U · A · V` with `D` diagonal, `d₀ | d₁ | …`, all `dᵢ ≥ 0`.
///
/// Only the column transform is kept (and its inverse); callers use it to
/// change generators of `Zᵏ / rowspace(A)`.
#[derive(Debug, Clone)]
pub(crate) struct Smith {
    pub diagonal: Vec<i64>,
    pub v: Vec<Vec<i64>>,
    pub v_inv: Vec<Vec<i64>>,
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

/// Extended gcd: returns `(g, x, y)` with `a·x + b·y = g ≥ 0`.
pub(crate) fn xgcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut x0, mut x1) = (1i64, 0i64);
    let (mut y0, mut y1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (x0, x1) = (x1, x0 - q * x1);
        (y0, y1) = (y1, y0 - q * y1);
    }
    if r0 < 0 {
        (-r0, -x0, -y0)
    } else {
        (r0, x0, y0)
    }
}

pub(crate) fn smith(a: &[Vec<i64>], cols: usize) -> Smith {
    let rows = a.len();
    let mut m: Vec<Vec<i64>> = a.to_vec();
    let mut v = identity(cols);
    let mut v_inv = identity(cols);

    // column op: col_j += k·col_i  (V gets the same; V⁻¹ gets row_i -= k·row_j)
    let add_col = |m: &mut Vec<Vec<i64>>, v: &mut Vec<Vec<i64>>, vi: &mut Vec<Vec<i64>>, i: usize, j: usize, k: i64| {
        if k == 0 {
            return;
        }
        for row in m.iter_mut() {
            row[j] += k * row[i];
        }
        for row in v.iter_mut() {
            row[j] += k * row[i];
        }
        for c in 0..vi[j].len() {
            let t = vi[j][c];
            vi[i][c] -= k * t;
        }
    };
    let swap_col = |m: &mut Vec<Vec<i64>>, v: &mut Vec<Vec<i64>>, vi: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        for row in m.iter_mut() {
            row.swap(i, j);
        }
        for row in v.iter_mut() {
            row.swap(i, j);
        }
        vi.swap(i, j);
    };
    let neg_col = |m: &mut Vec<Vec<i64>>, v: &mut Vec<Vec<i64>>, vi: &mut Vec<Vec<i64>>, i: usize| {
        for row in m.iter_mut() {
            row[i] = -row[i];
        }
        for row in v.iter_mut() {
            row[i] = -row[i];
        }
        for x in vi[i].iter_mut() {
            *x = -*x;
        }
    };

    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        // pivot: smallest nonzero |entry| in the lower-right block
        let pivot = (t..rows)
            .flat_map(|r| (t..cols).map(move |c| (r, c)))
            .filter(|&(r, c)| m[r][c] != 0)
            .min_by_key(|&(r, c)| m[r][c].abs());
        let Some((pr, pc)) = pivot else { break };
        m.swap(t, pr);
        swap_col(&mut m, &mut v, &mut v_inv, t, pc);
        loop {
            let mut clean = true;
            for c in t + 1..cols {
                if m[t][c] != 0 {
                    let q = m[t][c].div_euclid(m[t][t]);
                    add_col(&mut m, &mut v, &mut v_inv, t, c, -q);
                    if m[t][c] != 0 {
                        clean = false;
                        if m[t][c].abs() < m[t][t].abs() {
                            swap_col(&mut m, &mut v, &mut v_inv, t, c);
                        }
                    }
                }
            }
            for r in t + 1..rows {
                if m[r][t] != 0 {
                    let q = m[r][t].div_euclid(m[t][t]);
                    for c in 0..cols {
                        m[r][c] -= q * m[t][c];
                    }
                    if m[r][t] != 0 {
                        clean = false;
                        if m[r][t].abs() < m[t][t].abs() {
                            m.swap(t, r);
                        }
                    }
                }
            }
            if clean {
                // enforce divisibility into the remaining block
                let bad = (t + 1..rows)
                    .flat_map(|r| (t + 1..cols).map(move |c| (r, c)))
                    .find(|&(r, c)| m[r][c] % m[t][t] != 0);
                match bad {
                    Some((r, _)) => {
                        for c in 0..cols {
                            let x = m[r][c];
                            m[t][c] += x;
                        }
                    }
                    None => break,
                }
            }
        }
        if m[t][t] < 0 {
            neg_col(&mut m, &mut v, &mut v_inv, t);
        }
        t += 1;
    }
    let diagonal = (0..n).map(|i| m[i][i]).collect();
    Smith { diagonal, v, v_inv }
}
