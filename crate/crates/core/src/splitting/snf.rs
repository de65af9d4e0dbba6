//! Smith normal form of small integer matrices.

/// Diagonal of the Smith normal form of `m` (rows of equal length), with
/// non-negative entries, each dividing the next; zero rows contribute zeros.
pub fn smith_diagonal(m: &[Vec<i64>]) -> Vec<i64> {
    let mut a: Vec<Vec<i64>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        // find a non-zero pivot of least absolute value
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                diag.extend(std::iter::repeat_n(0, rows.min(cols) - t));
                return normalize(diag);
            };
            a.swap(t, pi);
            for r in a.iter_mut() {
                r.swap(t, pj);
            }
            let p = a[t][t];
            let mut clean = true;
            for i in (t + 1)..rows {
                let f = a[i][t] / p;
                for j in t..cols {
                    a[i][j] -= f * a[t][j];
                }
                clean &= a[i][t] == 0;
            }
            for j in (t + 1)..cols {
                let f = a[t][j] / p;
                for i in t..rows {
                    a[i][j] -= f * a[i][t];
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // the pivot must divide the remaining block
            let bad = (t + 1..rows).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| a[i][j] % p != 0);
            match bad {
                Some((i, _)) => {
                    for j in t..cols {
                        a[t][j] += a[i][j];
                    }
                }
                None => {
                    diag.push(p.abs());
                    break;
                }
            }
        }
    }
    normalize(diag)
}

fn normalize(d: Vec<i64>) -> Vec<i64> {
    d.into_iter().map(|x| x.abs()).collect()
}
