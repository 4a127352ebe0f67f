//! Smith normal form over ℤ for small integer matrices.

/// U·A·V = D with D diagonal, d₁ | d₂ | …, U and V unimodular.
#[derive(Clone, Debug)]
pub struct Snf {
    pub diag: Vec<i64>,
    pub u: Vec<Vec<i64>>,
    pub v: Vec<Vec<i64>>,
    pub v_inv: Vec<Vec<i64>>,
}

fn ident(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn smith_normal_form(a: &[Vec<i64>], cols: usize) -> Snf {
    let rows = a.len();
    let mut m: Vec<Vec<i64>> = a.to_vec();
    let mut u = ident(rows);
    let mut v = ident(cols);
    let mut vi = ident(cols);

    // column j -= q * column t
    let col_sub = |m: &mut Vec<Vec<i64>>, v: &mut Vec<Vec<i64>>, vi: &mut Vec<Vec<i64>>, j: usize, t: usize, q: i64| {
        for row in m.iter_mut() {
            row[j] -= q * row[t];
        }
        for row in v.iter_mut() {
            row[j] -= q * row[t];
        }
        let rj = vi[j].clone();
        for (x, y) in vi[t].iter_mut().zip(rj.iter()) {
            *x += q * y;
        }
    };
    let col_swap = |m: &mut Vec<Vec<i64>>, v: &mut Vec<Vec<i64>>, vi: &mut Vec<Vec<i64>>, a: usize, b: usize| {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
        for row in v.iter_mut() {
            row.swap(a, b);
        }
        vi.swap(a, b);
    };
    let row_sub = |m: &mut Vec<Vec<i64>>, u: &mut Vec<Vec<i64>>, i: usize, t: usize, q: i64| {
        let rt = m[t].clone();
        for (x, y) in m[i].iter_mut().zip(rt.iter()) {
            *x -= q * y;
        }
        let ut = u[t].clone();
        for (x, y) in u[i].iter_mut().zip(ut.iter()) {
            *x -= q * y;
        }
    };

    let n = rows.min(cols);
    for t in 0..n {
        loop {
            // smallest nonzero entry in the lower-right block
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if m[i][j] != 0 && best.map_or(true, |(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            m.swap(t, bi);
            u.swap(t, bi);
            col_swap(&mut m, &mut v, &mut vi, t, bj);
            let mut clean = true;
            for i in t + 1..rows {
                let q = m[i][t].div_euclid(m[t][t]);
                if q != 0 {
                    row_sub(&mut m, &mut u, i, t, q);
                }
                if m[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = m[t][j].div_euclid(m[t][t]);
                if q != 0 {
                    col_sub(&mut m, &mut v, &mut vi, j, t, q);
                }
                if m[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility of the remaining block
            let p = m[t][t];
            let mut fix = None;
            'outer: for i in t + 1..rows {
                for j in t + 1..cols {
                    if m[i][j] % p != 0 {
                        fix = Some(i);
                        break 'outer;
                    }
                }
            }
            match fix {
                Some(i) => row_sub(&mut m, &mut u, t, i, -1),
                None => break,
            }
        }
        if m[t][t] < 0 {
            for row in m.iter_mut() {
                row[t] = -row[t];
            }
            for row in v.iter_mut() {
                row[t] = -row[t];
            }
            for x in vi[t].iter_mut() {
                *x = -*x;
            }
        }
    }
    let diag = (0..n).map(|i| m[i][i]).collect();
    Snf { diag, u, v, v_inv: vi }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let n = b[0].len();
        a.iter()
            .map(|r| (0..n).map(|j| r.iter().zip(b.iter()).map(|(x, row)| x * row[j]).sum()).collect())
            .collect()
    }

    #[test]
    fn snf_of_z2_z3_relations() {
        let a = vec![vec![2, 0], vec![0, 3]];
        let s = smith_normal_form(&a, 2);
        assert_eq!(s.diag, vec![1, 6]);
        let d = mul(&mul(&s.u, &a), &s.v);
        assert_eq!(d, vec![vec![1, 0], vec![0, 6]]);
        assert_eq!(mul(&s.v, &s.v_inv), ident(2));
    }

    #[test]
    fn snf_rectangular() {
        let a = vec![vec![4, 0], vec![0, 4], vec![2, 2]];
        let s = smith_normal_form(&a, 2);
        assert_eq!(s.diag, vec![2, 4]);
        let d = mul(&mul(&s.u, &a), &s.v);
        assert_eq!(d[0][0], 2);
        assert_eq!(d[1][1], 4);
        assert_eq!(d[0][1], 0);
        assert_eq!(d[2], vec![0, 0]);
        assert_eq!(mul(&s.v_inv, &s.v), ident(2));
    }
}
