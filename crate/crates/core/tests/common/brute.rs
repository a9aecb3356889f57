use std::collections::BTreeSet;

use eigencone::linalg::{self, rat_int, Rational};

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Extremal rays of a pointed cone `{x : A x ≥ 0}`: every one-dimensional
/// solution of `d − 1` tight constraints that satisfies the rest.
pub fn rays(dim: usize, functionals: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
    let mut out = BTreeSet::new();
    for s in subsets(functionals.len(), dim - 1) {
        let rows: Vec<Vec<Rational>> = s
            .iter()
            .map(|&i| functionals[i].iter().map(|&x| rat_int(x)).collect())
            .collect();
        let null = linalg::nullspace(&rows, dim);
        if null.len() != 1 {
            continue;
        }
        let v = linalg::primitive_i64(&null[0]).unwrap();
        for sign in [1, -1] {
            let w: Vec<i64> = v.iter().map(|x| sign * x).collect();
            let ok = functionals
                .iter()
                .all(|f| f.iter().zip(&w).map(|(a, b)| a * b).sum::<i64>() >= 0);
            if ok {
                out.insert(w);
            }
        }
    }
    out
}

/// Hilbert basis of `{x ∈ ℤ^d : A x ≥ 0}` by listing all lattice points in
/// a box and discarding sums of two nonzero points.
pub fn hilbert(functionals: &[Vec<i64>], dim: usize, bound: i64) -> BTreeSet<Vec<i64>> {
    let mut points: Vec<Vec<i64>> = Vec::new();
    let mut cur = vec![-bound; dim];
    loop {
        let inside = functionals
            .iter()
            .all(|f| f.iter().zip(&cur).map(|(a, b)| a * b).sum::<i64>() >= 0);
        if inside && cur.iter().any(|&x| x != 0) {
            points.push(cur.clone());
        }
        let mut k = 0;
        while k < dim {
            cur[k] += 1;
            if cur[k] <= bound {
                break;
            }
            cur[k] = -bound;
            k += 1;
        }
        if k == dim {
            break;
        }
    }
    let set: BTreeSet<Vec<i64>> = points.iter().cloned().collect();
    points
        .iter()
        .filter(|p| {
            !points.iter().any(|q| {
                let r: Vec<i64> = p.iter().zip(q.iter()).map(|(a, b)| a - b).collect();
                *q != **p && set.contains(&r)
            })
        })
        .cloned()
        .collect()
}
