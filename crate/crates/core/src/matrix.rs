//! Exact row reduction over Q(eps).

use num_traits::{One, Zero};

use crate::cyclo::Cyclo;

/// Reduced row echelon form; returns (rref, pivot columns).
pub fn rref(m: &[Vec<Cyclo>]) -> (Vec<Vec<Cyclo>>, Vec<usize>) {
    let mut a: Vec<Vec<Cyclo>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for v in a[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let sub = &f * &a[r][j];
                    a[i][j] -= &sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(m: &[Vec<Cyclo>]) -> usize {
    rref(m).1.len()
}

/// Basis of the right kernel {v : m v = 0}.
pub fn kernel(m: &[Vec<Cyclo>]) -> Vec<Vec<Cyclo>> {
    let cols = m.first().map_or(0, Vec::len);
    let (a, pivots) = rref(m);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Cyclo::zero(); cols];
            v[free] = Cyclo::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -&a[row][free];
            }
            v
        })
        .collect()
}
