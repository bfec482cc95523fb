//! Floating-point helpers: polynomial roots and matrix rank over C.

use num_complex::Complex64;

/// All complex roots (with repetition) of the polynomial with ascending coefficients.
///
/// Aberth–Ehrlich simultaneous iteration. Simple roots converge to machine
/// precision; a root of multiplicity m is only accurate to about eps^(1/m).
pub fn aberth_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().is_some_and(|z| z.norm() == 0.0) {
        c.pop();
    }
    if c.len() <= 1 {
        return Vec::new();
    }
    let n = c.len() - 1;
    let lead = c[n];
    let monic: Vec<Complex64> = c.iter().map(|z| z / lead).collect();
    // Cauchy bound on root moduli
    let radius = 1.0 + monic[..n].iter().map(|z| z.norm()).fold(0.0, f64::max);
    let r0 = radius.min(1e6) * 0.5;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(r0, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    let deriv: Vec<Complex64> = (1..=n).map(|i| monic[i] * i as f64).collect();
    let horner = |p: &[Complex64], x: Complex64| p.iter().rev().fold(Complex64::new(0.0, 0.0), |a, b| a * x + b);
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for k in 0..n {
            let pk = horner(&monic, z[k]);
            if pk.norm() == 0.0 {
                continue;
            }
            let ratio = pk / horner(&deriv, z[k]);
            let s: Complex64 = (0..n).filter(|&j| j != k).map(|j| 1.0 / (z[k] - z[j])).sum();
            let step = ratio / (1.0 - ratio * s);
            if step.is_finite() {
                z[k] -= step;
                moved = moved.max(step.norm() / (1.0 + z[k].norm()));
            }
        }
        if moved < 1e-16 {
            break;
        }
    }
    z
}

/// Numerical rank and a right-kernel basis, by reduction with partial pivoting.
///
/// Entries below `tol` times the largest entry count as zero.
pub fn numeric_kernel(m: &[Vec<Complex64>], tol: f64) -> (usize, Vec<Vec<Complex64>>) {
    let mut a: Vec<Vec<Complex64>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let scale = a.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let (p, best) = (r..rows).map(|i| (i, a[i][c].norm())).fold((r, -1.0), |b, x| if x.1 > b.1 { x } else { b });
        if best <= tol * scale {
            continue;
        }
        a.swap(r, p);
        let inv = 1.0 / a[r][c];
        for v in a[r].iter_mut() {
            *v *= inv;
        }
        for i in 0..rows {
            if i != r {
                let f = a[i][c];
                for j in 0..cols {
                    let sub = f * a[r][j];
                    a[i][j] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let kernel = (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Complex64::new(0.0, 0.0); cols];
            v[free] = Complex64::new(1.0, 0.0);
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][free];
            }
            v
        })
        .collect();
    (pivots.len(), kernel)
}

/// Numerical rank by Gaussian elimination with complete pivoting.
pub fn numeric_rank(m: &[Vec<Complex64>], tol: f64) -> usize {
    let mut a: Vec<Vec<Complex64>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let scale = a.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
    let mut rank = 0;
    for col_round in 0..rows.min(cols) {
        let mut best = (0.0, col_round, col_round);
        for (i, row) in a.iter().enumerate().skip(col_round) {
            for (j, v) in row.iter().enumerate().skip(col_round) {
                if v.norm() > best.0 {
                    best = (v.norm(), i, j);
                }
            }
        }
        if best.0 <= tol * scale {
            break;
        }
        a.swap(col_round, best.1);
        for row in a.iter_mut() {
            row.swap(col_round, best.2);
        }
        let pivot = a[col_round][col_round];
        for i in col_round + 1..rows {
            let f = a[i][col_round] / pivot;
            for j in col_round..cols {
                let sub = f * a[col_round][j];
                a[i][j] -= sub;
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-9
    }

    #[test]
    fn cube_roots_of_unity() {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let roots = aberth_roots(&[-one, zero, zero, one]);
        assert_eq!(roots.len(), 3);
        for k in 0..3 {
            let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / 3.0);
            assert!(roots.iter().any(|r| close(*r, w)), "missing {w}");
        }
    }

    #[test]
    fn ranks() {
        let c = |x: f64| Complex64::new(x, 0.0);
        let m = vec![vec![c(1.0), c(2.0)], vec![c(2.0), c(4.0)]];
        assert_eq!(numeric_rank(&m, 1e-9), 1);
        let id = vec![vec![c(1.0), c(0.0)], vec![c(0.0), c(1.0)]];
        assert_eq!(numeric_rank(&id, 1e-9), 2);
    }
}
