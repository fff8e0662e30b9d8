//! Small dense complex linear algebra: balancing, Hessenberg reduction and
//! the complex Schur decomposition by shifted QR.

use num_complex::Complex64;

use crate::error::{Error, Result};

type C = Complex64;

const ZERO: C = C::new(0.0, 0.0);
const ONE: C = C::new(1.0, 0.0);

/// Square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<C>,
}

impl ComplexMatrix {
    pub fn zeros(n: usize) -> Self {
        ComplexMatrix {
            n,
            data: vec![ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<C>]) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "matrix must be square");
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn from_real(rows: &[Vec<f64>]) -> Self {
        Self::from_rows(
            &rows
                .iter()
                .map(|r| r.iter().map(|&x| C::new(x, 0.0)).collect())
                .collect::<Vec<_>>(),
        )
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn add_scaled(&mut self, other: &Self, c: C) {
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += c * b;
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `z^H A z` for a column `z` given as a slice.
    pub fn quadratic_form(&self, z: &[C]) -> C {
        let n = self.n;
        let mut acc = ZERO;
        for (i, zi) in z.iter().enumerate().take(n) {
            let row: C = self.data[i * n..(i + 1) * n]
                .iter()
                .zip(z)
                .map(|(a, b)| a * b)
                .sum();
            acc += zi.conj() * row;
        }
        acc
    }

    pub fn column(&self, j: usize) -> Vec<C> {
        (0..self.n).map(|i| self[(i, j)]).collect()
    }

    /// Scales `D^{-1} A D` with `D = diag(scale)`.
    pub fn similarity_diag(&self, scale: &[f64]) -> Self {
        let n = self.n;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out.data[i * n + j] *= scale[j] / scale[i];
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = C;
    fn index(&self, (i, j): (usize, usize)) -> &C {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C {
        &mut self.data[i * self.n + j]
    }
}

/// Diagonal scaling by powers of two that makes row and column norms
/// comparable (Parlett-Reinsch). Returns `d` such that `D^{-1} A D` is
/// balanced.
pub fn balance(a: &ComplexMatrix) -> Vec<f64> {
    let n = a.size();
    let mut d = vec![1.0f64; n];
    let mut m = a.clone();
    let radix = 2.0f64;
    let mut converged = false;
    let mut sweeps = 0;
    while !converged && sweeps < 100 {
        converged = true;
        sweeps += 1;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += m[(j, i)].norm();
                    r += m[(i, j)].norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / radix;
            while c < g {
                f *= radix;
                c *= radix * radix;
            }
            g = r * radix;
            while c > g {
                f /= radix;
                c /= radix * radix;
            }
            if (c + r) / f < 0.95 * s {
                converged = false;
                d[i] *= f;
                for j in 0..n {
                    m[(i, j)] /= f;
                    m[(j, i)] *= f;
                }
            }
        }
    }
    d
}

/// Householder reduction to upper Hessenberg form: returns `(H, Q)` with
/// `A = Q H Q^H`.
pub fn hessenberg(a: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let n = a.size();
    let mut h = a.clone();
    let mut q = ComplexMatrix::identity(n);
    for k in 0..n.saturating_sub(2) {
        let x: Vec<C> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let phase = if x[0].norm() == 0.0 {
            ONE
        } else {
            x[0] / x[0].norm()
        };
        let alpha = -phase * norm;
        let mut v = x.clone();
        v[0] -= alpha;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for z in &mut v {
            *z /= vnorm;
        }
        // Left: H[k+1.., :] -= 2 v (v^H H[k+1.., :]).
        for j in 0..n {
            let mut dot = ZERO;
            for (t, vi) in v.iter().enumerate() {
                dot += vi.conj() * h[(k + 1 + t, j)];
            }
            for (t, vi) in v.iter().enumerate() {
                h[(k + 1 + t, j)] -= 2.0 * vi * dot;
            }
        }
        // Right on H and Q: M[:, k+1..] -= 2 (M[:, k+1..] v) v^H.
        for m in [&mut h, &mut q] {
            for i in 0..n {
                let mut dot = ZERO;
                for (t, vi) in v.iter().enumerate() {
                    dot += m[(i, k + 1 + t)] * vi;
                }
                for (t, vi) in v.iter().enumerate() {
                    m[(i, k + 1 + t)] -= 2.0 * dot * vi.conj();
                }
            }
        }
        for i in k + 2..n {
            h[(i, k)] = ZERO;
        }
    }
    (h, q)
}

fn givens(x: C, y: C) -> (f64, C) {
    let ax = x.norm();
    let norm = (x.norm_sqr() + y.norm_sqr()).sqrt();
    if norm == 0.0 {
        return (1.0, ZERO);
    }
    if ax == 0.0 {
        return (0.0, ONE);
    }
    (ax / norm, (x / ax) * y.conj() / norm)
}

/// Complex Schur decomposition `A = Z T Z^H` with `T` upper triangular.
pub fn schur(a: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let n = a.size();
    let (mut h, mut z) = hessenberg(a);
    if n <= 1 {
        return Ok((h, z));
    }
    let eps = f64::EPSILON;
    let scale = h.max_abs().max(f64::MIN_POSITIVE);
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut total = 0usize;
    while hi > 0 {
        let mut l = hi;
        while l > 0 {
            let s = h[(l - 1, l - 1)].norm() + h[(l, l)].norm();
            let s = if s == 0.0 { scale } else { s };
            if h[(l, l - 1)].norm() <= eps * s {
                h[(l, l - 1)] = ZERO;
                break;
            }
            l -= 1;
        }
        if l == hi {
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if total > 60 * n {
            return Err(Error::IllConditioned(
                "QR iteration did not converge".into(),
            ));
        }
        let shift = if iter % 11 == 10 {
            // Exceptional shift to break cycles.
            h[(hi, hi)] + C::new(0.75 * h[(hi, hi - 1)].norm(), 0.0)
        } else {
            wilkinson(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };
        let mut x = h[(l, l)] - shift;
        let mut y = h[(l + 1, l)];
        for k in l..hi {
            if k > l {
                x = h[(k, k - 1)];
                y = h[(k + 1, k - 1)];
            }
            let (c, s) = givens(x, y);
            let first_col = if k > l { k - 1 } else { l };
            for j in first_col..n {
                let (a1, a2) = (h[(k, j)], h[(k + 1, j)]);
                h[(k, j)] = c * a1 + s * a2;
                h[(k + 1, j)] = -s.conj() * a1 + c * a2;
            }
            let last_row = (k + 2).min(hi);
            for i in 0..=last_row {
                let (a1, a2) = (h[(i, k)], h[(i, k + 1)]);
                h[(i, k)] = a1 * c + a2 * s.conj();
                h[(i, k + 1)] = -a1 * s + a2 * c;
            }
            for i in 0..n {
                let (a1, a2) = (z[(i, k)], z[(i, k + 1)]);
                z[(i, k)] = a1 * c + a2 * s.conj();
                z[(i, k + 1)] = -a1 * s + a2 * c;
            }
            if k > l {
                h[(k + 1, k - 1)] = ZERO;
            }
        }
    }
    for i in 1..n {
        for j in 0..i {
            h[(i, j)] = ZERO;
        }
    }
    Ok((h, z))
}

/// Eigenvalue of the trailing 2x2 block closer to its bottom-right entry.
fn wilkinson(a: C, b: C, c: C, d: C) -> C {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let m1 = (a + d) * 0.5 + disc;
    let m2 = (a + d) * 0.5 - disc;
    if (m1 - d).norm() < (m2 - d).norm() {
        m1
    } else {
        m2
    }
}

pub fn eigenvalues(a: &ComplexMatrix) -> Result<Vec<C>> {
    let d = balance(a);
    let (t, _) = schur(&a.similarity_diag(&d))?;
    Ok((0..a.size()).map(|i| t[(i, i)]).collect())
}

/// Solves `A x = b` by Gaussian elimination with partial pivoting; `None`
/// when `A` is numerically singular.
pub fn solve_linear(a: &[Vec<C>], b: &[C]) -> Option<Vec<C>> {
    let n = b.len();
    let mut m: Vec<Vec<C>> = a.to_vec();
    let mut rhs = b.to_vec();
    let scale = m
        .iter()
        .flat_map(|r| r.iter())
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    if scale == 0.0 {
        return None;
    }
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| m[i][col].norm().total_cmp(&m[j][col].norm()))
            .expect("nonempty");
        if m[pivot][col].norm() <= 1e-14 * scale {
            return None;
        }
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        let top = m[col].clone();
        for row in col + 1..n {
            let f = m[row][col] / m[col][col];
            if f == ZERO {
                continue;
            }
            for (x, v) in m[row][col..n].iter_mut().zip(&top[col..n]) {
                *x -= f * v;
            }
            let v = rhs[col];
            rhs[row] -= f * v;
        }
    }
    let mut x = vec![ZERO; n];
    for i in (0..n).rev() {
        let mut acc = rhs[i];
        for k in i + 1..n {
            acc -= m[i][k] * x[k];
        }
        x[i] = acc / m[i][i];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn residual(a: &ComplexMatrix, t: &ComplexMatrix, z: &ComplexMatrix) -> f64 {
        let mut r = z.mul(t).mul(&z.adjoint());
        r.add_scaled(a, C::new(-1.0, 0.0));
        r.max_abs()
    }

    #[test]
    fn schur_of_rotation_has_imaginary_eigenvalues() {
        let a = ComplexMatrix::from_real(&[vec![0.0, -1.0], vec![1.0, 0.0]]);
        let (t, z) = schur(&a).unwrap();
        assert!(residual(&a, &t, &z) < 1e-14);
        let mut ev: Vec<f64> = (0..2).map(|i| t[(i, i)].im).collect();
        ev.sort_by(f64::total_cmp);
        assert!((ev[0] + 1.0).abs() < 1e-14 && (ev[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn schur_reconstructs_random_matrix() {
        let n = 12;
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (((i * 7 + j * 13) % 17) as f64) - 8.0)
                    .collect()
            })
            .collect();
        let a = ComplexMatrix::from_real(&rows);
        let (t, z) = schur(&a).unwrap();
        assert!(residual(&a, &t, &z) < 1e-11);
        let zz = z.adjoint().mul(&z);
        let mut id = ComplexMatrix::identity(n);
        id.add_scaled(&zz, C::new(-1.0, 0.0));
        assert!(id.max_abs() < 1e-12);
        // Trace is preserved.
        let tr_a: C = (0..n).map(|i| a[(i, i)]).sum();
        let tr_t: C = (0..n).map(|i| t[(i, i)]).sum();
        assert!((tr_a - tr_t).norm() < 1e-10);
    }

    #[test]
    fn companion_matrix_roots() {
        // x^3 - 6x^2 + 11x - 6 = (x-1)(x-2)(x-3)
        let a = ComplexMatrix::from_real(&[
            vec![0.0, 0.0, 6.0],
            vec![1.0, 0.0, -11.0],
            vec![0.0, 1.0, 6.0],
        ]);
        let mut ev: Vec<f64> = eigenvalues(&a).unwrap().iter().map(|z| z.re).collect();
        ev.sort_by(f64::total_cmp);
        for (got, want) in ev.iter().zip([1.0, 2.0, 3.0]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn balancing_uses_powers_of_two() {
        let a = ComplexMatrix::from_real(&[vec![1.0, 1e6], vec![1e-6, 2.0]]);
        for s in balance(&a) {
            assert_eq!(s.log2().fract(), 0.0);
        }
    }

    #[test]
    fn linear_solve() {
        let a = vec![
            vec![C::new(2.0, 0.0), C::new(1.0, 1.0)],
            vec![C::new(0.0, -1.0), C::new(3.0, 0.0)],
        ];
        let x = vec![C::new(1.0, 2.0), C::new(-1.0, 0.5)];
        let b: Vec<C> = a
            .iter()
            .map(|r| r.iter().zip(&x).map(|(p, q)| p * q).sum())
            .collect();
        let got = solve_linear(&a, &b).unwrap();
        for (g, w) in got.iter().zip(&x) {
            assert!((g - w).norm() < 1e-14);
        }
        assert!(solve_linear(&[vec![ONE, ONE], vec![ONE, ONE]], &[ONE, ONE]).is_none());
    }
}
