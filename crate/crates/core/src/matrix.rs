//! Dense complex matrices: induced `p`-norms and Gaussian elimination.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::Exponent;
use crate::sampling::gaussian_vector;
use crate::C64;

/// Iteration cap for the power method.
pub const POWER_MAX_ITERS: usize = 10_000;
/// Relative change of the Rayleigh quotient at which the power method stops.
pub const POWER_TOL: f64 = 1e-12;
/// Number of ascent starts for induced norms with `p` outside `{1, 2, inf}`.
pub const ASCENT_STARTS: usize = 32;
/// Seed samples screened before choosing the ascent starts.
pub const ASCENT_SEED_SAMPLES: usize = 10_000;
const ASCENT_SEED: u64 = 0x005e_ed0f_a5ce;
const POWER_POLISH: usize = 8;

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

/// How an induced norm value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormMethod {
    /// Max column sum (`p = 1`) or max row sum (`p = inf`).
    ClosedForm,
    PowerIteration,
    /// Multi-start dual-vector ascent for general `p`.
    Ascent,
}

/// Induced norm value with certified bracket `lower <= true <= upper`.
///
/// `value` equals `lower`: every method reports a norm attained by an
/// explicit vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormBounds {
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
    pub method: NormMethod,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![C64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[Vec<C64>]) -> Self {
        let cols = columns.len();
        let rows = columns.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows, cols);
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "ragged columns");
            for (i, &v) in col.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        Self { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn mul_vec(&self, x: &[C64]) -> Vec<C64> {
        assert_eq!(x.len(), self.cols);
        self.data.chunks_exact(self.cols.max(1)).take(self.rows).map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }

    /// `M^T y` (plain transpose, no conjugation).
    pub fn transpose_mul_vec(&self, y: &[C64]) -> Vec<C64> {
        assert_eq!(y.len(), self.rows);
        let mut out = vec![C64::new(0.0, 0.0); self.cols];
        for (i, yi) in y.iter().enumerate() {
            for (j, o) in out.iter_mut().enumerate() {
                *o += self[(i, j)] * yi;
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Induced `l1 -> l1` norm: maximum column sum.
    pub fn norm_1(&self) -> f64 {
        (0..self.cols).map(|j| (0..self.rows).map(|i| self[(i, j)].norm()).sum::<f64>()).fold(0.0, f64::max)
    }

    /// Induced `linf -> linf` norm: maximum row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self[(i, j)].norm()).sum::<f64>()).fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest singular value with a certified bracket.
    pub fn spectral_norm(&self) -> NormBounds {
        let sigma = self.power_iteration(POWER_TOL, POWER_MAX_ITERS);
        let riesz = (self.norm_1() * self.norm_inf()).sqrt();
        NormBounds { value: sigma, lower: sigma, upper: self.frobenius().min(riesz).max(sigma), method: NormMethod::PowerIteration }
    }

    /// Power iteration on `M^H M`, shifted by a Gershgorin lower bound of its
    /// spectrum so nearly-isometric matrices still converge quickly.
    ///
    /// Runs from `e_1` and from a fixed generic start; the start `e_1` alone
    /// can be orthogonal to the top right-singular space.
    pub fn power_iteration(&self, tol: f64, max_iters: usize) -> f64 {
        let n = self.cols;
        if n == 0 || self.rows == 0 || self.max_abs() == 0.0 {
            return 0.0;
        }
        let gram = self.adjoint().mul(self);
        let shift = (0..n)
            .map(|i| {
                let off: f64 = (0..n).filter(|&j| j != i).map(|j| gram[(i, j)].norm()).sum();
                gram[(i, i)].re - off
            })
            .fold(f64::INFINITY, f64::min)
            .max(0.0);

        let mut e1 = vec![C64::new(0.0, 0.0); n];
        e1[0] = C64::new(1.0, 0.0);
        let generic: Vec<C64> = (0..n)
            .map(|k| {
                let k = k as f64;
                C64::from_polar(1.0 / (1.0 + k).sqrt(), 0.618_033_988_749_895 * (k + 1.0))
            })
            .collect();

        [e1, generic]
            .into_iter()
            .map(|start| {
                let v = shifted_power(&gram, shift, start, tol, max_iters);
                vec_norm2(&self.mul_vec(&v))
            })
            .fold(0.0, f64::max)
    }

    /// Induced norm on `(C^n, ||.||_p)`.
    pub fn induced_norm(&self, p: Exponent) -> NormBounds {
        if p.is_one() {
            let v = self.norm_1();
            return NormBounds { value: v, lower: v, upper: v, method: NormMethod::ClosedForm };
        }
        if p.is_infinite() {
            let v = self.norm_inf();
            return NormBounds { value: v, lower: v, upper: v, method: NormMethod::ClosedForm };
        }
        if p.value() == 2.0 {
            return self.spectral_norm();
        }
        self.ascent_norm(p)
    }

    /// Multi-start ascent for `||M||_{p->p}`; the upper bound is Riesz-Thorin.
    fn ascent_norm(&self, p: Exponent) -> NormBounds {
        let n = self.cols;
        let pv = p.value();
        let upper = self.norm_1().powf(1.0 / pv) * self.norm_inf().powf(1.0 - 1.0 / pv);
        if n == 0 || self.max_abs() == 0.0 {
            return NormBounds { value: 0.0, lower: 0.0, upper: 0.0, method: NormMethod::Ascent };
        }
        let ratio = |x: &[C64]| p.norm(&self.mul_vec(x)) / p.norm(x);

        let mut rng = ChaCha8Rng::seed_from_u64(ASCENT_SEED);
        let mut seeds: Vec<(f64, Vec<C64>)> = (0..ASCENT_SEED_SAMPLES)
            .map(|_| {
                let x = p.normalize(&gaussian_vector(&mut rng, n));
                (ratio(&x), x)
            })
            .collect();
        seeds.sort_by(|a, b| b.0.total_cmp(&a.0));
        seeds.truncate(ASCENT_STARTS);
        for k in 0..n {
            let mut e = vec![C64::new(0.0, 0.0); n];
            e[k] = C64::new(1.0, 0.0);
            seeds.push((ratio(&e), e));
        }

        let q = p.dual();
        let mut best = 0.0_f64;
        for (start_val, mut x) in seeds {
            let mut val = start_val;
            for _ in 0..500 {
                let w = self.mul_vec(&x);
                if p.norm(&w) == 0.0 {
                    break;
                }
                let g = p.norming_vector(&w);
                let z = self.transpose_mul_vec(&g);
                if q.norm(&z) == 0.0 {
                    break;
                }
                let candidate = q.norming_vector(&z);
                let next = ratio(&candidate);
                if next <= val * (1.0 + 1e-13) {
                    val = val.max(next);
                    break;
                }
                val = next;
                x = candidate;
            }
            best = best.max(val);
        }
        NormBounds { value: best, lower: best, upper: upper.max(best), method: NormMethod::Ascent }
    }

    /// Basis of the null space, each vector scaled so its largest entry is 1.
    pub fn nullspace(&self, rel_tol: f64) -> Vec<Vec<C64>> {
        let mut work = self.clone();
        let pivots = work.row_reduce(rel_tol);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![C64::new(0.0, 0.0); self.cols];
                v[f] = C64::new(1.0, 0.0);
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -work[(r, f)];
                }
                let scale = v.iter().copied().max_by(|a, b| a.norm().total_cmp(&b.norm())).unwrap_or(C64::new(1.0, 0.0));
                v.iter().map(|z| z / scale).collect()
            })
            .collect()
    }

    /// Some solution of `M x = b` (free variables set to zero), or `None`
    /// when the system is inconsistent.
    pub fn solve(&self, b: &[C64], rel_tol: f64) -> Option<Vec<C64>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, self.cols)] = b[i];
        }
        let scale = aug.max_abs().max(f64::MIN_POSITIVE);
        let pivots = aug.row_reduce(rel_tol);
        if pivots.contains(&self.cols) {
            return None;
        }
        for i in pivots.len()..self.rows {
            if aug[(i, self.cols)].norm() > rel_tol * scale {
                return None;
            }
        }
        let mut x = vec![C64::new(0.0, 0.0); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[(r, self.cols)];
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let columns: Option<Vec<Vec<C64>>> = (0..n)
            .map(|j| {
                let mut e = vec![C64::new(0.0, 0.0); n];
                e[j] = C64::new(1.0, 0.0);
                self.solve(&e, 1e-12)
            })
            .collect();
        let inv = Matrix::from_columns(&columns?);
        let check = self.mul(&inv);
        let err = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| (check[(i, j)] - if i == j { 1.0 } else { 0.0 }).norm()).fold(0.0, f64::max);
        (err < 1e-8).then_some(inv)
    }

    /// Reduced row echelon form in place with partial pivoting; returns the
    /// pivot columns. Entries below `rel_tol * max|entry|` count as zero.
    fn row_reduce(&mut self, rel_tol: f64) -> Vec<usize> {
        let tol = rel_tol * self.max_abs().max(f64::MIN_POSITIVE);
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let (best, mag) = (row..self.rows).map(|r| (r, self[(r, col)].norm())).max_by(|a, b| a.1.total_cmp(&b.1)).unwrap();
            if mag <= tol {
                for r in row..self.rows {
                    self[(r, col)] = C64::new(0.0, 0.0);
                }
                continue;
            }
            self.swap_rows(row, best);
            let inv = C64::new(1.0, 0.0) / self[(row, col)];
            for j in col..self.cols {
                self[(row, j)] *= inv;
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self[(r, col)];
                if factor == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in col..self.cols {
                    let v = self[(row, j)];
                    self[(r, j)] -= factor * v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

fn vec_norm2(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn shifted_power(gram: &Matrix, shift: f64, start: Vec<C64>, tol: f64, max_iters: usize) -> Vec<C64> {
    let n = gram.cols();
    let apply = |v: &[C64]| -> Vec<C64> { gram.mul_vec(v).iter().zip(v).map(|(g, x)| g - x * shift).collect() };
    let mut v = start;
    let norm = vec_norm2(&v);
    v.iter_mut().for_each(|z| *z /= norm);
    let mut rayleigh = f64::NEG_INFINITY;
    // a few iterations past the stopping rule so the value is smooth in M
    let mut polish = None;
    for _ in 0..max_iters {
        let w = apply(&v);
        let wn = vec_norm2(&w);
        if wn == 0.0 {
            break;
        }
        let next: f64 = v.iter().zip(&w).map(|(a, b)| (a.conj() * b).re).sum::<f64>() + shift;
        v = w.into_iter().map(|z| z / wn).collect();
        match polish {
            Some(0) => break,
            Some(ref mut left) => *left -= 1,
            None if (next - rayleigh).abs() <= tol * next.abs() => polish = Some(POWER_POLISH),
            None => {}
        }
        rayleigh = next;
    }
    debug_assert_eq!(v.len(), n);
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn closed_form_norms() {
        let m = Matrix::from_rows(&[vec![c(-2.0, 0.0), c(2.0, 0.0)], vec![c(1.0, 0.0), c(-4.0, 0.0)]]);
        assert_eq!(m.norm_1(), 6.0);
        assert_eq!(m.norm_inf(), 5.0);
        assert_eq!(m.frobenius(), 5.0);
    }

    #[test]
    fn power_iteration_on_diagonal_finds_top_entry_off_e1() {
        let mut m = Matrix::zeros(3, 3);
        m[(0, 0)] = c(0.5, 0.0);
        m[(1, 1)] = c(0.0, 2.0);
        m[(2, 2)] = c(1.0, 0.0);
        let s = m.spectral_norm();
        assert!((s.value - 2.0).abs() < 1e-12, "{s:?}");
    }

    #[test]
    fn power_iteration_near_identity() {
        let mut m = Matrix::identity(3);
        m[(0, 1)] = c(1e-3, 2e-3);
        m[(2, 0)] = c(-1e-3, 0.0);
        let s = m.spectral_norm();
        // top singular value of I + E is 1 + O(|E|)
        assert!(s.value > 1.0 && s.value < 1.003);
        assert!(s.upper >= s.value);
    }

    #[test]
    fn nullspace_and_solve() {
        let m = Matrix::from_rows(&[vec![c(1.0, 0.0), c(2.0, 0.0)], vec![c(2.0, 0.0), c(4.0, 0.0)]]);
        let ns = m.nullspace(1e-12);
        assert_eq!(ns.len(), 1);
        let r = m.mul_vec(&ns[0]);
        assert!(r.iter().all(|z| z.norm() < 1e-12));
        assert!(m.solve(&[c(1.0, 0.0), c(0.0, 0.0)], 1e-12).is_none());
        let x = m.solve(&[c(1.0, 0.0), c(2.0, 0.0)], 1e-12).unwrap();
        assert!((m.mul_vec(&x)[1] - c(2.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_rows(&[vec![c(1.0, 1.0), c(2.0, 0.0)], vec![c(0.0, -1.0), c(3.0, 0.5)]]);
        let inv = m.inverse().unwrap();
        let id = m.mul(&inv);
        assert!((id[(0, 0)] - c(1.0, 0.0)).norm() < 1e-12);
        assert!(id[(1, 0)].norm() < 1e-12);
        let singular = Matrix::from_rows(&[vec![c(1.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(1.0, 0.0)]]);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn ascent_bracketed_by_riesz_thorin() {
        let m = Matrix::from_rows(&[
            vec![c(1.0, 0.0), c(0.5, 0.5), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(-1.0, 0.2), c(0.3, 0.0)],
            vec![c(0.2, -0.1), c(0.0, 0.0), c(0.7, 0.0)],
        ]);
        let p = Exponent::new(3.0).unwrap();
        let b = m.induced_norm(p);
        assert!(b.lower <= b.upper + 1e-12);
        // the p-norm interpolates between the 2-norm and the inf-norm bounds
        assert!(b.value >= m.spectral_norm().value.min(m.norm_inf()) * 0.5);
    }
}
