//! Dense complex linear algebra for small Hilbert spaces.
//!
//! Everything in this crate lives in spaces of a few qubits or qutrits, so
//! matrices stay at dimension 16 or below in the closed-form paths and reach
//! 729 only inside the brute-force cloning oracle. Storage is a row-major
//! `Vec<Complex64>` and all algorithms are direct dense loops; there is no
//! sparsity and no non-Hermitian eigensolver because nothing here needs them.

use num_complex::Complex;

use crate::{Error, Result};

pub type Complex64 = Complex<f64>;

const ZERO: Complex64 = Complex::new(0.0, 0.0);
const ONE: Complex64 = Complex::new(1.0, 0.0);

/// Dense row-major matrix over `Complex64`.
///
/// Most operations require a square matrix; rectangular shapes exist only to
/// carry isometries (for example the `k^3 x k` cloning map).
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major data. Panics on a shape mismatch or on
    /// non-finite entries; those are caller bugs, not recoverable conditions.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length does not match shape");
        assert!(
            data.iter().all(|z| z.re.is_finite() && z.im.is_finite()),
            "non-finite matrix entry"
        );
        ComplexMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = ONE;
        }
        m
    }

    /// Square matrix from row-major real entries.
    pub fn from_real(n: usize, entries: &[f64]) -> Self {
        assert_eq!(entries.len(), n * n, "entry count does not match shape");
        Self::new(n, n, entries.iter().map(|&x| Complex::new(x, 0.0)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Side length of a square matrix. Panics if the matrix is rectangular.
    pub fn dim(&self) -> usize {
        assert!(self.is_square(), "dim() on a {}x{} matrix", self.rows, self.cols);
        self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range");
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Complex64) {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range");
        self.data[i * self.cols + j] = value;
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace of a rectangular matrix");
        (0..self.rows).map(|i| self.data[i * self.cols + i]).sum()
    }

    pub fn conjugate(&self) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j].conj();
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in sub");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, factor: f64) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch in matmul");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.data[k * other.cols + j];
                }
            }
        }
        out
    }

    /// Tensor (Kronecker) product `self (x) other`.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.data[i * self.cols + j];
                if a == ZERO {
                    continue;
                }
                for p in 0..other.rows {
                    for q in 0..other.cols {
                        out.data[(i * other.rows + p) * cols + (j * other.cols + q)] =
                            a * other.data[p * other.cols + q];
                    }
                }
            }
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise absolute difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in diff");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest deviation from `a[i][j] == conj(a[j][i])`.
    pub fn hermiticity_deviation(&self) -> f64 {
        assert!(self.is_square(), "hermiticity of a rectangular matrix");
        let n = self.rows;
        let mut dev: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                dev = dev.max((self.data[i * n + j] - self.data[j * n + i].conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }

    /// Traces out part of a tensor-product space.
    ///
    /// `dims` lists the factor dimensions in tensor order (most significant
    /// first, matching `kron`); `keep` lists the factors to retain. The output
    /// factors appear in the order given in `keep`, so `keep = [2, 1]` yields
    /// the reduced state with factor 2 first.
    pub fn partial_trace(&self, dims: &[usize], keep: &[usize]) -> Result<ComplexMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let total: usize = dims.iter().product();
        if dims.is_empty() || dims.contains(&0) || total != self.rows {
            return Err(Error::SubsystemMismatch {
                dims: dims.to_vec(),
                dim: self.rows,
            });
        }
        let mut seen = vec![false; dims.len()];
        for &p in keep {
            if p >= dims.len() {
                return Err(Error::InvalidSubsystems(format!(
                    "factor {p} out of range for {} factors",
                    dims.len()
                )));
            }
            if seen[p] {
                return Err(Error::InvalidSubsystems(format!("factor {p} listed twice")));
            }
            seen[p] = true;
        }
        if keep.is_empty() {
            return Err(Error::InvalidSubsystems("no factors kept".into()));
        }

        let traced: Vec<usize> = (0..dims.len()).filter(|p| !seen[*p]).collect();
        let keep_offsets = flat_offsets(dims, keep);
        let traced_offsets = flat_offsets(dims, &traced);

        let out_dim = keep_offsets.len();
        let mut out = ComplexMatrix::zeros(out_dim, out_dim);
        for (r, &base_r) in keep_offsets.iter().enumerate() {
            for (c, &base_c) in keep_offsets.iter().enumerate() {
                let mut sum = ZERO;
                for &t in &traced_offsets {
                    sum += self.data[(base_r + t) * total + (base_c + t)];
                }
                out.data[r * out_dim + c] = sum;
            }
        }
        Ok(out)
    }

    /// Eigenvalues of a Hermitian matrix, sorted ascending.
    ///
    /// Rejects matrices whose hermiticity deviation exceeds `tol`.
    pub fn hermitian_eigenvalues(&self, tol: f64) -> Result<Vec<f64>> {
        self.hermitian_eigen(tol).map(|(values, _)| values)
    }

    /// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
    ///
    /// Returns eigenvalues sorted ascending and the unitary holding the
    /// matching eigenvectors in its columns.
    pub fn hermitian_eigen(&self, tol: f64) -> Result<(Vec<f64>, ComplexMatrix)> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let dev = self.hermiticity_deviation();
        if dev > tol {
            return Err(Error::NotHermitian { deviation: dev });
        }

        let n = self.rows;
        let mut a = self.data.clone();
        let mut v = ComplexMatrix::identity(n).data;
        // Absolute convergence threshold; off-diagonal mass shrinks
        // quadratically once rotations get going.
        let target = 1e-14 * self.frobenius_norm().max(1.0);

        const MAX_SWEEPS: usize = 60;
        let mut converged = n <= 1;
        for _ in 0..MAX_SWEEPS {
            if off_diagonal_norm(&a, n) <= target {
                converged = true;
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    jacobi_rotate(&mut a, &mut v, n, p, q);
                }
            }
        }
        if !converged && off_diagonal_norm(&a, n) > target {
            return Err(Error::NoConvergence {
                off_diagonal: off_diagonal_norm(&a, n),
            });
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| a[i * n + i].re.total_cmp(&a[j * n + j].re));
        let values: Vec<f64> = order.iter().map(|&i| a[i * n + i].re).collect();
        let mut vectors = ComplexMatrix::zeros(n, n);
        for (col, &src) in order.iter().enumerate() {
            for row in 0..n {
                vectors.data[row * n + col] = v[row * n + src];
            }
        }
        Ok((values, vectors))
    }

    /// Checks the three density-matrix properties at tolerance `tol` and
    /// reports each one rather than failing on the first.
    pub fn is_density_matrix(&self, tol: f64) -> DensityCheck {
        assert!(self.is_square(), "density check on a rectangular matrix");
        let trace_deviation = (self.trace() - ONE).norm();
        let hermitian = self.is_hermitian(tol);
        let min_eigenvalue = if hermitian {
            // Hermiticity was just checked, so the eigensolver cannot reject.
            Some(self.hermitian_eigenvalues(tol).expect("hermitian input")[0])
        } else {
            None
        };
        let ok = hermitian && trace_deviation <= tol && min_eigenvalue.is_some_and(|m| m >= -tol);
        DensityCheck {
            hermitian,
            trace_deviation,
            min_eigenvalue,
            ok,
        }
    }
}

/// Outcome of [`ComplexMatrix::is_density_matrix`].
#[derive(Debug, Clone, PartialEq)]
pub struct DensityCheck {
    pub hermitian: bool,
    pub trace_deviation: f64,
    /// `None` when the matrix is not Hermitian enough to diagonalise.
    pub min_eigenvalue: Option<f64>,
    pub ok: bool,
}

/// Flat row offsets of every sub-index over the listed factors, most
/// significant digit first, all other factors held at zero.
fn flat_offsets(dims: &[usize], positions: &[usize]) -> Vec<usize> {
    let strides: Vec<usize> = (0..dims.len())
        .map(|p| dims[p + 1..].iter().product())
        .collect();
    let count: usize = positions.iter().map(|&p| dims[p]).product();
    let mut offsets = Vec::with_capacity(count);
    for index in 0..count {
        let mut rem = index;
        let mut offset = 0;
        let mut place = count;
        for &p in positions {
            place /= dims[p];
            offset += (rem / place) * strides[p];
            rem %= place;
        }
        offsets.push(offset);
    }
    offsets
}

fn off_diagonal_norm(a: &[Complex64], n: usize) -> f64 {
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[i * n + j].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// One Jacobi rotation zeroing `a[p][q]`, with the unitary accumulated in `v`.
///
/// The pivot is phased to a real number first, so the rotation
/// `U = [[c, s*phase], [-s*conj(phase), c]]` reduces to the real symmetric
/// case with `t = s/c` solving `t^2 + 2*tau*t - 1 = 0`.
fn jacobi_rotate(a: &mut [Complex64], v: &mut [Complex64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let abs = apq.norm();
    if abs == 0.0 {
        return;
    }
    let phase = apq / abs;
    let tau = (a[q * n + q].re - a[p * n + p].re) / (2.0 * abs);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        1.0 / (tau - (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let sp = phase * s;

    // Columns: A <- A U.
    for m in 0..n {
        let amp = a[m * n + p];
        let amq = a[m * n + q];
        a[m * n + p] = amp * c - amq * sp.conj();
        a[m * n + q] = amp * sp + amq * c;
    }
    // Rows: A <- U^dagger A.
    for m in 0..n {
        let apm = a[p * n + m];
        let aqm = a[q * n + m];
        a[p * n + m] = apm * c - aqm * sp;
        a[q * n + m] = apm * sp.conj() + aqm * c;
    }
    a[p * n + q] = ZERO;
    a[q * n + p] = ZERO;
    for m in 0..n {
        let vmp = v[m * n + p];
        let vmq = v[m * n + q];
        v[m * n + p] = vmp * c - vmq * sp.conj();
        v[m * n + q] = vmp * sp + vmq * c;
    }
}

/// Pure state as a dense complex amplitude vector.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    data: Vec<Complex64>,
}

impl StateVector {
    pub fn new(data: Vec<Complex64>) -> Self {
        assert!(!data.is_empty(), "empty state vector");
        assert!(
            data.iter().all(|z| z.re.is_finite() && z.im.is_finite()),
            "non-finite amplitude"
        );
        StateVector { data }
    }

    pub fn from_real(amplitudes: &[f64]) -> Self {
        Self::new(amplitudes.iter().map(|&x| Complex::new(x, 0.0)).collect())
    }

    /// Computational basis state `|index>` in a `dim`-dimensional space.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index out of range");
        let mut data = vec![ZERO; dim];
        data[index] = ONE;
        StateVector { data }
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn get(&self, i: usize) -> Complex64 {
        self.data[i]
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn inner(&self, other: &Self) -> Complex64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch in inner product");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut data = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.data {
            for b in &other.data {
                data.push(a * b);
            }
        }
        StateVector { data }
    }

    /// Rank-one projector `|self><self|`.
    pub fn projector(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut out = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.data[i * n + j] = self.data[i] * self.data[j].conj();
            }
        }
        out
    }
}

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_real(2, &[0.0, 1.0, 1.0, 0.0])
}

pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::new(
        2,
        2,
        vec![
            ZERO,
            Complex::new(0.0, -1.0),
            Complex::new(0.0, 1.0),
            ZERO,
        ],
    )
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_real(2, &[1.0, 0.0, 0.0, -1.0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex::new(rng.gen_range(-1.0..1.0), 0.0));
            for j in (i + 1)..n {
                let z = Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                m.set(i, j, z);
                m.set(j, i, z.conj());
            }
        }
        m
    }

    fn random_density(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
        // G G^dagger normalised to unit trace is positive by construction.
        let mut g = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                g.set(
                    i,
                    j,
                    Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                );
            }
        }
        let m = g.matmul(&g.adjoint());
        m.scale(1.0 / m.trace().re)
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(i2.kron(&i2), ComplexMatrix::identity(4));
    }

    #[test]
    fn kron_pauli_entries() {
        let xx = pauli_x().kron(&pauli_x());
        assert_eq!(xx.get(0, 3), ONE);
        assert_eq!(xx.get(0, 0), ZERO);
        let zz = pauli_z().kron(&pauli_z());
        for (i, want) in [1.0, -1.0, -1.0, 1.0].iter().enumerate() {
            assert_eq!(zz.get(i, i).re, *want);
        }
    }

    #[test]
    fn kron_trace_is_product_of_traces() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let a = random_hermitian(2, &mut rng);
            let b = random_hermitian(3, &mut rng);
            let lhs = a.kron(&b).trace();
            let rhs = a.trace() * b.trace();
            assert!((lhs - rhs).norm() < 1e-12);
        }
    }

    #[test]
    fn matmul_against_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_hermitian(4, &mut rng);
        assert!(a.matmul(&ComplexMatrix::identity(4)).max_abs_diff(&a) == 0.0);
    }

    #[test]
    fn partial_trace_of_bell_projector_is_maximally_mixed() {
        let sqrt_half = std::f64::consts::FRAC_1_SQRT_2;
        let phi = StateVector::from_real(&[sqrt_half, 0.0, 0.0, sqrt_half]);
        let rho = phi.projector();
        for keep in [[0usize], [1usize]] {
            let reduced = rho.partial_trace(&[2, 2], &keep).unwrap();
            let target = ComplexMatrix::identity(2).scale(0.5);
            assert!(reduced.max_abs_diff(&target) < 1e-15);
        }
    }

    #[test]
    fn partial_trace_of_product_state_factorises() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random_density(2, &mut rng);
        let b = random_density(3, &mut rng);
        let joint = a.kron(&b);
        assert!(joint.partial_trace(&[2, 3], &[0]).unwrap().max_abs_diff(&a) < 1e-14);
        assert!(joint.partial_trace(&[2, 3], &[1]).unwrap().max_abs_diff(&b) < 1e-14);
    }

    #[test]
    fn partial_trace_composes_and_preserves_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let rho = random_density(8, &mut rng);
        let joint = rho.partial_trace(&[2, 2, 2], &[0]).unwrap();
        let staged = rho
            .partial_trace(&[2, 2, 2], &[0, 1])
            .unwrap()
            .partial_trace(&[2, 2], &[0])
            .unwrap();
        assert!(joint.max_abs_diff(&staged) < 1e-14);
        assert!((joint.trace() - rho.trace()).norm() < 1e-13);
    }

    #[test]
    fn partial_trace_keep_order_swaps_factors() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let rho = random_density(8, &mut rng);
        let ab = rho.partial_trace(&[2, 2, 2], &[0, 2]).unwrap();
        let ba = rho.partial_trace(&[2, 2, 2], &[2, 0]).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        let lhs = ab.get(i * 2 + j, k * 2 + l);
                        let rhs = ba.get(j * 2 + i, l * 2 + k);
                        assert!((lhs - rhs).norm() < 1e-15);
                    }
                }
            }
        }
    }

    #[test]
    fn partial_trace_rejects_bad_inputs() {
        let rho = ComplexMatrix::identity(4).scale(0.25);
        assert!(matches!(
            rho.partial_trace(&[2, 3], &[0]),
            Err(Error::SubsystemMismatch { .. })
        ));
        assert!(matches!(
            rho.partial_trace(&[2, 2], &[0, 0]),
            Err(Error::InvalidSubsystems(_))
        ));
        assert!(matches!(
            rho.partial_trace(&[2, 2], &[2]),
            Err(Error::InvalidSubsystems(_))
        ));
    }

    #[test]
    fn eigenvalues_of_pauli_z() {
        let values = pauli_z().hermitian_eigenvalues(1e-12).unwrap();
        assert!((values[0] + 1.0).abs() < 1e-14);
        assert!((values[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn eigenvalues_of_witness_shaped_matrix() {
        // Diagonal (0, a, a, 0) with corners -a, where a = 1/sqrt(3): the
        // spectrum is {-a, a, a, a}, worked out from the two 2x2 blocks.
        let a = 3.0f64.sqrt().recip();
        let mut w = ComplexMatrix::zeros(4, 4);
        w.set(1, 1, Complex::new(a, 0.0));
        w.set(2, 2, Complex::new(a, 0.0));
        w.set(0, 3, Complex::new(-a, 0.0));
        w.set(3, 0, Complex::new(-a, 0.0));
        let values = w.hermitian_eigenvalues(1e-12).unwrap();
        let expected = [-a, a, a, a];
        for (got, want) in values.iter().zip(expected) {
            assert!((got - want).abs() < 1e-12, "got {got}, want {want}");
        }
    }

    #[test]
    fn eigen_residuals_and_sum_on_random_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for n in [2usize, 4, 8, 16] {
            let m = random_hermitian(n, &mut rng);
            let (values, vectors) = m.hermitian_eigen(1e-12).unwrap();
            let sum: f64 = values.iter().sum();
            assert!((sum - m.trace().re).abs() < 1e-10);
            for (col, &value) in values.iter().enumerate() {
                let mut residual: f64 = 0.0;
                for row in 0..n {
                    let mut mv = ZERO;
                    for k in 0..n {
                        mv += m.get(row, k) * vectors.get(k, col);
                    }
                    residual = residual.max((mv - vectors.get(row, col) * value).norm());
                }
                assert!(residual < 1e-9, "residual {residual} at n = {n}");
            }
        }
    }

    #[test]
    fn eigen_rejects_non_hermitian() {
        let mut m = ComplexMatrix::zeros(2, 2);
        m.set(0, 1, ONE);
        assert!(matches!(
            m.hermitian_eigenvalues(1e-12),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn density_check_accepts_maximally_mixed() {
        let check = ComplexMatrix::identity(2).scale(0.5).is_density_matrix(1e-10);
        assert!(check.ok);
        assert!(check.hermitian);
        assert!(check.trace_deviation < 1e-15);
        assert!(check.min_eigenvalue.unwrap() > 0.49);
    }

    #[test]
    fn density_check_flags_defects() {
        // Traceless and indefinite.
        let check = pauli_x().is_density_matrix(1e-10);
        assert!(!check.ok);
        assert!(check.min_eigenvalue.unwrap() < -0.5);

        let mut skew = ComplexMatrix::zeros(2, 2);
        skew.set(0, 0, ONE);
        skew.set(0, 1, ONE);
        let check = skew.is_density_matrix(1e-10);
        assert!(!check.ok);
        assert!(!check.hermitian);
        assert!(check.min_eigenvalue.is_none());
    }

    #[test]
    fn state_vector_basics() {
        let v = StateVector::basis(4, 2);
        assert_eq!(v.dim(), 4);
        assert_eq!(v.get(2), ONE);
        assert!((v.norm() - 1.0).abs() < 1e-15);

        let w = StateVector::from_real(&[0.6, 0.8]);
        assert!((w.norm() - 1.0).abs() < 1e-15);
        assert!((w.projector().trace().re - 1.0).abs() < 1e-15);
        assert!((w.inner(&w).re - 1.0).abs() < 1e-15);

        let t = StateVector::basis(2, 1).tensor(&StateVector::basis(3, 0));
        assert_eq!(t.dim(), 6);
        assert_eq!(t.get(3), ONE);
    }
}
