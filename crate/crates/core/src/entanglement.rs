//! Entanglement analysis of two-qubit states: witness operators, concurrence,
//! the partial-transpose criterion and the critical-concurrence threshold of
//! the cloning machine's non-local pair.

use crate::linalg::{pauli_x, pauli_y, pauli_z, ComplexMatrix};
use crate::{Error, Result, STRUCTURAL_TOL};

/// The two witness normalisations in use: both are `(I - theta)` with
/// `theta = XX - YY + ZZ`, scaled by `1/(2 sqrt(3))` for `W1` and `1/2`
/// for `W2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    W1,
    W2,
}

/// A witness operator with its matrix realised once at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessOperator {
    pub kind: WitnessKind,
    matrix: ComplexMatrix,
}

impl WitnessOperator {
    pub fn new(kind: WitnessKind) -> Self {
        let theta = pauli_x()
            .kron(&pauli_x())
            .sub(&pauli_y().kron(&pauli_y()))
            .add(&pauli_z().kron(&pauli_z()));
        let base = ComplexMatrix::identity(4).sub(&theta);
        let matrix = match kind {
            WitnessKind::W1 => base.scale(0.5 / 3.0f64.sqrt()),
            WitnessKind::W2 => base.scale(0.5),
        };
        WitnessOperator { kind, matrix }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }
}

/// Expectation value `Tr(W rho)` of a witness on a 4x4 Hermitian state.
///
/// A negative value certifies entanglement; a non-negative value decides
/// nothing on its own.
pub fn witness_value(witness: &WitnessOperator, rho: &ComplexMatrix) -> Result<f64> {
    check_two_qubit_hermitian(rho)?;
    Ok(witness.matrix.matmul(rho).trace().re)
}

/// Threshold on the input concurrence above which the non-local pair of a
/// `k = 2` machine with amplitude `c` comes out entangled.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdReport {
    pub c: f64,
    /// `(1 + c^2) / (4 c^2)`.
    pub critical_concurrence: f64,
    /// The threshold only bites when it lies below the maximal concurrence 1,
    /// which needs `c > 1/sqrt(3)`.
    pub in_validity_range: bool,
}

pub fn critical_concurrence(c: f64) -> Result<ThresholdReport> {
    if !(c > 0.0 && c <= 1.0) || !c.is_finite() {
        return Err(Error::InvalidParameter(format!("c must lie in (0, 1], got {c}")));
    }
    let c2 = c * c;
    Ok(ThresholdReport {
        c,
        critical_concurrence: (1.0 + c2) / (4.0 * c2),
        in_validity_range: c > 3.0f64.sqrt().recip(),
    })
}

/// Wootters concurrence of a 4x4 density matrix.
///
/// X-shaped states (the only shape this crate produces) take the closed form
/// `2 max(0, |rho_03| - sqrt(rho_11 rho_22), |rho_12| - sqrt(rho_00 rho_33))`;
/// anything else falls back to the spectral route. The two routes agree on
/// X-shaped states, which is covered by a test rather than assumed.
pub fn concurrence_mixed(rho: &ComplexMatrix) -> Result<f64> {
    let check = rho.is_density_matrix(STRUCTURAL_TOL);
    if !check.ok {
        return Err(Error::NotDensityMatrix(format!("{check:?}")));
    }
    if is_x_shaped(rho, STRUCTURAL_TOL) {
        concurrence_x_state(rho)
    } else {
        concurrence_spectral(rho)
    }
}

/// True when every entry off the diagonal and the anti-diagonal vanishes.
pub fn is_x_shaped(rho: &ComplexMatrix, tol: f64) -> bool {
    assert_eq!((rho.rows(), rho.cols()), (4, 4), "X-shape test needs a 4x4 matrix");
    (0..4).all(|i| {
        (0..4).all(|j| i == j || i + j == 3 || rho.get(i, j).norm() <= tol)
    })
}

/// Closed-form concurrence of an X-shaped state.
pub fn concurrence_x_state(rho: &ComplexMatrix) -> Result<f64> {
    check_two_qubit_hermitian(rho)?;
    let d = |i: usize| rho.get(i, i).re.max(0.0);
    let outer = rho.get(0, 3).norm() - (d(1) * d(2)).sqrt();
    let inner = rho.get(1, 2).norm() - (d(0) * d(3)).sqrt();
    Ok(outer.max(inner).max(0.0) * 2.0)
}

/// Spectral concurrence: with `rho_tilde = (Y x Y) conj(rho) (Y x Y)` and
/// `mu_i` the decreasing eigenvalues of `sqrt(rho) rho_tilde sqrt(rho)`,
/// the concurrence is `max(0, sqrt(mu_1) - sqrt(mu_2) - sqrt(mu_3) -
/// sqrt(mu_4))`. Working on this Hermitian product avoids a general
/// eigensolver.
pub fn concurrence_spectral(rho: &ComplexMatrix) -> Result<f64> {
    check_two_qubit_hermitian(rho)?;
    let yy = pauli_y().kron(&pauli_y());
    let tilde = yy.matmul(&rho.conjugate()).matmul(&yy);
    let root = hermitian_sqrt(rho)?;
    let product = root.matmul(&tilde).matmul(&root);
    let mut mus = product.hermitian_eigenvalues(STRUCTURAL_TOL)?;
    mus.reverse();
    let roots: Vec<f64> = mus.iter().map(|&m| m.max(0.0).sqrt()).collect();
    Ok((roots[0] - roots[1] - roots[2] - roots[3]).max(0.0))
}

/// Positive square root of a Hermitian positive semidefinite matrix by
/// spectral synthesis; slightly negative eigenvalues are clamped to zero.
fn hermitian_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let (values, vectors) = m.hermitian_eigen(STRUCTURAL_TOL)?;
    let n = m.dim();
    let mut out = ComplexMatrix::zeros(n, n);
    for (idx, &value) in values.iter().enumerate() {
        let root = value.max(0.0).sqrt();
        if root == 0.0 {
            continue;
        }
        for i in 0..n {
            for j in 0..n {
                let old = out.get(i, j);
                out.set(i, j, old + vectors.get(i, idx) * vectors.get(j, idx).conj() * root);
            }
        }
    }
    Ok(out)
}

/// Partial transpose over the second qubit of a 4x4 matrix.
pub fn partial_transpose(rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    if (rho.rows(), rho.cols()) != (4, 4) {
        return Err(Error::DimensionMismatch {
            expected: 4,
            got: rho.rows(),
        });
    }
    let mut out = ComplexMatrix::zeros(4, 4);
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    // <i l| rho^PT |k j> = <i j| rho |k l>
                    out.set(i * 2 + l, k * 2 + j, rho.get(i * 2 + j, k * 2 + l));
                }
            }
        }
    }
    Ok(out)
}

/// Smallest eigenvalue of the partial transpose.
pub fn min_pt_eigenvalue(rho: &ComplexMatrix) -> Result<f64> {
    check_two_qubit_hermitian(rho)?;
    let pt = partial_transpose(rho)?;
    Ok(pt.hermitian_eigenvalues(STRUCTURAL_TOL)?[0])
}

/// Peres-Horodecki test: for two qubits a negative partial transpose is
/// equivalent to entanglement. Eigenvalues above `-1e-10` count as
/// non-negative so that numerically zero modes do not flip the verdict.
pub fn ppt_entangled(rho: &ComplexMatrix) -> Result<bool> {
    Ok(min_pt_eigenvalue(rho)? < -STRUCTURAL_TOL)
}

/// Three-way classification used when comparing the PPT verdict against a
/// sharp analytic boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntanglementClass {
    Entangled,
    Separable,
    /// Too close to the separable-entangled boundary to call either way.
    Boundary,
}

pub fn classify_ppt(rho: &ComplexMatrix, boundary_tol: f64) -> Result<EntanglementClass> {
    let min = min_pt_eigenvalue(rho)?;
    Ok(if min.abs() <= boundary_tol {
        EntanglementClass::Boundary
    } else if min < 0.0 {
        EntanglementClass::Entangled
    } else {
        EntanglementClass::Separable
    })
}

fn check_two_qubit_hermitian(rho: &ComplexMatrix) -> Result<()> {
    if (rho.rows(), rho.cols()) != (4, 4) {
        return Err(Error::DimensionMismatch {
            expected: 4,
            got: rho.rows(),
        });
    }
    let dev = rho.hermiticity_deviation();
    if dev > STRUCTURAL_TOL {
        return Err(Error::NotHermitian { deviation: dev });
    }
    Ok(())
}
