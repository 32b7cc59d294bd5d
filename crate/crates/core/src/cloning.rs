//! Symmetric cloning of both halves of a bipartite state.
//!
//! The machine is fixed by two real amplitudes `c` and `d`: mode `|i>` maps to
//! `c |i,i>|X_i> + d sum_{j != i} (|i,j> + |j,i>) |X_j>` on an output, a clone
//! and an ancilla, and unitarity pins `c^2 + 2(k-1)d^2 = 1`. Running one
//! machine on each half of a Schmidt-form state yields six subsystems; this
//! module fixes their order, provides the closed-form reduced states of the
//! interesting pairs, and checks those closed forms against the traced-out
//! global state.
//!
//! Subsystem order of the global output, most significant first:
//! wing-one original (1), wing-one clone (3), wing-two original (2), wing-two
//! clone (4), then the two ancillas. Pair labels below use the same wire
//! numbers, so pair (1,4) is an original and the opposite wing's clone.

use num_complex::Complex;

use crate::linalg::{ComplexMatrix, StateVector};
use crate::states::{schmidt_state, SchmidtSpectrum};
use crate::{Error, Result, NORM_TOL};

/// Wire positions in the global output state, in tensor order.
const POS_Q1: usize = 0;
const POS_Q3: usize = 1;
const POS_Q2: usize = 2;
const POS_Q4: usize = 3;

/// Amplitudes of a symmetric `1 -> 2` cloning machine on `k` modes.
///
/// Kept opaque so the unitarity constraint checked at construction cannot be
/// broken afterwards.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CloningParams {
    c: f64,
    d: f64,
    k: usize,
}

impl CloningParams {
    pub fn new(c: f64, d: f64, k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParameter(format!("k must be at least 2, got {k}")));
        }
        if !(c > 0.0 && c <= 1.0) || !c.is_finite() {
            return Err(Error::InvalidParameter(format!("c must lie in (0, 1], got {c}")));
        }
        if !(0.0..=std::f64::consts::FRAC_1_SQRT_2).contains(&d) {
            return Err(Error::InvalidParameter(format!(
                "d must lie in [0, 1/sqrt(2)], got {d}"
            )));
        }
        let value = c * c + 2.0 * (k - 1) as f64 * d * d;
        if (value - 1.0).abs() > NORM_TOL {
            return Err(Error::UnitarityViolation { value });
        }
        Ok(CloningParams { c, d, k })
    }

    /// Solves the unitarity constraint for `d` given `c`.
    pub fn from_c(c: f64, k: usize) -> Result<Self> {
        if !(c > 0.0 && c <= 1.0) || !c.is_finite() {
            return Err(Error::InvalidParameter(format!("c must lie in (0, 1], got {c}")));
        }
        if k < 2 {
            return Err(Error::InvalidParameter(format!("k must be at least 2, got {k}")));
        }
        let d = ((1.0 - c * c) / (2.0 * (k - 1) as f64)).sqrt();
        Self::new(c, d, k)
    }

    pub fn from_c_squared(c_squared: f64, k: usize) -> Result<Self> {
        if !(c_squared > 0.0 && c_squared <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "c^2 must lie in (0, 1], got {c_squared}"
            )));
        }
        Self::from_c(c_squared.sqrt(), k)
    }

    /// The symmetric universal cloner on qubits, `c^2 = 2/3`, `d^2 = 1/6`.
    pub fn universal() -> Self {
        Self::from_c_squared(2.0 / 3.0, 2).expect("universal cloner parameters are valid")
    }

    /// The classical copier `c = 1`, `d = 0`.
    pub fn wootters_zurek(k: usize) -> Result<Self> {
        Self::new(1.0, 0.0, k)
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn c_squared(&self) -> f64 {
        self.c * self.c
    }

    pub fn d_squared(&self) -> f64 {
        self.d * self.d
    }
}

/// Coefficients of the closed-form reduced state of a non-local pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientSet {
    /// Weight of `lambda_i |i,i><i,i|`.
    pub p: f64,
    /// Weight of the coherence `sqrt(lambda_i lambda_j) |i,i><j,j|`.
    pub q: f64,
    /// Weight of `lambda_i |i,j><i,j|` and `lambda_i |j,i><j,i|`, `j != i`.
    pub r: f64,
    /// Weight of `lambda_i |j,l><j,l|` with `j, l != i`.
    pub s: f64,
}

pub fn coefficient_set(params: &CloningParams) -> CoefficientSet {
    let (c, d) = (params.c(), params.d());
    let k = params.k() as f64;
    let c2 = c * c;
    let d2 = d * d;
    CoefficientSet {
        p: (c2 + (k - 1.0) * d2).powi(2),
        q: d2 * (4.0 * c2 + 4.0 * c * d * (k - 2.0) + (k - 2.0) * d2),
        r: d2 * (c2 + (k - 1.0) * d2),
        s: d2 * d2,
    }
}

/// The four two-wire reduced states worth naming. Wires 1 and 2 are the
/// originals, 3 and 4 their clones; a pair is local when both wires come from
/// the same machine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputPair {
    Local13,
    Local24,
    NonLocal14,
    NonLocal23,
}

impl OutputPair {
    pub const ALL: [OutputPair; 4] = [
        OutputPair::Local13,
        OutputPair::Local24,
        OutputPair::NonLocal14,
        OutputPair::NonLocal23,
    ];

    pub fn is_local(self) -> bool {
        matches!(self, OutputPair::Local13 | OutputPair::Local24)
    }

    /// Wire positions in the global state, in the order the reduced state's
    /// tensor factors should appear.
    pub fn positions(self) -> [usize; 2] {
        match self {
            OutputPair::Local13 => [POS_Q1, POS_Q3],
            OutputPair::Local24 => [POS_Q2, POS_Q4],
            OutputPair::NonLocal14 => [POS_Q1, POS_Q4],
            OutputPair::NonLocal23 => [POS_Q2, POS_Q3],
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            OutputPair::Local13 => "(1,3)",
            OutputPair::Local24 => "(2,4)",
            OutputPair::NonLocal14 => "(1,4)",
            OutputPair::NonLocal23 => "(2,3)",
        }
    }
}

/// The cloning map as a `k^3 x k` matrix taking mode `|i>` to the
/// output-clone-ancilla space. Columns are orthonormal (an isometry), which
/// is what makes the whole transformation unitary on a larger space.
pub fn clone_isometry(params: &CloningParams) -> ComplexMatrix {
    let k = params.k();
    let mut v = ComplexMatrix::zeros(k * k * k, k);
    for i in 0..k {
        for (row, amp) in column_entries(params, i) {
            v.set(row, i, Complex::new(amp, 0.0));
        }
    }
    v
}

/// Sparse entries of column `i` of the isometry as `(row, amplitude)` with
/// row index `(output, clone, ancilla)` in mixed radix `k`.
fn column_entries(params: &CloningParams, i: usize) -> Vec<(usize, f64)> {
    let k = params.k();
    let row = |a: usize, e: usize, x: usize| (a * k + e) * k + x;
    let mut entries = vec![(row(i, i, i), params.c())];
    for j in 0..k {
        if j != i {
            entries.push((row(i, j, j), params.d()));
            entries.push((row(j, i, j), params.d()));
        }
    }
    entries
}

/// Runs one cloning machine on each half of a bipartite input state.
///
/// The input lives on wires (1,2); the output lives on the six subsystems in
/// the order documented in the module header.
pub fn clone_bipartite(input: &StateVector, params: &CloningParams) -> Result<StateVector> {
    let k = params.k();
    if input.dim() != k * k {
        return Err(Error::DimensionMismatch {
            expected: k * k,
            got: input.dim(),
        });
    }
    let columns: Vec<Vec<(usize, f64)>> = (0..k).map(|i| column_entries(params, i)).collect();
    let mut out = vec![Complex::new(0.0, 0.0); k.pow(6)];
    for i in 0..k {
        for j in 0..k {
            let amp = input.get(i * k + j);
            if amp == Complex::new(0.0, 0.0) {
                continue;
            }
            for &(r1, w1) in &columns[i] {
                let (a1, e1, x1) = (r1 / (k * k), (r1 / k) % k, r1 % k);
                for &(r2, w2) in &columns[j] {
                    let (a2, e2, x2) = (r2 / (k * k), (r2 / k) % k, r2 % k);
                    let index = ((((a1 * k + e1) * k + a2) * k + e2) * k + x1) * k + x2;
                    out[index] += amp * w1 * w2;
                }
            }
        }
    }
    Ok(StateVector::new(out))
}

/// Global output of cloning both halves of the Schmidt-form state.
pub fn global_output_state(
    spectrum: &SchmidtSpectrum,
    params: &CloningParams,
) -> Result<StateVector> {
    check_k(spectrum, params)?;
    clone_bipartite(&schmidt_state(spectrum), params)
}

/// Reduced state of `pair` computed the slow, unarguable way: form the global
/// output, project, and trace out everything else.
pub fn brute_force_reduced(
    input: &StateVector,
    params: &CloningParams,
    pair: OutputPair,
) -> Result<ComplexMatrix> {
    let global = clone_bipartite(input, params)?;
    let dims = vec![params.k(); 6];
    global.projector().partial_trace(&dims, &pair.positions())
}

/// Closed-form reduced state of `pair`.
///
/// Local pairs mix `c^2 lambda_i |i,i><i,i|` with the symmetrised
/// `d^2 lambda_i (|i,j> + |j,i>)(<i,j| + <j,i|)`. Non-local pairs are built
/// from the [`CoefficientSet`] weights, with the `q` coherence connecting
/// `|i,i>` to `|j,j>`. Both forms assume the non-negative Schmidt amplitudes
/// that [`SchmidtSpectrum`] guarantees.
pub fn reduced_state(
    spectrum: &SchmidtSpectrum,
    params: &CloningParams,
    pair: OutputPair,
) -> Result<ComplexMatrix> {
    check_k(spectrum, params)?;
    let k = params.k();
    let lambdas = spectrum.lambdas();
    let mut rho = ComplexMatrix::zeros(k * k, k * k);
    let mut bump = |r: usize, c: usize, value: f64| {
        let old = rho.get(r, c);
        rho.set(r, c, old + Complex::new(value, 0.0));
    };

    if pair.is_local() {
        let c2 = params.c_squared();
        let d2 = params.d_squared();
        for (i, &l) in lambdas.iter().enumerate() {
            bump(i * k + i, i * k + i, c2 * l);
            for j in 0..k {
                if j == i {
                    continue;
                }
                let (ij, ji) = (i * k + j, j * k + i);
                for r in [ij, ji] {
                    for c in [ij, ji] {
                        bump(r, c, d2 * l);
                    }
                }
            }
        }
    } else {
        let w = coefficient_set(params);
        for (i, &l) in lambdas.iter().enumerate() {
            bump(i * k + i, i * k + i, w.p * l);
            for (j, &lj) in lambdas.iter().enumerate() {
                if j == i {
                    continue;
                }
                bump(i * k + i, j * k + j, w.q * (l * lj).sqrt());
                bump(i * k + j, i * k + j, w.r * l);
                bump(j * k + i, j * k + i, w.r * l);
                for m in 0..k {
                    if m != i {
                        bump(j * k + m, j * k + m, w.s * l);
                    }
                }
            }
        }
    }
    Ok(rho)
}

/// Result of checking a closed form against the brute-force reduction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleReport {
    pub max_residual: f64,
    pub ok: bool,
}

/// Compares [`reduced_state`] with [`brute_force_reduced`] entrywise.
pub fn verify_reduced_against_global(
    spectrum: &SchmidtSpectrum,
    params: &CloningParams,
    pair: OutputPair,
    tol: f64,
) -> Result<OracleReport> {
    check_k(spectrum, params)?;
    if params.k() > 3 {
        return Err(Error::InvalidParameter(format!(
            "brute-force oracle supports k = 2 or 3, got k = {}",
            params.k()
        )));
    }
    let closed = reduced_state(spectrum, params, pair)?;
    let brute = brute_force_reduced(&schmidt_state(spectrum), params, pair)?;
    let max_residual = closed.max_abs_diff(&brute);
    Ok(OracleReport {
        max_residual,
        ok: max_residual <= tol,
    })
}

fn check_k(spectrum: &SchmidtSpectrum, params: &CloningParams) -> Result<()> {
    if spectrum.k() != params.k() {
        return Err(Error::DimensionMismatch {
            expected: params.k(),
            got: spectrum.k(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_params(k: usize, rng: &mut ChaCha8Rng) -> CloningParams {
        CloningParams::from_c(rng.gen_range(0.2..=1.0), k).unwrap()
    }

    fn random_spectrum(k: usize, rng: &mut ChaCha8Rng) -> SchmidtSpectrum {
        let mut weights: Vec<f64> = (0..k).map(|_| rng.gen_range(0.05..1.0)).collect();
        let sum: f64 = weights.iter().sum();
        for w in &mut weights {
            *w /= sum;
        }
        // Absorb the rounding from the division so the sum is exactly one.
        let head: f64 = weights[..k - 1].iter().sum();
        weights[k - 1] = 1.0 - head;
        SchmidtSpectrum::new(weights).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(CloningParams::new(1.0, 0.0, 2).is_ok());
        assert!(CloningParams::new(0.5, 0.5, 2).is_err(), "violates the constraint");
        assert!(CloningParams::new(0.0, 0.5, 2).is_err());
        assert!(CloningParams::from_c(0.8, 1).is_err());
        assert!(CloningParams::from_c_squared(0.0, 2).is_err());
        let p = CloningParams::from_c_squared(0.5, 3).unwrap();
        assert!((p.c_squared() + 4.0 * p.d_squared() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn universal_cloner_coefficients() {
        let w = coefficient_set(&CloningParams::universal());
        assert!((w.p - 25.0 / 36.0).abs() < 1e-12);
        assert!((w.q - 4.0 / 9.0).abs() < 1e-12);
        assert!((w.r - 5.0 / 36.0).abs() < 1e-12);
        assert!((w.s - 1.0 / 36.0).abs() < 1e-12);
    }

    #[test]
    fn wootters_zurek_coefficients() {
        let w = coefficient_set(&CloningParams::wootters_zurek(2).unwrap());
        assert_eq!((w.p, w.q, w.r, w.s), (1.0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn q_reduces_to_4c2d2_at_k2() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..50 {
            let p = random_params(2, &mut rng);
            let w = coefficient_set(&p);
            assert!((w.q - 4.0 * p.c_squared() * p.d_squared()).abs() < 1e-14);
        }
    }

    #[test]
    fn nonlocal_trace_normalisation_follows_from_coefficients() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for k in [2usize, 3, 4, 5] {
            for _ in 0..20 {
                let p = random_params(k, &mut rng);
                let w = coefficient_set(&p);
                let km1 = (k - 1) as f64;
                let trace = w.p + 2.0 * km1 * w.r + km1 * km1 * w.s;
                assert!((trace - 1.0).abs() < 1e-12, "k = {k}");
            }
        }
    }

    #[test]
    fn isometry_columns_are_orthonormal() {
        let mut rng = ChaCha8Rng::seed_from_u64(25);
        for k in [2usize, 3, 4] {
            for _ in 0..10 {
                let v = clone_isometry(&random_params(k, &mut rng));
                let gram = v.adjoint().matmul(&v);
                assert!(
                    gram.max_abs_diff(&ComplexMatrix::identity(k)) < 1e-12,
                    "V^dagger V != I at k = {k}"
                );
            }
        }
    }

    #[test]
    fn wootters_zurek_isometry_copies_basis_states() {
        let v = clone_isometry(&CloningParams::wootters_zurek(2).unwrap());
        for i in 0..2 {
            for row in 0..8 {
                let want = if row == (i * 2 + i) * 2 + i { 1.0 } else { 0.0 };
                assert_eq!(v.get(row, i).re, want);
            }
        }
    }

    #[test]
    fn global_output_of_classical_copier_on_balanced_state() {
        let spectrum = SchmidtSpectrum::two_mode(0.5).unwrap();
        let params = CloningParams::wootters_zurek(2).unwrap();
        let out = global_output_state(&spectrum, &params).unwrap();
        let a = std::f64::consts::FRAC_1_SQRT_2;
        assert!((out.get(0).re - a).abs() < 1e-15, "|000000> amplitude");
        assert!((out.get(63).re - a).abs() < 1e-15, "|111111> amplitude");
        let support: usize = (0..64).filter(|&i| out.get(i).norm() > 1e-15).count();
        assert_eq!(support, 2);
    }

    #[test]
    fn global_output_is_normalised() {
        let mut rng = ChaCha8Rng::seed_from_u64(27);
        for k in [2usize, 3] {
            for _ in 0..10 {
                let out = global_output_state(
                    &random_spectrum(k, &mut rng),
                    &random_params(k, &mut rng),
                )
                .unwrap();
                assert!((out.norm() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn local_closed_form_entries() {
        let spectrum = SchmidtSpectrum::two_mode(0.3).unwrap();
        let params = CloningParams::universal();
        let rho = reduced_state(&spectrum, &params, OutputPair::Local13).unwrap();
        let (c2, d2) = (params.c_squared(), params.d_squared());
        assert!((rho.get(0, 0).re - c2 * 0.3).abs() < 1e-14);
        assert!((rho.get(3, 3).re - c2 * 0.7).abs() < 1e-14);
        for (r, c) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            assert!((rho.get(r, c).re - d2).abs() < 1e-14);
        }
        assert_eq!(rho.get(0, 3).re, 0.0, "local pair has no |00><11| coherence");
    }

    #[test]
    fn nonlocal_closed_form_entries() {
        let spectrum = SchmidtSpectrum::two_mode(0.3).unwrap();
        let params = CloningParams::universal();
        let w = coefficient_set(&params);
        let rho = reduced_state(&spectrum, &params, OutputPair::NonLocal14).unwrap();
        assert!((rho.get(0, 0).re - (w.p * 0.3 + w.s * 0.7)).abs() < 1e-14);
        assert!((rho.get(3, 3).re - (w.p * 0.7 + w.s * 0.3)).abs() < 1e-14);
        assert!((rho.get(1, 1).re - w.r).abs() < 1e-14);
        assert!((rho.get(2, 2).re - w.r).abs() < 1e-14);
        let corner = w.q * (0.3f64 * 0.7).sqrt();
        assert!((rho.get(0, 3).re - corner).abs() < 1e-14);
        assert!((rho.get(3, 0).re - corner).abs() < 1e-14);
        assert_eq!(rho.get(1, 2).re, 0.0);
    }

    #[test]
    fn classical_copier_nonlocal_state_is_diagonal() {
        let spectrum = SchmidtSpectrum::two_mode(0.3).unwrap();
        let params = CloningParams::wootters_zurek(2).unwrap();
        let rho = reduced_state(&spectrum, &params, OutputPair::NonLocal14).unwrap();
        let mut want = ComplexMatrix::zeros(4, 4);
        want.set(0, 0, Complex::new(0.3, 0.0));
        want.set(3, 3, Complex::new(0.7, 0.0));
        assert!(rho.max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn oracle_matches_at_reference_points() {
        let cases: [(SchmidtSpectrum, CloningParams); 3] = [
            (SchmidtSpectrum::two_mode(0.5).unwrap(), CloningParams::universal()),
            (
                SchmidtSpectrum::two_mode(0.3).unwrap(),
                CloningParams::wootters_zurek(2).unwrap(),
            ),
            (
                SchmidtSpectrum::uniform(3).unwrap(),
                CloningParams::from_c_squared(0.5, 3).unwrap(),
            ),
        ];
        for (spectrum, params) in &cases {
            for pair in OutputPair::ALL {
                let report =
                    verify_reduced_against_global(spectrum, params, pair, 1e-10).unwrap();
                assert!(
                    report.ok,
                    "pair {} at k = {}: residual {:.3e}",
                    pair.label(),
                    params.k(),
                    report.max_residual
                );
            }
        }
    }

    #[test]
    fn oracle_matches_at_random_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..8 {
            let params = random_params(2, &mut rng);
            let spectrum = random_spectrum(2, &mut rng);
            for pair in OutputPair::ALL {
                let report =
                    verify_reduced_against_global(&spectrum, &params, pair, 1e-10).unwrap();
                assert!(report.ok, "residual {:.3e}", report.max_residual);
            }
        }
        for _ in 0..3 {
            let params = random_params(3, &mut rng);
            let spectrum = random_spectrum(3, &mut rng);
            for pair in OutputPair::ALL {
                let report =
                    verify_reduced_against_global(&spectrum, &params, pair, 1e-10).unwrap();
                assert!(report.ok, "k = 3 residual {:.3e}", report.max_residual);
            }
        }
    }

    #[test]
    fn wing_swap_symmetry() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for k in [2usize, 3] {
            let params = random_params(k, &mut rng);
            let spectrum = random_spectrum(k, &mut rng);
            let input = schmidt_state(&spectrum);
            let local_a = brute_force_reduced(&input, &params, OutputPair::Local13).unwrap();
            let local_b = brute_force_reduced(&input, &params, OutputPair::Local24).unwrap();
            assert!(local_a.max_abs_diff(&local_b) < 1e-13);
            let cross_a = brute_force_reduced(&input, &params, OutputPair::NonLocal14).unwrap();
            let cross_b = brute_force_reduced(&input, &params, OutputPair::NonLocal23).unwrap();
            assert!(cross_a.max_abs_diff(&cross_b) < 1e-13);
        }
    }

    #[test]
    fn reduced_states_are_density_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for k in [2usize, 3] {
            let params = random_params(k, &mut rng);
            let spectrum = random_spectrum(k, &mut rng);
            for pair in OutputPair::ALL {
                let rho = reduced_state(&spectrum, &params, pair).unwrap();
                let check = rho.is_density_matrix(1e-10);
                assert!(check.ok, "pair {} at k = {k}: {check:?}", pair.label());
            }
        }
    }

    #[test]
    fn mode_count_mismatch_is_rejected() {
        let spectrum = SchmidtSpectrum::uniform(3).unwrap();
        let params = CloningParams::universal();
        assert!(matches!(
            reduced_state(&spectrum, &params, OutputPair::Local13),
            Err(Error::DimensionMismatch { .. })
        ));
        let oversized = CloningParams::from_c(0.9, 4).unwrap();
        assert!(verify_reduced_against_global(
            &SchmidtSpectrum::uniform(4).unwrap(),
            &oversized,
            OutputPair::Local13,
            1e-10
        )
        .is_err());
    }
}
