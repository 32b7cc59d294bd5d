//! Input states: Schmidt-form bipartite states, the Bell encoding of a
//! classical bit, and the Werner-family decomposition used to recognise the
//! shared output state.

use num_complex::Complex;
use rand::Rng;

use crate::linalg::{ComplexMatrix, StateVector};
use crate::{Error, Result, NORM_TOL};

/// Schmidt spectrum of a bipartite pure state: non-negative weights summing
/// to one, one per Schmidt mode.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtSpectrum {
    lambdas: Vec<f64>,
}

impl SchmidtSpectrum {
    pub fn new(lambdas: Vec<f64>) -> Result<Self> {
        if lambdas.is_empty() {
            return Err(Error::InvalidSpectrum("no Schmidt weights".into()));
        }
        if lambdas.iter().any(|&l| !l.is_finite() || l < 0.0) {
            return Err(Error::InvalidSpectrum(format!(
                "weights must be non-negative and finite, got {lambdas:?}"
            )));
        }
        let sum: f64 = lambdas.iter().sum();
        if (sum - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidSpectrum(format!("weights sum to {sum}, not 1")));
        }
        Ok(SchmidtSpectrum { lambdas })
    }

    /// Two-mode spectrum `(lambda1, 1 - lambda1)`.
    pub fn two_mode(lambda1: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda1) {
            return Err(Error::InvalidSpectrum(format!(
                "lambda1 = {lambda1} outside [0, 1]"
            )));
        }
        Self::new(vec![lambda1, 1.0 - lambda1])
    }

    /// Flat spectrum with `k` equal weights.
    pub fn uniform(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidSpectrum("no Schmidt weights".into()));
        }
        Self::new(vec![1.0 / k as f64; k])
    }

    /// Number of Schmidt modes.
    pub fn k(&self) -> usize {
        self.lambdas.len()
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }
}

/// Classical bit held by the dealer, encoded into a Bell state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EncodedBit {
    Zero,
    One,
}

impl EncodedBit {
    pub fn as_u8(self) -> u8 {
        match self {
            EncodedBit::Zero => 0,
            EncodedBit::One => 1,
        }
    }

    pub fn from_u8(bit: u8) -> Result<Self> {
        match bit {
            0 => Ok(EncodedBit::Zero),
            1 => Ok(EncodedBit::One),
            other => Err(Error::InvalidParameter(format!("bit must be 0 or 1, got {other}"))),
        }
    }

    /// Fair coin toss drawn from a caller-supplied generator; the library
    /// never owns entropy.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        if rng.gen::<f64>() < 0.5 {
            EncodedBit::Zero
        } else {
            EncodedBit::One
        }
    }
}

/// Bipartite pure state `sum_i sqrt(lambda_i) |i>|i>` in a `k^2`-dimensional
/// space, second factor least significant.
pub fn schmidt_state(spectrum: &SchmidtSpectrum) -> StateVector {
    let k = spectrum.k();
    let mut data = vec![Complex::new(0.0, 0.0); k * k];
    for (i, &lambda) in spectrum.lambdas().iter().enumerate() {
        data[i * k + i] = Complex::new(lambda.sqrt(), 0.0);
    }
    StateVector::new(data)
}

/// Bell encoding of a classical bit: 0 maps to `|phi+>` and 1 to `|phi->`.
pub fn bell_encode(bit: EncodedBit) -> StateVector {
    let a = std::f64::consts::FRAC_1_SQRT_2;
    let b = match bit {
        EncodedBit::Zero => a,
        EncodedBit::One => -a,
    };
    StateVector::from_real(&[a, 0.0, 0.0, b])
}

/// Concurrence of a two-mode Schmidt-form pure state, `2 sqrt(l1 l2)`.
pub fn concurrence_pure(spectrum: &SchmidtSpectrum) -> Result<f64> {
    if spectrum.k() != 2 {
        return Err(Error::InvalidParameter(format!(
            "pure-state concurrence is defined for k = 2, got k = {}",
            spectrum.k()
        )));
    }
    Ok(2.0 * (spectrum.lambdas()[0] * spectrum.lambdas()[1]).sqrt())
}

/// Best fit of a 4x4 state to the Werner family
/// `p |phi+><phi+| + (1 - p)/4 I`.
#[derive(Debug, Clone, PartialEq)]
pub struct WernerDecomposition {
    /// Fitted weight of the maximally entangled component.
    pub visibility: f64,
    /// Frobenius norm of the part left over after removing the fit.
    pub residual: f64,
}

impl WernerDecomposition {
    /// True when the fit is exact to within `tol`.
    pub fn is_werner(&self, tol: f64) -> bool {
        self.residual <= tol
    }
}

/// Projects a 4x4 state onto the Werner family.
///
/// The visibility comes from the overlap with `|phi+><phi+|`; a state in the
/// family leaves no residual, anything else reports how far off it is.
pub fn werner_decompose(m: &ComplexMatrix) -> WernerDecomposition {
    assert_eq!((m.rows(), m.cols()), (4, 4), "werner_decompose needs a 4x4 matrix");
    let phi = bell_encode(EncodedBit::Zero).projector();
    // Tr(m P) = p + (1 - p)/4 for a Werner state with visibility p.
    let overlap = m.matmul(&phi).trace().re;
    let visibility = (4.0 * overlap - 1.0) / 3.0;
    let fit = phi
        .scale(visibility)
        .add(&ComplexMatrix::identity(4).scale((1.0 - visibility) / 4.0));
    let residual = m.sub(&fit).frobenius_norm();
    WernerDecomposition { visibility, residual }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn spectrum_validation() {
        assert!(SchmidtSpectrum::new(vec![0.5, 0.5]).is_ok());
        assert!(SchmidtSpectrum::new(vec![]).is_err());
        assert!(SchmidtSpectrum::new(vec![0.5, 0.4]).is_err());
        assert!(SchmidtSpectrum::new(vec![1.5, -0.5]).is_err());
        assert!(SchmidtSpectrum::two_mode(1.2).is_err());
        assert_eq!(SchmidtSpectrum::uniform(3).unwrap().lambdas(), &[1.0 / 3.0; 3]);
    }

    #[test]
    fn schmidt_state_amplitudes() {
        // (3/4, 1/4) gives amplitudes (sqrt(3)/2, 0, 0, 1/2).
        let s = SchmidtSpectrum::two_mode(0.75).unwrap();
        let v = schmidt_state(&s);
        assert!((v.get(0).re - 3.0f64.sqrt() / 2.0).abs() < 1e-15);
        assert_eq!(v.get(1).re, 0.0);
        assert_eq!(v.get(2).re, 0.0);
        assert!((v.get(3).re - 0.5).abs() < 1e-15);
        assert!((v.norm() - 1.0).abs() < 1e-12);

        let u = schmidt_state(&SchmidtSpectrum::uniform(3).unwrap());
        assert_eq!(u.dim(), 9);
        for i in 0..3 {
            assert!((u.get(i * 3 + i).re - (1.0f64 / 3.0).sqrt()).abs() < 1e-15);
        }
    }

    #[test]
    fn bell_encoding_signs() {
        let a = std::f64::consts::FRAC_1_SQRT_2;
        let plus = bell_encode(EncodedBit::Zero);
        let minus = bell_encode(EncodedBit::One);
        assert!((plus.get(0).re - a).abs() < 1e-15);
        assert!((plus.get(3).re - a).abs() < 1e-15);
        assert!((minus.get(3).re + a).abs() < 1e-15);
        assert!(plus.inner(&minus).norm() < 1e-15, "Bell states are orthogonal");
    }

    #[test]
    fn bell_states_match_balanced_schmidt_form() {
        let balanced = schmidt_state(&SchmidtSpectrum::two_mode(0.5).unwrap());
        assert!(
            bell_encode(EncodedBit::Zero)
                .projector()
                .max_abs_diff(&balanced.projector())
                < 1e-15
        );
    }

    #[test]
    fn pure_concurrence_values() {
        let c = |l1: f64| concurrence_pure(&SchmidtSpectrum::two_mode(l1).unwrap()).unwrap();
        assert!((c(0.5) - 1.0).abs() < 1e-15);
        assert_eq!(c(1.0), 0.0);
        assert!((c(0.75) - 3.0f64.sqrt() / 2.0).abs() < 1e-15);
        assert!(concurrence_pure(&SchmidtSpectrum::uniform(3).unwrap()).is_err());
    }

    #[test]
    fn encoded_bit_round_trip_and_draw() {
        assert_eq!(EncodedBit::from_u8(0).unwrap().as_u8(), 0);
        assert_eq!(EncodedBit::from_u8(1).unwrap().as_u8(), 1);
        assert!(EncodedBit::from_u8(2).is_err());

        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let ones = (0..2000).filter(|_| EncodedBit::random(&mut rng) == EncodedBit::One).count();
        assert!((800..1200).contains(&ones), "coin badly biased: {ones}/2000");
    }

    #[test]
    fn werner_decomposition_recognises_family_members() {
        let phi = bell_encode(EncodedBit::Zero).projector();
        let fit = werner_decompose(&phi);
        assert!((fit.visibility - 1.0).abs() < 1e-12);
        assert!(fit.is_werner(1e-12));

        let mixed = ComplexMatrix::identity(4).scale(0.25);
        let fit = werner_decompose(&mixed);
        assert!(fit.visibility.abs() < 1e-12);
        assert!(fit.is_werner(1e-12));

        let p = 4.0 / 9.0;
        let member = phi.scale(p).add(&ComplexMatrix::identity(4).scale((1.0 - p) / 4.0));
        let fit = werner_decompose(&member);
        assert!((fit.visibility - p).abs() < 1e-12);
        assert!(fit.is_werner(1e-12));
    }

    #[test]
    fn werner_decomposition_rejects_outsiders() {
        // |phi-><phi-| overlaps phi+ like the identity does but is no Werner
        // state; the residual has to say so.
        let minus = bell_encode(EncodedBit::One).projector();
        let fit = werner_decompose(&minus);
        assert!(!fit.is_werner(1e-10));
        assert!(fit.residual > 0.1);
    }
}
