use num_complex::Complex64;
use rustfft::FftPlanner;

/// In-place forward DFT, X_k = Σ_j x_j e^{−2πijk/L}.
pub(crate) fn forward(buf: &mut [Complex64]) {
    FftPlanner::new().plan_fft_forward(buf.len()).process(buf);
}

/// In-place unnormalized inverse DFT, x_j = Σ_k X_k e^{+2πijk/L}.
pub(crate) fn inverse(buf: &mut [Complex64]) {
    FftPlanner::new().plan_fft_inverse(buf.len()).process(buf);
}
