//! The atomic spectral measure of μ²: ring weights, Fourier coefficients and
//! the mass missing from a truncation at denominator d_max.

use mobius_lab::spectral::{mu_squared_spectrum, MirskyProducts, MuSquaredSpectrum};

fn main() -> mobius_lab::Result<()> {
    let cutoff = 100_000;
    let products = MirskyProducts::new(cutoff)?;
    for d_max in [10, 100, 1_000] {
        let s = mu_squared_spectrum(d_max, cutoff)?;
        println!(
            "d_max={d_max:>5}: {} rings, {} atoms, mass {:.6} of {:.6}, |ĝ(6) − prediction| = {:.1e}",
            s.rings.len(),
            s.atom_count(),
            s.total_mass(),
            products.coefficient(0),
            (s.fourier_coefficient(6) - products.coefficient(6)).abs()
        );
    }

    // Small truncations can be expanded into explicit rational atoms.
    let s = mu_squared_spectrum(6, cutoff)?;
    let measure = s.to_measure(1_000)?;
    for atom in measure.atoms().iter().take(8) {
        println!("  {}/{}  {:.6}", atom.position.num(), atom.position.den(), atom.weight);
    }
    let direct = MuSquaredSpectrum::fourier_coefficient_direct(&measure, 4);
    println!("ĝ(4) from atoms {:.6}, closed form {:.6}", direct.re, s.fourier_coefficient(4));
    Ok(())
}
