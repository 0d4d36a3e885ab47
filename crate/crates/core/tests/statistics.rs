use mobius_lab::arith::sieve;
use mobius_lab::dynsys::{entropy_estimate, SequenceGenerator};
use mobius_lab::randmodel::{
    block_average, remainder_decomposition, sample, serial_correlation, union_bound_experiment, RandomMoebiusStream,
    UnionBoundConfig,
};
use mobius_lab::spectral::flatness;
use mobius_lab::Error;

#[test]
fn sample_has_no_serial_correlation() {
    let table = sieve(1_000_000).unwrap();
    let values = sample(7, &table, 1, 1_000_000).unwrap();
    let rho = serial_correlation(&values);
    // Independent signs on the squarefree support: mean of ~3.7e5 products, sd ≈ 1.6e-3.
    assert!(rho.abs() < 0.01, "serial correlation {rho}");
}

#[test]
fn sample_mean_over_seeds_vanishes() {
    let table = sieve(100_000).unwrap();
    let seeds = 100;
    let mut acc = vec![0i64; 100_000];
    for seed in 0..seeds {
        for (a, v) in acc.iter_mut().zip(sample(seed, &table, 1, 100_000).unwrap()) {
            *a += i64::from(v);
        }
    }
    let mean_abs: f64 = acc.iter().map(|&a| (a as f64 / seeds as f64).abs()).sum::<f64>() / acc.len() as f64;
    // E|mean of 100 signs| ≈ 0.08 on squarefree n, zero elsewhere.
    assert!(mean_abs < 0.06, "mean |average| {mean_abs}");
    let table_mu = sieve(10).unwrap();
    assert_eq!(sample(3, &table_mu, 4, 4).unwrap(), [0]);
}

#[test]
fn block_average_variance_matches_rademacher_model() {
    let table = sieve(20_000).unwrap();
    let g = SequenceGenerator::rotation(0.5_f64.sqrt()).unwrap().generate(1_000).unwrap();
    let m = 1_000;
    let second_moment: f64 = (0..1_000)
        .map(|seed| block_average(&g, &RandomMoebiusStream::new(seed, &table), 10_001, m).unwrap().value.norm_sqr())
        .sum::<f64>()
        / 1_000.0;
    // E|Y|² = (1/m²)·#{squarefree in the block} ≈ 0.608/m.
    let expected = 0.6079 / m as f64;
    assert!((second_moment / expected - 1.0).abs() < 0.15, "E|Y|² = {second_moment}, model {expected}");
}

#[test]
fn remainder_closes_the_decomposition() {
    let table = sieve(200_000).unwrap();
    let g = SequenceGenerator::ThueMorse.generate(120_000).unwrap();
    let stream = RandomMoebiusStream::new(11, &table);
    let d = remainder_decomposition(&g, &stream, 100_000, 500).unwrap();
    assert!((d.direct - d.block_averaged - d.remainder).norm() < 1e-12);
    assert!(d.remainder.norm() <= d.bound);
}

#[test]
fn union_bound_holds_for_thue_morse() {
    let table = sieve(20_000).unwrap();
    let cfg = UnionBoundConfig::new(10_000, 0.1, 200);
    let report = union_bound_experiment(&SequenceGenerator::ThueMorse, &table, &cfg).unwrap();
    assert!(report.passes);
    assert_eq!(report.exceedances, 0);
    assert!(report.bound < 1e-50);
    assert!(report.max_sup < 0.1, "largest window average {}", report.max_sup);
}

#[test]
fn union_bound_rejects_positive_entropy() {
    let table = sieve(2_000).unwrap();
    let cfg = UnionBoundConfig::new(100, 0.1, 10);
    let err = union_bound_experiment(&SequenceGenerator::RandomShift { seed: 1 }, &table, &cfg).unwrap_err();
    assert!(matches!(err, Error::PositiveEntropy(_)));
}

#[test]
fn zero_entropy_zoo_stays_within_budget() {
    let m = 256;
    let budget = (0.05 * m as f64).exp();
    // Quadratic Weyl is left out: its block complexity at 64 bins is polynomial
    // of high degree, so a 2^20 prefix is exhausted (every window distinct) long
    // before the e^{0.05m} budget becomes the binding constraint.
    let zoo = [
        SequenceGenerator::rotation(0.5_f64.sqrt()).unwrap(),
        SequenceGenerator::ThueMorse,
        SequenceGenerator::q_multiplicative(3, &[0.0, 0.25, 0.6]).unwrap(),
        SequenceGenerator::Constant,
    ];
    for system in zoo {
        let table = entropy_estimate(&system, 1 << 20, &[m], 64).unwrap();
        assert!((table.r[0] as f64) < budget, "{system}: r({m}) = {} ≥ {budget}", table.r[0]);
    }
}

#[test]
fn flatness_regression_at_1e5() {
    let table = sieve(100_000).unwrap();
    let f = flatness(&table, 100_000, 1 << 20).unwrap();
    assert!(f.l1_over_l2 > 0.0 && f.l1_over_l2 <= 1.0);
    assert!((f.l1_over_l2 - FLATNESS_L1_OVER_L2).abs() < 1e-9, "{}", f.l1_over_l2);
    assert!((f.flatness_integral - FLATNESS_INTEGRAL).abs() < 1e-9, "{}", f.flatness_integral);
}

// Frozen from the FFT evaluation on a 2^20 grid.
const FLATNESS_L1_OVER_L2: f64 = 0.887857711932929;
const FLATNESS_INTEGRAL: f64 = 0.7289413450144112;

#[test]
fn quadratic_weyl_growth_rate_falls() {
    let system = SequenceGenerator::quadratic_weyl(0.5_f64.sqrt()).unwrap();
    let table = entropy_estimate(&system, 1 << 20, &[2, 4, 8, 16, 32, 64, 128, 256], 64).unwrap();
    for w in table.log_r_over_m.windows(2) {
        assert!(w[1] < w[0]);
    }
}
