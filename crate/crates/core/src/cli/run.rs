use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::acceptance;
use crate::arith::{landau_sum, mertens, read_cache, sieve, squarefree_density, write_cache, SieveTable};
use crate::dynsys::{entropy_estimate, SequenceGenerator, DEFAULT_BINS};
use crate::error::{invalid, Result};
use crate::measures::{affinity, hellinger, CircleMeasure};
use crate::output::{fmt_f64, write_csv, write_gnuplot, write_json, Meta};
use crate::randmodel::{hoeffding_azuma_check, orthogonality_decay};
use crate::spectral::{
    autocorrelation, davenport_sup, flatness, mu_squared_correlations, mu_squared_spectrum, periodogram, to_complex,
    truncation_tail_bound, MirskyProducts, DEFAULT_PRIME_CUTOFF,
};

use super::{parse_f64_list, parse_power_grid, parse_progression, parse_u64_list, Command, Format, RunConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RunStatus {
    Success,
    /// A `report` suite ran and at least one criterion failed.
    AcceptanceFailed,
}

/// Tabular output written as CSV or JSON depending on the configured format.
struct Table {
    stem: String,
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(stem: &str, header: &[&'static str]) -> Self {
        Self { stem: stem.to_string(), header: header.to_vec(), rows: Vec::new() }
    }

    fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

struct Session<'a> {
    cfg: &'a RunConfig,
    meta: Meta,
}

impl Session<'_> {
    fn path(&self, name: &str) -> PathBuf {
        self.cfg.out_dir.join(name)
    }

    /// Writes the table and a gnuplot script for columns (x_col, y_col).
    fn emit(&mut self, table: &Table, plot: Option<(usize, usize, bool)>) -> Result<()> {
        let stem = match (&self.cfg.params.out, self.meta.outputs.is_empty()) {
            (Some(name), true) => Path::new(name).file_stem().and_then(|s| s.to_str()).unwrap_or(&table.stem).to_string(),
            _ => table.stem.clone(),
        };
        match self.cfg.format {
            Format::Csv => {
                let name = format!("{stem}.csv");
                write_csv(&self.path(&name), &table.header, &table.rows)?;
                self.meta.outputs.push(name.clone());
                if let Some((x, y, log)) = plot {
                    let gp = format!("{stem}.gp");
                    write_gnuplot(&self.path(&gp), &name, x, y, &stem, log)?;
                    self.meta.outputs.push(gp);
                }
            }
            Format::Json => {
                let records: Vec<Value> = table
                    .rows
                    .iter()
                    .map(|row| {
                        let obj: Map<String, Value> = table
                            .header
                            .iter()
                            .zip(row)
                            .map(|(h, v)| {
                                (h.to_string(), json_scalar(v))
                            })
                            .collect();
                        Value::Object(obj)
                    })
                    .collect();
                let name = format!("{stem}.json");
                write_json(&self.path(&name), &records)?;
                self.meta.outputs.push(name);
            }
        }
        Ok(())
    }
}

fn json_scalar(v: &str) -> Value {
    if let Ok(b) = v.parse::<bool>() {
        return Value::Bool(b);
    }
    if let Ok(i) = v.parse::<i64>() {
        return Value::from(i);
    }
    match v.parse::<f64>().ok().and_then(serde_json::Number::from_f64) {
        Some(num) => Value::Number(num),
        None => Value::String(v.to_string()),
    }
}

/// Loads the table from the cache directory when a matching file exists,
/// otherwise sieves and fills the cache.
fn load_table(cfg: &RunConfig, n_max: u64) -> Result<SieveTable> {
    let Some(dir) = &cfg.cache_dir else {
        return sieve(n_max);
    };
    fs::create_dir_all(dir)?;
    let path = dir.join(format!("mu_{n_max}.musv"));
    if path.exists() {
        return read_cache(&path);
    }
    let table = sieve(n_max)?;
    write_cache(&table, &path)?;
    Ok(table)
}

fn sequence_values(cfg: &RunConfig, name: &str, n: u64) -> Result<Vec<Complex64>> {
    match name {
        "mu" => Ok(to_complex(&load_table(cfg, n)?.mu_f64(n)?)),
        "mu2" => Ok(to_complex(&load_table(cfg, n)?.mu_squared_f64(n)?)),
        system => Ok(SequenceGenerator::from_name(system, cfg.params.seed.unwrap_or(0))?.values(1, n as usize)),
    }
}

pub fn run(cfg: &RunConfig) -> Result<RunStatus> {
    let start = Instant::now();
    fs::create_dir_all(&cfg.out_dir)?;
    let mut session = Session { cfg, meta: Meta::new(cfg.command.name(), serde_json::to_value(&cfg.params)?) };
    let p = &cfg.params;
    let mut status = RunStatus::Success;

    match cfg.command {
        Command::Sieve => {
            let n = p.n.ok_or_else(|| invalid("sieve needs --n"))?;
            let table = load_table(cfg, n)?;
            let mut xs: Vec<u64> = std::iter::successors(Some(10u64), |x| x.checked_mul(10)).take_while(|&x| x < n).collect();
            xs.insert(0, 1);
            xs.push(n);
            let mut t = Table::new("sums", &["x", "mertens", "landau", "squarefree_density"]);
            for x in xs {
                t.push(vec![
                    x.to_string(),
                    mertens(&table, x)?.to_string(),
                    fmt_f64(landau_sum(&table, x)?),
                    fmt_f64(squarefree_density(&table, x)?),
                ]);
            }
            session.emit(&t, Some((1, 4, true)))?;
        }
        Command::Corr => {
            let n = p.n.unwrap_or(1_000_000);
            let k_max = p.kmax.unwrap_or(16);
            let g = sequence_values(cfg, p.sequence.as_deref().unwrap_or("mu"), n)?;
            let corr = autocorrelation(&g, k_max)?;
            let mut t = Table::new("corr", &["k", "re", "im"]);
            for (k, z) in corr.f_hat.iter().enumerate() {
                t.push(vec![k.to_string(), fmt_f64(z.re), fmt_f64(z.im)]);
            }
            session.emit(&t, Some((1, 2, false)))?;
            session.meta.truncation_bounds = json!({ "max_boundary_slack": k_max as f64 / n as f64 });
        }
        Command::Mirsky => {
            let n = p.n.unwrap_or(1_000_000);
            let k_max = p.kmax.unwrap_or(16) as u64;
            let cutoff = p.prime_cutoff.unwrap_or(DEFAULT_PRIME_CUTOFF);
            let table = load_table(cfg, n + k_max)?;
            let corr = mu_squared_correlations(&table, n, k_max)?;
            let products = MirskyProducts::new(cutoff)?;
            let mut t = Table::new("corr", &["k", "re", "im", "predicted"]);
            for (k, z) in corr.f_hat.iter().enumerate() {
                t.push(vec![k.to_string(), fmt_f64(z.re), fmt_f64(z.im), fmt_f64(products.coefficient(k as u64))]);
            }
            session.emit(&t, Some((1, 2, false)))?;
            session.meta.truncation_bounds = json!({ "prime_product_tail": truncation_tail_bound(cutoff) });
        }
        Command::Spectrum => {
            if let Some(d_max) = p.d_max {
                let cutoff = p.prime_cutoff.unwrap_or(DEFAULT_PRIME_CUTOFF);
                let k_max = p.kmax.unwrap_or(16) as u64;
                let spectrum = mu_squared_spectrum(d_max, cutoff)?;
                let products = MirskyProducts::new(cutoff)?;
                let mut t = Table::new("fourier", &["k", "coefficient", "predicted"]);
                for k in 0..=k_max {
                    t.push(vec![k.to_string(), fmt_f64(spectrum.fourier_coefficient(k)), fmt_f64(products.coefficient(k))]);
                }
                session.emit(&t, Some((1, 2, false)))?;
                let mut rings = Table::new("rings", &["d", "count", "weight"]);
                for r in &spectrum.rings {
                    rings.push(vec![r.d.to_string(), r.count.to_string(), fmt_f64(r.weight)]);
                }
                session.emit(&rings, None)?;
                if spectrum.atom_count() <= 1_000_000 {
                    write_json(&session.path("measure.json"), &spectrum.to_measure(1_000_000)?)?;
                    session.meta.outputs.push("measure.json".into());
                }
                session.meta.truncation_bounds = json!({
                    "prime_product_tail": spectrum.truncation_tail_bound,
                    "total_mass": spectrum.total_mass(),
                    "mass_cap": products.coefficient(0),
                });
            } else {
                let n = p.n.unwrap_or(1 << 16);
                let grid = p.grid.unwrap_or((n as usize).next_power_of_two());
                let g = sequence_values(cfg, p.sequence.as_deref().unwrap_or("mu"), n)?;
                let pg = periodogram(&g, grid)?;
                let mut t = Table::new("spectrum", &["theta", "density"]);
                for (i, d) in pg.density.iter().enumerate() {
                    t.push(vec![fmt_f64(pg.theta(i)), fmt_f64(*d)]);
                }
                session.emit(&t, Some((1, 2, false)))?;
                session.meta.truncation_bounds = json!({ "mass": pg.mass() });
            }
        }
        Command::Affinity => {
            let read = |path: &Option<PathBuf>, flag: &str| -> Result<CircleMeasure> {
                let path = path.as_ref().ok_or_else(|| invalid(format!("affinity needs --{flag}")))?;
                Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
            };
            let a = read(&p.measure_a, "measure-a")?;
            let b = read(&p.measure_b, "measure-b")?;
            let mut t = Table::new("affinity", &["affinity", "hellinger"]);
            t.push(vec![fmt_f64(affinity(&a, &b)?), fmt_f64(hellinger(&a, &b)?)]);
            session.emit(&t, None)?;
        }
        Command::Flatness => {
            let n = p.n.unwrap_or(100_000);
            let grid = p.grid.unwrap_or((8 * n as usize).next_power_of_two());
            let table = load_table(cfg, n)?;
            let f = flatness(&table, n, grid)?;
            let mut t = Table::new("flatness", &["n", "grid", "l1_over_l2", "flatness_integral"]);
            t.push(vec![n.to_string(), grid.to_string(), fmt_f64(f.l1_over_l2), fmt_f64(f.flatness_integral)]);
            session.emit(&t, None)?;
        }
        Command::Davenport => {
            let xs = match &p.x {
                Some(s) => parse_u64_list(s)?,
                None => vec![1_000, 10_000, 100_000, 1_000_000],
            };
            let top = *xs.iter().max().ok_or_else(|| invalid("--x is empty"))?;
            let table = load_table(cfg, top)?;
            let mut t = Table::new("davenport", &["x", "grid", "sup_over_x"]);
            for x in xs {
                let grid = p.grid.unwrap_or((4 * x as usize).next_power_of_two());
                t.push(vec![x.to_string(), grid.to_string(), fmt_f64(davenport_sup(&table, x, grid)?)]);
            }
            session.emit(&t, Some((1, 3, true)))?;
        }
        Command::Entropy => {
            let system = SequenceGenerator::from_name(p.system.as_deref().unwrap_or("thue_morse"), p.seed.unwrap_or(0))?;
            let n = p.n.unwrap_or(1 << 22) as usize;
            let m_list: Vec<usize> = match &p.m {
                Some(s) => parse_progression(s)?.into_iter().map(|m| m as usize).collect(),
                None => vec![8, 16, 32, 64, 128, 256],
            };
            let table = entropy_estimate(&system, n, &m_list, p.bins.unwrap_or(DEFAULT_BINS))?;
            let mut t = Table::new("entropy", &["m", "r", "log_r_over_m"]);
            for ((m, r), l) in table.m_list.iter().zip(&table.r).zip(&table.log_r_over_m) {
                t.push(vec![m.to_string(), r.to_string(), fmt_f64(*l)]);
            }
            session.emit(&t, Some((1, 3, false)))?;
            session.meta.truncation_bounds = json!({ "slope_estimate": table.slope_estimate, "alphabet": table.alphabet });
        }
        Command::Simulate => {
            let system = SequenceGenerator::from_name(p.system.as_deref().unwrap_or("thue_morse"), p.seed.unwrap_or(0))?;
            let seeds = parse_u64_list(p.seeds.as_deref().unwrap_or("0..49"))?;
            let grid = parse_power_grid(p.ngrid.as_deref().unwrap_or("10:22"))?;
            let top = *grid.last().ok_or_else(|| invalid("--ngrid is empty"))?;
            let table = load_table(cfg, top)?;
            let report = orthogonality_decay(&system, &table, &seeds, &grid)?;
            let mut t = Table::new("decay", &["seed", "N", "S_N"]);
            for s in &report.seeds {
                for (n, v) in grid.iter().zip(&s.s_n) {
                    t.push(vec![s.seed.to_string(), n.to_string(), fmt_f64(*v)]);
                }
            }
            session.emit(&t, Some((2, 3, true)))?;
            let mut slopes = Table::new("slopes", &["seed", "slope"]);
            for s in &report.seeds {
                slopes.push(vec![s.seed.to_string(), s.slope.map(fmt_f64).unwrap_or_default()]);
            }
            session.emit(&slopes, None)?;
            session.meta.truncation_bounds = json!({
                "mean_slope": report.mean_slope,
                "excluded_seeds": report.excluded,
                "zero_points": report.excluded_points,
            });
        }
        Command::Concentration => {
            let m = p.m.as_deref().unwrap_or("1000").parse::<usize>().map_err(|_| invalid("--m must be an integer"))?;
            if m == 0 {
                return Err(invalid("--m must be positive"));
            }
            let units = parse_f64_list(p.t.as_deref().unwrap_or("1,2,3"))?;
            let t_list: Vec<f64> = units.iter().map(|u| u * (m as f64).sqrt()).collect();
            let report = hoeffding_azuma_check(&vec![1.0; m], &t_list, p.trials.unwrap_or(100_000), p.seed.unwrap_or(0))?;
            let mut t = Table::new("concentration", &["t", "empirical", "bound", "mc_slack", "pass"]);
            for r in &report.rows {
                t.push(vec![fmt_f64(r.t), fmt_f64(r.empirical), fmt_f64(r.bound), fmt_f64(r.mc_slack), r.pass.to_string()]);
            }
            session.emit(&t, Some((1, 2, false)))?;
            if !report.passes {
                status = RunStatus::AcceptanceFailed;
            }
        }
        Command::Report => {
            let suite = p.suite.as_deref().unwrap_or("acceptance");
            if suite != "acceptance" {
                return Err(invalid(format!("unknown suite {suite:?}")));
            }
            let ctx = acceptance::Context::new()?;
            let outcomes = acceptance::run_all(&ctx);
            let mut t = Table::new("report", &["criterion", "name", "passed", "detail", "seconds"]);
            for o in &outcomes {
                println!("{}", o.line());
                t.push(vec![o.id.to_string(), o.name.to_string(), o.passed.to_string(), o.detail.clone(), format!("{:.3}", o.seconds)]);
            }
            session.emit(&t, None)?;
            if outcomes.iter().any(|o| !o.passed) {
                status = RunStatus::AcceptanceFailed;
            }
        }
    }

    session.meta.wall_time_s = start.elapsed().as_secs_f64();
    write_json(&session.path("meta.json"), &session.meta)?;
    Ok(status)
}
