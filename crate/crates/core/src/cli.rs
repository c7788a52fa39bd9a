//! `bipol` command line: scenario resolution, sweeps and CSV bundles.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use crate::analysis::{analyze, component_weights, BandEdges, SpectrumResult};
use crate::blockade::{exciton_amplitude_k, exciton_state};
use crate::bound_states::{detect_gap_states, find_bipolariton_with, gap_splitting, Window};
use crate::error::{Error, Result};
use crate::hamiltonian::{solve_fixed_k, TwoExcitationState};
use crate::io::{Cell, CsvTable, Emit, Scenario, SweepPoint};
use crate::model::{derive_params, Params, PotentialKind, Species};
use crate::oracle;
use crate::virtual_basis::{effective_wavevector_matching, lambda_coupling, theta_hat};

pub const THREADS_ENV: &str = "BIPOL_THREADS";

#[derive(Debug, Parser)]
#[command(name = "bipol", version, about = "Two-polariton spectra with blockade and dipolar interactions")]
pub struct Cli {
    #[command(flatten)]
    pub overrides: Overrides,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Default, Args)]
pub struct Overrides {
    /// Scenario file (JSON).
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true)]
    pub ell: Option<usize>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub delta: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub d_strength: Option<f64>,
    #[arg(long, global = true, value_parser = ["none", "nna", "vdw"])]
    pub potential: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub k_index: Option<i64>,
    /// Worker threads; falls back to BIPOL_THREADS.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Single-particle and polariton dispersions.
    Dispersion,
    /// Classified fixed-K spectrum.
    Spectrum,
    /// Amplitude profiles of one eigenstate.
    Amplitudes {
        #[arg(long)]
        state: Option<usize>,
    },
    /// ΔA of the LL states over the sweep axes.
    BunchingScan,
    /// Bound states below the LL band (or in `options.window`).
    BoundSearch,
    /// States in the LL/LU gap.
    GapScan,
    /// Cross-checks between independent solvers.
    OracleCheck,
    /// Data bundle behind one of the six figures.
    Reproduce {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=6))]
        figure: u8,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Dispersion => "dispersion",
            Command::Spectrum => "spectrum",
            Command::Amplitudes { .. } => "amplitudes",
            Command::BunchingScan => "bunching-scan",
            Command::BoundSearch => "bound-search",
            Command::GapScan => "gap-scan",
            Command::OracleCheck => "oracle-check",
            Command::Reproduce { .. } => "reproduce",
        }
    }
}

/// Parse, run and map the outcome to a process exit code: 0 on success,
/// 1 on a failed run (diagnostics written), 2 on a usage error.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok(report) => {
            for f in &report.written {
                println!("{}", f.display());
            }
            if report.failures.is_empty() {
                0
            } else {
                eprintln!("{} point(s) failed; see diagnostics.txt", report.failures.len());
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            if let Some(out) = cli.overrides.out.as_deref() {
                let _ = write_diagnostics(out, cli.command.name(), &[e.to_string()]);
            }
            1
        }
    }
}

#[derive(Debug, Default)]
pub struct RunReport {
    pub written: Vec<PathBuf>,
    pub failures: Vec<String>,
}

fn write_diagnostics(out: &Path, command: &str, lines: &[String]) -> Result<PathBuf> {
    fs::create_dir_all(out)?;
    let path = out.join("diagnostics.txt");
    let mut s = format!("command: {command}\n");
    for l in lines {
        s.push_str(l);
        s.push('\n');
    }
    fs::write(&path, s)?;
    Ok(path)
}

/// Scenario from `--config` (or defaults) with the flag overrides applied.
pub fn resolve_scenario(o: &Overrides) -> Result<Scenario> {
    let mut sc = match &o.config {
        Some(p) => Scenario::load(p)?,
        None => Scenario::default(),
    };
    let c = &mut sc.params;
    if o.n.is_some() {
        c.n_sites = o.n;
    }
    if o.ell.is_some() {
        c.blockade_cells = o.ell;
    }
    if o.delta.is_some() {
        c.detuning = o.delta;
    }
    if o.d_strength.is_some() {
        c.d_strength = o.d_strength;
    }
    if let Some(k) = &o.potential {
        c.potential_kind = Some(k.parse()?);
    }
    if o.k_index.is_some() {
        c.k_total_index = o.k_index;
    }
    if o.out.is_some() {
        sc.output_dir = o.out.clone();
    }
    sc.validate()?;
    Ok(sc)
}

pub fn thread_count(flag: Option<usize>) -> Result<Option<usize>> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::config("threads", format!("{THREADS_ENV}='{v}' is not a count"))),
        _ => Ok(None),
    }
}

pub fn execute(cli: &Cli) -> Result<RunReport> {
    let sc = resolve_scenario(&cli.overrides)?;
    let threads = thread_count(cli.overrides.threads)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| Error::Numeric(format!("thread pool: {e}")))?;
    let mut run = Runner::new(sc);
    pool.install(|| run.dispatch(&cli.command))?;
    if !run.report.failures.is_empty() {
        let path = write_diagnostics(&run.out, cli.command.name(), &run.report.failures)?;
        run.report.written.push(path);
    }
    Ok(run.report)
}

struct Runner {
    sc: Scenario,
    out: PathBuf,
    report: RunReport,
}

fn sweep_cells(pt: &SweepPoint) -> Vec<Cell> {
    pt.coords
        .iter()
        .map(|(name, v)| match name.as_str() {
            "n_sites" | "blockade_cells" | "exclusion_halfwidth" | "k_total_index" => Cell::Int(*v as i64),
            _ => Cell::Float(*v),
        })
        .collect()
}

fn with_prefix(prefix: &[String], cols: &[&str]) -> Vec<String> {
    prefix.iter().cloned().chain(cols.iter().map(|s| s.to_string())).collect()
}

impl Runner {
    fn new(sc: Scenario) -> Self {
        let out = sc.output_dir.clone().unwrap_or_else(|| PathBuf::from("."));
        Runner { sc, out, report: RunReport::default() }
    }

    fn emit(&mut self, name: &str, table: &CsvTable) -> Result<()> {
        let path = self.out.join(format!("{name}.csv"));
        table.write(&path)?;
        self.report.written.push(path);
        if self.sc.emit.contains(&Emit::Json) {
            let path = self.out.join(format!("{name}.json"));
            fs::write(&path, serde_json::to_string_pretty(&table.to_json())?)?;
            self.report.written.push(path);
        }
        Ok(())
    }

    fn base(&self) -> Result<Params> {
        derive_params(&self.sc.params)
    }

    fn k_indices(&self, p: &Params) -> Vec<i64> {
        self.sc.options.k_indices.clone().unwrap_or_else(|| vec![p.k_total_index])
    }

    /// Evaluate `f` on every sweep point in parallel. Failed points are
    /// logged and dropped; the rest are merged in sweep order.
    fn sweep<T: Send>(&mut self, f: impl Fn(&Params) -> Result<T> + Sync) -> Result<Vec<(SweepPoint, T)>> {
        let points = self.sc.sweep_points()?;
        let results: Vec<Result<T>> = points.par_iter().map(|pt| derive_params(&pt.config).and_then(|p| f(&p))).collect();
        let mut ok = Vec::new();
        for (pt, r) in points.into_iter().zip(results) {
            match r {
                Ok(v) => ok.push((pt, v)),
                Err(e) => {
                    let at: Vec<String> = pt.coords.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    self.report.failures.push(format!("point [{}]: {e}", at.join(", ")));
                }
            }
        }
        Ok(ok)
    }

    fn sweep_header(&self) -> Vec<String> {
        self.sc.sweep.iter().map(|a| a.parameter.clone()).collect()
    }

    fn dispatch(&mut self, cmd: &Command) -> Result<()> {
        match cmd {
            Command::Dispersion => {
                let t = dispersion_table(&self.base()?);
                self.emit("dispersion", &t)
            }
            Command::Spectrum => self.spectrum(),
            Command::Amplitudes { state } => {
                let j = state
                    .or(self.sc.options.state)
                    .ok_or_else(|| Error::config("state", "amplitudes needs --state or options.state"))?;
                let sol = solve_fixed_k(&self.base()?)?;
                if j >= sol.len() {
                    return Err(Error::config("state", format!("index {j} out of range (dim {})", sol.len())));
                }
                let st = sol.state(j);
                self.emit(&format!("amplitudes_{j}"), &amplitude_table(&st))?;
                self.emit(&format!("kspace_{j}"), &kspace_table(&st))
            }
            Command::BunchingScan => self.bunching_scan(),
            Command::BoundSearch => self.bound_search(),
            Command::GapScan => self.gap_scan(),
            Command::OracleCheck => self.oracle_check(),
            Command::Reproduce { figure } => self.reproduce(*figure),
        }
    }

    fn spectrum(&mut self) -> Result<()> {
        let ks = self.k_indices(&self.base()?);
        let rows = self.sweep(|p| ks.iter().map(|&k| analyze(&p.at_k(k))).collect::<Result<Vec<_>>>())?;
        let mut t = CsvTable {
            header: with_prefix(&self.sweep_header(), &SPECTRUM_COLS),
            rows: Vec::new(),
        };
        for (pt, results) in rows {
            for r in results {
                for row in spectrum_rows(&r) {
                    t.push(sweep_cells(&pt).into_iter().chain(row).collect());
                }
            }
        }
        self.emit("spectrum", &t)
    }

    fn bunching_scan(&mut self) -> Result<()> {
        let ks = self.k_indices(&self.base()?);
        let rows = self.sweep(|p| ks.iter().map(|&k| analyze(&p.at_k(k))).collect::<Result<Vec<_>>>())?;
        let mut t = CsvTable { header: with_prefix(&self.sweep_header(), &DELTA_A_COLS), rows: Vec::new() };
        for (pt, results) in rows {
            for r in results {
                for row in delta_a_rows(&r) {
                    t.push(sweep_cells(&pt).into_iter().chain(row).collect());
                }
            }
        }
        self.emit("delta_a", &t)
    }

    fn bound_search(&mut self) -> Result<()> {
        let ks = self.k_indices(&self.base()?);
        let window = match self.sc.options.window {
            Some([a, b]) => Window::Range(a, b),
            None => Window::BelowLl,
        };
        let rows = self.sweep(|p| {
            ks.iter()
                .map(|&k| {
                    let q = p.at_k(k);
                    let sol = solve_fixed_k(&q)?;
                    Ok((q.clone(), find_bipolariton_with(&q, window, &sol)?))
                })
                .collect::<Result<Vec<_>>>()
        })?;
        let prefix = self.sweep_header();
        let mut t = CsvTable { header: with_prefix(&prefix, &BOUND_COLS), rows: Vec::new() };
        let mut x = CsvTable { header: with_prefix(&prefix, &["K", "D", "ell", "exact_root"]), rows: Vec::new() };
        for (pt, reps) in rows {
            for (q, rep) in reps {
                let head = || -> Vec<Cell> {
                    sweep_cells(&pt)
                        .into_iter()
                        .chain([q.k_total().into(), rep.d_strength.into(), rep.ell.into()])
                        .collect()
                };
                for s in &rep.states {
                    let mut row = head();
                    row.extend([
                        s.root_energy.into(),
                        s.eig_energy.into(),
                        s.match_residual.into(),
                        rep.regime.to_string().into(),
                        Cell::from(if s.matched { "true" } else { "false" }),
                        s.location.to_string().into(),
                        s.delta_a.into(),
                        s.flag.to_string().into(),
                    ]);
                    t.push(row);
                }
                for &r in &rep.exact_roots {
                    let mut row = head();
                    row.push(r.into());
                    x.push(row);
                }
            }
        }
        self.emit("bound", &t)?;
        self.emit("bound_exact", &x)
    }

    fn gap_scan(&mut self) -> Result<()> {
        let ks = self.k_indices(&self.base()?);
        let rows = self.sweep(|p| {
            ks.iter()
                .map(|&k| {
                    let q = p.at_k(k);
                    let sol = solve_fixed_k(&q)?;
                    Ok((q, detect_gap_states(&sol)))
                })
                .collect::<Result<Vec<_>>>()
        })?;
        let prefix = self.sweep_header();
        let mut t = CsvTable { header: with_prefix(&prefix, &GAP_COLS), rows: Vec::new() };
        let mut s = CsvTable { header: with_prefix(&prefix, &GAP_SUMMARY_COLS), rows: Vec::new() };
        for (pt, per_k) in rows {
            for (q, gs) in per_k {
                let head: Vec<Cell> = sweep_cells(&pt)
                    .into_iter()
                    .chain([q.k_total().into(), q.detuning.into(), q.d_strength.into(), q.blockade_cells.into()])
                    .collect();
                for g in &gs {
                    let mut row = head.clone();
                    row.extend([
                        g.index.into(),
                        g.energy.into(),
                        g.splitting.into(),
                        g.delta_a.into(),
                        g.flag.to_string().into(),
                        Cell::from(if g.kinematic { "true" } else { "false" }),
                    ]);
                    t.push(row);
                }
                let mut row = head;
                row.extend([BandEdges::new(&q).gap().into(), gs.len().into(), gap_splitting(&gs).into()]);
                s.push(row);
            }
        }
        self.emit("gap", &t)?;
        self.emit("gap_summary", &s)
    }

    fn oracle_check(&mut self) -> Result<()> {
        let checks = oracle::run_all()?;
        let mut t = CsvTable::new(&["check", "case", "residual", "tolerance", "pass"]);
        for c in &checks {
            t.push(vec![
                c.name.clone().into(),
                c.case.clone().into(),
                c.residual.into(),
                c.tolerance.into(),
                Cell::from(if c.pass { "true" } else { "false" }),
            ]);
            if !c.pass {
                self.report.failures.push(format!("oracle {} [{}]: residual {:e} > {:e}", c.name, c.case, c.residual, c.tolerance));
            }
        }
        self.emit("oracle", &t)?;
        let all = checks.iter().all(|c| c.pass);
        let path = self.out.join("oracle.json");
        let doc = serde_json::json!({ "schema": crate::io::SCHEMA, "pass": all, "checks": checks });
        fs::write(&path, serde_json::to_string_pretty(&doc)?)?;
        self.report.written.push(path);
        Ok(())
    }

    fn reproduce(&mut self, figure: u8) -> Result<()> {
        let base = self.base()?;
        for (name, table) in figure_bundle(figure, &base)? {
            self.emit(name, &table)?;
        }
        Ok(())
    }
}

const SPECTRUM_COLS: [&str; 9] = ["state_index", "K", "energy", "band_class", "w_AA", "w_AB", "w_CC", "delta_A", "flag"];
const DELTA_A_COLS: [&str; 7] = ["ell", "K", "state_index", "energy", "band_class", "delta_A", "flag"];
const BOUND_COLS: [&str; 11] = [
    "K",
    "D",
    "ell",
    "root_energy",
    "eig_energy",
    "match_residual",
    "regime",
    "matched",
    "location",
    "delta_A",
    "flag",
];
const GAP_COLS: [&str; 10] = ["K", "delta", "D", "ell", "state_index", "energy", "splitting", "delta_A", "flag", "kinematic"];
const GAP_SUMMARY_COLS: [&str; 7] = ["K", "delta", "D", "ell", "gap_width", "n_gap_states", "splitting"];

pub fn dispersion_table(p: &Params) -> CsvTable {
    let mut t = CsvTable::new(&["k_index", "k", "E_p", "E_e", "E_L", "E_U"]);
    for nu in p.nu_range() {
        let k = p.k_of(nu as f64);
        let (l, u) = p.branches(k);
        t.push(vec![nu.into(), k.into(), p.photon_energy(k).into(), p.exciton_energy(k).into(), l.into(), u.into()]);
    }
    t
}

pub fn spectrum_rows(r: &SpectrumResult) -> Vec<Vec<Cell>> {
    let kt = r.solution.params.k_total();
    r.states
        .iter()
        .map(|s| {
            vec![
                s.index.into(),
                kt.into(),
                s.energy.into(),
                s.class.to_string().into(),
                s.w_aa.into(),
                s.w_ab.into(),
                s.w_cc.into(),
                s.delta_a.into(),
                s.flag.to_string().into(),
            ]
        })
        .collect()
}

pub fn delta_a_rows(r: &SpectrumResult) -> Vec<Vec<Cell>> {
    let p = &r.solution.params;
    r.ll_states()
        .into_iter()
        .map(|s| {
            vec![
                p.blockade_cells.into(),
                p.k_total().into(),
                s.index.into(),
                s.energy.into(),
                s.class.to_string().into(),
                s.delta_a.into(),
                s.flag.to_string().into(),
            ]
        })
        .collect()
}

pub fn amplitude_table(st: &TwoExcitationState) -> CsvTable {
    let mut t = CsvTable::new(&["n", "A_re", "A_im", "BS_re", "BS_im", "BA_re", "BA_im", "C_re", "C_im"]);
    for i in 0..st.n.len() {
        t.push(vec![
            st.n[i].into(),
            st.a[i].re.into(),
            st.a[i].im.into(),
            st.b_s[i].re.into(),
            st.b_s[i].im.into(),
            st.b_a[i].re.into(),
            st.b_a[i].im.into(),
            st.c[i].re.into(),
            st.c[i].im.into(),
        ]);
    }
    t
}

pub fn kspace_table(st: &TwoExcitationState) -> CsvTable {
    let mut t = CsvTable::new(&["k", "A_re", "A_im", "B_re", "B_im", "C_re", "C_im"]);
    for i in 0..st.k.len() {
        t.push(vec![
            st.k[i].into(),
            st.a_k[i].re.into(),
            st.a_k[i].im.into(),
            st.b_k[i].re.into(),
            st.b_k[i].im.into(),
            st.c_k[i].re.into(),
            st.c_k[i].im.into(),
        ]);
    }
    t
}

fn with(p: &Params, f: impl FnOnce(&mut Params)) -> Result<Params> {
    let mut q = p.clone();
    f(&mut q);
    q.validate()?;
    Ok(q)
}

/// Named CSV tables behind figure `figure`, built on top of `base`.
pub fn figure_bundle(figure: u8, base: &Params) -> Result<Vec<(&'static str, CsvTable)>> {
    match figure {
        1 => figure1(base),
        2 => figure2(base),
        3 => figure3(base),
        4 => figure4(base),
        5 => figure5(base),
        6 => figure6(base),
        f => Err(Error::config("figure", format!("no figure {f}"))),
    }
}

fn figure1(base: &Params) -> Result<Vec<(&'static str, CsvTable)>> {
    let p0 = base.at_k(0);
    let mut k0 = CsvTable::new(&["k_index", "k", "E_LL", "E_LU", "E_UL", "E_UU"]);
    for nu in p0.nu_range() {
        let k = p0.k_of(nu as f64);
        let e = |a, b| p0.pair_energy(a, b, 0.0, k);
        k0.push(vec![
            nu.into(),
            k.into(),
            e(Species::Lower, Species::Lower).into(),
            e(Species::Lower, Species::Upper).into(),
            e(Species::Upper, Species::Lower).into(),
            e(Species::Upper, Species::Upper).into(),
        ]);
    }
    let mut bands = CsvTable::new(&["K_index", "K", "LL_min", "LL_max", "LU_min", "LU_max", "UU_min", "UU_max"]);
    for nu in base.nu_range() {
        let q = base.at_k(nu);
        let b = BandEdges::new(&q);
        bands.push(vec![
            nu.into(),
            q.k_total().into(),
            b.ll.0.into(),
            b.ll.1.into(),
            b.lu.0.into(),
            b.lu.1.into(),
            b.uu.0.into(),
            b.uu.1.into(),
        ]);
    }
    Ok(vec![("dispersion", dispersion_table(base)), ("bands_k0", k0), ("bands_vs_K", bands)])
}

fn figure2(base: &Params) -> Result<Vec<(&'static str, CsvTable)>> {
    let mut states = CsvTable::new(&["ell", "label", "state_index", "energy", "delta_A", "flag"]);
    let mut amps = CsvTable::new(&["ell", "label", "n", "dA_re", "dA_im", "dB_re", "dB_im", "dC_re", "dC_im"]);
    let mut ks = CsvTable::new(&["ell", "label", "k", "abs_A", "abs_B", "abs_C"]);
    let results: Vec<SpectrumResult> = [0usize, 10]
        .par_iter()
        .map(|&ell| {
            let p = with(base, |q| {
                q.blockade_cells = ell;
                q.k_total_index = 0;
                q.d_strength = 0.0;
            })?;
            analyze(&p)
        })
        .collect::<Result<_>>()?;
    for r in &results {
        let ell = r.solution.params.blockade_cells;
        let Some(reps) = r.representative_ll_states() else { continue };
        for (label, s) in ["low", "mid", "top"].into_iter().zip(reps) {
            states.push(vec![ell.into(), label.into(), s.index.into(), s.energy.into(), s.delta_a.into(), s.flag.to_string().into()]);
            let st = r.solution.state(s.index);
            let (da, db, dc) =
                (TwoExcitationState::centered(&st.a), TwoExcitationState::centered(&st.b()), TwoExcitationState::centered(&st.c));
            for i in 0..st.n.len() {
                amps.push(vec![
                    ell.into(),
                    label.into(),
                    st.n[i].into(),
                    da[i].re.into(),
                    da[i].im.into(),
                    db[i].re.into(),
                    db[i].im.into(),
                    dc[i].re.into(),
                    dc[i].im.into(),
                ]);
            }
            for i in 0..st.k.len() {
                ks.push(vec![
                    ell.into(),
                    label.into(),
                    st.k[i].into(),
                    st.a_k[i].norm().into(),
                    st.b_k[i].norm().into(),
                    st.c_k[i].norm().into(),
                ]);
            }
        }
    }
    Ok(vec![("states", states), ("amplitudes", amps), ("kspace", ks)])
}

fn figure3(base: &Params) -> Result<Vec<(&'static str, CsvTable)>> {
    let p0 = base.at_k(0);
    let mut w = CsvTable::new(&["k_index", "k", "A0_sq", "B0_sq", "C0_sq"]);
    for nu in p0.nu_range() {
        let k = p0.k_of(nu as f64);
        let (a, b, c) = component_weights(&p0, k)?;
        w.push(vec![nu.into(), k.into(), a.into(), b.into(), c.into()]);
    }
    let p10 = with(&p0, |q| q.blockade_cells = 10)?;
    let mu = p10.n_sites as f64 / 4.0 - 0.5;
    let ex = exciton_state(mu, &p10);
    let mut prof = CsvTable::new(&["n", "g"]);
    for (n, g) in crate::blockade::separations(p10.n_sites).into_iter().zip(&ex.amplitude) {
        prof.push(vec![n.into(), (*g).into()]);
    }
    let mut exk = CsvTable::new(&["k_index", "k", "amplitude", "Lambda"]);
    for (nu, amp) in p10.nu_range().zip(exciton_amplitude_k(mu, &p10)) {
        exk.push(vec![nu.into(), p10.k_of(nu as f64).into(), amp.into(), lambda_coupling(nu, mu, &p10).into()]);
    }
    let mut th = CsvTable::new(&["k_index", "k", "theta_hat"]);
    for nu in p10.nu_range() {
        let k = p10.k_of(nu as f64);
        th.push(vec![nu.into(), k.into(), theta_hat(k, &p10).into()]);
    }
    let pk = with(&p0, |q| {
        q.n_sites = 40;
        q.blockade_cells = 4;
        q.d_strength = 0.0;
    })?;
    let mut ke = CsvTable::new(&["rho", "k_eff", "energy", "E_LL_at_k_eff"]);
    for (i, (k, e, a)) in effective_wavevector_matching(&pk)?.into_iter().enumerate() {
        ke.push(vec![(i + 1).into(), k.into(), e.into(), a.into()]);
    }
    Ok(vec![("weights", w), ("exciton_profile", prof), ("exciton_kspace", exk), ("theta_hat", th), ("keff", ke)])
}

fn figure4(base: &Params) -> Result<Vec<(&'static str, CsvTable)>> {
    let results: Vec<SpectrumResult> = [0usize, 3, 10]
        .par_iter()
        .map(|&ell| {
            analyze(&with(base, |q| {
                q.blockade_cells = ell;
                q.k_total_index = 0;
                q.d_strength = 0.0;
            })?)
        })
        .collect::<Result<_>>()?;
    let mut t = CsvTable::new(&DELTA_A_COLS);
    let mut win = CsvTable::new(&["ell", "window_lo", "window_hi", "width"]);
    for r in &results {
        delta_a_rows(r).into_iter().for_each(|row| t.push(row));
        if let Some((lo, hi)) = r.bunching_window() {
            win.push(vec![r.solution.params.blockade_cells.into(), lo.into(), hi.into(), (hi - lo).into()]);
        }
    }
    Ok(vec![("delta_a", t), ("bunching_window", win)])
}

fn figure5(base: &Params) -> Result<Vec<(&'static str, CsvTable)>> {
    let nna = |d: f64, k: i64| {
        with(base, |q| {
            q.blockade_cells = 0;
            q.potential_kind = PotentialKind::Nna;
            q.d_strength = d;
            q.k_total_index = k;
        })
    };
    let ds: Vec<f64> = (2..=32).map(|j| -0.25 * j as f64).collect();
    let reports = ds
        .par_iter()
        .map(|&d| {
            let p = nna(d, 0)?;
            let sol = solve_fixed_k(&p)?;
            Ok((p.clone(), find_bipolariton_with(&p, Window::BelowLl, &sol)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut t = CsvTable::new(&["D", "root_energy", "eig_energy", "match_residual", "asymptote", "LL_min", "regime"]);
    for (p, rep) in &reports {
        let ll_min = BandEdges::new(p).ll.0;
        for s in &rep.states {
            t.push(vec![
                p.d_strength.into(),
                s.root_energy.into(),
                s.eig_energy.into(),
                s.match_residual.into(),
                (2.0 * p.e0 - p.d_strength.abs()).into(),
                ll_min.into(),
                rep.regime.to_string().into(),
            ]);
        }
    }
    let p = nna(-2.5, 0)?;
    let sol = solve_fixed_k(&p)?;
    let mut prof = CsvTable::new(&["n", "abs_A", "abs_C"]);
    let st = sol.state(0);
    for i in 0..st.n.len() {
        prof.push(vec![st.n[i].into(), st.a[i].norm().into(), st.c[i].norm().into()]);
    }
    let half = base.n_sites as i64 / 2;
    let lowest = (0..=half)
        .into_par_iter()
        .map(|nu| {
            let q = nna(-2.5, nu)?;
            let e = crate::hamiltonian::eigenvalues_fixed_k(&q)?[0];
            Ok((nu, q.k_total(), BandEdges::new(&q).ll.0, e))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut vk = CsvTable::new(&["K_index", "K", "LL_min", "lowest_energy"]);
    for (nu, k, ll, e) in lowest {
        vk.push(vec![nu.into(), k.into(), ll.into(), e.into()]);
    }
    Ok(vec![("bound_vs_D", t), ("bound_profile", prof), ("bound_vs_K", vk)])
}

fn figure6(base: &Params) -> Result<Vec<(&'static str, CsvTable)>> {
    let mk = |ell: usize, delta: f64, kind: PotentialKind, d: f64| {
        with(base, |q| {
            q.blockade_cells = ell;
            q.detuning = delta;
            q.potential_kind = kind;
            q.d_strength = d;
            q.k_total_index = 0;
        })
    };
    let p = mk(0, 0.5, PotentialKind::Vdw, 0.5)?;
    let sol = solve_fixed_k(&p)?;
    let gs = detect_gap_states(&sol);
    let mut rep = CsvTable::new(&["state_index", "energy", "splitting", "delta_A", "flag"]);
    let mut prof = CsvTable::new(&["state_index", "n", "abs_A"]);
    for g in &gs {
        rep.push(vec![g.index.into(), g.energy.into(), g.splitting.into(), g.delta_a.into(), g.flag.to_string().into()]);
        for (n, a) in sol.state(g.index).n.iter().zip(&g.photon_profile) {
            prof.push(vec![g.index.into(), (*n).into(), (*a).into()]);
        }
    }
    let cases: Vec<(usize, f64)> = (0..=4usize)
        .map(|l| (l, 0.1))
        .chain([0usize, 3].iter().flat_map(|&l| (1..=15).map(move |j| (l, 0.1 * j as f64))))
        .collect();
    let rows = cases
        .par_iter()
        .map(|&(ell, delta)| {
            let q = mk(ell, delta, PotentialKind::None, 0.0)?;
            let g = detect_gap_states(&solve_fixed_k(&q)?);
            Ok((q, g))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut kin = CsvTable::new(&["ell", "gap_width", "n_gap_states", "splitting"]);
    let mut det = CsvTable::new(&["ell", "delta", "gap_width", "n_gap_states", "splitting", "delta_A"]);
    for (i, (q, g)) in rows.iter().enumerate() {
        let gap = BandEdges::new(q).gap();
        let split = gap_splitting(g);
        if i < 5 {
            kin.push(vec![q.blockade_cells.into(), gap.into(), g.len().into(), split.into()]);
        } else {
            let da = g.iter().max_by(|a, b| a.splitting.total_cmp(&b.splitting)).map_or(0.0, |s| s.delta_a);
            det.push(vec![q.blockade_cells.into(), q.detuning.into(), gap.into(), g.len().into(), split.into(), da.into()]);
        }
    }
    Ok(vec![("gap_repulsive", rep), ("gap_profile", prof), ("gap_kinematic", kin), ("gap_vs_detuning", det)])
}
