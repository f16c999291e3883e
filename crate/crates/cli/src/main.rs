//! Batch command-line front end: sector censuses, frozen-state counts,
//! exact algebra verification, sector spectra, and the quench-dynamics
//! workflows, all emitted as deterministic CSV/JSON/DOT artifacts.
//!
//! Exit codes: 0 success, 1 verification failure (an exact identity that
//! should hold did not), 2 usage or domain error.

mod output;

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use fragchain::basis::{Model, ModelParams, SectorKey, SymmetryBlock};
use fragchain::dynamics::{
    eigenstate_cat_dynamics, find_figure_sector, frozen_cat_dynamics, imbalance_dynamics,
    late_time_average,
};
use fragchain::fragment::{
    build_krylov_sectors, classify_conjugation, classify_translation, count_frozen_states,
    export_sector_graph,
};
use fragchain::operators::{
    build_hamiltonian, build_logical_generators, verify_fragment_sum, verify_su2_algebra,
};
use fragchain::spectra::{diagonalize, verify_pair_degeneracy, Spectrum};
use fragchain::{Chain, Error as LibError, KrylovSector};

use output::{emit, sig12, write_atomic};

#[derive(Parser)]
#[command(
    name = "fragchain",
    version,
    about = "Krylov-sector censuses, projector-algebra checks, and quench-dynamics data for kinetically constrained spin chains"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    Xy,
    Xnor,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Xy => Model::Xy,
            ModelArg::Xnor => Model::Xnor,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    /// Cat of a frozen state and its conjugate.
    FrozenCat,
    /// Cat of a mid-spectrum eigenstate pair from a conjugation-paired sector.
    EigenstateCat,
}

#[derive(Subcommand)]
enum Command {
    /// Krylov-sector census of one symmetry block (or of every domain-wall
    /// block at fixed magnetization), as JSON.
    Census {
        #[arg(long)]
        length: u32,
        #[arg(long, default_value_t = 0)]
        mag: i32,
        #[arg(long)]
        dw: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
    /// Frozen-state counts and growth ratios up to the given length.
    Frozen {
        #[arg(long, default_value_t = 28)]
        length: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
    },
    /// Exact verification of the logical SU(2) algebra over every
    /// conjugation pair and (for L <= 12) the conjugation sum rule.
    /// Exits nonzero on any residual.
    Algebra {
        #[arg(long)]
        length: u32,
        #[arg(long, default_value_t = 0.25)]
        delta: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
    /// Per-sector eigenvalues as CSV plus a pair-degeneracy report as JSON.
    Spectrum {
        #[arg(long)]
        length: u32,
        #[arg(long, default_value_t = 0)]
        mag: i32,
        #[arg(long)]
        dw: Option<u32>,
        #[arg(long, value_enum, default_value_t = ModelArg::Xnor)]
        model: ModelArg,
        #[arg(long, default_value_t = 0.25)]
        delta: f64,
        #[arg(long, default_value_t = 0.0)]
        field: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Degeneracy report path (defaults to stdout when omitted).
        #[arg(long)]
        report: Option<PathBuf>,
        /// Optional coordinate-list dump of the block Hamiltonian.
        #[arg(long)]
        dump_operator: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
    },
    /// Time series of the conjugation expectation for an encoded-qubit cat
    /// state, as CSV (columns t, observable, site, value).
    Dynamics {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        length: u32,
        /// Frozen seed state for frozen-cat mode (ASCII bits, site 0 left).
        #[arg(long)]
        root: Option<String>,
        /// Sector dimension to search for in eigenstate-cat mode.
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long, default_value_t = 0.25)]
        delta: f64,
        #[arg(long, default_value_t = 0.1)]
        field: f64,
        #[arg(long, default_value_t = 200)]
        steps: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
    },
    /// Site-resolved relaxation in one sector plus the exact projected
    /// ensemble profile. Writes the time series to --out and the profile to
    /// --profile-out (default: --out with a .zinf.csv suffix).
    Imbalance {
        #[arg(long)]
        length: u32,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 200)]
        steps: u32,
        #[arg(long, default_value_t = 0.5)]
        window: f64,
        #[arg(long, default_value_t = 0.25)]
        delta: f64,
        #[arg(long, default_value_t = 0.0)]
        field: f64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        profile_out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
    },
    /// DOT export of a block's sector graph with conjugation pairings and
    /// translation arrows.
    Graph {
        #[arg(long)]
        length: u32,
        #[arg(long, default_value_t = 0)]
        mag: i32,
        #[arg(long)]
        dw: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Dot)]
        format: FormatArg,
    },
}

enum CliError {
    Lib(LibError),
    Io(std::io::Error),
    Usage(String),
}

impl From<LibError> for CliError {
    fn from(e: LibError) -> Self {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "io: {e}"),
            CliError::Usage(m) => write!(f, "usage: {m}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(
                LibError::AlgebraViolation { .. }
                | LibError::SumRuleViolation(_)
                | LibError::FragmentCommutatorViolation(_)
                | LibError::DegeneracyViolation(_),
            ) => 1,
            _ => 2,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn require_format(got: FormatArg, allowed: &[FormatArg], command: &str) -> Result<(), CliError> {
    if allowed.contains(&got) {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "unsupported --format for {command}"
        )))
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Census {
            length,
            mag,
            dw,
            out,
            format,
        } => {
            require_format(format, &[FormatArg::Json], "census")?;
            run_census(length, mag, dw, out.as_deref())
        }
        Command::Frozen {
            length,
            out,
            format,
        } => run_frozen(length, out.as_deref(), format),
        Command::Algebra {
            length,
            delta,
            out,
            format,
        } => {
            require_format(format, &[FormatArg::Json], "algebra")?;
            run_algebra(length, delta, out.as_deref())
        }
        Command::Spectrum {
            length,
            mag,
            dw,
            model,
            delta,
            field,
            out,
            report,
            dump_operator,
            format,
        } => {
            require_format(format, &[FormatArg::Csv], "spectrum")?;
            run_spectrum(
                length,
                mag,
                dw,
                model,
                delta,
                field,
                out.as_deref(),
                report.as_deref(),
                dump_operator.as_deref(),
            )
        }
        Command::Dynamics {
            mode,
            length,
            root,
            dim,
            delta,
            field,
            steps,
            out,
            format,
        } => {
            require_format(format, &[FormatArg::Csv], "dynamics")?;
            run_dynamics(mode, length, root, dim, delta, field, steps, out.as_deref())
        }
        Command::Imbalance {
            length,
            dim,
            steps,
            window,
            delta,
            field,
            out,
            profile_out,
            format,
        } => {
            require_format(format, &[FormatArg::Csv], "imbalance")?;
            run_imbalance(length, dim, steps, window, delta, field, &out, profile_out)
        }
        Command::Graph {
            length,
            mag,
            dw,
            out,
            format,
        } => {
            require_format(format, &[FormatArg::Dot], "graph")?;
            run_graph(length, mag, dw, out.as_deref())
        }
    }
}

#[derive(Serialize)]
struct SectorEntry {
    id: usize,
    root: String,
    dim: usize,
    conj_class: Option<&'static str>,
    pair_id: Option<usize>,
    orbit_id: usize,
}

#[derive(Serialize)]
struct BlockCensusDoc {
    #[serde(rename = "L")]
    l: u32,
    m: i32,
    n_dw: u32,
    k_total: usize,
    k_invariant: usize,
    k_paired: usize,
    sectors: Vec<SectorEntry>,
}

#[derive(Serialize)]
struct MultiBlockCensusDoc {
    #[serde(rename = "L")]
    l: u32,
    m: i32,
    blocks: Vec<BlockCensusDoc>,
}

fn block_census(chain: &Chain, m: i32, n_dw: u32) -> Result<BlockCensusDoc, CliError> {
    let sectors = build_krylov_sectors(chain, SectorKey { m, n_dw })?;
    let conj = if m == 0 && !sectors.is_empty() {
        Some(classify_conjugation(chain, &sectors)?)
    } else {
        None
    };
    let orbits = classify_translation(chain, &sectors)?;
    let mut orbit_of = vec![0usize; sectors.len()];
    for (o, orbit) in orbits.orbits.iter().enumerate() {
        for &id in orbit {
            orbit_of[id] = o;
        }
    }
    let mut conj_class = vec![None; sectors.len()];
    let mut pair_id = vec![None; sectors.len()];
    if let Some(c) = &conj {
        for &id in &c.invariant_ids {
            conj_class[id] = Some("invariant");
        }
        for &(p, q) in &c.pairs {
            conj_class[p] = Some("paired");
            conj_class[q] = Some("paired");
            pair_id[p] = Some(q);
            pair_id[q] = Some(p);
        }
    }
    let entries = sectors
        .iter()
        .enumerate()
        .map(|(id, sec)| SectorEntry {
            id,
            root: chain.format_state(sec.root()),
            dim: sec.dim(),
            conj_class: conj_class[id],
            pair_id: pair_id[id],
            orbit_id: orbit_of[id],
        })
        .collect();
    Ok(BlockCensusDoc {
        l: chain.len(),
        m,
        n_dw,
        k_total: sectors.len(),
        k_invariant: conj.as_ref().map(|c| c.k_invariant).unwrap_or(0),
        k_paired: conj.as_ref().map(|c| c.k_paired).unwrap_or(0),
        sectors: entries,
    })
}

fn to_json<T: Serialize>(doc: &T) -> Result<String, CliError> {
    let mut text = serde_json::to_string_pretty(doc)
        .map_err(|e| CliError::Usage(format!("json encoding failed: {e}")))?;
    text.push('\n');
    Ok(text)
}

fn run_census(length: u32, mag: i32, dw: Option<u32>, out: Option<&Path>) -> Result<(), CliError> {
    let chain = Chain::new(length)?;
    let text = match dw {
        Some(n_dw) => to_json(&block_census(&chain, mag, n_dw)?)?,
        None => {
            let mut blocks = Vec::new();
            for n_dw in chain.domain_wall_values() {
                let doc = block_census(&chain, mag, n_dw)?;
                if doc.k_total > 0 {
                    blocks.push(doc);
                }
            }
            to_json(&MultiBlockCensusDoc {
                l: length,
                m: mag,
                blocks,
            })?
        }
    };
    emit(out, &text)?;
    Ok(())
}

#[derive(Serialize)]
struct FrozenRow {
    length: u32,
    count: u64,
    ratio_prev: Option<f64>,
}

fn run_frozen(length: u32, out: Option<&Path>, format: FormatArg) -> Result<(), CliError> {
    require_format(format, &[FormatArg::Csv, FormatArg::Json], "frozen")?;
    Chain::new(length)?;
    let mut rows: Vec<FrozenRow> = Vec::new();
    for l in (4..=length).step_by(2) {
        let count = count_frozen_states(l)?;
        let ratio_prev = rows
            .last()
            .map(|prev| count as f64 / prev.count as f64);
        rows.push(FrozenRow {
            length: l,
            count,
            ratio_prev,
        });
    }
    let text = match format {
        FormatArg::Csv => {
            let mut t = String::from("length,count,ratio_prev\n");
            for r in &rows {
                let ratio = r.ratio_prev.map(sig12).unwrap_or_default();
                t.push_str(&format!("{},{},{}\n", r.length, r.count, ratio));
            }
            t
        }
        _ => to_json(&rows)?,
    };
    emit(out, &text)?;
    Ok(())
}

#[derive(Serialize)]
struct FragmentSumDoc {
    delta: f64,
    invariant_fragments: usize,
    paired_fragments: usize,
    magnetization_fragments: usize,
    residual: i64,
}

#[derive(Serialize)]
struct AlgebraReport {
    #[serde(rename = "L")]
    l: u32,
    pairs_checked: usize,
    su2_residual: i64,
    /// Present only for L <= 12, where the full-chain sum rule is assembled.
    fragment_sum: Option<FragmentSumDoc>,
}

fn run_algebra(length: u32, delta: f64, out: Option<&Path>) -> Result<(), CliError> {
    let chain = Chain::new(length)?;
    let mut pairs_checked = 0usize;
    for n_dw in chain.domain_wall_values() {
        let sectors = build_krylov_sectors(&chain, SectorKey { m: 0, n_dw })?;
        if sectors.is_empty() {
            continue;
        }
        let class = classify_conjugation(&chain, &sectors)?;
        for &(p, q) in &class.pairs {
            let gens = build_logical_generators(&chain, &sectors[p], &sectors[q])?;
            verify_su2_algebra(&gens)?;
            pairs_checked += 1;
        }
    }
    let fragment_sum = if length <= 12 {
        let report = verify_fragment_sum(&chain, delta)?;
        Some(FragmentSumDoc {
            delta,
            invariant_fragments: report.invariant_fragments,
            paired_fragments: report.paired_fragments,
            magnetization_fragments: report.magnetization_fragments,
            residual: 0,
        })
    } else {
        None
    };
    let doc = AlgebraReport {
        l: length,
        pairs_checked,
        su2_residual: 0,
        fragment_sum,
    };
    emit(out, &to_json(&doc)?)?;
    Ok(())
}

#[derive(Serialize)]
struct DegeneracyPairDoc {
    root_p: String,
    root_q: String,
    dim: usize,
    max_mismatch: f64,
}

#[derive(Serialize)]
struct DegeneracyReport {
    #[serde(rename = "L")]
    l: u32,
    model: &'static str,
    m: i32,
    n_dw: Option<u32>,
    delta: f64,
    field: f64,
    pairs: Vec<DegeneracyPairDoc>,
}

fn spectrum_mismatch(a: &Spectrum, b: &Spectrum, strict: bool) -> Result<f64, CliError> {
    // With conjugation symmetry intact the degeneracy is a hard claim; with
    // a symmetry-breaking field the mismatch is data, not a failure.
    let tol = if strict { 1e-10 } else { f64::INFINITY };
    Ok(verify_pair_degeneracy(a, b, tol)?)
}

#[allow(clippy::too_many_arguments)]
fn run_spectrum(
    length: u32,
    mag: i32,
    dw: Option<u32>,
    model: ModelArg,
    delta: f64,
    field: f64,
    out: Option<&Path>,
    report: Option<&Path>,
    dump_operator: Option<&Path>,
) -> Result<(), CliError> {
    let chain = Chain::new(length)?;
    let params = ModelParams::new(chain, model.into(), delta, field);
    let mut csv = String::from("sector_id,level,eigenvalue\n");
    let mut doc = DegeneracyReport {
        l: length,
        model: match model {
            ModelArg::Xy => "xy",
            ModelArg::Xnor => "xnor",
        },
        m: mag,
        n_dw: dw,
        delta,
        field,
        pairs: Vec::new(),
    };
    match model {
        ModelArg::Xy => {
            if dw.is_some() {
                return Err(CliError::Usage(
                    "--dw does not apply to the xy model (only magnetization is conserved)".into(),
                ));
            }
            let plus = SymmetryBlock::enumerate_magnetization(&chain, mag)?;
            let h_plus = build_hamiltonian(plus.states(), &params)?;
            if let Some(path) = dump_operator {
                write_atomic(path, &h_plus.to_coordinate_text())?;
            }
            let sp = diagonalize(&h_plus)?;
            push_levels(&mut csv, 0, &sp);
            if mag != 0 {
                let minus = SymmetryBlock::enumerate_magnetization(&chain, -mag)?;
                let sm = diagonalize(&build_hamiltonian(minus.states(), &params)?)?;
                push_levels(&mut csv, 1, &sm);
                let mismatch = spectrum_mismatch(&sp, &sm, field == 0.0)?;
                doc.pairs.push(DegeneracyPairDoc {
                    root_p: chain.format_state(plus.states()[0]),
                    root_q: chain.format_state(minus.states()[0]),
                    dim: plus.len(),
                    max_mismatch: mismatch,
                });
            }
        }
        ModelArg::Xnor => {
            let n_dw = dw.ok_or_else(|| {
                CliError::Usage("--dw is required for xnor spectra (both m and n_dw are conserved)".into())
            })?;
            let sectors = build_krylov_sectors(&chain, SectorKey { m: mag, n_dw })?;
            if let Some(path) = dump_operator {
                let block: Vec<_> = sectors
                    .iter()
                    .flat_map(|sec| sec.members().iter().copied())
                    .collect();
                let mut block = block;
                block.sort_unstable();
                let h = build_hamiltonian(&block, &params)?;
                write_atomic(path, &h.to_coordinate_text())?;
            }
            let mut spectra = Vec::with_capacity(sectors.len());
            for (id, sec) in sectors.iter().enumerate() {
                let spec = diagonalize(&build_hamiltonian(sec.members(), &params)?)?;
                push_levels(&mut csv, id, &spec);
                spectra.push(spec);
            }
            if mag == 0 && !sectors.is_empty() {
                let class = classify_conjugation(&chain, &sectors)?;
                for &(p, q) in &class.pairs {
                    let mismatch = spectrum_mismatch(&spectra[p], &spectra[q], field == 0.0)?;
                    doc.pairs.push(DegeneracyPairDoc {
                        root_p: chain.format_state(sectors[p].root()),
                        root_q: chain.format_state(sectors[q].root()),
                        dim: sectors[p].dim(),
                        max_mismatch: mismatch,
                    });
                }
            }
        }
    }
    emit(out, &csv)?;
    emit(report, &to_json(&doc)?)?;
    Ok(())
}

fn push_levels(csv: &mut String, sector_id: usize, spec: &Spectrum) {
    for (level, e) in spec.eigenvalues().iter().enumerate() {
        csv.push_str(&format!("{},{},{}\n", sector_id, level, sig12(*e)));
    }
}

/// Locate a conjugation-paired sector of the requested dimension and its
/// partner, smallest root first.
fn paired_sector_of_dim(
    chain: &Chain,
    dim: usize,
) -> Result<(KrylovSector, KrylovSector), CliError> {
    let candidates = find_figure_sector(chain, dim, false)?;
    let all = fragchain::fragment::census(chain, 0)?;
    for p in candidates {
        if p.is_conjugation_invariant(chain) {
            continue;
        }
        let partner_root = chain.charge_conjugate(*p.members().last().unwrap())?;
        if let Some(q) = all.iter().find(|sec| sec.root() == partner_root) {
            return Ok((p, q.clone()));
        }
    }
    Err(CliError::Usage(format!(
        "no conjugation-paired m=0 sector of dimension {dim} at L={}",
        chain.len()
    )))
}

#[allow(clippy::too_many_arguments)]
fn run_dynamics(
    mode: ModeArg,
    length: u32,
    root: Option<String>,
    dim: Option<usize>,
    delta: f64,
    field: f64,
    steps: u32,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let chain = Chain::new(length)?;
    let params = ModelParams::new(chain, Model::Xnor, delta, field);
    let series = match mode {
        ModeArg::FrozenCat => {
            let root = root.ok_or_else(|| {
                CliError::Usage("--root <bitstring> is required for frozen-cat mode".into())
            })?;
            let phi = chain.parse_state(&root)?;
            let (_, series, _) = frozen_cat_dynamics(phi, &params, steps)?;
            series
        }
        ModeArg::EigenstateCat => {
            let dim = dim.ok_or_else(|| {
                CliError::Usage("--dim <n> is required for eigenstate-cat mode".into())
            })?;
            let (p, q) = paired_sector_of_dim(&chain, dim)?;
            let (_, series) = eigenstate_cat_dynamics(&p, &q, &params, steps)?;
            series
        }
    };
    let mut csv = String::from("t,observable,site,value\n");
    for (t, v) in series.iter().enumerate() {
        csv.push_str(&format!("{},x,,{}\n", t, sig12(*v)));
    }
    emit(out, &csv)?;
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn run_imbalance(
    length: u32,
    dim: usize,
    steps: u32,
    window: f64,
    delta: f64,
    field: f64,
    out: &Path,
    profile_out: Option<PathBuf>,
) -> Result<(), CliError> {
    let chain = Chain::new(length)?;
    let sector = find_figure_sector(&chain, dim, true)?
        .into_iter()
        .next()
        .ok_or_else(|| {
            CliError::Usage(format!(
                "no m=0 sector of dimension {dim} lacking both symmetries at L={length}"
            ))
        })?;
    let params = ModelParams::new(chain, Model::Xnor, delta, field);
    let (_, z_series, profile) = imbalance_dynamics(&sector, &params, steps)?;

    let mut csv = String::from("t,observable,site,value\n");
    for t in 0..=steps as usize {
        for (site, series) in z_series.iter().enumerate() {
            csv.push_str(&format!("{},z,{},{}\n", t, site, sig12(series[t])));
        }
    }
    for (site, series) in z_series.iter().enumerate() {
        let avg = late_time_average(series, window)?;
        csv.push_str(&format!("{},z_late_avg,{},{}\n", steps, site, sig12(avg)));
    }
    write_atomic(out, &csv)?;

    let mut prof = String::from("site,z_inf_num,z_inf_den,z_inf\n");
    for site in 0..profile.sites() {
        prof.push_str(&format!(
            "{},{},{},{}\n",
            site,
            profile.numerators()[site],
            profile.denominator(),
            sig12(profile.site_value(site))
        ));
    }
    let profile_path = profile_out.unwrap_or_else(|| default_profile_path(out));
    write_atomic(&profile_path, &prof)?;
    Ok(())
}

fn default_profile_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().unwrap_or_default().to_string_lossy();
    out.with_file_name(format!("{stem}.zinf.csv"))
}

fn run_graph(length: u32, mag: i32, dw: u32, out: Option<&Path>) -> Result<(), CliError> {
    let chain = Chain::new(length)?;
    let sectors = build_krylov_sectors(&chain, SectorKey { m: mag, n_dw: dw })?;
    let conj = if mag == 0 && !sectors.is_empty() {
        Some(classify_conjugation(&chain, &sectors)?)
    } else {
        None
    };
    let orbits = classify_translation(&chain, &sectors)?;
    let dot = export_sector_graph(&chain, &sectors, conj.as_ref(), Some(&orbits));
    emit(out, &dot)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verification_failures_map_to_exit_code_1() {
        let verification = CliError::Lib(LibError::SumRuleViolation(3));
        assert_eq!(verification.exit_code(), 1);
        let degeneracy = CliError::Lib(LibError::DegeneracyViolation(0.5));
        assert_eq!(degeneracy.exit_code(), 1);
        let domain = CliError::Lib(LibError::InvalidChainLength(5));
        assert_eq!(domain.exit_code(), 2);
        let usage = CliError::Usage("x".into());
        assert_eq!(usage.exit_code(), 2);
    }

    #[test]
    fn profile_path_is_derived_from_out() {
        let p = default_profile_path(Path::new("runs/imb.csv"));
        assert_eq!(p, Path::new("runs/imb.zinf.csv"));
    }
}
