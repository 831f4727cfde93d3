//! Command-line front end: analytic bands, phase classification, ring/box
//! diagonalizations, breaking-threshold sweeps, and zero-mode printouts,
//! emitted as plot-ready CSV or JSON.

mod output;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use susyspin::analytic::{
    decay_rate, zero_mode_matrix, zero_mode_spinor, zero_mode_wavevector, BandSpectrum,
};
use susyspin::model::{validate_model, FieldConfig, ModelSpec, Sector, Superpotential};
use susyspin::numfmt::fmt_g12;
use susyspin::solver::{bound_spectrum, ring_spectrum, SpectrumResult};
use susyspin::spinor::SpinorField;
use susyspin::susy::{breaking_threshold_scan, classify, Method, NumericSettings};

use output::{opt_num, Cell, Doc, Extra, Format, Payload};

#[derive(Parser)]
#[command(name = "susyspin", version, about = "Spin-1/2 SUSY quantum mechanics in a rotating magnetic field", max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Sample the two analytic energy bands over a wavevector range.
    #[command(allow_negative_numbers = true)]
    Bands {
        /// Field pitch k (nonzero).
        #[arg(long)]
        k: f64,
        /// Field strength B0.
        #[arg(long)]
        b0: f64,
        #[arg(long)]
        q_min: f64,
        #[arg(long)]
        q_max: f64,
        /// Number of samples, endpoints included.
        #[arg(long)]
        q_steps: usize,
    },
    /// Decide whether supersymmetry is broken, optionally cross-checking
    /// the closed-form verdict on a lattice.
    #[command(allow_negative_numbers = true)]
    Classify {
        #[arg(long)]
        k: f64,
        #[arg(long)]
        b0: f64,
        /// Superpotential kind (the free model when omitted).
        #[arg(long, value_parser = ["tanh"], requires = "alpha")]
        w: Option<String>,
        /// Asymptotic slope of the tanh superpotential.
        #[arg(long, requires = "w")]
        alpha: Option<f64>,
        /// Also diagonalize on a lattice; needs --n and one of
        /// --periods (free model) or --length (tanh model).
        #[arg(long)]
        numeric: bool,
        #[arg(long, requires = "numeric")]
        n: Option<usize>,
        #[arg(long, requires = "numeric", conflicts_with = "length")]
        periods: Option<u32>,
        #[arg(long, requires = "numeric")]
        length: Option<f64>,
    },
    /// Diagonalize the factorized Hamiltonians on a periodic ring.
    #[command(allow_negative_numbers = true)]
    Ring {
        #[arg(long)]
        k: f64,
        #[arg(long)]
        b0: f64,
        /// Whole number of gauge periods; the ring length is 4π·periods/|k|.
        #[arg(long)]
        periods: u32,
        /// Lattice sites.
        #[arg(long)]
        n: usize,
        /// How many low levels to report.
        #[arg(long)]
        levels: usize,
        #[arg(long, value_enum, default_value_t = SectorChoice::Both)]
        sector: SectorChoice,
        /// Also write the ground-state wavefunction(s) to this CSV path.
        #[arg(long, value_name = "PATH")]
        dump_states: Option<PathBuf>,
    },
    /// Diagonalize the tanh-model Hamiltonians in a hard box.
    #[command(allow_negative_numbers = true)]
    Bound {
        #[arg(long, value_parser = ["tanh"])]
        w: String,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        k: f64,
        #[arg(long)]
        b0: f64,
        /// Box length, centered on the origin.
        #[arg(long)]
        length: f64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        levels: usize,
        #[arg(long, value_enum, default_value_t = SectorChoice::Both)]
        sector: SectorChoice,
        #[arg(long, value_name = "PATH")]
        dump_states: Option<PathBuf>,
    },
    /// Scan B0 and locate the SUSY-breaking threshold.
    #[command(allow_negative_numbers = true)]
    Sweep {
        /// Swept parameter; only the field strength is supported.
        #[arg(long, value_parser = ["b0"])]
        param: String,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        k: f64,
        #[arg(long, value_parser = ["tanh"], requires = "alpha")]
        w: Option<String>,
        #[arg(long, requires = "w")]
        alpha: Option<f64>,
    },
    /// Print the band-touching wavevector and the zero-mode spinor.
    #[command(allow_negative_numbers = true)]
    Zeromode {
        #[arg(long)]
        k: f64,
        #[arg(long)]
        b0: f64,
        #[arg(long, value_enum)]
        sector: SectorPick,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SectorChoice {
    Minus,
    Plus,
    Both,
}

impl SectorChoice {
    fn sectors(self) -> Vec<Sector> {
        match self {
            SectorChoice::Minus => vec![Sector::Minus],
            SectorChoice::Plus => vec![Sector::Plus],
            SectorChoice::Both => vec![Sector::Minus, Sector::Plus],
        }
    }

    fn flag_value(self) -> &'static str {
        match self {
            SectorChoice::Minus => "minus",
            SectorChoice::Plus => "plus",
            SectorChoice::Both => "both",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SectorPick {
    Minus,
    Plus,
}

impl From<SectorPick> for Sector {
    fn from(p: SectorPick) -> Sector {
        match p {
            SectorPick::Minus => Sector::Minus,
            SectorPick::Plus => Sector::Plus,
        }
    }
}

/// Usage problems exit 2, numeric failures exit 1 (matching clap's own
/// convention for flag errors).
enum CliError {
    Usage(String),
    Failure(String),
}

impl From<susyspin::Error> for CliError {
    fn from(e: susyspin::Error) -> Self {
        match e {
            susyspin::Error::InvalidModel(_)
            | susyspin::Error::Grid(_)
            | susyspin::Error::EmptyRange(_) => CliError::Usage(e.to_string()),
            other => CliError::Failure(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Failure(e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let format = cli.format;
    let doc = match cli.command {
        Command::Bands { k, b0, q_min, q_max, q_steps } => {
            cmd_bands(k, b0, q_min, q_max, q_steps, format)?
        }
        Command::Classify { k, b0, w, alpha, numeric, n, periods, length } => {
            cmd_classify(k, b0, w, alpha, numeric, n, periods, length, format)?
        }
        Command::Ring { k, b0, periods, n, levels, sector, dump_states } => {
            cmd_ring(k, b0, periods, n, levels, sector, dump_states.as_deref(), format)?
        }
        Command::Bound { w: _, alpha, k, b0, length, n, levels, sector, dump_states } => {
            cmd_bound(alpha, k, b0, length, n, levels, sector, dump_states.as_deref(), format)?
        }
        Command::Sweep { param: _, from, to, steps, k, w, alpha } => {
            cmd_sweep(from, to, steps, k, w, alpha, format)?
        }
        Command::Zeromode { k, b0, sector } => cmd_zeromode(k, b0, sector, format)?,
    };
    let text = doc.render(format);
    match cli.out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn validated(spec: &ModelSpec) -> Result<(), CliError> {
    let v = validate_model(spec);
    if v.is_valid() {
        Ok(())
    } else {
        Err(usage(v.violations.join("; ")))
    }
}

fn superpotential(w: Option<&str>, alpha: Option<f64>) -> Result<Superpotential, CliError> {
    match (w, alpha) {
        (None, None) => Ok(Superpotential::Zero),
        (Some("tanh"), Some(alpha)) => Ok(Superpotential::Tanh { alpha }),
        // clap's `requires` already pairs the flags; this is belt and braces.
        _ => Err(usage("--w tanh and --alpha go together")),
    }
}

fn cmd_bands(
    k: f64,
    b0: f64,
    q_min: f64,
    q_max: f64,
    q_steps: usize,
    format: Format,
) -> Result<Doc, CliError> {
    let field = FieldConfig::new(b0, k);
    validated(&ModelSpec::new(field, Superpotential::Zero, Sector::Minus))?;
    if q_steps == 0 {
        return Err(usage("--q-steps must be at least 1"));
    }
    if !q_min.is_finite() || !q_max.is_finite() {
        return Err(usage("wavevector range must be finite"));
    }
    if q_min > q_max {
        return Err(usage("--q-min must not exceed --q-max"));
    }
    let bands = BandSpectrum::sample(&field, q_min, q_max, q_steps);
    let rows = bands
        .q_values
        .iter()
        .zip(bands.e1.iter().zip(&bands.e2))
        .map(|(&q, (&e1, &e2))| vec![Cell::Num(q), Cell::Num(e1), Cell::Num(e2)])
        .collect();
    Ok(Doc {
        command: "bands",
        flags: format!(
            "--k {} --b0 {} --q-min {} --q-max {} --q-steps {} --format {}",
            fmt_g12(k),
            fmt_g12(b0),
            fmt_g12(q_min),
            fmt_g12(q_max),
            q_steps,
            format.flag_value()
        ),
        payload: Payload::Table { columns: vec!["q", "e1", "e2"], rows },
        extras: vec![],
        warnings: vec![],
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_classify(
    k: f64,
    b0: f64,
    w: Option<String>,
    alpha: Option<f64>,
    numeric: bool,
    n: Option<usize>,
    periods: Option<u32>,
    length: Option<f64>,
    format: Format,
) -> Result<Doc, CliError> {
    let field = FieldConfig::new(b0, k);
    let w = superpotential(w.as_deref(), alpha)?;
    let spec = ModelSpec::new(field, w.clone(), Sector::Minus);
    let settings = if numeric {
        let n = n.ok_or_else(|| usage("--numeric needs --n"))?;
        Some(match (periods, length) {
            (Some(periods), None) => NumericSettings::Ring { periods, n },
            (None, Some(length)) => NumericSettings::Box { length, n },
            _ => return Err(usage("--numeric needs exactly one of --periods or --length")),
        })
    } else {
        None
    };
    let report = classify(&spec, settings)?;

    let mut flags = format!("--k {} --b0 {}", fmt_g12(k), fmt_g12(b0));
    if let Superpotential::Tanh { alpha } = w {
        flags.push_str(&format!(" --w tanh --alpha {}", fmt_g12(alpha)));
    }
    match settings {
        Some(NumericSettings::Ring { periods, n }) => {
            flags.push_str(&format!(" --numeric --n {n} --periods {periods}"));
        }
        Some(NumericSettings::Box { length, n }) => {
            flags.push_str(&format!(" --numeric --n {n} --length {}", fmt_g12(length)));
        }
        None => {}
    }
    flags.push_str(&format!(" --format {}", format.flag_value()));

    let method = match report.method {
        Method::Analytic => "Analytic",
        Method::Numeric => "Numeric",
        Method::Both => "Both",
    };
    // The headline analytic quantity: the band-touching wavevector for the
    // free model, the asymptotic decay rate for a confining one.
    let (q0_cell, lambda_cell) = if w.is_constant() {
        (opt_num(zero_mode_wavevector(&field)), Cell::Empty)
    } else {
        let lambda = decay_rate(&field);
        let cell = if lambda.is_real() {
            Cell::Num(lambda.value.re)
        } else {
            Cell::Text(format!("{}i", fmt_g12(lambda.value.im)))
        };
        (Cell::Empty, cell)
    };
    let pairs = vec![
        ("phase", Cell::Text(report.phase.to_string())),
        ("method", Cell::Text(method.to_string())),
        ("ground_energy_minus", opt_num(report.ground_energy_minus)),
        ("ground_energy_plus", opt_num(report.ground_energy_plus)),
        ("zero_modes_minus", Cell::Int(report.zero_modes_minus as i64)),
        ("zero_modes_plus", Cell::Int(report.zero_modes_plus as i64)),
        ("pairing_max_gap", opt_num(report.pairing_max_gap)),
        ("q0", q0_cell),
        ("lambda", lambda_cell),
        ("details", Cell::Text(report.details)),
    ];
    Ok(Doc {
        command: "classify",
        flags,
        payload: Payload::Report(pairs),
        extras: vec![],
        warnings: vec![],
    })
}

/// Levels table over one or both sectors, plus optional ground-state dumps.
fn spectrum_doc(
    command: &'static str,
    flags: String,
    spectra: &[(Sector, SpectrumResult)],
    levels: usize,
    dump: Option<&Path>,
) -> Result<Doc, CliError> {
    let mut columns = vec!["index"];
    for (sector, _) in spectra {
        columns.push(match sector {
            Sector::Minus => "e_minus",
            Sector::Plus => "e_plus",
        });
    }
    let reported = spectra
        .iter()
        .map(|(_, r)| r.eigenvalues.len())
        .min()
        .unwrap_or(0)
        .min(levels);
    let rows = (0..reported)
        .map(|i| {
            let mut row = vec![Cell::Int(i as i64)];
            row.extend(spectra.iter().map(|(_, r)| Cell::Num(r.eigenvalues[i])));
            row
        })
        .collect();
    let mut warnings = Vec::new();
    for (sector, r) in spectra {
        if let Some(msg) = &r.edge_warning {
            warnings.push(format!("{sector} sector: {msg}"));
        }
    }
    if let Some(path) = dump {
        for (sector, r) in spectra {
            let field = r
                .eigenvector_field(0)
                .ok_or_else(|| CliError::Failure("no ground state to dump".into()))?;
            let target = if spectra.len() > 1 { sector_path(path, *sector) } else { path.to_path_buf() };
            let doc = dump_doc(command, &flags, *sector, &field);
            fs::write(target, doc.render(Format::Csv))?;
        }
    }
    Ok(Doc {
        command,
        flags,
        payload: Payload::Table { columns, rows },
        extras: vec![],
        warnings,
    })
}

/// states.csv → states.minus.csv when both sectors are dumped.
fn sector_path(path: &Path, sector: Sector) -> PathBuf {
    match path.extension().and_then(|e| e.to_str()) {
        Some(ext) => path.with_extension(format!("{sector}.{ext}")),
        None => {
            let mut p = path.as_os_str().to_owned();
            p.push(format!(".{sector}"));
            PathBuf::from(p)
        }
    }
}

fn dump_doc(command: &'static str, flags: &str, sector: Sector, field: &SpinorField) -> Doc {
    let v = canonical_phase(field.to_interleaved());
    let grid = field.grid;
    let rows = (0..grid.n())
        .map(|j| {
            vec![
                Cell::Num(grid.point(j)),
                Cell::Num(v[2 * j].re),
                Cell::Num(v[2 * j].im),
                Cell::Num(v[2 * j + 1].re),
                Cell::Num(v[2 * j + 1].im),
            ]
        })
        .collect();
    Doc {
        command,
        flags: flags.to_string(),
        payload: Payload::Table {
            columns: vec!["z", "re_up", "im_up", "re_down", "im_down"],
            rows,
        },
        extras: vec![Extra {
            label: "state",
            key: "state",
            value: Cell::Text(format!("ground state of the {sector} sector")),
        }],
        warnings: vec![],
    }
}

/// Rotate a unit vector so its largest entry is real and positive; the
/// eigensolver's phase is arbitrary, and dumps should not depend on it.
fn canonical_phase(mut v: Vec<susyspin::C64>) -> Vec<susyspin::C64> {
    let mut best = 0usize;
    for (i, x) in v.iter().enumerate() {
        if x.norm_sqr() > v[best].norm_sqr() {
            best = i;
        }
    }
    let mag = v[best].norm();
    if mag > 0.0 {
        let rot = v[best].conj() / mag;
        for x in &mut v {
            *x *= rot;
        }
    }
    v
}

#[allow(clippy::too_many_arguments)]
fn cmd_ring(
    k: f64,
    b0: f64,
    periods: u32,
    n: usize,
    levels: usize,
    sector: SectorChoice,
    dump: Option<&Path>,
    format: Format,
) -> Result<Doc, CliError> {
    let field = FieldConfig::new(b0, k);
    let mut spec = ModelSpec::new(field, Superpotential::Zero, Sector::Minus);
    validated(&spec)?;
    let mut spectra = Vec::new();
    for s in sector.sectors() {
        spec.sector = s;
        spectra.push((s, ring_spectrum(&spec, periods, n, levels, dump.is_some())?));
    }
    let flags = format!(
        "--k {} --b0 {} --periods {} --n {} --levels {} --sector {} --format {}",
        fmt_g12(k),
        fmt_g12(b0),
        periods,
        n,
        levels,
        sector.flag_value(),
        format.flag_value()
    );
    spectrum_doc("ring", flags, &spectra, levels, dump)
}

#[allow(clippy::too_many_arguments)]
fn cmd_bound(
    alpha: f64,
    k: f64,
    b0: f64,
    length: f64,
    n: usize,
    levels: usize,
    sector: SectorChoice,
    dump: Option<&Path>,
    format: Format,
) -> Result<Doc, CliError> {
    let field = FieldConfig::new(b0, k);
    let mut spec = ModelSpec::new(field, Superpotential::Tanh { alpha }, Sector::Minus);
    validated(&spec)?;
    let mut spectra = Vec::new();
    for s in sector.sectors() {
        spec.sector = s;
        spectra.push((s, bound_spectrum(&spec, length, n, levels, dump.is_some())?));
    }
    let flags = format!(
        "--w tanh --alpha {} --k {} --b0 {} --length {} --n {} --levels {} --sector {} --format {}",
        fmt_g12(alpha),
        fmt_g12(k),
        fmt_g12(b0),
        fmt_g12(length),
        n,
        levels,
        sector.flag_value(),
        format.flag_value()
    );
    spectrum_doc("bound", flags, &spectra, levels, dump)
}

fn cmd_sweep(
    from: f64,
    to: f64,
    steps: usize,
    k: f64,
    w: Option<String>,
    alpha: Option<f64>,
    format: Format,
) -> Result<Doc, CliError> {
    let w = superpotential(w.as_deref(), alpha)?;
    let scan = breaking_threshold_scan(k, (from, to, steps), &w)?;
    let rows = scan
        .rows
        .iter()
        .map(|r| {
            vec![
                Cell::Num(r.b0),
                Cell::Text(r.phase.to_string()),
                opt_num(r.e_min),
                Cell::Num(scan.threshold_closed_form),
            ]
        })
        .collect();
    let mut flags = format!(
        "--param b0 --from {} --to {} --steps {} --k {}",
        fmt_g12(from),
        fmt_g12(to),
        steps,
        fmt_g12(k)
    );
    if let Superpotential::Tanh { alpha } = w {
        flags.push_str(&format!(" --w tanh --alpha {}", fmt_g12(alpha)));
    }
    flags.push_str(&format!(" --format {}", format.flag_value()));
    let mut extras = vec![Extra {
        label: "closed-form threshold",
        key: "closed_form_threshold",
        value: Cell::Num(scan.threshold_closed_form),
    }];
    if let Some(b) = scan.threshold_bisection {
        extras.push(Extra {
            label: "bisection threshold",
            key: "bisection_threshold",
            value: Cell::Num(b),
        });
    }
    Ok(Doc {
        command: "sweep",
        flags,
        payload: Payload::Table {
            columns: vec!["b0", "phase", "e1_min", "analytic_threshold"],
            rows,
        },
        extras,
        warnings: vec![],
    })
}

fn cmd_zeromode(k: f64, b0: f64, sector: SectorPick, format: Format) -> Result<Doc, CliError> {
    let field = FieldConfig::new(b0, k);
    let sector: Sector = sector.into();
    validated(&ModelSpec::new(field, Superpotential::Zero, sector))?;
    let flags = format!(
        "--k {} --b0 {} --sector {} --format {}",
        fmt_g12(k),
        fmt_g12(b0),
        sector,
        format.flag_value()
    );
    let pairs = match zero_mode_wavevector(&field) {
        None => vec![("q0", Cell::Text("none: SUSY broken".into()))],
        Some(q0) => {
            let chi = zero_mode_spinor(q0, &field, sector)?;
            let m = zero_mode_matrix(q0, &field, sector);
            let mv = m.mul_vec(chi);
            let residual = (mv[0].norm_sqr() + mv[1].norm_sqr()).sqrt();
            vec![
                ("q0", Cell::Num(q0)),
                ("chi_up_re", Cell::Num(chi[0].re)),
                ("chi_up_im", Cell::Num(chi[0].im)),
                ("chi_down_re", Cell::Num(chi[1].re)),
                ("chi_down_im", Cell::Num(chi[1].im)),
                ("ratio", Cell::Num(chi[1].norm() / chi[0].norm())),
                ("residual", Cell::Num(residual)),
            ]
        }
    };
    Ok(Doc {
        command: "zeromode",
        flags,
        payload: Payload::Report(pairs),
        extras: vec![],
        warnings: vec![],
    })
}
