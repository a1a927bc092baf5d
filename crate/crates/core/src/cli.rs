//! Command-line front end. Every subcommand writes to the supplied streams and
//! returns an [`ExitStatus`], so the binary is a thin wrapper around [`run`].

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::bounds::bound_report;
use crate::decomp::{
    expand_certificate, solve_decomposition, verify_certificate, DecompositionCertificate, SolveStatus, Verification,
};
use crate::error::Error;
use crate::hypergraph::TGraph;
use crate::johnson::{min_ordered_v, IsolationStatus, JohnsonParams};
use crate::rational::{parse_fraction, to_fraction_string};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u8)]
pub enum ExitStatus {
    Success = 0,
    /// A well-formed run whose answer is negative: no positive solution,
    /// uncovered edge, or a rejected certificate.
    Rejected = 1,
    Usage = 2,
    SizeCap = 3,
    /// A solution that failed its own verification.
    Internal = 4,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }

    fn from_error(e: &Error) -> Self {
        match e {
            Error::SizeCap { .. } => ExitStatus::SizeCap,
            Error::Internal(_) => ExitStatus::Internal,
            _ => ExitStatus::Usage,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "hyperdecomp",
    version,
    about = "Exact fractional clique decompositions of dense t-graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the coverage system for a graph and write a verified certificate.
    Decompose {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Print the Johnson-scheme spectrum and the root isolation for M1.
    Spectrum {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        v: usize,
        /// Also report the smallest v in k..=SWEEP with strictly ordered eigenvalues.
        #[arg(long, value_name = "VMAX")]
        sweep: Option<usize>,
        /// Build M and check that it is annihilated by its minimal polynomial.
        #[arg(long)]
        check_matrix: bool,
        #[arg(long)]
        json: bool,
    },
    /// Check a certificate against a graph.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        cert: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Report the perturbation norm and density quantities for a graph.
    Bounds {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        json: bool,
    },
    /// Generate a seeded random dense t-graph.
    Gen {
        #[arg(long)]
        v: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, value_name = "P/Q")]
        epsilon: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: PathBuf,
    },
}

type CmdResult = Result<ExitStatus, Error>;

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus {
    let res = match cli.command {
        Command::Decompose { input, k, output, json } => decompose(&input, k, output.as_deref(), json, out),
        Command::Spectrum {
            t,
            k,
            v,
            sweep,
            check_matrix,
            json,
        } => spectrum(t, k, v, sweep, check_matrix, json, out),
        Command::Verify { input, cert, json } => verify(&input, &cert, json, out),
        Command::Bounds { input, k, json } => bounds(&input, k, json, out),
        Command::Gen {
            v,
            t,
            epsilon,
            seed,
            output,
        } => gen(v, t, &epsilon, seed, &output, out),
    };
    match res {
        Ok(status) => status,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            ExitStatus::from_error(&e)
        }
    }
}

fn read_graph(path: &Path) -> Result<TGraph, Error> {
    TGraph::parse_tg(&std::fs::read_to_string(path)?)
}

fn decompose(input: &Path, k: usize, output: Option<&Path>, json: bool, out: &mut dyn Write) -> CmdResult {
    let g = read_graph(input)?;
    let outcome = solve_decomposition(&g, k)?;
    let mut report = serde_json::json!({
        "status": outcome.status,
        "edges": g.edge_count(),
        "witness": outcome.witness,
        "x_hash": outcome.x_hash(),
    });
    if !outcome.status.is_success() {
        if json {
            writeln!(out, "{report}")?;
        } else {
            writeln!(out, "status: {}", outcome.status)?;
            match (&outcome.witness, outcome.status) {
                (Some(w), SolveStatus::NoCover) => writeln!(out, "uncovered edge: {w:?}")?,
                (Some(w), _) => writeln!(out, "negative coordinate at edge: {w:?}")?,
                (None, _) => writeln!(out, "the coverage matrix is singular")?,
            }
        }
        return Ok(ExitStatus::Rejected);
    }
    let x = outcome.x.as_deref().unwrap_or_default();
    let cert = expand_certificate(&g, k, x)?;
    if let Verification::Invalid(why) = verify_certificate(&g, &cert) {
        return Err(Error::Internal(format!("solver output failed verification: {why}")));
    }
    if let Some(path) = output {
        cert.write(path)?;
    }
    report["cliques"] = cert.items.len().into();
    if json {
        writeln!(out, "{report}")?;
    } else {
        writeln!(out, "status: {}", outcome.status)?;
        if let Some(w) = &outcome.witness {
            writeln!(out, "zero coordinate at edge: {w:?}")?;
        }
        writeln!(out, "edges: {}", g.edge_count())?;
        writeln!(out, "cliques: {}", cert.items.len())?;
        writeln!(out, "x sha256: {}", outcome.x_hash().unwrap_or_default())?;
        writeln!(out, "certificate verified")?;
    }
    Ok(ExitStatus::Success)
}

fn spectrum(
    t: usize,
    k: usize,
    v: usize,
    sweep: Option<usize>,
    check_matrix: bool,
    json: bool,
    out: &mut dyn Write,
) -> CmdResult {
    let params = JohnsonParams::new(t, k, v)?;
    let table = params.spectrum();
    let ordered = params.theta_order_holds();
    let half = BigRational::new(table.theta[t].clone(), BigInt::from(2));
    let psi_half = params.psi(&half).ok();
    let iso = params.isolate_r_roots();
    let min_v = sweep.map(|vmax| min_ordered_v(t, k, k..=vmax));
    let annihilated = if check_matrix {
        let m = params.build_m()?;
        let mut distinct = table.theta.clone();
        distinct.dedup();
        let prod = distinct
            .iter()
            .fold(crate::exactla::IntMatrix::identity(m.n()), |acc, th| {
                acc.mul(&m.shift(th))
            });
        Some(prod.is_zero())
    } else {
        None
    };

    if json {
        let mut j = table.to_json();
        j["theta_order_strict"] = ordered.into();
        j["psi_half_theta_t"] = psi_half.as_ref().map(to_fraction_string).into();
        j["isolation_status"] = serde_json::to_value(iso.status)?;
        j["roots_above_half_theta_t"] = iso.all_above_half_theta_t.into();
        j["root_intervals"] = iso
            .intervals
            .iter()
            .map(|(a, b)| vec![to_fraction_string(a), to_fraction_string(b)])
            .collect::<Vec<_>>()
            .into();
        if let Some(m) = min_v {
            j["min_ordered_v"] = m.into();
        }
        if let Some(a) = annihilated {
            j["minimal_polynomial_annihilates"] = a.into();
        }
        writeln!(out, "{j}")?;
        return Ok(ExitStatus::Success);
    }

    write!(out, "{}", table.to_table())?;
    if k == t {
        writeln!(
            out,
            "degenerate: k = t, so M is the identity and all eigenvalues coincide"
        )?;
    }
    writeln!(out, "theta ordering strict: {ordered}")?;
    match &psi_half {
        Some(p) => writeln!(
            out,
            "psi(theta_t/2) = {} ({})",
            to_fraction_string(p),
            if p.is_positive() { "positive" } else { "not positive" }
        )?,
        None => writeln!(out, "psi(theta_t/2) undefined (pole)")?,
    }
    match iso.status {
        IsolationStatus::Degenerate => writeln!(out, "root isolation: degenerate")?,
        status => {
            writeln!(
                out,
                "root isolation: {}",
                serde_json::to_value(status)?.as_str().unwrap_or("")
            )?;
            for (a, b) in &iso.intervals {
                writeln!(out, "  [{}, {}]", to_fraction_string(a), to_fraction_string(b))?;
            }
            writeln!(out, "all roots above theta_t/2: {}", iso.all_above_half_theta_t)?;
        }
    }
    if let Some(m) = min_v {
        match m {
            Some(v0) => writeln!(out, "minimal v with strict ordering: {v0}")?,
            None => writeln!(out, "minimal v with strict ordering: none up to {}", sweep.unwrap_or(0))?,
        }
    }
    if let Some(a) = annihilated {
        writeln!(out, "minimal polynomial annihilates M: {a}")?;
    }
    Ok(ExitStatus::Success)
}

fn verify(input: &Path, cert: &Path, json: bool, out: &mut dyn Write) -> CmdResult {
    let g = read_graph(input)?;
    let cert = DecompositionCertificate::read(cert)?;
    let verdict = verify_certificate(&g, &cert);
    let (status, message) = match &verdict {
        Verification::Valid => (ExitStatus::Success, "certificate valid".to_string()),
        Verification::Invalid(why) => (ExitStatus::Rejected, format!("certificate rejected: {why}")),
    };
    if json {
        writeln!(
            out,
            "{}",
            serde_json::json!({ "valid": verdict.is_valid(), "message": message })
        )?;
    } else {
        writeln!(out, "{message}")?;
    }
    Ok(status)
}

fn bounds(input: &Path, k: usize, json: bool, out: &mut dyn Write) -> CmdResult {
    let g = read_graph(input)?;
    let report = bound_report(&g, k)?;
    if !json {
        write!(out, "{}", report.to_table())?;
    }
    writeln!(out, "{}", report.to_json())?;
    Ok(ExitStatus::Success)
}

fn gen(v: usize, t: usize, epsilon: &str, seed: u64, output: &Path, out: &mut dyn Write) -> CmdResult {
    let eps = parse_fraction(epsilon)?;
    let g = TGraph::gen_dense_random(v, t, &eps, seed)?;
    std::fs::write(output, g.to_tg())?;
    let achieved = g.density_epsilon();
    writeln!(out, "edges: {}", g.edge_count())?;
    writeln!(out, "epsilon: {}", to_fraction_string(&achieved.epsilon))?;
    Ok(ExitStatus::Success)
}
