//! Command-line front end.

use std::fs::File;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::{Error, Result};
use crate::feasibility::{bound_dims, scan, ScanGrid};
use crate::model::{EnergyOutcome, Formula, Scheme, SystemParams};
use crate::oracle::{minimize_v_eff, radial_ground_state, KineticConvention};
use crate::potential::alpha_coefficient;
use crate::report::{self, anchor_row_agrees, table1_compare, DECIMAL_DIGITS};
use crate::slog::SignedLogReal;
use crate::spectrum::{
    e0_general, e0_scheme_m1, e0_scheme_m1_rederived, e0_scheme_mn, effective_quantum_number,
    EnergyQuery,
};

/// Oracle/closed-form agreement required by `verify`, in `|Δ ln|E||`.
pub const VERIFY_ENERGY_TOL: f64 = 1e-8;
/// Searched vs closed-form minimizer agreement required by `verify`.
pub const VERIFY_RADIUS_TOL: f64 = 1e-9;

#[derive(Parser, Debug)]
#[command(name = "dimspec", version, about = "Hydrogen ground states for (-1)^n Δ^n ψ - α r^-β ψ = E ψ in D dimensions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SchemeArg {
    Mn,
    M1,
    Explicit,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::Mn => Scheme::MEqualsN,
            SchemeArg::M1 => Scheme::MEqualsOne,
            SchemeArg::Explicit => Scheme::Explicit,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ConventionArg {
    Full,
    Half,
}

#[derive(clap::Args, Debug)]
struct Output {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write data here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Integer list: `7`, `3,5,9` or an inclusive range `3..11`.
#[derive(Clone, Debug, PartialEq)]
struct IntList(Vec<u32>);

fn parse_int_list(s: &str) -> std::result::Result<IntList, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((a, b)) = part.split_once("..") {
            let b = b.trim_start_matches('=');
            let a: u32 = a.trim().parse().map_err(|_| format!("bad range start in {part:?}"))?;
            let b: u32 = b.trim().parse().map_err(|_| format!("bad range end in {part:?}"))?;
            out.extend(a..=b);
        } else {
            out.push(part.parse().map_err(|_| format!("bad integer {part:?}"))?);
        }
    }
    Ok(IntList(out))
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ground-state energy at one parameter point.
    Energy {
        #[arg(long = "D")]
        d: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long, value_enum, default_value = "mn")]
        scheme: SchemeArg,
        /// Override the coupling (requires --beta).
        #[arg(long, requires = "beta", allow_negative_numbers = true)]
        alpha: Option<f64>,
        #[arg(long, requires = "alpha", allow_negative_numbers = true)]
        beta: Option<i64>,
        /// Use the scheme's printed closed form instead of the general one.
        #[arg(long)]
        printed: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Coupling alpha(D, m) and exponent beta = D - 2m.
    Potential {
        #[arg(long = "D")]
        d: u32,
        #[arg(long)]
        m: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Dimensions with a bound state for a given n.
    Feasible {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "mn")]
        scheme: SchemeArg,
        #[command(flatten)]
        output: Output,
    },
    /// Evaluate a (D, n) grid.
    Scan {
        #[arg(long = "D", value_parser = parse_int_list)]
        d: IntList,
        #[arg(long, value_parser = parse_int_list)]
        n: IntList,
        #[arg(long, value_enum, default_value = "mn")]
        scheme: SchemeArg,
        #[arg(long)]
        m: Option<u32>,
        #[command(flatten)]
        output: Output,
    },
    /// Compare computed energies with the published table.
    Table1 {
        #[command(flatten)]
        output: Output,
    },
    /// Check the closed form against direct minimization of the effective potential.
    Verify {
        #[arg(long = "max-n", default_value_t = 6)]
        max_n: u32,
        #[arg(long = "max-D", default_value_t = 24)]
        max_d: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Numerov eigenvalue of the n = 1 radial equation.
    Radial {
        #[arg(long = "D", default_value_t = 3)]
        d: u32,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long, default_value_t = 1)]
        beta: i64,
        #[arg(long, value_enum, default_value = "half")]
        convention: ConventionArg,
        #[arg(long, default_value_t = 0)]
        excitation: usize,
        #[command(flatten)]
        output: Output,
    },
}

fn emit(output: &Output, data: &str, stdout: &mut dyn Write) -> Result<()> {
    match &output.out {
        Some(path) => {
            let mut f = File::create(path)?;
            f.write_all(data.as_bytes())?;
        }
        None => stdout.write_all(data.as_bytes())?,
    }
    Ok(())
}

fn f64_or_null(v: Option<SignedLogReal>) -> serde_json::Value {
    match v.map(|x| x.to_f64()) {
        Some(x) if x.is_finite() => json!(x),
        _ => serde_json::Value::Null,
    }
}

/// Runs the CLI and returns the process exit code.
pub fn run_cli<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if e.use_stderr() {
                write!(stderr, "{}", e.render())
            } else {
                write!(stdout, "{}", e.render())
            };
            return code;
        }
    };
    match dispatch(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cmd: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Energy {
            d,
            n,
            m,
            scheme,
            alpha,
            beta,
            printed,
            output,
        } => energy(d, n, m, scheme.into(), alpha.zip(beta), printed, &output, stdout, stderr),
        Command::Potential { d, m, output } => potential(d, m, &output, stdout),
        Command::Feasible { n, scheme, output } => feasible(n, scheme.into(), &output, stdout),
        Command::Scan {
            d,
            n,
            scheme,
            m,
            output,
        } => {
            let mut grid = ScanGrid::new(d.0, n.0, scheme.into());
            grid.m = m;
            let records = scan(&grid)?;
            emit(&output, &render_records(&records, output.format)?, stdout)?;
            Ok(0)
        }
        Command::Table1 { output } => table1(&output, stdout, stderr),
        Command::Verify {
            max_n,
            max_d,
            output,
        } => verify(max_n, max_d, &output, stdout),
        Command::Radial {
            d,
            alpha,
            beta,
            convention,
            excitation,
            output,
        } => radial(d, alpha, beta, convention, excitation, &output, stdout),
    }
}

fn render_records(records: &[crate::model::ScanRecord], format: Format) -> Result<String> {
    Ok(match format {
        Format::Csv => {
            let mut buf = Vec::new();
            report::write_csv(records, &mut buf)?;
            String::from_utf8(buf).expect("csv output is utf-8")
        }
        Format::Json => report::to_json(records)? + "\n",
        Format::Text => report::to_text(records),
    })
}

#[allow(clippy::too_many_arguments)]
fn energy(
    d: u32,
    n: u32,
    m: Option<u32>,
    scheme: Scheme,
    custom: Option<(f64, i64)>,
    printed: bool,
    output: &Output,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32> {
    let (m_out, beta, alpha, outcome, formula) = if let Some((a, b)) = custom {
        let alpha = SignedLogReal::from_f64(a);
        let q = EnergyQuery::new(alpha, b, n, d);
        (m, b, Some(alpha), e0_general(&q), Formula::General)
    } else {
        let params = SystemParams::for_scheme(d, n, scheme, m)?;
        let alpha = alpha_coefficient(d, params.m()).ok().and_then(|p| p.alpha);
        let (outcome, formula) = match (scheme, printed) {
            (Scheme::MEqualsN, true) => (e0_scheme_mn(d, n), Formula::PrintedMn),
            (Scheme::MEqualsOne, true) => (e0_scheme_m1(d, n), Formula::PrintedM1),
            (Scheme::MEqualsOne, false) => (e0_scheme_m1_rederived(d, n), Formula::General),
            (Scheme::Explicit, true) => {
                return Err(Error::InvalidRange("no printed form for the explicit scheme".into()))
            }
            _ => {
                let rec = crate::feasibility::evaluate_point(params);
                (rec.outcome, Formula::General)
            }
        };
        (Some(params.m()), params.beta(), alpha, outcome, formula)
    };
    let energy = outcome.energy();
    let k = energy.and_then(|e| effective_quantum_number(e).ok());
    let text = match output.format {
        Format::Json => {
            let v = json!({
                "D": d,
                "n": n,
                "m": m_out,
                "beta": beta,
                "alpha": f64_or_null(alpha),
                "E0": f64_or_null(energy),
                "E0_sign": energy.map(|e| e.sign()),
                "E0_lnmag": energy.map(|e| e.lnmag()),
                "E0_decimal": energy.map(|e| e.to_decimal_string(DECIMAL_DIGITS)),
                "classification": outcome.label(),
                "formula": formula.tag(),
                "k_star": k.map(|k| k.k_star),
            });
            serde_json::to_string_pretty(&v)? + "\n"
        }
        Format::Csv => {
            let mut s = String::from("D,n,m,beta,alpha,E0,E0_decimal,classification,formula\n");
            s.push_str(&format!(
                "{d},{n},{},{beta},{},{},{},{},{}\n",
                m_out.map_or(String::new(), |m| m.to_string()),
                alpha.map_or(String::new(), |a| a.to_f64().to_string()),
                energy.map_or(String::new(), |e| e.to_f64().to_string()),
                energy.map_or(String::new(), |e| e.to_decimal_string(DECIMAL_DIGITS)),
                outcome.label(),
                formula.tag()
            ));
            s
        }
        Format::Text => {
            let mut s = format!(
                "D = {d}, n = {n}, m = {}, beta = {beta}, alpha = {}\n",
                m_out.map_or("-".to_string(), |m| m.to_string()),
                alpha.map_or("-".to_string(), |a| a.to_decimal_string(7)),
            );
            match energy {
                Some(e) => {
                    s.push_str(&format!("E0 = {} Ha  [{}]\n", e.to_decimal_string(7), formula.tag()));
                    if let Some(k) = k {
                        s.push_str(&format!("equivalent hydrogen level k* = {:.4} (nearest {})\n", k.k_star, k.nearest));
                    }
                }
                None => s.push_str(&format!("{}  [{}]\n", outcome.label(), formula.tag())),
            }
            s
        }
    };
    emit(output, &text, stdout)?;
    if let EnergyOutcome::Invalid(r) = outcome {
        writeln!(stderr, "invalid: {r}")?;
        return Ok(1);
    }
    Ok(0)
}

fn potential(d: u32, m: u32, output: &Output, stdout: &mut dyn Write) -> Result<i32> {
    let p = alpha_coefficient(d, m)?;
    let text = match output.format {
        Format::Json => {
            let v = json!({
                "D": d,
                "m": m,
                "beta": p.beta,
                "alpha": f64_or_null(p.alpha),
                "alpha_sign": p.alpha.map(|a| a.sign()),
                "alpha_lnmag": p.alpha.map(|a| a.lnmag()),
                "nature": p.nature.as_str(),
            });
            serde_json::to_string_pretty(&v)? + "\n"
        }
        Format::Csv => format!(
            "D,m,beta,alpha_sign,alpha_lnmag,nature\n{d},{m},{},{},{},{}\n",
            p.beta,
            p.alpha.map_or(String::new(), |a| a.sign().to_string()),
            p.alpha.map_or(String::new(), |a| a.lnmag().to_string()),
            p.nature.as_str()
        ),
        Format::Text => format!(
            "alpha = {}, beta = {}, {}\n",
            p.alpha.map_or("undefined".to_string(), |a| a.to_decimal_string(10)),
            p.beta,
            p.nature.as_str()
        ),
    };
    emit(output, &text, stdout)?;
    Ok(0)
}

fn feasible(n: u32, scheme: Scheme, output: &Output, stdout: &mut dyn Write) -> Result<i32> {
    if n < 1 {
        return Err(Error::InvalidRange("n must be at least 1".into()));
    }
    let w = bound_dims(n, scheme);
    let omitted = w.paper_omitted();
    let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
    let text = match output.format {
        Format::Json => {
            let v = json!({
                "n": w.n,
                "scheme": w.scheme.as_str(),
                "d_min": w.d_min,
                "d_max": w.d_max,
                "members": w.members,
                "paper_omitted": omitted,
            });
            serde_json::to_string_pretty(&v)? + "\n"
        }
        Format::Csv => {
            let mut s = String::from("D,note\n");
            for d in &w.members {
                let note = if omitted.contains(d) { "paper-omitted" } else { "" };
                s.push_str(&format!("{d},{note}\n"));
            }
            s
        }
        Format::Text => {
            let mut s = join(&w.members) + "\n";
            if !omitted.is_empty() {
                s.push_str(&format!("paper-omitted: {}\n", join(&omitted)));
            }
            s
        }
    };
    emit(output, &text, stdout)?;
    Ok(0)
}

fn table1(output: &Output, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let rows = table1_compare();
    let text = match output.format {
        Format::Text => {
            let mut s = format!(
                "{:>3} {:>2} {:>12} {:>12} {:>10}\n",
                "D", "n", "computed", "published", "log10(r)"
            );
            for r in &rows {
                s.push_str(&format!(
                    "{:>3} {:>2} {:>12} {:>12} {:>10}\n",
                    r.d,
                    r.n,
                    r.computed_e0
                        .energy()
                        .map_or(r.computed_e0.label(), |e| e.to_decimal_string(DECIMAL_DIGITS)),
                    r.paper_e0.to_decimal_string(DECIMAL_DIGITS),
                    r.ratio_log10.map_or("-".to_string(), |x| format!("{x:.3}")),
                ));
            }
            s
        }
        f => {
            let records: Vec<_> = rows.iter().map(|r| r.to_record()).collect();
            render_records(&records, f)?
        }
    };
    emit(output, &text, stdout)?;
    if !anchor_row_agrees(&rows) {
        writeln!(stderr, "(3,1) row disagrees with the published value")?;
        return Ok(2);
    }
    Ok(0)
}

/// One oracle comparison made by `verify`.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyPoint {
    pub d: u32,
    pub n: u32,
    pub scheme: Scheme,
    /// `|ln|E_min| - ln|E0||`
    pub energy_dev: f64,
    pub radius_dev: f64,
}

/// Runs the effective-potential oracle on every bound point with
/// `n ≤ max_n` and `D ≤ max_d` in both coupling schemes.
pub fn verify_sweep(max_n: u32, max_d: u32) -> Result<Vec<VerifyPoint>> {
    let mut out = Vec::new();
    for scheme in [Scheme::MEqualsN, Scheme::MEqualsOne] {
        for n in 1..=max_n {
            for d in bound_dims(n, scheme).members.into_iter().filter(|&d| d <= max_d) {
                let params = SystemParams::for_scheme(d, n, scheme, None)?;
                let q = EnergyQuery::from_green_function(d, n, params.m())?;
                let Some(e0) = e0_general(&q).energy() else {
                    continue;
                };
                let min = minimize_v_eff(&q)?;
                out.push(VerifyPoint {
                    d,
                    n,
                    scheme,
                    energy_dev: (min.e_min.lnmag() - e0.lnmag()).abs(),
                    radius_dev: min.r_star_rel_deviation(),
                });
            }
        }
    }
    Ok(out)
}

fn verify(max_n: u32, max_d: u32, output: &Output, stdout: &mut dyn Write) -> Result<i32> {
    let points = verify_sweep(max_n, max_d)?;
    let max_e = points.iter().map(|p| p.energy_dev).fold(0.0, f64::max);
    let max_r = points.iter().map(|p| p.radius_dev).fold(0.0, f64::max);
    let ok = !points.is_empty() && max_e <= VERIFY_ENERGY_TOL && max_r <= VERIFY_RADIUS_TOL;
    let text = match output.format {
        Format::Json => {
            let v = json!({
                "points": points.len(),
                "max_energy_deviation": max_e,
                "max_radius_deviation": max_r,
                "energy_tolerance": VERIFY_ENERGY_TOL,
                "radius_tolerance": VERIFY_RADIUS_TOL,
                "pass": ok,
            });
            serde_json::to_string_pretty(&v)? + "\n"
        }
        _ => {
            let mut s = format!(
                "checked {} bound points; max |Δ ln E| = {max_e:.3e}; max r* deviation = {max_r:.3e}\n",
                points.len()
            );
            if ok {
                s.push_str("oracle–closed-form max relative deviation ≤ 1e-8\n");
            } else {
                s.push_str(&format!(
                    "oracle–closed-form max relative deviation {max_e:.3e} exceeds 1e-8 (or r* deviation {max_r:.3e} exceeds 1e-9)\n"
                ));
            }
            s
        }
    };
    emit(output, &text, stdout)?;
    Ok(if ok { 0 } else { 2 })
}

fn radial(
    d: u32,
    alpha: f64,
    beta: i64,
    convention: ConventionArg,
    excitation: usize,
    output: &Output,
    stdout: &mut dyn Write,
) -> Result<i32> {
    let conv = match convention {
        ConventionArg::Full => KineticConvention::FullLaplacian,
        ConventionArg::Half => KineticConvention::HalfLaplacian,
    };
    let sol = radial_ground_state(d, alpha, beta, conv, excitation)?;
    let r_max = sol.grid.last().copied().unwrap_or(0.0);
    let conv_name = match convention {
        ConventionArg::Full => "full",
        ConventionArg::Half => "half",
    };
    let text = match output.format {
        Format::Json => {
            let v = json!({
                "D": d,
                "alpha": alpha,
                "beta": beta,
                "convention": conv_name,
                "excitation": excitation,
                "E": sol.energy,
                "nodes": sol.nodes,
                "r_max": r_max,
                "formula": Formula::OracleRadial.tag(),
            });
            serde_json::to_string_pretty(&v)? + "\n"
        }
        Format::Csv => {
            let mut s = String::from("r,u\n");
            for (r, u) in sol.grid.iter().zip(&sol.u).step_by(10) {
                s.push_str(&format!("{r},{u}\n"));
            }
            s
        }
        Format::Text => format!(
            "E = {:.8} Ha  (nodes {}, convention {conv_name}, r_max {r_max} bohr)\n",
            sol.energy, sol.nodes
        ),
    };
    emit(output, &text, stdout)?;
    Ok(0)
}
