//! Command-line front end: compute, enumerate, render and verify Schubert
//! polynomials of classical types.

mod verify;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use pipedreams_core::pipedream::{
    apply_moves, bottom_blocks, bottom_dream_on, dream_sum, enumerate, reduce_to_bottom, with_thread_pool,
};
use pipedreams_core::schubert::{double_schubert, kirillov_naruse_b, schubert_bcd, schubert_via_bh};
use pipedreams_core::weyl::lehmer_code;
use pipedreams_core::{Base, GroupType, Level, PipeDream, Polynomial, SignedPermutation};
use serde_json::json;

#[derive(Parser)]
#[command(name = "pipedreams", version, about = "Schubert polynomials of classical types via signed pipe dreams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a Schubert polynomial.
    Compute {
        #[command(flatten)]
        target: Target,
        /// Number of `t` variables; selects the double polynomial.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, value_enum, default_value_t = Method::Dream)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List every reduced pipe dream of a shape.
    Enumerate {
        #[command(flatten)]
        target: Target,
        /// Use the double base with the upper staircase.
        #[arg(long)]
        double: bool,
        #[arg(long, value_enum, default_value_t = Render::Ascii)]
        render: Render,
    },
    /// Show the bottom pipe dream of a shape.
    Bottom {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value_t = Render::Ascii)]
        render: Render,
    },
    /// Reduce a pipe dream (JSON, as printed by `enumerate --render json`)
    /// to the bottom dream by admissible moves.
    Reduce {
        /// File holding one dream; `-` reads standard input.
        #[arg(long, default_value = "-")]
        input: String,
        #[arg(long, value_enum, default_value_t = Render::Ascii)]
        render: Render,
    },
    /// Run a verification suite; exits non-zero on any failure.
    Verify {
        #[arg(value_enum)]
        suite: verify::Suite,
        #[arg(long = "type", value_parser = parse_group)]
        group: Option<GroupType>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_perm)]
        perm: Option<SignedPermutation>,
        /// Rank of the exhaustive sets.
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Largest truncation level.
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Number of `t` variables for relations on double polynomials.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Also write the JSON report to this path.
        #[arg(long)]
        seed_report: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct Target {
    #[arg(long = "type", value_parser = parse_group)]
    group: GroupType,
    /// One-line notation, e.g. "-2 1" or "2~ 1".
    #[arg(long, allow_hyphen_values = true, value_parser = parse_perm)]
    perm: SignedPermutation,
    /// Number of Γ-blocks (x variables); defaults to the rank.
    #[arg(long)]
    k: Option<usize>,
}

impl Target {
    fn validated(&self) -> Result<(GroupType, SignedPermutation, usize)> {
        self.perm
            .check_in(self.group)
            .with_context(|| format!("invalid permutation for type {}", self.group))?;
        let k = if self.group == GroupType::A { 0 } else { self.k.unwrap_or(self.perm.n()) };
        Ok((self.group, self.perm.clone(), k))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Dream,
    Bh,
    Eyd,
    Cauchy,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub(crate) enum Format {
    Text,
    Latex,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Render {
    Ascii,
    Latex,
    Json,
}

fn parse_group(s: &str) -> std::result::Result<GroupType, String> {
    s.parse().map_err(|e: pipedreams_core::Error| e.to_string())
}

fn parse_perm(s: &str) -> std::result::Result<SignedPermutation, String> {
    SignedPermutation::parse(s).map_err(|e| e.to_string())
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Dream => "dream",
        Method::Bh => "bh",
        Method::Eyd => "eyd",
        Method::Cauchy => "cauchy",
    }
}

fn compute(target: &Target, m: Option<usize>, method: Method, format: Format) -> Result<String> {
    let (t, w, k) = target.validated()?;
    let n = w.n();
    let (poly, level): (Polynomial, Level) = match method {
        Method::Dream => match m {
            None => {
                let p = schubert_bcd(t, &w, k)?;
                (p.poly, p.level)
            }
            Some(m) => {
                let base = Arc::new(Base::new(t, n, k, true)?);
                (dream_sum(&base, &w)?.truncate_t(m), Level::new(n, k, m))
            }
        },
        Method::Bh => {
            if m.is_some() {
                bail!("--method bh computes single polynomials; use --method cauchy for doubles");
            }
            let p = schubert_via_bh(t, &w, k)?;
            (p.poly, p.level)
        }
        Method::Cauchy => {
            let m = m.unwrap_or(n.saturating_sub(1));
            let d = double_schubert(t, &w, k, m)?;
            (d.cauchy.poly, d.cauchy.level)
        }
        Method::Eyd => {
            if t != GroupType::B {
                bail!("--method eyd is available for type B only");
            }
            let m = m.unwrap_or(n.saturating_sub(1));
            let p = kirillov_naruse_b(&w)?;
            (p.poly.truncate_x(k).truncate_t(m), Level::new(n, k.min(n), m.min(n.saturating_sub(1))))
        }
    };
    Ok(match format {
        Format::Text => poly.to_text(),
        Format::Latex => poly.to_latex(),
        Format::Json => serde_json::to_string_pretty(&json!({
            "schema": 1,
            "command": "compute",
            "type": t.to_string(),
            "perm": w.to_string(),
            "method": method_name(method),
            "level": {"n": level.n, "k": level.k, "m": level.m},
            "polynomial": poly.to_json(),
        }))?,
    })
}

fn render_one(d: &PipeDream, render: Render) -> String {
    match render {
        Render::Ascii => d.render_ascii(),
        Render::Latex => d.render_latex(),
        Render::Json => d.to_json().to_string(),
    }
}

fn enumerate_cmd(target: &Target, double: bool, render: Render) -> Result<String> {
    let (t, w, k) = target.validated()?;
    let base = Arc::new(Base::new(t, w.n(), k, double)?);
    let dreams = enumerate(&base, &w)?;
    Ok(match render {
        Render::Json => serde_json::to_string_pretty(&json!({
            "schema": 1,
            "command": "enumerate",
            "type": t.to_string(),
            "perm": w.to_string(),
            "k": k,
            "double": double,
            "count": dreams.len(),
            "dreams": dreams.iter().map(PipeDream::to_json).collect::<Vec<_>>(),
        }))?,
        Render::Ascii => {
            let mut out = format!("count: {}\n", dreams.len());
            for (i, d) in dreams.iter().enumerate() {
                out.push_str(&format!("\n# {}  {}\n", i + 1, Polynomial::from(d.monomial())));
                out.push_str(&d.render_ascii());
            }
            out
        }
        Render::Latex => {
            let mut out = format!("% count: {}\n", dreams.len());
            for d in &dreams {
                out.push_str(&d.render_latex());
                out.push('\n');
            }
            out
        }
    })
}

fn bottom_cmd(target: &Target, render: Render) -> Result<String> {
    let (t, w, _) = target.validated()?;
    let k = if t == GroupType::A { 0 } else { target.k.unwrap_or_else(|| bottom_blocks(t, &w)) };
    let base = Arc::new(Base::new(t, w.n(), k, false)?);
    let d = bottom_dream_on(&base, &w)?;
    let code = lehmer_code(&w);
    let monomial = Polynomial::from(d.monomial());
    Ok(match render {
        Render::Json => serde_json::to_string_pretty(&json!({
            "schema": 1,
            "command": "bottom",
            "type": t.to_string(),
            "perm": w.to_string(),
            "lehmer": {"l": code.l, "n": code.n},
            "monomial": monomial.to_text(),
            "dream": d.to_json(),
        }))?,
        _ => format!(
            "lehmer code: L = {:?}, N = {:?}\nmonomial: {}\n{}",
            code.l,
            code.n,
            monomial,
            render_one(&d, render)
        ),
    })
}

fn reduce_cmd(input: &str, render: Render) -> Result<String> {
    let text = if input == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(input).with_context(|| format!("reading {input}"))?
    };
    let value: serde_json::Value = serde_json::from_str(&text).context("input is not JSON")?;
    let d = PipeDream::from_json(&value)?;
    if !d.is_reduced() {
        bail!("the input dream is not reduced");
    }
    let moves = reduce_to_bottom(&d);
    let end = apply_moves(&d, &moves)?;
    let base = d.base();
    let is_bottom = bottom_dream_on(base, &d.shape()).map(|b| b == end).unwrap_or(false);
    let pos = |i: usize| (base.cells[i].row, base.cells[i].col);
    Ok(match render {
        Render::Json => serde_json::to_string_pretty(&json!({
            "schema": 1,
            "command": "reduce",
            "shape": d.shape().to_string(),
            "moves": moves.iter().map(|m| json!({
                "source": pos(m.source),
                "target": pos(m.target),
                "kind": m.kind,
            })).collect::<Vec<_>>(),
            "is_bottom": is_bottom,
            "result": end.to_json(),
        }))?,
        _ => {
            let mut out = format!("shape: {}\nmoves: {}\n", d.shape(), moves.len());
            for m in &moves {
                out.push_str(&format!("  {:?} -> {:?}  (move {})\n", pos(m.source), pos(m.target), m.kind));
            }
            out.push_str(&format!("bottom: {is_bottom}\n"));
            out.push_str(&render_one(&end, render));
            out
        }
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    let output = match cli.command {
        Command::Compute { target, m, method, format } => compute(&target, m, method, format)?,
        Command::Enumerate { target, double, render } => enumerate_cmd(&target, double, render)?,
        Command::Bottom { target, render } => bottom_cmd(&target, render)?,
        Command::Reduce { input, render } => reduce_cmd(&input, render)?,
        Command::Verify {
            suite,
            group,
            perm,
            n,
            k,
            m,
            format,
            seed_report,
        } => {
            let opts = verify::Options { group, perm, n, k, m };
            let report = verify::run(suite, &opts)?;
            let json = serde_json::to_string_pretty(&report.to_json())?;
            if let Some(path) = seed_report {
                std::fs::write(&path, &json).with_context(|| format!("writing {}", path.display()))?;
            }
            match format {
                Format::Json => println!("{json}"),
                _ => print!("{}", report.to_text()),
            }
            return Ok(if report.failed() == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE });
        }
    };
    println!("{}", output.trim_end());
    Ok(ExitCode::SUCCESS)
}

fn main() -> Result<ExitCode> {
    let cli = Cli::parse();
    with_thread_pool(|| run(cli))
}
