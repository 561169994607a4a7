//! `ehrhart-forge`: builds polytopes, computes Ehrhart series numerators and
//! runs the special-simplex verification pipeline.
//!
//! Exit status: 0 on success, 1 when a mathematical verification fails, 2 on
//! bad input or an exhausted budget.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use ehrhart_forge::ehrhart::{
    magic_labeling_series, magic_square_series, ones_decomposition, series_by_counting,
    series_by_triangulation, verify_special_simplex_pipeline, CheckSection, EhrhartSeries,
    PipelineReport,
};
use ehrhart_forge::families::{
    birkhoff, equatorial_complex, eulerian_polynomial, matching_polytope, order_polytope,
    rank_ideal_simplex, MultiGraph, Poset,
};
use ehrhart_forge::polytope::{
    faces_of, find_special_simplex, read_polytope, validate_polytope, write_polytope,
    IntegerPolytope, SpecialSearch,
};
use ehrhart_forge::triangulation::{pulling_triangulation, PolytopalComplex, VertexOrder};
use ehrhart_forge::{Budgets, Error, Result};

#[derive(Parser, Debug)]
#[command(
    name = "ehrhart-forge",
    version,
    about = "Ehrhart series and special simplices of integer polytopes"
)]
struct Cli {
    /// Emit JSON instead of human-readable text.
    #[arg(long, global = true)]
    machine: bool,
    /// Largest dilation factor the lattice-point counter may use.
    #[arg(long, global = true)]
    max_dilate: Option<u64>,
    /// Search-node cap for backtracking enumerations.
    #[arg(long, global = true)]
    max_nodes: Option<u64>,
    /// Cap on face-lattice size and other enumerated families.
    #[arg(long, global = true)]
    max_faces: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Birkhoff polytope B_n of doubly stochastic matrices.
    Birkhoff {
        #[arg(long)]
        n: usize,
        action: BirkhoffAction,
    },
    /// Order polytope of a poset file.
    Poset { path: PathBuf, action: PosetAction },
    /// Perfect-matching polytope of a regular bipartite graph file.
    Graph { path: PathBuf, action: GraphAction },
    /// Polytope given in the TOML polytope format.
    Polytope {
        path: PathBuf,
        action: PolytopeAction,
        #[command(flatten)]
        choice: VertexChoice,
    },
}

#[derive(Args, Debug)]
struct VertexChoice {
    /// Vertex order as comma-separated indices; the last entry is pulled first.
    #[arg(long, value_delimiter = ',')]
    order: Option<Vec<usize>>,
    /// Special simplex vertex indices, comma-separated.
    #[arg(long, value_delimiter = ',')]
    sigma: Option<Vec<usize>>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum BirkhoffAction {
    Series,
    Triangulate,
    Verify,
    /// Write the polytope in the TOML polytope format.
    Export,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum PosetAction {
    Eulerian,
    Series,
    Equatorial,
    Verify,
    Export,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum GraphAction {
    Series,
    Verify,
    Export,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum PolytopeAction {
    Validate,
    Series,
    Triangulate,
    FindSpecial,
    Verify,
}

/// What a command printed and whether it counts as a pass.
struct Output {
    text: String,
    pass: bool,
    failure: Option<String>,
}

impl Output {
    fn ok(text: String) -> Self {
        Output {
            text,
            pass: true,
            failure: None,
        }
    }
}

struct Ctx {
    machine: bool,
    budgets: Budgets,
}

impl Ctx {
    fn render(&self, human: String, machine: serde_json::Value) -> String {
        if self.machine {
            serde_json::to_string_pretty(&machine).expect("json")
        } else {
            human
        }
    }

    fn series(&self, s: &EhrhartSeries, extra: &[(&str, i64)]) -> Output {
        let mut human = format!("h = {}", s.numerator.coeff_string());
        let mut machine = json!({
            "h": s.numerator,
            "denom_exponent": s.denom_exponent,
        });
        for (k, v) in extra {
            human.push_str(&format!(", {k} = {v}"));
            machine[*k] = json!(v);
        }
        human.push_str(&format!(", denom = (1-t)^{}", s.denom_exponent));
        Output::ok(self.render(human, machine))
    }

    fn report(&self, report: &PipelineReport) -> Output {
        let text = if self.machine {
            report.to_json()
        } else {
            report.to_string().trim_end().to_string()
        };
        Output {
            text,
            pass: report.pass,
            failure: (!report.pass)
                .then(|| format!("failed checks: {}", report.failures().join(", "))),
        }
    }

    fn export(&self, p: &IntegerPolytope) -> Output {
        Output::ok(write_polytope(p.data()).trim_end().to_string())
    }

    fn triangulation(&self, p: &IntegerPolytope, order: &VertexOrder) -> Result<Output> {
        if order.len() != p.num_vertices() {
            return Err(Error::InvalidInput(format!(
                "vertex order has {} entries, polytope has {} vertices",
                order.len(),
                p.num_vertices()
            )));
        }
        let lattice = faces_of(p, self.budgets.max_faces)?;
        let delta = pulling_triangulation(&PolytopalComplex::of_polytope(&lattice), order);
        Ok(Output::ok(
            delta.export(p.num_vertices()).trim_end().to_string(),
        ))
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

fn cmd_birkhoff(ctx: &Ctx, n: usize, action: BirkhoffAction) -> Result<Output> {
    let b = birkhoff(n)?;
    let sigma = b.cyclic_simplex();
    let order = b.order_with_simplex(&sigma)?;
    match action {
        BirkhoffAction::Series => {
            let s = magic_square_series(n, &ctx.budgets)?;
            let d = s.numerator.degree().unwrap_or(0) as i64;
            Ok(ctx.series(&s, &[("d", d)]))
        }
        BirkhoffAction::Triangulate => ctx.triangulation(&b.polytope, &order),
        BirkhoffAction::Verify => {
            let report = verify_special_simplex_pipeline(
                &format!("B_{n}"),
                &b.polytope,
                &sigma,
                &order,
                &ctx.budgets,
            )?;
            Ok(ctx.report(&report))
        }
        BirkhoffAction::Export => Ok(ctx.export(&b.polytope)),
    }
}

fn ideal_text(ideal: &ehrhart_forge::polytope::VertexSet) -> String {
    let members: Vec<String> = ideal
        .iter()
        .filter(|&e| e != 0)
        .map(|e| e.to_string())
        .collect();
    format!("{{{}}}", members.join(","))
}

fn cmd_poset(ctx: &Ctx, path: &Path, action: PosetAction) -> Result<Output> {
    let p = Poset::parse(&read(path)?)?;
    let b = &ctx.budgets;
    match action {
        PosetAction::Eulerian => {
            let w = eulerian_polynomial(&p, b.max_linear_extensions)?;
            Ok(Output::ok(ctx.render(w.coeff_string(), json!({ "w": w }))))
        }
        PosetAction::Series => {
            let op = order_polytope(&p, b)?;
            let s = series_by_counting(&op.polytope, b)?;
            let lattice = faces_of(&op.polytope, b.max_faces)?;
            let tri = series_by_triangulation(&op.polytope, &lattice, &op.default_order())?;
            if tri != s {
                return Err(Error::Verification(format!(
                    "counting gives h = {}, triangulation gives h = {}",
                    s.numerator.coeff_string(),
                    tri.numerator.coeff_string()
                )));
            }
            Ok(ctx.series(&s, &[("m", p.m() as i64)]))
        }
        PosetAction::Equatorial => {
            let eq = equatorial_complex(&p, b)?;
            let h = eq.complex.h_polynomial();
            let faces: Vec<Vec<String>> = eq
                .complex
                .maximal_faces()
                .iter()
                .map(|f| f.iter().map(|v| ideal_text(&eq.ideals[v])).collect())
                .collect();
            let mut human: Vec<String> = faces
                .iter()
                .map(|f| format!("face {}", f.join(" ")))
                .collect();
            human.push(format!("h = {}", h.coeff_string()));
            Ok(Output::ok(ctx.render(
                human.join("\n"),
                json!({ "faces": faces, "h": h }),
            )))
        }
        PosetAction::Verify => {
            let op = order_polytope(&p, b)?;
            let sigma = rank_ideal_simplex(&p, &op)?;
            let order = op.order_with_simplex(&sigma)?;
            let w = eulerian_polynomial(&p, b.max_linear_extensions)?;
            let mut report = verify_special_simplex_pipeline(
                &path.display().to_string(),
                &op.polytope,
                &sigma,
                &order,
                b,
            )?;
            let same = report.h_counting == w;
            report.add_check(
                CheckSection::HNumerator,
                "h equals W(P, t)",
                same,
                format!("W = {}", w.coeff_string()),
            );
            Ok(ctx.report(&report))
        }
        PosetAction::Export => Ok(ctx.export(&order_polytope(&p, b)?.polytope)),
    }
}

fn cmd_graph(ctx: &Ctx, path: &Path, action: GraphAction) -> Result<Output> {
    let g = MultiGraph::parse(&read(path)?)?;
    let b = &ctx.budgets;
    match action {
        GraphAction::Series => {
            let s = magic_labeling_series(&g, b)?;
            let n = g.regular_degree().unwrap_or(0) as i64;
            let m = s.dim() as i64;
            Ok(ctx.series(&s, &[("m", m), ("d", m - n + 1), ("n", n)]))
        }
        GraphAction::Verify => {
            let mp = matching_polytope(&g, b)?;
            let sigma = ones_decomposition(&mp.polytope, b)?;
            let order = mp.order_with_simplex(&sigma)?;
            let report = verify_special_simplex_pipeline(
                &path.display().to_string(),
                &mp.polytope,
                &sigma,
                &order,
                b,
            )?;
            Ok(ctx.report(&report))
        }
        GraphAction::Export => Ok(ctx.export(&matching_polytope(&g, b)?.polytope)),
    }
}

fn cmd_polytope(
    ctx: &Ctx,
    path: &Path,
    action: PolytopeAction,
    choice: &VertexChoice,
) -> Result<Output> {
    let data = read_polytope(&read(path)?)?;
    let b = &ctx.budgets;
    let report = validate_polytope(&data)?;
    let p = IntegerPolytope::new(data)?;
    let given_order = || -> Result<VertexOrder> {
        match &choice.order {
            Some(seq) => VertexOrder::new(seq.clone()),
            None => Ok(VertexOrder::identity(p.num_vertices())),
        }
    };
    match action {
        PolytopeAction::Validate => Ok(Output::ok(ctx.render(
            format!(
                "dim {}, {} vertices, {} facets",
                report.dim, report.vertex_count, report.facet_count
            ),
            json!({
                "dim": report.dim,
                "vertices": report.vertex_count,
                "facets": report.facet_count,
            }),
        ))),
        PolytopeAction::Series => {
            let s = series_by_counting(&p, b)?;
            if choice.order.is_some() {
                let lattice = faces_of(&p, b.max_faces)?;
                let tri = series_by_triangulation(&p, &lattice, &given_order()?)?;
                if tri != s {
                    return Err(Error::Verification(format!(
                        "counting gives h = {}, triangulation gives h = {}",
                        s.numerator.coeff_string(),
                        tri.numerator.coeff_string()
                    )));
                }
            }
            Ok(ctx.series(&s, &[("m", p.dim() as i64)]))
        }
        PolytopeAction::Triangulate => ctx.triangulation(&p, &given_order()?),
        PolytopeAction::FindSpecial => {
            let cert = special_simplex(&p, b)?;
            let idx: Vec<String> = cert.iter().map(ToString::to_string).collect();
            Ok(Output::ok(ctx.render(
                format!("special simplex: {}", idx.join(" ")),
                json!({ "sigma": cert }),
            )))
        }
        PolytopeAction::Verify => {
            let sigma = match &choice.sigma {
                Some(s) => s.clone(),
                None => special_simplex(&p, b)?,
            };
            let order = match &choice.order {
                Some(seq) => VertexOrder::new(seq.clone())?,
                None => {
                    let base: Vec<usize> = (0..p.num_vertices()).collect();
                    let tail: Vec<usize> = sigma.iter().rev().copied().collect();
                    VertexOrder::with_tail(&base, &tail)?
                }
            };
            let report = verify_special_simplex_pipeline(
                &path.display().to_string(),
                &p,
                &sigma,
                &order,
                b,
            )?;
            Ok(ctx.report(&report))
        }
    }
}

fn special_simplex(p: &IntegerPolytope, b: &Budgets) -> Result<Vec<usize>> {
    match find_special_simplex(p, None, b)? {
        SpecialSearch::Found(cert) => Ok(cert.vertex_indices),
        SpecialSearch::NotFound => Err(Error::Verification(
            "no special simplex found (exhaustive)".into(),
        )),
        SpecialSearch::Inconclusive(why) => Err(Error::InvalidInput(format!(
            "special simplex search inconclusive: {why}"
        ))),
    }
}

fn run(cli: &Cli) -> Result<Output> {
    let mut budgets = Budgets::default();
    if let Some(v) = cli.max_dilate {
        budgets.max_dilate = v;
    }
    if let Some(v) = cli.max_nodes {
        budgets.max_nodes = v;
    }
    if let Some(v) = cli.max_faces {
        budgets.max_faces = v;
    }
    let ctx = Ctx {
        machine: cli.machine,
        budgets,
    };
    match &cli.command {
        Command::Birkhoff { n, action } => cmd_birkhoff(&ctx, *n, *action),
        Command::Poset { path, action } => cmd_poset(&ctx, path, *action),
        Command::Graph { path, action } => cmd_graph(&ctx, path, *action),
        Command::Polytope {
            path,
            action,
            choice,
        } => cmd_polytope(&ctx, path, *action, choice),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            println!("{}", out.text);
            if out.pass {
                ExitCode::SUCCESS
            } else {
                eprintln!("verification failed: {}", out.failure.unwrap_or_default());
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { 2 } else { 1 })
        }
    }
}
