use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use chromlag::chromatic::{
    brute_force_moduli_count, chromatic_polynomial, fillability_obstruction, moduli_count_poly, BRUTE_FORCE_LIMIT,
};
use chromlag::homlattice::{
    blowup_lattice_split, h1_presentation, presets as phases, validate_phase_framing, PhaseFraming,
};
use chromlag::io;
use chromlag::periods::{blowup_period_check, build_chart, default_gauge, Gauge};
use chromlag::ribbon::{presets as graphs, RibbonGraph};
use chromlag::superpot::{self, bps_invert, li2_form, PipelineOptions, TwistOrientation, DEFAULT_ORDER, DEFAULT_SEED};
use chromlag::Error;
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "chromlag", version, about = "Chromatic Lagrangians of cubic planar graphs")]
struct Cli {
    /// Print a JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized verification.
    #[arg(long, global = true, env = "CHROMLAG_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a graph and print its counts.
    Validate {
        /// Preset name (theta, tetrahedron, prism, cube) or graph file.
        #[arg(long)]
        graph: String,
    },
    /// Chromatic polynomial of the dual and the point-count polynomial.
    Chromatic {
        #[arg(long)]
        graph: String,
    },
    /// Point count over F_q, by polynomial and by enumeration.
    Count {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        q: u64,
    },
    /// Compare the point count with a torus chart.
    Fillability {
        #[arg(long)]
        graph: String,
    },
    /// First homology lattice and its intersection form.
    Lattice {
        #[arg(long)]
        graph: String,
        /// Also validate a phase (preset or file).
        #[arg(long)]
        phase: Option<String>,
    },
    /// Cross-ratio coordinates on the standard chart.
    Periods {
        #[arg(long)]
        graph: String,
        /// Three faces sent to 0, 1, infinity (indices or labels).
        #[arg(long)]
        gauge: Option<String>,
    },
    /// Framed superpotential and BPS numbers.
    Superpotential {
        /// Defaults to the graph of a phase preset.
        #[arg(long)]
        graph: Option<String>,
        #[arg(long)]
        gauge: Option<String>,
        /// Preset (tetra-p, prism-M, cube-std) or phase file.
        #[arg(long)]
        phase: String,
        /// "zero", an integer k (k times the identity) or a JSON matrix.
        #[arg(long, allow_hyphen_values = true)]
        framing: Option<String>,
        /// Comma separated twist signs, replacing signs_i * (-1)^{M_ii}.
        #[arg(long, allow_hyphen_values = true)]
        signs: Option<String>,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: u32,
        /// Use U = s U' V^{-M} instead of U = s U' V^{M}.
        #[arg(long)]
        flip_twist: bool,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// BPS numbers from a file of series coefficients.
    Bps {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        order: Option<u32>,
    },
    /// Replace a vertex by a triangle.
    Blowup {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        vertex: usize,
        /// Write the new graph document here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Flip an edge.
    Edgemove {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        edge: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::UnknownPreset(_) => Failure::Usage(e.to_string()),
            other => Failure::Domain(other),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn read_file(path: &std::path::Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &std::path::Path, text: &str) -> CliResult<()> {
    std::fs::write(path, format!("{text}\n")).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

fn load_graph(src: &str) -> CliResult<RibbonGraph> {
    if graphs::NAMES.contains(&src) || src == "tetra" {
        return Ok(graphs::by_name(src)?);
    }
    let path = std::path::Path::new(src);
    if !path.exists() {
        return Err(usage(format!(
            "{src:?} is neither a preset ({}) nor an existing file",
            graphs::NAMES.join(", ")
        )));
    }
    Ok(io::parse_graph(&read_file(path)?)?)
}

fn load_phase(src: &str) -> CliResult<PhaseFraming> {
    if phases::graph_of(src).is_some() {
        return Ok(phases::by_name(src)?);
    }
    let path = std::path::Path::new(src);
    if !path.exists() {
        return Err(usage(format!(
            "{src:?} is neither a phase preset ({}) nor an existing file",
            phases::NAMES.join(", ")
        )));
    }
    Ok(io::parse_phase(&read_file(path)?)?)
}

fn parse_gauge(graph: &RibbonGraph, s: &str) -> CliResult<Gauge> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(usage(format!("--gauge needs three faces, got {s:?}")));
    }
    let mut out = [0usize; 3];
    for (slot, p) in out.iter_mut().zip(&parts) {
        *slot = match p.parse::<usize>() {
            Ok(f) => f,
            Err(_) => graph
                .face_labels()
                .iter()
                .find(|(_, l)| l.as_str() == *p)
                .map(|(&f, _)| f)
                .ok_or_else(|| usage(format!("unknown face {p:?} in --gauge")))?,
        };
    }
    Ok(out)
}

fn parse_framing(s: &str, g: usize) -> CliResult<Vec<Vec<i64>>> {
    if s == "zero" {
        return Ok(vec![vec![0; g]; g]);
    }
    if let Ok(k) = s.trim().parse::<i64>() {
        return Ok((0..g)
            .map(|i| (0..g).map(|j| if i == j { k } else { 0 }).collect())
            .collect());
    }
    let m: Vec<Vec<i64>> = serde_json::from_str(s)
        .map_err(|e| usage(format!("--framing is not \"zero\", an integer or a matrix: {e}")))?;
    if m.len() != g || m.iter().any(|r| r.len() != g) {
        return Err(usage(format!("--framing must be {g}x{g}")));
    }
    Ok(m)
}

fn parse_signs(s: &str, g: usize) -> CliResult<Vec<i64>> {
    let v: Vec<i64> = s
        .split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| usage(format!("--signs must be comma separated integers, got {s:?}")))?;
    if v.len() != g || v.iter().any(|&x| x != 1 && x != -1) {
        return Err(usage(format!("--signs needs {g} entries, each 1 or -1")));
    }
    Ok(v)
}

fn stats_line(g: &RibbonGraph) -> String {
    let s = g.stats();
    format!("{{v:{},e:{},f:{},g:{}}}", s.v, s.e, s.f, s.g)
}

fn fmt_exp(d: &[u32]) -> String {
    let parts: Vec<String> = d.iter().map(u32::to_string).collect();
    format!("({})", parts.join(","))
}

fn fmt_matrix(m: &[Vec<i64>]) -> String {
    serde_json::to_string(m).expect("matrix")
}

/// Expected Li₂ form for the zero-framed presets.
fn golden(phase: &str, framing: &[Vec<i64>]) -> Option<&'static str> {
    if framing.iter().flatten().any(|&x| x != 0) {
        return None;
    }
    match phase {
        "tetra-p" => Some("Li₂(U)"),
        "prism-M" | "prism-m" => Some("Li₂(U1) + Li₂(U2)"),
        "cube-std" => Some("Li₂(U1) + Li₂(U2) + Li₂(U3) - Li₂(U1*U2) - Li₂(U1*U3)"),
        _ => None,
    }
}

struct Output {
    text: String,
    doc: Value,
}

fn run(cli: &Cli) -> CliResult<Output> {
    let mut t = String::new();
    let doc = match &cli.command {
        Command::Validate { graph } => {
            let g = load_graph(graph)?;
            writeln!(t, "{}", stats_line(&g)).unwrap();
            writeln!(t, "simple: {}", if g.is_simple() { "yes" } else { "no" }).unwrap();
            if let Some(d) = g.simplicity_defect() {
                writeln!(t, "defect: {d}").unwrap();
            }
            json!({"stats": g.stats(), "simple": g.is_simple(), "graph": io::GraphDoc::from_graph(&g)})
        }
        Command::Chromatic { graph } => {
            let g = load_graph(graph)?;
            let chi = chromatic_polynomial(&g.dual());
            let m = moduli_count_poly(&g)?;
            writeln!(t, "dual chromatic polynomial: {}", chi.fmt_var("q")).unwrap();
            writeln!(t, "point count: {}", m.fmt_var("q")).unwrap();
            json!({"dual_chromatic": chi.fmt_var("q"), "moduli_count": m.fmt_var("q")})
        }
        Command::Count { graph, q } => {
            let g = load_graph(graph)?;
            if *q < 2 {
                return Err(usage("--q must be at least 2"));
            }
            let m = moduli_count_poly(&g)?;
            let by_poly = m.eval(&(*q).into());
            writeln!(t, "q = {q}").unwrap();
            writeln!(t, "polynomial {}: {by_poly}", m.fmt_var("q")).unwrap();
            let brute = match brute_force_moduli_count(&g, *q) {
                Ok(n) => {
                    writeln!(t, "enumeration: {n}").unwrap();
                    writeln!(t, "agree: {}", if n == by_poly { "yes" } else { "no" }).unwrap();
                    if n != by_poly {
                        return Err(Failure::Domain(Error::VerificationFailed(format!(
                            "enumeration gives {n}, polynomial gives {by_poly}"
                        ))));
                    }
                    Some(n.to_string())
                }
                Err(Error::TooLarge(_)) => {
                    writeln!(t, "enumeration: skipped (more than {BRUTE_FORCE_LIMIT} colorings)").unwrap();
                    None
                }
                Err(e) => return Err(e.into()),
            };
            json!({"q": q, "polynomial": m.fmt_var("q"), "count": by_poly.to_string(), "enumeration": brute})
        }
        Command::Fillability { graph } => {
            let g = load_graph(graph)?;
            let r = fillability_obstruction(&g)?;
            writeln!(t, "genus: {}", r.genus).unwrap();
            writeln!(t, "point count: {}", r.moduli_poly.fmt_var("q")).unwrap();
            writeln!(t, "torus:       {}", r.torus_poly.fmt_var("q")).unwrap();
            writeln!(
                t,
                "q^{} coefficients: {} vs {}",
                r.genus - 1,
                r.second_coeff_moduli,
                r.second_coeff_torus
            )
            .unwrap();
            writeln!(
                t,
                "verdict: {}",
                if r.obstructed {
                    "obstructed, no torus chart"
                } else {
                    "not obstructed"
                }
            )
            .unwrap();
            serde_json::to_value(&r).unwrap()
        }
        Command::Lattice { graph, phase } => {
            let g = load_graph(graph)?;
            let pres = h1_presentation(&g)?;
            writeln!(t, "genus: {}", pres.genus).unwrap();
            writeln!(t, "rank: {}", pres.rank()).unwrap();
            writeln!(t, "face relation invariant factors: {:?}", pres.invariant_factors).unwrap();
            if !pres.torsion.is_empty() {
                writeln!(t, "saturated away: {:?}", pres.torsion).unwrap();
            }
            writeln!(t, "intersection form:\n{}", pres.intersection_form).unwrap();
            writeln!(t, "basis:").unwrap();
            for b in &pres.basis {
                writeln!(t, "  {:?}", b.0).unwrap();
            }
            writeln!(t, "induced form:\n{}", pres.induced_form).unwrap();
            let mut doc = serde_json::to_value(&pres).unwrap();
            if let Some(p) = phase {
                let pf = load_phase(p)?;
                let rep = validate_phase_framing(&pres, &pf)?;
                writeln!(t, "phase: valid").unwrap();
                writeln!(t, "lift/kernel pairings: {}", fmt_matrix(&rep.lift_kernel_pairings)).unwrap();
                doc["phase"] = serde_json::to_value(&rep).unwrap();
            }
            doc
        }
        Command::Periods { graph, gauge } => {
            let g = load_graph(graph)?;
            let gauge = gauge.as_deref().map(|s| parse_gauge(&g, s)).transpose()?;
            let chart = build_chart(&g, gauge)?;
            let names = chart.var_names();
            let gn: Vec<String> = chart.gauge.iter().map(|&f| g.face_name(f)).collect();
            writeln!(t, "gauge: {} -> 0, {} -> 1, {} -> inf", gn[0], gn[1], gn[2]).unwrap();
            if !chart.adjacent_gauge {
                writeln!(t, "note: gauge faces are not pairwise adjacent").unwrap();
            }
            let frees: Vec<String> = chart
                .free_faces
                .iter()
                .zip(&names)
                .map(|(&f, n)| format!("{} = {n}", g.face_name(f)))
                .collect();
            writeln!(t, "free faces: {}", frees.join(", ")).unwrap();
            let mut edges = Vec::new();
            for (e, x) in chart.edge_values.iter().enumerate() {
                let s = x.fmt_with(&names);
                writeln!(t, "x{e} = {s}").unwrap();
                edges.push(s);
            }
            writeln!(t, "face relations: ok").unwrap();
            json!({"gauge": chart.gauge, "free_faces": chart.free_faces, "variables": names, "edges": edges})
        }
        Command::Superpotential {
            graph,
            gauge,
            phase,
            framing,
            signs,
            order,
            flip_twist,
            out,
        } => {
            let graph_src = match graph {
                Some(s) => s.clone(),
                None => phases::graph_of(phase)
                    .ok_or_else(|| usage("--graph is required unless --phase is a preset"))?
                    .to_string(),
            };
            let g = load_graph(&graph_src)?;
            let mut pf = load_phase(phase)?;
            let genus = pf.genus();
            if let Some(f) = framing {
                pf = pf.with_framing(parse_framing(f, genus)?);
            }
            let gauge = gauge.as_deref().map(|s| parse_gauge(&g, s)).transpose()?;
            let opts = PipelineOptions {
                order: *order,
                gauge,
                orientation: if *flip_twist {
                    TwistOrientation::Flipped
                } else {
                    TwistOrientation::Standard
                },
                signs_override: signs.as_deref().map(|s| parse_signs(s, genus)).transpose()?,
                seed: cli.seed,
            };
            let r = superpot::pipeline(&g, &pf, &opts)?;
            writeln!(t, "seed: {}", cli.seed).unwrap();
            writeln!(t, "graph: {graph_src} {}", stats_line(&g)).unwrap();
            writeln!(t, "elimination: {:?}", r.elimination).unwrap();
            writeln!(t, "zero-framing relations:").unwrap();
            for rel in &r.zero_framing_relations {
                writeln!(t, "  {rel} = 0").unwrap();
            }
            writeln!(t, "framing: {}", fmt_matrix(&r.framing)).unwrap();
            writeln!(t, "signs: {:?}", r.signs).unwrap();
            writeln!(t, "twist: {:?}", r.orientation).unwrap();
            writeln!(t, "K (order {}):", r.order).unwrap();
            for e in &r.k_entries {
                writeln!(t, "  {} {}", fmt_exp(&e.d), e.value).unwrap();
            }
            writeln!(t, "a:").unwrap();
            for e in &r.a_entries {
                writeln!(t, "  {} {}", fmt_exp(&e.d), e.value).unwrap();
            }
            writeln!(t, "integral: {}", if r.integral { "yes" } else { "no" }).unwrap();
            if let Some(w) = &r.li2_form {
                writeln!(t, "W = {w}").unwrap();
            }
            let golden_ok = golden(phase, &pf.framing).map(|w| r.li2_form.as_deref() == Some(w));
            if golden_ok == Some(false) {
                writeln!(
                    t,
                    "warning: {phase} does not reproduce its reference superpotential; try {}",
                    if *flip_twist {
                        "without --flip-twist"
                    } else {
                        "--flip-twist"
                    }
                )
                .unwrap();
            }
            let mut doc = serde_json::to_value(&r).unwrap();
            doc["seed"] = json!(cli.seed);
            doc["graph"] = json!(graph_src);
            doc["golden_match"] = json!(golden_ok);
            if let Some(path) = out {
                write_file(path, &serde_json::to_string_pretty(&doc).unwrap())?;
                writeln!(t, "report written to {}", path.display()).unwrap();
            }
            doc
        }
        Command::Bps { input, order } => {
            let inp = io::parse_bps_input(&read_file(input)?)?;
            let k = inp.coeffs()?;
            let n = order.unwrap_or(inp.order);
            let (a, integral) = bps_invert(&k, inp.genus, n);
            writeln!(t, "a (order {n}):").unwrap();
            let mut keys: Vec<&Vec<u32>> = a.keys().collect();
            keys.sort_by(|x, y| x.iter().sum::<u32>().cmp(&y.iter().sum::<u32>()).then(x.cmp(y)));
            let mut entries = Vec::new();
            for d in keys {
                writeln!(t, "  {} {}", fmt_exp(d), a[d]).unwrap();
                entries.push(json!({"d": d, "value": a[d].to_string()}));
            }
            writeln!(t, "integral: {}", if integral { "yes" } else { "no" }).unwrap();
            let form = integral.then(|| li2_form(&a, inp.genus));
            if let Some(w) = &form {
                writeln!(t, "W = {w}").unwrap();
            }
            json!({"order": n, "genus": inp.genus, "a": entries, "integral": integral, "li2_form": form})
        }
        Command::Blowup { graph, vertex, out } => {
            let g = load_graph(graph)?;
            let b = g.blow_up_detailed(*vertex)?;
            let split = blowup_lattice_split(&g, *vertex)?;
            let (gauge, _) = default_gauge(&g);
            let periods = blowup_period_check(&g, *vertex, Some(gauge))?;
            writeln!(t, "before: {}", stats_line(&g)).unwrap();
            writeln!(t, "after:  {}", stats_line(&b.graph)).unwrap();
            writeln!(t, "exceptional edges: {:?}", b.exceptional_edges).unwrap();
            writeln!(t, "triangle face: {}", b.triangle_face).unwrap();
            writeln!(t, "lattice: form preserved, image orthogonal to exceptional edges").unwrap();
            writeln!(
                t,
                "periods: {} edge ratios negated, {} edges unchanged",
                periods.negated, periods.unchanged
            )
            .unwrap();
            let mut count = None;
            if g.is_simple() {
                let before = moduli_count_poly(&g)?;
                let after = moduli_count_poly(&b.graph)?;
                writeln!(t, "point count: {} -> {}", before.fmt_var("q"), after.fmt_var("q")).unwrap();
                count = Some(json!({"before": before.fmt_var("q"), "after": after.fmt_var("q")}));
            }
            let gdoc = io::GraphDoc::from_graph(&b.graph);
            if let Some(path) = out {
                write_file(path, &io::to_json(&gdoc))?;
                writeln!(t, "graph written to {}", path.display()).unwrap();
            }
            json!({
                "stats": b.graph.stats(),
                "exceptional_edges": b.exceptional_edges,
                "triangle_face": b.triangle_face,
                "lattice": split,
                "periods": periods,
                "point_count": count,
                "graph": gdoc,
            })
        }
        Command::Edgemove { graph, edge, out } => {
            let g = load_graph(graph)?;
            let m = g.edge_move(*edge)?;
            writeln!(t, "before: {}", stats_line(&g)).unwrap();
            writeln!(t, "after:  {}", stats_line(&m)).unwrap();
            writeln!(t, "simple: {}", if m.is_simple() { "yes" } else { "no" }).unwrap();
            let sizes: Vec<usize> = m.faces().iter().map(Vec::len).collect();
            writeln!(t, "face sizes: {sizes:?}").unwrap();
            let gdoc = io::GraphDoc::from_graph(&m);
            if let Some(path) = out {
                write_file(path, &io::to_json(&gdoc))?;
                writeln!(t, "graph written to {}", path.display()).unwrap();
            }
            json!({"stats": m.stats(), "simple": m.is_simple(), "face_sizes": sizes, "graph": gdoc})
        }
    };
    Ok(Output { text: t, doc })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.doc).unwrap());
            } else {
                print!("{}", out.text);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
