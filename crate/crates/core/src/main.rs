use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ribbon_sandpile::format::{
    self, parse_arborescence, parse_chips, parse_edges, parse_tour, vertex_index, write_arborescence, write_chips,
    write_digraph, write_edges, write_graph, write_invariants, write_orientation, write_tour, Document,
};
use ribbon_sandpile::jacobian::{BernardiAction, EmbeddedGraph};
use ribbon_sandpile::ribbon::{bidirect, dual, medial, RibbonDigraph, RibbonGraph, VertexId};
use ribbon_sandpile::rotor::{rotor_action_undirected, RotorRouter};
use ribbon_sandpile::sandpile::{count_arborescences, SandpileGroup};
use ribbon_sandpile::tours::{check_root_independence, enumerate_compatible_tours, TourRotor};
use ribbon_sandpile::{fixtures, verify, Error, Result};

/// Sandpile groups, rotor-routing and tours on ribbon graphs.
///
/// FILE is a path or one of the bundled fixtures: c3, fig1, k4p, torus.
#[derive(Parser, Debug)]
#[command(name = "ribbon-sandpile", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a file and report its size and genus.
    Validate { file: String },
    /// Print the genus of the surface.
    Genus { file: String },
    /// Print the dual ribbon graph.
    Dual { file: String },
    /// Print the medial ribbon digraph.
    Medial { file: String },
    /// Print the invariant factors of the sandpile group.
    Group { file: String },
    /// Count spanning arborescences towards a root.
    Arbcount {
        file: String,
        #[arg(long)]
        root: Option<String>,
    },
    /// List the compatible Eulerian tours.
    Tours {
        file: String,
        /// Fail if there are more tours than this.
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Tour-rotor action on a tour, or on the medial tour of a quasi-tree.
    Act {
        file: String,
        #[arg(long)]
        chips: String,
        #[arg(long, conflicts_with = "quasitree")]
        tour: Option<String>,
        #[arg(long)]
        quasitree: Option<String>,
        /// Auxiliary arc to act through.
        #[arg(long)]
        arc: Option<String>,
        /// Recompute through every arc and fail on disagreement.
        #[arg(long)]
        verify: bool,
    },
    /// Rotor-routing action on a spanning tree or an arborescence.
    RotorAct {
        file: String,
        #[arg(long)]
        chips: String,
        #[arg(long)]
        root: Option<String>,
        #[arg(long, conflicts_with = "arb")]
        tree: Option<String>,
        #[arg(long)]
        arb: Option<String>,
    },
    /// Decide whether the rotor-routing action depends on the root.
    RootIndependent { file: String },
    /// List the quasi-trees.
    Quasitrees {
        file: String,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Print the Jacobian group.
    Jacobian { file: String },
    /// Map an edge vector to a chip configuration on the medial digraph.
    Phi {
        file: String,
        #[arg(long)]
        chips: String,
    },
    /// Bernardi orientation of a quasi-tree, or with --chips the Bernardi action.
    Bernardi {
        file: String,
        #[arg(long)]
        quasitree: String,
        /// First edge of the traversal.
        #[arg(long)]
        edge: Option<String>,
        #[arg(long)]
        chips: Option<String>,
    },
    /// Run a seeded verification battery.
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(verify::THEOREMS))]
        theorem: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Outcome {
    Ok(Vec<String>),
    Failed(Vec<String>),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(Outcome::Ok(lines)) => {
            print_lines(&lines);
            ExitCode::SUCCESS
        }
        Ok(Outcome::Failed(lines)) => {
            print_lines(&lines);
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn print_lines(lines: &[String]) {
    for l in lines {
        println!("{l}");
    }
}

fn read_input(file: &str) -> Result<String> {
    if Path::new(file).exists() {
        return std::fs::read_to_string(file).map_err(|e| Error::Input(format!("cannot read `{file}`: {e}")));
    }
    let name = Path::new(file).file_name().and_then(|s| s.to_str()).unwrap_or(file);
    fixtures::by_name(name).map(str::to_string).ok_or_else(|| Error::Input(format!("no such file or fixture `{file}`")))
}

enum Input {
    Digraph(RibbonDigraph),
    Graph(String),
}

fn load(file: &str) -> Result<Input> {
    let text = read_input(file)?;
    Ok(match format::parse(&text)? {
        Document::Digraph(raw) => Input::Digraph(raw.build()?),
        Document::Graph { .. } => Input::Graph(text),
    })
}

fn load_graph(file: &str) -> Result<RibbonGraph> {
    format::parse_graph(&read_input(file)?)
}

fn load_embedded(file: &str) -> Result<EmbeddedGraph> {
    format::parse_embedded(&read_input(file)?)
}

/// A digraph input as is, a graph input as its bidirected double.
fn load_digraph(file: &str) -> Result<RibbonDigraph> {
    match load(file)? {
        Input::Digraph(d) => Ok(d),
        Input::Graph(text) => Ok(bidirect(&format::parse_graph(&text)?)),
    }
}

fn root_of(d: &RibbonDigraph, root: Option<&str>) -> Result<VertexId> {
    match root {
        Some(r) => d.vertex_id(r),
        None if d.vertex_count() > 0 => Ok(VertexId(0)),
        None => Err(Error::Invalid("empty digraph".into())),
    }
}

fn edge_vector(g: &RibbonGraph, s: &str) -> Result<Vec<i64>> {
    Ok(parse_chips(s, g.edge_count(), |name| g.edge_id(name).map(|e| e.0))?.0)
}

fn run(command: Command) -> Result<Outcome> {
    let out = match command {
        Command::Validate { file } => {
            let text = read_input(&file)?;
            let (kind, diags, summary) = match format::parse(&text)? {
                Document::Digraph(raw) => {
                    let diags: Vec<String> = raw.validate().iter().map(|d| d.to_string()).collect();
                    let summary = if diags.is_empty() {
                        let d = raw.build()?;
                        vec![
                            format!("vertices {}", d.vertex_count()),
                            format!("arcs {}", d.arc_count()),
                            format!("eulerian {}", d.is_eulerian()),
                            format!("genus {}", d.genus()),
                        ]
                    } else {
                        Vec::new()
                    };
                    ("ribbon_digraph", diags, summary)
                }
                Document::Graph { graph, orientation } => {
                    let diags: Vec<String> = graph.validate().iter().map(|d| d.to_string()).collect();
                    let summary = if diags.is_empty() {
                        let g = graph.build()?;
                        format::resolve_orientation(&g, &orientation)?;
                        vec![
                            format!("vertices {}", g.vertex_count()),
                            format!("edges {}", g.edge_count()),
                            format!("genus {}", g.genus()),
                        ]
                    } else {
                        Vec::new()
                    };
                    ("ribbon_graph", diags, summary)
                }
            };
            if !diags.is_empty() {
                return Err(Error::Invalid(diags.join("; ")));
            }
            let mut lines = vec![format!("valid {kind}")];
            lines.extend(summary);
            lines
        }
        Command::Genus { file } => {
            let genus = match load(&file)? {
                Input::Digraph(d) => d.genus(),
                Input::Graph(text) => format::parse_graph(&text)?.genus(),
            };
            vec![format!("genus {genus}")]
        }
        Command::Dual { file } => vec![write_graph(&dual(&load_graph(&file)?)).trim_end().to_string()],
        Command::Medial { file } => vec![write_digraph(&medial(&load_graph(&file)?)).trim_end().to_string()],
        Command::Group { file } => {
            let group = SandpileGroup::new(&load_digraph(&file)?)?;
            vec![write_invariants(&group.invariant_factors()), format!("order {}", group.order())]
        }
        Command::Arbcount { file, root } => {
            let d = load_digraph(&file)?;
            d.require_eulerian()?;
            let v = root_of(&d, root.as_deref())?;
            vec![format!("root {}", d.vertex_name(v)), format!("arborescences {}", count_arborescences(&d, v))]
        }
        Command::Tours { file, budget } => {
            let d = load_digraph(&file)?;
            let tours = enumerate_compatible_tours(&d)?;
            if let Some(b) = budget {
                if tours.len() > b {
                    return Err(Error::Budget(format!("{} tours exceed the budget {b}", tours.len())));
                }
            }
            let mut lines: Vec<String> = tours.iter().map(|t| write_tour(&d, t)).collect();
            lines.push(format!("count {}", tours.len()));
            lines
        }
        Command::Act { file, chips, tour, quasitree, arc, verify } => {
            let act = |tr: &TourRotor, x, t| match (&arc, verify) {
                (_, true) => tr.act_verified(x, t),
                (Some(a), false) => tr.act_via(x, t, tr.digraph().arc_id(a)?),
                (None, false) => tr.act(x, t),
            };
            if let Some(q) = quasitree {
                let eg = load_embedded(&file)?;
                let m = eg.medial();
                let x = parse_chips(&chips, m.vertex_count(), vertex_index(m))?;
                let q = parse_edges(eg.graph(), &q, "quasitree")?;
                let tr = TourRotor::new(m)?;
                let moved = act(&tr, &x, &eg.quasitree_to_tour(&q)?)?;
                vec![write_edges(eg.graph(), "quasitree", &eg.tour_to_quasitree(&moved)?)]
            } else {
                let d = load_digraph(&file)?;
                let tour = tour.ok_or_else(|| Error::Invalid("act needs --tour or --quasitree".into()))?;
                let x = parse_chips(&chips, d.vertex_count(), vertex_index(&d))?;
                let t = parse_tour(&d, &tour)?;
                let tr = TourRotor::new(&d)?;
                vec![write_tour(&d, &act(&tr, &x, &t)?)]
            }
        }
        Command::RotorAct { file, chips, root, tree, arb } => {
            if let Some(tree) = tree {
                let g = load_graph(&file)?;
                let d = bidirect(&g);
                let v = root_of(&d, root.as_deref())?;
                let x = parse_chips(&chips, d.vertex_count(), vertex_index(&d))?;
                let t = parse_edges(&g, &tree, "tree")?;
                vec![write_edges(&g, "tree", &rotor_action_undirected(&g, v, &x, &t)?)]
            } else {
                let d = load_digraph(&file)?;
                let arb = arb.ok_or_else(|| Error::Invalid("rotor-act needs --tree or --arb".into()))?;
                let t = parse_arborescence(&d, &arb)?;
                if let Some(r) = root {
                    if d.vertex_id(&r)? != t.root() {
                        return Err(Error::NotArborescence(format!("--arb is not rooted at `{r}`")));
                    }
                }
                let x = parse_chips(&chips, d.vertex_count(), vertex_index(&d))?;
                vec![write_arborescence(&d, &RotorRouter::new(&d)?.act(t.root(), &x, &t)?)]
            }
        }
        Command::RootIndependent { file } => {
            let g = load_graph(&file)?;
            let d = bidirect(&g);
            let res = check_root_independence(&g)?;
            let mut lines = vec![format!("independent {}", res.independent)];
            for ((u, w), y) in &res.shifts {
                let chips = write_chips(|i| d.vertex_name(VertexId(i)).to_string(), y);
                lines.push(format!("shift {} {} {chips}", g.vertex_name(*u), g.vertex_name(*w)));
            }
            if let Some(wit) = &res.witness {
                let (u, w) = wit.roots;
                lines.push(format!("witness roots={},{} {}", g.vertex_name(u), g.vertex_name(w), write_edges(&g, "tree", &wit.tree)));
            }
            lines
        }
        Command::Quasitrees { file, budget } => {
            let eg = load_embedded(&file)?;
            let qs = eg.enumerate_quasitrees()?;
            if let Some(b) = budget {
                if qs.len() > b {
                    return Err(Error::Budget(format!("{} quasi-trees exceed the budget {b}", qs.len())));
                }
            }
            let mut lines: Vec<String> = qs.iter().map(|q| write_edges(eg.graph(), "quasitree", q)).collect();
            lines.push(format!("count {}", qs.len()));
            lines
        }
        Command::Jacobian { file } => {
            let jac = load_embedded(&file)?.jacobian()?;
            vec![
                write_invariants(&jac.presentation().invariant_factors()),
                format!("order {}", jac.order()),
                format!("cycles {}", jac.cycles().len()),
            ]
        }
        Command::Phi { file, chips } => {
            let eg = load_embedded(&file)?;
            let x = edge_vector(eg.graph(), &chips)?;
            let m = eg.medial();
            vec![write_chips(|i| m.vertex_name(VertexId(i)).to_string(), &eg.phi(&x)?)]
        }
        Command::Bernardi { file, quasitree, edge, chips } => {
            let eg = load_embedded(&file)?;
            let g = eg.graph();
            let q = parse_edges(g, &quasitree, "quasitree")?;
            let e0 = match edge {
                Some(e) => g.edge_id(&e)?,
                None => ribbon_sandpile::ribbon::EdgeId(0),
            };
            match chips {
                None => vec![write_orientation(g, &eg.bernardi_orientation(&q, e0)?)],
                Some(c) => {
                    let x = edge_vector(g, &c)?;
                    vec![write_edges(g, "quasitree", &BernardiAction::new(&eg, e0)?.act(&x, &q)?)]
                }
            }
        }
        Command::Verify { theorem, seed } => {
            let report = verify::run(&theorem, seed)?;
            let lines = report.to_string().lines().map(str::to_string).collect();
            return Ok(if report.passed() { Outcome::Ok(lines) } else { Outcome::Failed(lines) });
        }
    };
    Ok(Outcome::Ok(out))
}
