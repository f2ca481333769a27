use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use freecover::analytic::{
    monodromy_traced, ns_crosscheck, trace_csv, ContinuationOptions, PolyCovering,
};
use freecover::covering::{
    artin_certificate_with_bound, cayley_covering, grid, grid_basis, grid_lift,
    homology_image_check, is_regular, CayleyGroup, GridPoint, GroupElement, DEFAULT_ARTIN_BOUND,
};
use freecover::graph::{coset_graph, ns_check, rank};
use freecover::{Error, LabeledGraph, Permutation, SubgroupGraph, Word};
use num_complex::Complex64;
use serde_json::{json, Value};

#[derive(Debug, Parser)]
#[command(
    name = "freecover",
    version,
    about = "Free groups, graph coverings and polynomial monodromy"
)]
struct Cli {
    /// Emit JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Word algebra in the free group of the given rank.
    #[command(subcommand)]
    Word(WordCommand),
    /// The truncated grid G_n and lifting to the infinite grid.
    #[command(subcommand)]
    Grid(GridCommand),
    /// Folded core graph of the subgroup generated by words.
    Stallings(StallingsArgs),
    /// Nielsen–Schreier rank check for a graph file or a word list.
    NsCheck(NsCheckArgs),
    /// Schreier coset graph of a permutation action.
    Coset(CosetArgs),
    /// Regularity and deck group of a finite covering.
    Regular(RegularArgs),
    /// Cayley graph of a finite group as a covering of the bouquet.
    Cayley(CayleyArgs),
    /// Monodromy of a monic polynomial covering.
    Monodromy(MonodromyArgs),
    /// Rank certificate for the loops of G_n inside the commutator subgroup.
    Artin(ArtinArgs),
    /// Whether every basis loop of G_n abelianizes to zero.
    HomologyCheck(NArg),
}

#[derive(Debug, Subcommand)]
enum WordCommand {
    /// Freely reduce a word.
    Reduce(OneWord),
    /// Exponent sum of each generator.
    Abelianize(OneWord),
    /// Reduced commutator u v u^-1 v^-1.
    Commutator(TwoWords),
    /// Whether the word lies in the commutator subgroup.
    MemberC2(OneWord),
}

#[derive(Debug, Args)]
struct OneWord {
    #[arg(long, default_value_t = 2)]
    rank: usize,
    word: String,
}

#[derive(Debug, Args)]
struct TwoWords {
    #[arg(long, default_value_t = 2)]
    rank: usize,
    u: String,
    v: String,
}

#[derive(Debug, Subcommand)]
enum GridCommand {
    /// Rank n^2 of the graph G_n.
    Rank { n: usize },
    /// Loop words spanning the fundamental group of G_n.
    Basis { n: usize },
    /// Endpoint of a word lifted to the infinite grid.
    Lift {
        word: String,
        /// Start point `x,y`.
        #[arg(long, value_parser = parse_point, default_value = "0,0", allow_hyphen_values = true)]
        start: GridPoint,
    },
}

#[derive(Debug, Args)]
struct WordSource {
    #[arg(long, default_value_t = 2)]
    rank: usize,
    #[arg(long, num_args = 1..)]
    words: Vec<String>,
    /// File with one word per line.
    #[arg(long)]
    words_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct StallingsArgs {
    #[command(flatten)]
    source: WordSource,
    /// Write the graph in DOT format to this file.
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct NsCheckArgs {
    /// Graph file in the JSON interchange format.
    #[arg(long, conflicts_with_all = ["words", "words_file"])]
    graph: Option<PathBuf>,
    #[command(flatten)]
    source: WordSource,
    /// Number of generators; defaults to the graph's rank.
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Debug, Args)]
struct CosetArgs {
    /// One image array per generator, e.g. `1,2,0`.
    #[arg(long, num_args = 1.., required = true, value_parser = parse_perm)]
    perms: Vec<Permutation>,
    #[arg(long, default_value_t = 0)]
    basepoint: usize,
    /// Write the graph JSON to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct RegularArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Longest word tried for condition (iii); defaults to twice the sheet count.
    #[arg(long)]
    budget: Option<usize>,
}

#[derive(Debug, Args)]
struct CayleyArgs {
    /// `abelian:m1,m2,..` or `perm:n`.
    #[arg(long, value_parser = parse_group)]
    group: CayleyGroup,
    /// Generator images: coordinate vectors or image arrays, comma separated.
    #[arg(long, num_args = 1.., required = true, allow_hyphen_values = true)]
    gens: Vec<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct MonodromyArgs {
    /// Coefficients in descending powers; complex entries as `re:im`.
    #[arg(long, value_parser = parse_poly, allow_hyphen_values = true)]
    poly: Poly,
    /// Base value `re:im` or `re`.
    #[arg(long, value_parser = parse_complex, default_value = "0", allow_hyphen_values = true)]
    base: Complex64,
    /// Directory for per-lift CSV traces.
    #[arg(long)]
    trace_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ArtinArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = DEFAULT_ARTIN_BOUND)]
    bound: usize,
}

#[derive(Debug, Args)]
struct NArg {
    #[arg(long)]
    n: usize,
}

fn parse_point(s: &str) -> Result<GridPoint, String> {
    let (x, y) = s.split_once(',').ok_or("expected x,y")?;
    let p = |t: &str| t.trim().parse::<i64>().map_err(|e| e.to_string());
    Ok(GridPoint::new(p(x)?, p(y)?))
}

fn parse_usizes(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}")))
        .collect()
}

fn parse_perm(s: &str) -> Result<Permutation, String> {
    Permutation::new(parse_usizes(s)?).map_err(|e| e.to_string())
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let f = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    match s.split_once(':') {
        Some((re, im)) => Ok(Complex64::new(f(re)?, f(im)?)),
        None => Ok(Complex64::new(f(s)?, 0.0)),
    }
}

#[derive(Debug, Clone)]
struct Poly(Vec<Complex64>);

fn parse_poly(s: &str) -> Result<Poly, String> {
    s.split(',')
        .map(parse_complex)
        .collect::<Result<_, _>>()
        .map(Poly)
}

fn parse_group(s: &str) -> Result<CayleyGroup, String> {
    match s.split_once(':') {
        Some(("abelian", moduli)) => Ok(CayleyGroup::Abelian(
            moduli
                .split(',')
                .map(|t| t.trim().parse::<u64>().map_err(|e| e.to_string()))
                .collect::<Result<_, _>>()?,
        )),
        Some(("perm", n)) => Ok(CayleyGroup::Permutations(
            n.trim()
                .parse()
                .map_err(|e: std::num::ParseIntError| e.to_string())?,
        )),
        _ => Err("expected abelian:m1,m2,.. or perm:n".into()),
    }
}

fn read_words(src: &WordSource) -> Result<Vec<Word>, Error> {
    let mut texts = src.words.clone();
    if let Some(path) = &src.words_file {
        let body = fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
        texts.extend(
            body.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .map(String::from),
        );
    }
    texts.iter().map(|t| Word::parse(t, src.rank)).collect()
}

fn read_graph(path: &PathBuf) -> Result<LabeledGraph, Error> {
    let body = fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
    LabeledGraph::from_json_str(&body)
}

fn write_file(path: &PathBuf, body: &str) -> Result<(), Error> {
    fs::write(path, body).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}

fn graph_value(g: &LabeledGraph) -> Value {
    serde_json::to_value(g.to_json()).expect("graph JSON is serializable")
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report is serializable")
}

/// Output of one command: plain text, or a JSON value.
enum Output {
    Text(String),
    Json(Value),
}

fn text(s: impl Into<String>) -> Output {
    Output::Text(s.into())
}

fn execute(cmd: Command, json: bool) -> Result<Output, Error> {
    Ok(match cmd {
        Command::Word(w) => word_command(w, json)?,
        Command::Grid(GridCommand::Rank { n }) => {
            let r = rank(&grid(n))?;
            if json {
                Output::Json(json!({ "n": n, "rank": r }))
            } else {
                text(r.to_string())
            }
        }
        Command::Grid(GridCommand::Basis { n }) => {
            let basis = grid_basis(n)?;
            if json {
                Output::Json(json!({ "n": n, "basis": basis }))
            } else {
                text(
                    basis
                        .iter()
                        .map(Word::to_string)
                        .collect::<Vec<_>>()
                        .join("\n"),
                )
            }
        }
        Command::Grid(GridCommand::Lift { word, start }) => {
            let w = Word::parse(&word, 2)?;
            let end = grid_lift(&w, start)?;
            if json {
                Output::Json(
                    json!({ "start": [start.x, start.y], "end": [end.x, end.y], "closed": end == start }),
                )
            } else {
                text(format!("({}, {})", end.x, end.y))
            }
        }
        Command::Stallings(args) => {
            let words = read_words(&args.source)?;
            let sg = SubgroupGraph::from_words(args.source.rank, &words)?;
            if let Some(path) = &args.dot {
                write_file(path, &sg.graph().to_dot())?;
            }
            subgroup_output(&sg, json)
        }
        Command::NsCheck(args) => {
            let g = match &args.graph {
                Some(path) => read_graph(path)?,
                None => SubgroupGraph::from_words(args.source.rank, &read_words(&args.source)?)?
                    .graph()
                    .clone(),
            };
            let cert = ns_check(args.k.unwrap_or(g.rank()), &g)?;
            if json {
                Output::Json(to_value(&cert))
            } else {
                let predicted = cert.predicted_rank.map_or("none".into(), |p| p.to_string());
                text(format!(
                    "k {}\nindex {}\nrank {}\npredicted {predicted}\n{}",
                    cert.k, cert.index, cert.rank, cert.conclusion
                ))
            }
        }
        Command::Coset(args) => {
            let g = coset_graph(&args.perms, args.basepoint)?;
            if let Some(path) = &args.out {
                write_file(path, &g.to_json_string())?;
            }
            let r = rank(&g)?;
            if json {
                Output::Json(
                    json!({ "graph": graph_value(&g), "index": g.vertex_count(), "rank": r }),
                )
            } else {
                text(format!("index {}\nrank {r}", g.vertex_count()))
            }
        }
        Command::Regular(args) => {
            let report = is_regular(&read_graph(&args.graph)?, args.budget)?;
            if json {
                Output::Json(to_value(&report))
            } else {
                let mut lines = vec![
                    format!("sheets {}", report.sheets),
                    format!("regular {}", report.is_regular()),
                    format!("deck order {}", report.deck_order),
                    format!("condition iii {}", report.condition_iii_holds),
                ];
                if let Some(w) = &report.witness {
                    lines.push(format!(
                        "witness {} closed at {}, open at {} (ends at {})",
                        w.word, w.closed_at, w.open_at, w.open_end
                    ));
                }
                text(lines.join("\n"))
            }
        }
        Command::Cayley(args) => {
            let gens = cayley_gens(&args.group, &args.gens)?;
            let g = cayley_covering(&args.group, &gens)?;
            if let Some(path) = &args.out {
                write_file(path, &g.to_json_string())?;
            }
            let report = is_regular(&g, None)?;
            if json {
                Output::Json(json!({ "graph": graph_value(&g), "regularity": to_value(&report) }))
            } else {
                text(format!(
                    "order {}\nregular {}\ndeck order {}",
                    g.vertex_count(),
                    report.is_regular(),
                    report.deck_order
                ))
            }
        }
        Command::Monodromy(args) => {
            let cov = PolyCovering::new(&args.poly.0)?;
            let (report, traces) =
                monodromy_traced(&cov, args.base, &ContinuationOptions::default())?;
            if let Some(dir) = &args.trace_dir {
                fs::create_dir_all(dir)
                    .map_err(|e| Error::InvalidArgument(format!("{}: {e}", dir.display())))?;
                for (i, lifts) in traces.iter().enumerate() {
                    for (j, t) in lifts.iter().enumerate() {
                        write_file(&dir.join(format!("loop{i}_sheet{j}.csv")), &trace_csv(t))?;
                    }
                }
            }
            let ns = ns_crosscheck(&report, report.loop_perms.len())?;
            if json {
                let mut v = to_value(&report);
                v["nielsen_schreier"] = to_value(&ns);
                Output::Json(v)
            } else {
                let fmt_c = |z: &Complex64| format!("{:.9}{:+.9}i", z.re, z.im);
                let mut lines = vec![
                    format!("sheets {}", report.degree),
                    format!(
                        "critical values {}",
                        report
                            .critical_values
                            .iter()
                            .map(fmt_c)
                            .collect::<Vec<_>>()
                            .join(" ")
                    ),
                ];
                for l in &report.loop_perms {
                    lines.push(format!(
                        "loop around {}: {}",
                        fmt_c(&l.puncture),
                        l.permutation
                    ));
                }
                lines.push(format!("transitive {}", report.transitive));
                lines.push(format!("deck order {}", report.deck_elements.len()));
                lines.push(format!(
                    "stabilizer rank {} (predicted {})",
                    report.stabilizer_rank, ns.predicted_rank
                ));
                text(lines.join("\n"))
            }
        }
        Command::Artin(args) => {
            // certificates are structured output either way
            Output::Json(to_value(&artin_certificate_with_bound(args.n, args.bound)?))
        }
        Command::HomologyCheck(NArg { n }) => {
            let ok = homology_image_check(n)?;
            if json {
                Output::Json(json!({ "n": n, "trivial": ok }))
            } else {
                text(ok.to_string())
            }
        }
    })
}

fn word_command(cmd: WordCommand, json: bool) -> Result<Output, Error> {
    Ok(match cmd {
        WordCommand::Reduce(a) => {
            let w = Word::parse(&a.word, a.rank)?;
            if json {
                Output::Json(json!({ "word": w }))
            } else {
                text(w.to_string())
            }
        }
        WordCommand::Abelianize(a) => {
            let v = Word::parse(&a.word, a.rank)?.abelianize();
            if json {
                Output::Json(json!({ "abelianization": v }))
            } else {
                text(v.to_string())
            }
        }
        WordCommand::Commutator(a) => {
            let c = Word::parse(&a.u, a.rank)?.commutator(&Word::parse(&a.v, a.rank)?)?;
            if json {
                Output::Json(json!({ "word": c }))
            } else {
                text(c.to_string())
            }
        }
        WordCommand::MemberC2(a) => {
            let m = Word::parse(&a.word, a.rank)?.in_commutator_subgroup();
            if json {
                Output::Json(json!({ "member": m }))
            } else {
                text(m.to_string())
            }
        }
    })
}

fn subgroup_output(sg: &SubgroupGraph, json: bool) -> Output {
    let g = sg.graph();
    if json {
        Output::Json(json!({
            "graph": graph_value(g),
            "rank": sg.rank(),
            "index": to_value(&sg.index()),
        }))
    } else {
        text(format!(
            "vertices {}\nedges {}\nrank {}\nindex {}",
            g.vertex_count(),
            g.edge_count(),
            sg.rank(),
            sg.index()
        ))
    }
}

fn cayley_gens(group: &CayleyGroup, specs: &[String]) -> Result<Vec<GroupElement>, Error> {
    specs
        .iter()
        .map(|s| match group {
            CayleyGroup::Abelian(_) => s
                .split(',')
                .map(|t| t.trim().parse::<i64>())
                .collect::<Result<Vec<_>, _>>()
                .map(GroupElement::Abelian)
                .map_err(|e| Error::InvalidArgument(format!("{s:?}: {e}"))),
            CayleyGroup::Permutations(_) => parse_perm(s)
                .map(GroupElement::Permutation)
                .map_err(Error::InvalidArgument),
        })
        .collect()
}

/// Parses `args`, runs the command and writes its output; returns the exit
/// code: 0 on success, 1 on a domain error, 2 on a usage error.
fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    match execute(cli.command, cli.json) {
        Ok(Output::Text(s)) => {
            let _ = writeln!(out, "{s}");
            0
        }
        Ok(Output::Json(v)) => {
            let _ = writeln!(out, "{v}");
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn main() -> ExitCode {
    let code = run(
        std::env::args_os(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    ExitCode::from(code)
}
