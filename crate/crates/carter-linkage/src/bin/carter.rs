//! Command-line surface for the carter-linkage library.
//!
//! The tool is a verifier and explorer: every command recomputes its
//! answer from scratch and prints it deterministically, so identical
//! invocations give byte-identical output.  Exit codes separate the
//! three outcomes a script cares about: 0 when everything asked for
//! holds, 1 when a computed check fails or a requested object does not
//! exist mathematically, 2 for usage and input errors.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use carter_linkage::diagram::{d_type_catalog, full_catalog, homogeneous_class};
use carter_linkage::gamma::find_gamma_set;
use carter_linkage::linkage::enumerate_partial;
use carter_linkage::spectral::MULTISET_TOLERANCE;
use carter_linkage::transition::class_adjacency;
use carter_linkage::{
    chain, coxeter_relation_check, criterion_check, criterion_set, e8_d7_pairs, enumerate_full,
    find_transition, orbit_dot, orbit_partition, ovsienko_reduce, p_classes, pairing_check, rat,
    spectrum, verify_transition, AdeType, CarterDiagram, DiagramName, Error, GammaSet, Orbit,
    RatMatrix, Rational, Root, RootSystem, Transition, UnitForm,
};

/// Margin used when reporting the eigenvalue interval (0, 4).
const SPECTRUM_MARGIN: f64 = 1e-6;

#[derive(Parser)]
#[command(
    name = "carter",
    version,
    about = "Carter diagrams, linkage systems, and the exact machinery behind them"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the diagram catalog with shapes and determinants.
    Catalog(CatalogArgs),
    /// Print the partial Cartan matrix of a diagram and its inverse.
    Gram(GramArgs),
    /// Enumerate the linkage system of a diagram.
    Linkage(LinkageArgs),
    /// Partition a linkage system into dual Weyl orbits.
    Orbits(OrbitsArgs),
    /// Run the verification suites.
    Verify(VerifyArgs),
    /// Reduce a unit form to a direct sum of Dynkin forms.
    Reduce(ReduceArgs),
    /// Find a single-root exchange between two diagrams of one class.
    Transition(TransitionArgs),
    /// Write JSON, DOT, or CSV artifacts.
    Export(ExportArgs),
}

#[derive(Args)]
struct CatalogArgs {
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GramArgs {
    /// Diagram name, e.g. D5 or D4(a1).
    name: String,
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct LinkageArgs {
    /// Diagram name, e.g. D6(a2).
    name: String,
    /// Restrict to the component realized in one ambient type.
    #[arg(long)]
    ambient: Option<String>,
    /// Append the dual Weyl orbit decomposition.
    #[arg(long)]
    orbits: bool,
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct OrbitsArgs {
    /// Diagram name, e.g. D5.
    name: String,
    /// Only show orbits with this exact p value, e.g. 5/4.
    #[arg(long)]
    p: Option<String>,
    /// List every member label of every orbit.
    #[arg(long)]
    labels: bool,
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Reproduce the component counting table.
    #[arg(long)]
    table1: bool,
    /// Exhaustive linkage criterion sweep, optionally for one diagram.
    #[arg(long, value_name = "NAME", num_args = 0..=1, default_missing_value = "all")]
    criterion: Option<String>,
    /// Check the fourteen label-negating root pairs outside D7 in E8.
    #[arg(long)]
    e8d7: bool,
    /// Check the conjugate-root pairing for ranks 4 through 7.
    #[arg(long)]
    pairing: bool,
    /// Check eigenvalue intervals and Coxeter eigenvalue multisets.
    #[arg(long)]
    spectrum: bool,
    /// Check single-root transitions across each D-type class.
    #[arg(long)]
    transitions: bool,
    /// Reduce every cycle form in the catalog to its Dynkin member.
    #[arg(long)]
    reduce_all: bool,
    /// Machine-readable report instead of per-check lines.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ReduceArgs {
    /// Diagram name, or a path to a matrix file (rows separated by `;`,
    /// entries by spaces, rationals as `p/q`).
    input: String,
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct TransitionArgs {
    /// Starting diagram name, e.g. D5(a1).
    from: String,
    /// Target diagram name of the same rank and type, e.g. D5.
    to: String,
    /// Walk through intermediate diagrams when no single move exists.
    #[arg(long)]
    chain: bool,
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ExportArgs {
    #[command(subcommand)]
    what: ExportWhat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Csv,
}

#[derive(Args)]
struct ExportOut {
    /// Output format.
    #[arg(long, value_enum)]
    format: Format,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ExportWhat {
    /// A diagram, as JSON or DOT.
    Diagram {
        name: String,
        #[command(flatten)]
        out: ExportOut,
    },
    /// A root system in simple-root coordinates, as JSON.
    Roots {
        typ: String,
        #[command(flatten)]
        out: ExportOut,
    },
    /// A realized root set for a diagram in an ambient system, as JSON.
    Gamma {
        name: String,
        ambient: String,
        #[command(flatten)]
        out: ExportOut,
    },
    /// A linkage system with its per-ambient components, as JSON.
    Linkage {
        name: String,
        #[command(flatten)]
        out: ExportOut,
    },
    /// The dual Weyl orbit partition, as JSON or DOT.
    Orbits {
        name: String,
        #[command(flatten)]
        out: ExportOut,
    },
    /// The component counting table over the D-type catalog, as CSV.
    Table1 {
        #[command(flatten)]
        out: ExportOut,
    },
    /// A single-root exchange between two diagrams, as JSON.
    Transition {
        from: String,
        to: String,
        #[command(flatten)]
        out: ExportOut,
    },
}

fn main() -> ExitCode {
    // Die quietly when a pipeline consumer closes stdout early, like
    // any other line-oriented Unix tool.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

type Outcome = Result<bool, Box<dyn std::error::Error>>;

fn run(command: Command) -> Outcome {
    match command {
        Command::Catalog(args) => cmd_catalog(args),
        Command::Gram(args) => cmd_gram(args),
        Command::Linkage(args) => cmd_linkage(args),
        Command::Orbits(args) => cmd_orbits(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Reduce(args) => cmd_reduce(args),
        Command::Transition(args) => cmd_transition(args),
        Command::Export(args) => cmd_export(args.what),
    }
}

fn load_diagram(name: &str) -> Result<CarterDiagram, Error> {
    name.parse::<DiagramName>()?.diagram()
}

fn parse_type(s: &str) -> Result<AdeType, Error> {
    let typ: AdeType = s.parse()?;
    typ.validate()?;
    Ok(typ)
}

/// Realize a diagram inside the root system of its own type and rank.
fn realize(d: &CarterDiagram) -> Result<GammaSet, Box<dyn std::error::Error>> {
    let name: DiagramName = d.name().parse()?;
    let ambient = RootSystem::new(name.typ)?;
    find_gamma_set(d, &ambient)
        .ok_or_else(|| format!("{} has no realization in {}", d.name(), name.typ).into())
}

fn pretty_json(v: &serde_json::Value) -> String {
    let mut text = serde_json::to_string_pretty(v).expect("serializable value");
    text.push('\n');
    text
}

/// Right-aligned rows with a shared column width, one line per row.
fn format_matrix(m: &RatMatrix, indent: &str) -> String {
    let cells: Vec<Vec<String>> = (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)].to_string()).collect())
        .collect();
    let width = cells
        .iter()
        .flatten()
        .map(String::len)
        .max()
        .unwrap_or(1);
    let mut out = String::new();
    for row in &cells {
        out.push_str(indent);
        for (j, cell) in row.iter().enumerate() {
            if j > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{cell:>width$}");
        }
        out.push('\n');
    }
    out
}

fn matrix_strings(m: &RatMatrix) -> Vec<Vec<String>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)].to_string()).collect())
        .collect()
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Box<dyn std::error::Error>> {
    match out {
        Some(path) => {
            std::fs::write(path, text)?;
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_catalog(args: CatalogArgs) -> Outcome {
    let mut rows = Vec::new();
    for name in full_catalog() {
        let d = name.diagram()?;
        let dotted = d.edges().iter().filter(|e| e.2 == 1).count();
        let det = d.partial_cartan().det()?;
        rows.push((
            name.to_string(),
            d.order(),
            d.alpha_count(),
            d.beta_count(),
            d.edges().len(),
            dotted,
            d.simple_cycles().len(),
            det.to_string(),
        ));
    }
    if args.json {
        let items: Vec<serde_json::Value> = rows
            .iter()
            .map(|(name, order, alpha, beta, edges, dotted, cycles, det)| {
                serde_json::json!({
                    "name": name,
                    "order": order,
                    "alpha": alpha,
                    "beta": beta,
                    "edges": edges,
                    "dotted": dotted,
                    "cycles": cycles,
                    "det": det,
                })
            })
            .collect();
        print!("{}", pretty_json(&serde_json::Value::Array(items)));
        return Ok(true);
    }
    println!(
        "{:<8} {:>5} {:>5} {:>4} {:>5} {:>6} {:>6} {:>4}",
        "name", "order", "alpha", "beta", "edges", "dotted", "cycles", "det"
    );
    for (name, order, alpha, beta, edges, dotted, cycles, det) in rows {
        println!(
            "{name:<8} {order:>5} {alpha:>5} {beta:>4} {edges:>5} {dotted:>6} {cycles:>6} {det:>4}"
        );
    }
    Ok(true)
}

fn cmd_gram(args: GramArgs) -> Outcome {
    let d = load_diagram(&args.name)?;
    let b = d.partial_cartan();
    let inverse = b.inverse()?;
    let det = b.det()?;
    let vertices: Vec<String> = (0..d.order()).map(|v| d.vertex_label(v)).collect();
    if args.json {
        let doc = serde_json::json!({
            "name": d.name(),
            "vertices": vertices,
            "gram": b.int_entries().expect("partial Cartan matrices are integral"),
            "inverse": matrix_strings(&inverse),
            "det": det.to_string(),
        });
        print!("{}", pretty_json(&doc));
        return Ok(true);
    }
    println!("B({}), vertices {}:", d.name(), vertices.join(" "));
    print!("{}", format_matrix(&b, "  "));
    println!("det: {det}");
    println!("inverse:");
    print!("{}", format_matrix(&inverse, "  "));
    Ok(true)
}

/// Group a class of labels into its orbit sizes, rendered compactly.
fn orbit_size_summary(orbits: &[&Orbit]) -> String {
    let sizes: Vec<usize> = orbits.iter().map(|o| o.size()).collect();
    let total: usize = sizes.iter().sum();
    if sizes.len() == 1 {
        return format!("{total}");
    }
    if sizes.windows(2).all(|w| w[0] == w[1]) {
        return format!("{}x{}={}", sizes.len(), sizes[0], total);
    }
    let parts: Vec<String> = sizes.iter().map(usize::to_string).collect();
    format!("{}={}", parts.join("+"), total)
}

/// Orbit partition of a diagram's criterion set, grouped by p.
fn partitioned_orbits(d: &CarterDiagram) -> Result<Vec<(Rational, Vec<Orbit>)>, Error> {
    let mut out = Vec::new();
    for (p, labels) in p_classes(d)? {
        let orbits = orbit_partition(d, &labels)?;
        out.push((p, orbits));
    }
    Ok(out)
}

fn cmd_linkage(args: LinkageArgs) -> Outcome {
    let d = load_diagram(&args.name)?;

    if let Some(ambient) = &args.ambient {
        let typ = parse_type(ambient)?;
        let labels = enumerate_partial(&d, typ)?;
        if args.json {
            let doc = match &labels {
                Some(set) => serde_json::json!({
                    "base": d.name(),
                    "ambient": typ.to_string(),
                    "embeds": true,
                    "count": set.len(),
                    "labels": set.iter().map(|l| l.entries().to_vec()).collect::<Vec<_>>(),
                }),
                None => serde_json::json!({
                    "base": d.name(),
                    "ambient": typ.to_string(),
                    "embeds": false,
                }),
            };
            print!("{}", pretty_json(&doc));
        } else {
            match &labels {
                Some(set) => println!("{} component of {}: {} labels", typ, d.name(), set.len()),
                None => println!("{} does not embed in {}", d.name(), typ),
            }
        }
        return Ok(true);
    }

    let system = enumerate_full(&d)?;
    let orbits = if args.orbits {
        Some(partitioned_orbits(&d)?)
    } else {
        None
    };

    if args.json {
        let mut doc = system.to_json();
        if let Some(groups) = &orbits {
            let rendered: Vec<serde_json::Value> = groups
                .iter()
                .map(|(p, orbits)| {
                    serde_json::json!({
                        "p": p.to_string(),
                        "orbits": orbits.iter().map(Orbit::to_json).collect::<Vec<_>>(),
                    })
                })
                .collect();
            doc.as_object_mut()
                .expect("system renders as an object")
                .insert("orbits".into(), serde_json::Value::Array(rendered));
        }
        print!("{}", pretty_json(&doc));
        return Ok(true);
    }

    println!("linkage system of {}", d.name());
    for (typ, labels) in system.partials() {
        println!("  {typ} component: {} labels", labels.len());
    }
    println!("  criterion total: {}", system.total().len());
    if let Some(groups) = &orbits {
        println!("dual Weyl orbits by p:");
        for (p, orbits) in groups {
            let refs: Vec<&Orbit> = orbits.iter().collect();
            println!(
                "  p = {p}: {} orbit{} ({})",
                orbits.len(),
                if orbits.len() == 1 { "" } else { "s" },
                orbit_size_summary(&refs)
            );
        }
    }
    Ok(true)
}

fn cmd_orbits(args: OrbitsArgs) -> Outcome {
    let d = load_diagram(&args.name)?;
    let filter: Option<Rational> = match &args.p {
        Some(text) => Some(
            text.parse::<Rational>()
                .map_err(|_| Error::Parse(format!("bad rational {text:?}")))?,
        ),
        None => None,
    };
    let mut groups = partitioned_orbits(&d)?;
    if let Some(p) = &filter {
        groups.retain(|(q, _)| q == p);
        if groups.is_empty() {
            println!("no orbits of {} have p = {p}", d.name());
            return Ok(false);
        }
    }

    if args.json {
        let rendered: Vec<serde_json::Value> = groups
            .iter()
            .map(|(p, orbits)| {
                serde_json::json!({
                    "p": p.to_string(),
                    "orbits": orbits.iter().map(Orbit::to_json).collect::<Vec<_>>(),
                })
            })
            .collect();
        print!("{}", pretty_json(&serde_json::Value::Array(rendered)));
        return Ok(true);
    }

    println!("dual Weyl orbits of the {} linkage system", d.name());
    for (p, orbits) in &groups {
        let count: usize = orbits.iter().map(Orbit::size).sum();
        println!("p = {p} ({count} labels)");
        for (k, orbit) in orbits.iter().enumerate() {
            println!("  orbit {}: {} labels", k + 1, orbit.size());
            if args.labels {
                for label in orbit.labels() {
                    println!("    {label}");
                }
            }
        }
    }
    Ok(true)
}

struct Check {
    name: String,
    passed: bool,
}

struct Suite {
    name: &'static str,
    title: &'static str,
    checks: Vec<Check>,
}

impl Suite {
    fn new(name: &'static str, title: &'static str) -> Self {
        Suite {
            name,
            title,
            checks: Vec::new(),
        }
    }

    fn check(&mut self, name: impl Into<String>, passed: bool) {
        self.checks.push(Check {
            name: name.into(),
            passed,
        });
    }

    fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }
}

fn suite_table1() -> Result<Suite, Error> {
    let mut suite = Suite::new("table1", "component counting table");
    let expected = [(4, 24), (5, 42), (6, 76), (7, 142), (8, 16), (9, 18)];
    for (l, total) in expected {
        for name in homogeneous_class(AdeType::D(l))? {
            let got = criterion_set(&name.diagram()?)?.len();
            suite.check(format!("{name}: {got} labels, expected {total}"), got == total);
        }
    }
    Ok(suite)
}

fn suite_criterion(target: &str) -> Result<Suite, Box<dyn std::error::Error>> {
    let mut suite = Suite::new("criterion", "linkage criterion sweep");
    let bases: Vec<DiagramName> = if target == "all" {
        d_type_catalog()
    } else {
        vec![target.parse::<DiagramName>()?]
    };
    for name in bases {
        let d = name.diagram()?;
        let m = d.order() + 1;
        let mut embedded = 0usize;
        for typ in [AdeType::A(m), AdeType::D(m), AdeType::E(m)] {
            if typ.validate().is_err() {
                continue;
            }
            if let Some(report) = criterion_check(&d, typ)? {
                embedded += 1;
                suite.check(report.to_string(), report.passed());
            }
        }
        suite.check(format!("{name}: embeds in at least one ambient"), embedded > 0);
    }
    Ok(suite)
}

fn suite_e8d7() -> Suite {
    let mut suite = Suite::new("e8d7", "label-negating pairs outside D7 in E8");
    let pairs = match e8_d7_pairs() {
        Ok(pairs) => pairs,
        Err(e) => {
            suite.check(format!("pair search failed: {e}"), false);
            return suite;
        }
    };
    suite.check(format!("{} pairs found, expected 14", pairs.len()), pairs.len() == 14);
    let positive: Vec<&(Root, Root)> = pairs
        .iter()
        .filter(|(a, b)| a.is_positive() && b.is_positive())
        .collect();
    suite.check(
        format!("{} positive pairs, expected 7", positive.len()),
        positive.len() == 7,
    );
    // Frozen positive rows over the Bourbaki simple roots of E8.
    let rows: [([i64; 8], [i64; 8]); 7] = [
        ([2, 2, 3, 4, 3, 2, 1, 0], [2, 3, 4, 6, 5, 4, 3, 2]),
        ([2, 2, 3, 4, 3, 2, 1, 1], [2, 3, 4, 6, 5, 4, 3, 1]),
        ([2, 2, 3, 4, 3, 2, 2, 1], [2, 3, 4, 6, 5, 4, 2, 1]),
        ([2, 2, 3, 4, 3, 3, 2, 1], [2, 3, 4, 6, 5, 3, 2, 1]),
        ([2, 2, 3, 4, 4, 3, 2, 1], [2, 3, 4, 6, 4, 3, 2, 1]),
        ([2, 2, 3, 5, 4, 3, 2, 1], [2, 3, 4, 5, 4, 3, 2, 1]),
        ([2, 3, 3, 5, 4, 3, 2, 1], [2, 2, 4, 5, 4, 3, 2, 1]),
    ];
    for (k, (eta, lambda)) in rows
        .iter()
        .map(|(e, l)| (Root(e.to_vec()), Root(l.to_vec())))
        .enumerate()
    {
        let present = positive
            .iter()
            .any(|(a, b)| (*a == eta && *b == lambda) || (*a == lambda && *b == eta));
        suite.check(format!("row {}: {eta} with {lambda}", k + 1), present);
    }
    let sum_ok = positive.iter().all(|(eta, lambda)| {
        let sum: Vec<i64> = eta
            .coords()
            .iter()
            .zip(lambda.coords())
            .map(|(a, b)| a + b)
            .collect();
        sum == vec![4, 5, 7, 10, 8, 6, 4, 2]
    });
    suite.check("every positive pair sums to (4,5,7,10,8,6,4,2)", sum_ok);
    let closed = pairs.iter().all(|(eta, lambda)| {
        pairs.iter().any(|(a, b)| {
            (*a == eta.negated() && *b == lambda.negated())
                || (*a == lambda.negated() && *b == eta.negated())
        })
    });
    suite.check("pair list is closed under negation", closed);
    suite
}

fn suite_pairing() -> Result<Suite, Error> {
    let mut suite = Suite::new("pairing", "conjugate-root pairing");
    for l in 4..=7 {
        let report = pairing_check(l)?;
        suite.check(report.to_string(), report.passed());
    }
    Ok(suite)
}

fn suite_spectrum() -> Result<Suite, Error> {
    let mut suite = Suite::new("spectrum", "eigenvalue intervals and Coxeter multisets");
    for name in full_catalog() {
        let d = name.diagram()?;
        let report = spectrum(&d.partial_cartan())?;
        let ok = report.min > SPECTRUM_MARGIN && report.max < 4.0 - SPECTRUM_MARGIN;
        suite.check(
            format!("{name}: eigenvalues in [{:.6}, {:.6}]", report.min, report.max),
            ok,
        );
    }
    let dynkin = [
        AdeType::A(1),
        AdeType::A(2),
        AdeType::A(3),
        AdeType::A(4),
        AdeType::D(4),
        AdeType::D(5),
        AdeType::D(6),
        AdeType::D(7),
        AdeType::E(6),
        AdeType::E(7),
        AdeType::E(8),
    ];
    for typ in dynkin {
        let d = DiagramName::dynkin(typ).diagram()?;
        let report = coxeter_relation_check(&d)?;
        let ok = report.matched && report.max_deviation <= MULTISET_TOLERANCE;
        suite.check(
            format!("{typ}: Coxeter multiset deviation {:.2e}", report.max_deviation),
            ok,
        );
    }
    Ok(suite)
}

fn suite_transitions() -> Result<Suite, Box<dyn std::error::Error>> {
    let mut suite = Suite::new("transitions", "single-root exchanges across D-type classes");
    for l in 4..=7 {
        for (a, b) in class_adjacency(AdeType::D(l)) {
            for (from, to) in [(a, b), (b, a)] {
                let set = realize(&from.diagram()?)?;
                let ok = match find_transition(&set, &to.diagram()?) {
                    Ok(t) => verify_transition(&t)?,
                    Err(_) => false,
                };
                suite.check(format!("{from} -> {to}"), ok);
            }
        }
    }
    Ok(suite)
}

fn suite_reduce() -> Result<Suite, Error> {
    let mut suite = Suite::new("reduce", "cycle forms reduce to their Dynkin member");
    for name in full_catalog() {
        if name.cycle == 0 {
            continue;
        }
        let d = name.diagram()?;
        let form = UnitForm::of_diagram(&d);
        let reduction = ovsienko_reduce(&form)?;
        let components_ok = reduction.components() == [name.typ];
        let det_ok = form.matrix().det()? == reduction.reduced().matrix().det()?;
        let ok = components_ok && det_ok && reduction.verify(&form);
        let rendered: Vec<String> = reduction
            .components()
            .iter()
            .map(AdeType::to_string)
            .collect();
        suite.check(format!("{name} -> {}", rendered.join(" + ")), ok);
    }
    Ok(suite)
}

fn cmd_verify(args: VerifyArgs) -> Outcome {
    let run_all = !args.table1
        && args.criterion.is_none()
        && !args.e8d7
        && !args.pairing
        && !args.spectrum
        && !args.transitions
        && !args.reduce_all;

    let mut suites = Vec::new();
    if run_all || args.table1 {
        suites.push(suite_table1()?);
    }
    if run_all || args.criterion.is_some() {
        let target = args.criterion.as_deref().unwrap_or("all");
        suites.push(suite_criterion(target)?);
    }
    if run_all || args.e8d7 {
        suites.push(suite_e8d7());
    }
    if run_all || args.pairing {
        suites.push(suite_pairing()?);
    }
    if run_all || args.spectrum {
        suites.push(suite_spectrum()?);
    }
    if run_all || args.transitions {
        suites.push(suite_transitions()?);
    }
    if run_all || args.reduce_all {
        suites.push(suite_reduce()?);
    }

    let all_passed = suites.iter().all(Suite::passed);

    if args.json {
        let rendered: Vec<serde_json::Value> = suites
            .iter()
            .map(|s| {
                serde_json::json!({
                    "name": s.name,
                    "passed": s.passed(),
                    "checks": s
                        .checks
                        .iter()
                        .map(|c| serde_json::json!({"name": c.name, "passed": c.passed}))
                        .collect::<Vec<_>>(),
                })
            })
            .collect();
        let doc = serde_json::json!({"suites": rendered, "passed": all_passed});
        print!("{}", pretty_json(&doc));
        return Ok(all_passed);
    }

    for suite in &suites {
        println!("== {} ==", suite.title);
        for check in &suite.checks {
            println!("  {} {}", if check.passed { "ok  " } else { "FAIL" }, check.name);
        }
        println!(
            "{}: {}",
            suite.name,
            if suite.passed() { "PASS" } else { "FAIL" }
        );
        println!();
    }
    let failed = suites.iter().filter(|s| !s.passed()).count();
    println!(
        "{} suite{} passed, {} failed",
        suites.len() - failed,
        if suites.len() - failed == 1 { "" } else { "s" },
        failed
    );
    Ok(all_passed)
}

fn cmd_reduce(args: ReduceArgs) -> Outcome {
    let form = match args.input.parse::<DiagramName>() {
        Ok(name) => UnitForm::of_diagram(&name.diagram()?),
        Err(_) => {
            let text = std::fs::read_to_string(&args.input).map_err(|e| {
                format!("{:?} is neither a diagram name nor a readable file: {e}", args.input)
            })?;
            UnitForm::new(RatMatrix::parse(&text)?)?
        }
    };
    let reduction = ovsienko_reduce(&form)?;
    let verified = reduction.verify(&form);

    if args.json {
        let mut doc = reduction.to_json();
        doc.as_object_mut()
            .expect("reduction renders as an object")
            .insert("verified".into(), serde_json::Value::Bool(verified));
        print!("{}", pretty_json(&doc));
        return Ok(verified);
    }

    let components: Vec<String> = reduction
        .components()
        .iter()
        .map(AdeType::to_string)
        .collect();
    println!("input form of order {}", form.order());
    println!("components: {}", components.join(" + "));
    println!("steps: {}", reduction.steps().len());
    println!("certificate:");
    print!("{}", format_matrix(reduction.transform(), "  "));
    println!("det: {}", reduction.transform().det()?);
    println!("congruence verified: {verified}");
    Ok(verified)
}

fn print_transition(t: &Transition, verified: bool) {
    let from = t.from_set().diagram();
    println!(
        "{} -> {}, realized in {}",
        from.name(),
        t.to_set().diagram().name(),
        t.from_set().ambient().typ()
    );
    println!(
        "moved vertex: {} (index {})",
        from.vertex_label(t.moved_vertex()),
        t.moved_vertex()
    );
    println!("replacement root: {}", t.new_root());
    let coeffs: Vec<String> = t.coefficients().iter().map(i64::to_string).collect();
    println!("expansion coefficients: [{}]", coeffs.join(", "));
    println!("exchange matrix:");
    print!("{}", format_matrix(t.matrix(), "  "));
    println!("verified: {verified}");
}

fn cmd_transition(args: TransitionArgs) -> Outcome {
    let from = load_diagram(&args.from)?;
    let to = load_diagram(&args.to)?;
    let set = realize(&from)?;

    if args.chain {
        let steps = match chain(&set, &to) {
            Ok(steps) => steps,
            Err(Error::NoTransition { from, to }) => {
                eprintln!("no transition chain from {from} to {to}");
                return Ok(false);
            }
            Err(e) => return Err(e.into()),
        };
        let mut all_verified = true;
        if args.json {
            let mut rendered = Vec::new();
            for t in &steps {
                let verified = verify_transition(t)?;
                all_verified &= verified;
                let mut doc = t.to_json();
                doc.as_object_mut()
                    .expect("transition renders as an object")
                    .insert("verified".into(), serde_json::Value::Bool(verified));
                rendered.push(doc);
            }
            print!("{}", pretty_json(&serde_json::Value::Array(rendered)));
        } else {
            println!("{} steps", steps.len());
            for (k, t) in steps.iter().enumerate() {
                let verified = verify_transition(t)?;
                all_verified &= verified;
                println!();
                println!("step {}:", k + 1);
                print_transition(t, verified);
            }
        }
        return Ok(all_verified);
    }

    let t = match find_transition(&set, &to) {
        Ok(t) => t,
        Err(Error::NoTransition { from, to }) => {
            eprintln!("no single-root transition from {from} to {to}");
            return Ok(false);
        }
        Err(e) => return Err(e.into()),
    };
    let verified = verify_transition(&t)?;
    if args.json {
        let mut doc = t.to_json();
        doc.as_object_mut()
            .expect("transition renders as an object")
            .insert("verified".into(), serde_json::Value::Bool(verified));
        print!("{}", pretty_json(&doc));
    } else {
        print_transition(&t, verified);
    }
    Ok(verified)
}

/// Counting table over the D-type catalog, one row per diagram.
fn table1_csv() -> Result<String, Error> {
    let mut out = String::from(
        "diagram,components,D-component (p=1),E-component (p=l/4),in all\n",
    );
    for name in d_type_catalog() {
        let d = name.diagram()?;
        let groups = partitioned_orbits(&d)?;
        let components: usize = groups.iter().map(|(_, orbits)| orbits.len()).sum();
        let total: usize = groups
            .iter()
            .map(|(_, orbits)| orbits.iter().map(Orbit::size).sum::<usize>())
            .sum();
        let mut d_cell = String::from("-");
        let mut e_cell = String::from("-");
        for (p, orbits) in &groups {
            let refs: Vec<&Orbit> = orbits.iter().collect();
            let cell = orbit_size_summary(&refs);
            if *p == rat(1) {
                d_cell = cell;
            } else {
                e_cell = cell;
            }
        }
        let _ = writeln!(out, "{name},{components},{d_cell},{e_cell},{total}");
    }
    Ok(out)
}

fn format_error(kind: &str, format: Format) -> Box<dyn std::error::Error> {
    let name = match format {
        Format::Json => "json",
        Format::Dot => "dot",
        Format::Csv => "csv",
    };
    format!("format {name} is not available for {kind}").into()
}

fn cmd_export(what: ExportWhat) -> Outcome {
    match what {
        ExportWhat::Diagram { name, out } => {
            let d = load_diagram(&name)?;
            let text = match out.format {
                Format::Json => pretty_json(&d.to_json()),
                Format::Dot => d.to_dot(),
                Format::Csv => return Err(format_error("diagram", out.format)),
            };
            emit(&out.out, &text)?;
        }
        ExportWhat::Roots { typ, out } => {
            let typ = parse_type(&typ)?;
            if out.format != Format::Json {
                return Err(format_error("roots", out.format));
            }
            let rs = RootSystem::new(typ)?;
            emit(&out.out, &pretty_json(&rs.to_json()))?;
        }
        ExportWhat::Gamma { name, ambient, out } => {
            let d = load_diagram(&name)?;
            let typ = parse_type(&ambient)?;
            if out.format != Format::Json {
                return Err(format_error("gamma", out.format));
            }
            let rs = RootSystem::new(typ)?;
            let Some(set) = find_gamma_set(&d, &rs) else {
                eprintln!("{} has no realization in {typ}", d.name());
                return Ok(false);
            };
            emit(&out.out, &pretty_json(&set.to_json()))?;
        }
        ExportWhat::Linkage { name, out } => {
            let d = load_diagram(&name)?;
            if out.format != Format::Json {
                return Err(format_error("linkage", out.format));
            }
            let system = enumerate_full(&d)?;
            emit(&out.out, &pretty_json(&system.to_json()))?;
        }
        ExportWhat::Orbits { name, out } => {
            let d = load_diagram(&name)?;
            let groups = partitioned_orbits(&d)?;
            let text = match out.format {
                Format::Json => {
                    let rendered: Vec<serde_json::Value> = groups
                        .iter()
                        .map(|(p, orbits)| {
                            serde_json::json!({
                                "p": p.to_string(),
                                "orbits": orbits.iter().map(Orbit::to_json).collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    pretty_json(&serde_json::Value::Array(rendered))
                }
                Format::Dot => {
                    let mut text = String::new();
                    for (_, orbits) in &groups {
                        for orbit in orbits {
                            text.push_str(&orbit_dot(&d, orbit));
                        }
                    }
                    text
                }
                Format::Csv => return Err(format_error("orbits", out.format)),
            };
            emit(&out.out, &text)?;
        }
        ExportWhat::Table1 { out } => {
            if out.format != Format::Csv {
                return Err(format_error("table1", out.format));
            }
            emit(&out.out, &table1_csv()?)?;
        }
        ExportWhat::Transition { from, to, out } => {
            if out.format != Format::Json {
                return Err(format_error("transition", out.format));
            }
            let from = load_diagram(&from)?;
            let to = load_diagram(&to)?;
            let set = realize(&from)?;
            let t = match find_transition(&set, &to) {
                Ok(t) => t,
                Err(Error::NoTransition { from, to }) => {
                    eprintln!("no single-root transition from {from} to {to}");
                    return Ok(false);
                }
                Err(e) => return Err(e.into()),
            };
            emit(&out.out, &pretty_json(&t.to_json()))?;
        }
    }
    Ok(true)
}
