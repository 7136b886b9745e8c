use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use ogdegen::chart::{
    build_shape, check_isotropic, check_leftmost_nonzero, nice_chart, random_isotropic, random_plus, verify_richardson_membership,
    ChartMatrix, ColumnIndex,
};
use ogdegen::combin::{enumerate_admissible, enumerate_tree, AllowedPair};
use ogdegen::decomp::{
    assign_region, class_formula, coverage_test, grid_jitter, multiplicity_report, random_coverage, verify_membership, ClassTerm, LeafPolytope,
};
use ogdegen::degen::{cascade, degeneration_step, is_nicest, CascadeOptions, MAX_ROOT_DRAWS};
use ogdegen::dmatroid::{
    check_bisubmodular, check_rank_plus_j, check_split_rank, enumerate_vertices, feasible_sets, index_two_example, polytope_h,
    polytope_v, random_admissible, rank_of, rank_via_matroid, vertex_lattice_index, MAX_VERTEX_ENUM_N,
};
use ogdegen::exactnum::{int, parse_rational, LatticeIndex, Rational};

#[derive(Parser)]
#[command(name = "ogdegen", version, about = "Charts, degenerations and delta-matroid polytopes for OG(n, 2n+1)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct Output {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Also write the output to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct PairArgs {
    #[command(flatten)]
    common: Common,
    /// Allowed pair as "I;I'", e.g. "4,6,7;1,3,5". Defaults to the root.
    #[arg(long)]
    pair: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// The tree of allowed pairs.
    Tree {
        #[arg(long)]
        n: usize,
    },
    /// The symbol grid of a pair.
    Shape(PairArgs),
    /// A random nice chart of a pair.
    Solve(PairArgs),
    /// One degeneration step from a random nicest point of a pair.
    Degenerate {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        dump_matrices: bool,
    },
    /// The full degeneration cascade from a random nicest point of the root.
    Cascade {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        dump_matrices: bool,
    },
    /// Feasible sets of a random nice chart of a pair.
    Matroid(PairArgs),
    /// Polytope of a random nice chart of a pair.
    Polytope(PairArgs),
    /// Verification reports.
    Verify {
        #[command(subcommand)]
        check: Verify,
    },
}

#[derive(Subcommand)]
enum Verify {
    /// Leaf polytopes cover the cube with disjoint interiors.
    Decomposition {
        #[command(flatten)]
        common: Common,
        /// Check a single point "x1,...,xn".
        #[arg(long)]
        point: Option<String>,
        /// Use the grid with this denominator, shifted off the walls.
        #[arg(long)]
        grid: Option<usize>,
        /// Number of random generic samples when neither --point nor --grid is given.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Every leaf polytope of a cascade has vertex lattice index 1.
    Multiplicity(Common),
    /// Vertices of the inequality description are the indicator vectors of the feasible sets.
    PolytopesSame {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Degrees and dimensions of the terms of the class formula.
    Formula {
        #[arg(long)]
        n: usize,
    },
    /// Rank oracle, bisubmodularity, split rank and rank-plus-J witnesses.
    Appendix {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 20)]
        points: usize,
    },
}

/// A finished report: the payload, its Markdown rendering, and the first failed check if any.
struct Report {
    json: Value,
    md: String,
    failure: Option<String>,
}

impl Report {
    fn ok(json: Value, md: String) -> Self {
        Report { json, md, failure: None }
    }

    fn checked(json: Value, md: String, failure: Option<String>) -> Self {
        Report { json, md, failure }
    }
}

enum CliError {
    Usage(String),
    Failed(String),
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Failed(format!("{e:#}"))
    }
}

fn usage<E: std::fmt::Display>(flag: &str) -> impl FnOnce(E) -> CliError + '_ {
    move |e| CliError::Usage(format!("{flag}: {e}"))
}

fn check_n(n: usize) -> Result<usize, CliError> {
    if (2..=16).contains(&n) {
        Ok(n)
    } else {
        Err(CliError::Usage(format!("--n: {n} is outside 2..=16")))
    }
}

fn parse_pair(a: &PairArgs) -> Result<AllowedPair, CliError> {
    let n = check_n(a.common.n)?;
    match &a.pair {
        None => Ok(AllowedPair::root(n)),
        Some(s) => AllowedPair::parse(n, s).map_err(usage("--pair")),
    }
}

fn fail_if(cond: bool, what: impl Into<String>) -> Option<String> {
    (!cond).then(|| what.into())
}

fn rows_md(m: &ChartMatrix<Rational>) -> String {
    let n = m.shape.n();
    let mut out = String::from("|");
    for c in 0..2 * n + 1 {
        let _ = write!(out, " {} |", ColumnIndex::from_position(n, c));
    }
    out.push('\n');
    out.push_str(&"|---".repeat(2 * n + 1));
    out.push_str("|\n");
    for r in 0..n {
        out.push('|');
        for v in m.entries.row(r) {
            let _ = write!(out, " {v} |");
        }
        out.push('\n');
    }
    out
}

fn nice(pair: &AllowedPair, seed: u64) -> Result<ChartMatrix<Rational>, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(nice_chart(&build_shape(pair), &mut rng, MAX_ROOT_DRAWS).map_err(anyhow::Error::from)?.chart)
}

fn run(cmd: Command) -> Result<Report, CliError> {
    match cmd {
        Command::Tree { n } => {
            let tree = enumerate_tree(check_n(n)?).map_err(anyhow::Error::from)?;
            let mut md = format!("# Tree for n = {n}\n\n| path | pair | saturated |\n|---|---|---|\n");
            for (path, p) in tree.nodes() {
                let _ = writeln!(md, "| {} | {} | {} |", if path.is_empty() { "root" } else { &path }, p.label(), p.is_saturated());
            }
            Ok(Report::ok(tree.to_json(), md))
        }
        Command::Shape(a) => {
            let pair = parse_pair(&a)?;
            let shape = build_shape(&pair);
            let md = format!("# Shape of ({})\n\n```\n{}\n```\n", pair.label(), shape.row_strings().join("\n"));
            Ok(Report::ok(shape.to_json(), md))
        }
        Command::Solve(a) => {
            let pair = parse_pair(&a)?;
            let chart = nice(&pair, a.common.seed)?;
            let iso = check_isotropic(&chart.entries).is_none();
            let leftmost = check_leftmost_nonzero(&chart);
            let member = verify_richardson_membership(&chart.entries, &pair);
            let mut json = chart.to_json();
            json["checks"] = json!({"isotropic": iso, "leftmost_nonzero": leftmost, "richardson_member": member});
            let md = format!("# Chart for ({})\n\n{}", pair.label(), rows_md(&chart));
            let failure = fail_if(iso, "rows are not orthogonal")
                .or_else(|| fail_if(leftmost, "a leftmost entry vanishes"))
                .or_else(|| fail_if(member, "chart is not in the Richardson cell"));
            Ok(Report::checked(json, md, failure))
        }
        Command::Degenerate { pair: a, dump_matrices } => {
            let pair = parse_pair(&a)?;
            if pair.is_saturated() {
                return Err(CliError::Usage(format!("--pair: ({}) is saturated", pair.label())));
            }
            let shape = build_shape(&pair);
            let mut rng = ChaCha8Rng::seed_from_u64(a.common.seed);
            let plus = (0..MAX_ROOT_DRAWS)
                .map(|_| random_plus(&shape, &mut rng))
                .find(|p| is_nicest(&pair, p))
                .ok_or_else(|| CliError::Failed(format!("no nicest point in {MAX_ROOT_DRAWS} draws")))?;
            let step = degeneration_step(&pair, &plus).map_err(|e| CliError::Failed(format!("degeneration coherence: {e}")))?;
            let (dn, dd) = step.family.max_degrees();
            let mut json = json!({
                "pair": pair.to_json(),
                "plus": plus.to_json(&shape),
                "active": step.family.active.to_json(pair.n()),
                "max_num_degree": dn,
                "max_den_degree": dd,
                "left": step.left.2.to_json(),
                "right": step.right.2.to_json(),
                "coherent": true,
            });
            if dump_matrices {
                json["family"] = step.family.at.entries.to_json();
            }
            let md = format!(
                "# Degeneration of ({})\n\nactive entry row {} column {}\n\n## Left limit ({})\n\n{}\n## Right limit ({})\n\n{}",
                pair.label(),
                step.family.active.row + 1,
                step.family.active.column(pair.n()),
                step.left.0.label(),
                rows_md(&step.left.2),
                step.right.0.label(),
                rows_md(&step.right.2)
            );
            Ok(Report::ok(json, md))
        }
        Command::Cascade { common, dump_matrices } => {
            let n = check_n(common.n)?;
            let rep = cascade(n, common.seed, &CascadeOptions { dump_matrices })
                .map_err(|e| CliError::Failed(format!("degeneration coherence: {e}")))?;
            let mut md = format!(
                "# Cascade n = {n}, seed {}\n\n{} steps, {} leaves, max degrees {:?}\n\n| path | leaf | multiplicity |\n|---|---|---|\n",
                common.seed,
                rep.steps.len(),
                rep.leaves.len(),
                rep.max_degrees()
            );
            for l in &rep.leaves {
                let _ = writeln!(md, "| {} | {} | {} |", l.path, l.pair.label(), l.multiplicity);
            }
            let failure = fail_if(rep.leaves_complete(), "cascade does not reach every leaf exactly once");
            Ok(Report::checked(rep.to_json(dump_matrices), md, failure))
        }
        Command::Matroid(a) => {
            let pair = parse_pair(&a)?;
            let chart = nice(&pair, a.common.seed)?;
            let d = feasible_sets(&chart.entries);
            let mut md = format!("# Feasible sets of ({})\n\n", pair.label());
            for s in d.sets() {
                let _ = writeln!(md, "- {}", s.element_string());
            }
            Ok(Report::ok(json!({"chart": chart.to_json(), "feasible": d.to_json()}), md))
        }
        Command::Polytope(a) => {
            let pair = parse_pair(&a)?;
            let chart = nice(&pair, a.common.seed)?;
            let h = polytope_h(&chart.entries);
            let v = polytope_v(&chart.entries);
            let index = vertex_lattice_index(&v).map_err(anyhow::Error::from)?;
            let mut json = json!({"chart": chart.to_json(), "h": h.to_json(), "v": v.to_json(), "dimension": v.dimension(), "lattice_index": index});
            let mut failure = None;
            if pair.n() <= MAX_VERTEX_ENUM_N {
                let same = enumerate_vertices(&h).map_err(anyhow::Error::from)? == v.rational_vertices();
                json["vertex_enumeration_matches"] = json!(same);
                failure = fail_if(same, "vertices of the inequality description differ from the indicator vectors");
            }
            let md = format!(
                "# Polytope of ({})\n\n{} constraints, {} vertices, dimension {}, lattice index {}\n",
                pair.label(),
                h.constraints.len(),
                v.vertices.len(),
                v.dimension(),
                index_str(&index)
            );
            Ok(Report::checked(json, md, failure))
        }
        Command::Verify { check } => verify(check),
    }
}

fn index_str(i: &LatticeIndex) -> String {
    match i {
        LatticeIndex::Finite(v) => v.to_string(),
        LatticeIndex::Infinite => "infinite".into(),
    }
}

fn header(statement: &str, json: Value) -> Value {
    json!({"statement": statement, "report": json})
}

fn verify(check: Verify) -> Result<Report, CliError> {
    match check {
        Verify::Decomposition { common, point, grid, samples } => {
            let n = check_n(common.n)?;
            const STATEMENT: &str = "cube-decomposition: the leaf polytopes cover [0,1]^n with disjoint interiors";
            if let Some(p) = point {
                let x = p.split(',').map(|t| parse_rational(t.trim())).collect::<Result<Vec<_>, _>>().map_err(usage("--point"))?;
                if x.len() != n {
                    return Err(CliError::Usage(format!("--point: {} coordinates for n = {n}", x.len())));
                }
                let a = assign_region(&x).map_err(|e| CliError::Failed(format!("region assignment: {e}")))?;
                let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
                let leaf = LeafPolytope::draw(&a.pair(), &mut rng).map_err(anyhow::Error::from)?;
                let member = verify_membership(&x, &leaf.chart);
                let mut json = a.to_json();
                json["member"] = json!(member.is_ok());
                if let Err(v) = &member {
                    json["violated"] = json!(v.s.element_string());
                }
                let md = format!(
                    "# Region of x\n\nSC = {:?}, I = {:?}, I' = {:?}, member: {}\n",
                    a.sc,
                    a.i.to_vec(),
                    a.iprime.to_vec(),
                    member.is_ok()
                );
                let failure = member.err().map(|v| format!("membership: constraint {} violated", v.s.element_string()));
                return Ok(Report::checked(header(STATEMENT, json), md, failure));
            }
            let rep = match grid {
                Some(den) => {
                    if den == 0 {
                        return Err(CliError::Usage("--grid: denominator must be positive".into()));
                    }
                    coverage_test(n, den, &grid_jitter(n, den), common.seed)
                }
                None => random_coverage(n, samples, common.seed),
            }
            .map_err(anyhow::Error::from)?;
            let ok = if grid.is_some() { rep.all_members() } else { rep.all_pass() };
            Ok(Report::checked(header(STATEMENT, rep.to_json()), rep.to_markdown(), fail_if(ok, "cube-decomposition")))
        }
        Verify::Multiplicity(common) => {
            let n = check_n(common.n)?;
            let rep = cascade(n, common.seed, &CascadeOptions::default()).map_err(|e| CliError::Failed(e.to_string()))?;
            let m = multiplicity_report(&rep).map_err(anyhow::Error::from)?;
            let remark = vertex_lattice_index(&polytope_v(&index_two_example(&int(2), &int(3), &int(5)))).map_err(anyhow::Error::from)?;
            let mut md = "# Vertex lattice index per leaf\n\n| leaf | index |\n|---|---|\n".to_string();
            for (p, i) in &m {
                let _ = writeln!(md, "| {} | {} |", p.label(), index_str(i));
            }
            let _ = writeln!(md, "\nnon-leaf OG(3,7) example: index {}", index_str(&remark));
            let json = json!({
                "leaves": m.iter().map(|(p, i)| json!({"I": p.i().to_vec(), "Iprime": p.iprime().to_vec(), "index": i})).collect::<Vec<_>>(),
                "index_two_example": remark,
            });
            let failure = fail_if(m.values().all(LatticeIndex::is_one), "multiplicity-one: a leaf has index > 1")
                .or_else(|| fail_if(remark == LatticeIndex::Finite(2.into()), "index-two example"));
            Ok(Report::checked(header("multiplicity-one: every leaf polytope has vertex lattice index 1", json), md, failure))
        }
        Verify::PolytopesSame { common, samples } => {
            let n = check_n(common.n)?;
            if n > MAX_VERTEX_ENUM_N {
                return Err(CliError::Usage(format!("--n: vertex enumeration is limited to n ≤ {MAX_VERTEX_ENUM_N}")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
            let mut mismatches = Vec::new();
            for k in 0..samples {
                let a = random_isotropic(n, &mut rng).map_err(anyhow::Error::from)?;
                let enumerated = enumerate_vertices(&polytope_h(&a.entries)).map_err(anyhow::Error::from)?;
                if enumerated != polytope_v(&a.entries).rational_vertices() {
                    mismatches.push(k);
                }
            }
            let json = json!({"n": n, "samples": samples, "mismatches": mismatches});
            let md = format!("# Vertex enumeration\n\n{samples} points, {} mismatches\n", mismatches.len());
            let failure = fail_if(mismatches.is_empty(), "polytopes-same: vertex sets differ");
            Ok(Report::checked(header("polytopes-same: the inequality polytope is the hull of the feasible indicators", json), md, failure))
        }
        Verify::Formula { n } => {
            let n = check_n(n)?;
            let terms = class_formula(n);
            let mut md = format!("# Class formula, n = {n}\n\n| I | I^c | w(I) | w(I^c) | dimension |\n|---|---|---|---|---|\n");
            for t in &terms {
                let _ = writeln!(md, "| {:?} | {:?} | {} | {} | {} |", t.pair.i().to_vec(), t.pair.iprime().to_vec(), t.w, t.w_complement, t.dimension);
            }
            let ok = terms.len() == 1 << (n - 1) && terms.iter().all(ClassTerm::is_consistent);
            let json = json!({"n": n, "degree": n * (n - 1), "terms": terms.iter().map(ClassTerm::to_json).collect::<Vec<_>>()});
            Ok(Report::checked(header("class-formula: sum over I of sigma_I sigma_{I^c}", json), md, fail_if(ok, "class-formula")))
        }
        Verify::Appendix { common, points } => {
            let n = check_n(common.n)?;
            let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
            let all = enumerate_admissible(n, false);
            let (mut rank, mut bisub, mut split, mut plus_j) = (0usize, 0usize, 0usize, 0usize);
            for _ in 0..points {
                let a = random_isotropic(n, &mut rng).map_err(anyhow::Error::from)?;
                let d = feasible_sets(&a.entries);
                rank += all.iter().filter(|s| rank_of(&a.entries, s) != rank_via_matroid(&d, s)).count();
                bisub += usize::from(check_bisubmodular(&a.entries, 100, &mut rng).is_err());
                if a.pair().is_saturated() {
                    split += usize::from(check_split_rank(&a.entries).is_err());
                }
                let s = random_admissible(n, &mut rng);
                let j = ogdegen::combin::Subset::interval(1, n).minus(s.pos().union(s.neg()));
                plus_j += usize::from(check_rank_plus_j(&a.entries, &s, j).is_err());
            }
            let json = json!({
                "n": n,
                "points": points,
                "rank_oracle_discrepancies": rank,
                "bisubmodular_failures": bisub,
                "split_rank_failures": split,
                "rank_plus_j_failures": plus_j,
            });
            let md = format!(
                "# Delta-matroid properties, n = {n}\n\n| check | failures |\n|---|---|\n| rank oracle | {rank} |\n| bisubmodularity | {bisub} |\n| split rank | {split} |\n| rank plus J | {plus_j} |\n"
            );
            let failure = fail_if(rank == 0, "rank-oracle")
                .or_else(|| fail_if(bisub == 0, "bisubmodularity"))
                .or_else(|| fail_if(split == 0, "split-rank"))
                .or_else(|| fail_if(plus_j == 0, "rank-plus-J"));
            Ok(Report::checked(header("appendix: rank function of an isotropic subspace", json), md, failure))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let report = match run(cli.command) {
        Ok(r) => r,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("verification failed: {msg}");
            return ExitCode::from(1);
        }
    };
    let text = match cli.output.format {
        Format::Json => serde_json::to_string_pretty(&report.json).expect("values serialise") + "\n",
        Format::Md => report.md,
    };
    print!("{text}");
    if let Some(path) = &cli.output.out {
        if let Err(e) = std::fs::write(path, &text) {
            eprintln!("error: --out {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    match report.failure {
        None => ExitCode::SUCCESS,
        Some(what) => {
            eprintln!("verification failed: {what}");
            ExitCode::from(1)
        }
    }
}
