use std::fmt::Display;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use treeinv_core::algebra::{AlgebraElement, QSymElement};
use treeinv_core::forest::{automorphism_order, enumerate_trees, parse_tree, RootedTree};
use treeinv_core::genfun::{u_by_enumeration, u_by_recurrence, verify_functional_equation};
use treeinv_core::invariant::{
    order_spec, qsym_strict_spec, qsym_weak_spec, strict_order_spec, BuiltinOperator, Invariant, InvariantSpec,
};
use treeinv_core::planar::{evaluate_planar, free_word_family, parse_planar_tree, LabelSet};
use treeinv_core::{invariant, verify, Error};

#[derive(Parser)]
#[command(name = "treeinv", version, about = "Algebra-valued invariants of rooted trees")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Recurrence,
    Enumerate,
    Verify,
}

#[derive(Subcommand)]
enum Command {
    /// List every rooted tree with the given number of vertices.
    Enumerate {
        #[arg(long)]
        vertices: usize,
    },
    /// Evaluate a built-in invariant on one tree or on all trees of a size.
    Invariant {
        #[arg(long, conflicts_with = "vertices", required_unless_present = "vertices")]
        tree: Option<String>,
        #[arg(long)]
        vertices: Option<usize>,
        /// delta-inv, nabla-inv, lambda-bar or lambda.
        #[arg(long)]
        operator: String,
        /// Degree bound for the quasi-symmetric operators.
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Generating-function coefficients U_1..U_N, or the functional-equation
    /// residual.
    Genfun {
        #[arg(long)]
        operator: String,
        #[arg(long)]
        terms: usize,
        #[arg(long, value_enum, default_value_t = Mode::Recurrence)]
        mode: Mode,
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Run an identity suite, or all of them.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Pairs of non-isomorphic trees the invariant does not separate.
    Collisions {
        #[arg(long, default_value = "lambda-bar")]
        operator: String,
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Evaluate a labeled planar tree with a test operator family.
    Planar {
        #[arg(long)]
        tree: String,
        #[arg(long)]
        labels: String,
        #[arg(long, default_value = "free-words")]
        operator: String,
        /// Word-length bound; defaults to the tree's vertex count.
        #[arg(long)]
        max_degree: Option<usize>,
    },
}

/// A command's result in every supported format.
struct Output {
    json: Value,
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    text: String,
    ok: bool,
}

impl Output {
    fn render(&self, format: Format) -> Result<String, Error> {
        Ok(match format {
            Format::Json => format!("{}\n", serde_json::to_string_pretty(&self.json).expect("json values serialize")),
            Format::Text => self.text.clone(),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let io = |e: csv::Error| Error::Domain(format!("csv output failed: {e}"));
                w.write_record(&self.header).map_err(io)?;
                for r in &self.rows {
                    w.write_record(r).map_err(io)?;
                }
                String::from_utf8(w.into_inner().map_err(|e| Error::Domain(e.to_string()))?)
                    .expect("csv output is utf-8")
            }
        })
    }
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
    match run(cli.command).and_then(|out| Ok((out.render(cli.format)?, out.ok))) {
        Ok((text, ok)) => {
            print!("{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Resource(_) => 2,
                _ => 1,
            })
        }
    }
}

fn run(command: Command) -> Result<Output, Error> {
    match command {
        Command::Enumerate { vertices } => enumerate(vertices),
        Command::Invariant {
            tree,
            vertices,
            operator,
            max_degree,
        } => {
            let trees = match (&tree, vertices) {
                (Some(t), _) => vec![parse_tree(t)?],
                (None, Some(n)) => enumerate_trees(n)?,
                (None, None) => unreachable!("clap requires one of --tree and --vertices"),
            };
            let bound = max_degree.unwrap_or_else(|| trees.iter().map(RootedTree::vertex_count).max().unwrap_or(0));
            let single = tree.is_some();
            match operator.parse::<BuiltinOperator>()? {
                BuiltinOperator::DeltaInv => Ok(table(strict_order_spec(), &trees, single)),
                BuiltinOperator::NablaInv => Ok(table(order_spec(), &trees, single)),
                BuiltinOperator::LambdaBar => Ok(table(qsym_spec(true, bound, &trees)?, &trees, single)),
                BuiltinOperator::Lambda => Ok(table(qsym_spec(false, bound, &trees)?, &trees, single)),
            }
        }
        Command::Genfun {
            operator,
            terms,
            mode,
            max_degree,
        } => {
            let bound = max_degree.unwrap_or(terms);
            match operator.parse::<BuiltinOperator>()? {
                BuiltinOperator::DeltaInv => genfun(strict_order_spec(), terms, mode),
                BuiltinOperator::NablaInv => genfun(order_spec(), terms, mode),
                BuiltinOperator::LambdaBar => genfun(qsym_strict_spec(bound), terms, mode),
                BuiltinOperator::Lambda => genfun(qsym_weak_spec(bound), terms, mode),
            }
        }
        Command::Verify { suite, max_n } => verify_suites(&suite, max_n),
        Command::Collisions {
            operator,
            max_n,
            max_degree,
        } => {
            let bound = max_degree.unwrap_or(max_n);
            match operator.parse::<BuiltinOperator>()? {
                BuiltinOperator::DeltaInv => Ok(collisions(strict_order_spec(), max_n)),
                BuiltinOperator::NablaInv => Ok(collisions(order_spec(), max_n)),
                BuiltinOperator::LambdaBar => Ok(collisions(qsym_strict_spec(bound), max_n)),
                BuiltinOperator::Lambda => Ok(collisions(qsym_weak_spec(bound), max_n)),
            }
        }
        Command::Planar {
            tree,
            labels,
            operator,
            max_degree,
        } => planar(&tree, &labels, &operator, max_degree),
    }
}

fn enumerate(vertices: usize) -> Result<Output, Error> {
    let trees = enumerate_trees(vertices)?;
    let keys: Vec<String> = trees.iter().map(|t| t.key().to_string()).collect();
    Ok(Output {
        json: json!(keys),
        header: vec!["tree", "alpha", "vertex_count"],
        rows: trees
            .iter()
            .map(|t| vec![t.key().to_string(), automorphism_order(t).to_string(), vertices.to_string()])
            .collect(),
        text: keys.iter().map(|k| format!("{k}\n")).collect(),
        ok: true,
    })
}

fn qsym_spec(strict: bool, bound: usize, trees: &[RootedTree]) -> Result<InvariantSpec<QSymElement>, Error> {
    if let Some(t) = trees.iter().find(|t| t.vertex_count() > bound) {
        return Err(Error::Domain(format!(
            "max degree {bound} is below the {} vertices of {t}",
            t.vertex_count()
        )));
    }
    Ok(if strict {
        qsym_strict_spec(bound)
    } else {
        qsym_weak_spec(bound)
    })
}

fn table<A: AlgebraElement + Display>(spec: InvariantSpec<A>, trees: &[RootedTree], single: bool) -> Output {
    let inv = Invariant::new(spec);
    let mut items = Vec::new();
    let mut rows = Vec::new();
    let mut text = String::new();
    for t in trees {
        let value = inv.evaluate(t);
        let alpha = automorphism_order(t).to_string();
        items.push(json!({ "tree": t.key().as_str(), "alpha": alpha, "value": value.to_json() }));
        text.push_str(&format!("{}\t{}\t{}\n", t.key(), alpha, value));
        rows.push(vec![t.key().to_string(), alpha, value.canonical_text()]);
    }
    let json = if single { items.remove(0) } else { Value::Array(items) };
    Output {
        json,
        header: vec!["tree", "alpha", "value"],
        rows,
        text,
        ok: true,
    }
}

fn genfun<A: AlgebraElement + Display>(spec: InvariantSpec<A>, terms: usize, mode: Mode) -> Result<Output, Error> {
    let inv = Invariant::new(spec);
    let values: Vec<(usize, A)> = match mode {
        Mode::Recurrence => u_by_recurrence(&inv, terms)?.terms.into_iter().zip(1..).map(|(a, n)| (n, a)).collect(),
        Mode::Enumerate => u_by_enumeration(&inv, terms)?.terms.into_iter().zip(1..).map(|(a, n)| (n, a)).collect(),
        Mode::Verify => verify_functional_equation(&inv, terms)?.into_coeffs().into_iter().enumerate().collect(),
    };
    let ok = !matches!(mode, Mode::Verify) || values.iter().all(|(_, a)| a.is_zero_value());
    let label = if matches!(mode, Mode::Verify) { "residual q^" } else { "U_" };
    Ok(Output {
        json: Value::Array(values.iter().map(|(_, a)| a.to_json()).collect()),
        header: vec!["n", "value"],
        rows: values.iter().map(|(n, a)| vec![n.to_string(), a.canonical_text()]).collect(),
        text: values
            .iter()
            .map(|(n, a)| format!("{label}{n} = {a}\n"))
            .collect(),
        ok,
    })
}

fn verify_suites(suite: &str, max_n: Option<usize>) -> Result<Output, Error> {
    let reports = verify::run(suite, max_n)?;
    let ok = reports.iter().all(|r| r.passed);
    let verdict = |p: bool| if p { "PASS" } else { "FAIL" };
    let json = if reports.len() == 1 {
        reports[0].to_json()
    } else {
        Value::Array(reports.iter().map(|r| r.to_json()).collect())
    };
    Ok(Output {
        json,
        header: vec!["suite", "result", "summary"],
        rows: reports
            .iter()
            .map(|r| vec![r.suite.clone(), verdict(r.passed).into(), r.summary.clone()])
            .collect(),
        text: reports
            .iter()
            .map(|r| format!("{} {}: {}\n", verdict(r.passed), r.suite, r.summary))
            .collect(),
        ok,
    })
}

fn collisions<A: AlgebraElement>(spec: InvariantSpec<A>, max_n: usize) -> Output {
    let found = invariant::collision_report(&Invariant::new(spec), max_n);
    Output {
        json: Value::Array(found.iter().map(|c| c.to_json()).collect()),
        header: vec!["n", "invariant", "tree_a", "tree_b", "alpha_collision"],
        rows: found
            .iter()
            .map(|c| {
                vec![
                    c.n.to_string(),
                    c.invariant.clone(),
                    c.trees[0].to_string(),
                    c.trees[1].to_string(),
                    c.alpha_collision.to_string(),
                ]
            })
            .collect(),
        text: found
            .iter()
            .map(|c| format!("n={} {} {} alpha_collision={}\n", c.n, c.trees[0], c.trees[1], c.alpha_collision))
            .collect(),
        ok: true,
    }
}

fn planar(tree: &str, labels: &str, operator: &str, max_degree: Option<usize>) -> Result<Output, Error> {
    if operator != "free-words" {
        return Err(Error::Domain(format!("unknown planar operator family {operator:?}; expected free-words")));
    }
    let labels = LabelSet::parse(labels)?;
    let tree = parse_planar_tree(tree)?;
    tree.validate(&labels)?;
    let ops = free_word_family(&labels, max_degree.unwrap_or(tree.vertex_count()));
    let value = evaluate_planar(&tree, &ops)?.to_json_named(labels.labels());
    let rendered = serde_json::to_string(&value).expect("json values serialize");
    Ok(Output {
        json: json!({ "tree": tree.to_string(), "value": value }),
        header: vec!["tree", "value"],
        rows: vec![vec![tree.to_string(), rendered.clone()]],
        text: format!("{tree}\t{rendered}\n"),
        ok: true,
    })
}
