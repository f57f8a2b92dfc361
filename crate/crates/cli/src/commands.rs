use std::io::Write;
use std::path::Path;
use std::time::Duration;

use radiobook_core::bounds::{lower_bound_total, upper_bound_total};
use radiobook_core::constructive::{construct, ConstructError, Strategy};
use radiobook_core::io::{
    export_dot, graph_from_json, graph_to_json, labeling_from_json, FormatError, LabelingJson,
};
use radiobook_core::{
    all_pairs_distances, build_stacked_book, label_stacked_book, solve_exact, validate, BookParams,
    BoundsReport, DistanceMatrix, Graph, GraphError, Labeling, SolveConfig, SolveError,
    SolveStatus, ValidationReport, VertexId,
};
use serde::Serialize;

use crate::error::{CliError, CliResult, ErrorCode};
use crate::{
    Cli, Command, ConstructArgs, GraphFormat, GraphSource, LabelArgs, SolveArgs, StrategyArg,
    TableArgs, TableFormat, VerifyArgs, THREADS_ENV,
};

pub(crate) fn dispatch(cli: &Cli, out: &mut dyn Write) -> CliResult<i32> {
    let json = cli.json;
    match &cli.command {
        Command::Construct(a) => construct_cmd(a, json, out),
        Command::Bounds(a) => bounds_cmd(a.m, a.n, json, out),
        Command::Label(a) => label_cmd(a, json, out),
        Command::Verify(a) => verify_cmd(a, json, out),
        Command::Solve(a) => solve_cmd(a, json, out),
        Command::Table(a) => table_cmd(a, json, out),
    }
}

/// A closed pipe (e.g. `| head`) is not an error.
fn emit(out: &mut dyn Write, text: &str) -> CliResult<()> {
    let written = out
        .write_all(text.as_bytes())
        .and_then(|_| {
            if text.ends_with('\n') {
                Ok(())
            } else {
                out.write_all(b"\n")
            }
        })
        .and_then(|_| out.flush());
    match written {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::new(
            ErrorCode::EOutput,
            format!("cannot write output: {e}"),
        )),
        _ => Ok(()),
    }
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> CliResult<()> {
    emit(
        out,
        &serde_json::to_string_pretty(value).expect("output serializes"),
    )
}

fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| {
        CliError::new(
            ErrorCode::EInput,
            format!("cannot read {}: {e}", path.display()),
        )
    })
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| {
        CliError::new(
            ErrorCode::EOutput,
            format!("cannot write {}: {e}", path.display()),
        )
    })
}

fn book(m: usize, n: usize) -> CliResult<Graph> {
    build_stacked_book(m, n).map_err(|e| CliError::new(ErrorCode::ERange, e.to_string()))
}

fn graph_ref(g: &Graph) -> Option<String> {
    g.book_params().map(|(m, n)| format!("G_{m}_{n}"))
}

fn load_graph(src: &GraphSource) -> CliResult<Graph> {
    match (&src.graph, src.m, src.n) {
        (Some(path), _, _) => graph_from_json(&read_file(path)?)
            .map_err(|e| CliError::new(ErrorCode::EGraph, format!("{}: {e}", path.display()))),
        (None, Some(m), Some(n)) => book(m, n),
        _ => Err(CliError::new(
            ErrorCode::EUsage,
            "give either --graph FILE or both --m and --n",
        )),
    }
}

fn distances(g: &Graph) -> CliResult<DistanceMatrix> {
    all_pairs_distances(g).map_err(|e: GraphError| CliError::new(ErrorCode::EGraph, e.to_string()))
}

fn load_labeling(g: &Graph, path: &Path) -> CliResult<Labeling> {
    labeling_from_json(g, &read_file(path)?).map_err(|e: FormatError| {
        CliError::new(ErrorCode::ELabeling, format!("{}: {e}", path.display()))
    })
}

fn construct_error(e: ConstructError) -> CliError {
    match e {
        ConstructError::OutOfRange { .. } | ConstructError::Graph(_) => {
            CliError::new(ErrorCode::ERange, e.to_string())
        }
        ConstructError::BoundExceeded { .. } => CliError::new(ErrorCode::EConstruct, e.to_string()),
    }
}

/// Worker count from `RADIOBOOK_THREADS`: `(requested, used)`. The search
/// itself runs on one worker so that node counts are reproducible.
fn threads() -> CliResult<(usize, usize)> {
    match std::env::var(THREADS_ENV) {
        Err(std::env::VarError::NotPresent) => Ok((1, 1)),
        Err(e) => Err(CliError::new(
            ErrorCode::EEnv,
            format!("{THREADS_ENV}: {e}"),
        )),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(t) if t >= 1 => Ok((t, 1)),
            _ => Err(CliError::new(
                ErrorCode::EEnv,
                format!("{THREADS_ENV} must be a positive integer, got {v:?}"),
            )),
        },
    }
}

#[derive(Serialize)]
struct ConstructSummary {
    m: usize,
    n: usize,
    num_vertices: usize,
    num_edges: usize,
    format: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    out: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dot: Option<String>,
}

fn construct_cmd(a: &ConstructArgs, json: bool, out: &mut dyn Write) -> CliResult<i32> {
    let (m, n) = (a.book.m, a.book.n);
    let g = book(m, n)?;
    if a.labeling.is_some() && a.format != GraphFormat::Dot {
        return Err(CliError::new(
            ErrorCode::EUsage,
            "--labeling needs --format dot",
        ));
    }
    let text = match a.format {
        GraphFormat::Json => graph_to_json(&g),
        GraphFormat::Dot => {
            let f = a
                .labeling
                .as_deref()
                .map(|p| load_labeling(&g, p))
                .transpose()?;
            export_dot(&g, f.as_ref())
        }
    };
    let mut summary = ConstructSummary {
        m,
        n,
        num_vertices: g.num_vertices(),
        num_edges: g.num_edges(),
        format: match a.format {
            GraphFormat::Json => "json",
            GraphFormat::Dot => "dot",
        },
        out: None,
        dot: None,
    };
    match &a.out {
        Some(path) => {
            write_file(path, &text)?;
            summary.out = Some(path.display().to_string());
            if json {
                emit_json(out, &summary)?;
            } else {
                emit(
                    out,
                    &format!(
                        "wrote G_{m}_{n} ({} vertices, {} edges) to {}",
                        summary.num_vertices,
                        summary.num_edges,
                        path.display()
                    ),
                )?;
            }
        }
        None if json && a.format == GraphFormat::Dot => {
            summary.dot = Some(text);
            emit_json(out, &summary)?;
        }
        None => emit(out, &text)?,
    }
    Ok(0)
}

fn bounds_cmd(m: usize, n: usize, json: bool, out: &mut dyn Write) -> CliResult<i32> {
    let report = BoundsReport::evaluate(BookParams::new(m, n));
    if json {
        emit_json(out, &report)?;
        return Ok(0);
    }
    let rows = report.rows();
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut text = format!("bounds for G_{m}_{n}\n");
    for (name, value) in rows {
        let shown = value.map_or_else(|| "n/a".to_string(), |v| v.to_string());
        text.push_str(&format!("  {name:<width$}  {shown:>6}\n"));
    }
    text.push_str(&format!(
        "  {:<width$}  {:>6}\n",
        "gss_coincide", report.gss_coincide
    ));
    for (name, note) in &report.notes {
        text.push_str(&format!("  note: {name}: {note}\n"));
    }
    emit(out, &text)?;
    Ok(0)
}

#[derive(Serialize)]
struct LabelOutput {
    m: usize,
    n: usize,
    strategy: Strategy,
    span: u64,
    valid: bool,
    upper_bound: Option<u64>,
    within_bound: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    out: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labeling: Option<LabelingJson>,
}

fn label_cmd(a: &LabelArgs, json: bool, out: &mut dyn Write) -> CliResult<i32> {
    let (m, n) = (a.book.m, a.book.n);
    let strategy = match a.strategy {
        StrategyArg::Rotation => Strategy::Rotation,
        StrategyArg::GreedyDistance => Strategy::GreedyDistance,
    };
    let f = if strategy == Strategy::Rotation && m >= 5 {
        label_stacked_book(m, n).map_err(construct_error)?
    } else {
        construct(m, n, strategy).map_err(construct_error)?.labeling
    };
    let g = book(m, n)?;
    let report = validate(&distances(&g)?, &f)
        .map_err(|e| CliError::new(ErrorCode::EConstruct, e.to_string()))?;
    let upper_bound = upper_bound_total(BookParams::new(m, n)).ok();
    let lj = LabelingJson::from_labeling(&g, &f, graph_ref(&g));
    if let Some(path) = &a.out {
        write_file(
            path,
            &serde_json::to_string_pretty(&lj).expect("labeling serializes"),
        )?;
    }
    let summary = LabelOutput {
        m,
        n,
        strategy,
        span: report.span,
        valid: report.valid,
        upper_bound,
        within_bound: upper_bound.map(|b| report.span <= b),
        out: a.out.as_ref().map(|p| p.display().to_string()),
        labeling: a.out.is_none().then_some(lj),
    };
    if json {
        emit_json(out, &summary)?;
        return Ok(0);
    }
    let mut text = String::new();
    if a.out.is_none() {
        text.push_str(&label_grid(&g, &f));
    }
    let verdict = if report.valid { "valid" } else { "INVALID" };
    let name = serde_json::to_value(strategy).expect("strategy serializes");
    text.push_str(&format!(
        "G_{m}_{n} ({}): span {}, {verdict}",
        name.as_str().unwrap_or_default(),
        report.span
    ));
    match upper_bound {
        Some(b) if report.span <= b => text.push_str(&format!(", within upper bound {b}")),
        Some(b) => text.push_str(&format!(", above upper bound {b}")),
        None => {}
    }
    emit(out, &text)?;
    Ok(0)
}

/// One line per page, spokes left to right.
fn label_grid(g: &Graph, f: &Labeling) -> String {
    let Some((m, n)) = g.book_params() else {
        return String::new();
    };
    let width = f.max().unwrap_or(0).to_string().len();
    let mut text = String::new();
    for page in 1..=n {
        let labels: Vec<String> = (0..m)
            .map(|s| format!("{:>width$}", f.get(VertexId((page - 1) * m + s))))
            .collect();
        text.push_str(&format!("page {page:>2}: {}\n", labels.join(" ")));
    }
    text
}

fn vertex_name(g: &Graph, v: VertexId) -> String {
    g.coord(v)
        .map_or_else(|| format!("v{}", v.0), |c| c.to_string())
}

fn verify_cmd(a: &VerifyArgs, json: bool, out: &mut dyn Write) -> CliResult<i32> {
    let g = load_graph(&a.source)?;
    let dm = distances(&g)?;
    let f = load_labeling(&g, &a.labeling)?;
    let report: ValidationReport =
        validate(&dm, &f).map_err(|e| CliError::new(ErrorCode::ELabeling, e.to_string()))?;
    if json {
        emit_json(out, &report)?;
    } else if report.valid {
        emit(out, &format!("valid: span {}", report.span))?;
    } else {
        let mut text = format!(
            "invalid: {} violating pair(s), span {}\n",
            report.violations.len(),
            report.span
        );
        for v in report.violations.iter().take(20) {
            text.push_str(&format!(
                "  {} -- {}: distance {}, need gap {}, have {}\n",
                vertex_name(&g, v.u),
                vertex_name(&g, v.v),
                v.distance,
                v.required_gap,
                v.actual_gap
            ));
        }
        if report.violations.len() > 20 {
            text.push_str(&format!("  ... {} more\n", report.violations.len() - 20));
        }
        emit(out, &text)?;
    }
    Ok(if report.valid { 0 } else { 1 })
}

/// Constructive labeling of a stacked book, when one exists, to seed search.
fn seed(g: &Graph) -> Option<Labeling> {
    let (m, n) = g.book_params()?;
    construct(m, n, Strategy::Rotation).ok().map(|c| c.labeling)
}

fn solve_config(
    node_budget: u64,
    time_budget: Option<f64>,
    upper_start: Option<u64>,
) -> CliResult<SolveConfig> {
    let time_budget = match time_budget {
        None => None,
        Some(t) if t.is_finite() && t > 0.0 => Some(Duration::from_secs_f64(t)),
        Some(t) => {
            return Err(CliError::new(
                ErrorCode::EUsage,
                format!("--time-budget must be a positive number of seconds, got {t}"),
            ))
        }
    };
    if node_budget == 0 {
        return Err(CliError::new(
            ErrorCode::EUsage,
            "--node-budget must be positive",
        ));
    }
    Ok(SolveConfig {
        upper_start,
        node_budget: Some(node_budget),
        time_budget,
        ..Default::default()
    })
}

fn solve_error(e: SolveError) -> CliError {
    let code = match e {
        SolveError::TooLarge(_) => ErrorCode::ETooLarge,
        SolveError::ZeroBudget => ErrorCode::EUsage,
        SolveError::Empty => ErrorCode::EGraph,
        _ => ErrorCode::ESolve,
    };
    CliError::new(code, e.to_string())
}

#[derive(Serialize)]
struct SolveOutput {
    status: SolveStatus,
    radio_number: Option<u64>,
    witness_span: u64,
    nodes_explored: u64,
    threads_requested: usize,
    threads_used: usize,
    seed_span: Option<u64>,
    witness: LabelingJson,
}

fn solve_cmd(a: &SolveArgs, json: bool, out: &mut dyn Write) -> CliResult<i32> {
    let (threads_requested, threads_used) = threads()?;
    let g = load_graph(&a.source)?;
    let dm = distances(&g)?;
    let mut cfg = solve_config(a.node_budget, a.time_budget, a.upper_start)?;
    if !a.no_seed {
        cfg.incumbent = seed(&g);
    }
    let seed_span = cfg
        .incumbent
        .as_ref()
        .and_then(|f| radiobook_core::span(f).ok());
    let r = solve_exact(&dm, &cfg).map_err(solve_error)?;
    let witness = LabelingJson::from_labeling(&g, &r.witness, graph_ref(&g));
    if let Some(path) = &a.out {
        write_file(
            path,
            &serde_json::to_string_pretty(&witness).expect("labeling serializes"),
        )?;
    }
    if json {
        emit_json(
            out,
            &SolveOutput {
                status: r.status,
                radio_number: r.radio_number,
                witness_span: r.witness_span,
                nodes_explored: r.nodes_explored,
                threads_requested,
                threads_used,
                seed_span,
                witness,
            },
        )?;
        return Ok(0);
    }
    let line = match r.status {
        SolveStatus::Optimal => format!(
            "optimal: radio number {} ({} nodes)",
            r.witness_span, r.nodes_explored
        ),
        SolveStatus::IncumbentOnly => format!(
            "budget exhausted: best span {} after {} nodes (not certified)",
            r.witness_span, r.nodes_explored
        ),
        SolveStatus::InfeasibleBudget => format!(
            "no labeling with span <= {} exists; best known span {} ({} nodes)",
            a.upper_start.unwrap_or_default(),
            r.witness_span,
            r.nodes_explored
        ),
    };
    emit(out, &line)?;
    Ok(0)
}

/// `5..8` (inclusive), `5,7,9` or `5`.
fn parse_range(flag: &str, text: &str) -> CliResult<Vec<usize>> {
    let bad = || CliError::new(ErrorCode::EUsage, format!("{flag}: cannot parse {text:?}"));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let values = if let Some((lo, hi)) = text.split_once("..") {
        let (lo, hi) = (num(lo)?, num(hi.trim_start_matches('='))?);
        if lo > hi {
            return Err(bad());
        }
        (lo..=hi).collect()
    } else {
        text.split(',').map(num).collect::<CliResult<Vec<_>>>()?
    };
    if values.is_empty() {
        return Err(bad());
    }
    Ok(values)
}

#[derive(Debug, Serialize)]
struct TableRow {
    m: usize,
    n: usize,
    lower: Option<u64>,
    upper: Option<u64>,
    constructive_span: Option<u64>,
    exact: Option<u64>,
    nodes_explored: Option<u64>,
}

const COLUMNS: [&str; 7] = [
    "m",
    "n",
    "lower",
    "upper",
    "constructive_span",
    "exact",
    "nodes_explored",
];

impl TableRow {
    fn cells(&self) -> [String; 7] {
        let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
        [
            self.m.to_string(),
            self.n.to_string(),
            opt(self.lower),
            opt(self.upper),
            opt(self.constructive_span),
            opt(self.exact),
            opt(self.nodes_explored),
        ]
    }
}

#[derive(Serialize)]
struct TableOutput {
    threads_requested: usize,
    threads_used: usize,
    rows: Vec<TableRow>,
}

fn render_table(rows: &[TableRow], format: TableFormat) -> String {
    let mut text = String::new();
    match format {
        TableFormat::Csv => {
            text.push_str(&COLUMNS.join(","));
            text.push('\n');
            for r in rows {
                text.push_str(&r.cells().join(","));
                text.push('\n');
            }
        }
        TableFormat::Markdown => {
            text.push_str(&format!("| {} |\n", COLUMNS.join(" | ")));
            text.push_str(&format!("|{}\n", "---|".repeat(COLUMNS.len())));
            for r in rows {
                text.push_str(&format!("| {} |\n", r.cells().join(" | ")));
            }
        }
    }
    text
}

fn table_cmd(a: &TableArgs, json: bool, out: &mut dyn Write) -> CliResult<i32> {
    let (threads_requested, threads_used) = threads()?;
    let ms = parse_range("--m-range", &a.m_range)?;
    let ns = parse_range("--n-range", &a.n_range)?;
    let cfg = solve_config(a.node_budget, None, None)?;
    let mut rows = Vec::new();
    for &m in &ms {
        for &n in &ns {
            let p = BookParams::new(m, n);
            let constructive = construct(m, n, Strategy::Rotation).ok();
            let mut row = TableRow {
                m,
                n,
                lower: lower_bound_total(p).ok(),
                upper: upper_bound_total(p).ok(),
                constructive_span: constructive.as_ref().map(|c| c.span),
                exact: None,
                nodes_explored: None,
            };
            if a.exact {
                if let Ok(g) = build_stacked_book(m, n) {
                    let cfg = SolveConfig {
                        incumbent: constructive.map(|c| c.labeling),
                        ..cfg.clone()
                    };
                    // Rows past the exact-search size limit keep blank cells.
                    match solve_exact(&distances(&g)?, &cfg) {
                        Ok(r) => {
                            row.exact = r.radio_number;
                            row.nodes_explored = Some(r.nodes_explored);
                        }
                        Err(SolveError::TooLarge(_)) => {}
                        Err(e) => return Err(solve_error(e)),
                    }
                }
            }
            rows.push(row);
        }
    }
    let text = render_table(&rows, a.format);
    if let Some(path) = &a.out {
        write_file(path, &text)?;
    }
    if json {
        emit_json(
            out,
            &TableOutput {
                threads_requested,
                threads_used,
                rows,
            },
        )?;
    } else if let Some(path) = &a.out {
        emit(
            out,
            &format!("wrote {} rows to {}", rows.len(), path.display()),
        )?;
    } else {
        emit(out, &text)?;
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("x", "5..8").unwrap(), vec![5, 6, 7, 8]);
        assert_eq!(parse_range("x", "5..=6").unwrap(), vec![5, 6]);
        assert_eq!(parse_range("x", "5,7,9").unwrap(), vec![5, 7, 9]);
        assert_eq!(parse_range("x", "4").unwrap(), vec![4]);
        for bad in ["", "8..5", "a", "5,,7", "5..x"] {
            assert_eq!(
                parse_range("x", bad).unwrap_err().code,
                ErrorCode::EUsage,
                "{bad}"
            );
        }
    }

    #[test]
    fn csv_header_order_and_blanks() {
        let rows = [TableRow {
            m: 4,
            n: 5,
            lower: Some(55),
            upper: None,
            constructive_span: Some(62),
            exact: None,
            nodes_explored: None,
        }];
        let csv = render_table(&rows, TableFormat::Csv);
        assert_eq!(
            csv,
            "m,n,lower,upper,constructive_span,exact,nodes_explored\n4,5,55,,62,,\n"
        );
        let md = render_table(&rows, TableFormat::Markdown);
        assert_eq!(md.lines().count(), 3);
        assert!(md
            .lines()
            .nth(2)
            .unwrap()
            .starts_with("| 4 | 5 | 55 |  | 62 |"));
    }

    #[test]
    fn grid_matches_vertex_numbering() {
        let g = build_stacked_book(3, 2).unwrap();
        let f = Labeling::new(vec![0, 4, 5, 2, 7, 8]);
        assert_eq!(label_grid(&g, &f), "page  1: 0 4 5\npage  2: 2 7 8\n");
    }
}
