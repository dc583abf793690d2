use std::fs;
use std::io::Write as _;
use std::path::Path;
use std::sync::Arc;

use actinf_core::rational::to_exact_string;
use actinf_core::{
    answer_query, build_network, direct_focus, iterated_focus, label_network, parse_belief_base,
    parse_conditional_with, parse_rational, parse_session, parse_session_for, select, z_partition,
    BeliefBase, Conditional, EngineConfig, Error, KnowledgeBase, Rational, Session,
};
use anyhow::{anyhow, Context};

use crate::format::{columns, number, tsv};
use crate::{ActivationArgs, Cli, Command, DotArgs, FocusArgs, OutputFormat, QueryArgs, SessionShowArgs};

pub struct Report {
    pub text: String,
    pub code: i32,
}

impl Report {
    fn ok(text: String) -> Report {
        Report { text, code: 0 }
    }
}

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub error: anyhow::Error,
    /// Output produced before the failure.
    pub stdout: String,
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Failure {
        let code = match error.downcast_ref::<Error>() {
            Some(Error::Inconsistent { .. }) => 1,
            _ => 2,
        };
        Failure { code, error, stdout: String::new() }
    }
}

impl From<Error> for Failure {
    fn from(error: Error) -> Failure {
        anyhow::Error::new(error).into()
    }
}

type Outcome = Result<Report, Failure>;

pub fn execute(cli: &Cli) -> Outcome {
    let style = Style { format: cli.format, exact: cli.exact || cli.format == OutputFormat::Tsv };
    match &cli.command {
        Command::Check(args) => check(&load_base(&args.base)?),
        Command::Zpartition(args) => zpartition(&load_base(&args.base)?, style),
        Command::Activation(args) => activation(args, style),
        Command::Query(args) => query(args, style),
        Command::Focus(args) => focus(args),
        Command::ExportDot(args) => export_dot(args),
        Command::SessionShow(args) => session_show(args, style),
    }
}

#[derive(Clone, Copy)]
struct Style {
    format: OutputFormat,
    exact: bool,
}

impl Style {
    fn render(&self, rows: &[Vec<String>]) -> String {
        match self.format {
            OutputFormat::Table => columns(rows),
            OutputFormat::Tsv => tsv(rows),
        }
    }

    fn ids(&self, ids: &[String]) -> String {
        match (self.format, ids.is_empty()) {
            (OutputFormat::Table, true) => "-".to_string(),
            _ => ids.join(" "),
        }
    }
}

fn load_base(path: &Path) -> anyhow::Result<BeliefBase> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let doc = parse_belief_base(&text).with_context(|| format!("in {}", path.display()))?;
    Ok(doc.to_belief_base()?)
}

fn load_knowledge(path: &Path) -> anyhow::Result<Arc<KnowledgeBase>> {
    let base = load_base(path)?;
    Ok(Arc::new(KnowledgeBase::new(base).with_context(|| format!("in {}", path.display()))?))
}

fn parse_query(text: &str, base: Option<&BeliefBase>) -> anyhow::Result<Conditional> {
    parse_conditional_with("q", text, base.map(BeliefBase::signature))
        .with_context(|| format!("query `{text}`"))
}

fn parse_flag(name: &str, text: &str) -> anyhow::Result<Rational> {
    parse_rational(text.trim()).with_context(|| format!("--{name} {text}"))
}

fn read_session(path: &Path) -> anyhow::Result<Option<String>> {
    match fs::read_to_string(path) {
        Ok(text) => Ok(Some(text)),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(anyhow!(e).context(format!("cannot read {}", path.display()))),
    }
}

/// Opens a session: fresh when the file is absent, stored levels otherwise.
fn open_session(knowledge: Arc<KnowledgeBase>, path: Option<&Path>, reset: bool) -> anyhow::Result<Session> {
    let Some(path) = path else {
        return Ok(Session::fresh(knowledge));
    };
    let Some(text) = read_session(path)? else {
        return Ok(Session::fresh(knowledge));
    };
    match parse_session_for(&text, knowledge.base()) {
        Ok(state) => Ok(Session::with_state(knowledge, state)?),
        Err(Error::UnknownId(_) | Error::IdSetMismatch(_)) if reset => {
            let previous = parse_session(&text).with_context(|| format!("in {}", path.display()))?;
            Ok(Session::reset_from(knowledge, &previous))
        }
        Err(e @ (Error::UnknownId(_) | Error::IdSetMismatch(_))) => Err(anyhow!(e).context(format!(
            "session {} does not match the belief base (use --reset-session to start over)",
            path.display()
        ))),
        Err(e) => Err(anyhow!(e).context(format!("in {}", path.display()))),
    }
}

/// Replaces `path` in one rename so readers never see a partial file.
fn write_atomic(path: &Path, text: &str) -> anyhow::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp =
        tempfile::NamedTempFile::new_in(dir).with_context(|| format!("cannot write to {}", dir.display()))?;
    tmp.write_all(text.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).with_context(|| format!("cannot replace {}", path.display()))?;
    Ok(())
}

fn inconsistent_report(remainder: &[String]) -> Report {
    Report { text: format!("inconsistent\nremainder: {}\n", remainder.join(" ")), code: 1 }
}

fn check(base: &BeliefBase) -> Outcome {
    match z_partition(base) {
        Ok(_) => Ok(Report::ok("consistent\n".into())),
        Err(Error::Inconsistent { remainder }) => Ok(inconsistent_report(&remainder)),
        Err(e) => Err(e.into()),
    }
}

fn zpartition(base: &BeliefBase, style: Style) -> Outcome {
    let zp = match z_partition(base) {
        Ok(zp) => zp,
        Err(Error::Inconsistent { remainder }) => return Ok(inconsistent_report(&remainder)),
        Err(e) => return Err(e.into()),
    };
    let mut rows: Vec<Vec<String>> =
        zp.layers.iter().enumerate().map(|(i, layer)| vec![i.to_string(), style.ids(layer)]).collect();
    if !zp.vacuous.is_empty() {
        rows.push(vec!["vacuous".into(), style.ids(&zp.vacuous)]);
    }
    Ok(Report::ok(style.render(&rows)))
}

fn activation(args: &ActivationArgs, style: Style) -> Outcome {
    let knowledge = load_knowledge(&args.base.base)?;
    let q = parse_query(&args.query, Some(knowledge.base()))?;
    let session = open_session(knowledge.clone(), args.session.as_deref(), false)?;
    let theta = args.theta.as_deref().map(|t| parse_flag("theta", t)).transpose()?;
    let (_, profile) = session.activation(&q)?;
    let selected = theta.as_ref().map(|t| select(&profile, t)).transpose()?;

    let mut header: Vec<String> = ["id", "Z", "B", "W", "S", "A"].map(String::from).into();
    if let Some(t) = &theta {
        header.push(match style.format {
            OutputFormat::Tsv => "selected".into(),
            OutputFormat::Table => format!("A>={}", number(t, style.exact)),
        });
    }
    let mut rows = vec![header];
    for row in &profile.rows {
        let mut cells = vec![
            row.id.clone(),
            knowledge.partition().z_rank(&row.id)?.to_string(),
            number(&row.base_level, style.exact),
            to_exact_string(&row.weighting),
            number(&row.spreading, style.exact),
            number(&row.total, style.exact),
        ];
        if let Some(sel) = &selected {
            let hit = sel.contains(&row.id);
            cells.push(match (style.format, hit) {
                (OutputFormat::Tsv, true) => "1".into(),
                (OutputFormat::Tsv, false) => "0".into(),
                (OutputFormat::Table, true) => "*".into(),
                (OutputFormat::Table, false) => String::new(),
            });
        }
        rows.push(cells);
    }
    Ok(Report::ok(style.render(&rows)))
}

fn engine_config(args: &QueryArgs) -> anyhow::Result<EngineConfig> {
    let delta = parse_flag("delta", &args.delta)?;
    let config = match (&args.theta, &args.schedule) {
        (Some(theta), _) => EngineConfig::new(parse_flag("theta", theta)?, delta)?,
        (None, Some(list)) => {
            let schedule =
                list.split(',').map(|t| parse_flag("schedule", t)).collect::<anyhow::Result<_>>()?;
            EngineConfig::with_schedule(schedule, delta)?
        }
        (None, None) => unreachable!("clap requires --theta or --schedule"),
    };
    Ok(if args.no_forget { config.without_forgetting() } else { config })
}

fn query(args: &QueryArgs, style: Style) -> Outcome {
    let knowledge = load_knowledge(&args.base.base)?;
    let q = parse_query(&args.query, Some(knowledge.base()))?;
    let config = engine_config(args)?;
    let mut session = open_session(knowledge, args.session.as_deref(), args.reset_session)?;
    let (response, trace) = answer_query(&mut session, &q, &config)?;

    let mut rows: Vec<Vec<String>> = Vec::new();
    match style.format {
        OutputFormat::Tsv => rows.push(vec!["response".into(), response.to_string()]),
        OutputFormat::Table => rows.push(vec![response.to_string()]),
    }
    for (i, st) in trace.steps.iter().enumerate() {
        let theta = number(&st.theta, style.exact);
        rows.push(match style.format {
            OutputFormat::Tsv => vec![
                "step".into(),
                (i + 1).to_string(),
                theta,
                st.response.to_string(),
                style.ids(&st.selected),
            ],
            OutputFormat::Table => {
                vec![format!("θ={theta}"), st.response.to_string(), style.ids(&st.selected)]
            }
        });
    }
    let remembered = trace.memory_selection.as_ref().map(|sel| style.ids(sel));
    let text = match style.format {
        OutputFormat::Tsv => {
            if let Some(ids) = remembered {
                rows.push(vec!["remembered".into(), ids]);
            }
            tsv(&rows)
        }
        OutputFormat::Table => {
            let tail = remembered.map(|ids| format!("remembered: {ids}\n")).unwrap_or_default();
            format!("{}\n{}{tail}", rows[0][0], columns(&rows[1..]))
        }
    };

    if let (Some(path), Some(_)) = (&args.session, &trace.memory_selection) {
        if let Err(error) = write_atomic(path, &actinf_core::serialize_session(session.state())) {
            return Err(Failure { stdout: text, ..error.into() });
        }
    }
    Ok(Report::ok(text))
}

fn focus(args: &FocusArgs) -> Outcome {
    let base = load_base(&args.base.base)?;
    let q = parse_query(&args.query, None)?;
    let ids = if args.depth == 0 { direct_focus(&base, &q) } else { iterated_focus(&base, &q, args.depth) };
    Ok(Report::ok(format!("{}\n", ids.join(" "))))
}

fn export_dot(args: &DotArgs) -> Outcome {
    let base = load_base(&args.base.base)?;
    let network = build_network(&base);
    let labels = match &args.query {
        Some(text) => Some(label_network(&network, &parse_query(text, Some(&base))?)?),
        None => None,
    };
    let mut out = String::from("graph network {\n");
    let mut vertices: Vec<_> = network.vertices().to_vec();
    vertices.sort();
    for v in &vertices {
        match &labels {
            None => out.push_str(&format!("  \"{v}\";\n")),
            Some(labels) => {
                let tau = labels.tau(v).map(to_exact_string).unwrap_or_else(|| "0".into());
                let step = match labels.step(v).flatten() {
                    Some(s) => s.to_string(),
                    None => "∞".into(),
                };
                out.push_str(&format!("  \"{v}\" [label=\"{v} τ={tau} ({step})\"];\n"));
            }
        }
    }
    for (a, b) in network.edges() {
        out.push_str(&format!("  \"{a}\" -- \"{b}\";\n"));
    }
    out.push_str("}\n");
    Ok(Report::ok(out))
}

fn session_show(args: &SessionShowArgs, style: Style) -> Outcome {
    let text = fs::read_to_string(&args.session)
        .with_context(|| format!("cannot read {}", args.session.display()))?;
    let in_file = || format!("in {}", args.session.display());
    let (state, order): (_, Vec<String>) = match &args.base {
        Some(path) => {
            let base = load_base(path)?;
            let state = parse_session_for(&text, &base).with_context(in_file)?;
            (state, base.ids().map(str::to_string).collect())
        }
        None => {
            let state = parse_session(&text).with_context(in_file)?;
            let ids = state.base_levels().keys().cloned().collect();
            (state, ids)
        }
    };
    let mut rows: Vec<Vec<String>> = match style.format {
        OutputFormat::Tsv => vec![
            vec!["@queries".into(), state.query_count().to_string()],
            vec!["@resets".into(), state.resets().to_string()],
        ],
        OutputFormat::Table => vec![vec!["id".into(), "B".into()]],
    };
    for id in &order {
        rows.push(vec![id.clone(), number(&state.base_levels()[id], style.exact)]);
    }
    let text = match style.format {
        OutputFormat::Tsv => tsv(&rows),
        OutputFormat::Table => {
            format!("queries: {}\nresets: {}\n{}", state.query_count(), state.resets(), columns(&rows))
        }
    };
    Ok(Report::ok(text))
}
