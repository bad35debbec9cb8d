//! Argument parsing and subcommand dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use queencover_core::constructions::{central_rectangle, pattern_loss, stairs};
use queencover_core::coverage::{attack_field, cover_count, is_nonattacking};
use queencover_core::loss::{crossing_multiplicities, total_loss};
use queencover_core::search::{
    exhaustive_optimal_with, scan_thresholds, windowed_optimal_with, OptimalSet, SearchMode, SearchParams,
    ThresholdReport, DEFAULT_BUDGET,
};
use queencover_core::{Board, Configuration};
use serde_json::json;

use crate::cache::Cache;
use crate::config::parse_config;
use crate::driver::Parallel;
use crate::error::CliError;
use crate::record::{to_sorted_json, ResultRecord, SCHEMA_VERSION};
use crate::render::{render_board, Annotate};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    /// One JSON object per line with sorted keys.
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exhaustive,
    Windowed,
}

#[derive(Debug, Parser)]
#[command(name = "queencover", version, about = "Maximum-cover queen placements on centered boards")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Worker threads for searches; 0 means one per core.
    #[arg(long, default_value_t = 0, global = true)]
    pub workers: usize,
    /// Directory of cached search results.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Accepted for interface stability; every search here is exact and
    /// deterministic.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Refuse exhaustive searches over more than this many subsets.
    #[arg(long, default_value_t = DEFAULT_BUDGET, global = true)]
    pub budget: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cover and attacking numbers of a configuration.
    Cover {
        #[arg(long)]
        config: String,
        #[arg(long)]
        n: u32,
    },
    /// Loss decomposition on large odd and even boards (and on `--n`).
    Loss {
        #[arg(long)]
        config: String,
        #[arg(long)]
        n: Option<u32>,
    },
    /// All optimal configurations for `q` queens on `B_n`.
    Search {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
        mode: ModeArg,
        /// Side of the central box in windowed mode (default q+3).
        #[arg(long)]
        window: Option<u32>,
        /// Exhaustive mode only: skip attacking configurations.
        #[arg(long)]
        nonattacking: bool,
        /// Windowed mode: how often the window may grow when an optimum
        /// touches its edge.
        #[arg(long, default_value_t = 1)]
        max_retries: u32,
    },
    /// Scan board sizes for the non-attacking and stabilizing thresholds.
    Thresholds {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        from: u32,
        #[arg(long)]
        to: u32,
    },
    /// The stairs pattern for `q` queens and its losses.
    Stairs {
        #[arg(long)]
        q: u32,
    },
    /// Class table of stored search results.
    Fundamentals {
        #[arg(long)]
        input: PathBuf,
    },
    /// Draw a configuration.
    Render {
        #[arg(long)]
        config: String,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = Annotate::None)]
        annotate: Annotate,
    },
    /// Recompute stored results and report differences.
    Verify {
        #[arg(long)]
        input: PathBuf,
        /// Also repeat the search and compare the optimal sets.
        #[arg(long)]
        rerun: bool,
    },
}

/// Parse `args` and run. Returns the process exit status; diagnostics go
/// to `err`.
pub fn run_main<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match run(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let mut ctx = Context { cli, out, driver: None };
    match &cli.command {
        Command::Cover { config, n } => ctx.cover(config, *n),
        Command::Loss { config, n } => ctx.loss(config, *n),
        Command::Search { q, n, mode, window, nonattacking, max_retries } => {
            if *mode == ModeArg::Exhaustive && window.is_some() {
                return Err(CliError::Usage("--window applies to windowed mode only".into()));
            }
            let params = match mode {
                ModeArg::Exhaustive => {
                    SearchParams { require_nonattacking: *nonattacking, ..SearchParams::exhaustive(*q, *n) }
                }
                ModeArg::Windowed => {
                    SearchParams { max_retries: *max_retries, ..SearchParams::windowed(*q, *n, *window) }
                }
            };
            let line = ctx.search_line(&params)?;
            match cli.format {
                Format::Structured => ctx.emit(&line),
                Format::Text => {
                    let record = ResultRecord::deserialize(&line)?;
                    let text = optimal_set_text(&record.optimal_set, record.timing.wall_micros);
                    ctx.emit(&text)
                }
            }
        }
        Command::Thresholds { q, from, to } => ctx.thresholds(*q, *from, *to),
        Command::Stairs { q } => ctx.stairs(*q),
        Command::Fundamentals { input } => ctx.fundamentals(input),
        Command::Render { config, n, annotate } => {
            let c = parse_config(config)?;
            let board = Board::new(*n)?;
            check_feasible(&c, board)?;
            let drawing = render_board(&c, board, *annotate);
            match cli.format {
                Format::Text => ctx.emit(drawing.trim_end()),
                Format::Structured => ctx.emit(&to_sorted_json(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "kind": "render",
                    "n": n,
                    "config": c,
                    "lines": drawing.lines().collect::<Vec<_>>(),
                }))),
            }
        }
        Command::Verify { input, rerun } => ctx.verify(input, *rerun),
    }
}

fn check_feasible(c: &Configuration, board: Board) -> Result<(), CliError> {
    match c.queens().iter().find(|&&s| !board.contains(s)) {
        Some(&square) => Err(queencover_core::Error::OffBoard { square, n: board.side() }.into()),
        None => Ok(()),
    }
}

struct Context<'a> {
    cli: &'a Cli,
    out: &'a mut dyn Write,
    driver: Option<Parallel>,
}

impl Context<'_> {
    fn emit(&mut self, text: &str) -> Result<(), CliError> {
        writeln!(self.out, "{text}").map_err(|e| CliError::io("writing output", e))
    }

    fn driver(&mut self) -> Result<&Parallel, CliError> {
        if self.driver.is_none() {
            self.driver = Some(Parallel::new(self.cli.workers)?);
        }
        Ok(self.driver.as_ref().expect("just set"))
    }

    fn cache(&self) -> Result<Option<Cache>, CliError> {
        self.cli.cache_dir.as_ref().map(Cache::open).transpose()
    }

    /// Run a search (or fetch it from the cache) and return its record line.
    fn search_line(&mut self, params: &SearchParams) -> Result<String, CliError> {
        let fingerprint = crate::record::engine_fingerprint(params);
        let cache = self.cache()?;
        if let Some(cache) = &cache {
            if let Some(line) = cache.get(&fingerprint)? {
                if ResultRecord::deserialize(&line).is_ok() {
                    return Ok(line);
                }
            }
        }
        let budget = self.cli.budget;
        let start = Instant::now();
        let driver = self.driver()?;
        let set = match params.mode {
            SearchMode::Exhaustive => exhaustive_optimal_with(params, budget, driver)?,
            SearchMode::Windowed => windowed_optimal_with(params, driver)?,
        };
        let line = ResultRecord::new(set, start.elapsed()).serialize();
        if let Some(cache) = &cache {
            cache.put(&fingerprint, &line)?;
        }
        Ok(line)
    }

    fn cover(&mut self, config: &str, n: u32) -> Result<(), CliError> {
        let c = parse_config(config)?;
        let board = Board::new(n)?;
        let cover = cover_count(&c, board);
        let field = attack_field(&c, board);
        match self.cli.format {
            Format::Text => {
                let text = format!(
                    "cover {cover} of {} squares on B_{n}\nattacking-number histogram {:?}\n{}",
                    board.square_count(),
                    field.histogram(),
                    render_board(&c, board, Annotate::AttackNumbers).trim_end()
                );
                self.emit(&text)
            }
            Format::Structured => {
                let (lo, hi) = (board.lo(), board.hi());
                let rows: Vec<Vec<u16>> = (lo..=hi)
                    .map(|y| (lo..=hi).map(|x| field.get(queencover_core::Square::new(x, y)).unwrap_or(0)).collect())
                    .collect();
                let v = json!({
                    "schema_version": SCHEMA_VERSION,
                    "kind": "cover",
                    "n": n,
                    "config": c,
                    "cover": cover,
                    "histogram": field.histogram(),
                    "attack_field": {"origin": lo, "rows": rows},
                });
                self.emit(&to_sorted_json(&v))
            }
        }
    }

    fn loss(&mut self, config: &str, n: Option<u32>) -> Result<(), CliError> {
        let c = parse_config(config)?;
        if !is_nonattacking(&c) && n.is_none() {
            return Err(queencover_core::Error::UnboundedLoss.into());
        }
        let mut rows = Vec::new();
        if is_nonattacking(&c) {
            // a board containing every queen and every crossing, with margin
            let reach = crossing_multiplicities(&c)
                .keys()
                .chain(c.queens())
                .map(|s| s.x.unsigned_abs().max(s.y.unsigned_abs()))
                .max()
                .unwrap_or(0);
            for side in [2 * reach + 3, 2 * reach + 4] {
                let board = Board::new(side)?;
                rows.push((if side % 2 == 1 { "odd" } else { "even" }, side, total_loss(&c, board)?));
            }
        }
        if let Some(n) = n {
            let board = Board::new(n)?;
            check_feasible(&c, board)?;
            let b = total_loss(&c, board)?;
            rows.push(("given", n, b));
        }
        match self.cli.format {
            Format::Text => {
                let mut text = format!("configuration {c}");
                for (label, side, b) in &rows {
                    text.push_str(&format!(
                        "\n{label:>5} (B_{side}): inloss {} cenloss {} total {} gamma {} eta {} e/o {}/{}{}",
                        b.inloss,
                        b.cenloss,
                        b.total,
                        b.gamma,
                        b.eta,
                        b.e,
                        b.o,
                        if b.stable { "" } else { " (not stable on this board)" }
                    ));
                }
                self.emit(&text)
            }
            Format::Structured => {
                let rows: Vec<_> =
                    rows.iter().map(|(label, side, b)| json!({"board": label, "n": side, "loss": b})).collect();
                let v = json!({"schema_version": SCHEMA_VERSION, "kind": "loss", "config": c, "rows": rows});
                self.emit(&to_sorted_json(&v))
            }
        }
    }

    fn thresholds(&mut self, q: u32, from: u32, to: u32) -> Result<(), CliError> {
        let mut failure = None;
        let report = {
            let this = &mut *self;
            scan_thresholds(q, from, to, |p| match this.search_line(p) {
                Ok(line) => ResultRecord::deserialize(&line).map(|r| r.optimal_set).map_err(|e| {
                    let msg = e.to_string();
                    failure = Some(CliError::Record(e));
                    queencover_core::Error::Invariant(msg)
                }),
                Err(CliError::Core(e)) => Err(e),
                Err(e) => {
                    let msg = e.to_string();
                    failure = Some(e);
                    Err(queencover_core::Error::Invariant(msg))
                }
            })
        };
        let report = match (report, failure) {
            (_, Some(e)) => return Err(e),
            (r, None) => r?,
        };
        match self.cli.format {
            Format::Text => {
                let text = threshold_text(&report);
                self.emit(&text)
            }
            Format::Structured => {
                let mut v = serde_json::to_value(&report).expect("report serializes");
                v["schema_version"] = json!(SCHEMA_VERSION);
                v["kind"] = json!("thresholds");
                v["scope"] = json!(format!("empirical, valid only for {from} <= n <= {to}"));
                self.emit(&to_sorted_json(&v))
            }
        }
    }

    fn stairs(&mut self, q: u32) -> Result<(), CliError> {
        let s = stairs(q)?;
        let l = pattern_loss(&s.pattern)?;
        let (w, h) = s.pattern.dimensions();
        let (rlo, rhi) = central_rectangle(q);
        let in_square = s.pattern.fits(q, q);
        let in_rect = s.pattern.fits((rhi.x - rlo.x + 1) as u32, (rhi.y - rlo.y + 1) as u32);
        match self.cli.format {
            Format::Text => {
                let text = format!(
                    "stairs q={q}: {}\nshift {}  bounding box {w}x{h}  fits {q}x{q}: {in_square}  fits {q}x{}: {in_rect}\n\
                     internal loss {}\nodd boards:  centralized {} total {}\neven boards: centralized {} total {}",
                    s.pattern.offsets(),
                    s.shift,
                    q + 1,
                    l.inloss,
                    l.cen_odd,
                    l.total_odd,
                    l.cen_even,
                    l.total_even
                );
                self.emit(&text)
            }
            Format::Structured => {
                let v = json!({
                    "schema_version": SCHEMA_VERSION,
                    "kind": "stairs",
                    "q": q,
                    "pattern": s.pattern.offsets(),
                    "shift": s.shift,
                    "width": w,
                    "height": h,
                    "fits_square": in_square,
                    "fits_rectangle": in_rect,
                    "loss": l,
                });
                self.emit(&to_sorted_json(&v))
            }
        }
    }

    fn records(&self, input: &PathBuf) -> Result<Vec<ResultRecord>, CliError> {
        let text =
            std::fs::read_to_string(input).map_err(|e| CliError::io(format!("reading {}", input.display()), e))?;
        let mut out = Vec::new();
        let mut offset = 0;
        for line in text.split_inclusive('\n') {
            let body = line.trim_end_matches(['\n', '\r']);
            if !body.trim().is_empty() {
                let r = ResultRecord::deserialize(body).map_err(|e| match e {
                    crate::error::RecordError::Parse { offset: o, message } => {
                        crate::error::RecordError::Parse { offset: offset + o, message }
                    }
                    other => other,
                })?;
                out.push(r);
            }
            offset += line.len();
        }
        Ok(out)
    }

    fn fundamentals(&mut self, input: &PathBuf) -> Result<(), CliError> {
        for r in self.records(input)? {
            let set = &r.optimal_set;
            match self.cli.format {
                Format::Text => {
                    let text = optimal_set_text(set, r.timing.wall_micros);
                    self.emit(&text)?;
                }
                Format::Structured => {
                    let v = json!({
                        "schema_version": SCHEMA_VERSION,
                        "kind": "fundamentals",
                        "params": set.params,
                        "max_cover": set.max_cover,
                        "classes": set.classes,
                    });
                    self.emit(&to_sorted_json(&v))?;
                }
            }
        }
        Ok(())
    }

    fn verify(&mut self, input: &PathBuf, rerun: bool) -> Result<(), CliError> {
        let records = self.records(input)?;
        let mut problems = Vec::new();
        for r in &records {
            let set = &r.optimal_set;
            let board = set.params.board()?;
            for c in &set.configurations {
                let v = cover_count(c, board);
                if v != set.max_cover {
                    problems.push(format!(
                        "q={} n={}: {c} covers {v}, record says {}",
                        set.params.q, set.params.n, set.max_cover
                    ));
                }
            }
            if rerun {
                let budget = self.cli.budget;
                let driver = self.driver()?;
                let fresh = match set.params.mode {
                    SearchMode::Exhaustive => exhaustive_optimal_with(&set.params, budget, driver)?,
                    SearchMode::Windowed => windowed_optimal_with(&set.params, driver)?,
                };
                if fresh.max_cover != set.max_cover {
                    problems.push(format!(
                        "q={} n={}: search now finds {}, record says {}",
                        set.params.q, set.params.n, fresh.max_cover, set.max_cover
                    ));
                }
                for c in fresh.configurations.iter().filter(|c| set.configurations.binary_search(c).is_err()) {
                    problems.push(format!("q={} n={}: missing optimum {c}", set.params.q, set.params.n));
                }
                for c in set.configurations.iter().filter(|c| fresh.configurations.binary_search(c).is_err()) {
                    problems.push(format!("q={} n={}: extra configuration {c}", set.params.q, set.params.n));
                }
            }
        }
        let summary = match self.cli.format {
            Format::Text if problems.is_empty() => format!("verified {} record(s)", records.len()),
            Format::Text => problems.join("\n"),
            Format::Structured => to_sorted_json(&json!({
                "schema_version": SCHEMA_VERSION,
                "kind": "verify",
                "records": records.len(),
                "problems": problems,
            })),
        };
        self.emit(&summary)?;
        if problems.is_empty() {
            Ok(())
        } else {
            Err(CliError::Mismatch(format!("{} problem(s)", problems.len())))
        }
    }
}

pub fn optimal_set_text(set: &OptimalSet, wall_micros: u64) -> String {
    let p = &set.params;
    let mode = match p.mode {
        SearchMode::Exhaustive if p.require_nonattacking => "exhaustive, non-attacking",
        SearchMode::Exhaustive => "exhaustive",
        SearchMode::Windowed => "windowed",
    };
    let mut s = format!(
        "q={} n={} ({mode}): max cover {}, {} optimal configuration(s) in {} class(es)",
        p.q,
        p.n,
        set.max_cover,
        set.configurations.len(),
        set.classes.len()
    );
    if let Some(w) = set.window {
        s.push_str(&format!(
            "\nwindow {} requested, {} used after {} retr{}{}",
            w.requested,
            w.used,
            w.retries,
            if w.retries == 1 { "y" } else { "ies" },
            if w.touches_boundary { "; an optimum still touches the window edge" } else { "" }
        ));
    }
    for c in &set.classes {
        s.push_str(&format!("\n  orbit {}  {}", c.orbit_size, c.representative));
    }
    s.push_str(&format!("\n({:.3} s)", wall_micros as f64 / 1e6));
    s
}

fn threshold_text(r: &ThresholdReport) -> String {
    let mut s = format!("q={} scanned n={}..={}\n   n  cover  optima  non-attacking  classes", r.q, r.n_lo, r.n_hi);
    for e in &r.entries {
        s.push_str(&format!(
            "\n{:>4} {:>6} {:>7}  {:>13}  {:?}",
            e.n, e.max_cover, e.optimal_count, e.all_nonattacking, e.class_sizes
        ));
    }
    let show = |v: Option<u32>| v.map_or("none".to_string(), |n| n.to_string());
    s.push_str(&format!(
        "\nnon-attacking from n = {}\nstable from n = {} (odd: {}, even: {})\n\
         these are empirical: they hold on the scanned range only",
        show(r.n1_candidate),
        show(r.n2_candidate),
        show(r.n2_odd),
        show(r.n2_even)
    ));
    s
}
