//! Table-emitting front end: `group`, `braces`, `count`, `verify`.

use std::collections::BTreeMap;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use skewbrace::brace::{brace_catalog, GroupCatalog};
use skewbrace::counter::{
    count_np_in, hypothesis_check, CountOptions, CountReport, Hypothesis, LabelTable, PrimeSpec, SizeData,
    StructureLabel,
};
use skewbrace::group::{gcd, make_group, small_groups, FiniteGroup, GroupSpec};
use skewbrace::morphisms::{automorphism_group, character_orbits, homs_to_cyclic, AutIdx, AutomorphismGroup, Character};
use skewbrace::oracle::{compare_reports, enumerate_braces_bruteforce, np_catalog, LabelledCatalog, OracleOptions};
use skewbrace::Error;

/// Golden size-12 table: rows additive, columns multiplicative.
pub const SIZE12_GOLDEN: &str = include_str!("../tables/size12.csv");

#[derive(Parser, Debug)]
#[command(name = "skewbrace", version, about = "Skew brace tables of size n and np")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Md, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Md,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Automorphisms, characters and character orbits of one group.
    Group {
        /// e.g. C12, C6xC2, A4, D12, Dic12, Cn(7), sd(C13, C12, sigma=3)
        #[arg(long)]
        preset: String,
        #[arg(long, value_delimiter = ',', default_value = "aut,homs,orbits")]
        show: Vec<Section>,
        /// Order of the cyclic target; defaults to the exponent.
        #[arg(long)]
        modulus: Option<u32>,
    },
    /// Braces of size n by additive and multiplicative group.
    Braces {
        #[arg(long)]
        order: usize,
    },
    /// Braces of size np.
    Count {
        #[arg(long)]
        n: u64,
        #[arg(long = "p-class", value_parser = ["1", "5", "7", "11"], conflicts_with = "p", required_unless_present = "p")]
        p_class: Option<String>,
        #[arg(long)]
        p: Option<u64>,
        /// Only the kernel-resolved table of one pair, e.g. `D12,D12`.
        #[arg(long, value_delimiter = ',')]
        sub: Option<Vec<String>>,
        /// Count even if the normal Sylow hypothesis is not established.
        #[arg(long)]
        assume_normal_sylow: bool,
    },
    /// Independent regular-subgroup count against the pipeline.
    Verify {
        #[arg(long, value_parser = ["12", "20", "30", "84"])]
        size: String,
        #[arg(long)]
        budget_seconds: Option<u64>,
        /// Reference table for size 12 instead of the built-in one.
        #[arg(long)]
        golden: Option<std::path::PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Section {
    Aut,
    Homs,
    Orbits,
}

/// Output and exit code of one invocation.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Outcome { code, stdout: String::new(), stderr }
    }
}

/// Errors caused by the arguments rather than the computation.
fn is_usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::MalformedSpec(_)
            | Error::NotPrime(_)
            | Error::InvalidPrimeSpec(_)
            | Error::PrimeDividesOrder { .. }
            | Error::NoCatalog(_)
            | Error::HypothesisUnknown { .. }
            | Error::SizeLimit { .. }
    )
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 { Outcome::ok(text) } else { Outcome::fail(2, text) };
        }
    };
    let result = match &cli.command {
        Command::Group { preset, show, modulus } => group_cmd(preset, show, *modulus, cli.format),
        Command::Braces { order } => braces_cmd(*order, cli.format),
        Command::Count { n, p_class, p, sub, assume_normal_sylow } => {
            let prime = match (p_class, p) {
                (Some(r), _) => PrimeSpec::Residue(r.parse().expect("validated by clap")),
                (None, Some(p)) => PrimeSpec::Concrete(*p),
                (None, None) => unreachable!("clap requires one of them"),
            };
            count_cmd(*n, prime, sub.as_deref(), *assume_normal_sylow, cli.format)
        }
        Command::Verify { size, budget_seconds, golden } => {
            let size: usize = size.parse().expect("validated by clap");
            let golden = match golden {
                None => SIZE12_GOLDEN.to_string(),
                Some(_) if size != 12 => return Outcome::fail(2, "error: --golden applies to --size 12 only\n".into()),
                Some(path) => match std::fs::read_to_string(path) {
                    Ok(s) => s,
                    Err(e) => return Outcome::fail(2, format!("error: cannot read {}: {e}\n", path.display())),
                },
            };
            return verify_cmd(size, budget_seconds.map(Duration::from_secs), &golden, cli.format);
        }
    };
    match result {
        Ok(s) => Outcome::ok(s),
        Err(e) if is_usage_error(&e) => Outcome::fail(2, format!("error: {e}\n")),
        Err(e) => Outcome::fail(1, format!("error: {e}\n")),
    }
}

// ---------------------------------------------------------------- rendering

fn md_table(head: &[String], rows: &[Vec<String>]) -> String {
    let mut s = format!("| {} |\n", head.join(" | "));
    s += &format!("|{}\n", "---|".repeat(head.len()));
    for r in rows {
        s += &format!("| {} |\n", r.join(" | "));
    }
    s
}

fn csv_table(head: &[String], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(head).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

/// A square count table with row sums, column sums and the grand total.
struct CountGrid {
    rows: Vec<String>,
    cols: Vec<String>,
    cells: Vec<Vec<u64>>,
}

impl CountGrid {
    fn total(&self) -> u64 {
        self.cells.iter().flatten().sum()
    }

    fn layout(&self) -> (Vec<String>, Vec<Vec<String>>) {
        let mut head = vec!["+\\o".to_string()];
        head.extend(self.cols.iter().cloned());
        head.push("sum".into());
        let mut rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .zip(&self.cells)
            .map(|(name, r)| {
                let mut v = vec![name.clone()];
                v.extend(r.iter().map(u64::to_string));
                v.push(r.iter().sum::<u64>().to_string());
                v
            })
            .collect();
        let mut footer = vec!["sum".to_string()];
        footer.extend((0..self.cols.len()).map(|j| self.cells.iter().map(|r| r[j]).sum::<u64>().to_string()));
        footer.push(self.total().to_string());
        rows.push(footer);
        (head, rows)
    }

    fn md(&self) -> String {
        let (h, r) = self.layout();
        md_table(&h, &r)
    }

    fn csv(&self) -> String {
        let (h, r) = self.layout();
        csv_table(&h, &r)
    }

    fn json(&self) -> serde_json::Value {
        json!({ "rows": self.rows, "cols": self.cols, "table": self.cells, "total": self.total() })
    }
}

/// Row labels, column labels, cells.
pub type Grid = (Vec<String>, Vec<String>, Vec<Vec<u64>>);

/// Reads a grid written by [`CountGrid::csv`], dropping the sums.
pub fn parse_grid(text: &str) -> Result<Grid, String> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let head = r.headers().map_err(|e| e.to_string())?.clone();
    let k = head.len().checked_sub(2).ok_or("short header")?;
    let cols: Vec<String> = head.iter().skip(1).take(k).map(String::from).collect();
    let mut rows = Vec::new();
    let mut cells = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(|e| e.to_string())?;
        if &rec[0] == "sum" {
            continue;
        }
        rows.push(rec[0].to_string());
        cells.push(
            rec.iter()
                .skip(1)
                .take(k)
                .map(|x| x.parse::<u64>().map_err(|e| e.to_string()))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    Ok((rows, cols, cells))
}

// ------------------------------------------------------------------- group

/// `c -> c^k` for cyclic groups, else the raw index of the generator images.
fn unit_of(g: &FiniteGroup, aut: &AutomorphismGroup, a: AutIdx) -> Option<u64> {
    let c = g.hint("c")?;
    if !g.is_cyclic() || g.element_order(c) as usize != g.order() {
        return None;
    }
    let image = aut.apply(a, c);
    (0..g.order() as i64).find(|&k| g.pow(c, k) == image).map(|k| k as u64)
}

/// `(d, j)` with `σ(c) = ζ_d^j` on cyclic groups, generator values otherwise.
fn character_text(g: &FiniteGroup, s: &Character) -> String {
    match g.hint("c") {
        Some(c) if g.is_cyclic() && g.element_order(c) as usize == g.order() => {
            let v = s.value(c) as u64;
            let m = s.modulus as u64;
            let d = m / gcd(v, m);
            format!("({d},{})", v * d / m)
        }
        _ => s.describe(g),
    }
}

fn aut_order_census(aut: &AutomorphismGroup) -> BTreeMap<usize, usize> {
    let mut census = BTreeMap::new();
    for a in aut.elements() {
        let (mut x, mut k) = (a, 1);
        while x != 0 {
            x = aut.compose(x, a);
            k += 1;
        }
        *census.entry(k).or_insert(0) += 1;
    }
    census
}

fn group_cmd(preset: &str, show: &[Section], modulus: Option<u32>, format: Format) -> skewbrace::Result<String> {
    let g = make_group(&GroupSpec::parse(preset)?)?;
    let aut = automorphism_group(&g)?;
    let m = modulus.unwrap_or(g.exponent() as u32);
    if m == 0 {
        return Err(Error::MalformedSpec("modulus 0".into()));
    }
    let space = homs_to_cyclic(&g, m);
    let all: Vec<AutIdx> = aut.elements().collect();
    let orbits = character_orbits(&aut, &all, &space)?;
    let labels = LabelTable::new(&g, 0).ok();
    let census = aut_order_census(&aut);

    let stab_text = |stab: &[AutIdx]| -> String {
        match stab.iter().map(|&a| unit_of(&g, &aut, a)).collect::<Option<Vec<_>>>() {
            Some(mut units) => {
                units.sort();
                let parts: Vec<String> = units.iter().map(u64::to_string).collect();
                format!("{{{}}}", parts.join(","))
            }
            None => format!("order {}", stab.len()),
        }
    };
    let orbit_rows: Vec<Vec<String>> = orbits
        .orbits
        .iter()
        .zip(&orbits.stabilizers)
        .map(|(o, stab)| {
            let rep = &space.characters[o[0]];
            let label = labels
                .as_ref()
                .and_then(|t| t.label(rep).ok())
                .map_or("-".to_string(), |l| l.short());
            vec![
                character_text(&g, rep),
                o.len().to_string(),
                rep.kernel_size().to_string(),
                stab_text(stab),
                label,
            ]
        })
        .collect();
    let orbit_head: Vec<String> = ["sigma", "orbit", "kernel", "stabilizer", "label"].map(String::from).to_vec();
    let hom_rows: Vec<Vec<String>> = space
        .characters
        .iter()
        .enumerate()
        .map(|(i, s)| vec![i.to_string(), character_text(&g, s), s.order().to_string(), s.kernel_size().to_string()])
        .collect();
    let hom_head: Vec<String> = ["id", "sigma", "order", "kernel"].map(String::from).to_vec();
    let aut_head: Vec<String> = ["element order", "count"].map(String::from).to_vec();
    let aut_rows: Vec<Vec<String>> = census.iter().map(|(k, c)| vec![k.to_string(), c.to_string()]).collect();

    Ok(match format {
        Format::Json => {
            let mut v = json!({ "group": g.name(), "order": g.order() });
            if show.contains(&Section::Aut) {
                v["aut"] = json!({ "order": aut.order(), "element_orders": census });
            }
            if show.contains(&Section::Homs) {
                v["homs"] = json!({
                    "modulus": m,
                    "characters": hom_rows.iter().map(|r| json!({"sigma": r[1], "order": r[2].parse::<u64>().unwrap(), "kernel": r[3].parse::<u64>().unwrap()})).collect::<Vec<_>>(),
                });
            }
            if show.contains(&Section::Orbits) {
                v["orbits"] = orbit_rows
                    .iter()
                    .map(|r| json!({"sigma": r[0], "size": r[1].parse::<u64>().unwrap(), "kernel": r[2].parse::<u64>().unwrap(), "stabilizer": r[3], "label": r[4]}))
                    .collect();
            }
            serde_json::to_string_pretty(&v).expect("json") + "\n"
        }
        Format::Md | Format::Csv => {
            let table = if format == Format::Md { md_table } else { csv_table };
            let mut out = String::new();
            let mut section = |title: String, head: &[String], rows: &[Vec<String>]| {
                if format == Format::Md {
                    out += &format!("## {title}\n\n{}\n", table(head, rows));
                } else {
                    out += &format!("# {title}\n{}\n", table(head, rows));
                }
            };
            if show.contains(&Section::Aut) {
                section(format!("Aut({}), order {}", g.name(), aut.order()), &aut_head, &aut_rows);
            }
            if show.contains(&Section::Homs) {
                section(format!("Hom({}, C{m}), {} characters", g.name(), space.len()), &hom_head, &hom_rows);
            }
            if show.contains(&Section::Orbits) {
                section(format!("Aut({})-orbits on Hom({}, C{m}): {}", g.name(), g.name(), orbits.count()), &orbit_head, &orbit_rows);
            }
            out
        }
    })
}

// ------------------------------------------------------------------ braces

pub fn size_table(order: usize) -> skewbrace::Result<(Vec<String>, Vec<Vec<u64>>)> {
    let groups = small_groups(order).ok_or(Error::NoCatalog(order))?;
    let catalog = GroupCatalog::new(groups)?;
    let mut cells = vec![vec![0u64; catalog.groups.len()]; catalog.groups.len()];
    for b in brace_catalog(&catalog)? {
        cells[b.add_label][b.mul_label] += 1;
    }
    Ok((catalog.names(), cells))
}

fn braces_cmd(order: usize, format: Format) -> skewbrace::Result<String> {
    let (names, cells) = size_table(order)?;
    let grid = CountGrid { rows: names.clone(), cols: names, cells };
    Ok(match format {
        Format::Md => format!(
            "# Skew braces of size {order}\n\nrows: additive group, columns: multiplicative group\n\n{}\ntotal: {}\n",
            grid.md(),
            grid.total()
        ),
        Format::Csv => grid.csv(),
        Format::Json => {
            let mut v = grid.json();
            v["order"] = json!(order);
            serde_json::to_string_pretty(&v).expect("json") + "\n"
        }
    })
}

// ------------------------------------------------------------------- count

pub fn count_report(n: u64, prime: PrimeSpec, assume_normal_sylow: bool) -> skewbrace::Result<CountReport> {
    let data = SizeData::new(n)?;
    let opts = CountOptions {
        override_hypothesis: assume_normal_sylow,
        ..Default::default()
    };
    count_np_in(&data, prime, &opts)
}

fn sub_grid(report: &CountReport, e: usize, f: usize) -> CountGrid {
    let (rows, cols, cells) = report.sub_table(e, f);
    CountGrid {
        rows: rows.iter().map(StructureLabel::short).collect(),
        cols: cols.iter().map(StructureLabel::short).collect(),
        cells,
    }
}

fn base_grid(report: &CountReport) -> CountGrid {
    CountGrid {
        rows: report.bases.clone(),
        cols: report.bases.clone(),
        cells: report.base_matrix(),
    }
}

/// The whole `count` page in markdown: the base block, then one
/// kernel-resolved table per nonzero pair of bases.
pub fn count_markdown(report: &CountReport) -> String {
    let mut out = format!(
        "# Skew braces of size {}p, {}\n\nrows: additive group, columns: multiplicative group\n\n{}\n",
        report.n,
        report.prime.map_or("p any".into(), |p| p.to_string()),
        base_grid(report).md()
    );
    let base = report.base_matrix();
    for (e, row) in base.iter().enumerate() {
        for (f, &c) in row.iter().enumerate() {
            if c == 0 {
                continue;
            }
            out += &format!(
                "## additive Zp:E, E = {}; multiplicative Zp:F, F = {}\n\n{}\n",
                report.bases[e],
                report.bases[f],
                sub_grid(report, e, f).md()
            );
        }
    }
    out += &format!("total: {}\n", report.total);
    out
}

fn count_cmd(n: u64, prime: PrimeSpec, sub: Option<&[String]>, assume: bool, format: Format) -> skewbrace::Result<String> {
    let report = count_report(n, prime, assume)?;
    if let Some(pair) = sub {
        if pair.len() != 2 {
            return Err(Error::MalformedSpec(format!("--sub takes two groups, got {}", pair.join(","))));
        }
        let rank = |name: &str| {
            report
                .bases
                .iter()
                .position(|b| b == name)
                .ok_or_else(|| Error::MalformedSpec(format!("{name} is not a group of order {n}")))
        };
        let g = sub_grid(&report, rank(&pair[0])?, rank(&pair[1])?);
        return Ok(match format {
            Format::Md => format!("## {} / {}, {}\n\n{}", pair[0], pair[1], prime, g.md()),
            Format::Csv => g.csv(),
            Format::Json => serde_json::to_string_pretty(&g.json()).expect("json") + "\n",
        });
    }
    Ok(match format {
        Format::Md => count_markdown(&report),
        Format::Csv => base_grid(&report).csv(),
        Format::Json => serde_json::to_string_pretty(&report.to_json()).expect("json") + "\n",
    })
}

// ------------------------------------------------------------------ verify

#[derive(Debug, serde::Serialize)]
struct Diff {
    add: String,
    mul: String,
    oracle: u64,
    reference: u64,
}

fn verify_cmd(size: usize, budget: Option<Duration>, golden: &str, format: Format) -> Outcome {
    match verify(size, budget, golden) {
        Ok((oracle_total, reference_total, reference, diff)) => {
            let code = if diff.is_empty() { 0 } else { 1 };
            let stdout = match format {
                Format::Json => {
                    let v = json!({
                        "size": size, "reference": reference,
                        "oracle_total": oracle_total, "reference_total": reference_total, "diff": diff,
                    });
                    serde_json::to_string_pretty(&v).expect("json") + "\n"
                }
                Format::Csv => {
                    let rows: Vec<Vec<String>> = diff
                        .iter()
                        .map(|d| vec![d.add.clone(), d.mul.clone(), d.oracle.to_string(), d.reference.to_string()])
                        .collect();
                    csv_table(&["add", "mul", "oracle", "reference"].map(String::from), &rows)
                }
                Format::Md => {
                    let mut s = format!(
                        "# Verification at size {size}\n\nreference: {reference}\noracle total: {oracle_total}\nreference total: {reference_total}\n\n"
                    );
                    if diff.is_empty() {
                        s += "diff: empty\n";
                    } else {
                        let rows: Vec<Vec<String>> = diff
                            .iter()
                            .map(|d| vec![d.add.clone(), d.mul.clone(), d.oracle.to_string(), d.reference.to_string()])
                            .collect();
                        s += &format!("diff: {} cells\n\n{}", diff.len(), md_table(&["add", "mul", "oracle", "reference"].map(String::from), &rows));
                    }
                    s
                }
            };
            Outcome { code, stdout, stderr: String::new() }
        }
        Err(e) if is_usage_error(&e) => Outcome::fail(2, format!("error: {e}\n")),
        Err(e) => Outcome::fail(1, format!("error: {e}\n")),
    }
}

type VerifyResult = (u64, u64, String, Vec<Diff>);

fn verify(size: usize, budget: Option<Duration>, golden_text: &str) -> skewbrace::Result<VerifyResult> {
    if size == 12 {
        let catalog = LabelledCatalog::plain(12)?;
        let oracle = enumerate_braces_bruteforce(12, &catalog, &OracleOptions { pruned: false, budget })?;
        let (rows, cols, golden) = parse_grid(golden_text).map_err(Error::MalformedSpec)?;
        if rows != oracle.bases || cols != oracle.bases {
            return Err(Error::MalformedSpec("golden table axes differ from the catalog".into()));
        }
        let got = oracle.base_matrix();
        let mut diff = Vec::new();
        for (i, row) in golden.iter().enumerate() {
            for (j, &want) in row.iter().enumerate() {
                if got[i][j] != want {
                    diff.push(Diff { add: rows[i].clone(), mul: cols[j].clone(), oracle: got[i][j], reference: want });
                }
            }
        }
        let golden_total = golden.iter().flatten().sum();
        return Ok((oracle.total, golden_total, "golden size-12 table".into(), diff));
    }
    let (n, p, pruned) = match size {
        20 => (4, 5, false),
        30 => (6, 5, false),
        84 => (12, 7, true),
        _ => return Err(Error::NoCatalog(size)),
    };
    let catalog = np_catalog(n, p)?;
    let oracle = enumerate_braces_bruteforce(size, &catalog, &OracleOptions { pruned, budget })?;
    // every group of order 30 has a normal Sylow 5-subgroup
    let assume = size == 30 && hypothesis_check(n, p)? == Hypothesis::Unknown;
    let reference = count_report(n, PrimeSpec::Concrete(p), assume)?;
    let diff = compare_reports(&oracle, &reference)?
        .into_iter()
        .map(|d| Diff { add: d.add_label, mul: d.mul_label, oracle: d.a, reference: d.b })
        .collect();
    Ok((oracle.total, reference.total, format!("count with n={n}, p={p}"), diff))
}
