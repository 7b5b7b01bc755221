use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use hnpfact::blocks::{self, BlockMonoid, GroupSubset};
use hnpfact::chains::{self, IdealLattice};
use hnpfact::docs::{self, ArcModuleDoc, GroupDoc, KrullDoc, SubsetDoc, TowersDoc};
use hnpfact::factorize::{self, AtomicMonoid, Catenary, HalfFactoriality};
use hnpfact::krull;
use hnpfact::towers::{self, ArcModule, GenusVector};
use hnpfact::{Error, FinAbGroup};

const KRULL_BOUND: u32 = 8;

#[derive(Parser)]
#[command(
    name = "hnpfact",
    version,
    about = "Factorization invariants of zero-sum monoids, towers and ideal lattices"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for bounded scans (0 = one per core).
    #[arg(long, global = true, env = "HNPFACT_THREADS", default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Finite abelian groups.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Monoids of zero-sum sequences.
    #[command(subcommand)]
    Blocks(BlocksCmd),
    /// Krull monoids and their transfer to zero-sum sequences.
    #[command(subcommand)]
    Krull(KrullCmd),
    /// Cycle towers, arc modules and genus updates.
    #[command(subcommand)]
    Towers(TowersCmd),
    /// Lattices of principal right ideals.
    #[command(subcommand)]
    Chains(ChainsCmd),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GroupSource {
    /// Cyclic factor orders, e.g. `2,2`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    orders: Option<Vec<i64>>,
    /// Subset document (`{"group": {...}, "subset": ...}`).
    #[arg(long)]
    spec: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Cardinality, exponent and element orders.
    Info(GroupSource),
}

#[derive(Args)]
struct Bound {
    /// Size bound for scans (default 2·D(G)).
    #[arg(long)]
    bound: Option<u32>,
}

#[derive(Subcommand)]
enum BlocksCmd {
    /// Minimal zero-sum sequences.
    Atoms(GroupSource),
    /// Davenport constant of the group.
    Davenport(GroupSource),
    /// Set of lengths of one sequence.
    Lengths {
        #[command(flatten)]
        source: GroupSource,
        /// Sequence such as `1^3 2^3` or `(1,0)^2 (0,1)^2`.
        #[arg(long)]
        sequence: String,
    },
    /// Set of distances over all members up to the bound.
    Delta {
        #[command(flatten)]
        source: GroupSource,
        #[command(flatten)]
        bound: Bound,
    },
    /// Catenary degree of a sequence, or of the monoid up to the bound.
    Catenary {
        #[command(flatten)]
        source: GroupSource,
        #[arg(long)]
        sequence: Option<String>,
        #[command(flatten)]
        bound: Bound,
    },
    /// Largest length of a member having a factorization of length 2.
    Rho2 {
        #[command(flatten)]
        source: GroupSource,
        #[command(flatten)]
        bound: Bound,
    },
    /// Whether all members up to the bound have a single length.
    HalfFactorial {
        #[command(flatten)]
        source: GroupSource,
        #[command(flatten)]
        bound: Bound,
    },
}

#[derive(Args)]
struct KrullArgs {
    /// Krull document (`{"group": {...}, "primes": [...]}`).
    #[arg(long)]
    spec: PathBuf,
    /// Size bound for scans.
    #[arg(long, default_value_t = KRULL_BOUND)]
    bound: u32,
}

#[derive(Subcommand)]
enum KrullCmd {
    /// Check the transfer to the monoid of zero-sum sequences.
    Verify(KrullArgs),
    /// Catenary degree in the fibers of the transfer.
    FiberCatenary(KrullArgs),
    /// Build the monoid attached to a tower specification.
    Synth {
        /// Tower document (`{"group": {...}, "towers": [...]}`).
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = KRULL_BOUND)]
        bound: u32,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ArcSource {
    /// Cycle length, with `--arcs bottom:length,...`.
    #[arg(long, requires = "arcs")]
    n: Option<u32>,
    /// Arc module document (`{"cycle_length": n, "arcs": [...]}`).
    #[arg(long)]
    spec: Option<PathBuf>,
}

#[derive(Subcommand)]
enum TowersCmd {
    /// Starting segments of covering progressions that partition Z/nZ.
    Comb {
        #[arg(long)]
        n: u32,
        /// Progressions `a:k`, each covering `a, a+1, ..., a+k`.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        arcs: Vec<String>,
    },
    /// Submodule (or quotient) whose class vector is all ones.
    Submodule {
        #[command(flatten)]
        source: ArcSource,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        arcs: Vec<String>,
        /// Extract a quotient instead of a submodule.
        #[arg(long)]
        quotient: bool,
    },
    /// Genus after passing to maximal submodules with the given simple quotients.
    GenusStep {
        /// Tower document.
        #[arg(long)]
        spec: PathBuf,
        /// Genus as inline JSON (`{"udim": 1, "ranks": {...}}`) or a file path.
        #[arg(long)]
        genus: String,
        /// Simple labels `tower:i`, applied in order.
        #[arg(long, value_delimiter = ',', required = true)]
        simple: Vec<String>,
    },
}

#[derive(Subcommand)]
enum ChainsCmd {
    /// Analyze a lattice document.
    Analyze {
        #[arg(long)]
        spec: PathBuf,
        /// Report only the set of lengths.
        #[arg(long)]
        lengths: bool,
    },
    /// Analyze a built-in lattice.
    Builtin {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(chains::BUILTIN_NAMES))]
        name: String,
        #[arg(long)]
        lengths: bool,
    },
}

enum Field {
    Scalar(String, Value),
    Table {
        header: Vec<&'static str>,
        rows: Vec<Vec<String>>,
        json: Value,
    },
}

struct Report {
    command: &'static str,
    params: Vec<(&'static str, String, Value)>,
    fields: Vec<(&'static str, Field)>,
    violation: bool,
}

impl Report {
    fn new(command: &'static str) -> Self {
        Self {
            command,
            params: Vec::new(),
            fields: Vec::new(),
            violation: false,
        }
    }

    fn param(&mut self, key: &'static str, text: impl ToString, json: Value) {
        self.params.push((key, text.to_string(), json));
    }

    fn field(&mut self, key: &'static str, text: impl ToString, json: Value) {
        self.fields
            .push((key, Field::Scalar(text.to_string(), json)));
    }

    fn table(
        &mut self,
        key: &'static str,
        header: Vec<&'static str>,
        rows: Vec<Vec<String>>,
        json: Value,
    ) {
        self.fields.push((key, Field::Table { header, rows, json }));
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let params: Map<String, Value> = self
                    .params
                    .iter()
                    .map(|(k, _, v)| (k.to_string(), v.clone()))
                    .collect();
                let result: Map<String, Value> = self
                    .fields
                    .iter()
                    .map(|(k, f)| {
                        let v = match f {
                            Field::Scalar(_, v) => v.clone(),
                            Field::Table { json, .. } => json.clone(),
                        };
                        (k.to_string(), v)
                    })
                    .collect();
                let doc = json!({"command": self.command, "params": params, "result": result});
                format!(
                    "{}\n",
                    serde_json::to_string_pretty(&doc).expect("report serializes")
                )
            }
            Format::Text => {
                let mut out = String::new();
                let mut pairs = vec![("command", self.command.to_string())];
                pairs.extend(self.params.iter().map(|(k, t, _)| (*k, t.clone())));
                write_pairs(&mut out, &pairs);
                let scalars: Vec<(&str, String)> = self
                    .fields
                    .iter()
                    .filter_map(|(k, f)| match f {
                        Field::Scalar(t, _) => Some((*k, t.clone())),
                        Field::Table { .. } => None,
                    })
                    .collect();
                if !scalars.is_empty() {
                    out.push('\n');
                    write_pairs(&mut out, &scalars);
                }
                for (k, f) in &self.fields {
                    if let Field::Table { header, rows, .. } = f {
                        let _ = write!(out, "\n{k}:\n");
                        write_table(&mut out, header, rows);
                    }
                }
                out
            }
        }
    }
}

fn write_pairs(out: &mut String, pairs: &[(&str, String)]) {
    let w = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in pairs {
        let _ = writeln!(out, "{k:<w$}  {v}");
    }
}

fn write_table(out: &mut String, header: &[&str], rows: &[Vec<String>]) {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        format!("  {}\n", padded.join("  ").trim_end())
    };
    out.push_str(&line(header.to_vec()));
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
}

fn read(path: &Path) -> hnpfact::Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Document(format!("{}: {e}", path.display())))
}

fn subset_of(source: &GroupSource) -> hnpfact::Result<Arc<GroupSubset>> {
    match (&source.orders, &source.spec) {
        (Some(orders), _) => {
            let g = GroupDoc {
                orders: orders.clone(),
            }
            .build()?;
            Ok(Arc::new(GroupSubset::nonzero(g)))
        }
        (None, Some(path)) => docs::parse::<SubsetDoc>(&read(path)?)?.build(),
        (None, None) => Err(Error::InvalidSpecification("no input given".into())),
    }
}

fn group_of(source: &GroupSource) -> hnpfact::Result<FinAbGroup> {
    match (&source.orders, &source.spec) {
        (Some(orders), _) => GroupDoc {
            orders: orders.clone(),
        }
        .build(),
        (None, Some(path)) => {
            let text = read(path)?;
            match docs::parse::<GroupDoc>(&text) {
                Ok(g) => g.build(),
                Err(_) => Ok(docs::parse::<SubsetDoc>(&text)?.build()?.group().clone()),
            }
        }
        (None, None) => Err(Error::InvalidSpecification("no input given".into())),
    }
}

fn positive(bound: u32) -> hnpfact::Result<u32> {
    if bound == 0 {
        return Err(Error::InvalidSpecification("bound must be positive".into()));
    }
    Ok(bound)
}

fn set_json(s: impl IntoIterator<Item = u32>) -> Value {
    json!(s.into_iter().collect::<Vec<_>>())
}

fn set_text(s: impl IntoIterator<Item = u32>) -> String {
    let items: Vec<String> = s.into_iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn catenary_json(c: Catenary) -> Value {
    match c.finite() {
        Some(v) => json!(v),
        None => json!("inf"),
    }
}

fn blocks_setup(source: &GroupSource, report: &mut Report) -> hnpfact::Result<BlockMonoid> {
    let subset = subset_of(source)?;
    report.param("group", subset.group(), json!(subset.group().orders()));
    let elems: Vec<String> = subset.elements().iter().map(|e| e.to_string()).collect();
    report.param("subset", elems.join(" "), json!(elems));
    BlockMonoid::new(subset)
}

fn blocks_bound(monoid: &BlockMonoid, bound: &Bound, report: &mut Report) -> hnpfact::Result<u32> {
    let b = match bound.bound {
        Some(b) => positive(b)?,
        None => 2 * blocks::davenport(monoid.subset().group()),
    };
    report.param("bound", b, json!(b));
    Ok(b)
}

fn run_blocks(cmd: &BlocksCmd) -> hnpfact::Result<Report> {
    match cmd {
        BlocksCmd::Atoms(source) => {
            let mut r = Report::new("blocks atoms");
            let m = blocks_setup(source, &mut r)?;
            let seqs = m.atom_sequences();
            r.field("count", seqs.len(), json!(seqs.len()));
            let rows = seqs
                .iter()
                .enumerate()
                .map(|(i, s)| vec![i.to_string(), s.len().to_string(), s.to_string()])
                .collect();
            let js: Vec<Value> = seqs
                .iter()
                .map(
                    |s| json!({"length": s.len(), "sequence": s.to_string(), "counts": s.counts()}),
                )
                .collect();
            r.table(
                "atoms",
                vec!["index", "length", "sequence"],
                rows,
                json!(js),
            );
            Ok(r)
        }
        BlocksCmd::Davenport(source) => {
            let mut r = Report::new("blocks davenport");
            let g = group_of(source)?;
            r.param("group", &g, json!(g.orders()));
            let d = blocks::davenport(&g);
            r.field("davenport", d, json!(d));
            Ok(r)
        }
        BlocksCmd::Lengths { source, sequence } => {
            let mut r = Report::new("blocks lengths");
            let m = blocks_setup(source, &mut r)?;
            let s = docs::parse_sequence(m.subset(), sequence)?;
            r.param("sequence", &s, json!(s.to_string()));
            let zs = factorize::factorizations(&m, s.counts())?;
            let l = factorize::length_set(&m, s.counts())?;
            r.field("factorizations", zs.len(), json!(zs.len()));
            r.field("lengths", &l, set_json(l.iter()));
            Ok(r)
        }
        BlocksCmd::Delta { source, bound } => {
            let mut r = Report::new("blocks delta");
            let m = blocks_setup(source, &mut r)?;
            let b = blocks_bound(&m, bound, &mut r)?;
            let d = factorize::delta_monoid(&m, b);
            r.field("delta", set_text(d.iter().copied()), set_json(d));
            Ok(r)
        }
        BlocksCmd::Catenary {
            source,
            sequence,
            bound,
        } => {
            let mut r = Report::new("blocks catenary");
            let m = blocks_setup(source, &mut r)?;
            let c = match sequence {
                Some(text) => {
                    let s = docs::parse_sequence(m.subset(), text)?;
                    r.param("sequence", &s, json!(s.to_string()));
                    factorize::catenary(&m, s.counts())?
                }
                None => {
                    let b = blocks_bound(&m, bound, &mut r)?;
                    factorize::catenary_monoid(&m, b)?
                }
            };
            r.field("catenary", c, catenary_json(c));
            Ok(r)
        }
        BlocksCmd::Rho2 { source, bound } => {
            let mut r = Report::new("blocks rho2");
            let m = blocks_setup(source, &mut r)?;
            let b = blocks_bound(&m, bound, &mut r)?;
            let v = factorize::rho2(&m, b);
            r.field("rho2", v, json!(v));
            Ok(r)
        }
        BlocksCmd::HalfFactorial { source, bound } => {
            let mut r = Report::new("blocks half-factorial");
            let m = blocks_setup(source, &mut r)?;
            let b = blocks_bound(&m, bound, &mut r)?;
            match factorize::half_factorial(&m, b) {
                HalfFactoriality::Holds => r.field("half_factorial", true, json!(true)),
                HalfFactoriality::Fails { witness, lengths } => {
                    let s = m.sequence(&witness)?;
                    r.field("half_factorial", false, json!(false));
                    r.field("witness", &s, json!(s.to_string()));
                    r.field("lengths", &lengths, set_json(lengths.iter()));
                }
            }
            Ok(r)
        }
    }
}

fn krull_params(h: &krull::KrullMonoid, bound: u32, r: &mut Report) {
    r.param("group", h.group(), json!(h.group().orders()));
    let primes: Vec<String> = h
        .primes()
        .iter()
        .zip(h.classes())
        .map(|(p, c)| format!("{p}:{c}"))
        .collect();
    r.param("primes", primes.join(" "), json!(primes));
    r.param("bound", bound, json!(bound));
}

fn verify_into(h: &krull::KrullMonoid, bound: u32, r: &mut Report) {
    let rep = krull::verify_transfer(h, bound);
    r.field(
        "members_checked",
        rep.members_checked,
        json!(rep.members_checked),
    );
    r.field(
        "sequences_checked",
        rep.sequences_checked,
        json!(rep.sequences_checked),
    );
    match &rep.violation {
        None => r.field("transfer", "ok", json!("ok")),
        Some(v) => {
            r.field("transfer", "violated", json!("violated"));
            r.field("violation", v, json!(v.to_string()));
            r.violation = true;
        }
    }
}

fn fiber_into(h: &krull::KrullMonoid, bound: u32, r: &mut Report) -> hnpfact::Result<()> {
    let fc = krull::fiber_catenary(h, bound)?;
    let ch = krull::catenary_monoid(h, bound)?;
    let cb = factorize::catenary_monoid(h.block_monoid(), bound)?;
    r.field("fiber_catenary", fc, catenary_json(fc));
    r.field("catenary", ch, catenary_json(ch));
    r.field("catenary_blocks", cb, catenary_json(cb));
    let limit = cb.max(Catenary::Finite(2));
    if fc > Catenary::Finite(2) || ch > limit {
        r.violation = true;
    }
    Ok(())
}

fn run_krull(cmd: &KrullCmd) -> hnpfact::Result<Report> {
    match cmd {
        KrullCmd::Verify(a) => {
            let mut r = Report::new("krull verify");
            let h = docs::parse::<KrullDoc>(&read(&a.spec)?)?.build()?;
            let b = positive(a.bound)?;
            krull_params(&h, b, &mut r);
            verify_into(&h, b, &mut r);
            Ok(r)
        }
        KrullCmd::FiberCatenary(a) => {
            let mut r = Report::new("krull fiber-catenary");
            let h = docs::parse::<KrullDoc>(&read(&a.spec)?)?.build()?;
            let b = positive(a.bound)?;
            krull_params(&h, b, &mut r);
            fiber_into(&h, b, &mut r)?;
            Ok(r)
        }
        KrullCmd::Synth { spec, bound } => {
            let mut r = Report::new("krull synth");
            let s = docs::parse::<TowersDoc>(&read(spec)?)?.build()?;
            let h = krull::synth_hnp(&s)?;
            let b = positive(*bound)?;
            krull_params(&h, b, &mut r);
            r.field("atoms", h.atoms().len(), json!(h.atoms().len()));
            let image: Vec<String> = h.image().elements().iter().map(|e| e.to_string()).collect();
            r.field("class_image", image.join(" "), json!(image));
            verify_into(&h, b, &mut r);
            fiber_into(&h, b, &mut r)?;
            let factorial = h.atoms().iter().all(|a| factorize::size(a) == 1);
            r.field("factorial", factorial, json!(factorial));
            Ok(r)
        }
    }
}

fn parse_pairs(items: &[String], what: &str) -> hnpfact::Result<Vec<(i64, u32)>> {
    items
        .iter()
        .map(|s| {
            let bad = || Error::InvalidSpecification(format!("expected {what}, got `{s}`"));
            let (a, k) = s.split_once(':').ok_or_else(bad)?;
            Ok((
                a.trim().parse().map_err(|_| bad())?,
                k.trim().parse().map_err(|_| bad())?,
            ))
        })
        .collect()
}

fn module_text(m: &ArcModule) -> String {
    m.to_string()
}

fn module_json(m: &ArcModule) -> Value {
    json!({
        "cycle_length": m.cycle_length(),
        "arcs": m.arcs().iter().map(|a| json!({"bottom": a.bottom, "length": a.length})).collect::<Vec<_>>(),
    })
}

fn list_text(v: &[u32]) -> String {
    let items: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", items.join(","))
}

fn run_towers(cmd: &TowersCmd) -> hnpfact::Result<Report> {
    match cmd {
        TowersCmd::Comb { n, arcs } => {
            let mut r = Report::new("towers comb");
            let progs = parse_pairs(arcs, "a:k")?;
            r.param("n", n, json!(n));
            let shown: Vec<String> = progs.iter().map(|(a, k)| format!("{a}:{k}")).collect();
            r.param("arcs", shown.join(","), json!(shown));
            let m = towers::comb_cover_prefixes(*n, &progs)?;
            r.field("prefixes", list_text(&m), json!(m));
            Ok(r)
        }
        TowersCmd::Submodule {
            source,
            arcs,
            quotient,
        } => {
            let mut r = Report::new(if *quotient {
                "towers submodule --quotient"
            } else {
                "towers submodule"
            });
            let module = match (source.n, &source.spec) {
                (Some(n), _) => ArcModule::new(n, parse_pairs(arcs, "bottom:length")?)?,
                (None, Some(path)) => docs::parse::<ArcModuleDoc>(&read(path)?)?.build()?,
                (None, None) => return Err(Error::InvalidSpecification("no input given".into())),
            };
            r.param("module", module_text(&module), module_json(&module));
            let (sizes, part) = if *quotient {
                (
                    towers::quotient_sizes(&module)?,
                    towers::quotient_with_class_t(&module)?,
                )
            } else {
                (
                    towers::submodule_sizes(&module)?,
                    towers::submodule_with_class_t(&module)?,
                )
            };
            r.field("sizes", list_text(&sizes), json!(sizes));
            r.field("result", module_text(&part), module_json(&part));
            Ok(r)
        }
        TowersCmd::GenusStep {
            spec,
            genus,
            simple,
        } => {
            let mut r = Report::new("towers genus-step");
            let s = docs::parse::<TowersDoc>(&read(spec)?)?.build()?;
            let text = if genus.trim_start().starts_with('{') {
                genus.clone()
            } else {
                read(Path::new(genus))?
            };
            let base: GenusVector = docs::parse(&text)?;
            let base = GenusVector::new(base.udim, base.ranks)?;
            r.param("towers", s.towers().len(), json!(s.towers().len()));
            r.param("genus", genus_text(&base), json!(base));
            let mut g = base.clone();
            let mut rows = Vec::new();
            let mut steps = Vec::new();
            let mut standard = true;
            for v in simple {
                g = towers::genus_step(&g, v, &s)?;
                let ok = towers::check_cycle_standard_rank(&g, &s, &base);
                standard &= ok;
                rows.push(vec![v.clone(), genus_text(&g), ok.to_string()]);
                steps.push(json!({"simple": v, "genus": g, "standard_rank": ok}));
            }
            r.field("final", genus_text(&g), json!(g));
            r.field("standard_rank", standard, json!(standard));
            r.table(
                "steps",
                vec!["simple", "genus", "standard_rank"],
                rows,
                json!(steps),
            );
            r.violation = !standard;
            Ok(r)
        }
    }
}

fn genus_text(g: &GenusVector) -> String {
    let ranks: Vec<String> = g.ranks.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("udim={} {{{}}}", g.udim, ranks.join(","))
}

fn analyze(name: &str, lattice: &IdealLattice, lengths_only: bool) -> hnpfact::Result<Report> {
    let mut r = Report::new("chains analyze");
    r.param("lattice", name, json!(name));
    r.param("nodes", lattice.node_count(), json!(lattice.node_count()));
    let l = chains::length_set_chain(lattice);
    r.field("lengths", &l, set_json(l.iter()));
    if lengths_only {
        return Ok(r);
    }
    let cs = chains::rigid_factorizations(lattice);
    r.field("chains", cs.len(), json!(cs.len()));
    let rows = cs
        .iter()
        .enumerate()
        .map(|(i, c)| vec![i.to_string(), c.len().to_string(), c.to_string()])
        .collect();
    let js: Vec<Value> = cs
        .iter()
        .map(|c| json!({"length": c.len(), "nodes": c.nodes(), "steps": c.step_labels()}))
        .collect();
    r.table(
        "rigid_factorizations",
        vec!["index", "length", "chain"],
        rows,
        json!(js),
    );
    let mut dist = Vec::new();
    for a in &cs {
        let row = cs
            .iter()
            .map(|b| chains::composition_distance(a, b))
            .collect::<hnpfact::Result<Vec<u32>>>()?;
        dist.push(row);
    }
    let rows = dist
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut cells = vec![i.to_string()];
            cells.extend(row.iter().map(|d| d.to_string()));
            cells
        })
        .collect();
    let mut header = vec!["index"];
    const COLS: [&str; 10] = ["0", "1", "2", "3", "4", "5", "6", "7", "8", "9"];
    if cs.len() <= COLS.len() {
        header.extend(&COLS[..cs.len()]);
        r.table("composition_distance", header, rows, json!(dist));
    } else {
        r.field(
            "composition_distance",
            "(too many chains to tabulate)",
            json!(dist),
        );
    }
    Ok(r)
}

fn run_chains(cmd: &ChainsCmd) -> hnpfact::Result<Report> {
    match cmd {
        ChainsCmd::Analyze { spec, lengths } => {
            let lattice = chains::load_lattice_json(&read(spec)?)?;
            analyze(&spec.display().to_string(), &lattice, *lengths)
        }
        ChainsCmd::Builtin { name, lengths } => {
            let lattice = chains::builtin(name)?;
            let mut r = analyze(name, &lattice, *lengths)?;
            r.command = "chains builtin";
            Ok(r)
        }
    }
}

fn run(cli: &Cli) -> hnpfact::Result<Report> {
    match &cli.command {
        Command::Group(GroupCmd::Info(source)) => {
            let g = group_of(source)?;
            let mut r = Report::new("group info");
            r.param("group", &g, json!(g.orders()));
            r.field("cardinality", g.cardinality(), json!(g.cardinality()));
            r.field("rank", g.rank(), json!(g.rank()));
            r.field("exponent", g.exponent(), json!(g.exponent()));
            let mut by_order = std::collections::BTreeMap::<u64, usize>::new();
            for e in g.enumerate() {
                *by_order.entry(g.element_order(&e)?).or_default() += 1;
            }
            let rows = by_order
                .iter()
                .map(|(o, c)| vec![o.to_string(), c.to_string()])
                .collect();
            let js: Map<String, Value> = by_order
                .iter()
                .map(|(o, c)| (o.to_string(), json!(c)))
                .collect();
            r.table(
                "element_orders",
                vec!["order", "elements"],
                rows,
                Value::Object(js),
            );
            Ok(r)
        }
        Command::Blocks(c) => run_blocks(c),
        Command::Krull(c) => run_krull(c),
        Command::Towers(c) => run_towers(c),
        Command::Chains(c) => run_chains(c),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                eprintln!("error: missing subcommand; see --help");
                return ExitCode::from(1);
            }
            let rendered = e.render().to_string();
            let first: Vec<&str> = rendered
                .lines()
                .take_while(|l| !l.trim().is_empty())
                .map(str::trim)
                .collect();
            eprintln!("{}", first.join(" "));
            return ExitCode::from(1);
        }
    };
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.render(cli.format));
            if report.violation {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
