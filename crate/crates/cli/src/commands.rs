use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Subcommand, ValueEnum};
use dpl_core::arithmetic::{bound_row, bound_table, unirationality_threshold, ArithmeticCase, DEFAULT_HORIZON};
use dpl_core::classes::tables::{all_pair_rows, check_reference_tables};
use dpl_core::classes::ClassCatalog;
use dpl_core::configuration::{
    orbit_fingerprint, registry_entries, registry_representative, validate_roots, Configuration, ConfigurationSpec,
    GaloisData, SingularityType,
};
use dpl_core::curves::figures::FIGURES;
use dpl_core::curves::{derive_configuration, DerivedGraph, Vertex};
use dpl_core::lattice::{DivisorClass, SurfaceLattice};
use dpl_core::verify::{run_criterion, Status, VerifyOptions};
use dpl_core::weyl::{DeltaKind, DeltaSets, TraceFilter, WeylGroup};
use serde_json::{json, Value};

use crate::output::{Format, Output, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassKind {
    /// Classes with square -1 and K-degree -1.
    Pre1,
    /// Classes with square -2 and K-degree 0.
    Roots,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    /// Number of blown-up points, 0 to 8.
    #[arg(long, default_value_t = 7)]
    pub rank: usize,
    #[arg(long, value_enum)]
    pub kind: ClassKind,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// Configuration JSON with `roots`, optional `orbits` and `a2_conjugate_components`.
    #[arg(long, conflicts_with_all = ["roots", "registry"])]
    pub input: Option<PathBuf>,
    /// Comma-separated class names, e.g. `A'12,B'345`.
    #[arg(long, conflicts_with = "registry")]
    pub roots: Option<String>,
    /// Classify the registry representative of this type.
    #[arg(long, value_name = "TYPE")]
    pub registry: Option<String>,
    #[arg(long, requires = "registry")]
    pub variant: Option<String>,
}

#[derive(Debug, Args)]
pub struct DeriveArgs {
    /// Singularity type such as `2A3` or `A1+A5`.
    #[arg(long = "type", value_name = "TYPE")]
    pub ty: String,
    /// Registry variant for types with several orbits.
    #[arg(long)]
    pub variant: Option<String>,
    /// Galois orbits on the components, e.g. `0|1,2,3`.
    #[arg(long)]
    pub orbits: Option<String>,
    /// A2 components whose two roots are conjugate, e.g. `0,2`.
    #[arg(long)]
    pub a2_conjugate: Option<String>,
    /// Also write the DOT rendering here.
    #[arg(long)]
    pub dot: Option<PathBuf>,
    /// Also write the JSON document here.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ContractArgs {
    /// Disjoint exceptional classes to contract, by name or as `[c0,...,c7]`.
    #[arg(long = "curve", required = true)]
    pub curves: Vec<String>,
    /// Classes to push forward to the contracted surface.
    #[arg(long = "class")]
    pub classes: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DeltaArg {
    D1,
    D2,
    D3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FilterArg {
    FixRoot,
    SwapPair,
    CycleQuad,
}

#[derive(Debug, Subcommand)]
pub enum WeylCommand {
    /// Group order and the stabilizer of a root.
    Order,
    /// Number of elements with each trace.
    Histogram,
    /// Transitivity on the roots, root pairs or cycled 4-tuples.
    Transitivity {
        #[arg(value_enum)]
        set: DeltaArg,
    },
    /// Traces of the elements satisfying a condition on a witness.
    Traces {
        #[arg(value_enum)]
        filter: FilterArg,
        /// Index of the witness in the corresponding set.
        #[arg(long, default_value_t = 0)]
        witness: usize,
    },
}

#[derive(Debug, Args)]
pub struct WeylArgs {
    #[command(subcommand)]
    pub command: WeylCommand,
    /// Regenerate the group instead of using the cache.
    #[arg(long)]
    pub no_cache: bool,
}

#[derive(Debug, Subcommand)]
pub enum ArithCommand {
    /// Point-count bounds for one prime power.
    Bounds {
        #[arg(long)]
        case: ArithmeticCase,
        #[arg(long)]
        q: u64,
    },
    /// Least prime power from which the bound always suffices.
    Threshold {
        #[arg(long)]
        case: ArithmeticCase,
        #[arg(long, default_value_t = DEFAULT_HORIZON)]
        horizon: u64,
    },
    /// Bounds for every prime power up to `qmax`.
    Table {
        #[arg(long)]
        case: ArithmeticCase,
        #[arg(long)]
        qmax: u64,
        /// Also write the table as CSV here.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Skip the Weyl group enumeration.
    #[arg(long)]
    pub skip_weyl: bool,
    /// Exit successfully when every failure is a recorded known issue.
    #[arg(long)]
    pub allow_known_issues: bool,
    /// Run only these criteria (1 to 11).
    #[arg(long = "criterion", value_parser = clap::value_parser!(u8).range(1..=11))]
    pub criteria: Vec<u8>,
    #[arg(long, default_value_t = 1000)]
    pub property_trials: usize,
    #[arg(long, default_value_t = 0x5eed)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_HORIZON)]
    pub horizon: u64,
    /// Regenerate the group instead of using the cache.
    #[arg(long)]
    pub no_cache: bool,
}

fn catalog() -> ClassCatalog {
    ClassCatalog::degree_two()
}

fn cache_dir(no_cache: bool) -> Option<PathBuf> {
    if no_cache {
        return None;
    }
    std::env::var_os("DPL_CACHE_DIR").map(PathBuf::from)
}

fn coeffs_json(c: &DivisorClass) -> Value {
    json!(c.coeffs())
}

/// A class given by name or as a JSON coefficient list.
fn parse_class(s: &str, cat: &ClassCatalog) -> Result<DivisorClass> {
    let s = s.trim();
    if s.starts_with('[') {
        let v: Vec<i64> = serde_json::from_str(s).with_context(|| format!("bad coefficient list {s}"))?;
        return Ok(cat.lattice().class(v)?);
    }
    Ok(cat.named(s)?)
}

fn parse_indices(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<usize>().with_context(|| format!("bad index {t:?}")))
        .collect()
}

pub fn enumerate(args: &EnumerateArgs) -> Result<Output> {
    let lat = SurfaceLattice::new(args.rank)?;
    let cat = ClassCatalog::new(lat);
    let (classes, kind) = match args.kind {
        ClassKind::Pre1 => (cat.pre_minus1(), "pre1"),
        ClassKind::Roots => (cat.roots(), "roots"),
    };
    let mut table = Table::new(&["index", "name", "coefficients"]);
    let mut data = Vec::new();
    for (i, c) in classes.iter().enumerate() {
        let name = cat.name_of(c);
        table.push(vec![i.to_string(), name.clone().unwrap_or_default(), c.to_string()]);
        data.push(coeffs_json(c));
    }
    let mut out = Output::new("enumerate", json!({"rank": args.rank, "kind": kind}), json!(data));
    out.table = Some(table);
    Ok(out)
}

pub fn tables() -> Result<Output> {
    let cat = catalog();
    let rows = all_pair_rows(&cat)?;
    let check = check_reference_tables();
    let mut table = Table::new(&["left_name", "right_name", "value"]);
    for (l, r, v) in &rows {
        table.push(vec![l.clone(), r.clone(), v.to_string()]);
    }
    let data = json!({
        "check": check,
        "rows": rows.iter().map(|(l, r, v)| json!([l, r, v])).collect::<Vec<_>>(),
    });
    let mut out = Output::new("tables", json!({}), data);
    out.text = Some(format!(
        "{} pairs; {} published cells checked against {} pairs, {} mismatches, {} uncovered\n",
        rows.len(),
        check.cells,
        check.pairs_checked,
        check.mismatches.len(),
        check.uncovered.len(),
    ));
    out.ok = check.mismatches.is_empty();
    out.table = Some(table);
    out.default_format = Format::Csv;
    Ok(out)
}

pub fn classify(args: &ClassifyArgs) -> Result<Output> {
    let cat = catalog();
    let (spec, inputs, bytes, source) = if let Some(path) = &args.input {
        let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        let spec: ConfigurationSpec =
            serde_json::from_slice(&bytes).with_context(|| format!("parsing {}", path.display()))?;
        (spec, json!({"input": "file"}), bytes, None)
    } else if let Some(names) = &args.roots {
        let roots = names
            .split(',')
            .map(|n| parse_class(n, &cat).map(|c| c.coeffs().to_vec()))
            .collect::<Result<_>>()?;
        (
            ConfigurationSpec {
                roots,
                orbits: None,
                a2_conjugate_components: None,
            },
            json!({"roots": names}),
            Vec::new(),
            None,
        )
    } else if let Some(ty) = &args.registry {
        let t: SingularityType = ty.parse()?;
        let cfg = registry_representative(&t, args.variant.as_deref(), &cat)?;
        (
            cfg.to_spec(),
            json!({"registry": ty, "variant": args.variant}),
            Vec::new(),
            Some(ty.clone()),
        )
    } else {
        bail!("one of --input, --roots or --registry is required");
    };

    let dim = spec.roots.first().map_or(8, Vec::len);
    let lattice = SurfaceLattice::new(dim.saturating_sub(1))?;
    let roots: Vec<DivisorClass> = spec.roots.iter().cloned().map(DivisorClass::new).collect();
    let violations: Vec<String> = validate_roots(lattice, &roots)
        .iter()
        .map(ToString::to_string)
        .collect();
    let mut data = json!({ "spec": spec, "violations": violations });
    let mut text = String::new();
    if let Some(ty) = &source {
        text.push_str(&format!("registry {ty}\n"));
    }
    let ok = if violations.is_empty() {
        match Configuration::from_spec(&spec) {
            Ok(cfg) => {
                let cat = if lattice.rank() == 7 {
                    cat
                } else {
                    ClassCatalog::new(lattice)
                };
                let fp = orbit_fingerprint(&cfg, &cat);
                let matches: Vec<String> = if lattice.rank() == 7 {
                    registry_entries()
                        .iter()
                        .filter(|e| e.singularity_type() == *cfg.type_label())
                        .filter(|e| e.configuration(&cat).is_ok_and(|r| orbit_fingerprint(&r, &cat) == fp))
                        .map(|e| match e.variant {
                            Some(v) => format!("{} ({v})", e.type_name),
                            None => e.type_name.to_string(),
                        })
                        .collect()
                } else {
                    Vec::new()
                };
                let components: Vec<Value> = cfg
                    .components()
                    .iter()
                    .map(|c| json!({"label": c.label.to_string(), "roots": c.roots}))
                    .collect();
                text.push_str(&format!(
                    "type {}\ncomponents {}\nfingerprint {}\nfree (-1)-classes {}\nregistry orbit {}\n",
                    cfg.type_label(),
                    cfg.delta(),
                    fp.digest(),
                    fp.free_count(),
                    if matches.is_empty() {
                        "none".to_string()
                    } else {
                        matches.join(", ")
                    },
                ));
                data["type"] = json!(cfg.type_label().to_string());
                data["components"] = json!(components);
                data["fingerprint"] = json!(fp.digest());
                data["free_count"] = json!(fp.free_count());
                data["registry_matches"] = json!(matches);
                true
            }
            Err(e) => {
                text.push_str(&format!("invalid: {e}\n"));
                data["error"] = json!(e.to_string());
                false
            }
        }
    } else {
        for v in &violations {
            text.push_str(&format!("violation: {v}\n"));
        }
        false
    };
    let mut out = Output::new("classify", inputs, data);
    out.input_bytes = bytes;
    out.text = Some(text);
    out.ok = ok;
    Ok(out)
}

fn galois_from_flags(delta: usize, orbits: Option<&str>, a2: Option<&str>, base: &GaloisData) -> Result<GaloisData> {
    let orbits = match orbits {
        Some(s) => s.split('|').map(parse_indices).collect::<Result<Vec<_>>>()?,
        None => base.orbits.clone(),
    };
    let a2_conjugate_components: BTreeSet<usize> = match a2 {
        Some(s) => parse_indices(s)?.into_iter().collect(),
        None => base.a2_conjugate_components.clone(),
    };
    if let Some(&bad) = orbits
        .iter()
        .flatten()
        .chain(&a2_conjugate_components)
        .find(|&&i| i >= delta)
    {
        bail!("component index {bad} out of range for {delta} components");
    }
    Ok(GaloisData {
        orbits,
        a2_conjugate_components,
    })
}

fn vertex_name(v: Vertex) -> String {
    match v {
        Vertex::Root(i) => format!("r{i}"),
        Vertex::Curve(i) => format!("e{i}"),
    }
}

fn derived_json(g: &DerivedGraph, cat: &ClassCatalog) -> Value {
    let named = |cs: &[DivisorClass]| {
        cs.iter()
            .map(|c| json!({"name": cat.label(c), "coefficients": c.coeffs()}))
            .collect::<Vec<_>>()
    };
    json!({
        "roots": named(&g.roots),
        "curves": named(&g.curves),
        "edges": g.edges.iter().map(|&(a, b)| format!("{}-{}", vertex_name(a), vertex_name(b))).collect::<Vec<_>>(),
        "minimal_case": g.minimal.map(|m| m.number()),
        "target": {
            "degree": g.target.degree,
            "singularities": g.target.singularities.to_string(),
            "lattice": g.target.lattice,
            "surviving_roots": g.target.surviving_roots,
        },
        "rule": g.rule,
    })
}

pub fn derive(args: &DeriveArgs) -> Result<Output> {
    let cat = catalog();
    let ty: SingularityType = args.ty.parse()?;
    let cfg = registry_representative(&ty, args.variant.as_deref(), &cat)?;
    let galois = galois_from_flags(
        cfg.delta(),
        args.orbits.as_deref(),
        args.a2_conjugate.as_deref(),
        cfg.galois(),
    )?;
    let cfg = cfg.with_galois(galois)?;
    let g = derive_configuration(&cfg, &cat)?;

    // Compare with a published figure drawn under the same Galois data.
    let figure = FIGURES.iter().find(|f| {
        f.type_name == ty.to_string()
            && f.variants.contains(&args.variant.as_deref())
            && f.galois.data(cfg.delta()) == *cfg.galois()
    });
    let figure_json = figure.map(|f| {
        json!({
            "case": f.case,
            "isomorphic": g.to_colored_graph().is_isomorphic(&f.graph()),
            "degree_matches": f.degree == g.target.degree,
        })
    });

    let mut data = derived_json(&g, &cat);
    data["type"] = json!(ty.to_string());
    data["variant"] = json!(args.variant);
    data["galois"] = json!(cfg.galois());
    data["figure"] = json!(figure_json);

    let name = match &args.variant {
        Some(v) => format!("{ty} ({v})"),
        None => ty.to_string(),
    };
    let mut text = format!("{name}: {}\n", g.rule);
    text.push_str(&format!(
        "roots {}; curves {}\n",
        g.roots.iter().map(|r| cat.label(r)).collect::<Vec<_>>().join(" "),
        g.curves.iter().map(|c| cat.label(c)).collect::<Vec<_>>().join(" "),
    ));
    match g.minimal {
        Some(m) => text.push_str(&format!("minimal case {}\n", m.number())),
        None => text.push_str(&format!(
            "contracts to degree {} with {}\n",
            g.target.degree, g.target.singularities
        )),
    }
    if let Some(f) = figure {
        let iso = g.to_colored_graph().is_isomorphic(&f.graph());
        text.push_str(&format!(
            "figure {}: {}\n",
            f.case,
            if iso { "isomorphic" } else { "differs" }
        ));
    }

    let inputs =
        json!({"type": args.ty, "variant": args.variant, "orbits": args.orbits, "a2_conjugate": args.a2_conjugate});
    let mut out = Output::new("derive", inputs, data);
    out.dot = Some(g.to_dot(&name, |c| cat.label(c)));
    out.text = Some(text);
    out.files.extend(args.dot.iter().map(|p| (p.clone(), Format::Dot)));
    out.files.extend(args.json.iter().map(|p| (p.clone(), Format::Json)));
    Ok(out)
}

pub fn contract(args: &ContractArgs) -> Result<Output> {
    let cat = catalog();
    let curves: Vec<DivisorClass> = args
        .curves
        .iter()
        .map(|s| parse_class(s, &cat))
        .collect::<Result<_>>()?;
    let c = cat.lattice().blow_down(&curves)?;
    let k = c.project(&cat.canonical_class())?;
    let mut projected = Vec::new();
    let mut table = Table::new(&["class", "image"]);
    for s in &args.classes {
        let x = parse_class(s, &cat)?;
        let y = c.project(&x)?;
        table.push(vec![s.clone(), y.to_string()]);
        projected.push(json!({"class": s, "image": y.coeffs()}));
    }
    let data = json!({
        "curves": curves.iter().map(|e| cat.label(e)).collect::<Vec<_>>(),
        "target_degree": c.target.degree(),
        "target_lattice": c.target,
        "canonical_image": k.coeffs(),
        "rebasing": c.rebasing,
        "projections": projected,
    });
    let mut text = format!(
        "contracting {} curve(s) gives degree {}\n",
        curves.len(),
        c.target.degree()
    );
    text.push_str(&format!("K maps to {k}\n"));
    for r in &table.rows {
        text.push_str(&format!("{} maps to {}\n", r[0], r[1]));
    }
    let mut out = Output::new(
        "contract",
        json!({"curves": args.curves, "classes": args.classes}),
        data,
    );
    out.table = Some(table);
    out.text = Some(text);
    Ok(out)
}

fn root_names(roots: &[u8], cat: &ClassCatalog) -> Vec<String> {
    roots.iter().map(|&r| cat.label(&cat.roots()[r as usize])).collect()
}

fn delta_len(d: &DeltaSets, kind: DeltaKind) -> usize {
    match kind {
        DeltaKind::Roots => d.roots.len(),
        DeltaKind::Pairs => d.pairs.len(),
        DeltaKind::Quadruples => d.quadruples.len(),
    }
}

pub fn weyl(args: &WeylArgs) -> Result<Output> {
    let cat = catalog();
    let group = WeylGroup::load_or_generate(&cat, cache_dir(args.no_cache).as_deref())?;
    let mut out = match &args.command {
        WeylCommand::Order => {
            let stab = group.stabilizer_size(0);
            let data = json!({"order": group.order(), "root_orbit": 126, "root_stabilizer": stab});
            let mut out = Output::new("weyl order", json!({}), data);
            out.text = Some(format!("order {}\nstabilizer of a root {stab}\n", group.order()));
            out.ok = group.order() == dpl_core::weyl::E7_ORDER;
            out
        }
        WeylCommand::Histogram => {
            let hist = group.trace_histogram();
            let mut table = Table::new(&["trace", "elements"]);
            for (t, n) in &hist {
                table.push(vec![t.to_string(), n.to_string()]);
            }
            let mut out = Output::new("weyl histogram", json!({}), json!(hist));
            out.table = Some(table);
            out
        }
        WeylCommand::Transitivity { set } => {
            let deltas = group.delta_sets();
            let (kind, label) = match set {
                DeltaArg::D1 => (DeltaKind::Roots, "d1"),
                DeltaArg::D2 => (DeltaKind::Pairs, "d2"),
                DeltaArg::D3 => (DeltaKind::Quadruples, "d3"),
            };
            let transitive = group.verify_transitivity(&deltas, kind);
            let size = delta_len(&deltas, kind);
            let data = json!({"set": label, "size": size, "transitive": transitive});
            let mut out = Output::new("weyl transitivity", json!({"set": label}), data);
            out.text = Some(format!(
                "{label}: {size} elements, {}\n",
                if transitive { "one orbit" } else { "not transitive" }
            ));
            out.ok = transitive;
            out
        }
        WeylCommand::Traces { filter, witness } => {
            let deltas = group.delta_sets();
            let (f, label, n) = match filter {
                FilterArg::FixRoot => {
                    let w = *deltas
                        .roots
                        .get(*witness)
                        .ok_or_else(|| anyhow!("witness {witness} out of range"))?;
                    (TraceFilter::FixesRoot(w), "fix-root", deltas.roots.len())
                }
                FilterArg::SwapPair => {
                    let w = *deltas
                        .pairs
                        .get(*witness)
                        .ok_or_else(|| anyhow!("witness {witness} out of range"))?;
                    (TraceFilter::SwapsPair(w), "swap-pair", deltas.pairs.len())
                }
                FilterArg::CycleQuad => {
                    let w = *deltas
                        .quadruples
                        .get(*witness)
                        .ok_or_else(|| anyhow!("witness {witness} out of range"))?;
                    (TraceFilter::CyclesQuadruple(w), "cycle-quad", deltas.quadruples.len())
                }
            };
            let r = group.trace_sets(&[f])?.remove(0);
            let witness_roots: Vec<u8> = match f {
                TraceFilter::FixesRoot(a) => vec![a],
                TraceFilter::SwapsPair(p) => p.to_vec(),
                TraceFilter::CyclesQuadruple(q) => q.to_vec(),
            };
            let names = root_names(&witness_roots, &cat);
            let data = json!({
                "filter": label,
                "witness": witness,
                "witness_roots": names,
                "set_size": n,
                "elements": r.elements,
                "traces": r.traces,
            });
            let mut out = Output::new("weyl traces", json!({"filter": label, "witness": witness}), data);
            out.text = Some(format!(
                "{label} witness {} ({}): {} elements, traces {:?}\n",
                witness,
                names.join(" "),
                r.elements,
                r.traces,
            ));
            out
        }
    };
    out.default_format = Format::Text;
    Ok(out)
}

fn bound_table_of(rows: &[dpl_core::arithmetic::BoundRow]) -> Table {
    let mut t = Table::new(&["q", "char", "min_X", "max_R", "min_offR", "required", "ok"]);
    for r in rows {
        t.push(vec![
            r.q.to_string(),
            r.characteristic.to_string(),
            r.min_x.to_string(),
            r.max_r.clone(),
            r.min_off_r.to_string(),
            r.required.to_string(),
            r.ok.to_string(),
        ]);
    }
    t
}

pub fn arith(cmd: &ArithCommand) -> Result<Output> {
    let mut out = match cmd {
        ArithCommand::Bounds { case, q } => {
            let row = bound_row(*q, *case)?;
            let table = bound_table_of(std::slice::from_ref(&row));
            let mut out = Output::new("arith bounds", json!({"case": case.number(), "q": q}), json!(row));
            out.table = Some(table);
            out
        }
        ArithCommand::Threshold { case, horizon } => {
            let t = unirationality_threshold(*case, *horizon)?;
            let text = format!(
                "case {} ({}): threshold q >= {}; largest failing q {}; scanned to {}{}\n",
                case.number(),
                case.type_name(),
                t.threshold,
                t.boundary_failure.map_or("none".to_string(), |q| q.to_string()),
                t.horizon,
                if t.tail_certified {
                    ", tail certified"
                } else {
                    ", tail not certified"
                },
            );
            let mut out = Output::new(
                "arith threshold",
                json!({"case": case.number(), "horizon": horizon}),
                json!(t),
            );
            out.text = Some(text);
            out.ok = t.tail_certified;
            out
        }
        ArithCommand::Table { case, qmax, csv } => {
            let rows = bound_table(*case, *qmax)?;
            let mut out = Output::new("arith table", json!({"case": case.number(), "qmax": qmax}), json!(rows));
            out.table = Some(bound_table_of(&rows));
            out.files.extend(csv.iter().map(|p| (p.clone(), Format::Csv)));
            out
        }
    };
    out.default_format = Format::Text;
    Ok(out)
}

pub fn verify_all(args: &VerifyArgs) -> Result<Output> {
    let opts = VerifyOptions {
        skip_weyl: args.skip_weyl,
        cache_dir: cache_dir(args.no_cache),
        property_trials: args.property_trials,
        seed: args.seed,
        threshold_horizon: args.horizon,
    };
    let ids: Vec<u8> = if args.criteria.is_empty() {
        (1..=11).collect()
    } else {
        args.criteria.clone()
    };
    let reports: Vec<_> = ids.iter().map(|&id| run_criterion(id, &opts)).collect();

    let mut text = String::new();
    let mut unexplained = 0;
    for r in &reports {
        text.push_str(&r.summary_line());
        text.push('\n');
        for c in r.failing_checks() {
            text.push_str(&format!("    {}: expected {}, got {}\n", c.name, c.expected, c.actual));
        }
        for k in &r.known_issues {
            text.push_str(&format!("    known issue {}: {}\n", k.check, k.reason));
        }
        let known: BTreeSet<&str> = r.known_issues.iter().map(|k| k.check.as_str()).collect();
        unexplained += r.failing_checks().filter(|c| !known.contains(c.name.as_str())).count();
    }
    let passed = reports.iter().filter(|r| r.status == Status::Pass).count();
    let failed = reports.iter().filter(|r| r.status == Status::Fail).count();
    let skipped = reports.len() - passed - failed;
    text.push_str(&format!("{passed} passed, {failed} failed, {skipped} skipped\n"));

    let inputs = json!({
        "skip_weyl": args.skip_weyl,
        "criteria": ids,
        "property_trials": args.property_trials,
        "seed": args.seed,
        "horizon": args.horizon,
    });
    let data = json!({"reports": reports, "passed": passed, "failed": failed, "skipped": skipped});
    let mut out = Output::new("verify-all", inputs, data);
    let mut table = Table::new(&["criterion", "status", "title", "failing_checks"]);
    for r in &reports {
        let failing: Vec<&str> = r.failing_checks().map(|c| c.name.as_str()).collect();
        table.push(vec![
            r.id.to_string(),
            format!("{:?}", r.status),
            r.title.to_string(),
            failing.join("; "),
        ]);
    }
    out.table = Some(table);
    out.text = Some(text);
    out.ok = failed == 0 || (args.allow_known_issues && unexplained == 0);
    out.default_format = Format::Text;
    Ok(out)
}

/// Writes an artifact, creating parent directories as needed.
pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    std::fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}
