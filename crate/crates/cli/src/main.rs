use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use psubchi::catalog::{build, constructible_up_to, parse_spec, GroupSpec};
use psubchi::eulercat::{build_report, weights, CategoryKind, ChiReport, Kind, Side};
use psubchi::psub::{Scope, SubgroupClass, SylowLattice};
use psubchi::verify::{
    scan_fradical_support, scan_quillen, verify_combinatorial_identities, verify_integrality,
    verify_products, verify_support,
};
use psubchi::Error;

#[derive(Parser)]
#[command(name = "psubchi", version, about = "Exact Euler characteristics of p-subgroup categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Euler characteristics of one group, checked along every available route.
    Chi(ChiArgs),
    /// Per-class weighting or coweighting of one category.
    Weights(WeightsArgs),
    /// Identity residuals: combinatorial identities, integrality, support, products.
    Verify(VerifyArgs),
    /// Rows for a family of groups, e.g. alternating groups A4..A8.
    Table(TableArgs),
    /// Conjecture scan over catalog-constructible groups.
    Scan(ScanArgs),
}

#[derive(Args)]
struct Common {
    #[arg(long, short, default_value_t = 2)]
    prime: u64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Record wall-clock milliseconds per phase (makes output non-reproducible).
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct ChiArgs {
    spec: String,
    #[arg(long, default_value = "nonidentity")]
    scope: String,
    /// Comma-separated kinds out of S,T,L,F,O,Ftilde.
    #[arg(long, value_delimiter = ',', default_value = "S,T,L,F,O,Ftilde")]
    kinds: Vec<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct WeightsArgs {
    spec: String,
    #[arg(long)]
    kind: String,
    #[arg(long, default_value = "weighting")]
    side: String,
    #[arg(long, default_value = "nonidentity")]
    scope: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyArgs {
    spec: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, default_value = "A")]
    family: String,
    #[arg(long, default_value_t = 4)]
    from: usize,
    #[arg(long, default_value_t = 7)]
    to: usize,
    /// Use the centric scope instead of all nonidentity subgroups.
    #[arg(long)]
    centric: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long, value_enum)]
    conjecture: Conjecture,
    #[arg(long, default_value_t = 760)]
    max_order: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Conjecture {
    Quillen,
    Fradical,
}

/// Exit statuses.
mod status {
    pub const VIOLATION: u8 = 1;
    pub const INPUT: u8 = 2;
    pub const RESOURCE: u8 = 3;
    pub const COUNTEREXAMPLE: u8 = 4;
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct Flags {
    elementary_abelian: bool,
    cyclic: bool,
    p_selfcentralizing: bool,
    p_radical: bool,
    f_radical: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct ClassRow {
    order: u64,
    class_size: u64,
    flags: Flags,
    weighting: BTreeMap<String, String>,
    coweighting: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct OutputDocument {
    group: String,
    order: u64,
    prime: u64,
    scope: String,
    categories: BTreeMap<String, String>,
    classes: Vec<ClassRow>,
    residuals: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    timing: Option<BTreeMap<String, u64>>,
}

fn flags(c: &SubgroupClass) -> Flags {
    Flags {
        elementary_abelian: c.flags.elementary_abelian,
        cyclic: c.flags.cyclic,
        p_selfcentralizing: c.flags.p_selfcentralizing,
        p_radical: c.flags.p_radical,
        f_radical: c.flags.f_radical,
    }
}

fn category_name(kind: Kind, scope: Scope) -> String {
    CategoryKind { kind, scope }.to_string()
}

fn document(report: &ChiReport) -> OutputDocument {
    let mut categories = BTreeMap::new();
    let mut residuals = BTreeMap::new();
    for k in &report.kinds {
        categories.insert(category_name(k.kind, report.scope), k.chi.to_string());
        for (route, r) in k.residuals().skip(1) {
            residuals.insert(format!("{}/{}", k.kind, route), r.to_string());
        }
    }
    let classes = report
        .table
        .classes()
        .iter()
        .enumerate()
        .map(|(i, c)| ClassRow {
            order: c.order(),
            class_size: c.class_size,
            flags: flags(c),
            weighting: report
                .kinds
                .iter()
                .map(|k| (k.kind.to_string(), k.weighting.values[i].to_string()))
                .collect(),
            coweighting: report
                .kinds
                .iter()
                .map(|k| (k.kind.to_string(), k.coweighting.values[i].to_string()))
                .collect(),
        })
        .collect();
    OutputDocument {
        group: report.group.clone(),
        order: report.order,
        prime: report.prime,
        scope: report.scope.to_string(),
        categories,
        classes,
        residuals,
        timing: None,
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("documents always serialize") + "\n"
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

const CSV_HEADER: &str = "group,order,prime,scope,kind,chi\n";

fn csv_rows(doc: &OutputDocument, kinds: &[Kind], scope: Scope, out: &mut String) {
    for &k in kinds {
        let name = category_name(k, scope);
        if let Some(v) = doc.categories.get(&name) {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                csv_field(&doc.group),
                doc.order,
                doc.prime,
                doc.scope,
                k,
                v
            );
        }
    }
}

/// Left-aligned text table.
fn render_table(header: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &[String]| {
        let parts: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        let _ = writeln!(out, "{}", parts.join("  ").trim_end());
    };
    line(header);
    for row in rows {
        line(row);
    }
    out
}

fn empty_notice(doc: &OutputDocument) -> Option<String> {
    doc.classes.is_empty().then(|| {
        format!(
            "note: {} has no {} {}-subgroups; every Euler characteristic is 0\n",
            doc.group, doc.scope, doc.prime
        )
    })
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::Input(_) | Error::Parse { .. } => status::INPUT,
        Error::Resource { .. } => status::RESOURCE,
        Error::Invariant(_) => status::VIOLATION,
    }
}

struct Outcome {
    text: String,
    status: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, status: 0 }
    }
}

fn parse_kinds(kinds: &[String]) -> psubchi::Result<Vec<Kind>> {
    kinds.iter().map(|k| k.trim().parse()).collect()
}

fn chi_document(
    spec: &GroupSpec,
    p: u64,
    scope: Scope,
    kinds: &[Kind],
    timing: bool,
) -> psubchi::Result<(OutputDocument, ChiReport)> {
    let t0 = Instant::now();
    let g = build(spec)?;
    let t_build = t0.elapsed();
    let t1 = Instant::now();
    let report = build_report(&spec.to_string(), &g, p, scope, kinds)?;
    let t_report = t1.elapsed();
    let mut doc = document(&report);
    if timing {
        doc.timing = Some(BTreeMap::from([
            ("build".to_string(), t_build.as_millis() as u64),
            ("report".to_string(), t_report.as_millis() as u64),
        ]));
    }
    Ok((doc, report))
}

fn violation_text(report: &ChiReport) -> String {
    let mut s = String::new();
    for (k, route, r) in report.violations() {
        let _ = writeln!(s, "violation: {k} route `{route}` differs from the weighting sum by {r}");
    }
    s
}

fn cmd_chi(a: &ChiArgs) -> psubchi::Result<Outcome> {
    let spec = parse_spec(&a.spec)?;
    let scope: Scope = a.scope.parse()?;
    let kinds = parse_kinds(&a.kinds)?;
    let (doc, report) = chi_document(&spec, a.common.prime, scope, &kinds, a.common.timing)?;
    let mut text = String::new();
    match a.common.format {
        Format::Json => text = to_json(&doc),
        Format::Csv => {
            text.push_str(CSV_HEADER);
            csv_rows(&doc, &kinds, scope, &mut text);
        }
        Format::Table => {
            if let Some(n) = empty_notice(&doc) {
                text.push_str(&n);
            }
            let mut header = vec!["group".into(), "order".into(), "p".into()];
            let mut row = vec![doc.group.clone(), doc.order.to_string(), doc.prime.to_string()];
            for &k in &kinds {
                let name = category_name(k, scope);
                row.push(doc.categories[&name].clone());
                header.push(name);
            }
            text.push_str(&render_table(&header, &[row]));
            if let Some(t) = &doc.timing {
                let _ = writeln!(text, "timing (ms): build {} report {}", t["build"], t["report"]);
            }
        }
    }
    let v = violation_text(&report);
    let status = if v.is_empty() { 0 } else { status::VIOLATION };
    if a.common.format == Format::Table {
        text.push_str(&v);
    } else if !v.is_empty() {
        eprint!("{v}");
    }
    Ok(Outcome { text, status })
}

fn cmd_weights(a: &WeightsArgs) -> psubchi::Result<Outcome> {
    let spec = parse_spec(&a.spec)?;
    let scope: Scope = a.scope.parse()?;
    let kind: Kind = a.kind.parse()?;
    let side: Side = a.side.parse()?;
    let p = a.common.prime;
    let g = build(&spec)?;
    let table = SylowLattice::new(&g, p)?.table(scope);
    let w = weights(&table, kind, side)?;
    let side_name = match side {
        Side::Weighting => "weighting",
        Side::Coweighting => "coweighting",
    };
    let text = match a.common.format {
        Format::Json => {
            let classes: Vec<ClassRow> = table
                .classes()
                .iter()
                .zip(&w.values)
                .map(|(c, v)| {
                    let entry = BTreeMap::from([(kind.to_string(), v.to_string())]);
                    let (weighting, coweighting) = match side {
                        Side::Weighting => (entry, BTreeMap::new()),
                        Side::Coweighting => (BTreeMap::new(), entry),
                    };
                    ClassRow {
                        order: c.order(),
                        class_size: c.class_size,
                        flags: flags(c),
                        weighting,
                        coweighting,
                    }
                })
                .collect();
            to_json(&OutputDocument {
                group: spec.to_string(),
                order: g.order(),
                prime: p,
                scope: scope.to_string(),
                categories: BTreeMap::from([(category_name(kind, scope), w.sum().to_string())]),
                classes,
                residuals: BTreeMap::new(),
                timing: None,
            })
        }
        Format::Csv => {
            let mut s = String::from("group,order,prime,scope,kind,side,class,class_order,class_size,value\n");
            for (i, (c, v)) in table.classes().iter().zip(&w.values).enumerate() {
                let _ = writeln!(
                    s,
                    "{},{},{p},{scope},{kind},{side_name},{i},{},{},{v}",
                    csv_field(&spec.to_string()),
                    g.order(),
                    c.order(),
                    c.class_size
                );
            }
            s
        }
        Format::Table => {
            let header: Vec<String> = ["class", "order", "size", "flags", side_name]
                .iter()
                .map(|s| s.to_string())
                .collect();
            let rows: Vec<Vec<String>> = table
                .classes()
                .iter()
                .zip(&w.values)
                .enumerate()
                .map(|(i, (c, v))| {
                    vec![
                        i.to_string(),
                        c.order().to_string(),
                        c.class_size.to_string(),
                        flag_letters(c),
                        v.to_string(),
                    ]
                })
                .collect();
            let mut s = format!(
                "{} {} of {} at p={p}, scope {scope}: sum {}\n",
                category_name(kind, scope),
                side_name,
                spec,
                w.sum()
            );
            s.push_str(&render_table(&header, &rows));
            s.push_str("flags: e elementary abelian, c cyclic, s p-selfcentralizing, r p-radical, f F-radical\n");
            s
        }
    };
    Ok(Outcome::ok(text))
}

fn flag_letters(c: &SubgroupClass) -> String {
    let f = &c.flags;
    [
        (f.elementary_abelian, 'e'),
        (f.cyclic, 'c'),
        (f.p_selfcentralizing, 's'),
        (f.p_radical, 'r'),
        (f.f_radical, 'f'),
    ]
    .iter()
    .map(|&(on, ch)| if on { ch } else { '-' })
    .collect()
}

fn cmd_verify(a: &VerifyArgs) -> psubchi::Result<Outcome> {
    let spec = parse_spec(&a.spec)?;
    let p = a.common.prime;
    let (mut doc, report) = chi_document(&spec, p, Scope::Nonidentity, &Kind::ALL, a.common.timing)?;
    let g = build(&spec)?;
    let mut failures = Vec::new();
    let mut put = |name: &str, value: String, ok: bool| {
        if !ok {
            failures.push(name.to_string());
        }
        doc.residuals.insert(name.to_string(), value);
    };
    let comb = verify_combinatorial_identities(&g, p)?;
    put("combinatorial/poset", comb.poset.to_string(), comb.poset.is_zero());
    put("combinatorial/frobenius", comb.frobenius.to_string(), comb.frobenius.is_zero());
    put("combinatorial/orbit", comb.orbit.to_string(), comb.orbit.is_zero());
    let int = verify_integrality(&g, p)?;
    put("integrality/F", int.f_scaled_integral.to_string(), int.f_scaled_integral);
    put("integrality/O", int.o_scaled_integral.to_string(), int.o_scaled_integral);
    put("integrality/F_p_local", int.f_p_local.to_string(), int.f_p_local);
    let sup = verify_support(&g, p)?;
    put("support/offending_classes", sup.offending.len().to_string(), sup.offending.is_empty());
    if let Some(m) = sup.normal_sylow_match {
        put("support/normal_sylow", m.to_string(), m);
    }
    if let GroupSpec::Product(x, y) = &spec {
        let r = verify_products(x, y, p)?;
        put("product/S", r.poset.to_string(), r.poset.is_zero());
        put("product/F", r.frobenius.to_string(), r.frobenius.is_zero());
    }
    for (k, route, _) in report.violations() {
        failures.push(format!("{k}/{route}"));
    }
    let text = match a.common.format {
        Format::Json => to_json(&doc),
        Format::Csv => {
            let mut s = String::from("group,order,prime,check,value\n");
            for (name, v) in &doc.residuals {
                let _ = writeln!(s, "{},{},{p},{name},{v}", csv_field(&doc.group), doc.order);
            }
            s
        }
        Format::Table => {
            let header = vec!["check".to_string(), "value".to_string()];
            let rows: Vec<Vec<String>> = doc
                .residuals
                .iter()
                .map(|(k, v)| vec![k.clone(), v.clone()])
                .collect();
            let mut s = format!("{} (order {}) at p={p}\n", doc.group, doc.order);
            s.push_str(&render_table(&header, &rows));
            for f in &failures {
                let _ = writeln!(s, "FAILED: {f}");
            }
            s
        }
    };
    let status = if failures.is_empty() { 0 } else { status::VIOLATION };
    Ok(Outcome { text, status })
}

fn family_spec(family: &str, n: usize) -> psubchi::Result<GroupSpec> {
    parse_spec(&format!("{family}{n}"))
}

fn cmd_table(a: &TableArgs) -> psubchi::Result<Outcome> {
    if !matches!(a.family.as_str(), "A" | "S" | "C") {
        return Err(Error::Input(format!("unknown family `{}` (expected A, S or C)", a.family)));
    }
    if a.from > a.to {
        return Err(Error::Input(format!("empty range {}..{}", a.from, a.to)));
    }
    let p = a.common.prime;
    let scope = if a.centric { Scope::Centric } else { Scope::Nonidentity };
    let mut docs = Vec::new();
    let mut status = 0;
    let mut notes = String::new();
    for n in a.from..=a.to {
        let spec = family_spec(&a.family, n)?;
        let (doc, report) = chi_document(&spec, p, scope, &Kind::ALL, a.common.timing)?;
        let v = violation_text(&report);
        if !v.is_empty() {
            status = status::VIOLATION;
            notes.push_str(&v);
        }
        docs.push(doc);
    }
    let text = match a.common.format {
        Format::Json => to_json(&docs),
        Format::Csv => {
            let mut s = String::from(CSV_HEADER);
            for d in &docs {
                csv_rows(d, &Kind::ALL, scope, &mut s);
            }
            s
        }
        Format::Table => {
            let mut header = vec!["group".to_string(), "order".to_string()];
            header.extend(Kind::ALL.iter().map(|&k| category_name(k, scope)));
            if a.common.timing {
                header.push("ms".into());
            }
            let rows: Vec<Vec<String>> = docs
                .iter()
                .map(|d| {
                    let mut row = vec![d.group.clone(), d.order.to_string()];
                    row.extend(Kind::ALL.iter().map(|&k| d.categories[&category_name(k, scope)].clone()));
                    if let Some(t) = &d.timing {
                        row.push((t["build"] + t["report"]).to_string());
                    }
                    row
                })
                .collect();
            let mut s = format!("p = {p}, scope {scope}\n");
            s.push_str(&render_table(&header, &rows));
            s
        }
    };
    Ok(Outcome {
        text: text + &notes,
        status,
    })
}

#[derive(Serialize)]
struct ScanDocument {
    conjecture: &'static str,
    coverage: String,
    prime: u64,
    max_order: u64,
    groups_in_universe: usize,
    groups_checked: usize,
    skipped: Vec<SkippedRow>,
    counterexamples: Vec<serde_json::Value>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    extremes: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    timing: Option<BTreeMap<String, u64>>,
}

#[derive(Serialize)]
struct SkippedRow {
    group: String,
    reason: String,
}

fn coverage_text(n: u64, universe: usize) -> String {
    format!(
        "catalog-constructible groups of order <= {n} only ({universe} groups: named families \
         and pairwise direct products); this is not every group of those orders"
    )
}

fn witness_document(group: &str, p: u64) -> serde_json::Value {
    let spec = parse_spec(group).expect("scan names round-trip");
    match chi_document(&spec, p, Scope::Nonidentity, &Kind::ALL, false) {
        Ok((doc, _)) => serde_json::to_value(doc).expect("documents always serialize"),
        Err(e) => serde_json::json!({ "group": group, "error": e.to_string() }),
    }
}

fn cmd_scan(a: &ScanArgs) -> psubchi::Result<Outcome> {
    let p = a.common.prime;
    let universe = constructible_up_to(a.max_order);
    let t0 = Instant::now();
    let mut doc = ScanDocument {
        conjecture: "",
        coverage: coverage_text(a.max_order, universe.len()),
        prime: p,
        max_order: a.max_order,
        groups_in_universe: universe.len(),
        groups_checked: 0,
        skipped: Vec::new(),
        counterexamples: Vec::new(),
        extremes: BTreeMap::new(),
        timing: None,
    };
    let mut lines = Vec::new();
    match a.conjecture {
        Conjecture::Quillen => {
            doc.conjecture = "quillen";
            let r = scan_quillen(&universe, p)?;
            doc.groups_checked = r.entries.len();
            doc.skipped = r
                .skipped
                .iter()
                .map(|s| SkippedRow {
                    group: s.group.clone(),
                    reason: s.reason.clone(),
                })
                .collect();
            for e in r.counterexamples() {
                lines.push(format!(
                    "counterexample: {} chi(S*) = {}, |O_p| = {}",
                    e.group, e.chi_s, e.op_order
                ));
                let mut w = witness_document(&e.group, p);
                w["op_order"] = e.op_order.into();
                doc.counterexamples.push(w);
            }
        }
        Conjecture::Fradical => {
            doc.conjecture = "fradical";
            let r = scan_fradical_support(&universe, p)?;
            doc.groups_checked = r.groups_checked;
            doc.skipped = r
                .skipped
                .iter()
                .map(|s| SkippedRow {
                    group: s.group.clone(),
                    reason: s.reason.clone(),
                })
                .collect();
            for c in &r.counterexamples {
                lines.push(format!(
                    "counterexample: {} centric class {} (order {}): weight {}, F-radical {}",
                    c.group, c.class, c.class_order, c.weight, c.f_radical
                ));
                let mut w = witness_document(&c.group, p);
                w["class"] = c.class.into();
                w["weight"] = c.weight.to_string().into();
                w["f_radical"] = c.f_radical.into();
                doc.counterexamples.push(w);
            }
            if let Some((v, g)) = &r.chi_f_min {
                doc.extremes.insert("min_chi_F".into(), format!("{v} ({g})"));
            }
            if let Some((v, g)) = &r.chi_f_max {
                doc.extremes.insert("max_chi_F".into(), format!("{v} ({g})"));
            }
        }
    }
    if a.common.timing {
        doc.timing = Some(BTreeMap::from([(
            "scan".to_string(),
            t0.elapsed().as_millis() as u64,
        )]));
    }
    let status = if doc.counterexamples.is_empty() { 0 } else { status::COUNTEREXAMPLE };
    let text = match a.common.format {
        Format::Json => to_json(&doc),
        Format::Csv => {
            let mut s = String::from("conjecture,prime,max_order,groups_checked,skipped,counterexamples\n");
            let _ = writeln!(
                s,
                "{},{p},{},{},{},{}",
                doc.conjecture,
                a.max_order,
                doc.groups_checked,
                doc.skipped.len(),
                doc.counterexamples.len()
            );
            s
        }
        Format::Table => {
            let mut s = format!("coverage: {}\n", doc.coverage);
            let _ = writeln!(
                s,
                "{} scan at p={p}: {} checked, {} skipped, {} counterexamples",
                doc.conjecture,
                doc.groups_checked,
                doc.skipped.len(),
                doc.counterexamples.len()
            );
            for sk in &doc.skipped {
                let _ = writeln!(s, "skipped: {} ({})", sk.group, sk.reason);
            }
            for (k, v) in &doc.extremes {
                let _ = writeln!(s, "{k}: {v}");
            }
            if let Some(t) = &doc.timing {
                let _ = writeln!(s, "timing (ms): {}", t["scan"]);
            }
            for l in &lines {
                let _ = writeln!(s, "{l}");
            }
            if status != 0 {
                s.push_str(&to_json(&doc.counterexamples));
            }
            s
        }
    };
    Ok(Outcome { text, status })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { status::INPUT } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Chi(a) => cmd_chi(a),
        Command::Weights(a) => cmd_weights(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Table(a) => cmd_table(a),
        Command::Scan(a) => cmd_scan(a),
    };
    match result {
        Ok(o) => {
            print!("{}", o.text);
            ExitCode::from(o.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}
