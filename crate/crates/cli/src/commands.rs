use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context};
use rayon::prelude::*;
use serde_json::json;

use qrsl_core::identity::bivariate::{relation_label, relation_sides};
use qrsl_core::identity::{
    builtin_identities, eval_product_side, eval_sum_series, find_builtin, verify_combination, verify_identity,
    verify_relation_family, IdentitySpec, VerificationReport, BIVARIATE_RELATIONS,
};
use qrsl_core::idl::{parse_expr, parse_idl, Expr};
use qrsl_core::partitions::{
    count_andrews_lewis_9, count_gap2, count_residues, count_s, count_signed, count_t, crosscheck as run_crosscheck,
    enumerate_signed, theorems, CrosscheckReport, SignedClass, Variant,
};
use qrsl_core::{BiSeries, Series};

use crate::render::{emit, opt, Table};
use crate::{CountArgs, CrosscheckArgs, ExpandArgs, Format, Side, VerifyArgs};

const CHAIN: &str = "new36-chain";

fn variant(as_stated: bool) -> Variant {
    if as_stated {
        Variant::AsStated
    } else {
        Variant::Proof
    }
}

fn variant_name(v: Variant) -> &'static str {
    match v {
        Variant::Proof => "proof",
        Variant::AsStated => "as-stated",
    }
}

/// Writes `table` in the chosen format, or one JSON object per entry.
fn output(fmt: Format, table: &Table, records: impl IntoIterator<Item = String>) -> anyhow::Result<()> {
    match fmt {
        Format::Table => emit(&table.text()),
        Format::Csv => emit(&table.csv()?),
        Format::Jsonl => emit(&records.into_iter().map(|r| r + "\n").collect::<String>()),
    }
}

pub fn list(fmt: Format, grep: Option<&str>) -> anyhow::Result<bool> {
    let mut entries: Vec<(&str, String, String)> = Vec::new();
    for b in builtin_identities() {
        entries.push(("identity", b.spec.name, b.label.to_string()));
    }
    for r in BIVARIATE_RELATIONS {
        entries.push(("relation", r.to_string(), relation_label(r).unwrap_or_default().to_string()));
    }
    entries.push(("combination", CHAIN.into(), "slater124 + q * slater125 = new36, on both sides".into()));
    for t in theorems() {
        entries.push(("theorem", t.name.to_string(), t.label.to_string()));
    }
    if let Some(g) = grep {
        entries.retain(|(_, name, label)| name.contains(g) || label.contains(g));
    }
    let mut table = Table::new(&["kind", "name", "label"]);
    let mut records = Vec::new();
    for (kind, name, label) in entries {
        records.push(json!({ "kind": kind, "name": name, "label": label }).to_string());
        table.push(vec![kind.to_string(), name, label]);
    }
    output(fmt, &table, records)?;
    Ok(true)
}

enum Task {
    Identity(IdentitySpec),
    Relation(&'static str),
    Chain,
}

impl Task {
    fn run(&self, order: usize) -> Vec<VerificationReport> {
        match self {
            Task::Identity(spec) => vec![verify_identity(spec, order)],
            Task::Relation(name) => verify_relation_family(name, order).expect("registered relation"),
            Task::Chain => {
                let c = verify_combination(order);
                vec![c.sum_side, c.product_side]
            }
        }
    }
}

fn builtin_tasks(selector: &str) -> anyhow::Result<Vec<Task>> {
    if selector == "all" {
        let mut tasks: Vec<Task> = builtin_identities().into_iter().map(|b| Task::Identity(b.spec)).collect();
        tasks.extend(BIVARIATE_RELATIONS.iter().map(|r| Task::Relation(r)));
        tasks.push(Task::Chain);
        return Ok(tasks);
    }
    selector
        .split(',')
        .map(str::trim)
        .map(|name| {
            if let Some(b) = find_builtin(name) {
                Ok(Task::Identity(b.spec))
            } else if let Some(r) = BIVARIATE_RELATIONS.iter().find(|r| **r == name) {
                Ok(Task::Relation(r))
            } else if name == CHAIN {
                Ok(Task::Chain)
            } else {
                Err(anyhow!("unknown builtin {name:?} (see `qrsl list`)"))
            }
        })
        .collect()
}

fn read_idl(path: &Path) -> anyhow::Result<Vec<IdentitySpec>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_idl(&text).map_err(|e| anyhow!("{}:{e}", path.display()))
}

pub fn verify(fmt: Format, args: &VerifyArgs) -> anyhow::Result<bool> {
    let tasks = match (&args.builtin, &args.file) {
        (Some(sel), None) => builtin_tasks(sel)?,
        (None, Some(path)) => read_idl(path)?.into_iter().map(Task::Identity).collect(),
        _ => unreachable!("clap enforces exactly one input"),
    };
    let reports: Vec<VerificationReport> =
        tasks.par_iter().map(|t| t.run(args.order)).collect::<Vec<_>>().into_iter().flatten().collect();

    let mut table = Table::new(&["name", "order", "status", "n", "l", "lhs", "rhs", "millis", "detail"]);
    for r in &reports {
        let m = r.mismatch.as_ref();
        table.push(vec![
            r.name.clone(),
            r.order.to_string(),
            json!(r.status).as_str().unwrap_or_default().to_string(),
            opt(m.map(|m| m.n)),
            opt(m.and_then(|m| m.l)),
            opt(m.map(|m| &m.lhs)),
            opt(m.map(|m| &m.rhs)),
            r.millis.to_string(),
            opt(r.detail.as_ref()),
        ]);
    }
    output(fmt, &table, reports.iter().map(VerificationReport::to_json_line))?;
    let passed = reports.iter().filter(|r| r.passed()).count();
    if fmt == Format::Table {
        emit(&format!("{passed}/{} passed\n", reports.len()))?;
    }
    Ok(passed == reports.len())
}

enum Expansion {
    Uni(Series),
    Bi(BiSeries),
}

fn expand_spec(spec: &IdentitySpec, side: Side, order: usize) -> anyhow::Result<Series> {
    Ok(match side {
        Side::Lhs => eval_sum_series(&spec.lhs, order)?,
        Side::Rhs => eval_product_side(&spec.rhs, order)?.shift(spec.rhs.shift as usize),
    })
}

pub fn expand(fmt: Format, args: &ExpandArgs) -> anyhow::Result<bool> {
    let order = args.order;
    let (target, expansion) = if let Some(name) = &args.builtin {
        if let Some(b) = find_builtin(name) {
            (name.clone(), Expansion::Uni(expand_spec(&b.spec, args.side, order)?))
        } else if BIVARIATE_RELATIONS.contains(&name.as_str()) {
            let (lhs, rhs) = relation_sides(name, order)?;
            (name.clone(), Expansion::Bi(if args.side == Side::Lhs { lhs } else { rhs }))
        } else {
            bail!("unknown builtin {name:?} (see `qrsl list`)");
        }
    } else if let Some(path) = &args.file {
        let specs = read_idl(path)?;
        let spec = match &args.name {
            Some(n) => {
                specs.iter().find(|s| &s.name == n).ok_or_else(|| anyhow!("no identity {n:?} in {}", path.display()))?
            }
            None if specs.len() == 1 => &specs[0],
            None => bail!("{} holds {} identities; pick one with --name", path.display(), specs.len()),
        };
        (spec.name.clone(), Expansion::Uni(expand_spec(spec, args.side, order)?))
    } else {
        let text = args.expr.as_deref().expect("clap enforces one input");
        let series = match parse_expr(text).map_err(|e| anyhow!("--expr:{e}"))? {
            Expr::Sum(s) => eval_sum_series(&s, order)?,
            Expr::Product(p) => eval_product_side(&p, order)?,
        };
        ("expr".to_string(), Expansion::Uni(series))
    };
    let side = match args.side {
        _ if args.expr.is_some() => "expr",
        Side::Lhs => "lhs",
        Side::Rhs => "rhs",
    };
    match expansion {
        Expansion::Uni(s) => {
            let coeffs: Vec<String> = s.coeffs().iter().map(ToString::to_string).collect();
            let mut table = Table::new(&["n", "coeff"]);
            let mut records = Vec::new();
            for (n, c) in coeffs.iter().enumerate() {
                table.push(vec![n.to_string(), c.clone()]);
                records.push(json!({ "target": target, "side": side, "n": n, "coeff": c }).to_string());
            }
            match fmt {
                Format::Table => emit(&(coeffs.join(",") + "\n"))?,
                _ => output(fmt, &table, records)?,
            }
        }
        Expansion::Bi(b) => {
            let mut table = Table::new(&["l", "n", "coeff"]);
            let mut records = Vec::new();
            let mut lines = String::new();
            for (l, row) in b.rows().iter().enumerate() {
                let cells: Vec<String> = row.coeffs().iter().map(ToString::to_string).collect();
                lines.push_str(&format!("a^{l}: {}\n", cells.join(",")));
                for (n, c) in cells.into_iter().enumerate() {
                    records.push(json!({ "target": target, "side": side, "l": l, "n": n, "coeff": c }).to_string());
                    table.push(vec![l.to_string(), n.to_string(), c]);
                }
            }
            match fmt {
                Format::Table => emit(&lines)?,
                _ => output(fmt, &table, records)?,
            }
        }
    }
    Ok(true)
}

/// One weight (and part count, where it applies) and its count.
struct Tally {
    n: u32,
    l: Option<u32>,
    count: u128,
}

fn count_one(args: &CountArgs, n: u32, l: Option<u32>) -> anyhow::Result<u128> {
    let v = variant(args.as_stated);
    Ok(match args.class.as_str() {
        "partitions" => count_residues(n, 1, &[1])?,
        "gap2" => count_gap2(n, args.min_part)?.into(),
        "rr1-gap2" => count_gap2(n, 1)?.into(),
        "rr2-gap2-no1" => count_gap2(n, 2)?.into(),
        "residues" => {
            let m = args.modulus.ok_or_else(|| anyhow!("residues needs --modulus"))?;
            count_residues(n, m, &args.residues)?
        }
        "andrews-lewis-9" => count_andrews_lewis_9(n).into(),
        "s-count" => count_s(l.expect("graded class"), n).into(),
        "t-count" => count_t(l.expect("graded class"), n).into(),
        other => count_signed(other.parse::<SignedClass>()?, v, n).into(),
    })
}

pub fn count(fmt: Format, args: &CountArgs) -> anyhow::Result<bool> {
    let class = args.class.as_str();
    let graded = matches!(class, "s-count" | "t-count");
    let known = graded
        || matches!(class, "partitions" | "gap2" | "rr1-gap2" | "rr2-gap2-no1" | "residues" | "andrews-lewis-9")
        || class.parse::<SignedClass>().is_ok();
    if !known {
        bail!("unknown class {class:?}; expected partitions, gap2, rr1-gap2, rr2-gap2-no1, residues, andrews-lewis-9, s-count, t-count or one of {}",
            SignedClass::ALL.map(SignedClass::name).join(", "));
    }
    let single = args.n.or(args.n_flag);
    if args.show {
        let sc: SignedClass = class.parse().map_err(|_| anyhow!("--show applies to signed classes only"))?;
        let n = single.ok_or_else(|| anyhow!("--show needs a weight"))?;
        let members = enumerate_signed(sc, variant(args.as_stated), n);
        let mut table = Table::new(&["positive", "negative"]);
        let mut records = Vec::new();
        for m in &members {
            let (p, q) = (m.positive.to_string(), m.negative.to_string());
            records.push(json!({ "class": class, "n": n, "positive": p, "negative": q }).to_string());
            table.push(vec![p, q]);
        }
        output(fmt, &table, records)?;
        return Ok(true);
    }
    let ns: Vec<u32> = match single {
        Some(n) => vec![n],
        None => (0..=args.n_max).collect(),
    };
    let keys: Vec<(u32, Option<u32>)> = ns
        .iter()
        .flat_map(|&n| match (graded, args.l) {
            (false, _) => vec![(n, None)],
            (true, Some(l)) => vec![(n, Some(l))],
            (true, None) => (0..=n).map(|l| (n, Some(l))).collect(),
        })
        .collect();
    let tallies = keys
        .par_iter()
        .map(|&(n, l)| count_one(args, n, l).map(|count| Tally { n, l, count }))
        .collect::<anyhow::Result<Vec<_>>>()?;

    let mut table = Table::new(if graded { &["n", "l", "count"] } else { &["n", "count"] });
    let mut records = Vec::new();
    for t in &tallies {
        let mut rec = json!({ "class": class, "n": t.n, "count": t.count });
        let mut row = vec![t.n.to_string()];
        if let Some(l) = t.l {
            rec["l"] = json!(l);
            row.push(l.to_string());
        }
        row.push(t.count.to_string());
        records.push(rec.to_string());
        table.push(row);
    }
    match (fmt, tallies.as_slice()) {
        (Format::Table, [one]) => emit(&format!("{}\n", one.count))?,
        _ => output(fmt, &table, records)?,
    }
    Ok(true)
}

pub fn crosscheck(fmt: Format, args: &CrosscheckArgs) -> anyhow::Result<bool> {
    let all = theorems();
    let selected: Vec<&str> = if args.theorem == "all" {
        all.iter().map(|t| t.name).collect()
    } else {
        let t = all
            .iter()
            .find(|t| t.name == args.theorem)
            .ok_or_else(|| anyhow!("unknown theorem {:?} (see `qrsl list`)", args.theorem))?;
        vec![t.name]
    };
    let v = variant(args.as_stated);
    let reports = selected
        .par_iter()
        .map(|name| run_crosscheck(name, args.n_max, v))
        .collect::<Result<Vec<CrosscheckReport>, _>>()?;

    match fmt {
        Format::Jsonl => emit(&reports.iter().map(|r| r.to_json_line() + "\n").collect::<String>())?,
        Format::Csv => {
            let mut table = Table::new(&[
                "theorem",
                "variant",
                "shift",
                "n",
                "l",
                "lhs_count",
                "rhs_count",
                "sum_coeff",
                "product_coeff",
                "agrees",
            ]);
            for r in &reports {
                let shift = all.iter().find(|t| t.name == r.theorem).map_or(0, |t| t.shift());
                for row in &r.rows {
                    table.push(vec![
                        r.theorem.clone(),
                        variant_name(r.variant).into(),
                        shift.to_string(),
                        row.n.to_string(),
                        opt(row.l),
                        row.lhs_count.to_string(),
                        opt(row.rhs_count),
                        row.sum_coeff.to_string(),
                        row.product_coeff.to_string(),
                        if row.agrees() { "yes" } else { "no" }.into(),
                    ]);
                }
            }
            emit(&table.csv()?)?;
        }
        Format::Table => {
            let mut out = String::new();
            for r in &reports {
                let shift = all.iter().find(|t| t.name == r.theorem).map_or(0, |t| t.shift());
                let status = if r.passed() { "pass" } else { "FAIL" };
                out.push_str(&format!("{} ({}, n <= {}): {status}\n", r.theorem, variant_name(r.variant), r.n_max));
                if shift > 0 {
                    out.push_str(&format!("shift d={shift}: row n counts signed partitions of n+{shift}\n"));
                }
                let mut table =
                    Table::new(&["n", "l", "lhs_count", "rhs_count", "sum_coeff", "product_coeff", "agrees"]);
                for row in &r.rows {
                    table.push(vec![
                        row.n.to_string(),
                        opt(row.l),
                        row.lhs_count.to_string(),
                        opt(row.rhs_count),
                        row.sum_coeff.to_string(),
                        row.product_coeff.to_string(),
                        if row.agrees() { "yes" } else { "no" }.into(),
                    ]);
                }
                out.push_str(&table.text());
                out.push('\n');
            }
            let passed = reports.iter().filter(|r| r.passed()).count();
            out.push_str(&format!("{passed}/{} passed\n", reports.len()));
            emit(&out)?;
        }
    }
    Ok(reports.iter().all(CrosscheckReport::passed))
}
