use std::sync::Arc;

use cyclotome_core::chain::{degenerate_flags, normalized_chains, HomologyTable, Ring, SimplicialData};
use cyclotome_core::cyclic::{fixed_points, subdivide, CyclicNerve, TruncatedCyclicSet};
use cyclotome_core::hochschild::{
    adams_checks, dual_hh_with_cap, hc_with_cap, hh_with_cap, hodge_classes, hodge_data, simplicial_bound, sphere_model, HHRange, HHTable,
    HochschildComplex,
};
use cyclotome_core::lambda::{enumerate, hom_count, Morphism, MorphismKind};
use serde_json::{json, Value};

use crate::args::{Command, EnumArgs, HcArgs, HhArgs, Kind, LambdaCommand, NerveArgs, Parity, RealizeArgs, SphereArgs, SubdivideArgs, VerifyArgs};
use crate::error::{CliError, CliResult};
use crate::input::InputFile;
use crate::report::{Output, Status, Table};
use crate::sphere::{expected_rank, odd_sphere_dictionary};
use crate::suites;

pub fn name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Lambda(LambdaCommand::Enum(_)) => "lambda enum",
        Command::Realize(_) => "realize",
        Command::Nerve(_) => "nerve",
        Command::Subdivide(_) => "subdivide",
        Command::Hh(_) => "hh",
        Command::Hc(_) => "hc",
        Command::Sphere(_) => "sphere",
        Command::Verify(_) => "verify",
    }
}

pub fn parameters(cmd: &Command) -> Value {
    let v = match cmd {
        Command::Lambda(LambdaCommand::Enum(a)) => serde_json::to_value(a),
        Command::Realize(a) => serde_json::to_value(a),
        Command::Nerve(a) => serde_json::to_value(a),
        Command::Subdivide(a) => serde_json::to_value(a),
        Command::Hh(a) => serde_json::to_value(a),
        Command::Hc(a) => serde_json::to_value(a),
        Command::Sphere(a) => serde_json::to_value(a),
        Command::Verify(a) => serde_json::to_value(a),
    };
    v.expect("arguments serialize")
}

/// Reads every input file named on the command line.
pub fn inputs(cmd: &Command) -> CliResult<Vec<InputFile>> {
    Ok(match cmd {
        Command::Realize(a) => vec![InputFile::read("input", &a.input)?],
        Command::Subdivide(a) => vec![InputFile::read("input", &a.input)?],
        Command::Nerve(a) => match (&a.monoid, &a.category) {
            (Some(p), _) => vec![InputFile::read("monoid", p)?],
            (_, Some(p)) => vec![InputFile::read("category", p)?],
            _ => return Err(CliError::Input("nerve needs --monoid or --category".into())),
        },
        Command::Hh(a) => vec![InputFile::read("algebra", &a.algebra)?],
        Command::Hc(a) => vec![InputFile::read("algebra", &a.algebra)?],
        _ => Vec::new(),
    })
}

pub fn execute(cmd: &Command, files: &[InputFile], cap: u128) -> CliResult<Output> {
    match cmd {
        Command::Lambda(LambdaCommand::Enum(a)) => lambda_enum(a, cap),
        Command::Realize(a) => realize(a, &files[0], cap),
        Command::Nerve(a) => nerve(a, &files[0], cap),
        Command::Subdivide(a) => subdivide_cmd(a, &files[0], cap),
        Command::Hh(a) => hh_cmd(a, &files[0], cap),
        Command::Hc(a) => hc_cmd(a, &files[0], cap),
        Command::Sphere(a) => sphere(a),
        Command::Verify(a) => verify(a),
    }
}

fn to_u64(x: u128) -> Value {
    u64::try_from(x).map(Value::from).unwrap_or_else(|_| Value::from(x.to_string()))
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn lambda_enum(a: &EnumArgs, cap: u128) -> CliResult<Output> {
    let kind = match (a.kind, a.r) {
        (Kind::Delta, None) => MorphismKind::Delta,
        (Kind::Lambda, None) => MorphismKind::Lambda,
        (Kind::Rcyclic, Some(r)) if r >= 1 => MorphismKind::RCyclic(r),
        (Kind::Rcyclic, _) => return Err(CliError::Input("--kind rcyclic needs --r R with R >= 1".into())),
        (_, Some(_)) => return Err(CliError::Input("--r applies only to --kind rcyclic".into())),
    };
    let all = enumerate(kind, a.m, a.n, cap)?;
    let expected = hom_count(kind, a.m, a.n);
    let mut table = Table::new(&format!("{kind}([{}], [{}])", a.m, a.n), &["index", "values", "normal_form"]);
    let mut rows = Vec::new();
    for (i, f) in all.iter().enumerate() {
        let form = match f {
            Morphism::Lambda(g) => format!("rot={} delta=[{}]", g.rot(), join(g.delta().values())),
            Morphism::RCyclic(g) => format!("quotient=[{}]", join(&g.quotient().values())),
            Morphism::Delta(_) => String::new(),
        };
        table.push(vec![i.to_string(), join(&f.sample()), form]);
        rows.push(json!({ "index": i, "values": f.sample(), "morphism": f }));
    }
    let ok = all.len() as u128 == expected;
    let result = json!({
        "kind": kind.to_string(),
        "m": a.m,
        "n": a.n,
        "count": all.len(),
        "expected_count": to_u64(expected),
        "morphisms": rows,
    });
    Ok(Output::new(if ok { Status::Ok } else { Status::Fail }, result, vec![table]))
}

fn homology_table(title: &str, h: &HomologyTable) -> Table {
    let mut t = Table::new(title, &["degree", "rank", "torsion"]);
    for e in &h.entries {
        t.push(vec![e.degree.to_string(), e.rank.to_string(), join(&e.torsion)]);
    }
    t
}

fn level_summary(x: &TruncatedCyclicSet, max_level: usize) -> CliResult<(Value, Table)> {
    let mut t = Table::new("levels", &["level", "size", "nondegenerate"]);
    let mut rows = Vec::new();
    for n in 0..=max_level {
        let size = x.size(n)?;
        let nondegenerate = degenerate_flags(x, n)?.iter().filter(|d| !**d).count();
        t.push(vec![n.to_string(), size.to_string(), nondegenerate.to_string()]);
        rows.push(json!({ "level": n, "size": size, "nondegenerate": nondegenerate }));
    }
    Ok((Value::from(rows), t))
}

fn cyclic_set_report(x: &TruncatedCyclicSet, max_level: usize, ring: &str, homology: bool) -> CliResult<Output> {
    let ring: Ring = ring.parse()?;
    let (levels, level_table) = level_summary(x, max_level)?;
    let chains = normalized_chains(x, ring, max_level)?;
    let chi = chains.euler_characteristic();
    let mut result = json!({
        "name": x.name(),
        "max_level": max_level,
        "dimension_bound": x.dimension_bound(),
        "x_minus_one": x.x_minus_one()?.len(),
        "euler_characteristic": chi,
        "levels": levels,
    });
    let mut tables = vec![level_table];
    if homology {
        let h = chains.homology_in_window()?;
        tables.push(homology_table(&format!("homology over {ring}"), &h));
        result["homology"] = serde_json::to_value(&h).expect("tables serialize");
    }
    Ok(Output::new(Status::Ok, result, tables))
}

fn realize(a: &RealizeArgs, file: &InputFile, cap: u128) -> CliResult<Output> {
    let x = file.cyclic_set(a.max_level, cap)?;
    cyclic_set_report(&x, a.max_level, &a.ring, a.homology)
}

fn nerve(a: &NerveArgs, file: &InputFile, cap: u128) -> CliResult<Output> {
    let category = if a.monoid.is_some() { file.monoid()?.to_category() } else { file.category()? };
    let summary = json!({ "objects": category.objects.len(), "arrows": category.arrow_count() });
    let x = TruncatedCyclicSet::from_model(CyclicNerve::new(category)?.with_cap(cap), a.max_level)?;
    let mut out = cyclic_set_report(&x, a.max_level, &a.ring, a.homology)?;
    out.result["category"] = summary;
    Ok(out)
}

fn subdivide_cmd(a: &SubdivideArgs, file: &InputFile, cap: u128) -> CliResult<Output> {
    if a.homology && a.max_level == 0 {
        return Err(CliError::Input("--homology needs --max-level >= 1".into()));
    }
    let ring: Ring = a.ring.parse()?;
    let x: Arc<TruncatedCyclicSet> = file.cyclic_set(a.max_level, cap)?;
    let y = subdivide(&x, a.r, a.max_level)?;
    let fixed = if a.fixed_points { Some(fixed_points(&y)?) } else { None };
    let mut t = Table::new(&format!("sd_{} levels", a.r), &["level", "base_level", "size", "fixed"]);
    let mut rows = Vec::new();
    for k in 0..=a.max_level {
        let size = y.level_size(k)?;
        let f = fixed.as_ref().map(|f| f.size(k)).transpose()?;
        t.push(vec![k.to_string(), (a.r * (k + 1) - 1).to_string(), size.to_string(), f.map(|v| v.to_string()).unwrap_or_default()]);
        rows.push(json!({ "level": k, "base_level": a.r * (k + 1) - 1, "size": size, "fixed": f }));
    }
    let mut result = json!({ "name": x.name(), "r": a.r, "max_level": a.max_level, "levels": rows });
    let mut tables = vec![t];
    let mut status = Status::Ok;
    if a.homology {
        let degrees = 0..a.max_level as isize;
        let base = normalized_chains(x.as_ref(), ring, a.max_level)?.homology(degrees.clone())?;
        let sub = normalized_chains(&y, ring, a.max_level)?.homology(degrees.clone())?;
        let invariant = base.entries == sub.entries;
        if !invariant {
            status = Status::Fail;
        }
        tables.push(homology_table(&format!("homology of X over {ring}"), &base));
        tables.push(homology_table(&format!("homology of sd_{} X over {ring}", a.r), &sub));
        result["homology"] = json!({ "base": base, "subdivided": sub, "invariant": invariant });
        if let Some(f) = &fixed {
            let h = normalized_chains(f, ring, a.max_level)?.homology(degrees)?;
            tables.push(homology_table(&format!("homology of the C_{}-fixed points over {ring}", a.r), &h));
            result["homology"]["fixed_points"] = serde_json::to_value(&h).expect("tables serialize");
        }
    }
    Ok(Output::new(status, result, tables))
}

fn parse_range(a: &HhArgs) -> CliResult<HHRange> {
    match (&a.total_degrees, a.simplicial_max) {
        (Some(s), None) => {
            let bad = || CliError::Input(format!("--total-degrees expects A..B, got {s:?}"));
            let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
            let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
            let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
            Ok(HHRange::Total(lo, hi))
        }
        (None, Some(s)) => Ok(HHRange::Simplicial(s)),
        _ => Err(CliError::Input("give exactly one of --total-degrees and --simplicial-max".into())),
    }
}

fn hh_tables(table: &HHTable, label: &str) -> Vec<Table> {
    let mut ranks = Table::new(&format!("{label} by degree"), &["degree", "rank"]);
    for r in &table.ranks {
        ranks.push(vec![r.degree.to_string(), r.rank.to_string()]);
    }
    let mut big = Table::new(&format!("{label} bigraded"), &["simplicial", "internal", "total", "rank"]);
    for e in &table.bigraded {
        big.push(vec![e.simplicial.to_string(), e.internal.to_string(), e.total.to_string(), e.rank.to_string()]);
    }
    vec![ranks, big]
}

fn in_range(range: HHRange, s: usize, total: i64) -> bool {
    match range {
        HHRange::Simplicial(top) => s <= top,
        HHRange::Total(lo, hi) => (lo..=hi).contains(&total),
    }
}

fn hh_cmd(a: &HhArgs, file: &InputFile, cap: u128) -> CliResult<Output> {
    let algebra = file.algebra()?;
    let range = parse_range(a)?;
    let normalized = !a.unnormalized;
    let table = hh_with_cap(&algebra, range, normalized, cap)?;
    let mut tables = hh_tables(&table, "HH");
    let mut result = json!({
        "algebra": {
            "field": algebra.field().to_string(),
            "dim": algebra.dim(),
            "commutative": algebra.is_commutative(),
            "connective_gap": algebra.has_connective_gap(),
        },
        "hh": table,
    });
    let mut ok = true;
    if a.hodge {
        let top = simplicial_bound(range, &algebra)?;
        let cx = HochschildComplex::with_cap(&algebra, top + 1, normalized, cap)?;
        let data = hodge_data(&cx)?;
        let contract = data.check_contract(&cx);
        let classes: Vec<_> =
            hodge_classes(&cx, &data)?.into_iter().filter(|c| in_range(range, c.simplicial, c.total)).collect();
        let ks = if a.adams.is_empty() { vec![2, 3] } else { a.adams.clone() };
        let mut adams = Vec::new();
        for &k in &ks {
            adams.extend(
                adams_checks(&cx, &data, k)?
                    .into_iter()
                    .filter(|c| in_range(range, c.simplicial, c.internal - c.simplicial as i64)),
            );
        }
        let laws = adams.iter().all(|c| c.eigenvalue_law);
        ok &= contract.holds() && laws;
        let mut t = Table::new("Hodge pieces", &["simplicial", "internal", "total", "pieces"]);
        for c in &classes {
            let pieces: Vec<String> = c.pieces.iter().map(|(i, r)| format!("{i}:{r}")).collect();
            t.push(vec![c.simplicial.to_string(), c.internal.to_string(), c.total.to_string(), pieces.join(" ")]);
        }
        let mut at = Table::new("Adams operations", &["k", "simplicial", "internal", "eigenvalues", "law"]);
        for c in &adams {
            let ev: Vec<String> = c.eigenvalues.iter().map(|(v, m)| format!("{v}^{m}")).collect();
            at.push(vec![c.k.to_string(), c.simplicial.to_string(), c.internal.to_string(), ev.join(" "), c.eigenvalue_law.to_string()]);
        }
        tables.push(t);
        tables.push(at);
        result["hodge"] = json!({ "contract": contract, "classes": classes, "adams": adams });
    }
    if a.dual {
        let dual = dual_hh_with_cap(&algebra, range, cap)?;
        let matches = dual.ranks == table.ranks && dual.bigraded == table.bigraded;
        ok &= matches;
        tables.extend(hh_tables(&dual, "dual cohomology"));
        result["dual"] = json!({ "table": dual, "matches_hh": matches });
    }
    Ok(Output::new(if ok { Status::Ok } else { Status::Fail }, result, tables))
}

fn hc_cmd(a: &HcArgs, file: &InputFile, cap: u128) -> CliResult<Output> {
    let algebra = file.algebra()?;
    let h = hc_with_cap(&algebra, a.max_degree, cap)?;
    let t = homology_table("HC", &h);
    Ok(Output::new(Status::Ok, json!({ "hc": h }), vec![t]))
}

fn sphere(a: &SphereArgs) -> CliResult<Output> {
    if a.n == 0 {
        return Err(CliError::Input("--n must be at least 1".into()));
    }
    let odd = a.parity == Parity::Odd;
    let algebra = sphere_model(a.n, odd)?;
    if a.emit_algebra {
        let mut out = Output::new(Status::Ok, algebra.to_json(), Vec::new());
        out.raw = true;
        return Ok(out);
    }
    if a.max_degree < 0 {
        return Err(CliError::Input("--max-degree must be non-negative".into()));
    }
    let table = hh_with_cap(&algebra, HHRange::Total(0, a.max_degree), true, cyclotome_core::cyclic::DEFAULT_MAX_CELLS)?;
    let expected: Vec<usize> = (0..=a.max_degree).map(|d| expected_rank(a.n as i64, odd, d)).collect();
    let computed = table.rank_vector();
    let mut ok = computed == expected;
    let mut t = Table::new("ranks by total degree", &["degree", "computed", "expected"]);
    for (d, (c, e)) in computed.iter().zip(&expected).enumerate() {
        t.push(vec![d.to_string(), c.to_string(), e.to_string()]);
    }
    let mut tables = vec![t];
    let sphere_dim = if odd { 2 * a.n + 1 } else { 2 * a.n };
    let mut result = json!({
        "sphere": sphere_dim,
        "generator_degree": sphere_dim,
        "comparison": if odd { "divided power algebra on a class of degree -2n tensor an exterior algebra on a class of degree 2n+1" } else { "rational cohomology of the free loop space of S^{2n}" },
        "computed": computed,
        "expected": expected,
        "matches": computed == expected,
        "hh": table,
    });
    if odd {
        let d = odd_sphere_dictionary(a.n, a.max_degree, &[2, 3])?;
        ok &= d.holds();
        let mut dt = Table::new("Hodge dictionary", &["class", "simplicial", "internal", "total", "piece"]);
        for e in &d.entries {
            dt.push(vec![
                e.class.clone(),
                e.simplicial.to_string(),
                e.internal.to_string(),
                e.total.to_string(),
                e.piece.map(|p| p.to_string()).unwrap_or_default(),
            ]);
        }
        tables.push(dt);
        result["hodge_dictionary"] = serde_json::to_value(&d).expect("dictionary serializes");
    }
    Ok(Output::new(if ok { Status::Pass } else { Status::Fail }, result, tables))
}

fn verify(a: &VerifyArgs) -> CliResult<Output> {
    let report = suites::run(a.suite, a.seed);
    let mut t = Table::new(&format!("suite {}", report.suite), &["id", "status", "anchor"]);
    for c in &report.checks {
        let status = serde_json::to_value(c.status).expect("status serializes");
        t.push(vec![c.id.clone(), status.as_str().unwrap_or_default().to_string(), c.anchor.clone()]);
    }
    let status = report.status;
    Ok(Output::new(status, serde_json::to_value(&report).expect("reports serialize"), vec![t]))
}
