//! One runner per subcommand. Each returns `Ok(true)` for success or a yes
//! verdict and `Ok(false)` for a no verdict or a failure result.

use crate::artifact::{emit, text_with_header, write_atomic, write_text, RunConfig};
use crate::*;
use clap::ValueEnum;
use serde::Serialize;
use std::path::Path;
use tricolor::biphost::{
    construct_host, decompose_bn, enlarge, extract, verify_host_copy, BnDecomposition, BnResult,
    ExtractConfig, ExtractOutcome, ExtractReport,
};
use tricolor::coloring::random_color;
use tricolor::embed::{
    check_counting_bound, count_system_copies, describe_bound, greedy_embed, EmbedOutcome,
    SystemInstance,
};
use tricolor::randmod::{
    check_concentration, check_property_p, gen_gnp, CheckMode, ConcentrationConfig, ImplicitGnp,
    PropertyPConfig, Verdict,
};
use tricolor::rational::{fmt_q, parse_q};
use tricolor::regularize::{
    density_increment, verify_certificate, CertificateCheck, DenseCertificate, ScanMode,
};
use tricolor::schedule::Relation;
use tricolor::steps::{mono_triangle_clique, CliqueOutcome};
use tricolor::treeembed::{
    image_triangles, tight_path_graph, tree_pipeline, ColoringSource, PipelineConfig,
    TreeEmbedOutcome, TreePipelineReport,
};
use tricolor::triples::TightTreeOrder;
use tricolor::verify::{arrow_check, ramsey_delta_number, ArrowMode, Holds, RamseyConfig};
use tricolor::{
    partite_density, triangles, Color, Error, Graph, ParameterSchedule, PartiteFamily, Result,
    TriangleColoring, Triple, TripleSystem,
};

pub fn run(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Gen(a) => gen(a),
        Command::Triangles(a) => triangles_cmd(a),
        Command::CheckLinear(a) => check_linear(a),
        Command::CheckTree(a) => check_tree(a),
        Command::Arrow(a) => arrow(a),
        Command::MonoClique(a) => mono_clique(a),
        Command::Regularize(a) => regularize(a),
        Command::Embed(a) => embed(a),
        Command::EmbedTree(a) => embed_tree(a),
        Command::HostBuild(a) => host_build(a),
        Command::HostExtract(a) => host_extract(a),
        Command::PropertyP(a) => property_p(a),
        Command::Count(a) => count(a),
        Command::Schedule(a) => schedule(a),
    }
}

fn name<T: ValueEnum>(v: &T) -> String {
    v.to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string()
}

fn read_graph(cfg: &mut RunConfig, role: &'static str, path: &Path) -> Result<Graph> {
    Graph::parse(&cfg.read(role, path)?)
}

fn gen(a: GenArgs) -> Result<bool> {
    let mut cfg = RunConfig::new("gen", a.out.as_deref());
    cfg.mode(name(&a.kind)).param("n", a.n);
    let g = match a.kind {
        GraphKind::Gnp => {
            cfg.seed(a.seed).param("p", a.p);
            gen_gnp(a.n, a.p, a.seed)?
        }
        GraphKind::Complete => Graph::complete(a.n),
        GraphKind::Empty => Graph::empty(a.n),
        GraphKind::Path => Graph::path(a.n),
        GraphKind::Cycle => {
            if a.n < 3 {
                return Err(Error::InvalidInput(
                    "a cycle needs at least 3 vertices".into(),
                ));
            }
            Graph::cycle(a.n)
        }
        GraphKind::TightPath => tight_path_graph(a.n),
    };
    write_text(a.out.as_deref(), &text_with_header(&cfg, &g.to_text())?)?;
    eprintln!("graph: {} vertices, {} edges", g.order(), g.edge_count());
    Ok(true)
}

fn triangles_cmd(a: TrianglesArgs) -> Result<bool> {
    let mut cfg = RunConfig::new("triangles", a.out.as_deref());
    let g = read_graph(&mut cfg, "graph", &a.graph)?;
    let k3 = triangles(&g);
    let n = k3.len();
    let body = match a.color {
        None => k3.to_text(),
        Some(c) => {
            cfg.mode(name(&c));
            let chi = match c {
                ColorChoice::Random => {
                    cfg.seed(a.seed).param("p_red", a.p_red);
                    TriangleColoring::random(k3, a.p_red, a.seed)
                }
                ColorChoice::Red => TriangleColoring::constant(k3, Color::Red),
                ColorChoice::Blue => TriangleColoring::constant(k3, Color::Blue),
            };
            chi.to_text()
        }
    };
    write_text(a.out.as_deref(), &text_with_header(&cfg, &body)?)?;
    eprintln!("triangles: {n}");
    Ok(true)
}

fn load_system(cfg: &mut RunConfig, a: &SystemArgs) -> Result<(TripleSystem, Option<Graph>)> {
    match (&a.triples, &a.graph) {
        (Some(p), _) => Ok((TripleSystem::parse(&cfg.read("triples", p)?)?, None)),
        (None, Some(p)) => {
            let g = read_graph(cfg, "graph", p)?;
            Ok((triangles(&g), Some(g)))
        }
        (None, None) => Err(Error::InvalidInput("need --triples or --graph".into())),
    }
}

#[derive(Serialize)]
struct LinearReport {
    order: usize,
    triples: usize,
    linear: bool,
    violation: Option<[Triple; 2]>,
}

fn check_linear(a: SystemArgs) -> Result<bool> {
    let mut cfg = RunConfig::new("check-linear", a.out.as_deref());
    let (sys, _) = load_system(&mut cfg, &a)?;
    let violation = sys.linearity_violation().map(|(s, t)| [s, t]);
    let rep = LinearReport {
        order: sys.order(),
        triples: sys.len(),
        linear: violation.is_none(),
        violation,
    };
    emit(&cfg, &rep)?;
    eprintln!("linear: {}", rep.linear);
    Ok(rep.linear)
}

#[derive(Serialize)]
struct TreeReport {
    order: usize,
    triples: usize,
    tight_tree: bool,
    /// For graph input: the graph is exactly the shadow of its triangles.
    shadow_is_graph: Option<bool>,
    tree_order: Option<TightTreeOrder>,
}

fn check_tree(a: SystemArgs) -> Result<bool> {
    let mut cfg = RunConfig::new("check-tree", a.out.as_deref());
    let (sys, g) = load_system(&mut cfg, &a)?;
    let tree_order = sys.tight_tree_order();
    let rep = TreeReport {
        order: sys.order(),
        triples: sys.len(),
        tight_tree: tree_order.is_some(),
        shadow_is_graph: g.map(|g| sys.shadow() == g),
        tree_order,
    };
    emit(&cfg, &rep)?;
    eprintln!("tight tree: {}", rep.tight_tree);
    Ok(rep.tight_tree)
}

fn arrow(a: ArrowArgs) -> Result<bool> {
    let mut cfg = RunConfig::new("arrow", a.out.as_deref());
    cfg.budget("triangles", a.budget);
    let f = read_graph(&mut cfg, "pattern", &a.pattern)?;
    if let Some(max) = a.ramsey_max {
        cfg.mode("ramsey")
            .seed(a.seed)
            .param("max_order", max)
            .param("random_candidates", a.random_candidates);
        let rc = RamseyConfig {
            triangle_budget: a.budget,
            random_candidates: a.random_candidates,
            seed: a.seed,
        };
        let rep = ramsey_delta_number(&f, max, &rc)?;
        emit(&cfg, &rep)?;
        match rep.value {
            Some(v) => eprintln!("smallest host order: {v} (exact: {})", rep.exact),
            None => eprintln!("no host found up to order {max}"),
        }
        return Ok(rep.value.is_some());
    }
    let host = a
        .host
        .as_deref()
        .ok_or_else(|| Error::InvalidInput("need --host or --ramsey-max".into()))?;
    let g = read_graph(&mut cfg, "host", host)?;
    cfg.mode(name(&a.mode)).param("witnesses", a.witnesses);
    let mode = match a.mode {
        ArrowModeArg::Exhaustive => ArrowMode::Exhaustive { budget: a.budget },
        ArrowModeArg::Adversarial => {
            cfg.seed(a.seed)
                .param("restarts", a.restarts)
                .param("steps", a.steps);
            ArrowMode::Adversarial {
                restarts: a.restarts,
                steps: a.steps,
                seed: a.seed,
            }
        }
    };
    let v = arrow_check(&g, &f, mode, a.witnesses)?;
    if let (Some(path), Some(chi)) = (&a.refutation, &v.refutation) {
        write_atomic(path, &text_with_header(&cfg, &chi.to_text())?)?;
    }
    emit(&cfg, &v)?;
    eprintln!(
        "verdict: {}{}",
        match v.holds {
            Holds::Yes => "yes",
            Holds::No => "no",
            Holds::Unknown => "unknown",
        },
        if v.vacuous_triangle_condition {
            " (vacuous triangle condition)"
        } else {
            ""
        }
    );
    Ok(v.holds == Holds::Yes)
}

fn mono_clique(a: MonoCliqueArgs) -> Result<bool> {
    let mut cfg = RunConfig::new("mono-clique", a.out.as_deref());
    cfg.param("n", a.n).param("ell", a.ell);
    let h = read_graph(&mut cfg, "host", &a.host)?;
    let k3 = triangles(&h);
    let chi = match &a.coloring {
        Some(p) => TriangleColoring::parse_for(&cfg.read("coloring", p)?, &k3)?,
        None => {
            cfg.seed(a.seed).param("p_red", a.p_red);
            TriangleColoring::random(k3, a.p_red, a.seed)
        }
    };
    let out = mono_triangle_clique(&h, &chi, a.n, a.ell)?;
    emit(&cfg, &out)?;
    match &out {
        CliqueOutcome::Found(w) => eprintln!("found {:?} {:?}", w.color, w.vertices),
        CliqueOutcome::SelectFailed { step, .. } => eprintln!("selection failed at step {step}"),
        CliqueOutcome::BaseRamseyMiss { .. } => eprintln!("no monochromatic base clique"),
    }
    Ok(matches!(out, CliqueOutcome::Found(ref w) if w.verified))
}

#[derive(Serialize)]
struct RegularizeReport {
    observed_density: String,
    certificate: DenseCertificate,
    check: CertificateCheck,
}

fn regularize(a: RegularizeArgs) -> Result<bool> {
    let mut cfg = RunConfig::new("regularize", a.out.as_deref());
    cfg.budget("subsets", a.budget)
        .mode(name(&a.mode))
        .param("epsilon", &a.epsilon)
        .param("d", &a.d);
    let fam: PartiteFamily = match &a.family {
        Some(p) => serde_json::from_str(&cfg.read("family", p)?)?,
        None => {
            cfg.seed(a.seed)
                .param("parts", a.parts)
                .param("block_size", a.block_size)
                .param("p", a.p);
            PartiteFamily::random(a.parts, a.block_size, a.p, a.seed)?
        }
    };
    let blocks = fam.blocks().to_vec();
    let observed = partite_density(&fam, &blocks)?;
    let eps = parse_q(&a.epsilon)?;
    let d = match &a.d {
        Some(s) => parse_q(s)?,
        None => observed,
    };
    if d.numer() == &0 {
        return Err(Error::Precondition("the family has no edges".into()));
    }
    let mode = match a.mode {
        ScanModeArg::Exhaustive => ScanMode::Exhaustive { budget: a.budget },
        ScanModeArg::Heuristic => {
            cfg.seed(a.seed).param("restarts", a.restarts);
            ScanMode::Heuristic {
                restarts: a.restarts,
                seed: a.seed,
            }
        }
    };
    let certificate = density_increment(&fam, &blocks, &eps, &d, mode)?;
    let check = verify_certificate(&certificate, a.budget)?;
    let ok = check.ok();
    eprintln!(
        "{} steps, final density {}, re-check {}",
        certificate.steps,
        fmt_q(&certificate.final_density),
        if ok { "passed" } else { "failed" }
    );
    emit(
        &cfg,
        &RegularizeReport {
            observed_density: fmt_q(&observed),
            certificate,
            check,
        },
    )?;
    Ok(ok)
}

fn load_instance(cfg: &mut RunConfig, a: &InstanceArgs) -> Result<SystemInstance> {
    if let Some(p) = &a.instance {
        return Ok(serde_json::from_str(&cfg.read("instance", p)?)?);
    }
    let pattern = a
        .pattern
        .as_deref()
        .ok_or_else(|| Error::InvalidInput("need --instance or --pattern".into()))?;
    let f = read_graph(cfg, "pattern", pattern)?;
    let t = match &a.system {
        Some(p) => TripleSystem::parse(&cfg.read("system", p)?)?,
        None => triangles(&f),
    };
    cfg.seed(a.seed)
        .param("block_size", a.block_size)
        .param("p_edge", a.p_edge)
        .param("p_triple", a.p_triple);
    let inst = SystemInstance::random(f, t, a.block_size, a.p_edge, a.p_triple, a.seed)?;
    if let Some(p) = &a.save_instance {
        write_atomic(p, &(serde_json::to_string_pretty(&inst)? + "\n"))?;
    }
    Ok(inst)
}

fn parse_opt(s: &Option<String>) -> Result<Option<tricolor::Q>> {
    s.as_deref().map(parse_q).transpose()
}

fn embed(a: EmbedArgs) -> Result<bool> {
    let mut cfg = RunConfig::new("embed", a.out.as_deref());
    cfg.param("epsilon", &a.epsilon).param("d", &a.d);
    let inst = load_instance(&mut cfg, &a.instance)?;
    let (eps, d) = (parse_opt(&a.epsilon)?, parse_opt(&a.d)?);
    let out = greedy_embed(&inst, eps.as_ref(), d.as_ref())?;
    emit(&cfg, &out)?;
    let found = matches!(out, EmbedOutcome::Found { .. });
    eprintln!("embedding {}", if found { "found" } else { "not found" });
    Ok(found)
}

#[derive(Serialize)]
struct CopyCount {
    copies: u128,
}

fn count(a: CountArgs) -> Result<bool> {
    let mut cfg = RunConfig::new("count", a.out.as_deref());
    cfg.budget("transversals", a.budget)
        .param("epsilon", &a.epsilon)
        .param("d", &a.d);
    let inst = load_instance(&mut cfg, &a.instance)?;
    match (parse_opt(&a.epsilon)?, parse_opt(&a.d)?) {
        (Some(eps), Some(d)) => {
            let rep = check_counting_bound(&inst, &eps, &d, a.budget)?;
            emit(&cfg, &rep)?;
            eprintln!(
                "{} (hypotheses hold: {})",
                describe_bound(&rep),
                rep.hypotheses_hold
            );
            Ok(!rep.hypotheses_hold || rep.count_meets_bound)
        }
        _ => {
            let copies = count_system_copies(&inst, a.budget)?;
            emit(&cfg, &CopyCount { copies })?;
            eprintln!("copies: {copies}");
            Ok(true)
        }
    }
}

#[derive(Serialize)]
struct EmbedTreeReport {
    pipeline: TreePipelineReport,
    image_triangles: Option<Vec<Triple>>,
}

fn embed_tree(a: EmbedTreeArgs) -> Result<bool> {
    let mut cfg = RunConfig::new("embed-tree", a.out.as_deref());
    cfg.seed(a.seed)
        .param("n", a.n)
        .param("order", a.order)
        .param("p", a.p)
        .param("samples", a.samples);
    let mut pc = PipelineConfig::new(a.n, a.seed);
    pc.order = a.order;
    pc.p = a.p;
    pc.hypothesis_samples = a.samples;
    pc.coloring = match &a.coloring {
        Some(path) => {
            let g = gen_gnp(pc.order(), pc.p(), a.seed)?;
            let chi = TriangleColoring::parse_for(&cfg.read("coloring", path)?, &triangles(&g))?;
            ColoringSource::Given {
                coloring: Some(chi),
            }
        }
        None => {
            cfg.param("p_red", a.p_red);
            ColoringSource::Random { red: a.p_red }
        }
    };
    let pipeline = tree_pipeline(&pc)?;
    let image = match &pipeline.outcome {
        Some(TreeEmbedOutcome::Found { witness }) => {
            Some(image_triangles(&tight_path_graph(a.n), witness))
        }
        _ => None,
    };
    let found = image.is_some();
    match &pipeline.outcome {
        Some(TreeEmbedOutcome::Found { witness }) => eprintln!("embedded at {:?}", witness.map),
        Some(TreeEmbedOutcome::Failed { step, .. }) => eprintln!("failed at step {step}"),
        None => eprintln!("degenerate host: nothing to embed into"),
    }
    emit(
        &cfg,
        &EmbedTreeReport {
            pipeline,
            image_triangles: image,
        },
    )?;
    Ok(found)
}

#[derive(Serialize)]
struct Materialized {
    vertices: usize,
    edges: usize,
    vertices_match: bool,
    edges_match: bool,
}

#[derive(Serialize)]
struct HostBuildReport {
    m: usize,
    block_size: usize,
    tuple_count: usize,
    vertex_count: usize,
    e1_count: u128,
    e2_count: u128,
    edge_count: u128,
    materialized: Option<Materialized>,
}

fn host_build(a: HostBuildArgs) -> Result<bool> {
    let mut cfg = RunConfig::new("host-build", a.out.as_deref());
    cfg.param("block_size", a.block_size)
        .budget("vertices", a.max_vertices);
    let base = read_graph(&mut cfg, "base", &a.base)?;
    let host = construct_host(&base, a.block_size)?;
    let (m, n) = (host.m() as u128, a.block_size as u128);
    let materialized = if a.graph_out.is_some() || host.vertex_count() <= a.max_vertices {
        let g = host.materialize(a.max_vertices)?;
        if let Some(p) = &a.graph_out {
            write_atomic(p, &text_with_header(&cfg, &g.to_text())?)?;
        }
        Some(Materialized {
            vertices: g.order(),
            edges: g.edge_count(),
            vertices_match: g.order() as u128 == m * n + n.pow(m as u32),
            edges_match: g.edge_count() as u128
                == base.edge_count() as u128 * n * n + m * n.pow(m as u32),
        })
    } else {
        None
    };
    let ok = materialized
        .as_ref()
        .is_none_or(|x| x.vertices_match && x.edges_match);
    let rep = HostBuildReport {
        m: host.m(),
        block_size: host.block_size(),
        tuple_count: host.tuple_count(),
        vertex_count: host.vertex_count(),
        e1_count: host.e1_count(),
        e2_count: host.e2_count(),
        edge_count: host.edge_count(),
        materialized,
    };
    emit(&cfg, &rep)?;
    eprintln!(
        "host: {} vertices, {} edges",
        rep.vertex_count, rep.edge_count
    );
    Ok(ok)
}

#[derive(Serialize)]
struct HostExtractReport {
    decomposition: BnResult,
    extraction: ExtractReport,
    /// Independent re-check of a returned copy.
    verified: Option<bool>,
}

type Lookup = Box<dyn Fn(&Triple) -> Option<Color> + Sync>;

fn host_extract(a: HostExtractArgs) -> Result<bool> {
    let mut cfg = RunConfig::new("host-extract", a.out.as_deref());
    cfg.seed(a.seed)
        .param("block_size", a.block_size)
        .budget("tuples", a.tuple_budget)
        .budget("samples", a.samples)
        .budget("blowup", a.blowup_budget);
    let base = read_graph(&mut cfg, "base", &a.base)?;
    let f = read_graph(&mut cfg, "pattern", &a.pattern)?;
    let host = construct_host(&base, a.block_size)?;
    let decomposition = match (&a.a, &a.b) {
        (Some(av), Some(bv)) => {
            cfg.param("a", av).param("b", bv);
            enlarge(&f, &BnDecomposition::new(&f, av.clone(), bv.clone())?)?
        }
        _ => {
            cfg.budget("decompose", a.decompose_budget);
            decompose_bn(&f, a.decompose_budget)?.ok_or_else(|| {
                Error::Precondition(
                    "pattern does not split into a triangle-free part and an independent part"
                        .into(),
                )
            })?
        }
    };
    let lookup: Lookup = match (&a.coloring, a.constant) {
        (Some(p), _) => {
            cfg.mode("given");
            let g = host.materialize(usize::MAX)?;
            let chi = TriangleColoring::parse_for(&cfg.read("coloring", p)?, &triangles(&g))?;
            Box::new(move |t: &Triple| chi.color_of(t))
        }
        (None, Some(c)) => {
            cfg.mode(format!("constant-{}", name(&c)));
            let c = match c {
                ConstantColor::Red => Color::Red,
                ConstantColor::Blue => Color::Blue,
            };
            Box::new(move |_: &Triple| Some(c))
        }
        (None, None) => {
            cfg.mode("random").param("p_red", a.p_red);
            let (seed, p) = (a.seed, a.p_red);
            Box::new(move |t: &Triple| Some(random_color(seed, p, t)))
        }
    };
    let ecfg = ExtractConfig {
        tuple_budget: a.tuple_budget,
        samples: a.samples,
        seed: a.seed,
        blowup_budget: a.blowup_budget,
    };
    let f_used = &decomposition.graph;
    let report = extract(&host, &*lookup, f_used, &decomposition.decomposition, &ecfg)?;
    let verified = match &report.outcome {
        ExtractOutcome::Success { witness, .. } => {
            Some(verify_host_copy(&host, &*lookup, f_used, &witness.map).is_some())
        }
        ExtractOutcome::Failure { .. } => None,
    };
    match &report.outcome {
        ExtractOutcome::Success { witness, .. } => eprintln!("copy at {:?}", witness.map),
        ExtractOutcome::Failure { stage, detail } => eprintln!("failed at {stage:?}: {detail}"),
    }
    let ok = verified == Some(true);
    emit(
        &cfg,
        &HostExtractReport {
            decomposition,
            extraction: report,
            verified,
        },
    )?;
    Ok(ok)
}

fn property_p(a: PropertyPArgs) -> Result<bool> {
    let mut cfg = RunConfig::new("property-p", a.out.as_deref());
    let mode = match a.mode {
        CheckModeArg::Exhaustive => CheckMode::Exhaustive,
        CheckModeArg::Sampled => CheckMode::Sampled,
    };
    cfg.seed(a.seed)
        .mode(name(&a.mode))
        .param("samples", a.samples)
        .budget("pairs", a.budget);
    let graph = match &a.graph {
        Some(p) => Some(read_graph(&mut cfg, "graph", p)?),
        None => {
            cfg.param("t", a.t).param("p", a.p);
            None
        }
    };
    let t = a.t.unwrap_or(0);
    if a.concentration {
        cfg.param("concentration", true)
            .param("p", a.p)
            .param("epsilon", a.epsilon)
            .param("s_max", a.s_max);
        let g = match graph {
            Some(g) => g,
            None => gen_gnp(t, a.p, a.seed)?,
        };
        let cc = ConcentrationConfig {
            p: a.p,
            epsilon: a.epsilon,
            s_max: a.s_max,
            mode,
            samples: a.samples,
            seed: a.seed,
        };
        let rep = check_concentration(&g, &cc)?;
        emit(&cfg, &rep)?;
        eprintln!(
            "event A failures {}/{}, event B failures {}/{}",
            rep.event_a.failures, rep.event_a.checked, rep.event_b.failures, rep.event_b.checked
        );
        return Ok(rep.event_a.pass && rep.event_b.pass);
    }
    let pc = PropertyPConfig {
        mode,
        samples: a.samples,
        budget: a.budget,
        seed: a.seed,
    };
    let rep = match graph {
        Some(g) => check_property_p(&g, &pc)?,
        None => check_property_p(&ImplicitGnp::new(t, a.p, a.seed)?, &pc)?,
    };
    emit(&cfg, &rep)?;
    eprintln!(
        "passed {}/{} ({:.4}){}",
        rep.passed,
        rep.samples,
        rep.pass_rate,
        if rep.statistical { ", statistical" } else { "" }
    );
    Ok(rep.verdict == Verdict::Pass)
}

#[derive(Serialize)]
struct ScheduleReport {
    schedule: ParameterSchedule,
    prefix_length: Option<u128>,
    relations: Vec<Relation>,
}

fn schedule(a: ScheduleArgs) -> Result<bool> {
    let mut cfg = RunConfig::new("schedule", a.out.as_deref());
    cfg.param("n", a.n);
    let s = ParameterSchedule::new(a.n)?;
    println!("log2 log2 log2 N = {}", s.log3_n());
    println!("log2 log2 m = {}", s.log2_log2_m());
    println!("log2 log2 (1/eps) = {}", s.log_inv_eps.top);
    println!("log2 log2 (1/d) = {}", s.log_inv_d.top);
    if let Some(l) = s.prefix_length() {
        println!("prefix length = {l}");
    }
    let relations = s.relations();
    for r in &relations {
        println!("{}: {}", r.name, if r.holds { "holds" } else { "fails" });
    }
    if a.out.is_some() {
        emit(
            &cfg,
            &ScheduleReport {
                prefix_length: s.prefix_length(),
                schedule: s,
                relations,
            },
        )?;
    }
    Ok(true)
}
