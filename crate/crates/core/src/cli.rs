//! The `traag` command-line front end.
//!
//! Exit codes: `decide` returns 0 when the group embeds and 1 when it does
//! not; `verify-embed` returns 0 when the relators hold and the ball has no
//! kernel element, 1 otherwise. Every command returns 2 on bad input.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::amalgam::{GroupSpec, GroupWord};
use crate::decision::decide;
use crate::embedding::{
    build_assignment, sink_star_graph, verify_injectivity_bounded, verify_relators,
};
use crate::knot_jsj::parse_jsj;
use crate::mixed_graph::{parse_graph, ComponentClass, MixedGraph};
use crate::presentation::{abelianization, traag_presentation};

#[derive(Debug, Parser)]
#[command(
    name = "traag",
    version,
    about = "Twisted right-angled Artin groups in knot groups"
)]
pub struct CliConfig {
    /// Emit stable `key=value` lines instead of prose.
    #[arg(long, global = true)]
    pub machine: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify the connected components of a mixed graph.
    Classify { graph: PathBuf },
    /// Decide whether the TRAAG of a graph embeds into a knot group.
    Decide { graph: PathBuf, jsj: PathBuf },
    /// Normal form of a word in a torus knot or cable space group.
    Nf {
        word: String,
        #[arg(long)]
        group: String,
    },
    /// Check the sink-star embedding: relators exactly, injectivity on a ball.
    VerifyEmbed {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        group: String,
        #[arg(long)]
        bound: usize,
    },
    /// Abelianization of the TRAAG of a graph.
    Abelianize { graph: PathBuf },
}

type CmdResult = Result<u8, String>;

/// Parses `args` (program name first) and runs the command, returning the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match CliConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(&config, out) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = run(args, &mut stdout.lock(), &mut stderr.lock());
    let _ = std::io::stdout().flush();
    code
}

fn execute(config: &CliConfig, out: &mut dyn Write) -> CmdResult {
    let text = match &config.command {
        Command::Classify { graph } => classify(&read_graph(graph)?, config.machine),
        Command::Decide { graph, jsj } => return cmd_decide(graph, jsj, config.machine, out),
        Command::Nf { word, group } => nf(word, group, config.machine)?,
        Command::VerifyEmbed { n, group, bound } => {
            return cmd_verify_embed(*n, group, *bound, config.machine, out)
        }
        Command::Abelianize { graph } => abelianize(&read_graph(graph)?, config.machine),
    };
    out.write_all(text.as_bytes()).map_err(|e| e.to_string())?;
    Ok(0)
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_graph(path: &Path) -> Result<MixedGraph, String> {
    parse_graph(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn classify(g: &MixedGraph, machine: bool) -> String {
    let shape = g.graph_shape();
    let comps = g.connected_components();
    let mut diags = Vec::new();
    for (i, class) in shape.components.iter().enumerate() {
        if *class == ComponentClass::Cyclic {
            diags.push(format!(
                "component #{} is cyclic: the underlying graph must be a forest",
                i + 1
            ));
        }
        if *class == ComponentClass::DirectedOther {
            diags.push(format!(
                "component #{} is directed_other: every component with a directed edge must be a sink star",
                i + 1
            ));
        }
    }
    for t in g.triangles() {
        diags.push(format!(
            "triangle {{{}}} ({}) in the underlying graph: no triangle can embed",
            t.vertices.join(", "),
            t.kind.name()
        ));
    }

    let mut s = String::new();
    if machine {
        let join = |v: Vec<usize>| {
            v.iter()
                .map(|n| n.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        s.push_str(&format!("shape={shape}\n"));
        s.push_str(&format!("components={}\n", shape.component_count()));
        s.push_str(&format!("isolated={}\n", shape.isolated_count()));
        s.push_str(&format!("stars={}\n", join(shape.star_sizes())));
        s.push_str(&format!("sink_stars={}\n", join(shape.sink_star_sizes())));
        s.push_str(&format!("other_trees={}\n", shape.other_tree_count()));
        s.push_str(&format!(
            "directed_others={}\n",
            shape.directed_other_count()
        ));
        s.push_str(&format!("cyclic={}\n", shape.cyclic_count()));
        for (i, (c, class)) in comps.iter().zip(&shape.components).enumerate() {
            s.push_str(&format!(
                "component={} class={class} vertices={}\n",
                i + 1,
                c.labels().join(",")
            ));
        }
        for d in diags {
            s.push_str(&format!("diagnostic={d}\n"));
        }
    } else {
        s.push_str(&format!("{shape}\n"));
        for (i, (c, class)) in comps.iter().zip(&shape.components).enumerate() {
            s.push_str(&format!(
                "  component #{}: {class} [{}]\n",
                i + 1,
                c.labels().join(" ")
            ));
        }
        for d in diags {
            s.push_str(&format!("  note: {d}\n"));
        }
    }
    s
}

fn cmd_decide(graph: &Path, jsj: &Path, machine: bool, out: &mut dyn Write) -> CmdResult {
    let g = read_graph(graph)?;
    let j = parse_jsj(&read(jsj)?).map_err(|e| format!("{}: {e}", jsj.display()))?;
    let v = decide(&g, &j).map_err(|e| e.to_string())?;
    let text = if machine {
        v.to_machine()
    } else {
        let mut s = format!(
            "{} ({})\n",
            if v.embeds { "embeds" } else { "does not embed" },
            v.rule
        );
        for d in &v.diagnostics {
            s.push_str(&format!("  - {d}\n"));
        }
        if v.witness_available {
            s.push_str("  explicit embedding available: see `traag verify-embed`\n");
        }
        s
    };
    out.write_all(text.as_bytes()).map_err(|e| e.to_string())?;
    Ok(if v.embeds { 0 } else { 1 })
}

fn nf(word: &str, group: &str, machine: bool) -> Result<String, String> {
    let spec = GroupSpec::parse(group).map_err(|e| e.to_string())?;
    let w = GroupWord::parse(word, spec).map_err(|e| e.to_string())?;
    let nf = w.normal_form();
    Ok(if machine {
        format!(
            "group={spec}\ncentral_exp={}\nsyllable_length={}\nnf={nf}\n",
            nf.central_exp,
            nf.syllable_length()
        )
    } else {
        format!("{nf}\n")
    })
}

fn cmd_verify_embed(
    n: usize,
    group: &str,
    bound: usize,
    machine: bool,
    out: &mut dyn Write,
) -> CmdResult {
    let spec = GroupSpec::parse(group).map_err(|e| e.to_string())?;
    let asg = build_assignment(n, spec).map_err(|e| e.to_string())?;
    let relators_ok = verify_relators(&asg, &sink_star_graph(n)).map_err(|e| e.to_string())?;
    let mut s = String::new();
    if machine {
        s.push_str(&format!("group={spec}\nn={n}\nbound={bound}\n"));
        s.push_str(&format!(
            "relators={}\n",
            if relators_ok { "pass" } else { "fail" }
        ));
    } else {
        s.push_str(&format!("sink star with {n} leaves into {spec}\n"));
        for (label, img) in &asg.images {
            s.push_str(&format!("  {label} -> {img}\n"));
        }
        s.push_str(&format!(
            "relators: {}\n",
            if relators_ok {
                "all map to the identity"
            } else {
                "NOT preserved"
            }
        ));
    }
    let mut code = if relators_ok { 0 } else { 1 };
    if relators_ok {
        let report = verify_injectivity_bounded(&asg, n, bound).map_err(|e| e.to_string())?;
        if !report.is_injective_on_ball() {
            code = 1;
        }
        if !machine {
            s.push_str(&format!("ball of radius {bound}: "));
        }
        s.push_str(&report.to_text());
    }
    out.write_all(s.as_bytes()).map_err(|e| e.to_string())?;
    Ok(code)
}

fn abelianize(g: &MixedGraph, machine: bool) -> String {
    let inv = abelianization(&traag_presentation(g));
    if machine {
        let torsion: Vec<String> = inv.torsion.iter().map(|t| t.to_string()).collect();
        format!(
            "free_rank={}\ntorsion={}\ngroup={inv}\n",
            inv.free_rank,
            torsion.join(",")
        )
    } else {
        format!("{inv}\n")
    }
}
