//! The embeddability decision: given the component shape of a mixed graph and
//! the case of a knot exterior, does the TRAAG embed into the knot group?
//!
//! Graphs without directed edges are ordinary RAAGs and go through
//! [`decide_raag`]; the rest go through [`decide_traag`]. Both are total over
//! their inputs and name the classification item that produced the answer.

use std::fmt;

use thiserror::Error;

use crate::knot_jsj::{JsjError, KnotCase, KnotJsj, Piece};
use crate::mixed_graph::{ComponentClass, GraphShape, MixedGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecisionError {
    #[error("graph has directed edges; use the TRAAG decision")]
    HasDirectedEdges,
    #[error("graph has no directed edges; use the RAAG decision")]
    NoDirectedEdges,
    #[error(transparent)]
    Jsj(#[from] JsjError),
}

/// Which classification item fired. The tag strings are stable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    TrivialGroup,
    Unknot,
    /// RAAG items 1 to 4.
    Raag(u8),
    /// TRAAG items 1 to 4.
    Traag(u8),
}

impl Rule {
    pub fn tag(self) -> String {
        match self {
            Rule::TrivialGroup => "TrivialGroup".into(),
            Rule::Unknot => "Unknot".into(),
            Rule::Raag(i) => format!("Thm1.1({i})"),
            Rule::Traag(i) => format!("Thm1.2({i})"),
        }
    }

    fn for_case(kase: KnotCase, directed: bool) -> Rule {
        let item = match kase {
            KnotCase::Unknot => return Rule::Unknot,
            KnotCase::HyperbolicOnly => 1,
            KnotCase::TorusKnot => 2,
            KnotCase::MixedNoSS => 3,
            KnotCase::SSGluing => 4,
        };
        if directed {
            Rule::Traag(item)
        } else {
            Rule::Raag(item)
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub embeds: bool,
    pub rule: Rule,
    pub diagnostics: Vec<String>,
    /// Set when the embedding module can build an explicit embedding.
    pub witness_available: bool,
}

impl Verdict {
    fn new(embeds: bool, rule: Rule, diagnostics: Vec<String>) -> Self {
        Verdict {
            embeds,
            rule,
            diagnostics,
            witness_available: false,
        }
    }

    /// `embeds=<bool> rule=<tag>` followed by one diagnostic per line.
    pub fn to_machine(&self) -> String {
        let mut out = format!("embeds={} rule={}\n", self.embeds, self.rule);
        for d in &self.diagnostics {
            out.push_str(d);
            out.push('\n');
        }
        out
    }
}

fn trivial() -> Verdict {
    Verdict::new(
        true,
        Rule::TrivialGroup,
        vec!["the empty graph gives the trivial group".into()],
    )
}

fn is_directed_class(c: ComponentClass) -> bool {
    matches!(
        c,
        ComponentClass::SinkStar(_) | ComponentClass::DirectedOther
    )
}

fn may_carry_arcs(c: ComponentClass) -> bool {
    is_directed_class(c) || c == ComponentClass::Cyclic
}

/// Lists the components not accepted by `ok`, with a reason.
fn offenders(shape: &GraphShape, ok: impl Fn(ComponentClass) -> bool, why: &str) -> Vec<String> {
    shape
        .components
        .iter()
        .enumerate()
        .filter(|(_, &c)| !ok(c))
        .map(|(i, c)| format!("component #{} is {c}: {why}", i + 1))
        .collect()
}

/// Decision for a graph without directed edges.
pub fn decide_raag(shape: &GraphShape, kase: KnotCase) -> Result<Verdict, DecisionError> {
    if shape.components.iter().any(|&c| is_directed_class(c)) {
        return Err(DecisionError::HasDirectedEdges);
    }
    if shape.is_empty() {
        return Ok(trivial());
    }
    let rule = Rule::for_case(kase, false);
    let mut diags = offenders(
        shape,
        |c| c != ComponentClass::Cyclic,
        "the graph must be a forest",
    );
    if !diags.is_empty() {
        return Ok(Verdict::new(false, rule, diags));
    }
    use ComponentClass::*;
    let embeds = match kase {
        KnotCase::Unknot => {
            let ok = shape.components == [SingleVertex];
            if !ok {
                diags.push(
                    "the unknot group is infinite cyclic: only a single vertex embeds".into(),
                );
            }
            ok
        }
        KnotCase::HyperbolicOnly => {
            diags = offenders(
                shape,
                |c| matches!(c, SingleVertex | Star(1)),
                "only isolated vertices and single edges embed",
            );
            diags.is_empty()
        }
        KnotCase::TorusKnot => {
            let isolated = shape.components.iter().all(|&c| c == SingleVertex);
            let single_star = matches!(shape.components.as_slice(), [Star(_)]);
            if !(isolated || single_star) {
                diags.push("the graph must be isolated vertices only, or a single star".into());
            }
            isolated || single_star
        }
        KnotCase::MixedNoSS => {
            diags = offenders(
                shape,
                |c| matches!(c, SingleVertex | Star(_)),
                "only isolated vertices and stars embed",
            );
            diags.is_empty()
        }
        KnotCase::SSGluing => true,
    };
    Ok(Verdict::new(embeds, rule, diags))
}

/// Decision for a graph with at least one directed edge. `even` records
/// whether the exterior has a Seifert fibered piece of even type.
pub fn decide_traag(
    shape: &GraphShape,
    kase: KnotCase,
    even: bool,
) -> Result<Verdict, DecisionError> {
    if !shape.components.iter().any(|&c| may_carry_arcs(c)) {
        return Err(DecisionError::NoDirectedEdges);
    }
    let rule = Rule::for_case(kase, true);
    match kase {
        KnotCase::Unknot => {
            return Ok(Verdict::new(
                false,
                rule,
                vec!["the unknot group is infinite cyclic and contains no Klein bottle group".into()],
            ))
        }
        KnotCase::HyperbolicOnly => {
            return Ok(Verdict::new(
                false,
                rule,
                vec!["a directed edge needs a Seifert fibered piece of even type; all pieces are hyperbolic".into()],
            ))
        }
        _ => {}
    }

    use ComponentClass::*;
    let mut diags = offenders(
        shape,
        |c| c != Cyclic,
        "the underlying graph must be a forest",
    );
    diags.extend(offenders(
        shape,
        |c| c != DirectedOther,
        "every component with a directed edge must be a sink star",
    ));
    if !even {
        diags.push("no Seifert fibered piece of even type".into());
    }
    let shape_diags = match kase {
        KnotCase::TorusKnot => {
            if matches!(shape.components.as_slice(), [SinkStar(_)]) {
                Vec::new()
            } else {
                vec!["the graph must be a single sink star".into()]
            }
        }
        KnotCase::MixedNoSS => offenders(
            shape,
            |c| {
                matches!(
                    c,
                    SingleVertex | Star(_) | SinkStar(_) | Cyclic | DirectedOther
                )
            },
            "only isolated vertices, stars and sink stars embed",
        ),
        // remaining components may form any forest
        KnotCase::SSGluing => Vec::new(),
        KnotCase::Unknot | KnotCase::HyperbolicOnly => unreachable!(),
    };
    diags.extend(shape_diags);
    let embeds = diags.is_empty();
    let mut v = Verdict::new(embeds, rule, diags);
    v.witness_available = embeds && kase == KnotCase::TorusKnot;
    Ok(v)
}

/// Decides whether the TRAAG of `g` embeds into the group of the knot with
/// exterior `jsj`.
pub fn decide(g: &MixedGraph, jsj: &KnotJsj) -> Result<Verdict, DecisionError> {
    let kase = jsj.knot_case()?;
    if g.is_empty() {
        return Ok(trivial());
    }
    let shape = g.graph_shape();
    let mut verdict = if g.has_directed_edge() {
        decide_traag(&shape, kase, jsj.has_even_seifert_piece())?
    } else {
        decide_raag(&shape, kase)?
    };
    for t in g.triangles() {
        verdict.diagnostics.push(format!(
            "triangle {{{}}} ({}) in the underlying graph: no triangle can embed",
            t.vertices.join(", "),
            t.kind.name()
        ));
    }
    if verdict.embeds
        && matches!(kase, KnotCase::MixedNoSS | KnotCase::SSGluing)
        && matches!(shape.components.as_slice(), [ComponentClass::SinkStar(_)])
        && even_cable_piece(jsj).is_some()
    {
        verdict.witness_available = true;
    }
    Ok(verdict)
}

/// The first cable space of even type, if any.
pub fn even_cable_piece(jsj: &KnotJsj) -> Option<(usize, Piece)> {
    jsj.even_seifert_pieces()
        .map(|i| (i, jsj.pieces()[i]))
        .find(|(_, p)| matches!(p, Piece::CableSpace { .. }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot_jsj::parse_jsj;
    use crate::mixed_graph::parse_graph;

    fn shape(text: &str) -> GraphShape {
        parse_graph(text).unwrap().graph_shape()
    }

    #[test]
    fn raag_examples() {
        let v = decide_raag(
            &shape("vertex p\nvertex q\na -- b\nc -- d"),
            KnotCase::HyperbolicOnly,
        )
        .unwrap();
        assert!(v.embeds);
        assert_eq!(v.rule.tag(), "Thm1.1(1)");

        let v = decide_raag(
            &shape("a -- b\na -- c\nd -- e\nd -- f\nd -- g"),
            KnotCase::TorusKnot,
        )
        .unwrap();
        assert!(!v.embeds);
        assert_eq!(v.rule.tag(), "Thm1.1(2)");

        let v = decide_raag(&shape("a -- b\nb -- c\nc -- d"), KnotCase::SSGluing).unwrap();
        assert!(v.embeds);
        assert_eq!(v.rule.tag(), "Thm1.1(4)");

        assert_eq!(
            decide_raag(&shape("a -> b"), KnotCase::SSGluing),
            Err(DecisionError::HasDirectedEdges)
        );
    }

    #[test]
    fn raag_torus_knot_reads_disjunction_literally() {
        let star_plus_vertex = shape("a -- b\na -- c\nvertex z");
        assert!(
            !decide_raag(&star_plus_vertex, KnotCase::TorusKnot)
                .unwrap()
                .embeds
        );
        assert!(
            decide_raag(&shape("vertex a\nvertex b"), KnotCase::TorusKnot)
                .unwrap()
                .embeds
        );
        assert!(
            decide_raag(&shape("a -- b\na -- c"), KnotCase::TorusKnot)
                .unwrap()
                .embeds
        );
    }

    #[test]
    fn raag_unknot() {
        assert!(
            decide_raag(&shape("vertex a"), KnotCase::Unknot)
                .unwrap()
                .embeds
        );
        assert!(
            !decide_raag(&shape("vertex a\nvertex b"), KnotCase::Unknot)
                .unwrap()
                .embeds
        );
        assert_eq!(
            decide_raag(&shape("vertex a"), KnotCase::Unknot)
                .unwrap()
                .rule,
            Rule::Unknot
        );
    }

    #[test]
    fn traag_examples() {
        let v = decide_traag(&shape("b1 -> a"), KnotCase::TorusKnot, true).unwrap();
        assert!(v.embeds && v.witness_available);
        assert_eq!(v.rule.tag(), "Thm1.2(2)");

        let v = decide_traag(
            &shape("b1 -> a\nb2 -> a\nvertex z"),
            KnotCase::TorusKnot,
            true,
        )
        .unwrap();
        assert!(!v.embeds);

        let v = decide_traag(
            &shape("b1 -> a\nb2 -> a\nu -- v\nv -- w\nw -- x"),
            KnotCase::SSGluing,
            true,
        )
        .unwrap();
        assert!(v.embeds);
        assert_eq!(v.rule.tag(), "Thm1.2(4)");

        assert_eq!(
            decide_traag(&shape("a -- b"), KnotCase::SSGluing, true),
            Err(DecisionError::NoDirectedEdges)
        );
    }

    #[test]
    fn traag_needs_even_piece() {
        for kase in [KnotCase::TorusKnot, KnotCase::MixedNoSS, KnotCase::SSGluing] {
            let v = decide_traag(&shape("b1 -> a"), kase, false).unwrap();
            assert!(!v.embeds);
            assert!(v.diagnostics.iter().any(|d| d.contains("even type")));
        }
    }

    #[test]
    fn traag_rejects_directed_other() {
        let v = decide_traag(&shape("b1 -> a\nb2 -- a"), KnotCase::SSGluing, true).unwrap();
        assert!(!v.embeds);
        assert_eq!(v.diagnostics, vec!["component #1 is directed_other: every component with a directed edge must be a sink star"]);
    }

    #[test]
    fn decide_examples() {
        let s3 = parse_graph("b1 -> a\nb2 -> a\nb3 -> a").unwrap();
        let v = decide(&s3, &parse_jsj("torus 2 3").unwrap()).unwrap();
        assert!(v.embeds && v.witness_available);

        let s1 = parse_graph("b1 -> a").unwrap();
        let v = decide(&s1, &parse_jsj("torus 3 5").unwrap()).unwrap();
        assert!(!v.embeds);

        let g = parse_graph("u -- v\nv -- w\nb1 -> a").unwrap();
        let jsj =
            parse_jsj("hyperbolic; cable 2 1; torus 3 5; glue 0 1; glue 1 2; boundary 0").unwrap();
        // cable and torus pieces are adjacent: that is a Seifert-Seifert gluing
        assert_eq!(jsj.knot_case().unwrap(), KnotCase::SSGluing);
        let jsj = parse_jsj("cable 2 1; hyperbolic; glue 0 1; boundary 0").unwrap();
        assert_eq!(jsj.knot_case().unwrap(), KnotCase::MixedNoSS);
        let v = decide(&g, &jsj).unwrap();
        assert!(v.embeds);
        assert_eq!(v.rule.tag(), "Thm1.2(3)");
        assert!(!v.witness_available);
        assert!(decide(&s1, &jsj).unwrap().witness_available);

        let v = decide(&MixedGraph::new(), &KnotJsj::unknot()).unwrap();
        assert!(v.embeds);
        assert_eq!(v.rule, Rule::TrivialGroup);
    }

    #[test]
    fn machine_rendering() {
        let v = decide(
            &parse_graph("b1 -> a").unwrap(),
            &parse_jsj("hyperbolic").unwrap(),
        )
        .unwrap();
        let text = v.to_machine();
        assert!(text.starts_with("embeds=false rule=Thm1.2(1)\n"));
    }
}
