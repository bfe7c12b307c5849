//! Line-oriented text formats.
//!
//! Instance files:
//!
//! ```text
//! brac 1
//! n 3
//! b 0
//! e 0 1 0
//! e 1 2 0
//! e 0 2 0
//! ```
//!
//! Drawing files list every vertex once (`v id x y`) and every edge once
//! (`p u v x1 y1 ... xj yj`, bend points from `u` to `v`). `#` starts a
//! comment. Kernel results are instance files followed by a `# recipe`
//! block whose lines all start with `#`, so any instance reader accepts
//! them.

use std::fmt::Write;

use crate::drawing::{BendBudget, Drawing, Instance, MAX_EDGE_BENDS};
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::graph::{Graph, Removal, VertexId};
use crate::kernel::{Recipe, RecipeDetail, TrimmedMember};

fn perr(line: usize, reason: impl Into<String>) -> Error {
    Error::Parse { line, reason: reason.into() }
}

/// Non-blank lines with comments stripped, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = body.split_whitespace().collect();
        (!words.is_empty()).then_some((i + 1, words))
    })
}

fn num<T: std::str::FromStr>(line: usize, word: &str, what: &str) -> Result<T> {
    word.parse().map_err(|_| perr(line, format!("bad {what} '{word}'")))
}

fn coord(line: usize, word: &str) -> Result<f64> {
    let x: f64 = num(line, word, "coordinate")?;
    if !x.is_finite() {
        return Err(perr(line, format!("coordinate '{word}' is not finite")));
    }
    Ok(x)
}

fn arity(line: usize, words: &[&str], n: usize) -> Result<()> {
    if words.len() != n {
        return Err(perr(line, format!("'{}' takes {} fields, found {}", words[0], n - 1, words.len() - 1)));
    }
    Ok(())
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((1, w)) if w == ["brac", "1"] => {}
        Some((l, _)) if l != 1 => return Err(perr(1, "missing 'brac 1' header")),
        Some((l, w)) => return Err(perr(l, format!("expected 'brac 1', found '{}'", w.join(" ")))),
        None => return Err(perr(1, "missing 'brac 1' header")),
    }
    let mut n: Option<usize> = None;
    let mut b: Option<usize> = None;
    let mut edges = Vec::new();
    let mut last = 1;
    for (l, w) in lines {
        last = l;
        match w[0] {
            "n" => {
                arity(l, &w, 2)?;
                if n.is_some() || !edges.is_empty() {
                    return Err(perr(l, "'n' must appear once, before the edges"));
                }
                n = Some(num(l, w[1], "vertex count")?);
            }
            "b" => {
                arity(l, &w, 2)?;
                if b.is_some() {
                    return Err(perr(l, "duplicate 'b' line"));
                }
                b = Some(num(l, w[1], "bend budget")?);
            }
            "e" => {
                arity(l, &w, 4)?;
                let count = n.ok_or_else(|| perr(l, "edge before 'n'"))?;
                let u: VertexId = num(l, w[1], "vertex")?;
                let v: VertexId = num(l, w[2], "vertex")?;
                let beta: u8 = num(l, w[3], "edge cap")?;
                if u >= count || v >= count {
                    return Err(perr(l, format!("edge {u}-{v} references a vertex >= {count}")));
                }
                if u == v {
                    return Err(perr(l, format!("self-loop at vertex {u}")));
                }
                if beta > MAX_EDGE_BENDS {
                    return Err(perr(l, format!("edge cap {beta} > {MAX_EDGE_BENDS}")));
                }
                edges.push((l, u, v, beta));
            }
            other => return Err(perr(l, format!("unknown record '{other}'"))),
        }
    }
    let n = n.ok_or_else(|| perr(last, "missing 'n' line"))?;
    let b = b.ok_or_else(|| perr(last, "missing 'b' line"))?;
    let mut g = Graph::new(n);
    let mut caps = Vec::with_capacity(edges.len());
    for (l, u, v, beta) in edges {
        g.add_edge(u, v).map_err(|e| perr(l, e.to_string()))?;
        caps.push(beta);
    }
    Instance::new(g, BendBudget::new(b, caps)?)
}

pub fn serialize_instance(inst: &Instance) -> String {
    let g = &inst.graph;
    let mut s = format!("brac 1\nn {}\nb {}\n", g.vertex_count(), inst.budget.total);
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let _ = writeln!(s, "e {u} {v} {}", inst.budget.per_edge[e]);
    }
    s
}

pub fn parse_drawing(text: &str, g: &Graph) -> Result<Drawing> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((l, w)) if w == ["bracdraw", "1"] && l == 1 => {}
        Some((l, w)) if l == 1 => return Err(perr(l, format!("expected 'bracdraw 1', found '{}'", w.join(" ")))),
        _ => return Err(perr(1, "missing 'bracdraw 1' header")),
    }
    let mut vertices: Vec<Option<Point>> = vec![None; g.vertex_count()];
    let mut bends: Vec<Option<Vec<Point>>> = vec![None; g.edge_count()];
    let mut last = 1;
    for (l, w) in lines {
        last = l;
        match w[0] {
            "v" => {
                arity(l, &w, 4)?;
                let id: VertexId = num(l, w[1], "vertex")?;
                let slot = vertices.get_mut(id).ok_or_else(|| perr(l, format!("unknown vertex {id}")))?;
                if slot.is_some() {
                    return Err(perr(l, format!("vertex {id} listed twice")));
                }
                *slot = Some(Point::new(coord(l, w[2])?, coord(l, w[3])?));
            }
            "p" => {
                if w.len() < 3 || w.len() % 2 == 0 {
                    return Err(perr(l, "'p' takes two vertices and coordinate pairs"));
                }
                let u: VertexId = num(l, w[1], "vertex")?;
                let v: VertexId = num(l, w[2], "vertex")?;
                let e = g.edge_id(u, v).ok_or_else(|| perr(l, format!("no edge {u}-{v} in the instance")))?;
                if bends[e].is_some() {
                    return Err(perr(l, format!("edge {u}-{v} listed twice")));
                }
                let mut pts = Vec::new();
                for pair in w[3..].chunks(2) {
                    pts.push(Point::new(coord(l, pair[0])?, coord(l, pair[1])?));
                }
                if u > v {
                    pts.reverse();
                }
                bends[e] = Some(pts);
            }
            other => return Err(perr(l, format!("unknown record '{other}'"))),
        }
    }
    let vertices = vertices
        .into_iter()
        .enumerate()
        .map(|(v, p)| p.ok_or_else(|| perr(last, format!("vertex {v} has no position"))))
        .collect::<Result<Vec<_>>>()?;
    let bends = bends
        .into_iter()
        .enumerate()
        .map(|(e, p)| {
            let (u, v) = g.edge(e);
            p.ok_or_else(|| perr(last, format!("edge {u}-{v} has no 'p' line")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Drawing::new(vertices, bends))
}

/// Coordinates are written in Rust's shortest round-trip form, so parsing
/// a serialized drawing gives back the same bits.
pub fn serialize_drawing(g: &Graph, d: &Drawing) -> String {
    let mut s = String::from("bracdraw 1\n");
    for (v, p) in d.vertices.iter().enumerate() {
        let _ = writeln!(s, "v {v} {} {}", p.x, p.y);
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let _ = write!(s, "p {u} {v}");
        for p in &d.bends[e] {
            let _ = write!(s, " {} {}", p.x, p.y);
        }
        s.push('\n');
    }
    s
}

/// A kernel together with the recipe that lifts its drawings.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelFile {
    pub kernel: Instance,
    pub recipe: Recipe,
}

pub fn serialize_kernel(kernel: &Instance, recipe: &Recipe) -> String {
    let mut s = serialize_instance(kernel);
    s.push_str("# recipe\n");
    let kind = match recipe.detail {
        RecipeDetail::Fen { .. } => "fen",
        RecipeDetail::Vc { .. } => "vc",
    };
    let _ = writeln!(s, "# kind {kind}");
    let orig = &recipe.original;
    let _ = writeln!(s, "# original {} {}", orig.graph.vertex_count(), orig.budget.total);
    for (e, &(u, v)) in orig.graph.edges().iter().enumerate() {
        let _ = writeln!(s, "# oe {u} {v} {}", orig.budget.per_edge[e]);
    }
    let _ = writeln!(s, "# map{}", join(&recipe.kernel_to_original));
    for r in &recipe.removal_log {
        match r.anchor {
            Some(a) => writeln!(s, "# removed {} {a}", r.vertex),
            None => writeln!(s, "# removed {} -", r.vertex),
        }
        .ok();
    }
    match &recipe.detail {
        RecipeDetail::Fen { long_paths } => {
            for p in long_paths {
                let _ = writeln!(s, "# path{}", join(p));
            }
        }
        RecipeDetail::Vc { trimmed, rejected } => {
            for t in trimmed {
                let _ = writeln!(s, "# trimmed {} {} {}", t.vertex, t.neighbors.0, t.neighbors.1);
            }
            if let Some(why) = rejected {
                let _ = writeln!(s, "# rejected {}", why.replace('\n', " "));
            }
        }
    }
    s
}

fn join(ids: &[VertexId]) -> String {
    ids.iter().map(|v| format!(" {v}")).collect()
}

pub fn parse_kernel(text: &str) -> Result<KernelFile> {
    let kernel = parse_instance(text)?;
    let mut in_recipe = false;
    let mut kind: Option<&str> = None;
    let mut original: Option<(usize, usize, usize)> = None;
    let mut oedges = Vec::new();
    let mut map: Option<Vec<VertexId>> = None;
    let mut log = Vec::new();
    let mut paths = Vec::new();
    let mut trimmed = Vec::new();
    let mut rejected = None;
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let l = i + 1;
        last = l;
        let Some(body) = raw.trim_start().strip_prefix('#') else { continue };
        let w: Vec<&str> = body.split_whitespace().collect();
        if !in_recipe {
            in_recipe = w == ["recipe"];
            continue;
        }
        let ids = |from: usize| -> Result<Vec<VertexId>> { w[from..].iter().map(|x| num(l, x, "vertex")).collect() };
        match w.first().copied() {
            None => {}
            Some("kind") => {
                arity(l, &w, 2)?;
                kind = Some(match w[1] {
                    "fen" => "fen",
                    "vc" => "vc",
                    k => return Err(perr(l, format!("unknown kernel kind '{k}'"))),
                });
            }
            Some("original") => {
                arity(l, &w, 3)?;
                original = Some((l, num(l, w[1], "vertex count")?, num(l, w[2], "bend budget")?));
            }
            Some("oe") => {
                arity(l, &w, 4)?;
                oedges.push((l, num(l, w[1], "vertex")?, num(l, w[2], "vertex")?, num::<u8>(l, w[3], "edge cap")?));
            }
            Some("map") => map = Some(ids(1)?),
            Some("removed") => {
                arity(l, &w, 3)?;
                let anchor = if w[2] == "-" { None } else { Some(num(l, w[2], "vertex")?) };
                log.push(Removal { vertex: num(l, w[1], "vertex")?, anchor });
            }
            Some("path") => paths.push(ids(1)?),
            Some("trimmed") => {
                arity(l, &w, 4)?;
                let v = ids(1)?;
                trimmed.push(TrimmedMember { vertex: v[0], neighbors: (v[1], v[2]) });
            }
            Some("rejected") => rejected = Some(w[1..].join(" ")),
            Some(other) => return Err(perr(l, format!("unknown recipe record '{other}'"))),
        }
    }
    if !in_recipe {
        return Err(perr(last.max(1), "no '# recipe' block"));
    }
    let kind = kind.ok_or_else(|| perr(last, "recipe has no kind"))?;
    let (ol, on, ob) = original.ok_or_else(|| perr(last, "recipe has no original instance"))?;
    let mut g = Graph::new(on);
    let mut caps = Vec::new();
    for (l, u, v, beta) in oedges {
        g.add_edge(u, v).map_err(|e| perr(l, e.to_string()))?;
        caps.push(beta);
    }
    let original = Instance::new(g, BendBudget::new(ob, caps).map_err(|e| perr(ol, e.to_string()))?)?;
    let detail = match kind {
        "fen" => RecipeDetail::Fen { long_paths: paths },
        _ => RecipeDetail::Vc { trimmed, rejected },
    };
    let kernel_to_original = map.ok_or_else(|| perr(last, "recipe has no vertex map"))?;
    Ok(KernelFile { kernel, recipe: Recipe { original, kernel_to_original, removal_log: log, detail } })
}
