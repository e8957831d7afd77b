use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use super::proofnet::{BoxDef, Link, LinkKind, ProofNet, RawNet};
use super::NetError;

/// Atom occurrence `index` (left to right) of an edge's formula.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AtomOcc {
    pub edge: String,
    pub index: usize,
}

impl AtomOcc {
    pub fn new(edge: &str, index: usize) -> Self {
        AtomOcc { edge: edge.to_string(), index }
    }
}

/// Interior of a box as a net of its own: doors become `Conc` links with the door ids.
pub fn box_interior(net: &ProofNet, b: &BoxDef) -> Result<ProofNet, NetError> {
    let mut raw = RawNet::default();
    for id in &b.interior {
        let l = net.link(id).clone();
        for e in l.premises.iter().chain(&l.conclusions) {
            raw.edges.insert(e.clone(), net.formula(e).clone());
        }
        raw.links.insert(id.clone(), l);
    }
    for door in b.pax.iter().chain(std::iter::once(&b.prom)) {
        let e = net.link(door).premises[0].clone();
        raw.links.insert(door.clone(), Link { id: door.clone(), kind: LinkKind::Conc, premises: vec![e], conclusions: vec![] });
    }
    let inner: BTreeSet<&str> = b.interior.iter().map(String::as_str).collect();
    raw.boxes = net.boxes().iter().filter(|o| inner.contains(o.prom.as_str())).cloned().collect();
    ProofNet::from_raw(raw)
}

/// Removes every Der link and everything below it. A Der premise is closed by a `Conc`
/// link that reuses the Der link's id; other edges cut loose get `<edge>.conc`.
pub fn linear_part(net: &ProofNet) -> Result<ProofNet, NetError> {
    let mut removed_links: BTreeSet<String> = BTreeSet::new();
    let mut removed_edges: BTreeSet<String> = BTreeSet::new();
    let mut queue: VecDeque<String> = VecDeque::new();
    for l in net.links().values().filter(|l| l.kind == LinkKind::Der) {
        removed_links.insert(l.id.clone());
        queue.extend(l.conclusions.iter().cloned());
    }
    while let Some(e) = queue.pop_front() {
        if !removed_edges.insert(e.clone()) {
            continue;
        }
        let c = net.consumer(&e);
        if removed_links.insert(c.id.clone()) {
            queue.extend(c.conclusions.iter().cloned());
        }
    }
    let mut raw = net.to_raw();
    for id in &removed_links {
        raw.links.remove(id);
    }
    for e in &removed_edges {
        raw.edges.remove(e);
    }
    for l in net.links().values().filter(|l| removed_links.contains(&l.id)) {
        for p in &l.premises {
            if removed_edges.contains(p) {
                continue;
            }
            let id = if l.kind == LinkKind::Der { l.id.clone() } else { format!("{p}.conc") };
            raw.links.insert(id.clone(), Link { id, kind: LinkKind::Conc, premises: vec![p.clone()], conclusions: vec![] });
        }
    }
    raw.boxes.retain(|b| !removed_links.contains(&b.prom));
    for b in &mut raw.boxes {
        b.pax.retain(|p| !removed_links.contains(p));
        b.interior.retain(|p| !removed_links.contains(p));
    }
    ProofNet::from_raw(raw)
}

/// Maximal paths in the atom-occurrence graph of a linear net. Ax and Cut join dual
/// occurrences (a formula's atoms are mirrored in its dual), Tensor and Par join a
/// premise occurrence to its image in the conclusion. Paths run between occurrences on
/// `Conc` edges; each path starts at its smaller endpoint. Cycles are returned too.
pub fn persistent_paths(net: &ProofNet) -> Result<Vec<Vec<AtomOcc>>, NetError> {
    for (id, f) in net.edges() {
        if !f.is_linear() {
            return Err(NetError::NonLinearNet(format!("edge `{id}` has exponential formula {f}")));
        }
    }
    for l in net.links().values() {
        if !matches!(l.kind, LinkKind::Ax | LinkKind::Cut | LinkKind::Tensor | LinkKind::Par | LinkKind::Conc) {
            return Err(NetError::NonLinearNet(format!("{} link `{}`", l.kind, l.id)));
        }
    }
    let mut adj: HashMap<AtomOcc, Vec<AtomOcc>> = HashMap::new();
    for (id, f) in net.edges() {
        for i in 0..f.atom_count() {
            adj.entry(AtomOcc::new(id, i)).or_default();
        }
    }
    let mut join = |a: AtomOcc, b: AtomOcc| {
        adj.entry(a.clone()).or_default().push(b.clone());
        adj.entry(b).or_default().push(a);
    };
    for l in net.links().values() {
        match l.kind {
            LinkKind::Ax | LinkKind::Cut => {
                let pair = if l.kind == LinkKind::Ax { &l.conclusions } else { &l.premises };
                let m = net.formula(&pair[0]).atom_count();
                for i in 0..m {
                    join(AtomOcc::new(&pair[0], i), AtomOcc::new(&pair[1], m - 1 - i));
                }
            }
            LinkKind::Tensor | LinkKind::Par => {
                let left = net.formula(&l.premises[0]).atom_count();
                let right = net.formula(&l.premises[1]).atom_count();
                let c = &l.conclusions[0];
                for i in 0..left {
                    join(AtomOcc::new(&l.premises[0], i), AtomOcc::new(c, i));
                }
                for i in 0..right {
                    join(AtomOcc::new(&l.premises[1], i), AtomOcc::new(c, left + i));
                }
            }
            _ => {}
        }
    }
    let nodes: BTreeMap<AtomOcc, Vec<AtomOcc>> = adj.into_iter().collect();
    let mut seen: BTreeSet<AtomOcc> = BTreeSet::new();
    let mut paths = Vec::new();
    let walk = |start: &AtomOcc, seen: &mut BTreeSet<AtomOcc>| -> Vec<AtomOcc> {
        let mut path = vec![start.clone()];
        seen.insert(start.clone());
        let mut cur = start.clone();
        loop {
            let next = nodes[&cur].iter().find(|n| !seen.contains(*n)).cloned();
            match next {
                Some(n) => {
                    seen.insert(n.clone());
                    path.push(n.clone());
                    cur = n;
                }
                None => return path,
            }
        }
    };
    for (n, nbrs) in &nodes {
        if nbrs.len() <= 1 && !seen.contains(n) {
            paths.push(walk(n, &mut seen));
        }
    }
    for n in nodes.keys() {
        if !seen.contains(n) {
            paths.push(walk(n, &mut seen));
        }
    }
    paths.sort();
    Ok(paths)
}
