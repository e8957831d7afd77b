use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::formula::Formula;
use super::NetError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LinkKind {
    Ax,
    Cut,
    Tensor,
    Par,
    Der,
    Prom,
    Pax,
    Ctr,
    Weak,
    Conc,
}

impl LinkKind {
    /// (premises, conclusions).
    pub fn arity(self) -> (usize, usize) {
        match self {
            LinkKind::Ax => (0, 2),
            LinkKind::Cut => (2, 0),
            LinkKind::Tensor | LinkKind::Par | LinkKind::Ctr => (2, 1),
            LinkKind::Der | LinkKind::Prom | LinkKind::Pax => (1, 1),
            LinkKind::Weak => (0, 1),
            LinkKind::Conc => (1, 0),
        }
    }
}

impl fmt::Display for LinkKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Link {
    pub id: String,
    pub kind: LinkKind,
    #[serde(default)]
    pub premises: Vec<String>,
    #[serde(default)]
    pub conclusions: Vec<String>,
}

impl Link {
    pub fn new(id: &str, kind: LinkKind, premises: &[&str], conclusions: &[&str]) -> Self {
        Link {
            id: id.to_string(),
            kind,
            premises: premises.iter().map(|s| s.to_string()).collect(),
            conclusions: conclusions.iter().map(|s| s.to_string()).collect(),
        }
    }
}

/// A box: its promotion link, auxiliary doors and interior links.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxDef {
    pub prom: String,
    #[serde(default)]
    pub pax: Vec<String>,
    #[serde(default)]
    pub interior: Vec<String>,
}

impl BoxDef {
    fn normalized(mut self) -> Self {
        self.pax.sort();
        self.interior.sort();
        self
    }

    /// Interior plus doors.
    pub fn all_links(&self) -> impl Iterator<Item = &String> {
        self.interior.iter().chain(self.pax.iter()).chain(std::iter::once(&self.prom))
    }
}

/// Unchecked net contents, used when building or rewriting nets.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RawNet {
    pub edges: BTreeMap<String, Formula>,
    pub links: BTreeMap<String, Link>,
    pub boxes: Vec<BoxDef>,
}

impl RawNet {
    pub fn edge(&mut self, id: &str, formula: &str) -> &mut Self {
        let f = Formula::parse(formula).expect("valid formula literal").nnf();
        self.edges.insert(id.to_string(), f);
        self
    }

    pub fn link(&mut self, id: &str, kind: LinkKind, premises: &[&str], conclusions: &[&str]) -> &mut Self {
        self.links.insert(id.to_string(), Link::new(id, kind, premises, conclusions));
        self
    }

    pub fn add_box(&mut self, prom: &str, pax: &[&str], interior: &[&str]) -> &mut Self {
        self.boxes.push(BoxDef {
            prom: prom.to_string(),
            pax: pax.iter().map(|s| s.to_string()).collect(),
            interior: interior.iter().map(|s| s.to_string()).collect(),
        });
        self
    }

    pub fn build(self) -> Result<ProofNet, NetError> {
        ProofNet::from_raw(self)
    }
}

/// A checked MELL proof structure with boxes.
#[derive(Clone, Debug, PartialEq)]
pub struct ProofNet {
    edges: BTreeMap<String, Formula>,
    links: BTreeMap<String, Link>,
    boxes: Vec<BoxDef>,
    producer: HashMap<String, String>,
    consumer: HashMap<String, String>,
    innermost_box: HashMap<String, usize>,
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    id: String,
    formula: Formula,
}

#[derive(Serialize, Deserialize)]
struct NetJson {
    edges: Vec<EdgeJson>,
    links: Vec<Link>,
    #[serde(default)]
    boxes: Vec<BoxDef>,
}

fn valid_edge_id(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic()) && cs.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.')
}

fn malformed(msg: String) -> NetError {
    NetError::Malformed(msg)
}

impl ProofNet {
    pub fn from_raw(raw: RawNet) -> Result<Self, NetError> {
        let RawNet { edges, links, boxes } = raw;
        let edges: BTreeMap<String, Formula> = edges.into_iter().map(|(k, f)| (k, f.nnf())).collect();
        for id in edges.keys() {
            if !valid_edge_id(id) {
                return Err(malformed(format!("edge id `{id}` must match [A-Za-z][A-Za-z0-9_.]*")));
            }
        }
        let mut producer = HashMap::new();
        let mut consumer = HashMap::new();
        for (id, l) in &links {
            if id != &l.id {
                return Err(malformed(format!("link keyed `{id}` has id `{}`", l.id)));
            }
            let (np, nc) = l.kind.arity();
            if l.premises.len() != np || l.conclusions.len() != nc {
                return Err(malformed(format!("{} link `{id}` needs {np} premises and {nc} conclusions", l.kind)));
            }
            for e in &l.conclusions {
                if !edges.contains_key(e) {
                    return Err(malformed(format!("link `{id}` names unknown edge `{e}`")));
                }
                if producer.insert(e.clone(), id.clone()).is_some() {
                    return Err(malformed(format!("edge `{e}` has two producers")));
                }
            }
            for e in &l.premises {
                if !edges.contains_key(e) {
                    return Err(malformed(format!("link `{id}` names unknown edge `{e}`")));
                }
                if consumer.insert(e.clone(), id.clone()).is_some() {
                    return Err(malformed(format!("edge `{e}` has two consumers")));
                }
            }
        }
        for e in edges.keys() {
            if !producer.contains_key(e) || !consumer.contains_key(e) {
                return Err(malformed(format!("edge `{e}` needs exactly one producer and one consumer")));
            }
        }
        for l in links.values() {
            check_typing(l, &edges)?;
        }
        let mut boxes: Vec<BoxDef> = boxes.into_iter().map(BoxDef::normalized).collect();
        boxes.sort_by(|a, b| a.prom.cmp(&b.prom));
        let innermost_box = check_boxes(&boxes, &links, &producer, &consumer)?;
        Ok(ProofNet { edges, links, boxes, producer, consumer, innermost_box })
    }

    pub fn into_raw(self) -> RawNet {
        RawNet { edges: self.edges, links: self.links, boxes: self.boxes }
    }

    pub fn to_raw(&self) -> RawNet {
        self.clone().into_raw()
    }

    pub fn from_json(s: &str) -> Result<Self, NetError> {
        let j: NetJson = serde_json::from_str(s).map_err(|e| NetError::Json(e.to_string()))?;
        let mut raw = RawNet::default();
        for e in j.edges {
            if raw.edges.insert(e.id.clone(), e.formula).is_some() {
                return Err(malformed(format!("duplicate edge id `{}`", e.id)));
            }
        }
        for l in j.links {
            if raw.links.contains_key(&l.id) {
                return Err(malformed(format!("duplicate link id `{}`", l.id)));
            }
            raw.links.insert(l.id.clone(), l);
        }
        raw.boxes = j.boxes;
        Self::from_raw(raw)
    }

    /// Deterministic JSON: everything sorted by id.
    pub fn to_json(&self) -> String {
        let j = NetJson {
            edges: self.edges.iter().map(|(id, f)| EdgeJson { id: id.clone(), formula: f.clone() }).collect(),
            links: self.links.values().cloned().collect(),
            boxes: self.boxes.clone(),
        };
        serde_json::to_string_pretty(&j).expect("net serializes")
    }

    pub fn edges(&self) -> &BTreeMap<String, Formula> {
        &self.edges
    }

    pub fn formula(&self, edge: &str) -> &Formula {
        &self.edges[edge]
    }

    pub fn links(&self) -> &BTreeMap<String, Link> {
        &self.links
    }

    pub fn link(&self, id: &str) -> &Link {
        &self.links[id]
    }

    pub fn boxes(&self) -> &[BoxDef] {
        &self.boxes
    }

    pub fn producer(&self, edge: &str) -> &Link {
        &self.links[&self.producer[edge]]
    }

    pub fn consumer(&self, edge: &str) -> &Link {
        &self.links[&self.consumer[edge]]
    }

    /// Innermost box whose interior holds the link.
    pub fn box_of(&self, link: &str) -> Option<&BoxDef> {
        self.innermost_box.get(link).map(|&i| &self.boxes[i])
    }

    pub fn box_with_prom(&self, prom: &str) -> Option<&BoxDef> {
        self.boxes.iter().find(|b| b.prom == prom)
    }

    /// Box owning a Pax link.
    pub fn box_with_pax(&self, pax: &str) -> Option<&BoxDef> {
        self.boxes.iter().find(|b| b.pax.iter().any(|p| p == pax))
    }

    /// Edges consumed by `Conc` links, keyed by the `Conc` link id.
    pub fn conclusions(&self) -> BTreeMap<String, String> {
        self.links
            .values()
            .filter(|l| l.kind == LinkKind::Conc)
            .map(|l| (l.id.clone(), l.premises[0].clone()))
            .collect()
    }

    pub fn count(&self, kind: LinkKind) -> usize {
        self.links.values().filter(|l| l.kind == kind).count()
    }
}

fn check_typing(l: &Link, edges: &BTreeMap<String, Formula>) -> Result<(), NetError> {
    let f = |e: &String| &edges[e];
    let bad = |what: &str| Err(malformed(format!("{} link `{}`: {what}", l.kind, l.id)));
    match l.kind {
        LinkKind::Ax if f(&l.conclusions[1]) != &f(&l.conclusions[0]).dual() => bad("conclusions are not dual"),
        LinkKind::Cut if f(&l.premises[1]) != &f(&l.premises[0]).dual() => bad("premises are not dual"),
        LinkKind::Tensor if f(&l.conclusions[0]) != &Formula::tensor(f(&l.premises[0]).clone(), f(&l.premises[1]).clone()) => {
            bad("conclusion is not the tensor of the premises")
        }
        LinkKind::Par if f(&l.conclusions[0]) != &Formula::par(f(&l.premises[0]).clone(), f(&l.premises[1]).clone()) => {
            bad("conclusion is not the par of the premises")
        }
        LinkKind::Der if f(&l.conclusions[0]) != &Formula::quest(f(&l.premises[0]).clone()) => bad("conclusion must be ?A for premise A"),
        LinkKind::Prom if f(&l.conclusions[0]) != &Formula::bang(f(&l.premises[0]).clone()) => bad("conclusion must be !A for premise A"),
        LinkKind::Pax if f(&l.conclusions[0]) != f(&l.premises[0]) || !matches!(f(&l.premises[0]), Formula::Quest(_)) => {
            bad("premise and conclusion must be the same ?A")
        }
        LinkKind::Ctr
            if f(&l.premises[0]) != f(&l.conclusions[0])
                || f(&l.premises[1]) != f(&l.conclusions[0])
                || !matches!(f(&l.conclusions[0]), Formula::Quest(_)) =>
        {
            bad("premises and conclusion must be the same ?A")
        }
        LinkKind::Weak if !matches!(f(&l.conclusions[0]), Formula::Quest(_)) => bad("conclusion must be ?A"),
        _ => Ok(()),
    }
}

fn check_boxes(
    boxes: &[BoxDef],
    links: &BTreeMap<String, Link>,
    producer: &HashMap<String, String>,
    consumer: &HashMap<String, String>,
) -> Result<HashMap<String, usize>, NetError> {
    let mut door_owner: HashMap<&str, usize> = HashMap::new();
    for (i, b) in boxes.iter().enumerate() {
        match links.get(&b.prom) {
            Some(l) if l.kind == LinkKind::Prom => {}
            _ => return Err(malformed(format!("box `{}` must name a Prom link", b.prom))),
        }
        if door_owner.insert(&b.prom, i).is_some() {
            return Err(malformed(format!("Prom `{}` closes two boxes", b.prom)));
        }
        for p in &b.pax {
            match links.get(p) {
                Some(l) if l.kind == LinkKind::Pax => {}
                _ => return Err(malformed(format!("box `{}` door `{p}` is not a Pax link", b.prom))),
            }
            if door_owner.insert(p, i).is_some() {
                return Err(malformed(format!("Pax `{p}` belongs to two boxes")));
            }
        }
        let inside: BTreeSet<&str> = b.interior.iter().map(String::as_str).collect();
        if inside.len() != b.interior.len() {
            return Err(malformed(format!("box `{}` lists an interior link twice", b.prom)));
        }
        for id in &b.interior {
            let l = links.get(id).ok_or_else(|| malformed(format!("box `{}` names unknown link `{id}`", b.prom)))?;
            if id == &b.prom || b.pax.contains(id) {
                return Err(malformed(format!("box `{}` lists its own door `{id}` as interior", b.prom)));
            }
            for e in &l.premises {
                if !inside.contains(producer[e].as_str()) {
                    return Err(malformed(format!("box `{}`: edge `{e}` enters the box without a door", b.prom)));
                }
            }
            for e in &l.conclusions {
                let c = consumer[e].as_str();
                if !inside.contains(c) && c != b.prom && !b.pax.iter().any(|p| p == c) {
                    return Err(malformed(format!("box `{}`: edge `{e}` leaves the box without a door", b.prom)));
                }
            }
        }
        for door in b.pax.iter().chain(std::iter::once(&b.prom)) {
            let e = &links[door].premises[0];
            if !inside.contains(producer[e].as_str()) {
                return Err(malformed(format!("box `{}`: door `{door}` premise is not produced inside", b.prom)));
            }
        }
    }
    for l in links.values().filter(|l| matches!(l.kind, LinkKind::Prom | LinkKind::Pax)) {
        if !door_owner.contains_key(l.id.as_str()) {
            return Err(malformed(format!("{} link `{}` belongs to no box", l.kind, l.id)));
        }
    }
    // Boxes are disjoint or properly nested.
    let sets: Vec<BTreeSet<&str>> = boxes.iter().map(|b| b.all_links().map(String::as_str).collect()).collect();
    let interiors: Vec<BTreeSet<&str>> = boxes.iter().map(|b| b.interior.iter().map(String::as_str).collect()).collect();
    for i in 0..boxes.len() {
        for j in 0..boxes.len() {
            if i == j || sets[i].is_disjoint(&sets[j]) {
                continue;
            }
            let nested = sets[i].is_subset(&interiors[j]) || sets[j].is_subset(&interiors[i]);
            if !nested {
                return Err(malformed(format!("boxes `{}` and `{}` overlap without nesting", boxes[i].prom, boxes[j].prom)));
            }
        }
    }
    let mut innermost = HashMap::new();
    for l in links.keys() {
        let best = (0..boxes.len()).filter(|&i| interiors[i].contains(l.as_str())).min_by_key(|&i| interiors[i].len());
        if let Some(i) = best {
            innermost.insert(l.clone(), i);
        }
    }
    Ok(innermost)
}
