//! Cut-elimination on shallow nets: redex detection, the five supported rewrites and
//! the edge correspondence each step induces.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::net::{validate_shallow, BoxDef, Link, LinkKind, NetError, ProofNet, RawNet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RedexKind {
    AxCut,
    TensorPar,
    BangQuest,
    WeakBang,
    CtrBang,
    /// Promotion cut against an auxiliary door. Detected, never applied.
    PromPax,
}

impl RedexKind {
    pub fn is_supported(self) -> bool {
        self != RedexKind::PromPax
    }

    fn priority(self) -> u8 {
        match self {
            RedexKind::AxCut => 0,
            RedexKind::TensorPar => 1,
            RedexKind::BangQuest => 2,
            RedexKind::WeakBang => 3,
            RedexKind::CtrBang => 4,
            RedexKind::PromPax => 5,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Redex {
    pub kind: RedexKind,
    pub cut: String,
    /// The cut followed by the producers of its two premises, in premise order.
    pub links: Vec<String>,
    /// The cut premises.
    pub edges: Vec<String>,
}

/// Where an edge of the source net went.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Image {
    Edge(String),
    /// No single edge of the result stands for it (erased, or only reachable
    /// through a Segre or Hilbert-scheme morphism).
    Dropped,
}

/// Where an edge of the result came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Origin {
    Edge(String),
    /// Right-hand duplicate of a box edge made by a contraction step.
    Copy(String),
}

impl Origin {
    pub fn edge(&self) -> &str {
        match self {
            Origin::Edge(e) | Origin::Copy(e) => e,
        }
    }
}

/// Closed subscheme of the result's ambient space on which the backward morphism lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Restriction {
    None,
    /// Single Hilbert-function component; automatic in the one-component charts.
    Component,
    Empty,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeCorrespondence {
    pub forward: BTreeMap<String, Image>,
    pub backward: BTreeMap<String, Origin>,
    pub restriction: Restriction,
}

impl EdgeCorrespondence {
    pub fn identity(net: &ProofNet) -> Self {
        EdgeCorrespondence {
            forward: net.edges().keys().map(|e| (e.clone(), Image::Edge(e.clone()))).collect(),
            backward: net.edges().keys().map(|e| (e.clone(), Origin::Edge(e.clone()))).collect(),
            restriction: Restriction::None,
        }
    }

    /// `self` for the first step, `next` for the one after it.
    pub fn then(&self, next: &EdgeCorrespondence) -> EdgeCorrespondence {
        let forward = self
            .forward
            .iter()
            .map(|(e, img)| {
                let img = match img {
                    Image::Edge(m) => next.forward.get(m).cloned().unwrap_or(Image::Dropped),
                    Image::Dropped => Image::Dropped,
                };
                (e.clone(), img)
            })
            .collect();
        let backward = next
            .backward
            .iter()
            .map(|(e, o)| {
                let first = &self.backward[o.edge()];
                let o = match (o, first) {
                    (Origin::Edge(_), Origin::Edge(x)) => Origin::Edge(x.clone()),
                    (_, x) => Origin::Copy(x.edge().to_string()),
                };
                (e.clone(), o)
            })
            .collect();
        let restriction = match (self.restriction, next.restriction) {
            (Restriction::Empty, _) | (_, Restriction::Empty) => Restriction::Empty,
            (Restriction::Component, _) | (_, Restriction::Component) => Restriction::Component,
            _ => Restriction::None,
        };
        EdgeCorrespondence { forward, backward, restriction }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("unsupported reduction: promotion cut `{0}` against an auxiliary door would nest boxes")]
    UnsupportedReduction(String),
    #[error("redex at cut `{0}` no longer matches the net")]
    StaleRedex(String),
    #[error("fuel exhausted after {0} steps")]
    FuelExhausted(usize),
    #[error("only promotion/auxiliary-door cuts remain ({0}); normalizing needs a non-shallow net")]
    NonShallowRequired(String),
    #[error("step {step} produced a net that is not shallow: {detail}")]
    LostShallowness { step: usize, detail: String },
    #[error(transparent)]
    Net(#[from] NetError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Strategy {
    /// Smallest cut id first.
    Leftmost,
    /// AxCut, TensorPar, BangQuest, WeakBang, CtrBang; ties by cut id.
    ByKind,
}

impl std::str::FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "leftmost" => Ok(Strategy::Leftmost),
            "by-kind" | "by-kind-priority" => Ok(Strategy::ByKind),
            _ => Err(format!("unknown strategy `{s}` (leftmost, by-kind)")),
        }
    }
}

fn classify(net: &ProofNet, cut: &Link) -> Option<(RedexKind, usize)> {
    use LinkKind::*;
    let p = [net.producer(&cut.premises[0]).kind, net.producer(&cut.premises[1]).kind];
    if let Some(i) = p.iter().position(|&k| k == Ax) {
        return Some((RedexKind::AxCut, i));
    }
    // Second component: index of the premise on the !-side (or the tensor side).
    for (i, j) in [(0, 1), (1, 0)] {
        let kind = match (p[i], p[j]) {
            (Tensor, Par) => RedexKind::TensorPar,
            (Prom, Der) => RedexKind::BangQuest,
            (Prom, Weak) => RedexKind::WeakBang,
            (Prom, Ctr) => RedexKind::CtrBang,
            (Prom, Pax) => RedexKind::PromPax,
            _ => continue,
        };
        return Some((kind, i));
    }
    None
}

/// Every cut that is a redex, in cut-id order.
pub fn find_redexes(net: &ProofNet) -> Vec<Redex> {
    net.links()
        .values()
        .filter(|l| l.kind == LinkKind::Cut)
        .filter_map(|cut| {
            let (kind, _) = classify(net, cut)?;
            let mut links = vec![cut.id.clone()];
            links.extend(cut.premises.iter().map(|e| net.producer(e).id.clone()));
            Some(Redex { kind, cut: cut.id.clone(), links, edges: cut.premises.clone() })
        })
        .collect()
}

/// Mutable rewrite state over a raw net.
struct Rewrite {
    raw: RawNet,
    removed_edges: BTreeSet<String>,
}

impl Rewrite {
    fn new(net: &ProofNet) -> Self {
        Rewrite { raw: net.to_raw(), removed_edges: BTreeSet::new() }
    }

    fn remove_link(&mut self, id: &str) {
        self.raw.links.remove(id);
        for b in &mut self.raw.boxes {
            b.interior.retain(|l| l != id);
            b.pax.retain(|l| l != id);
        }
    }

    fn remove_edge(&mut self, id: &str) {
        self.raw.edges.remove(id);
        self.removed_edges.insert(id.to_string());
    }

    /// Adds a link and places it in every box whose interior holds `beside`.
    fn add_link(&mut self, link: Link, beside: &str) -> Result<(), NetError> {
        if self.raw.links.contains_key(&link.id) {
            return Err(NetError::Malformed(format!("fresh link id `{}` already in use", link.id)));
        }
        for b in &mut self.raw.boxes {
            if b.interior.iter().any(|l| l == beside) {
                b.interior.push(link.id.clone());
            }
        }
        self.raw.links.insert(link.id.clone(), link);
        Ok(())
    }

    fn add_edge(&mut self, id: &str, like: &str) -> Result<(), NetError> {
        if self.raw.edges.contains_key(id) {
            return Err(NetError::Malformed(format!("fresh edge id `{id}` already in use")));
        }
        let f = self.raw.edges[like].clone();
        self.raw.edges.insert(id.to_string(), f);
        Ok(())
    }

    /// The link consuming `old` consumes `new` instead.
    fn reattach(&mut self, consumer: &str, old: &str, new: &str) {
        let l = self.raw.links.get_mut(consumer).expect("consumer exists");
        for p in &mut l.premises {
            if p == old {
                *p = new.to_string();
            }
        }
    }

    fn finish(self) -> Result<(ProofNet, BTreeSet<String>), NetError> {
        Ok((ProofNet::from_raw(self.raw)?, self.removed_edges))
    }
}

fn identity_maps(
    before: &ProofNet,
    after: &ProofNet,
    forward: BTreeMap<String, Image>,
    backward: BTreeMap<String, Origin>,
    restriction: Restriction,
) -> EdgeCorrespondence {
    let mut fwd = forward;
    for e in before.edges().keys() {
        fwd.entry(e.clone()).or_insert_with(|| if after.edges().contains_key(e) { Image::Edge(e.clone()) } else { Image::Dropped });
    }
    let mut bwd = backward;
    for e in after.edges().keys() {
        bwd.entry(e.clone()).or_insert_with(|| Origin::Edge(e.clone()));
    }
    EdgeCorrespondence { forward: fwd, backward: bwd, restriction }
}

/// Edges produced inside a box: interior conclusions, which include all door premises.
fn box_edges(net: &ProofNet, b: &BoxDef) -> Vec<String> {
    b.interior.iter().flat_map(|l| net.link(l).conclusions.clone()).collect()
}

/// Largest `n` over id segments of the form `R<n>`.
fn max_copy_index(net: &ProofNet) -> u32 {
    net.edges()
        .keys()
        .chain(net.links().keys())
        .flat_map(|id| id.split('.').skip(1))
        .filter_map(|seg| seg.strip_prefix('R').and_then(|n| n.parse::<u32>().ok()))
        .max()
        .unwrap_or(0)
}

pub fn reduce_step(net: &ProofNet, r: &Redex) -> Result<(ProofNet, EdgeCorrespondence), ReductionError> {
    let current = find_redexes(net);
    if !current.contains(r) {
        return Err(ReductionError::StaleRedex(r.cut.clone()));
    }
    let cut = net.link(&r.cut).clone();
    let (_, side) = classify(net, &cut).expect("listed redex classifies");
    match r.kind {
        RedexKind::AxCut => ax_cut(net, &cut, side),
        RedexKind::TensorPar => tensor_par(net, &cut, side),
        RedexKind::BangQuest => bang_quest(net, &cut, side),
        RedexKind::WeakBang => weak_bang(net, &cut, side),
        RedexKind::CtrBang => ctr_bang(net, &cut, side),
        RedexKind::PromPax => Err(ReductionError::UnsupportedReduction(r.cut.clone())),
    }
}

/// `side` is the cut premise produced by the axiom.
fn ax_cut(net: &ProofNet, cut: &Link, side: usize) -> Result<(ProofNet, EdgeCorrespondence), ReductionError> {
    let b = &cut.premises[side];
    let c = &cut.premises[1 - side];
    let ax = net.producer(b);
    let a = ax.conclusions.iter().find(|e| *e != b).expect("axiom has two conclusions");
    let mut rw = Rewrite::new(net);
    rw.remove_link(&ax.id);
    rw.remove_link(&cut.id);
    rw.remove_edge(a);
    rw.remove_edge(b);
    let mut forward = BTreeMap::new();
    if a == c {
        // Axiom looped onto its own cut: both edges vanish.
        forward.insert(a.clone(), Image::Dropped);
        forward.insert(b.clone(), Image::Dropped);
    } else {
        let consumer = net.consumer(a).id.clone();
        rw.reattach(&consumer, a, c);
        for e in [a, b, c] {
            forward.insert(e.clone(), Image::Edge(c.clone()));
        }
    }
    let (after, _) = rw.finish()?;
    let corr = identity_maps(net, &after, forward, BTreeMap::new(), Restriction::None);
    Ok((after, corr))
}

/// `side` is the cut premise produced by the tensor.
fn tensor_par(net: &ProofNet, cut: &Link, side: usize) -> Result<(ProofNet, EdgeCorrespondence), ReductionError> {
    let f = &cut.premises[side];
    let g = &cut.premises[1 - side];
    let tensor = net.producer(f).clone();
    let par = net.producer(g).clone();
    let (a, b) = (&tensor.premises[0], &tensor.premises[1]);
    let (c, d) = (&par.premises[0], &par.premises[1]);
    let mut rw = Rewrite::new(net);
    rw.remove_link(&tensor.id);
    rw.remove_link(&par.id);
    rw.remove_edge(f);
    rw.remove_edge(g);
    rw.add_link(Link::new(&format!("{}.1", cut.id), LinkKind::Cut, &[a, d], &[]), &cut.id)?;
    rw.add_link(Link::new(&format!("{}.2", cut.id), LinkKind::Cut, &[b, c], &[]), &cut.id)?;
    rw.remove_link(&cut.id);
    let (after, _) = rw.finish()?;
    let forward = [(f.clone(), Image::Dropped), (g.clone(), Image::Dropped)].into_iter().collect();
    Ok((after.clone(), identity_maps(net, &after, forward, BTreeMap::new(), Restriction::None)))
}

/// `side` is the cut premise produced by the promotion.
fn bang_quest(net: &ProofNet, cut: &Link, side: usize) -> Result<(ProofNet, EdgeCorrespondence), ReductionError> {
    let f = &cut.premises[side];
    let d = &cut.premises[1 - side];
    let prom = net.producer(f).clone();
    let der = net.producer(d).clone();
    let bx = net.box_with_prom(&prom.id).expect("promotion closes a box").clone();
    let mut rw = Rewrite::new(net);
    rw.remove_link(&der.id);
    rw.remove_link(&prom.id);
    rw.remove_edge(d);
    rw.remove_edge(f);
    let mut premises = cut.premises.clone();
    premises[side] = prom.premises[0].clone();
    premises[1 - side] = der.premises[0].clone();
    rw.raw.links.insert(cut.id.clone(), Link { premises, ..cut.clone() });
    let mut forward = BTreeMap::new();
    for p in &bx.pax {
        let pax = net.link(p);
        let (c, g) = (&pax.premises[0], &pax.conclusions[0]);
        let consumer = net.consumer(g).id.clone();
        rw.remove_link(p);
        rw.remove_edge(g);
        rw.reattach(&consumer, g, c);
        forward.insert(g.clone(), Image::Edge(c.clone()));
    }
    rw.raw.boxes.retain(|b| b.prom != prom.id);
    let (after, _) = rw.finish()?;
    let corr = identity_maps(net, &after, forward, BTreeMap::new(), Restriction::Component);
    Ok((after, corr))
}

/// `side` is the cut premise produced by the promotion.
fn weak_bang(net: &ProofNet, cut: &Link, side: usize) -> Result<(ProofNet, EdgeCorrespondence), ReductionError> {
    let b = &cut.premises[side];
    let a = &cut.premises[1 - side];
    let prom = net.producer(b).clone();
    let weak = net.producer(a).clone();
    let bx = net.box_with_prom(&prom.id).expect("promotion closes a box").clone();
    let mut rw = Rewrite::new(net);
    for e in box_edges(net, &bx).iter().chain([a, b]) {
        rw.remove_edge(e);
    }
    rw.remove_link(&weak.id);
    for l in bx.interior.iter().chain(std::iter::once(&prom.id)) {
        rw.remove_link(l);
    }
    rw.raw.boxes.retain(|x| x.prom != prom.id);
    for p in &bx.pax {
        let f = net.link(p).conclusions[0].clone();
        rw.remove_link(p);
        rw.add_link(Link::new(p, LinkKind::Weak, &[], &[&f]), &cut.id)?;
    }
    rw.remove_link(&cut.id);
    let (after, _) = rw.finish()?;
    let corr = identity_maps(net, &after, BTreeMap::new(), BTreeMap::new(), Restriction::Empty);
    Ok((after, corr))
}

/// `side` is the cut premise produced by the promotion. The box is duplicated; every
/// id of the right copy gets the suffix `.R<k>`, and the contraction joining the two
/// copies of auxiliary door `p` with conclusion `h` is `p.C<k>` with conclusion `h.C<k>`.
fn ctr_bang(net: &ProofNet, cut: &Link, side: usize) -> Result<(ProofNet, EdgeCorrespondence), ReductionError> {
    let g = &cut.premises[side];
    let f = &cut.premises[1 - side];
    let prom = net.producer(g).clone();
    let ctr = net.producer(f).clone();
    let (a, b) = (&ctr.premises[0], &ctr.premises[1]);
    let bx = net.box_with_prom(&prom.id).expect("promotion closes a box").clone();
    let k = max_copy_index(net) + 1;
    let copy = |id: &str| format!("{id}.R{k}");

    let mut rw = Rewrite::new(net);
    rw.remove_link(&ctr.id);
    rw.remove_edge(f);
    let mut left = cut.clone();
    left.premises[1 - side] = a.clone();
    rw.raw.links.insert(cut.id.clone(), left);

    let mut backward = BTreeMap::new();
    let mut copied_edges: Vec<String> = box_edges(net, &bx);
    copied_edges.push(g.clone());
    copied_edges.extend(bx.pax.iter().map(|p| net.link(p).conclusions[0].clone()));
    for e in &copied_edges {
        rw.add_edge(&copy(e), e)?;
        backward.insert(copy(e), Origin::Copy(e.clone()));
    }
    let rename = |e: &String| if copied_edges.contains(e) { copy(e) } else { e.clone() };
    let mut new_box = BoxDef { prom: copy(&prom.id), pax: vec![], interior: vec![] };
    for id in bx.all_links() {
        let l = net.link(id);
        let dup = Link {
            id: copy(id),
            kind: l.kind,
            premises: l.premises.iter().map(rename).collect(),
            conclusions: l.conclusions.iter().map(rename).collect(),
        };
        rw.add_link(dup, &prom.id)?;
        if bx.pax.contains(id) {
            new_box.pax.push(copy(id));
        } else if id != &prom.id {
            new_box.interior.push(copy(id));
        }
    }
    rw.raw.boxes.push(new_box);

    let mut right = cut.clone();
    right.id = copy(&cut.id);
    right.premises[side] = copy(g);
    right.premises[1 - side] = b.clone();
    rw.add_link(right, &cut.id)?;

    for p in &bx.pax {
        let h = &net.link(p).conclusions[0];
        let joined = format!("{h}.C{k}");
        rw.add_edge(&joined, h)?;
        let consumer = net.consumer(h).id.clone();
        rw.reattach(&consumer, h, &joined);
        rw.add_link(Link::new(&format!("{p}.C{k}"), LinkKind::Ctr, &[h, &copy(h)], &[&joined]), &cut.id)?;
        backward.insert(joined, Origin::Edge(h.clone()));
    }
    let (after, _) = rw.finish()?;
    let forward = [(f.clone(), Image::Edge(a.clone()))].into_iter().collect();
    let corr = identity_maps(net, &after, forward, backward, Restriction::None);
    Ok((after, corr))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub step: usize,
    pub kind: RedexKind,
    pub cut: String,
    pub links: Vec<String>,
    pub correspondence: EdgeCorrespondence,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Normalized {
    pub net: ProofNet,
    pub steps: Vec<Step>,
}

impl Normalized {
    /// Composite correspondence from the input net to the result.
    pub fn correspondence(&self, input: &ProofNet) -> EdgeCorrespondence {
        self.steps.iter().fold(EdgeCorrespondence::identity(input), |acc, s| acc.then(&s.correspondence))
    }

    /// One JSON record per step.
    pub fn trace_jsonl(&self) -> String {
        self.steps.iter().map(|s| serde_json::to_string(s).expect("step serializes") + "\n").collect()
    }
}

pub fn pick(redexes: &[Redex], strategy: Strategy) -> Option<&Redex> {
    let supported = redexes.iter().filter(|r| r.kind.is_supported());
    match strategy {
        Strategy::Leftmost => supported.min_by(|x, y| x.cut.cmp(&y.cut)),
        Strategy::ByKind => supported.min_by(|x, y| (x.kind.priority(), &x.cut).cmp(&(y.kind.priority(), &y.cut))),
    }
}

/// Reduces until cut-free. Each intermediate net is checked for shallowness.
pub fn normalize(net: &ProofNet, strategy: Strategy, fuel: usize) -> Result<Normalized, ReductionError> {
    let mut cur = net.clone();
    let mut steps = Vec::new();
    loop {
        let redexes = find_redexes(&cur);
        if redexes.is_empty() {
            return Ok(Normalized { net: cur, steps });
        }
        let Some(r) = pick(&redexes, strategy).cloned() else {
            let cuts: Vec<&str> = redexes.iter().map(|r| r.cut.as_str()).collect();
            return Err(ReductionError::NonShallowRequired(cuts.join(", ")));
        };
        if steps.len() == fuel {
            return Err(ReductionError::FuelExhausted(fuel));
        }
        let (next, correspondence) = reduce_step(&cur, &r)?;
        let report = validate_shallow(&next);
        if !report.shallow {
            let v = &report.violations[0];
            return Err(ReductionError::LostShallowness { step: steps.len() + 1, detail: format!("{:?} at {}: {}", v.rule, v.location, v.detail) });
        }
        steps.push(Step { step: steps.len() + 1, kind: r.kind, cut: r.cut.clone(), links: r.links.clone(), correspondence });
        cur = next;
    }
}

/// (total size of cut formulas, boxes, links). Every supported step except
/// CtrBang lowers the first component.
pub fn measure(net: &ProofNet) -> (usize, usize, usize) {
    let cut_size = net.links().values().filter(|l| l.kind == LinkKind::Cut).map(|l| net.formula(&l.premises[0]).size()).sum();
    (cut_size, net.boxes().len(), net.links().len())
}
