//! Compiles a shallow net into generators: one coordinate pair per atom occurrence of a
//! linear edge, and Grassmann chart parameters for each exponential edge.
//!
//! The degree-`t` slice of an `m`-atom formula has one monomial per tuple
//! `(k_1, .., k_m)` with `0 <= k_i <= t`, where `k_i` is the unprimed exponent of atom
//! `i`. Its index is `sum k_i (t+1)^(i-1)`, so the first atom is least significant.
//! A chart is a set of pivot indices; its parameters `y_(p,b)` are numbered
//! pivot-major over (pivot, basis) pairs, both ascending, starting at 1.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::net::{box_interior, linear_part, persistent_paths, validate_shallow, Formula, LinkKind, NetError, ProofNet};
use crate::poly::{Ideal, Monomial, PolyError, Polynomial, Ring};

/// Tensor and par links emit `2^m - 1` generators; refuse larger conclusions.
pub const MAX_SEGRE_ATOMS: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchemeError {
    #[error("net is not shallow: {0}")]
    NotShallow(String),
    #[error("chart mismatch: {0}")]
    ChartMismatch(String),
    #[error("degenerate slice for box `{0}`: remaining relations have no constant pivot")]
    DegenerateSlice(String),
    #[error("chart resolution is cyclic through `{0}`")]
    CyclicCharts(String),
    #[error("formula of edge `{0}` has too many atoms for explicit Segre generators")]
    TooManyAtoms(String),
    #[error(transparent)]
    Net(#[from] NetError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SchemeOptions {
    pub truncation: u32,
}

impl Default for SchemeOptions {
    fn default() -> Self {
        SchemeOptions { truncation: 1 }
    }
}

/// Chart on the Grassmannian of the degree-`truncation` slice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChartSelection {
    pub truncation: u32,
    pub atoms: usize,
    pub pivots: Vec<usize>,
    pub basis: Vec<usize>,
}

impl ChartSelection {
    fn from_pivots(truncation: u32, atoms: usize, pivots: BTreeSet<usize>) -> Self {
        let n = slice_size(truncation, atoms);
        let basis = (0..n).filter(|i| !pivots.contains(i)).collect();
        ChartSelection { truncation, atoms, pivots: pivots.into_iter().collect(), basis }
    }

    /// Single pivot at the tuple `(t, 0, .., 0)`.
    fn hyperplane(truncation: u32, atoms: usize) -> Self {
        Self::from_pivots(truncation, atoms, [truncation as usize].into_iter().collect())
    }

    pub fn slice_size(&self) -> usize {
        slice_size(self.truncation, self.atoms)
    }

    /// Dimension of the quotient, `h(t)` for the component.
    pub fn h(&self) -> usize {
        self.basis.len()
    }

    pub fn param_count(&self) -> usize {
        self.pivots.len() * self.basis.len()
    }

    /// 1-based parameter number of `(pivot, basis)`.
    pub fn param_number(&self, pivot: usize, basis: usize) -> Option<usize> {
        let pi = self.pivots.iter().position(|&p| p == pivot)?;
        let bi = self.basis.iter().position(|&b| b == basis)?;
        Some(pi * self.basis.len() + bi + 1)
    }

    /// `(pivot, basis)` for each parameter, in parameter order.
    pub fn param_pairs(&self) -> Vec<(usize, usize)> {
        self.pivots.iter().flat_map(|&p| self.basis.iter().map(move |&b| (p, b))).collect()
    }

    /// The same chart seen through the dual formula, whose atoms come in reverse order.
    pub fn reversed(&self) -> Self {
        let pivots = self.pivots.iter().map(|&p| reverse_index(p, self.truncation, self.atoms)).collect();
        Self::from_pivots(self.truncation, self.atoms, pivots)
    }
}

pub fn slice_size(t: u32, atoms: usize) -> usize {
    (t as usize + 1).pow(atoms as u32)
}

/// Unprimed exponents of the slice monomial with this index.
pub fn slice_tuple(mut index: usize, t: u32, atoms: usize) -> Vec<u32> {
    let base = t as usize + 1;
    (0..atoms)
        .map(|_| {
            let k = index % base;
            index /= base;
            k as u32
        })
        .collect()
}

pub fn slice_index(tuple: &[u32], t: u32) -> usize {
    tuple.iter().rev().fold(0, |acc, &k| acc * (t as usize + 1) + k as usize)
}

fn reverse_index(index: usize, t: u32, atoms: usize) -> usize {
    let mut k = slice_tuple(index, t, atoms);
    k.reverse();
    slice_index(&k, t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VarClass {
    Unprimed,
    Primed,
    Param,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VarInfo {
    pub name: String,
    pub edge: String,
    pub class: VarClass,
    /// Atom occurrence for coordinates, parameter number for chart parameters.
    pub block: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EdgeCoords {
    /// `(unprimed, primed)` per atom occurrence.
    Linear { atoms: Vec<(String, String)> },
    Exponential { chart: ChartSelection, params: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VariableRegistry {
    pub truncation: u32,
    pub edges: BTreeMap<String, EdgeCoords>,
    pub vars: Vec<VarInfo>,
}

impl VariableRegistry {
    pub fn ring(&self) -> Ring {
        Ring::new(self.vars.iter().map(|v| v.name.clone())).expect("registry names are distinct")
    }

    pub fn coords(&self, edge: &str) -> &EdgeCoords {
        &self.edges[edge]
    }

    /// Unprimed atom variables or chart parameters of an edge.
    pub fn edge_vars(&self, edge: &str) -> Vec<String> {
        match &self.edges[edge] {
            EdgeCoords::Linear { atoms } => atoms.iter().map(|(x, _)| x.clone()).collect(),
            EdgeCoords::Exponential { params, .. } => params.clone(),
        }
    }

    pub fn chart(&self, edge: &str) -> Option<&ChartSelection> {
        match &self.edges[edge] {
            EdgeCoords::Exponential { chart, .. } => Some(chart),
            EdgeCoords::Linear { .. } => None,
        }
    }

    pub fn info(&self, name: &str) -> Option<&VarInfo> {
        self.vars.iter().find(|v| v.name == name)
    }
}

pub fn atom_var_names(edge: &str, atoms: usize) -> Vec<(String, String)> {
    if atoms == 1 {
        return vec![(edge.to_string(), format!("{edge}'"))];
    }
    (1..=atoms).map(|i| (format!("{edge}_{i}"), format!("{edge}_{i}'"))).collect()
}

pub fn param_name(edge: &str, k: usize) -> String {
    format!("{edge}_y{k}")
}

/// Exponential edges joined by contraction, auxiliary doors, cuts and axioms. Each
/// member records whether its atom order is reversed relative to the root.
struct Families {
    parent: HashMap<String, (String, bool)>,
}

impl Families {
    fn find(&mut self, e: &str) -> (String, bool) {
        let (p, flip) = self.parent[e].clone();
        if p == e {
            return (p, false);
        }
        let (root, f2) = self.find(&p);
        let total = flip ^ f2;
        self.parent.insert(e.to_string(), (root.clone(), total));
        (root, total)
    }

    fn union(&mut self, a: &str, b: &str, flip: bool) -> Result<(), SchemeError> {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            if pa ^ pb != flip {
                return Err(SchemeError::ChartMismatch(format!("edges `{a}` and `{b}` are joined with inconsistent atom orders")));
            }
            return Ok(());
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent.insert(hi, (lo, pa ^ pb ^ flip));
        Ok(())
    }

    fn build(net: &ProofNet) -> Result<Self, SchemeError> {
        let mut fam = Families { parent: HashMap::new() };
        for (id, f) in net.edges() {
            if f.is_exponential() {
                fam.parent.insert(id.clone(), (id.clone(), false));
            }
        }
        for l in net.links().values() {
            match l.kind {
                LinkKind::Ctr => {
                    fam.union(&l.premises[0], &l.conclusions[0], false)?;
                    fam.union(&l.premises[1], &l.conclusions[0], false)?;
                }
                LinkKind::Pax => fam.union(&l.premises[0], &l.conclusions[0], false)?,
                LinkKind::Cut if net.formula(&l.premises[0]).is_exponential() => fam.union(&l.premises[0], &l.premises[1], true)?,
                LinkKind::Ax if net.formula(&l.conclusions[0]).is_exponential() => {
                    fam.union(&l.conclusions[0], &l.conclusions[1], true)?
                }
                _ => {}
            }
        }
        Ok(fam)
    }
}

/// A box chart together with its reduced slice relations, one row per pivot.
#[derive(Clone, Debug)]
struct BoxChart {
    chart: ChartSelection,
    ring: Ring,
    rows: Vec<(usize, Vec<Polynomial>)>,
}

/// One monomial term of a slice relation: coefficient and, per block, (unprimed
/// exponent, degree). Blocks of degree below `t` are filled in by every completion.
type RelTerm = (Polynomial, Vec<(u32, u32)>);

struct ChartResolver<'a> {
    net: &'a ProofNet,
    t: u32,
    fam: Families,
    members: BTreeMap<String, Vec<String>>,
    family_charts: HashMap<String, ChartSelection>,
    box_charts: HashMap<String, BoxChart>,
    in_progress: HashSet<String>,
}

impl<'a> ChartResolver<'a> {
    fn new(net: &'a ProofNet, t: u32) -> Result<Self, SchemeError> {
        let mut fam = Families::build(net)?;
        let mut members: BTreeMap<String, Vec<String>> = BTreeMap::new();
        let ids: Vec<String> = fam.parent.keys().cloned().collect();
        for e in ids {
            let (root, _) = fam.find(&e);
            members.entry(root).or_default().push(e);
        }
        for ms in members.values_mut() {
            ms.sort();
            let m = body_atoms(net.formula(&ms[0]));
            if let Some(bad) = ms.iter().find(|e| body_atoms(net.formula(e)) != m) {
                return Err(SchemeError::ChartMismatch(format!("edges `{}` and `{bad}` have different atom counts", ms[0])));
            }
        }
        Ok(ChartResolver { net, t, fam, members, family_charts: HashMap::new(), box_charts: HashMap::new(), in_progress: HashSet::new() })
    }

    fn edge_chart(&mut self, e: &str) -> Result<ChartSelection, SchemeError> {
        let (root, flip) = self.fam.find(e);
        let c = self.family_chart(&root)?;
        Ok(if flip { c.reversed() } else { c })
    }

    fn family_chart(&mut self, root: &str) -> Result<ChartSelection, SchemeError> {
        if let Some(c) = self.family_charts.get(root) {
            return Ok(c.clone());
        }
        if !self.in_progress.insert(root.to_string()) {
            return Err(SchemeError::CyclicCharts(root.to_string()));
        }
        let members = self.members[root].clone();
        let mut chosen: Option<(String, ChartSelection)> = None;
        for e in &members {
            let producer = self.net.producer(e);
            if producer.kind != LinkKind::Prom {
                continue;
            }
            let prom = producer.id.clone();
            let local = self.box_chart(&prom)?.chart;
            let (_, flip) = self.fam.find(e);
            let in_root = if flip { local.reversed() } else { local };
            match &chosen {
                Some((other, c)) if c != &in_root => {
                    return Err(SchemeError::ChartMismatch(format!("boxes `{other}` and `{prom}` select different charts on one family")));
                }
                Some(_) => {}
                None => chosen = Some((prom, in_root)),
            }
        }
        let chart = match chosen {
            Some((_, c)) => c,
            None => {
                // Hyperplane chart in the coordinates of the first ?-edge.
                let frame = members.iter().find(|e| matches!(self.net.formula(e), Formula::Quest(_))).unwrap_or(&members[0]).clone();
                let (_, flip) = self.fam.find(&frame);
                let c = ChartSelection::hyperplane(self.t, body_atoms(self.net.formula(&frame)));
                if flip {
                    c.reversed()
                } else {
                    c
                }
            }
        };
        self.in_progress.remove(root);
        self.family_charts.insert(root.to_string(), chart.clone());
        Ok(chart)
    }

    fn box_chart(&mut self, prom: &str) -> Result<BoxChart, SchemeError> {
        if let Some(b) = self.box_charts.get(prom) {
            return Ok(b.clone());
        }
        let net = self.net;
        let t = self.t;
        let bx = net.box_with_prom(prom).expect("prom closes a box").clone();
        let promoted = net.link(prom).premises[0].clone();
        let mb = net.formula(&promoted).atom_count();
        let paths = persistent_paths(&linear_part(&box_interior(net, &bx)?)?)?;

        let mut diagonals = Vec::new();
        let mut der_map: HashMap<(String, usize), usize> = HashMap::new();
        for path in &paths {
            let ends = [&path[0], &path[path.len() - 1]];
            let kinds: Vec<Option<(Option<String>, usize)>> = ends
                .iter()
                .map(|o| {
                    if o.edge == promoted {
                        Some((None, o.index))
                    } else {
                        let c = net.consumer(&o.edge);
                        (c.kind == LinkKind::Der).then(|| (Some(c.id.clone()), o.index))
                    }
                })
                .collect();
            match (&kinds[0], &kinds[1]) {
                (Some((None, i)), Some((None, j))) => diagonals.push((*i, *j)),
                (Some((Some(d), k)), Some((None, i))) | (Some((None, i)), Some((Some(d), k))) => {
                    der_map.insert((d.clone(), *k), *i);
                }
                _ => {
                    let shown: Vec<String> = path.iter().map(|o| format!("{}[{}]", o.edge, o.index)).collect();
                    return Err(SchemeError::NotShallow(format!("box `{prom}`: path {} does not end on the promoted formula", shown.join(" - "))));
                }
            }
        }

        let ders: Vec<_> = bx.interior.iter().map(|id| net.link(id)).filter(|l| l.kind == LinkKind::Der).cloned().collect();
        let mut der_charts = Vec::new();
        let mut names = Vec::new();
        for d in &ders {
            let chart = self.edge_chart(&d.conclusions[0])?;
            names.extend((1..=chart.param_count()).map(|k| param_name(&d.conclusions[0], k)));
            der_charts.push(chart);
        }
        let ring = Ring::new(names)?;
        let n = ring.len();
        let one = Polynomial::one(n);

        let mut relations: Vec<Vec<RelTerm>> = Vec::new();
        for &(i, j) in &diagonals {
            let mut a = vec![(0, 0); mb];
            let mut b = vec![(0, 0); mb];
            a[i] = (1, 1);
            a[j] = (0, 1);
            b[i] = (0, 1);
            b[j] = (1, 1);
            relations.push(vec![(one.clone(), a), (-&one, b)]);
        }
        for (d, chart) in ders.iter().zip(&der_charts) {
            let md = net.formula(&d.premises[0]).atom_count();
            let mut target = Vec::with_capacity(md);
            for k in 0..md {
                let i = der_map.get(&(d.id.clone(), k)).ok_or_else(|| {
                    SchemeError::NotShallow(format!("box `{prom}`: atom {k} of dereliction `{}` has no path to the promoted formula", d.id))
                })?;
                target.push(*i);
            }
            let place = |index: usize| {
                let mut blocks = vec![(0, 0); mb];
                for (k, e) in slice_tuple(index, t, md).into_iter().enumerate() {
                    blocks[target[k]] = (e, t);
                }
                blocks
            };
            for &p in &chart.pivots {
                let mut terms = vec![(one.clone(), place(p))];
                for &b in &chart.basis {
                    let y = ring.var(&param_name(&d.conclusions[0], chart.param_number(p, b).unwrap()))?;
                    terms.push((-&y, place(b)));
                }
                relations.push(terms);
            }
        }

        let size = slice_size(t, mb);
        let mut rows = Vec::new();
        for rel in &relations {
            let free: Vec<u32> = (0..mb).map(|blk| t - rel[0].1[blk].1).collect();
            for fill in 0..free.iter().map(|&f| f as usize + 1).product::<usize>() {
                let mut rest = fill;
                let add: Vec<u32> = free
                    .iter()
                    .map(|&f| {
                        let a = rest % (f as usize + 1);
                        rest /= f as usize + 1;
                        a as u32
                    })
                    .collect();
                let mut row = vec![Polynomial::zero(n); size];
                for (c, blocks) in rel {
                    let tuple: Vec<u32> = blocks.iter().zip(&add).map(|(&(e, _), &a)| e + a).collect();
                    let idx = slice_index(&tuple, t);
                    row[idx] = &row[idx] + c;
                }
                rows.push(row);
            }
        }
        let reduced = constant_pivot_rref(rows, size).ok_or_else(|| SchemeError::DegenerateSlice(prom.to_string()))?;
        let pivots = reduced.iter().map(|(p, _)| *p).collect();
        let chart = ChartSelection::from_pivots(t, mb, pivots);
        let out = BoxChart { chart, ring, rows: reduced };
        self.box_charts.insert(prom.to_string(), out.clone());
        Ok(out)
    }
}

fn body_atoms(f: &Formula) -> usize {
    f.modal_body().unwrap_or(f).atom_count()
}

/// Row reduction that only ever divides by nonzero constants. Pivots are taken at the
/// highest column holding a constant entry. `None` if rows remain without one.
fn constant_pivot_rref(rows: Vec<Vec<Polynomial>>, width: usize) -> Option<Vec<(usize, Vec<Polynomial>)>> {
    let nonzero = |r: &Vec<Polynomial>| r.iter().any(|x| !x.is_zero());
    let mut rows: Vec<Vec<Polynomial>> = rows.into_iter().filter(nonzero).collect();
    let mut done: Vec<(usize, Vec<Polynomial>)> = Vec::new();
    while !rows.is_empty() {
        let mut best: Option<(usize, usize)> = None;
        for (r, row) in rows.iter().enumerate() {
            if let Some(c) = (0..width).rev().find(|&c| !row[c].is_zero() && row[c].is_constant()) {
                if best.map_or(true, |(bc, _)| c > bc) {
                    best = Some((c, r));
                }
            }
        }
        let (c, r) = best?;
        let row = rows.remove(r);
        let inv = BigRational::one() / row[c].constant_term();
        let row: Vec<Polynomial> = row.iter().map(|x| x.scale(&inv)).collect();
        for other in rows.iter_mut().chain(done.iter_mut().map(|(_, r)| r)) {
            let f = other[c].clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..width {
                if !row[j].is_zero() {
                    other[j] = &other[j] - &(&f * &row[j]);
                }
            }
        }
        rows.retain(nonzero);
        done.push((c, row));
    }
    done.sort_by_key(|(c, _)| *c);
    Some(done)
}

/// A compiled net: registry, ring and the data needed to emit each link's generators.
#[derive(Clone, Debug)]
pub struct NetScheme {
    net: ProofNet,
    registry: VariableRegistry,
    ring: Ring,
    /// Promotion link id to (pivot, slice row) in `ring`.
    prom_rows: HashMap<String, Vec<(usize, Vec<Polynomial>)>>,
}

impl NetScheme {
    pub fn build(net: &ProofNet, opts: &SchemeOptions) -> Result<Self, SchemeError> {
        if opts.truncation == 0 {
            return Err(SchemeError::ChartMismatch("truncation degree must be at least 1".into()));
        }
        let report = validate_shallow(net);
        if let Some(v) = report.violations.first() {
            return Err(SchemeError::NotShallow(format!("{:?} at `{}`: {}", v.rule, v.location, v.detail)));
        }
        let mut res = ChartResolver::new(net, opts.truncation)?;
        let roots: Vec<String> = res.members.keys().cloned().collect();
        for r in &roots {
            res.family_chart(r)?;
        }
        let mut edges = BTreeMap::new();
        let mut vars = Vec::new();
        for (id, f) in net.edges() {
            if f.is_exponential() {
                let chart = res.edge_chart(id)?;
                let params: Vec<String> = (1..=chart.param_count()).map(|k| param_name(id, k)).collect();
                for (k, p) in params.iter().enumerate() {
                    vars.push(VarInfo { name: p.clone(), edge: id.clone(), class: VarClass::Param, block: k + 1 });
                }
                edges.insert(id.clone(), EdgeCoords::Exponential { chart, params });
            } else {
                let atoms = atom_var_names(id, f.atom_count());
                for (i, (x, xp)) in atoms.iter().enumerate() {
                    vars.push(VarInfo { name: x.clone(), edge: id.clone(), class: VarClass::Unprimed, block: i });
                    vars.push(VarInfo { name: xp.clone(), edge: id.clone(), class: VarClass::Primed, block: i });
                }
                edges.insert(id.clone(), EdgeCoords::Linear { atoms });
            }
        }
        let registry = VariableRegistry { truncation: opts.truncation, edges, vars };
        let ring = Ring::new(registry.vars.iter().map(|v| v.name.clone()))?;
        let mut prom_rows = HashMap::new();
        for b in net.boxes() {
            let bc = res.box_chart(&b.prom)?;
            let map: Vec<Option<usize>> = bc.ring.names().iter().map(|n| ring.index_of(n)).collect();
            let rows = bc
                .rows
                .iter()
                .map(|(p, row)| {
                    let moved = row.iter().map(|x| x.remap(&map, ring.len()).expect("box parameters are registered")).collect();
                    (*p, moved)
                })
                .collect();
            prom_rows.insert(b.prom.clone(), rows);
        }
        Ok(NetScheme { net: net.clone(), registry, ring, prom_rows })
    }

    pub fn net(&self) -> &ProofNet {
        &self.net
    }

    pub fn registry(&self) -> &VariableRegistry {
        &self.registry
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    fn var(&self, name: &str) -> Polynomial {
        self.ring.var(name).expect("registered variable")
    }

    fn atom_pairs(&self, edge: &str) -> Vec<(usize, usize)> {
        match self.registry.coords(edge) {
            EdgeCoords::Linear { atoms } => {
                atoms.iter().map(|(x, xp)| (self.ring.index_of(x).unwrap(), self.ring.index_of(xp).unwrap())).collect()
            }
            EdgeCoords::Exponential { .. } => panic!("edge `{edge}` is exponential"),
        }
    }

    /// Slice monomial of a linear edge.
    fn slice_monomial(&self, edge: &str, index: usize) -> Polynomial {
        let pairs = self.atom_pairs(edge);
        let t = self.registry.truncation;
        let mut e = vec![0; self.ring.len()];
        for ((x, xp), k) in pairs.iter().zip(slice_tuple(index, t, pairs.len())) {
            e[*x] += k;
            e[*xp] += t - k;
        }
        Polynomial::monomial(Monomial(e), BigRational::one())
    }

    fn params(&self, edge: &str) -> (&ChartSelection, &[String]) {
        match self.registry.coords(edge) {
            EdgeCoords::Exponential { chart, params } => (chart, params),
            EdgeCoords::Linear { .. } => panic!("edge `{edge}` is linear"),
        }
    }

    /// `u_k - v_k` for parameters of equal charts.
    fn param_equalities(&self, u: &str, v: &str) -> Vec<Polynomial> {
        let (_, pu) = self.params(u);
        let (_, pv) = self.params(v);
        pu.iter().zip(pv).map(|(a, b)| &self.var(a) - &self.var(b)).collect()
    }

    /// Parameter equalities across a cut or axiom between dual exponential edges.
    fn dual_param_equalities(&self, u: &str, v: &str) -> Vec<Polynomial> {
        let (cu, pu) = self.params(u);
        let (cv, pv) = self.params(v);
        let (t, m) = (cu.truncation, cu.atoms);
        cu.param_pairs()
            .iter()
            .zip(pu)
            .map(|(&(p, b), name)| {
                let k = cv.param_number(reverse_index(p, t, m), reverse_index(b, t, m)).expect("dual charts correspond");
                &self.var(name) - &self.var(&pv[k - 1])
            })
            .collect()
    }

    /// Minors identifying atom `i` of `u` with atom `m-1-i` of its dual `v`.
    fn diagonal(&self, u: &str, v: &str) -> Vec<Polynomial> {
        let pu = self.atom_pairs(u);
        let pv = self.atom_pairs(v);
        let m = pu.len();
        (0..m)
            .map(|i| {
                let (x, xp) = pu[i];
                let (y, yp) = pv[m - 1 - i];
                &self.mono(&[x, yp]) - &self.mono(&[xp, y])
            })
            .collect()
    }

    fn mono(&self, vars: &[usize]) -> Polynomial {
        let mut e = vec![0; self.ring.len()];
        for &v in vars {
            e[v] += 1;
        }
        Polynomial::monomial(Monomial(e), BigRational::one())
    }

    pub fn link_ideal(&self, id: &str) -> Result<Vec<Polynomial>, SchemeError> {
        let l = self.net.link(id);
        let exp = |e: &str| self.net.formula(e).is_exponential();
        Ok(match l.kind {
            LinkKind::Ax if exp(&l.conclusions[0]) => self.dual_param_equalities(&l.conclusions[0], &l.conclusions[1]),
            LinkKind::Ax => self.diagonal(&l.conclusions[0], &l.conclusions[1]),
            LinkKind::Cut if exp(&l.premises[0]) => self.dual_param_equalities(&l.premises[0], &l.premises[1]),
            LinkKind::Cut => self.diagonal(&l.premises[0], &l.premises[1]),
            LinkKind::Tensor | LinkKind::Par => {
                let c = &l.conclusions[0];
                let conc = self.atom_pairs(c);
                if conc.len() > MAX_SEGRE_ATOMS {
                    return Err(SchemeError::TooManyAtoms(c.clone()));
                }
                let mut prem = self.atom_pairs(&l.premises[0]);
                prem.extend(self.atom_pairs(&l.premises[1]));
                let primed = |pairs: &[(usize, usize)], s: u32| -> Vec<usize> {
                    pairs.iter().enumerate().map(|(i, &(x, xp))| if s & (1 << i) != 0 { x } else { xp }).collect()
                };
                (1..(1u32 << conc.len()))
                    .map(|s| {
                        let lhs = [primed(&conc, s), primed(&prem, 0)].concat();
                        let rhs = [primed(&conc, 0), primed(&prem, s)].concat();
                        &self.mono(&lhs) - &self.mono(&rhs)
                    })
                    .collect()
            }
            LinkKind::Der => {
                let a = &l.premises[0];
                let (chart, params) = self.params(&l.conclusions[0]);
                chart
                    .pivots
                    .iter()
                    .map(|&p| {
                        let mut g = self.slice_monomial(a, p);
                        for &b in &chart.basis {
                            let y = self.var(&params[chart.param_number(p, b).unwrap() - 1]);
                            g = &g - &(&y * &self.slice_monomial(a, b));
                        }
                        g
                    })
                    .collect()
            }
            LinkKind::Prom => {
                let (chart, params) = self.params(&l.conclusions[0]);
                let mut out = Vec::new();
                for (p, row) in &self.prom_rows[id] {
                    for &b in &chart.basis {
                        let z = self.var(&params[chart.param_number(*p, b).unwrap() - 1]);
                        out.push(&z + &row[b]);
                    }
                }
                out
            }
            LinkKind::Ctr => {
                let mut out = self.param_equalities(&l.premises[0], &l.conclusions[0]);
                out.extend(self.param_equalities(&l.premises[1], &l.conclusions[0]));
                out
            }
            LinkKind::Pax => self.param_equalities(&l.premises[0], &l.conclusions[0]),
            LinkKind::Weak => vec![Polynomial::one(self.ring.len())],
            LinkKind::Conc => vec![],
        })
    }

    /// Sum of all link ideals, links in id order.
    pub fn ideal(&self) -> Result<Ideal, SchemeError> {
        let mut gens = Vec::new();
        for id in self.net.links().keys() {
            gens.extend(self.link_ideal(id)?);
        }
        Ok(Ideal::new(self.ring.clone(), gens))
    }
}

pub fn net_ideal(net: &ProofNet, opts: &SchemeOptions) -> Result<(Ideal, VariableRegistry), SchemeError> {
    let s = NetScheme::build(net, opts)?;
    Ok((s.ideal()?, s.registry))
}

/// Chart selected by the box closed by `prom`, in the coordinates of its promoted formula.
pub fn chart_for_box(net: &ProofNet, prom: &str, opts: &SchemeOptions) -> Result<ChartSelection, SchemeError> {
    let mut res = ChartResolver::new(net, opts.truncation)?;
    Ok(res.box_chart(prom)?.chart)
}

/// Generators whose degree differs between the two variables of some atom block.
pub fn non_multihomogeneous(ideal: &Ideal, registry: &VariableRegistry) -> Vec<usize> {
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for coords in registry.edges.values() {
        if let EdgeCoords::Linear { atoms } = coords {
            for (x, xp) in atoms {
                blocks.push(vec![ideal.ring.index_of(x).unwrap(), ideal.ring.index_of(xp).unwrap()]);
            }
        }
    }
    ideal
        .gens
        .iter()
        .enumerate()
        .filter(|(_, g)| {
            blocks.iter().any(|b| {
                let degs: BTreeSet<u32> = g.terms().iter().map(|(m, _)| b.iter().map(|&i| m.0[i]).sum()).collect();
                degs.len() > 1
            })
        })
        .map(|(i, _)| i)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::{church_cut_against_zero, RawNet};
    use crate::poly::{format_polynomial, MonomialOrder};

    fn shown(s: &NetScheme, id: &str) -> Vec<String> {
        s.link_ideal(id).unwrap().iter().map(|p| format_polynomial(s.ring(), p, &MonomialOrder::Grevlex)).collect()
    }

    #[test]
    fn slice_indexing() {
        assert_eq!(slice_tuple(2, 1, 2), [0, 1]);
        assert_eq!(slice_index(&[1, 0], 1), 1);
        assert_eq!(reverse_index(1, 1, 2), 2);
        for i in 0..27 {
            assert_eq!(slice_index(&slice_tuple(i, 2, 3), 2), i);
        }
    }

    #[test]
    fn promoted_identity_selects_third_basis_vector() {
        let net = church_cut_against_zero(2);
        let chart = chart_for_box(&net, "zero.prom", &SchemeOptions::default()).unwrap();
        assert_eq!(chart.pivots, [2]);
        assert_eq!(chart.basis, [0, 1, 3]);
        let s = NetScheme::build(&net, &SchemeOptions::default()).unwrap();
        assert_eq!(shown(&s, "zero.prom"), ["l_y1", "l_y2 - 1", "l_y3"]);
    }

    #[test]
    fn link_generators_match_hand_derivation() {
        let net = church_cut_against_zero(2);
        let s = NetScheme::build(&net, &SchemeOptions::default()).unwrap();
        assert_eq!(shown(&s, "ax1"), ["-a'*b + a*b'"]);
        assert_eq!(shown(&s, "der1"), ["-g_1'*g_2'*i_y1 - g_1'*g_2*i_y2 - g_1*g_2*i_y3 + g_1*g_2'"]);
        assert_eq!(shown(&s, "t1"), ["b'*c'*g_1*g_2' - b*c'*g_1'*g_2'", "b'*c'*g_1'*g_2 - b'*c*g_1'*g_2'", "b'*c'*g_1*g_2 - b*c*g_1'*g_2'"]);
        assert_eq!(s.link_ideal("ctr1").unwrap().len(), 6);
        assert_eq!(s.link_ideal("cut").unwrap().len(), 3);
        let (ideal, reg) = net_ideal(&net, &SchemeOptions::default()).unwrap();
        assert_eq!(ideal.gens.len(), 4 + 9 + 2 + 3 + 9);
        assert!(non_multihomogeneous(&ideal, &reg).is_empty());
    }

    #[test]
    fn weakening_is_the_unit_ideal() {
        let mut raw = RawNet::default();
        raw.edge("w", "?X");
        raw.link("weak", LinkKind::Weak, &[], &["w"]).link("conc.w", LinkKind::Conc, &["w"], &[]);
        let (ideal, reg) = net_ideal(&raw.build().unwrap(), &SchemeOptions::default()).unwrap();
        assert!(ideal.is_unit());
        assert_eq!(reg.chart("w").unwrap().param_count(), 1);
    }

    #[test]
    fn constant_pivot_rref_prefers_high_columns() {
        let one = Polynomial::one(0);
        let z = Polynomial::zero(0);
        let rows = vec![vec![z.clone(), one.clone(), -&one, z.clone()]];
        let out = constant_pivot_rref(rows, 4).unwrap();
        assert_eq!(out[0].0, 2);
        assert_eq!(out[0].1[1], -&one);
    }
}
