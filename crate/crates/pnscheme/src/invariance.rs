//! Eliminated conclusion ideals and their comparison across reduction steps.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::net::{church, LinkKind, ProofNet};
use crate::poly::{buchberger, dehomogenize, eliminate, format_ideal, ideal_equal, Ideal, MonomialOrder, PolyError, Polynomial, Ring};
use crate::poly::{Limits, Monomial};
use crate::reduction::{find_redexes, normalize, reduce_step, EdgeCorrespondence, ReductionError, Restriction, Strategy};
use crate::scheme::{slice_tuple, EdgeCoords, NetScheme, SchemeError, SchemeOptions, VariableRegistry};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvarianceError {
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error("unexpected shape: {0}")]
    ShapeMismatch(String),
    #[error("conclusions do not correspond: {0}")]
    ConclusionMismatch(String),
}

impl InvarianceError {
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            InvarianceError::Poly(PolyError::ResourceLimit(_)) | InvarianceError::Reduction(ReductionError::FuelExhausted(_))
        )
    }
}

fn is_primed(name: &str) -> bool {
    name.ends_with('\'')
}

/// Unprimed atom variables of linear conclusions and chart parameters of exponential
/// ones, in registry order.
pub fn conclusion_vars(net: &ProofNet, registry: &VariableRegistry) -> Vec<String> {
    let conc: BTreeSet<String> = net.conclusions().into_values().collect();
    registry
        .vars
        .iter()
        .filter(|v| conc.contains(&v.edge) && !is_primed(&v.name))
        .map(|v| v.name.clone())
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormalSemantics {
    pub conclusion_vars: Vec<String>,
    /// Reduced grevlex basis in the ring of conclusion variables.
    pub basis: Ideal,
    pub empty: bool,
    pub registry: VariableRegistry,
}

impl NormalSemantics {
    pub fn basis_text(&self) -> Vec<String> {
        basis_lines(&self.basis)
    }
}

fn basis_lines(ideal: &Ideal) -> Vec<String> {
    format_ideal(ideal, &MonomialOrder::Grevlex).lines().filter(|l| !l.starts_with('#')).map(str::to_string).collect()
}

/// Net ideal, dehomogenized, with everything but the conclusion variables eliminated.
pub fn normal_semantics(net: &ProofNet, opts: &SchemeOptions, limits: Limits) -> Result<NormalSemantics, InvarianceError> {
    let scheme = NetScheme::build(net, opts)?;
    let ideal = dehomogenize(&scheme.ideal()?, is_primed);
    let keep = conclusion_vars(net, scheme.registry());
    let basis = eliminate(&ideal, &keep, limits)?;
    let empty = basis.is_unit();
    Ok(NormalSemantics { conclusion_vars: keep, basis, empty, registry: scheme.registry().clone() })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChurchPower {
    pub n: usize,
    pub x: String,
    pub z: String,
    /// Parameter standing for the contracted dereliction block; absent for `n = 0`.
    pub phi: Option<String>,
    pub relation: String,
}

/// The relation `x - phi^n z` read off the standalone numeral. Only the parameter
/// whose basis monomial has the pivot's unprimed degree is kept; the others are set
/// to zero, which restricts every chart to its linear sub-chart.
pub fn church_power(n: usize, limits: Limits) -> Result<ChurchPower, InvarianceError> {
    let net = church(n);
    let scheme = NetScheme::build(&net, &SchemeOptions::default())?;
    let reg = scheme.registry();
    let mut ideal = dehomogenize(&scheme.ideal()?, is_primed);
    let (x, z, phi) = if n == 0 {
        let atoms = reg.edge_vars("c");
        (atoms[0].clone(), atoms[1].clone(), None)
    } else {
        let conc = net.conclusions();
        let root = conc.values().find(|e| net.formula(e).is_exponential()).expect("numeral has an exponential conclusion").clone();
        let (first, last) = (crate::net::letter(0), crate::net::letter(2 * n + 1));
        let mut phi = None;
        for (edge, coords) in &reg.edges {
            let EdgeCoords::Exponential { chart, params } = coords else { continue };
            let degree = |i: usize| slice_tuple(i, chart.truncation, chart.atoms).iter().sum::<u32>();
            for ((p, b), name) in chart.param_pairs().into_iter().zip(params) {
                if degree(b) != degree(p) {
                    let v = ideal.ring.index_of(name).unwrap();
                    let zero = Polynomial::zero(ideal.ring.len());
                    ideal = Ideal::new(ideal.ring.clone(), ideal.gens.iter().map(|g| g.substitute(v, &zero)).collect());
                } else if edge == &root {
                    if phi.is_some() {
                        return Err(InvarianceError::ShapeMismatch("linear sub-chart has more than one parameter".into()));
                    }
                    phi = Some(name.clone());
                }
            }
        }
        (reg.edge_vars(&first)[0].clone(), reg.edge_vars(&last)[0].clone(), phi)
    };
    let mut keep = vec![x.clone(), z.clone()];
    keep.extend(phi.clone());
    let basis = eliminate(&ideal, &keep, limits)?;
    let ring = &basis.ring;
    let var = |s: &str| ring.var(s).unwrap();
    let mut target = var(&z);
    if let Some(p) = &phi {
        target = &var(p).pow(n as u32) * &target;
    }
    let target = &var(&x) - &target;
    let shown = basis_lines(&basis).join(", ");
    let [g] = basis.gens.as_slice() else {
        return Err(InvarianceError::ShapeMismatch(format!("expected one relation, got [{}]", shown)));
    };
    if !unit_multiple(g, &target) {
        return Err(InvarianceError::ShapeMismatch(format!("relation `{}` is not x - phi^{n} z", shown)));
    }
    Ok(ChurchPower { n, x, z, phi, relation: shown })
}

fn unit_multiple(g: &Polynomial, target: &Polynomial) -> bool {
    let Some((m, c)) = target.terms().first() else { return g.is_zero() };
    let Some(gc) = g.terms().iter().find(|(gm, _)| gm == m).map(|(_, c)| c.clone()) else { return false };
    if gc.is_zero() {
        return false;
    }
    let ratio: BigRational = c / gc;
    &g.scale(&ratio) == target
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SemanticsSummary {
    pub conclusion_vars: Vec<String>,
    pub basis: Vec<String>,
    pub empty: bool,
}

impl From<&NormalSemantics> for SemanticsSummary {
    fn from(s: &NormalSemantics) -> Self {
        SemanticsSummary { conclusion_vars: s.conclusion_vars.clone(), basis: s.basis_text(), empty: s.empty }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvarianceReport {
    pub steps: usize,
    pub kinds: Vec<String>,
    pub restriction: Restriction,
    pub before: SemanticsSummary,
    pub after: SemanticsSummary,
    /// Basis of the reduct in the input's conclusion variables.
    pub after_renamed: Vec<String>,
    /// Conclusion variable of the reduct to the one of the input it is compared with.
    pub renaming: BTreeMap<String, String>,
    pub equal: bool,
}

/// Renaming of the reduct's conclusion variables, matched through the Conc link each
/// conclusion edge hangs from. The backward correspondence must agree where it tracks
/// the edge.
fn conclusion_renaming(
    before: &ProofNet,
    rb: &VariableRegistry,
    after: &ProofNet,
    ra: &VariableRegistry,
    corr: &EdgeCorrespondence,
) -> Result<BTreeMap<String, String>, InvarianceError> {
    let cb = before.conclusions();
    let ca = after.conclusions();
    if cb.keys().ne(ca.keys()) {
        return Err(InvarianceError::ConclusionMismatch(format!(
            "conclusion links {:?} vs {:?}",
            cb.keys().collect::<Vec<_>>(),
            ca.keys().collect::<Vec<_>>()
        )));
    }
    let mut map = BTreeMap::new();
    for (link, e_after) in &ca {
        let e_before = &cb[link];
        if before.formula(e_before) != after.formula(e_after) {
            return Err(InvarianceError::ConclusionMismatch(format!("`{link}` changes formula")));
        }
        if let Some(origin) = corr.backward.get(e_after) {
            let tracked = origin.edge();
            if before.edges().contains_key(tracked) && before.consumer(tracked).kind == LinkKind::Conc && tracked != e_before {
                return Err(InvarianceError::ConclusionMismatch(format!("`{e_after}` traces back to `{tracked}`, not `{e_before}`")));
            }
        }
        if rb.chart(e_before) != ra.chart(e_after) {
            return Err(InvarianceError::Scheme(SchemeError::ChartMismatch(format!(
                "conclusion `{link}` carries different charts before and after"
            ))));
        }
        for (a, b) in ra.edge_vars(e_after).into_iter().zip(rb.edge_vars(e_before)) {
            map.insert(a, b);
        }
    }
    Ok(map)
}

/// Compares normal semantics of `before` and `after`, where `corr` leads from one to the other.
pub fn compare(
    before: &ProofNet,
    after: &ProofNet,
    corr: &EdgeCorrespondence,
    opts: &SchemeOptions,
    limits: Limits,
) -> Result<InvarianceReport, InvarianceError> {
    let sb = normal_semantics(before, opts, limits)?;
    let sa = normal_semantics(after, opts, limits)?;
    let renaming = conclusion_renaming(before, &sb.registry, after, &sa.registry, corr)?;
    let renamed: HashMap<String, String> = renaming.iter().map(|(a, b)| (a.clone(), b.clone())).collect();
    let moved = sa.basis.rename(&renamed)?;
    let lhs: BTreeSet<&String> = moved.ring.names().iter().collect();
    let rhs: BTreeSet<&String> = sb.basis.ring.names().iter().collect();
    if lhs != rhs {
        return Err(InvarianceError::ConclusionMismatch(format!("variables {lhs:?} vs {rhs:?}")));
    }
    let moved = Ideal::new(sb.basis.ring.clone(), buchberger(&moved.into_ring(&sb.basis.ring)?, &MonomialOrder::Grevlex, limits)?);
    // The backward morphism of a weakening step lives on the empty subscheme.
    let after_empty = sa.empty || corr.restriction == Restriction::Empty;
    let equal = match (sb.empty, after_empty) {
        (true, true) => true,
        (false, false) => ideal_equal(&sb.basis, &moved, limits)?,
        _ => false,
    };
    Ok(InvarianceReport {
        steps: 0,
        kinds: Vec::new(),
        restriction: corr.restriction,
        before: (&sb).into(),
        after: (&sa).into(),
        after_renamed: basis_lines(&moved),
        renaming,
        equal,
    })
}

/// Reduces `net` by up to `steps` steps (to normal form when `None`) and compares.
pub fn check_invariance(
    net: &ProofNet,
    strategy: Strategy,
    steps: Option<usize>,
    fuel: usize,
    opts: &SchemeOptions,
    limits: Limits,
) -> Result<InvarianceReport, InvarianceError> {
    let (after, kinds, corr) = match steps {
        None => {
            let n = normalize(net, strategy, fuel)?;
            let corr = n.correspondence(net);
            let kinds = n.steps.iter().map(|s| format!("{:?}", s.kind)).collect();
            (n.net, kinds, corr)
        }
        Some(k) => {
            let mut cur = net.clone();
            let mut corr = EdgeCorrespondence::identity(net);
            let mut kinds = Vec::new();
            for _ in 0..k {
                let redexes = find_redexes(&cur);
                let Some(r) = crate::reduction::pick(&redexes, strategy).cloned() else { break };
                let (next, c) = reduce_step(&cur, &r)?;
                corr = corr.then(&c);
                kinds.push(format!("{:?}", r.kind));
                cur = next;
            }
            (cur, kinds, corr)
        }
    };
    let mut report = compare(net, &after, &corr, opts, limits)?;
    report.steps = kinds.len();
    report.kinds = kinds;
    Ok(report)
}

#[derive(Clone, Debug, PartialEq)]
pub struct MllBridge {
    /// Dehomogenize, then eliminate.
    pub affine_first: Ideal,
    /// Localize at the primed variables, eliminate keeping primed and unprimed
    /// conclusion coordinates, then dehomogenize.
    pub homogeneous_first: Ideal,
    pub equal: bool,
}

/// Both routes from the net ideal of an exponential-free net to its affine conclusion ideal.
pub fn mll_bridge(net: &ProofNet, limits: Limits) -> Result<MllBridge, InvarianceError> {
    if let Some(e) = net.edges().iter().find(|(_, f)| !f.is_linear()).map(|(e, _)| e) {
        return Err(InvarianceError::ShapeMismatch(format!("edge `{e}` is exponential")));
    }
    let scheme = NetScheme::build(net, &SchemeOptions::default())?;
    let ideal = scheme.ideal()?;
    let keep = conclusion_vars(net, scheme.registry());
    let affine_first = eliminate(&dehomogenize(&ideal, is_primed), &keep, limits)?;

    // The ideal is multihomogeneous in every edge block, so localizing at an internal
    // primed variable is the same as setting it to 1. Only the conclusion blocks need
    // the Rabinowitsch variable.
    let conc: BTreeSet<String> = net.conclusions().into_values().collect();
    let reg = scheme.registry();
    let internal = |v: &str| is_primed(v) && reg.info(v).is_some_and(|i| !conc.contains(&i.edge));
    let partial = dehomogenize(&ideal, internal);
    let mut names = partial.ring.names().to_vec();
    let mut t = "rabinowitsch".to_string();
    while names.contains(&t) {
        t.push('_');
    }
    names.push(t);
    let ring = Ring::new(names)?;
    let n = ring.len();
    let mut lifted = partial.into_ring(&ring)?;
    let mut e = vec![0; n];
    e[n - 1] = 1;
    for (i, name) in ring.names().iter().enumerate() {
        if is_primed(name) {
            e[i] = 1;
        }
    }
    lifted.gens.push(&Polynomial::monomial(Monomial(e), BigRational::one()) - &Polynomial::one(n));
    let keep_h: Vec<String> = reg.vars.iter().filter(|v| conc.contains(&v.edge)).map(|v| v.name.clone()).collect();
    let homogeneous = eliminate(&lifted, &keep_h, limits)?;
    let homogeneous_first = eliminate(&dehomogenize(&homogeneous, is_primed), &keep, limits)?;
    let equal = ideal_equal(&affine_first, &homogeneous_first, limits)?;
    Ok(MllBridge { affine_first, homogeneous_first, equal })
}
