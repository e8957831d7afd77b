use serde::Serialize;

use super::formula::Formula;
use super::paths::{box_interior, linear_part, persistent_paths};
use super::proofnet::{LinkKind, ProofNet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Rule {
    /// An edge formula has modal depth above one.
    EdgeDepth,
    /// A box sits inside another box.
    NestedBox,
    /// A box interior breaks the shape required of nearly linear interiors.
    PreNearlyLinear,
    /// A persistent path of a box's linear part avoids the promoted formula.
    NearlyLinear,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: Rule,
    /// Offending edge id, or the Prom id naming the box.
    pub location: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub shallow: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn violates(&self, rule: Rule) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }
}

pub fn validate_shallow(net: &ProofNet) -> ValidationReport {
    let mut violations = Vec::new();
    for (id, f) in net.edges() {
        if !f.is_shallow() {
            violations.push(Violation { rule: Rule::EdgeDepth, location: id.clone(), detail: format!("{f} has depth {}", f.depth()) });
        }
    }
    for b in net.boxes() {
        let nested: Vec<&str> = net.boxes().iter().filter(|o| b.interior.contains(&o.prom)).map(|o| o.prom.as_str()).collect();
        if !nested.is_empty() {
            violations.push(Violation { rule: Rule::NestedBox, location: b.prom.clone(), detail: format!("contains box {}", nested.join(", ")) });
            continue;
        }
        let before = violations.len();
        check_interior_shape(net, b, &mut violations);
        if violations.len() > before {
            continue;
        }
        check_paths(net, b, &mut violations);
    }
    ValidationReport { shallow: violations.is_empty(), violations }
}

fn check_interior_shape(net: &ProofNet, b: &super::proofnet::BoxDef, out: &mut Vec<Violation>) {
    let mut flag = |detail: String| out.push(Violation { rule: Rule::PreNearlyLinear, location: b.prom.clone(), detail });
    for id in &b.interior {
        let l = net.link(id);
        match l.kind {
            LinkKind::Weak | LinkKind::Prom | LinkKind::Pax => flag(format!("{} link `{id}` inside the box", l.kind)),
            LinkKind::Ax => {
                for e in &l.conclusions {
                    if !matches!(net.formula(e), Formula::Atom { .. }) {
                        flag(format!("axiom `{id}` has non-atomic conclusion `{e}`"));
                    }
                }
            }
            _ => {}
        }
        for e in l.premises.iter().chain(&l.conclusions) {
            if !net.formula(e).is_shallow() {
                flag(format!("interior edge `{e}` is not shallow"));
            }
        }
    }
    for p in &b.pax {
        let e = &net.link(p).premises[0];
        if !net.formula(e).modal_body().is_some_and(Formula::is_linear) {
            flag(format!("door `{p}` carries {} instead of ?A with A linear", net.formula(e)));
        }
    }
    let bp = &net.link(&b.prom).premises[0];
    if !net.formula(bp).is_linear() {
        flag(format!("promoted formula {} is not linear", net.formula(bp)));
    }
}

fn check_paths(net: &ProofNet, b: &super::proofnet::BoxDef, out: &mut Vec<Violation>) {
    let promoted = net.link(&b.prom).premises[0].clone();
    let result = box_interior(net, b).and_then(|z| linear_part(&z)).and_then(|lp| persistent_paths(&lp));
    match result {
        Err(e) => out.push(Violation { rule: Rule::PreNearlyLinear, location: b.prom.clone(), detail: e.to_string() }),
        Ok(paths) => {
            for path in paths {
                if !path.iter().any(|o| o.edge == promoted) {
                    let shown: Vec<String> = path.iter().map(|o| format!("{}[{}]", o.edge, o.index)).collect();
                    out.push(Violation {
                        rule: Rule::NearlyLinear,
                        location: b.prom.clone(),
                        detail: format!("path {} avoids `{promoted}`", shown.join(" - ")),
                    });
                }
            }
        }
    }
}
