mod common;

use common::{fixture, fixtures_with_prefix};
use pnscheme::net::{
    box_interior, church, church_cut_against_zero, linear_part, persistent_paths, validate_shallow, AtomOcc, Formula, LinkKind,
    ProofNet, RawNet, Rule,
};

#[test]
fn depth_examples() {
    assert_eq!(Formula::parse("X").unwrap().depth(), 0);
    assert_eq!(Formula::parse("!X").unwrap().depth(), 1);
    assert_eq!(Formula::parse("?(X * ~X)").unwrap().depth(), 1);
    assert!(Formula::parse("X * ~X").unwrap().is_shallow());
    assert!(!Formula::parse("!!X").unwrap().is_shallow());
}

#[test]
fn positive_examples_are_shallow() {
    for name in ["promotion_cut", "shallow_cut_in_box"] {
        let r = validate_shallow(&fixture(name));
        assert!(r.shallow, "{name}: {:?}", r.violations);
    }
    assert!(validate_shallow(&church_cut_against_zero(2)).shallow);
}

#[test]
fn negative_examples_name_their_rule() {
    let nested = validate_shallow(&fixture("nested_box"));
    assert!(!nested.shallow);
    assert!(nested.violates(Rule::NestedBox));
    assert_eq!(nested.violations[0].location, "out.prom");

    let path = validate_shallow(&fixture("path_failure"));
    assert!(!path.shallow);
    assert_eq!(path.violations.iter().map(|v| v.rule).collect::<Vec<_>>(), [Rule::NearlyLinear]);
}

#[test]
fn depth_two_edge_is_reported() {
    let mut raw = RawNet::default();
    raw.edge("a", "??~X").edge("b", "!!X");
    raw.link("ax", LinkKind::Ax, &[], &["a", "b"]).link("conc.a", LinkKind::Conc, &["a"], &[]).link("conc.b", LinkKind::Conc, &["b"], &[]);
    let r = validate_shallow(&raw.build().unwrap());
    assert_eq!(r.violations.len(), 2);
    assert!(r.violations.iter().all(|v| v.rule == Rule::EdgeDepth));
}

#[test]
fn church_numerals_are_shallow() {
    for n in 0..=10 {
        let r = validate_shallow(&church(n));
        assert!(r.shallow, "church({n}): {:?}", r.violations);
    }
}

#[test]
fn single_axiom_path() {
    let mut raw = RawNet::default();
    raw.edge("a", "~X").edge("b", "X");
    raw.link("ax", LinkKind::Ax, &[], &["a", "b"]).link("conc.a", LinkKind::Conc, &["a"], &[]).link("conc.b", LinkKind::Conc, &["b"], &[]);
    let paths = persistent_paths(&raw.build().unwrap()).unwrap();
    assert_eq!(paths, [vec![AtomOcc::new("a", 0), AtomOcc::new("b", 0)]]);
}

#[test]
fn ax_cut_ax_path_visits_four_occurrences() {
    let paths = persistent_paths(&fixture("axcut_atom")).unwrap();
    assert_eq!(paths.len(), 1);
    assert_eq!(paths[0].len(), 4);
}

#[test]
fn promoted_identity_path_runs_through_the_promoted_formula() {
    let net = church_cut_against_zero(2);
    let b = net.box_with_prom("zero.prom").unwrap();
    let paths = persistent_paths(&linear_part(&box_interior(&net, b).unwrap()).unwrap()).unwrap();
    assert_eq!(paths.len(), 1);
    let edges: Vec<&str> = paths[0].iter().map(|o| o.edge.as_str()).collect();
    assert_eq!(edges, ["m", "n", "o", "m"]);
}

#[test]
fn exponential_net_has_no_persistent_paths() {
    assert!(persistent_paths(&church(1)).is_err());
}

#[test]
fn linear_part_replaces_derelictions() {
    let net = fixture("shallow_cut_in_box");
    let interior = box_interior(&net, net.box_with_prom("prom").unwrap()).unwrap();
    let lin = linear_part(&interior).unwrap();
    assert_eq!(lin.count(LinkKind::Der), 0);
    assert_eq!(lin.link("der").kind, LinkKind::Conc);
    assert_eq!(lin.link("der").premises, ["e0"]);
    assert_eq!(lin.count(LinkKind::Conc), 2);
}

#[test]
fn linear_part_drops_everything_below_a_dereliction() {
    let lin = linear_part(&church(2)).unwrap();
    assert_eq!(lin.count(LinkKind::Ctr), 0);
    assert_eq!(lin.count(LinkKind::Der), 0);
    assert!(!lin.edges().contains_key("k"));
    assert_eq!(lin.conclusions().len(), 4);
}

#[test]
fn linear_part_is_idempotent() {
    let mut nets: Vec<ProofNet> = (0..=6).map(church).collect();
    for name in fixtures_with_prefix("") {
        let net = fixture(&name);
        if !validate_shallow(&net).shallow {
            continue;
        }
        for b in net.boxes() {
            nets.push(box_interior(&net, b).unwrap());
        }
    }
    for net in nets {
        let once = linear_part(&net).unwrap();
        assert_eq!(linear_part(&once).unwrap(), once);
    }
}

#[test]
fn json_round_trips_byte_for_byte() {
    for name in fixtures_with_prefix("") {
        let net = fixture(&name);
        let text = net.to_json();
        let back = ProofNet::from_json(&text).unwrap();
        assert_eq!(back, net, "{name}");
        assert_eq!(back.to_json(), text, "{name}");
    }
}

#[test]
fn malformed_nets_are_rejected() {
    let mut raw = RawNet::default();
    raw.edge("a", "~X").edge("b", "Y");
    raw.link("ax", LinkKind::Ax, &[], &["a", "b"]).link("conc.a", LinkKind::Conc, &["a"], &[]).link("conc.b", LinkKind::Conc, &["b"], &[]);
    assert!(raw.build().is_err());
    assert!(ProofNet::from_json(r#"{"edges": [{"id": "a", "formula": "X"}], "links": []}"#).is_err());
}
