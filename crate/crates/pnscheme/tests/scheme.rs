mod common;

use common::{fixture, fixtures_with_prefix};
use pnscheme::invariance::{conclusion_vars, normal_semantics};
use pnscheme::net::{church, church_cut_against_zero, validate_shallow, LinkKind, RawNet};
use pnscheme::poly::{contains, dehomogenize, ideal_equal, ideal_from_strs, parse_polynomial, Ideal, Limits, Polynomial};
use pnscheme::scheme::{chart_for_box, net_ideal, non_multihomogeneous, NetScheme, SchemeError, SchemeOptions, VarClass};

fn opts() -> SchemeOptions {
    SchemeOptions::default()
}

fn primed(v: &str) -> bool {
    v.ends_with('\'')
}

/// The worked example's system after dividing by the primed atom variables. Parameter
/// blocks: promotion `l`, derelictions `i` and `j`, contraction `k`.
const LOCALIZED: &[&str] = &[
    "a - b", "c - d", "e - f", "n - o",
    "g_1 - b", "g_2 - c", "h_1 - d", "h_2 - e", "m_1 - n", "m_2 - o",
    "g_2 - i_y1 - i_y2*g_1 - i_y3*g_1*g_2",
    "h_2 - j_y1 - j_y2*h_1 - j_y3*h_1*h_2",
    "l_y1", "l_y2 - 1", "l_y3",
    "l_y1 - k_y1", "l_y2 - k_y2", "l_y3 - k_y3",
    "i_y1 - k_y1", "i_y2 - k_y2", "i_y3 - k_y3",
    "j_y1 - k_y1", "j_y2 - k_y2", "j_y3 - k_y3",
];

#[test]
fn worked_example_matches_the_localized_system() {
    let (ideal, _) = net_ideal(&church_cut_against_zero(2), &opts()).unwrap();
    let ours = dehomogenize(&ideal, primed);
    let theirs = ideal_from_strs(LOCALIZED).unwrap();
    assert!(ideal_equal(&ours, &theirs, Limits::default()).unwrap());
}

#[test]
fn worked_example_generator_counts() {
    let s = NetScheme::build(&church_cut_against_zero(2), &opts()).unwrap();
    let count = |kind: LinkKind| -> usize {
        s.net().links().values().filter(|l| l.kind == kind).map(|l| s.link_ideal(&l.id).unwrap().len()).sum()
    };
    assert_eq!(count(LinkKind::Ax), 4);
    assert_eq!(count(LinkKind::Tensor) + count(LinkKind::Par), 9);
    assert_eq!(count(LinkKind::Der), 2);
    assert_eq!(count(LinkKind::Prom), 3);
    assert_eq!(count(LinkKind::Ctr) + count(LinkKind::Cut), 9);
}

#[test]
fn tensor_generators_localize_to_premise_identification() {
    let s = NetScheme::build(&church_cut_against_zero(2), &opts()).unwrap();
    let local = dehomogenize(&Ideal::new(s.ring().clone(), s.link_ideal("t1").unwrap()), primed);
    let expected = ideal_from_strs(&["g_1 - b", "g_2 - c"]).unwrap();
    assert!(ideal_equal(&local, &expected, Limits::default()).unwrap());
}

#[test]
fn registry_of_the_worked_example() {
    let (_, reg) = net_ideal(&church_cut_against_zero(2), &opts()).unwrap();
    for e in ["i", "j", "k", "l"] {
        assert_eq!(reg.edge_vars(e).len(), 3, "{e}");
        assert_eq!(reg.chart(e).unwrap().h(), 3);
    }
    for e in ["a", "b", "c", "d", "e", "f", "n", "o"] {
        assert_eq!(reg.edge_vars(e), [e]);
    }
    assert_eq!(reg.edge_vars("g"), ["g_1", "g_2"]);
    assert_eq!(reg.info("g_2'").unwrap().class, VarClass::Primed);
    assert_eq!(reg.info("l_y2").unwrap().class, VarClass::Param);
    assert_eq!(reg.vars.len(), 8 * 2 + 3 * 4 + 4 * 3);
}

#[test]
fn registry_of_smaller_nets() {
    let mut raw = RawNet::default();
    raw.edge("a", "~X").edge("b", "X");
    raw.link("ax", LinkKind::Ax, &[], &["a", "b"]).link("conc.a", LinkKind::Conc, &["a"], &[]).link("conc.b", LinkKind::Conc, &["b"], &[]);
    let (ideal, reg) = net_ideal(&raw.build().unwrap(), &opts()).unwrap();
    assert_eq!(reg.ring().names(), ["a", "a'", "b", "b'"]);
    assert_eq!(ideal.gens.len(), 1);

    let (_, reg) = net_ideal(&church_cut_against_zero(1), &opts()).unwrap();
    let exp: Vec<&String> = reg.edges.keys().filter(|e| reg.chart(e).is_some()).collect();
    assert_eq!(exp, ["f", "g"]);
}

#[test]
fn box_charts() {
    let zero = chart_for_box(&church_cut_against_zero(2), "zero.prom", &opts()).unwrap();
    assert_eq!((zero.pivots.clone(), zero.basis.clone(), zero.h()), (vec![2], vec![0, 1, 3], 3));

    // Two doors on different atoms of the promoted tensor: three independent relations.
    let two = chart_for_box(&fixture("bangquest_two_doors"), "box.prom", &opts()).unwrap();
    assert_eq!((two.pivots.clone(), two.basis.clone()), (vec![1, 2, 3], vec![0]));

    let atom = chart_for_box(&fixture("bangquest_atom"), "box.prom", &opts()).unwrap();
    assert_eq!((atom.pivots.clone(), atom.basis.clone()), (vec![1], vec![0]));
}

#[test]
fn promotion_point_turns_the_dereliction_into_the_diagonal() {
    let s = NetScheme::build(&church_cut_against_zero(2), &opts()).unwrap();
    let ring = s.ring();
    let der = s.link_ideal("der1").unwrap().remove(0);
    let idx = |v: &str| ring.index_of(v).unwrap();
    let one = Polynomial::one(ring.len());
    let zero = Polynomial::zero(ring.len());
    let at_point = der.substitute(idx("i_y1"), &zero).substitute(idx("i_y2"), &one).substitute(idx("i_y3"), &zero);
    let minor = parse_polynomial(ring, "g_1*g_2' - g_1'*g_2").unwrap();
    assert_eq!(at_point, minor);
}

#[test]
fn contraction_identifies_coefficients_not_variables() {
    let s = NetScheme::build(&church_cut_against_zero(2), &opts()).unwrap();
    let full = dehomogenize(&s.ideal().unwrap(), primed);
    let mut exp_gens = Vec::new();
    for l in s.net().links().values() {
        if matches!(l.kind, LinkKind::Der | LinkKind::Ctr | LinkKind::Cut | LinkKind::Prom) {
            exp_gens.extend(s.link_ideal(&l.id).unwrap());
        }
    }
    let exponential = dehomogenize(&Ideal::new(s.ring().clone(), exp_gens), primed);
    let lim = Limits::default();
    for j in 1..=3 {
        let p = parse_polynomial(&full.ring, &format!("i_y{j} - j_y{j}")).unwrap();
        assert!(contains(&exponential, &p, lim).unwrap());
    }
    let g2_h1 = parse_polynomial(&full.ring, "g_2 - h_1").unwrap();
    assert!(contains(&full, &g2_h1, lim).unwrap());
    assert!(!contains(&exponential, &g2_h1, lim).unwrap());
}

#[test]
fn corpus_generators_are_multihomogeneous_and_registered() {
    let mut nets: Vec<_> = fixtures_with_prefix("").iter().map(|n| fixture(n)).filter(|n| validate_shallow(n).shallow).collect();
    nets.extend((0..=4).map(church));
    nets.extend((1..=3).map(church_cut_against_zero));
    for net in nets {
        let (ideal, reg) = net_ideal(&net, &opts()).unwrap();
        assert!(non_multihomogeneous(&ideal, &reg).is_empty());
        for g in &ideal.gens {
            for v in g.variables() {
                assert!(reg.info(ideal.ring.name(v)).is_some());
            }
        }
    }
}

#[test]
fn conclusion_variables() {
    let net = church_cut_against_zero(2);
    let (_, reg) = net_ideal(&net, &opts()).unwrap();
    assert_eq!(conclusion_vars(&net, &reg), ["a", "f"]);

    let net = church(2);
    let (_, reg) = net_ideal(&net, &opts()).unwrap();
    assert_eq!(conclusion_vars(&net, &reg), ["a", "f", "k_y1", "k_y2", "k_y3"]);

    let net = fixture("weakbang_closed");
    let (_, reg) = net_ideal(&net, &opts()).unwrap();
    assert!(conclusion_vars(&net, &reg).is_empty());
}

#[test]
fn non_shallow_nets_are_refused() {
    for name in ["nested_box", "path_failure"] {
        assert!(matches!(net_ideal(&fixture(name), &opts()), Err(SchemeError::NotShallow(_))), "{name}");
    }
}

#[test]
fn second_truncation_degree_keeps_the_worked_example() {
    let opts = SchemeOptions { truncation: 2 };
    let s = normal_semantics(&church_cut_against_zero(2), &opts, Limits::default()).unwrap();
    assert_eq!(s.basis_text(), ["a - f"]);
    let (_, reg) = net_ideal(&church_cut_against_zero(2), &opts).unwrap();
    assert_eq!(reg.chart("l").unwrap().slice_size(), 9);
}
