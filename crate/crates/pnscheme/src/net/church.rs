//! Church numerals as shallow nets of type `?(X * ~X), ~X, X`.
//!
//! Edge names run through the alphabet in construction order: the `n + 1` axioms
//! (`~X` then `X` for each), the `n` tensors, the `n` derelictions, the `n - 1`
//! contractions (a left-leaning chain), then, for the composite with zero, the
//! promotion, par and the two axiom edges of the zero box. After `z` names continue
//! `aa`, `ab`, ... For `n = 2` this yields `a`..`o` with `k` cut against `l`.

use super::proofnet::{LinkKind, ProofNet, RawNet};

/// `0 -> a`, `25 -> z`, `26 -> aa`.
pub fn letter(mut i: usize) -> String {
    let mut s = Vec::new();
    loop {
        s.push(b'a' + (i % 26) as u8);
        if i < 26 {
            break;
        }
        i = i / 26 - 1;
    }
    s.reverse();
    String::from_utf8(s).unwrap()
}

struct Names(usize);

impl Names {
    fn next(&mut self) -> String {
        self.0 += 1;
        letter(self.0 - 1)
    }
}

/// Returns the raw net and the id of its `?(X * ~X)` conclusion edge.
fn numeral_raw(n: usize, names: &mut Names) -> (RawNet, String) {
    assert!(n >= 1);
    let mut raw = RawNet::default();
    let mut ax = Vec::new();
    for k in 0..=n {
        let (neg, pos) = (names.next(), names.next());
        raw.edge(&neg, "~X").edge(&pos, "X");
        raw.link(&format!("ax{}", k + 1), LinkKind::Ax, &[], &[&neg, &pos]);
        ax.push((neg, pos));
    }
    let mut tensors = Vec::new();
    for k in 1..=n {
        let t = names.next();
        raw.edge(&t, "X * ~X");
        raw.link(&format!("t{k}"), LinkKind::Tensor, &[&ax[k - 1].1, &ax[k].0], &[&t]);
        tensors.push(t);
    }
    let mut ders = Vec::new();
    for k in 1..=n {
        let d = names.next();
        raw.edge(&d, "?(X * ~X)");
        raw.link(&format!("der{k}"), LinkKind::Der, &[&tensors[k - 1]], &[&d]);
        ders.push(d);
    }
    let mut root = ders[0].clone();
    for k in 1..n {
        let c = names.next();
        raw.edge(&c, "?(X * ~X)");
        raw.link(&format!("ctr{k}"), LinkKind::Ctr, &[&root, &ders[k]], &[&c]);
        root = c;
    }
    let (first, last) = (ax[0].0.clone(), ax[n].1.clone());
    raw.link(&format!("conc.{first}"), LinkKind::Conc, &[&first], &[]);
    raw.link(&format!("conc.{last}"), LinkKind::Conc, &[&last], &[]);
    (raw, root)
}

/// The numeral `n`. For `n = 0` this is the identity `X | ~X` (one axiom, one par).
pub fn church(n: usize) -> ProofNet {
    if n == 0 {
        let mut raw = RawNet::default();
        raw.edge("a", "X").edge("b", "~X").edge("c", "X | ~X");
        raw.link("ax1", LinkKind::Ax, &[], &["a", "b"]);
        raw.link("par1", LinkKind::Par, &["a", "b"], &["c"]);
        raw.link("conc.c", LinkKind::Conc, &["c"], &[]);
        return raw.build().expect("church(0) is well formed");
    }
    let mut names = Names(0);
    let (mut raw, root) = numeral_raw(n, &mut names);
    raw.link(&format!("conc.{root}"), LinkKind::Conc, &[&root], &[]);
    raw.build().expect("church numeral is well formed")
}

/// `church(n)` with its `?(X * ~X)` conclusion cut against the promoted identity.
pub fn church_cut_against_zero(n: usize) -> ProofNet {
    assert!(n >= 1, "the zero numeral has no exponential conclusion to cut");
    let mut names = Names(0);
    let (mut raw, root) = numeral_raw(n, &mut names);
    let (prom, par, x, nx) = (names.next(), names.next(), names.next(), names.next());
    raw.edge(&prom, "!(X | ~X)").edge(&par, "X | ~X").edge(&x, "X").edge(&nx, "~X");
    raw.link("zero.ax", LinkKind::Ax, &[], &[&x, &nx]);
    raw.link("zero.par", LinkKind::Par, &[&x, &nx], &[&par]);
    raw.link("zero.prom", LinkKind::Prom, &[&par], &[&prom]);
    raw.add_box("zero.prom", &[], &["zero.ax", "zero.par"]);
    raw.link("cut", LinkKind::Cut, &[&root, &prom], &[]);
    raw.build().expect("composite is well formed")
}
