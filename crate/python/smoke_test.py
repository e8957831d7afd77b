"""Smoke test for the pnscheme extension module.

Build and install first:
    pip install --no-build-isolation ./crates/pnscheme-py
then run `python3 python/smoke_test.py`.
"""

import json
import pathlib

import pnscheme

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "crates" / "pnscheme" / "fixtures"


def main():
    net = pnscheme.Net.church_cut_against_zero(2)
    assert net.is_shallow()
    assert net.semantics()["basis"] == ["a - f"]
    report = net.check(strategy="by-kind")
    assert report["equal"], report
    print("composite:", report["kinds"][:3], "...", report["after_renamed"])

    nested = pnscheme.Net((FIXTURES / "nested_box.json").read_text())
    rules = {v["rule"] for v in nested.validate()["violations"]}
    assert "NestedBox" in rules, rules

    step, kinds = pnscheme.Net((FIXTURES / "ctrbang_atom.json").read_text()).reduce(1)
    assert kinds == ["CtrBang"]
    assert json.loads(step.to_json())["links"]

    ideal, registry = pnscheme.Net((FIXTURES / "axcut_atom.json").read_text()).ideal()
    assert ideal.vars == [v["name"] for v in registry["vars"]]
    print("axcut ideal:", len(ideal.generators), "generators in", len(ideal.vars), "variables")

    table = pnscheme.Ideal(["m_1*m_2' - m_1'*m_2"]).hilbert(8)
    g = pnscheme.gotzmann(table)
    assert (table[:3], g["gotzmann"]) == ([1, 3, 5], 2)
    print("hilbert:", table, "gotzmann:", g["gotzmann"])

    assert pnscheme.macaulay_diff_set(27, 4) == [2, 2, 0, 0]
    for n in range(4):
        print("church power", n, pnscheme.church_power(n)["relation"])

    try:
        net.check(fuel=1)
    except pnscheme.ResourceLimit as e:
        print("fuel limit:", e)
    else:
        raise AssertionError("expected ResourceLimit")
    print("ok")


if __name__ == "__main__":
    main()
