"""Smoke test for the maslov_witt extension.

Build and run from the repository root:

    cargo build --release -p maslov-witt-py
    cp target/release/libmaslov_witt.so python/maslov_witt.so
    python3 python/smoke_test.py
"""

import json
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import maslov_witt as mw  # noqa: E402


def main():
    f3 = mw.Space(3, 1)
    one = mw.witt_class(3, [[1]])
    assert (one + one + one + one).is_zero()
    assert not (one + one).is_zero()
    assert mw.witt_class(5, [[1, 0], [0, 1]]).is_zero()

    q = mw.Space("Q", 1)
    l, d = mw.Lagrangian.standard(q), mw.Lagrangian.dual(q)
    g1 = mw.Lagrangian(q, [[1, 1]])
    assert l.transverse(d) and not l.transverse(l)
    assert mw.maslov_triple(l, l, g1).is_zero()
    mu = mw.maslov_triple(l, g1, d)
    assert mu.rank_mod_2 == 1 and mu.signature in (1, -1)

    h2 = mw.SymplecticMap.h(q, [[2]])
    p = mw.phi(h2)
    assert (p.rank_mod_2, p.disc) == (0, "2")

    m3 = mw.SymplecticMap.m(q, [["3"]])
    w = mw.decompose(m3)
    assert w.letters() == [[["3"]], [["-1/3"]], [["3"]]]
    assert w.evaluate() == m3

    x = mw.SymplecticMap.upper(q, [["1/2"]]) @ mw.SymplecticMap.lower(q, [[2]])
    l0 = mw.Lagrangian.standard(q)
    assert mw.mu_cocycle(m3, x) == mw.maslov_triple(m3.inverse().act(l0), l0, x.act(l0))

    word = mw.SturmWord(mw.Space(7, 2), 0, [[[1, 2], [2, 3]], [[0, 1], [1, 0]]])
    assert len(word) == 2 and len(word.sylvester()) == 4

    report = json.loads(mw.run_scenario(json.dumps({"field": {"kind": "prime", "p": 5}, "g": 1, "tasks": []}), 4))
    assert report["seed"] == 4 and report["tasks"] == []
    passed, cases = mw.run_props("shortcut", 12, 7)
    assert passed == cases == 12

    try:
        mw.Space(2, 1)
    except ValueError as e:
        assert "characteristic 2" in str(e)
    else:
        raise AssertionError("p = 2 accepted")

    print("smoke test passed", f3, mu)


if __name__ == "__main__":
    main()
