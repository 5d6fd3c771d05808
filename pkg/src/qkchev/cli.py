"""Command-line front end: computations, verification sweeps and run manifests."""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from itertools import product
from typing import NamedTuple

from .affine import AffineElt, affine_to_json, para, pi_J, semiinf_length
from .charring import (
    GradedChar,
    TruncationNotCertified,
    TruncationUnderflow,
    chevalley_lhs,
    chevalley_rhs_qls,
    chevalley_rhs_sls,
    demazure_D,
    demazure_T,
    fmt_class,
    gch,
    gch_demazure_step,
    monk_expand,
    monk_expand_qls,
    monk_format,
    partition_identity_sides,
    three_term_sides,
)
from .lifts import max_lift, max_lift_scan, min_lift, min_lift_scan
from .qbg import edges_to_json, qbg, qbg_wt, tbmax
from .qlspath import deg, enumerate_qls, qls_to_json, wt as qls_wt
from .rootdata import NotFiniteType, RankTooLarge, RootSystem, Weight, named_cartan, root_system
from .siorder import closure_reachable, si_leq
from .slspath import (
    bounded_region,
    crystal_violations,
    demazure_member,
    e_op,
    f_op,
    path_to_json,
    string_table_sweep,
)
from .smt import (
    initial_final_compatible,
    phi as smt_phi,
    sm_member_lower,
    sm_member_upper,
    smt_direction_identity,
    tensor_e,
    tensor_f,
)

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 2
EXIT_TRUNCATION = 3
EXIT_USAGE = 64

# (v, w) -> (tbmax(w W_J, v), wt(tbmax => v)) for A2, J = {2}
A2_TBMAX_FIXTURE = {
    ("e", "e"): ("e", (0, 0)), ("e", "1"): ("1", (1, 0)), ("e", "21"): ("w0", (1, 1)),
    ("2", "e"): ("2", (0, 0)), ("2", "1"): ("1", (1, 0)), ("2", "21"): ("21", (1, 0)),
    ("1", "e"): ("e", (0, 0)), ("1", "1"): ("1", (0, 0)), ("1", "21"): ("w0", (1, 1)),
    ("12", "e"): ("2", (0, 0)), ("12", "1"): ("12", (0, 0)), ("12", "21"): ("w0", (1, 0)),
    ("21", "e"): ("2", (0, 0)), ("21", "1"): ("1", (0, 0)), ("21", "21"): ("21", (0, 0)),
    ("w0", "e"): ("2", (0, 0)), ("w0", "1"): ("12", (0, 0)), ("w0", "21"): ("w0", (0, 0)),
}

# [O(s_1)]·[O(w)] for A2, keyed by the word of w
A2_MONK_FIXTURE = {
    "1": "[s1] - e^(ϖ1 - s1ϖ1)([s1] - [t(α1∨)] - [s2s1] + [s2 t(α1∨)])",
    "2": "[s1s2] + [s2s1] - [w∘]",
    "21": "[s2s1] - e^(ϖ1 - s2s1ϖ1)([s2s1] - [s2 t(α1∨)])",
    "12": "[s1s2] - e^(ϖ1 - s1ϖ1)([s1s2] - [w∘])",
    "121": "[w∘] - e^(ϖ1 - s2s1ϖ1)([w∘] - [t(θ∨)] - [s1s2 t(α1∨)] + [s1 t(θ∨)])",
}


class UsageError(Exception):
    pass


class SweepResult(NamedTuple):
    suite: str
    checked: int
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures


# parsing helpers -------------------------------------------------------------


def parse_vec(text: str) -> tuple:
    try:
        return tuple(int(t) for t in text.replace(" ", "").split(",") if t != "")
    except ValueError as exc:
        raise UsageError(f"not an integer vector: {text!r}") from exc


def parse_word(rs: RootSystem, text: str):
    text = text.strip()
    if text in ("", "e"):
        return rs.identity
    if text in ("w0", "w∘"):
        return rs.w0
    word = parse_vec(text.replace(".", ",")) if ("," in text or "." in text) else tuple(int(c) for c in text)
    if any(k < 1 or k > rs.rank for k in word):
        raise UsageError(f"word letters must lie in 1..{rs.rank}")
    return rs.from_word(word)


def weyl_name(rs: RootSystem, w) -> str:
    if w == rs.identity:
        return "e"
    if w == rs.w0:
        return "w0"
    return "".join(str(k) for k in w.word)


def load_root_system(type_name: str | None, cartan_path: str | None) -> RootSystem:
    if cartan_path:
        try:
            with open(cartan_path, encoding="utf-8") as fh:
                doc = json.load(fh)
            return root_system(doc["cartan"])
        except (OSError, KeyError, TypeError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read Cartan matrix: {exc}") from exc
    try:
        named_cartan(type_name or "A2")
        return root_system(type_name or "A2")
    except (ValueError, NotFiniteType, RankTooLarge) as exc:
        raise UsageError(str(exc)) from exc


def _weight(rs: RootSystem, vec) -> Weight:
    if len(vec) != rs.rank:
        raise UsageError(f"weights need {rs.rank} coordinates")
    if any(c < 0 for c in vec):
        raise UsageError("weights must be dominant")
    return Weight(tuple(vec), 0)


def box_elements(rs: RootSystem, radius: int) -> list:
    """``w t_xi`` with ``w in W`` and ``|xi|_inf <= radius``, in a fixed order."""
    xis = list(product(range(-radius, radius + 1), repeat=rs.rank))
    return [AffineElt(w, xi) for w in rs.weyl for xi in xis]


def _fund(rs: RootSystem, i: int) -> Weight:
    return Weight(tuple(1 if k == i - 1 else 0 for k in range(rs.rank)), 0)


# sweeps ----------------------------------------------------------------------


def _chevalley_one(task):
    cartan, lam, mu, w_word, xi, N, engine = task
    rs = root_system(cartan)
    x = AffineElt(rs.from_word(w_word), xi)
    if engine == "sls":
        lhs = chevalley_lhs(rs, lam, mu, x, N, prefactor=True)
        rhs = chevalley_rhs_sls(rs, lam, mu, x, N)
    else:
        lhs = chevalley_lhs(rs, lam, mu, x, N)
        rhs = chevalley_rhs_qls(rs, lam, mu, x, N)
    if lhs == rhs:
        return None
    return {"lambda": list(lam), "mu": list(mu), "x": {"w": list(w_word), "xi": list(xi)}, "lhs": lhs.to_json(), "rhs": rhs.to_json()}


def _cartan_key(rs: RootSystem):
    return rs.name if rs.name else [list(r) for r in rs.cartan]


def _map(fn, tasks, jobs: int):
    if jobs <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))


def sweep_chevalley(rs: RootSystem, lams, mus, radius: int, N: int, engine: str = "qls", jobs: int = 1) -> SweepResult:
    """Chevalley identity on every ``w t_xi`` in the box; ``engine`` is ``qls`` or ``sls``."""
    key = _cartan_key(rs)
    tasks = [
        (key, tuple(lam.coeffs), tuple(mu.coeffs), x.w.word, x.xi, N, engine)
        for lam in lams
        for mu in mus
        for x in box_elements(rs, radius)
    ]
    out = _map(_chevalley_one, tasks, jobs)
    return SweepResult(f"chevalley-{engine}", len(tasks), [f for f in out if f is not None])


def sweep_vanishing(rs: RootSystem, lams, mus, radius: int, N: int) -> SweepResult:
    """The quantum-LS right-hand side vanishes when ``lambda - mu`` is not dominant."""
    fails, n = [], 0
    for lam in lams:
        for mu in mus:
            if rs.is_dominant(Weight(tuple(a - b for a, b in zip(lam.coeffs, mu.coeffs)), 0)):
                raise UsageError("vanishing needs lambda - mu outside the dominant cone")
            for x in box_elements(rs, radius):
                n += 1
                rhs = chevalley_rhs_qls(rs, lam, mu, x, N)
                if not rhs.is_zero():
                    fails.append({"lambda": list(lam.coeffs), "mu": list(mu.coeffs), "x": affine_to_json(x), "rhs": rhs.to_json()})
    return SweepResult("vanishing", n, fails)


def random_char(rng: random.Random, rank: int, N: int, spread: int = 2, size: int = 6) -> GradedChar:
    """A truncated character with weights in ``[-spread, spread]^rank`` and degrees in ``[-N, 0]``."""
    terms = {}
    for _ in range(rng.randint(1, size)):
        wt = tuple(rng.randint(-spread, spread) for _ in range(rank))
        d = rng.randint(-N, 0)
        terms[(wt, d)] = terms.get((wt, d), 0) + rng.choice((-2, -1, 1, 2))
    return GradedChar(rank, terms, N)


def _common(a: GradedChar, b: GradedChar):
    n = min(a.trunc, b.trunc)
    return a.restrict(n), b.restrict(n)


def sweep_demazure(rs: RootSystem, lams, radius: int, N: int, samples: int = 200, seed: int = 0) -> SweepResult:
    """Recursion ``D_i gch(y) = gch(s_i y)`` on descents plus operator identities on random characters."""
    fails, n = [], 0
    for lam in lams:
        for y in box_elements(rs, radius):
            for i in range(rs.rank + 1):
                n += 1
                got, want = gch_demazure_step(rs, y, i, lam, N)
                if got != want:
                    fails.append({"lambda": list(lam.coeffs), "y": affine_to_json(y), "i": i, "lhs": got.to_json(), "rhs": want.to_json()})
    rng = random.Random(seed)
    Nr = N + 8
    spread = 2
    # every weight of the modelled series lies in the spread box, so D_0 raises by at most B
    B = spread * sum(abs(c) for c in rs.theta_coroot)
    for k in range(samples):
        f = random_char(rng, rs.rank, Nr, spread)
        i = k % (rs.rank + 1)

        def D(g):
            return demazure_D(rs, i, g, B)

        def T(g):
            return demazure_T(rs, i, g, B)

        d1, t1 = D(f), T(f)
        checks = {
            "D^2 = D": _common(D(d1), d1),
            "T^2 = -T": _common(T(t1), -t1),
            "T D = 0": _common(T(d1), GradedChar.zero(rs.rank, Nr)),
            "D T = 0": _common(D(t1), GradedChar.zero(rs.rank, Nr)),
        }
        for name, (a, b) in checks.items():
            n += 1
            if a != b:
                fails.append({"identity": name, "i": i, "f": f.to_json()})
    return SweepResult("demazure", n, fails)


def sweep_three_term(rs: RootSystem, lams, radius: int, N: int) -> SweepResult:
    fails, n = [], 0
    for lam in lams:
        for r in rs.index_set:
            for xi in product(range(-radius, radius + 1), repeat=rs.rank):
                n += 1
                lhs, rhs = three_term_sides(rs, lam, r, xi, N)
                if lhs != rhs:
                    fails.append({"lambda": list(lam.coeffs), "r": r, "xi": list(xi), "lhs": lhs.to_json(), "rhs": rhs.to_json()})
    return SweepResult("three-term", n, fails)


def sweep_partition(max_lambda: int, max_mu: int, N: int) -> SweepResult:
    fails, n = [], 0
    for li in range(1, max_lambda + 1):
        for mi in range(1, min(li, max_mu) + 1):
            n += 1
            lhs, rhs = partition_identity_sides(li, mi, N)
            if lhs != rhs:
                fails.append({"lambda_i": li, "mu_i": mi, "lhs": lhs.to_json(), "rhs": rhs.to_json()})
    return SweepResult("partition", n, fails)


def sweep_crystal(rs: RootSystem, lams, depth: int, radius: int) -> SweepResult:
    """Crystal axioms, Demazure stability, string intersections and the four-row string table."""
    box = box_elements(rs, radius)
    fails, n = [], 0
    for lam in lams:
        region = bounded_region(rs, lam, depth)
        for kind, p, extra in crystal_violations(region, box):
            fails.append({"lambda": list(lam.coeffs), "check": kind, "path": path_to_json(p), "extra": repr(extra)})
        n += len(region)
        count, inter, table = string_table_sweep(region, box)
        n += count
        for i, S, v in inter:
            fails.append({"lambda": list(lam.coeffs), "check": "string intersection", "i": i, "string": [path_to_json(p) for p in S], "y": affine_to_json(v)})
        for i, S, u, v, rows in table:
            fails.append(
                {
                    "lambda": list(lam.coeffs),
                    "check": "string table",
                    "i": i,
                    "string": [path_to_json(p) for p in S],
                    "u": affine_to_json(u),
                    "v": affine_to_json(v),
                    "rows": [list(r) for r in rows],
                }
            )
    return SweepResult("string", n, fails)


def sweep_smt(rs: RootSystem, pairs, depth: int, radius: int) -> SweepResult:
    """Φ is an injective morphism and the membership/composition identities hold on the region."""
    box = box_elements(rs, radius)
    fails, n = [], 0
    for lam, mu in pairs:
        tag = {"lambda": list(lam.coeffs), "mu": list(mu.coeffs)}
        region = bounded_region(rs, lam + mu, depth)
        images = {}
        for p in region:
            b = smt_phi(p, lam, mu)
            if b in images:
                fails.append({**tag, "check": "injective", "path": path_to_json(p)})
            images[b] = p
            for i in range(rs.rank + 1):
                n += 1
                f, e = f_op(p, i), e_op(p, i)
                if (f is None) != (tensor_f(i, b) is None) or (f is not None and smt_phi(f, lam, mu) != tensor_f(i, b)):
                    fails.append({**tag, "check": "f morphism", "i": i, "path": path_to_json(p)})
                if (e is None) != (tensor_e(i, b) is None) or (e is not None and smt_phi(e, lam, mu) != tensor_e(i, b)):
                    fails.append({**tag, "check": "e morphism", "i": i, "path": path_to_json(p)})
            n += 1
            if not initial_final_compatible(p, lam, mu):
                fails.append({**tag, "check": "initial/final", "path": path_to_json(p)})
            for y in box:
                n += 1
                up, lo = demazure_member(p, y, ">="), demazure_member(p, y, "<=")
                if up != sm_member_upper(b, y) or lo != sm_member_lower(b, y):
                    fails.append({**tag, "check": "membership", "path": path_to_json(p), "y": affine_to_json(y)})
                for flag, mode in ((up, ">="), (lo, "<=")):
                    if flag and not smt_direction_identity(p, y, lam, mu, mode):
                        fails.append({**tag, "check": f"composition {mode}", "path": path_to_json(p), "y": affine_to_json(y)})
    return SweepResult("smt", n, fails)


def sweep_oracles(rs: RootSystem, radius: int = 1, lift_radius: int = 2) -> SweepResult:
    """Closed forms against brute force: order, lifts and shortest-path weights."""
    fails, n = [], 0
    subsets = [frozenset(c for c, on in zip(rs.index_set, bits) if on) for bits in product((0, 1), repeat=rs.rank)]
    xis = list(product(range(-radius, radius + 1), repeat=rs.rank))
    for J in subsets:
        if len(J) == rs.rank:
            continue
        elts = sorted({para(rs, w, xi, J) for w in rs.weyl_min_reps(J) for xi in xis}, key=repr)
        for x in elts:
            for y in elts:
                n += 1
                if si_leq(rs, x, y) != closure_reachable(rs, x, y):
                    fails.append({"check": "order", "J": sorted(J), "x": repr(x), "y": repr(y)})
    lxis = list(product(range(-lift_radius, lift_radius + 1), repeat=rs.rank))
    for J in subsets:
        for w in rs.weyl_min_reps(J):
            for xi in lxis:
                x = para(rs, w, xi, J)
                for v in rs.weyl:
                    for z in lxis:
                        y = AffineElt(v, z)
                        py = pi_J(rs, y, J)
                        if si_leq(rs, py, x):
                            n += 1
                            if min_lift(rs, y, x) != min_lift_scan(rs, y, x):
                                fails.append({"check": "min lift", "x": repr(x), "y": repr(y)})
                        if si_leq(rs, x, py):
                            n += 1
                            if max_lift(rs, y, x) != max_lift_scan(rs, y, x):
                                fails.append({"check": "max lift", "x": repr(x), "y": repr(y)})
    for J in subsets:
        g = qbg(rs, J)
        for w in g.vertices:
            for v in g.vertices:
                n += 1
                if g.all_shortest_path_weights(w, v) != {g.wt(w, v)}:
                    fails.append({"check": "path weight", "J": sorted(J), "w": list(w.word), "v": list(v.word)})
    return SweepResult("oracles", n, fails)


def tbmax_table(rs: RootSystem, i: int) -> list:
    """Rows ``(v, w, tbmax(w W_J, v), wt(tbmax => v))`` for ``J = I - {i}``, w over minimal representatives."""
    J = frozenset(rs.index_set) - {i}
    reps = rs.weyl_min_reps(J)
    rows = []
    for v in rs.weyl:
        for w in reps:
            h = tbmax(rs, w, J, v)
            rows.append((v, w, h, qbg_wt(rs, h, v)))
    return rows


def sweep_monk(rs: RootSystem, i: int) -> tuple:
    """Returns ``(SweepResult, lines)``; lines are the printed table and expansions."""
    fails, lines, n = [], [], 0
    J = frozenset(rs.index_set) - {i}
    minuscule = all(c <= 1 for c in (sum(a * b for a, b in zip(_fund(rs, i).coeffs, cb)) for cb in rs.positive_coroots))
    lines.append(f"tbmax table, J = {sorted(J)}")
    for v, w, h, z in tbmax_table(rs, i):
        lines.append(f"  v={weyl_name(rs, v)} w={weyl_name(rs, w)} -> {weyl_name(rs, h)} {list(z)}")
        if rs.name == "A2" and J == frozenset({2}):
            n += 1
            want = A2_TBMAX_FIXTURE.get((weyl_name(rs, v), weyl_name(rs, w)))
            if want != (weyl_name(rs, h), tuple(z)):
                fails.append({"check": "tbmax table", "v": list(v.word), "w": list(w.word), "got": [weyl_name(rs, h), list(z)], "want": want})
    lines.append(f"[O(s{i})]·[O(w)]")
    for w in sorted(rs.weyl, key=lambda u: (len(u.word), u.word)):
        if minuscule:
            text = monk_format(rs, i, w)
            n += 1
            if monk_expand(rs, i, w) != monk_expand_qls(rs, i, w):
                fails.append({"check": "minuscule vs path sum", "w": list(w.word)})
        else:
            exp = monk_expand_qls(rs, i, w)
            text = " + ".join(
                f"{json.dumps({str(list(k)): c for k, c in sorted(coef.items())})}{fmt_class(rs, v, z)}"
                for (v, z), coef in sorted(exp.items(), key=lambda t: (semiinf_length(rs, AffineElt(*t[0])), t[0][0].word))
            )
        lines.append(f"  w={weyl_name(rs, w)}: {text}")
        if rs.name == "A2" and i == 1 and minuscule:
            want = A2_MONK_FIXTURE.get("".join(map(str, w.word)))
            if want is not None:
                n += 1
                if text != want:
                    fails.append({"check": "A2 fixture", "w": list(w.word), "got": text, "want": want})
    return SweepResult("monk", n, fails), lines


# emitters --------------------------------------------------------------------


def emit(obj, fmt: str, rows=None, header=None, text=None) -> None:
    if fmt == "json":
        print(json.dumps(obj, ensure_ascii=False, sort_keys=False))
    elif fmt == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        if header:
            w.writerow(header)
        for r in rows or ():
            w.writerow(r)
    else:
        print(text if text is not None else json.dumps(obj, ensure_ascii=False, indent=2))


def _char_rows(g: GradedChar):
    return [[*nu, d, c] for (nu, d), c in g.sorted_terms()]


# subcommands -----------------------------------------------------------------


def cmd_rootsys(rs: RootSystem, args) -> int:
    obj = {
        "type": rs.name,
        "rank": rs.rank,
        "cartan": [list(r) for r in rs.cartan],
        "positive_roots": [list(a) for a in rs.positive_roots],
        "positive_coroots": [list(c) for c in rs.positive_coroots],
        "theta": list(rs.theta_root),
        "theta_coroot": list(rs.theta_coroot),
        "weyl_order": len(rs.weyl),
    }
    rows = [[list(a), list(c)] for a, c in zip(rs.positive_roots, rs.positive_coroots)]
    text = "\n".join(
        [f"type {rs.name or 'custom'}, rank {rs.rank}, |W| = {len(rs.weyl)}"]
        + [f"  root {list(a)} coroot {list(c)}" for a, c in zip(rs.positive_roots, rs.positive_coroots)]
    )
    emit(obj, args.format, rows, ["root", "coroot"], text)
    return EXIT_OK


def cmd_qbg(rs: RootSystem, args) -> int:
    J = frozenset(parse_vec(args.J)) if args.J else frozenset()
    if not J <= set(rs.index_set):
        raise UsageError("J must be a subset of the index set")
    g = qbg(rs, J)
    obj = edges_to_json(g)
    rows = [[weyl_name(rs, e.source), weyl_name(rs, e.target), list(e.beta), e.kind] for e in sorted(g.edges, key=lambda e: (g.pos[e.source.idx], g.pos[e.target.idx], e.beta))]
    text = "\n".join(f"{a} -> {b} {beta} {k}" for a, b, beta, k in rows)
    emit(obj, args.format, rows, ["src", "dst", "beta", "kind"], text)
    return EXIT_OK


def cmd_qls(rs: RootSystem, args) -> int:
    mu = _weight(rs, parse_vec(args.weight))
    paths = enumerate_qls(rs, mu)
    obj = [{**qls_to_json(p), "wt": list(qls_wt(p).coeffs), "deg": deg(p)} for p in paths]
    rows = [[repr(p), list(qls_wt(p).coeffs), deg(p)] for p in paths]
    text = "\n".join(f"{p!r}  wt={list(qls_wt(p).coeffs)} deg={deg(p)}" for p in paths)
    emit(obj, args.format, rows, ["path", "wt", "deg"], text)
    return EXIT_OK


def cmd_gch(rs: RootSystem, args) -> int:
    lams = args.lam or []
    if len(lams) != 1:
        raise UsageError("gch needs exactly one --lambda")
    lam = _weight(rs, parse_vec(lams[0]))
    xi = parse_vec(args.xi) if args.xi else rs.zero()
    if len(xi) != rs.rank:
        raise UsageError(f"--xi needs {rs.rank} coordinates")
    x = AffineElt(parse_word(rs, args.w), tuple(xi))
    g = gch(rs, x, lam, args.order)
    emit(g.to_json(), args.format, _char_rows(g), [*(f"wt{k + 1}" for k in range(rs.rank)), "d", "c"], g.to_text())
    return EXIT_OK


def _lams(rs, args, default):
    return [_weight(rs, parse_vec(t)) for t in args.lam] if args.lam else default


def _mus(rs, args, default):
    return [_weight(rs, parse_vec(t)) for t in args.mu] if args.mu else default


def run_verify(rs: RootSystem, args) -> tuple:
    suite = args.suite
    rho = Weight(tuple(1 for _ in rs.index_set), 0)
    funds = [_fund(rs, i) for i in rs.index_set]
    lines = []
    if suite == "chevalley":
        res = sweep_chevalley(rs, _lams(rs, args, [rho]), _mus(rs, args, funds), args.all_x_box, args.order, args.engine, args.jobs)
    elif suite == "vanishing":
        res = sweep_vanishing(rs, _lams(rs, args, [funds[0]]), _mus(rs, args, funds[1:] + [rho]), args.all_x_box, args.order)
    elif suite == "demazure":
        res = sweep_demazure(rs, _lams(rs, args, [rho]), args.all_x_box, args.order, args.samples, args.seed)
    elif suite == "three-term":
        res = sweep_three_term(rs, _lams(rs, args, [rho]), args.all_x_box, args.order)
    elif suite == "partition":
        res = sweep_partition(args.max_lambda, args.max_mu, args.order)
    elif suite == "string":
        res = sweep_crystal(rs, _lams(rs, args, funds + [rho]), args.depth, args.all_x_box)
    elif suite == "smt":
        lams = _lams(rs, args, [funds[0]])
        mus = _mus(rs, args, funds)
        res = sweep_smt(rs, [(a, b) for a in lams for b in mus], args.depth, args.all_x_box)
    elif suite == "oracles":
        res = sweep_oracles(rs, args.all_x_box)
    elif suite == "monk":
        if args.i not in rs.index_set:
            raise UsageError(f"--i must lie in 1..{rs.rank}")
        res, lines = sweep_monk(rs, args.i)
    else:
        raise UsageError(f"unknown suite {suite!r}")
    return res, lines


def cmd_verify(rs: RootSystem, args) -> tuple:
    res, lines = run_verify(rs, args)
    for line in lines:
        print(line)
    if res.failures:
        print(json.dumps({"suite": res.suite, "checked": res.checked, "failures": len(res.failures), "counterexample": res.failures[0]}, ensure_ascii=False))
        return EXIT_COUNTEREXAMPLE, res
    print(json.dumps({"suite": res.suite, "checked": res.checked, "failures": 0}))
    return EXIT_OK, res


# argument parsing ------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--type", default="A2", help="named finite type, e.g. A2, C2, G2")
    common.add_argument("--cartan", help='JSON file {"cartan": [[...], ...]}')
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--manifest", help="write the run manifest here instead of stderr")

    p = _Parser(prog="qkchev", description="Semi-infinite flag manifold Chevalley formulas: computation and verification.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("rootsys", parents=[common], help="root system summary")
    q = sub.add_parser("qbg", parents=[common], help="parabolic quantum Bruhat graph")
    q.add_argument("--J", default="", help="comma-separated index subset")
    q = sub.add_parser("qls", parents=[common], help="quantum LS paths of a shape")
    q.add_argument("--weight", required=True)
    q = sub.add_parser("gch", parents=[common], help="graded character of a Demazure submodule")
    q.add_argument("--lambda", dest="lam", action="append")
    q.add_argument("--w", default="e", help="Weyl word, e.g. 12 or 1,2")
    q.add_argument("--xi", default="")
    q.add_argument("--order", type=int, default=4)
    v = sub.add_parser("verify", parents=[common], help="identity sweeps")
    v.add_argument("suite", choices=("chevalley", "monk", "vanishing", "demazure", "string", "smt", "three-term", "partition", "oracles"))
    v.add_argument("--lambda", dest="lam", action="append")
    v.add_argument("--mu", action="append")
    v.add_argument("--order", type=int, default=4)
    v.add_argument("--all-x-box", type=int, default=1)
    v.add_argument("--engine", choices=("qls", "sls"), default="qls")
    v.add_argument("--i", type=int, default=1)
    v.add_argument("--depth", type=int, default=2)
    v.add_argument("--samples", type=int, default=200)
    v.add_argument("--max-lambda", type=int, default=4)
    v.add_argument("--max-mu", type=int, default=3)
    return p


def _manifest(argv, args, rs, started, outcome, res=None) -> dict:
    m = {
        "argv": list(argv),
        "command": args.command,
        "cartan": [list(r) for r in rs.cartan] if rs is not None else None,
        "type": getattr(rs, "name", None),
        "seed": args.seed,
        "bounds": {k: getattr(args, k) for k in ("order", "all_x_box", "depth", "samples", "max_lambda", "max_mu") if hasattr(args, k)},
        "wall_seconds": round(time.perf_counter() - started, 3),
        "exit": outcome,
    }
    if res is not None:
        m["checks"] = {"suite": res.suite, "checked": res.checked, "failures": len(res.failures)}
    return m


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    started = time.perf_counter()
    rs, res = None, None
    try:
        rs = load_root_system(args.type, args.cartan)
        handlers = {"rootsys": cmd_rootsys, "qbg": cmd_qbg, "qls": cmd_qls, "gch": cmd_gch}
        if args.command == "verify":
            code, res = cmd_verify(rs, args)
        else:
            code = handlers[args.command](rs, args)
    except UsageError as exc:
        print(f"qkchev: error: {exc}", file=sys.stderr)
        code = EXIT_USAGE
    except (TruncationNotCertified, TruncationUnderflow) as exc:
        print(json.dumps({"error": type(exc).__name__, "detail": str(exc)}))
        code = EXIT_TRUNCATION
    if args.command == "verify":
        text = json.dumps(_manifest(argv, args, rs, started, code, res), ensure_ascii=False)
        if args.manifest:
            with open(args.manifest, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        else:
            print(text, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
