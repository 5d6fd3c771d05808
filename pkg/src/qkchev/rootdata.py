"""Finite root systems and Weyl groups generated from a Cartan matrix.

Conventions used throughout the package:

* simple indices are 1-based (``I = {1, ..., r}``); the affine node is ``0``;
* ``cartan[i][j] = <alpha_i^vee, alpha_j>`` (0-based storage);
* weights live in fundamental-weight coordinates, roots in simple-root
  coordinates and coroots in simple-coroot coordinates, so that
  ``<nu, xi> = sum_i nu_i xi_i``;
* index sets ``J`` are frozensets of 1-based indices.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from typing import Iterable, NamedTuple

Coroot = tuple  # integer vector in simple-coroot coordinates
Root = tuple  # integer vector in simple-root coordinates


class NotFiniteType(ValueError):
    pass


class RankTooLarge(ValueError):
    pass


class Weight(NamedTuple):
    """A level-zero weight ``sum coeffs[i] varpi_{i+1} + dcoeff * delta``."""

    coeffs: tuple
    dcoeff: int = 0

    def __add__(self, other):  # type: ignore[override]
        return Weight(vadd(self.coeffs, other.coeffs), self.dcoeff + other.dcoeff)

    def __sub__(self, other):
        return Weight(vsub(self.coeffs, other.coeffs), self.dcoeff - other.dcoeff)

    def __neg__(self):
        return Weight(tuple(-c for c in self.coeffs), -self.dcoeff)

    def scale(self, k):
        return Weight(tuple(k * c for c in self.coeffs), k * self.dcoeff)


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vneg(a):
    return tuple(-x for x in a)


def vscale(k, a):
    return tuple(k * x for x in a)


def pair(nu, xi) -> int:
    """``<nu, xi>`` for nu in fundamental coordinates and xi in coroot coordinates."""
    return sum(a * b for a, b in zip(nu, xi))


def is_nonneg(xi) -> bool:
    return all(c >= 0 for c in xi)


def coroot_geq(xi, zeta) -> bool:
    """``xi >= zeta`` in the dominance order on ``Q^vee``."""
    return all(a >= b for a, b in zip(xi, zeta))


NAMED_TYPES = ("A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "G2", "F4")


def named_cartan(name: str) -> list[list[int]]:
    """Cartan matrix of a named finite type, e.g. ``"A2"``, ``"C2"``, ``"G2"``.

    Bourbaki numbering. In type C the last simple root is long, in type B it
    is short, in G2 the first simple root is short.
    """
    name = name.strip().upper()
    if len(name) < 2 or not name[1:].isdigit():
        raise ValueError(f"unknown type {name!r}")
    letter, n = name[0], int(name[1:])
    if n < 1:
        raise ValueError(f"unknown type {name!r}")
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    if letter in "ABCD":
        for i in range(n - 1):
            a[i][i + 1] = a[i + 1][i] = -1
        if letter == "B" and n >= 2:
            a[n - 1][n - 2] = -2
        elif letter == "C" and n >= 2:
            a[n - 2][n - 1] = -2
        elif letter == "D":
            if n < 4:
                raise ValueError(f"unknown type {name!r}")
            a[n - 2][n - 1] = a[n - 1][n - 2] = 0
            a[n - 3][n - 1] = a[n - 1][n - 3] = -1
        elif letter in "BC" and n < 2:
            raise ValueError(f"unknown type {name!r}")
        return a
    if letter == "G" and n == 2:
        return [[2, -3], [-1, 2]]
    if letter == "F" and n == 4:
        return [[2, -1, 0, 0], [-1, 2, -2, 0], [0, -1, 2, -1], [0, 0, -1, 2]]
    raise ValueError(f"unknown type {name!r}")


def _symmetrizer(a):
    """Positive integers d with d_i a_ij = d_j a_ji, or None if impossible."""
    n = len(a)
    d = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if i == j or a[i][j] == 0:
                    continue
                if a[j][i] == 0:
                    return None
                dj = d[i] * a[i][j] / a[j][i]
                if d[j] is None:
                    d[j] = dj
                    queue.append(j)
                elif d[j] != dj:
                    return None
    den = 1
    for x in d:
        den = den * x.denominator // _gcd(den, x.denominator)
    ints = [int(x * den) for x in d]
    g = 0
    for x in ints:
        g = _gcd(g, x)
    return [x // g for x in ints]


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def _leading_minors_positive(m) -> bool:
    n = len(m)
    rows = [[Fraction(x) for x in row] for row in m]
    for k in range(n):
        pivot = rows[k][k]
        if pivot <= 0:
            return False
        for r in range(k + 1, n):
            f = rows[r][k] / pivot
            if f:
                for c in range(k, n):
                    rows[r][c] -= f * rows[k][c]
    return True


class WeylElt:
    """An element of the finite Weyl group, interned per root system.

    ``word`` is a reduced word (1-based indices, leftmost letter acts last);
    ``matrix`` is the action on simple-root coordinates (column j is the
    image of alpha_j). Equality compares matrices.
    """

    __slots__ = ("rs", "idx", "word", "matrix", "comatrix", "wmatrix", "_hash")

    def __init__(self, rs, idx, word, matrix, comatrix, wmatrix):
        self.rs = rs
        self.idx = idx
        self.word = word
        self.matrix = matrix
        self.comatrix = comatrix
        self.wmatrix = wmatrix
        self._hash = hash(matrix)

    def __eq__(self, other):
        return isinstance(other, WeylElt) and self.matrix == other.matrix

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return (len(self.word), self.word) < (len(other.word), other.word)

    def __repr__(self):
        return "e" if not self.word else "s" + ".".join(str(i) for i in self.word)

    def __mul__(self, other):
        return self.rs.weyl[self.rs._mul[self.idx][other.idx]]

    @property
    def length(self) -> int:
        return len(self.word)

    def inverse(self):
        return self.rs.weyl[self.rs._inv[self.idx]]

    def act_root(self, alpha):
        return _matvec(self.matrix, alpha)

    def act_coroot(self, xi):
        return _matvec(self.comatrix, xi)

    def act_weight_coeffs(self, nu):
        return _matvec(self.wmatrix, nu)


def _matvec(m, v):
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in m)


def _matmul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))


class RootSystem:
    """Finite root system with its Weyl group, built from a Cartan matrix."""

    def __init__(self, cartan, name: str | None = None, max_weyl_rank: int = 4):
        a = [list(map(int, row)) for row in cartan]
        n = len(a)
        if n == 0 or any(len(row) != n for row in a):
            raise NotFiniteType("Cartan matrix must be square and nonempty")
        for i in range(n):
            if a[i][i] != 2:
                raise NotFiniteType("diagonal entries must be 2")
            for j in range(n):
                if i != j and (a[i][j] > 0 or (a[i][j] == 0) != (a[j][i] == 0)):
                    raise NotFiniteType("invalid off-diagonal entries")
        d = _symmetrizer(a)
        if d is None:
            raise NotFiniteType("Cartan matrix is not symmetrizable")
        sym = [[d[i] * a[i][j] for j in range(n)] for i in range(n)]
        if not _leading_minors_positive(sym):
            raise NotFiniteType("symmetrization is not positive definite")
        if n > max_weyl_rank:
            raise RankTooLarge(f"rank {n} exceeds {max_weyl_rank}")
        self.name = name
        self.rank = n
        self.cartan = tuple(tuple(row) for row in a)
        self.sym = d
        self.index_set = tuple(range(1, n + 1))
        self._build_roots()
        self._build_weyl()
        self._cache: dict = {}

    def __eq__(self, other):
        return isinstance(other, RootSystem) and self.cartan == other.cartan

    def __hash__(self):
        return hash(self.cartan)

    def __repr__(self):
        return f"RootSystem({self.name or list(map(list, self.cartan))})"

    # roots -----------------------------------------------------------------

    def root_pair(self, alpha, xi) -> int:
        """``<alpha, xi>`` for a root (simple coords) and a coroot."""
        a = self.cartan
        n = self.rank
        return sum(xi[i] * a[i][j] * alpha[j] for i in range(n) for j in range(n) if a[i][j])

    def root_to_weight(self, alpha):
        """Fundamental-weight coordinates of an element of the root lattice."""
        a = self.cartan
        n = self.rank
        return tuple(sum(a[i][j] * alpha[j] for j in range(n)) for i in range(n))

    def _reflect_root(self, i, alpha):
        p = sum(self.cartan[i][j] * alpha[j] for j in range(self.rank))
        out = list(alpha)
        out[i] -= p
        return tuple(out)

    def _build_roots(self):
        n = self.rank
        simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
        seen = set(simple)
        queue = deque(simple)
        while queue:
            alpha = queue.popleft()
            for i in range(n):
                beta = self._reflect_root(i, alpha)
                if beta not in seen:
                    seen.add(beta)
                    queue.append(beta)
        pos = sorted((r for r in seen if all(c >= 0 for c in r)), key=lambda r: (sum(r), r))
        self.simple_roots = simple
        self.simple_coroots = list(simple)
        self.positive_roots = pos
        self.roots = pos + [vneg(r) for r in pos]
        self.root_index = {r: k for k, r in enumerate(self.roots)}
        self.positive_coroots = [self.coroot(r) for r in pos]
        top = max(pos, key=sum)
        self.theta = pos.index(top)
        self.theta_root = top
        self.theta_coroot = self.positive_coroots[self.theta]
        self.rho = tuple([1] * n)
        self.fundamental_weights = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]

    def root_norm(self, alpha) -> Fraction:
        """``(alpha, alpha) / 2`` for the symmetrized form with (alpha_i, alpha_i) / 2 = d_i."""
        n = self.rank
        s = sum(alpha[i] * self.sym[i] * self.cartan[i][j] * alpha[j] for i in range(n) for j in range(n))
        return Fraction(s, 2)

    def coroot(self, alpha):
        """The coroot of a root, in simple-coroot coordinates."""
        dn = self.root_norm(alpha)
        out = []
        for i, c in enumerate(alpha):
            v = Fraction(c * self.sym[i]) / dn
            if v.denominator != 1:
                raise ValueError("not a root")
            out.append(int(v))
        return tuple(out)

    def is_positive_root(self, alpha) -> bool:
        return all(c >= 0 for c in alpha)

    def positive_roots_J(self, J):
        J = frozenset(J)
        return [r for r in self.positive_roots if all(r[i] == 0 for i in range(self.rank) if i + 1 not in J)]

    # Weyl group ------------------------------------------------------------

    def _simple_mats(self, i):
        n = self.rank
        a = self.cartan
        ident = [[int(r == c) for c in range(n)] for r in range(n)]
        root = [row[:] for row in ident]
        for j in range(n):
            root[i][j] -= a[i][j]
        coroot = [row[:] for row in ident]
        for j in range(n):
            coroot[i][j] -= a[j][i]
        wt = [row[:] for row in ident]
        for k in range(n):
            wt[k][i] -= a[k][i]
        return tuple(map(tuple, root)), tuple(map(tuple, coroot)), tuple(map(tuple, wt))

    def _build_weyl(self):
        n = self.rank
        ident = tuple(tuple(int(r == c) for c in range(n)) for r in range(n))
        gens = [self._simple_mats(i) for i in range(n)]
        elts = [WeylElt(self, 0, (), ident, ident, ident)]
        by_mat = {ident: 0}
        left = [[None] * n]
        queue = deque([0])
        while queue:
            k = queue.popleft()
            w = elts[k]
            for i in range(n):
                g = gens[i]
                m = _matmul(g[0], w.matrix)
                j = by_mat.get(m)
                if j is None:
                    j = len(elts)
                    elts.append(WeylElt(self, j, (i + 1,) + w.word, m, _matmul(g[1], w.comatrix), _matmul(g[2], w.wmatrix)))
                    by_mat[m] = j
                    left.append([None] * n)
                    queue.append(j)
                left[k][i] = j
        self.weyl = elts
        self._by_mat = by_mat
        self._left = left
        size = len(elts)
        # right multiplication by simple reflections and full tables
        right = [[by_mat[_matmul(w.matrix, gens[i][0])] for i in range(n)] for w in elts]
        self._right = right
        mul = [[0] * size for _ in range(size)]
        for b in range(size):
            # mul[a][b] = a * b computed by applying b's word on the right
            word = elts[b].word
            for a_ in range(size):
                c = a_
                for i in word:
                    c = right[c][i - 1]
                mul[a_][b] = c
        self._mul = mul
        self._inv = [row.index(0) for row in mul]
        self.identity = elts[0]
        self.w0 = max(elts, key=lambda w: len(w.word))
        # root action as permutation of root indices
        self._root_perm = [[self.root_index[w.act_root(r)] for r in self.roots] for w in elts]
        npos = len(self.positive_roots)
        self._npos = npos

    def s(self, i: int) -> WeylElt:
        """Simple reflection ``s_i`` (1-based)."""
        return self.weyl[self._left[0][i - 1]]

    def from_word(self, word: Iterable[int]) -> WeylElt:
        k = 0
        for i in reversed(tuple(word)):
            k = self._left[k][i - 1]
        return self.weyl[k]

    def root_is_positive_image(self, w: WeylElt, root_idx: int) -> bool:
        return self._root_perm[w.idx][root_idx] < self._npos

    def act_weight(self, w: WeylElt, nu: Weight) -> Weight:
        return Weight(w.act_weight_coeffs(nu.coeffs), nu.dcoeff)

    def act_coroot(self, w: WeylElt, xi):
        return w.act_coroot(xi)

    def length(self, w: WeylElt) -> int:
        return len(w.word)

    def longest(self) -> WeylElt:
        return self.w0

    def reflection(self, alpha) -> WeylElt:
        """The reflection ``s_alpha`` for a (positive or negative) root."""
        key = ("refl", alpha if self.is_positive_root(alpha) else vneg(alpha))
        if key not in self._cache:
            beta = key[1]
            cb = self.coroot(beta)
            n = self.rank
            m = []
            for j in range(n):
                e = tuple(int(k == j) for k in range(n))
                p = self.root_pair(e, cb)
                m.append(vsub(e, vscale(p, beta)))
            mat = tuple(tuple(m[j][i] for j in range(n)) for i in range(n))
            self._cache[key] = self.weyl[self._by_mat[mat]]
        return self._cache[key]

    def weyl_J(self, J) -> list:
        J = frozenset(J)
        key = ("WJ", J)
        if key not in self._cache:
            self._cache[key] = [w for w in self.weyl if set(w.word) <= J]
        return self._cache[key]

    def min_coset_rep(self, w: WeylElt, J) -> WeylElt:
        """The minimal-length representative of ``w W_J``."""
        J = frozenset(J)
        k = w.idx
        changed = True
        while changed:
            changed = False
            for j in J:
                r = self._right[k][j - 1]
                if len(self.weyl[r].word) < len(self.weyl[k].word):
                    k = r
                    changed = True
        return self.weyl[k]

    def weyl_min_reps(self, J) -> list:
        """``W^J`` sorted by (length, word)."""
        J = frozenset(J)
        key = ("WminJ", J)
        if key not in self._cache:
            reps = {self.min_coset_rep(w, J) for w in self.weyl}
            self._cache[key] = sorted(reps)
        return self._cache[key]

    def bruhat_leq(self, w: WeylElt, v: WeylElt) -> bool:
        """Bruhat order ``w <= v`` via the lifting property."""
        return _bruhat(self, w.idx, v.idx)

    # diagram automorphism and projections -----------------------------------

    def dynkin_star(self, i: int) -> int:
        img = self.w0.act_root(self.simple_roots[i - 1])
        return vneg(img).index(1) + 1

    def star_set(self, J):
        return frozenset(self.dynkin_star(j) for j in J)

    def star_weight(self, nu: Weight) -> Weight:
        out = [0] * self.rank
        for i in self.index_set:
            out[self.dynkin_star(i) - 1] = nu.coeffs[i - 1]
        return Weight(tuple(out), nu.dcoeff)

    def star_coroot(self, xi):
        out = [0] * self.rank
        for i in self.index_set:
            out[self.dynkin_star(i) - 1] = xi[i - 1]
        return tuple(out)

    def star_weyl(self, w: WeylElt) -> WeylElt:
        return self.from_word(self.dynkin_star(i) for i in w.word)

    def proj_coroot_J(self, xi, J):
        """Return ``([xi]^J, [xi]_J)``."""
        up = tuple(0 if i + 1 in J else c for i, c in enumerate(xi))
        down = tuple(c if i + 1 in J else 0 for i, c in enumerate(xi))
        return up, down

    def proj_up(self, xi, J):
        return tuple(0 if i + 1 in J else c for i, c in enumerate(xi))

    def proj_down(self, xi, J):
        return tuple(c if i + 1 in J else 0 for i, c in enumerate(xi))

    def J_of(self, lam) -> frozenset:
        """``J_lambda = {i : <lambda, alpha_i^vee> = 0}``."""
        coeffs = lam.coeffs if isinstance(lam, Weight) else lam
        return frozenset(i + 1 for i, c in enumerate(coeffs) if c == 0)

    def zero(self):
        return tuple([0] * self.rank)

    def weight(self, coeffs, d=0) -> Weight:
        return Weight(tuple(coeffs), d)

    def is_dominant(self, nu) -> bool:
        coeffs = nu.coeffs if isinstance(nu, Weight) else nu
        return all(c >= 0 for c in coeffs)


def _bruhat(rs, w, v):
    key = ("bruhat", w, v)
    c = rs._cache.get(key)
    if c is None:
        c = _bruhat_impl(rs, w, v)
        rs._cache[key] = c
    return c


def _bruhat_impl(rs, w, v):
    lw = len(rs.weyl[w].word)
    lv = len(rs.weyl[v].word)
    if lw > lv:
        return False
    if lv == 0:
        return w == v
    i = rs.weyl[v].word[0]  # s_i v < v
    sv = rs._left[v][i - 1]
    sw = rs._left[w][i - 1]
    low = sw if len(rs.weyl[sw].word) < lw else w
    return _bruhat(rs, low, sv)


def build_root_system(cartan) -> RootSystem:
    return RootSystem(cartan)


def weyl_all(rs: RootSystem) -> list:
    return list(rs.weyl)


_NAMED: dict = {}


def root_system(spec) -> RootSystem:
    """A root system from a type name or a Cartan matrix (memoized by name)."""
    if isinstance(spec, RootSystem):
        return spec
    if isinstance(spec, str):
        key = spec.strip().upper()
        if key not in _NAMED:
            _NAMED[key] = RootSystem(named_cartan(key), name=key)
        return _NAMED[key]
    return RootSystem(spec)
