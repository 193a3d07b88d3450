"""Truncated FI-modules and the difference-functor calculus.

A ``TruncFIModule`` holds a functor from finite sets and injections to
modules, recorded up to a truncation level N: per-level presented modules,
the one-step inclusion maps (new last point), and the actions of the
adjacent transpositions.  On top of that sit the translation, difference
and kernel operations and the degree computations.

Truncation discipline: translation and difference consume window, so every
degree answer carries the window on which it is certified.  A "true" or a
numeric degree never claims more than the window shows.

Convention for translation: ``shift(F, x)`` stores F(n+x) at level n with
the functorial variable occupying the FIRST n points and the x translation
points the LAST x.  The canonical map F -> shift(F, x) is then literally
the composite of the stored inclusions, and the inclusion map of the
shifted functor inserts the new point just before the translation block
(the stored inclusion composed with a cycle of transpositions).
"""
from __future__ import annotations

from .exactlin import (
    Coeff, Mat, ModuleMap, PresentedModule,
    check_exact, cokernel, direct_sum_modules, factor_through, kernel,
    lift_through,
)
from .exactlin.smith import RowBasis


class FunctorError(Exception):
    pass


class WindowError(FunctorError):
    """An operation needed more truncation window than is available."""


NEG_INF = "-inf"
NOT_CERTIFIED = "not certified"


class DegreeReport:
    """Outcome of a degree computation.

    value is an int, "-inf" (stably null / zero), or "not certified";
    window is the inclusive level range on which the certificate holds.
    """

    def __init__(self, value, window=None, margin=None):
        if isinstance(value, int):
            if window is None or window[1] < window[0]:
                raise FunctorError("numeric degree needs a non-empty window")
        self.value = value
        self.window = window
        self.margin = margin

    @property
    def certified(self) -> bool:
        return self.value != NOT_CERTIFIED

    def __eq__(self, other):
        if isinstance(other, DegreeReport):
            return (self.value, self.window, self.margin) == (
                other.value, other.window, other.margin)
        return self.value == other

    def __repr__(self):
        return f"DegreeReport({self.value!r}, window={self.window}, margin={self.margin})"

    def __str__(self):
        s = f"degree = {self.value}"
        if self.window is not None:
            s += f", window [{self.window[0]},{self.window[1]}]"
        if self.margin is not None:
            s += f", margin {self.margin}"
        return s


class DimProfile:
    """Per-level profiles with the finite-difference table of dimensions."""

    def __init__(self, profiles, dims, diffs, poly_degree, poly_from):
        self.profiles = profiles      # invariant-factor profile per level
        self.dims = dims              # numeric row: dim (fields) / free rank (Z)
        self.diffs = diffs            # diffs[0] is dims, diffs[k+1] differences
        self.poly_degree = poly_degree
        self.poly_from = poly_from

    def __repr__(self):
        return (f"DimProfile(dims={self.dims}, poly_degree={self.poly_degree}, "
                f"poly_from={self.poly_from})")


class TruncFIModule:
    """A functor on finite sets and injections, truncated at level N.

    levels[n]   -- PresentedModule at the set of size n, 0 <= n <= N
    incl[n]     -- ModuleMap levels[n] -> levels[n+1] (new last point)
    sym[n]      -- matrices of the adjacent transpositions s_1..s_{n-1}
    """

    def __init__(self, coeff: Coeff, levels, incl, sym):
        self.coeff = coeff
        self.levels = tuple(levels)
        self.N = len(self.levels) - 1
        if self.N < 0:
            raise FunctorError("a truncated functor needs at least level 0")
        self.incl = tuple(incl)
        self.sym = tuple(tuple(s) for s in sym)
        if len(self.incl) != self.N:
            raise FunctorError(f"expected {self.N} inclusion maps, got {len(self.incl)}")
        if len(self.sym) != self.N + 1:
            raise FunctorError("one transposition list per level expected")
        for n, mats in enumerate(self.sym):
            if len(mats) != max(n - 1, 0):
                raise FunctorError(
                    f"level {n} needs {max(n - 1, 0)} transpositions, got {len(mats)}")

    # -- basic access ----------------------------------------------------

    def level(self, n: int) -> PresentedModule:
        return self.levels[n]

    def sym_map(self, n: int, i: int) -> ModuleMap:
        """The action of s_{i+1} on level n (i is 0-indexed)."""
        return ModuleMap(self.levels[n], self.levels[n], self.sym[n][i])

    def unit_to(self, n: int, m: int) -> ModuleMap:
        """The composite inclusion levels[n] -> levels[m], n <= m <= N."""
        if not (0 <= n <= m <= self.N):
            raise WindowError(f"no inclusion composite {n} -> {m} at truncation {self.N}")
        f = ModuleMap.identity(self.levels[n])
        for k in range(n, m):
            f = f.then(self.incl[k])
        return f

    def perm_matrix(self, n: int, perm) -> Mat:
        """Matrix of the action of a permutation on level n.

        perm is a sequence with perm[i] = image of point i+1 (1-indexed).
        """
        word = perm_word(perm)
        mat = Mat.identity(self.coeff, self.levels[n].gens)
        # sigma = s_{w1} o s_{w2} o ... applied right-to-left, so the
        # row-convention matrix multiplies left-to-right in reversed order
        for i in reversed(word):
            mat = mat @ self.sym[n][i]
        return mat

    def is_zero_functor(self) -> bool:
        return all(m.is_zero() for m in self.levels)

    def structurally_equal(self, other: "TruncFIModule") -> bool:
        return (
            self.coeff == other.coeff
            and self.N == other.N
            and all(a.same_presentation(b) for a, b in zip(self.levels, other.levels))
            and all(a.mat == b.mat for a, b in zip(self.incl, other.incl))
            and self.sym == other.sym
        )

    def profile_eq(self, other: "TruncFIModule") -> bool:
        return (
            self.coeff == other.coeff
            and self.N == other.N
            and all(a.profile_eq(b) for a, b in zip(self.levels, other.levels))
        )

    def __repr__(self):
        dims = [m.invariant_factors() for m in self.levels]
        return f"TruncFIModule({self.coeff.code}, N={self.N}, profiles={dims})"

    # -- structural invariants -------------------------------------------

    def verify(self) -> list[str]:
        """Check all structural invariants; returns a list of violations."""
        bad = []
        for n in range(self.N + 1):
            lvl = self.levels[n]
            for i, s in enumerate(self.sym[n]):
                m = ModuleMap(lvl, lvl, s)
                if not m.is_well_defined():
                    bad.append(f"level {n}: s_{i+1} does not respect the relations")
                    continue
                if not m.then(m).equals(ModuleMap.identity(lvl)):
                    bad.append(f"level {n}: s_{i+1} is not an involution")
            for i in range(len(self.sym[n]) - 1):
                a = self.sym_map(n, i)
                b = self.sym_map(n, i + 1)
                if not a.then(b).then(a).equals(b.then(a).then(b)):
                    bad.append(f"level {n}: braid relation fails at s_{i+1}, s_{i+2}")
            for i in range(len(self.sym[n])):
                for j in range(i + 2, len(self.sym[n])):
                    a, b = self.sym_map(n, i), self.sym_map(n, j)
                    if not a.then(b).equals(b.then(a)):
                        bad.append(
                            f"level {n}: distant transpositions s_{i+1}, s_{j+1} "
                            "do not commute")
        for n in range(self.N):
            inc = self.incl[n]
            if not inc.is_well_defined():
                bad.append(f"inclusion at level {n} does not respect the relations")
                continue
            for i in range(max(n - 1, 0)):
                left = self.sym_map(n, i).then(inc)
                right = inc.then(self.sym_map(n + 1, i))
                if not left.equals(right):
                    bad.append(f"inclusion at level {n} not equivariant for s_{i+1}")
        for n in range(self.N - 1):
            two = self.incl[n].then(self.incl[n + 1])
            swap_new = self.sym_map(n + 2, n)  # transposition of the added pair
            if not two.then(swap_new).equals(two):
                bad.append(
                    f"levels {n}->{n+2}: transposition of the two added points "
                    "moves the image")
        return bad

    def verify_or_raise(self):
        bad = self.verify()
        if bad:
            raise FunctorError("; ".join(bad))

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "coeff": self.coeff.code,
            "N": self.N,
            "levels": [{"gens": m.gens, "rels": m.rels.to_json()}
                       for m in self.levels],
            "incl": [f.mat.to_json() for f in self.incl],
            "sym": [[s.to_json() for s in mats] for mats in self.sym],
        }

    @classmethod
    def from_json(cls, data: dict) -> "TruncFIModule":
        coeff = Coeff.parse(data["coeff"])
        levels = []
        for entry in data["levels"]:
            gens = int(entry["gens"])
            levels.append(PresentedModule(
                coeff, gens, Mat.from_json(coeff, entry.get("rels", []), ncols=gens)))
        n_levels = len(levels)
        if int(data["N"]) != n_levels - 1:
            raise FunctorError("N does not match the number of levels")
        incl = []
        for n, mat in enumerate(data["incl"]):
            m = Mat.from_json(coeff, mat, ncols=levels[n + 1].gens)
            if m.nrows != levels[n].gens:
                # empty matrices lose their height in JSON
                m = Mat(coeff, levels[n].gens, levels[n + 1].gens, m.rows) \
                    if m.nrows else Mat.zero(coeff, levels[n].gens, levels[n + 1].gens)
            incl.append(ModuleMap(levels[n], levels[n + 1], m))
        sym = []
        for n, mats in enumerate(data["sym"]):
            lvl_sym = []
            for s in mats:
                m = Mat.from_json(coeff, s, ncols=levels[n].gens)
                if m.nrows != levels[n].gens:
                    m = Mat.zero(coeff, levels[n].gens, levels[n].gens)
                lvl_sym.append(m)
            sym.append(lvl_sym)
        return cls(coeff, levels, incl, sym)


def perm_word(perm) -> list[int]:
    """Adjacent-transposition word for a permutation, as 0-indexed positions.

    Returns w with perm = s_{w[0]+1} o s_{w[1]+1} o ... (rightmost applied
    first); bubble sort on the one-line notation.

    >>> perm_word((2, 1))
    [0]
    >>> perm_word((1, 2, 3))
    []
    """
    p = list(perm)
    word = []
    for limit in range(len(p) - 1, 0, -1):
        for i in range(limit):
            if p[i] > p[i + 1]:
                p[i], p[i + 1] = p[i + 1], p[i]
                word.append(i)
    # the recorded swaps sort p; the permutation is their reverse product
    return word[::-1]


class NatMap:
    """A levelwise family of module maps between truncated functors."""

    def __init__(self, src: TruncFIModule, dst: TruncFIModule, maps):
        if src.N != dst.N:
            raise FunctorError("natural map between different truncations")
        self.src = src
        self.dst = dst
        self.maps = tuple(maps)
        if len(self.maps) != src.N + 1:
            raise FunctorError("one component per level expected")

    def component(self, n: int) -> ModuleMap:
        return self.maps[n]

    def is_natural(self) -> bool:
        for n in range(self.src.N):
            left = self.maps[n].then(self.dst.incl[n])
            right = self.src.incl[n].then(self.maps[n + 1])
            if not left.equals(right):
                return False
        for n in range(self.src.N + 1):
            for i in range(len(self.src.sym[n])):
                left = self.src.sym_map(n, i).then(self.maps[n])
                right = self.maps[n].then(self.dst.sym_map(n, i))
                if not left.equals(right):
                    return False
        return True

    def is_levelwise_iso(self) -> bool:
        from .exactlin import is_isomorphism
        return all(is_isomorphism(f) for f in self.maps)

    def is_zero(self) -> bool:
        return all(f.is_zero_map() for f in self.maps)


def truncate(F: TruncFIModule, M: int) -> TruncFIModule:
    if M > F.N or M < 0:
        raise WindowError(f"cannot truncate at {M}, window is [0, {F.N}]")
    return TruncFIModule(F.coeff, F.levels[:M + 1], F.incl[:M], F.sym[:M + 1])


def insertion_map(F: TruncFIModule, n: int, x: int) -> ModuleMap:
    """F applied to the injection n+x -> n+1+x fixing 1..n and shifting the
    last x points up by one (insertion just before the translation block)."""
    f = F.incl[n + x]
    mat = f.mat
    for i in range(n + x - 1, n - 1, -1):
        # s_{i+1} at level n+x+1, applied left to right in decreasing order
        mat = mat @ F.sym[n + x + 1][i]
    return ModuleMap(F.levels[n + x], F.levels[n + x + 1], mat)


def shift(F: TruncFIModule, x: int) -> TruncFIModule:
    """The translation of F by x: level n holds F(n+x).

    >>> from .corpus import build
    >>> shift(build("const", "Z", 4), 2).N
    2
    """
    if x < 0 or x > F.N:
        raise WindowError(f"shift by {x} exceeds the window [0, {F.N}]")
    if x == 0:
        return F
    M = F.N - x
    levels = [F.levels[n + x] for n in range(M + 1)]
    incl = [insertion_map(F, n, x) for n in range(M)]
    sym = [[F.sym[n + x][i] for i in range(max(n - 1, 0))] for n in range(M + 1)]
    return TruncFIModule(F.coeff, levels, incl, sym)


def unit_map(F: TruncFIModule, x: int) -> NatMap:
    """The canonical map F -> shift(F, x): at each level the composite of
    the stored inclusions."""
    if x < 0 or x > F.N:
        raise WindowError(f"unit map for x={x} exceeds the window [0, {F.N}]")
    M = F.N - x
    src = truncate(F, M)
    dst = shift(F, x)
    maps = []
    for n in range(M + 1):
        comp = F.unit_to(n, n + x)
        maps.append(ModuleMap(src.levels[n], dst.levels[n], comp.mat))
    return NatMap(src, dst, maps)


def kernel_nat(u: NatMap) -> tuple[TruncFIModule, NatMap]:
    """Levelwise kernel with the induced functor structure."""
    F = u.src
    levels, incls = [], []
    for n in range(F.N + 1):
        k, inc = kernel(u.maps[n])
        levels.append(k)
        incls.append(inc)
    new_incl = []
    for n in range(F.N):
        h = incls[n].then(F.incl[n])
        new_incl.append(factor_through(h, incls[n + 1]))
    new_sym = []
    for n in range(F.N + 1):
        mats = []
        for i in range(max(n - 1, 0)):
            h = incls[n].then(F.sym_map(n, i))
            mats.append(factor_through(h, incls[n]).mat)
        new_sym.append(mats)
    K = TruncFIModule(F.coeff, levels, new_incl, new_sym)
    return K, NatMap(K, F, incls)


def cokernel_nat(u: NatMap) -> tuple[TruncFIModule, NatMap]:
    """Levelwise cokernel with the induced functor structure."""
    G = u.dst
    levels, projs = [], []
    for n in range(G.N + 1):
        c, proj = cokernel(u.maps[n])
        levels.append(c)
        projs.append(proj)
    new_incl = [ModuleMap(levels[n], levels[n + 1], G.incl[n].mat)
                for n in range(G.N)]
    new_sym = [[G.sym[n][i] for i in range(max(n - 1, 0))]
               for n in range(G.N + 1)]
    C = TruncFIModule(G.coeff, levels, new_incl, new_sym)
    return C, NatMap(G, C, projs)


def diff(F: TruncFIModule, x: int = 1) -> TruncFIModule:
    """The difference functor: levelwise cokernel of F -> shift(F, x).

    >>> from .corpus import build
    >>> [m.invariant_factors() for m in diff(build("zgeq(2)", "Z", 4)).levels]
    [[0], [1], [0], [0]]
    """
    if x > F.N:
        raise WindowError(f"diff by {x} exceeds the window [0, {F.N}]")
    C, _ = cokernel_nat(unit_map(F, x))
    return C

def kappa(F: TruncFIModule, x: int = 1) -> TruncFIModule:
    """The kernel functor: levelwise kernel of F -> shift(F, x)."""
    if x > F.N:
        raise WindowError(f"kappa by {x} exceeds the window [0, {F.N}]")
    K, _ = kernel_nat(unit_map(F, x))
    return K


def is_stably_null(F: TruncFIModule, margin: int = 2) -> bool:
    """True iff every level up to N - margin dies in F(N).

    A certificate on the window only: the colimit genuinely vanishing is a
    statement about all levels, which a truncation cannot see.
    """
    top = F.N - margin
    if top < 0:
        raise WindowError(f"margin {margin} empties the window [0, {F.N}]")
    return all(F.unit_to(n, F.N).is_zero_map() for n in range(top + 1))


def stable_kernel(F: TruncFIModule, margin: int = 2) -> TruncFIModule:
    """The largest subfunctor dying by the top level, certified on
    [0, N - margin]."""
    top = F.N - margin
    if margin < 1 or top < 0:
        raise WindowError(f"margin {margin} empties the window [0, {F.N}]")
    levels, incls = [], []
    for n in range(top + 1):
        k, inc = kernel(F.unit_to(n, F.N))
        levels.append(k)
        incls.append(inc)
    new_incl = []
    for n in range(top):
        h = incls[n].then(F.incl[n])
        new_incl.append(factor_through(h, incls[n + 1]))
    new_sym = []
    for n in range(top + 1):
        mats = []
        for i in range(max(n - 1, 0)):
            h = incls[n].then(F.sym_map(n, i))
            mats.append(factor_through(h, incls[n]).mat)
        new_sym.append(mats)
    return TruncFIModule(F.coeff, levels, new_incl, new_sym)


def strong_degree(F: TruncFIModule) -> DegreeReport:
    """Smallest d with the (d+1)-st difference zero on its window.

    >>> from .corpus import build
    >>> strong_degree(build("zgeq(2)", "Z", 6)).value
    2
    """
    G = F
    applied = 0
    while True:
        if G.is_zero_functor():
            if applied == 0:
                return DegreeReport(NEG_INF, (0, G.N))
            return DegreeReport(applied - 1, (0, G.N))
        if G.N < 1:
            return DegreeReport(NOT_CERTIFIED, None)
        G = diff(G)
        applied += 1


def weak_degree(F: TruncFIModule, margin: int = 2) -> DegreeReport:
    """Smallest d with the (d+1)-st difference stably null at the margin."""
    if margin < 1:
        raise FunctorError("margin must be at least 1")
    G = F
    applied = 0
    while True:
        top = G.N - margin
        if top < 0:
            return DegreeReport(NOT_CERTIFIED, None, margin)
        if is_stably_null(G, margin):
            if applied == 0:
                return DegreeReport(NEG_INF, (0, top), margin)
            return DegreeReport(applied - 1, (0, top), margin)
        if G.N < 1:
            return DegreeReport(NOT_CERTIFIED, None, margin)
        G = diff(G)
        applied += 1


def generation_degree(F: TruncFIModule) -> DegreeReport:
    """Smallest r such that the values on sets of size <= r span every
    level of the window (images under all injections, i.e. the symmetric-
    group saturation of the composite inclusions)."""
    if F.N < 1:
        raise FunctorError("generation degree needs window at least [0, 1]")
    needed = 0
    for n in range(1, F.N + 1):
        lvl = F.levels[n]
        span = RowBasis(F.coeff, lvl.gens)
        span.add_mat(lvl.rels)
        gen_mats = [s for s in F.sym[n]]
        r_min = None
        if span.is_full() or lvl.gens == 0:
            r_min = 0
        else:
            for r in range(0, n):
                comp = F.unit_to(r, n)
                queue = [list(row) for row in comp.mat.rows]
                for v in queue:
                    span.add(v)
                # close under the transposition actions
                while queue:
                    v = queue.pop()
                    for s in gen_mats:
                        w = mul_vec(F.coeff, v, s)
                        if span.add(w):
                            queue.append(list(w))
                if span.is_full():
                    r_min = r
                    break
            if r_min is None:
                r_min = n
        needed = max(needed, r_min)
    return DegreeReport(needed, (0, F.N))


def mul_vec(coeff: Coeff, v, mat: Mat):
    from .exactlin.matrix import mul_row_mat
    return mul_row_mat(coeff, v, mat.rows, mat.ncols)


def dim_profile(F: TruncFIModule) -> DimProfile:
    """Profiles, the finite-difference table, and the eventual-polynomiality
    witness (over Z the numeric row is the free rank)."""
    profiles = [m.invariant_factors() for m in F.levels]
    dims = [p[0] for p in profiles]
    diffs = [list(dims)]
    while len(diffs[-1]) > 1:
        prev = diffs[-1]
        diffs.append([b - a for a, b in zip(prev, prev[1:])])
    poly_degree = None
    poly_from = None
    for d in range(len(diffs) - 1):
        row = diffs[d + 1]
        if not row:
            break
        s = len(row)
        while s > 0 and row[s - 1] == 0:
            s -= 1
        if s < len(row):
            poly_degree = d
            poly_from = s
            break
    return DimProfile(profiles, dims, diffs, poly_degree, poly_from)


def direct_sum(F: TruncFIModule, G: TruncFIModule) -> TruncFIModule:
    if F.coeff != G.coeff or F.N != G.N:
        raise FunctorError("direct sum needs matching coefficients and truncation")
    levels = [direct_sum_modules(a, b) for a, b in zip(F.levels, G.levels)]
    incl = [ModuleMap(levels[n], levels[n + 1],
                      F.incl[n].mat.block_diag(G.incl[n].mat))
            for n in range(F.N)]
    sym = [[F.sym[n][i].block_diag(G.sym[n][i]) for i in range(max(n - 1, 0))]
           for n in range(F.N + 1)]
    return TruncFIModule(F.coeff, levels, incl, sym)


def tensor(F: TruncFIModule, G: TruncFIModule) -> TruncFIModule:
    """Levelwise tensor product with the diagonal action (fields only)."""
    if F.coeff != G.coeff or F.N != G.N:
        raise FunctorError("tensor needs matching coefficients and truncation")
    if not F.coeff.is_field:
        raise FunctorError("tensor requires field coefficients")
    coeff = F.coeff
    levels = []
    for a, b in zip(F.levels, G.levels):
        gens = a.gens * b.gens
        rels = a.rels.kron(Mat.identity(coeff, b.gens)).stack(
            Mat.identity(coeff, a.gens).kron(b.rels))
        levels.append(PresentedModule(coeff, gens, rels))
    incl = [ModuleMap(levels[n], levels[n + 1],
                      F.incl[n].mat.kron(G.incl[n].mat))
            for n in range(F.N)]
    sym = [[F.sym[n][i].kron(G.sym[n][i]) for i in range(max(n - 1, 0))]
           for n in range(F.N + 1)]
    return TruncFIModule(coeff, levels, incl, sym)


# -- Schur-type postcomposition ------------------------------------------

def _tensor_power_mat(m: Mat, k: int) -> Mat:
    out = Mat.identity(m.coeff, 1)
    for _ in range(k):
        out = out.kron(m)
    return out


def _exterior_power_mat(m: Mat, k: int) -> Mat:
    from itertools import combinations
    from .exactlin.matrix import det
    rows_idx = list(combinations(range(m.nrows), k))
    cols_idx = list(combinations(range(m.ncols), k))
    rows = []
    for I in rows_idx:
        rows.append(tuple(det(m.submatrix(I, J)) for J in cols_idx))
    return Mat(m.coeff, len(rows_idx), len(cols_idx), tuple(rows))


def _symmetric_power_mat(m: Mat, k: int) -> Mat:
    from itertools import combinations_with_replacement
    coeff = m.coeff
    cols_idx = list(combinations_with_replacement(range(m.ncols), k))
    col_pos = {c: i for i, c in enumerate(cols_idx)}
    rows_idx = list(combinations_with_replacement(range(m.nrows), k))
    zero = coeff.zero()
    out_rows = []
    for I in rows_idx:
        acc = {(): coeff.one()}
        for i in I:
            nxt = {}
            row = m.rows[i]
            for mono, c in acc.items():
                for j, a in enumerate(row):
                    if a == zero:
                        continue
                    key = tuple(sorted(mono + (j,)))
                    nxt[key] = coeff.normalize(nxt.get(key, zero) + c * a)
            acc = nxt
        out = [zero] * len(cols_idx)
        for mono, c in acc.items():
            out[col_pos[mono]] = c
        out_rows.append(tuple(out))
    return Mat(coeff, len(rows_idx), len(cols_idx), tuple(out_rows))


_SCHUR = {"T": _tensor_power_mat, "S": _symmetric_power_mat, "L": _exterior_power_mat}


def parse_schur(token: str) -> tuple[str, int]:
    """Parse "T2", "S^3", "L2" (L = exterior power) into (kind, k)."""
    token = token.replace("^", "")
    kind = token[0].upper()
    if kind not in _SCHUR:
        raise FunctorError(f"unknown power functor {token!r} (use T/S/L)")
    return kind, int(token[1:])


def freeify(F: TruncFIModule) -> tuple[TruncFIModule, NatMap]:
    """Over a field: replace every level by a free presentation, with a
    witness isomorphism from F to the result."""
    if not F.coeff.is_field:
        raise FunctorError("freeify needs field coefficients")
    coeff = F.coeff
    to_free = []
    from_free = []
    levels = []
    for m in F.levels:
        span = m.rel_span()
        pivots = set(span.pivots)
        free_cols = [j for j in range(m.gens) if j not in pivots]
        dim = len(free_cols)
        free = PresentedModule.free(coeff, dim)
        levels.append(free)
        # to_free: coordinates of each old generator in the free basis
        rows = []
        for g in range(m.gens):
            unit = [coeff.zero()] * m.gens
            unit[g] = coeff.one()
            red = span.reduce(unit)
            rows.append(tuple(red[j] for j in free_cols))
        to_free.append(ModuleMap(m, free, Mat(coeff, m.gens, dim, tuple(rows))))
        back = []
        for j in free_cols:
            unit = [coeff.zero()] * m.gens
            unit[j] = coeff.one()
            back.append(tuple(unit))
        from_free.append(ModuleMap(free, m, Mat(coeff, dim, m.gens, tuple(back))))
    incl = [from_free[n].then(F.incl[n]).then(to_free[n + 1]) for n in range(F.N)]
    sym = [[from_free[n].then(F.sym_map(n, i)).then(to_free[n]).mat
            for i in range(max(n - 1, 0))] for n in range(F.N + 1)]
    G = TruncFIModule(coeff, levels, incl, sym)
    return G, NatMap(F, G, to_free)


def postcompose(F: TruncFIModule, schur: str) -> TruncFIModule:
    """Postcompose with a tensor, symmetric or exterior power (fields only).

    >>> from .corpus import build
    >>> dim_profile(postcompose(build("P(1)", "Q", 4), "L2")).dims
    [0, 0, 1, 3, 6]
    """
    kind, k = parse_schur(schur)
    if not F.coeff.is_field:
        raise FunctorError("power functors are implemented over fields only")
    base = F
    if any(m.rels.nrows and not m.rels.is_zero() for m in F.levels):
        base, _ = freeify(F)
    trans = _SCHUR[kind]
    levels = [PresentedModule.free(base.coeff, trans(
        Mat.identity(base.coeff, m.gens), k).nrows) for m in base.levels]
    incl = [ModuleMap(levels[n], levels[n + 1], trans(base.incl[n].mat, k))
            for n in range(base.N)]
    sym = [[trans(base.sym[n][i], k) for i in range(max(n - 1, 0))]
           for n in range(base.N + 1)]
    return TruncFIModule(base.coeff, levels, incl, sym)


# -- six-term sequence and exactness transfer ------------------------------

def verify_six_term(F: TruncFIModule) -> bool:
    """Levelwise exactness of
    0 -> ker(u) -> ker(vu) -> ker(v) -> coker(u) -> coker(vu) -> coker(v) -> 0
    for u the one-step unit map and v its translate (x = y = one point).

    >>> from .corpus import build
    >>> verify_six_term(build("zgeq(2)", "Z", 5))
    True
    """
    if F.N < 2:
        raise WindowError("six-term check needs window at least [0, 2]")
    M = F.N - 2
    zero = PresentedModule.zero(F.coeff)
    for n in range(M + 1):
        u = F.incl[n]
        v = F.incl[n + 1]
        vu = u.then(v)
        ku, iku = kernel(u)
        kvu, ikvu = kernel(vu)
        kv, ikv = kernel(v)
        cu, pu = cokernel(u)
        cvu, pvu = cokernel(vu)
        cv, pv = cokernel(v)
        m1 = factor_through(iku, ikvu)              # ker u -> ker vu
        m2 = factor_through(ikvu.then(u), ikv)      # ker vu -> ker v
        m3 = ikv.then(pu)                           # ker v -> coker u
        m4 = ModuleMap(cu, cvu, v.mat)              # coker u -> coker vu
        m5 = ModuleMap(cvu, cv, Mat.identity(F.coeff, cvu.gens))
        seq = [
            ModuleMap.zero_map(zero, ku),
            m1, m2, m3, m4, m5,
            ModuleMap.zero_map(cv, zero),
        ]
        if not check_exact(seq):
            return False
    return True


def exactness_transfer(i: NatMap, p: NatMap, x: int = 1) -> bool:
    """For a levelwise short exact sequence F >-> G ->> H, check that
    0 -> kF -> kG -> kH -> dF -> dG -> dH -> 0 is exact at every level
    that the window allows (k and d the kernel/cokernel of the x-unit)."""
    F, G, H = i.src, i.dst, p.dst
    M = F.N - x
    if M < 0:
        raise WindowError("window too small for the exactness transfer")
    zero = PresentedModule.zero(F.coeff)
    for n in range(M + 1):
        uf = F.unit_to(n, n + x)
        ug = G.unit_to(n, n + x)
        uh = H.unit_to(n, n + x)
        kf, ikf = kernel(uf)
        kg, ikg = kernel(ug)
        kh, ikh = kernel(uh)
        cf, pf = cokernel(uf)
        cg, pg = cokernel(ug)
        ch, ph = cokernel(uh)
        m1 = factor_through(ikf.then(i.maps[n]), ikg)
        m2 = factor_through(ikg.then(p.maps[n]), ikh)
        # connecting map: lift a kernel class of H to G, push up, pull back
        # along the inclusion at the top, project to the cokernel of F
        lifted = lift_through(ikh, p.maps[n])
        pushed = lifted.then(ug)
        back = factor_through(pushed, i.maps[n + x])
        m3 = back.then(pf)
        m4 = ModuleMap(cf, cg, i.maps[n + x].mat)
        m5 = ModuleMap(cg, ch, p.maps[n + x].mat)
        seq = [
            ModuleMap.zero_map(zero, kf),
            m1, m2, m3, m4, m5,
            ModuleMap.zero_map(ch, zero),
        ]
        if not check_exact(seq):
            return False
    return True
