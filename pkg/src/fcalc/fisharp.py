"""Truncated FI#-modules: functors on finite sets with partial injections.

An ``FISharpModule`` extends the FI-module data with projection maps
(dropping the last point).  Any partial injection is a composite of
inclusions, projections and permutations, so this linear-size data
determines the whole functor; the epsilon idempotents make the
reconstruction canonical.

On top of the raw structure live the commuting idempotents ``epsilon_I``,
their Moebius inversion ``e_I`` (a complete orthogonal family), the
cross-effects, the decomposition into symmetric-group representations and
its inverse, and the stabilized-translation left Kan extension ``alpha``
from FI-modules with its adjunction unit.
"""
from __future__ import annotations

from itertools import combinations

from .exactlin import (
    Coeff, Mat, ModuleMap, PresentedModule,
    direct_sum_modules, factor_through, image_in, invert_iso, is_isomorphism,
)
from .fimod import (
    FunctorError, NatMap, TruncFIModule, WindowError, insertion_map,
    perm_word, truncate,
)


class FISharpModule(TruncFIModule):
    """FI-module data plus projections: proj[n] maps level n+1 to level n
    (the partial injection leaving the new last point undefined)."""

    def __init__(self, coeff, levels, incl, sym, proj):
        super().__init__(coeff, levels, incl, sym)
        self.proj = tuple(proj)
        if len(self.proj) != self.N:
            raise FunctorError(f"expected {self.N} projection maps")

    def verify(self) -> list[str]:
        bad = super().verify()
        for n in range(self.N):
            if not self.proj[n].is_well_defined():
                bad.append(f"projection at level {n+1} does not respect relations")
                continue
            up_down = self.incl[n].then(self.proj[n])
            if not up_down.equals(ModuleMap.identity(self.levels[n])):
                bad.append(f"level {n}: proj o incl is not the identity")
            idem = self.proj[n].then(self.incl[n])
            for i in range(max(n - 1, 0)):
                s = self.sym_map(n + 1, i)
                if not s.then(idem).equals(idem.then(s)):
                    bad.append(
                        f"level {n+1}: incl o proj does not commute with s_{i+1}")
                left = s.then(self.proj[n])
                right = self.proj[n].then(self.sym_map(n, i))
                if not left.equals(right):
                    bad.append(f"projection at level {n+1} not equivariant for s_{i+1}")
        return bad

    def to_json(self) -> dict:
        data = super().to_json()
        data["proj"] = [f.mat.to_json() for f in self.proj]
        return data

    @classmethod
    def from_json(cls, data: dict) -> "FISharpModule":
        base = TruncFIModule.from_json(data)
        proj = []
        for n, mat in enumerate(data["proj"]):
            m = Mat.from_json(base.coeff, mat, ncols=base.levels[n].gens)
            if m.nrows != base.levels[n + 1].gens:
                m = Mat.zero(base.coeff, base.levels[n + 1].gens, base.levels[n].gens)
            proj.append(ModuleMap(base.levels[n + 1], base.levels[n], m))
        return cls(base.coeff, base.levels, base.incl, base.sym, proj)


def eta_restrict(F: FISharpModule) -> TruncFIModule:
    """Forget the projections: the underlying FI-module."""
    return TruncFIModule(F.coeff, F.levels, F.incl, F.sym)


def _down_up(F: FISharpModule, n: int, k: int) -> Mat:
    """Matrix of the idempotent keeping the first k points of level n."""
    mat = Mat.identity(F.coeff, F.levels[n].gens)
    for m in range(n - 1, k - 1, -1):
        mat = mat @ F.proj[m].mat
    for m in range(k, n):
        mat = mat @ F.incl[m].mat
    return mat


def _sorting_perm(n: int, subset: tuple[int, ...]) -> tuple[int, ...]:
    """A permutation of {1..n} sending subset (sorted, 1-indexed) onto
    {1..k} order-preservingly and the complement onto the rest."""
    rest = [x for x in range(1, n + 1) if x not in set(subset)]
    sigma = [0] * n
    for pos, x in enumerate(sorted(subset), start=1):
        sigma[x - 1] = pos
    for pos, x in enumerate(rest, start=len(subset) + 1):
        sigma[x - 1] = pos
    return tuple(sigma)


def _inverse_perm(perm: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for i, v in enumerate(perm):
        inv[v - 1] = i + 1
    return tuple(inv)


def epsilon_idem(F: FISharpModule, n: int, subset) -> ModuleMap:
    """The idempotent action of the partial injection fixing subset of
    {1..n} and undefined elsewhere.

    epsilon_{full} is the identity, epsilon_{empty} factors through level 0,
    and epsilon_I epsilon_J = epsilon_{I cap J}.
    """
    I = tuple(sorted(set(subset)))
    if n > F.N:
        raise WindowError(f"level {n} beyond the truncation {F.N}")
    if any(x < 1 or x > n for x in I):
        raise FunctorError(f"subset {I} not contained in 1..{n}")
    k = len(I)
    lvl = F.levels[n]
    if k == n:
        return ModuleMap.identity(lvl)
    sigma = _sorting_perm(n, I)
    m_sigma = F.perm_matrix(n, sigma)
    m_inv = F.perm_matrix(n, _inverse_perm(sigma))
    mat = m_sigma @ _down_up(F, n, k) @ m_inv
    return ModuleMap(lvl, lvl, mat)


def moebius_idem(F: FISharpModule, n: int, subset) -> ModuleMap:
    """Moebius inversion of the epsilon family: alternating sum over the
    subsets of the given one.  The e_I form a complete orthogonal family."""
    I = tuple(sorted(set(subset)))
    lvl = F.levels[n]
    total = Mat.zero(F.coeff, lvl.gens, lvl.gens)
    for r in range(len(I) + 1):
        for J in combinations(I, r):
            term = epsilon_idem(F, n, J).mat
            if (len(I) - r) % 2:
                total = total - term
            else:
                total = total + term
    return ModuleMap(lvl, lvl, total)


class SymRep:
    """A representation of the symmetric group on k letters: a presented
    module with the actions of the adjacent transpositions."""

    def __init__(self, degree: int, module: PresentedModule, sym):
        self.degree = degree
        self.module = module
        self.sym = tuple(sym)
        if len(self.sym) != max(degree - 1, 0):
            raise FunctorError(
                f"degree {degree} needs {max(degree - 1, 0)} transpositions")

    def perm_matrix(self, perm) -> Mat:
        mat = Mat.identity(self.module.coeff, self.module.gens)
        for i in reversed(perm_word(perm)):
            mat = mat @ self.sym[i]
        return mat

    def character(self) -> dict:
        """Trace of one permutation per cycle type, on a freeified copy
        (fields only)."""
        if not self.module.coeff.is_field:
            raise FunctorError("characters are computed over fields only")
        free, to_free, from_free = _freeify_module(self.module)
        out = {}
        for lam in _partitions(self.degree):
            perm = _cycle_type_rep(lam)
            mat = from_free.mat @ self.perm_matrix(perm) @ to_free.mat
            out[lam] = sum(mat.rows[i][i] for i in range(mat.nrows)) \
                if mat.nrows else self.module.coeff.zero()
        return out

    def equivalent(self, other: "SymRep") -> bool:
        """Profile equality, plus character equality over fields."""
        if self.degree != other.degree:
            return False
        if self.module.invariant_factors() != other.module.invariant_factors():
            return False
        if self.module.coeff.is_field:
            return self.character() == other.character()
        return True

    def to_json(self) -> dict:
        return {
            "gens": self.module.gens,
            "rels": self.module.rels.to_json(),
            "sym": [s.to_json() for s in self.sym],
        }

    @classmethod
    def from_json(cls, degree: int, data: dict, coeff: Coeff) -> "SymRep":
        gens = int(data["gens"])
        module = PresentedModule(
            coeff, gens, Mat.from_json(coeff, data.get("rels", []), ncols=gens))
        sym = []
        for s in data.get("sym", []):
            m = Mat.from_json(coeff, s, ncols=gens)
            if m.nrows != gens:
                m = Mat.zero(coeff, gens, gens)
            sym.append(m)
        return cls(degree, module, sym)


class SymRepList:
    """One symmetric-group representation per degree 0..N."""

    def __init__(self, coeff: Coeff, reps):
        self.coeff = coeff
        self.reps = tuple(reps)

    @property
    def N(self) -> int:
        return len(self.reps) - 1

    def equivalent(self, other: "SymRepList") -> bool:
        return (
            self.coeff == other.coeff
            and self.N == other.N
            and all(a.equivalent(b) for a, b in zip(self.reps, other.reps))
        )

    def to_json(self) -> dict:
        return {"coeff": self.coeff.code,
                "reps": [r.to_json() for r in self.reps]}

    @classmethod
    def from_json(cls, data: dict) -> "SymRepList":
        coeff = Coeff.parse(data["coeff"])
        reps = [SymRep.from_json(k, entry, coeff)
                for k, entry in enumerate(data["reps"])]
        return cls(coeff, reps)


def _freeify_module(m: PresentedModule):
    coeff = m.coeff
    span = m.rel_span()
    pivots = set(span.pivots)
    free_cols = [j for j in range(m.gens) if j not in pivots]
    free = PresentedModule.free(coeff, len(free_cols))
    rows = []
    for g in range(m.gens):
        unit = [coeff.zero()] * m.gens
        unit[g] = coeff.one()
        red = span.reduce(unit)
        rows.append(tuple(red[j] for j in free_cols))
    to_free = ModuleMap(m, free, Mat(coeff, m.gens, len(free_cols), tuple(rows)))
    back = []
    for j in free_cols:
        unit = [coeff.zero()] * m.gens
        unit[j] = coeff.one()
        back.append(tuple(unit))
    from_free = ModuleMap(free, m, Mat(coeff, len(free_cols), m.gens, tuple(back)))
    return free, to_free, from_free


def _partitions(n: int):
    """Partitions of n in decreasing parts.

    >>> list(_partitions(3))
    [(3,), (2, 1), (1, 1, 1)]
    """
    if n == 0:
        yield ()
        return
    def gen(rest, maxpart):
        if rest == 0:
            yield ()
            return
        for part in range(min(rest, maxpart), 0, -1):
            for tail in gen(rest - part, part):
                yield (part,) + tail
    yield from gen(n, n)


def _cycle_type_rep(lam: tuple[int, ...]) -> tuple[int, ...]:
    """A permutation with the given cycle type, 1-indexed one-line form."""
    perm = []
    start = 1
    for part in lam:
        block = list(range(start, start + part))
        perm.extend(block[1:] + block[:1])
        start += part
    return tuple(perm)


def cross_effect(F: FISharpModule, k: int) -> SymRep:
    """The k-th cross-effect: image of e_{1..k} at level k with the
    restricted symmetric-group action.

    >>> from .corpus import build_sharp
    >>> cross_effect(build_sharp("free_sharp(1)", "F2", 4), 1).module.dimension()
    1
    """
    if k > F.N:
        raise WindowError(f"cross-effect {k} beyond the truncation {F.N}")
    e = moebius_idem(F, k, range(1, k + 1))
    sub, incl = image_in(F.levels[k], e.mat)
    sym = []
    for i in range(max(k - 1, 0)):
        h = incl.then(F.sym_map(k, i))
        sym.append(factor_through(h, incl).mat)
    return SymRep(k, sub, sym)


def cross_effect_inclusion(F: FISharpModule, k: int) -> ModuleMap:
    """The inclusion of the k-th cross-effect into level k."""
    e = moebius_idem(F, k, range(1, k + 1))
    _, incl = image_in(F.levels[k], e.mat)
    return incl


def cross_effect_cokernel_profile(F: FISharpModule, k: int) -> list[int]:
    """The cross-effect computed by its cokernel description: level k
    modulo the images of all the one-point-omitting injections."""
    if k == 0:
        return F.levels[0].invariant_factors()
    lvl = F.levels[k]
    rels = lvl.rels
    for i in range(1, k + 1):
        # injection [k-1] -> [k] missing i: standard inclusion then the
        # cycle moving the new last point down to position i
        mat = F.incl[k - 1].mat
        for j in range(k - 1, i - 1, -1):
            mat = mat @ F.sym[k][j - 1]
        rels = rels.stack(mat)
    return PresentedModule(F.coeff, lvl.gens, rels).invariant_factors()


def dold_kan_decompose(F: FISharpModule) -> SymRepList:
    """All cross-effects: the equivalence with per-degree representations."""
    return SymRepList(F.coeff, [cross_effect(F, k) for k in range(F.N + 1)])


def dold_kan_reconstruct(reps: SymRepList, N: int | None = None) -> FISharpModule:
    """Assemble the FI#-module with level n the sum over subsets S of
    {1..n} of the representation in degree |S|.

    >>> from .exactlin import Q
    >>> triv = SymRep(0, PresentedModule.free(Q, 1), [])
    >>> dold_kan_reconstruct(SymRepList(Q, [triv]), 2).levels[2].dimension()
    1
    """
    coeff = reps.coeff
    if N is None:
        N = reps.N
    padded = list(reps.reps) + [
        SymRep(k, PresentedModule.zero(coeff), [Mat.zero(coeff, 0, 0)] * max(k - 1, 0))
        for k in range(reps.N + 1, N + 1)
    ]
    level_index = []
    levels = []
    for n in range(N + 1):
        subsets = []
        for k in range(n + 1):
            subsets.extend(combinations(range(1, n + 1), k))
        offsets = {}
        total = 0
        module = PresentedModule.zero(coeff)
        for S in subsets:
            rep = padded[len(S)]
            offsets[S] = total
            total += rep.module.gens
            module = direct_sum_modules(module, rep.module)
        level_index.append((subsets, offsets, total))
        levels.append(module)

    def block_matrix(n_src, n_dst, blocks):
        """blocks: dict (S_src, S_dst) -> Mat."""
        subsets_s, offsets_s, total_s = level_index[n_src]
        subsets_d, offsets_d, total_d = level_index[n_dst]
        rows = [[coeff.zero()] * total_d for _ in range(total_s)]
        for (S, T), mat in blocks.items():
            r0, c0 = offsets_s[S], offsets_d[T]
            for i, row in enumerate(mat.rows):
                target = rows[r0 + i]
                for j, x in enumerate(row):
                    target[c0 + j] = x
        return Mat(coeff, total_s, total_d, tuple(tuple(r) for r in rows))

    incl = []
    proj = []
    for n in range(N):
        blocks = {}
        for S in level_index[n][0]:
            rep = padded[len(S)]
            blocks[(S, S)] = Mat.identity(coeff, rep.module.gens)
        incl.append(ModuleMap(levels[n], levels[n + 1],
                              block_matrix(n, n + 1, blocks)))
        blocks = {}
        for S in level_index[n + 1][0]:
            if n + 1 in S:
                continue
            rep = padded[len(S)]
            blocks[(S, S)] = Mat.identity(coeff, rep.module.gens)
        proj.append(ModuleMap(levels[n + 1], levels[n],
                              block_matrix(n + 1, n, blocks)))
    sym = []
    for n in range(N + 1):
        mats = []
        for i in range(1, n):  # s_i swaps points i, i+1
            blocks = {}
            for S in level_index[n][0]:
                rep = padded[len(S)]
                T = tuple(sorted(i if x == i + 1 else i + 1 if x == i else x
                                 for x in S))
                if i in S and i + 1 in S:
                    pos = S.index(i)  # adjacent entries of the sorted tuple
                    blocks[(S, T)] = rep.sym[pos]
                else:
                    blocks[(S, T)] = Mat.identity(coeff, rep.module.gens)
            mats.append(block_matrix(n, n, blocks))
        sym.append(mats)
    return FISharpModule(coeff, levels, incl, sym, proj)


def dold_kan_witness(F: FISharpModule, reps: SymRepList | None = None) -> NatMap:
    """The natural isomorphism reconstruct(decompose(F)) -> F: on the copy
    indexed by S it includes the cross-effect and pushes along the
    injection onto S."""
    if reps is None:
        reps = dold_kan_decompose(F)
    R = dold_kan_reconstruct(reps, F.N)
    coeff = F.coeff
    incl_cr = [cross_effect_inclusion(F, k) for k in range(F.N + 1)]
    maps = []
    for n in range(F.N + 1):
        rows = []
        for k in range(n + 1):
            base = incl_cr[k].mat
            for m in range(k, n):
                base = base @ F.incl[m].mat
            for S in combinations(range(1, n + 1), k):
                # injection [k] -> [n] onto S: standard inclusion composed
                # with the inverse of the sorting permutation
                sigma = _sorting_perm(n, S)
                up = base @ F.perm_matrix(n, _inverse_perm(sigma))
                rows.extend(up.rows)
        mat = Mat(coeff, R.levels[n].gens, F.levels[n].gens, tuple(rows))
        maps.append(ModuleMap(R.levels[n], F.levels[n], mat))
    return NatMap(eta_restrict(R), eta_restrict(F), maps)


def sharp_natmap_ok(R: FISharpModule, F: FISharpModule, nm: NatMap) -> bool:
    """Naturality for the full FI# structure: incl, sym and proj."""
    if not nm.is_natural():
        return False
    for n in range(R.N):
        left = R.proj[n].then(nm.maps[n])
        right = nm.maps[n + 1].then(F.proj[n])
        if not left.equals(right):
            return False
    return True


# -- the left Kan extension alpha ------------------------------------------

class AlphaResult:
    """Stabilized-translation colimit of an FI-module.

    module         -- FISharpModule on the certified window [0, certified_N]
    certified      -- per input level, whether the last `margin` transitions
                      were isomorphisms
    stage_profiles -- per level, the chain of stage profiles inspected
    first_stable   -- per level, the least stage from which every remaining
                      transition is an isomorphism (None if never)
    unit           -- the canonical map F -> eta_restrict(module)
    """

    def __init__(self, module, certified, stage_profiles, first_stable, unit):
        self.module = module
        self.certified = certified
        self.stage_profiles = stage_profiles
        self.first_stable = first_stable
        self.unit = unit

    @property
    def certified_N(self) -> int:
        return self.module.N


def _coinvariant_stage(F: TruncFIModule, n: int, m: int) -> PresentedModule:
    """F(n+m) with the first m points coequalized (transposition spans)."""
    lvl = F.levels[n + m]
    rels = lvl.rels
    ident = Mat.identity(F.coeff, lvl.gens)
    for i in range(m - 1):
        rels = rels.stack(F.sym[n + m][i] - ident)
    return PresentedModule(F.coeff, lvl.gens, rels)


def alpha(F: TruncFIModule, margin: int = 2) -> AlphaResult:
    """Left Kan extension to FI#: level n is the chain colimit of the
    coinvariant stages of the translates of F, taken at the top stage the
    window affords; certified when the last `margin` transitions are
    isomorphisms.

    >>> from .corpus import build
    >>> alpha(build("P(1)", "F2", 6)).module.levels[3].dimension()
    4
    """
    if margin < 1:
        raise FunctorError("margin must be at least 1")
    N = F.N
    stages = {}       # (n, m) -> PresentedModule
    transitions = {}  # (n, m) -> ModuleMap stage(n, m) -> stage(n, m+1)
    for n in range(N + 1):
        for m in range(N - n + 1):
            stages[(n, m)] = _coinvariant_stage(F, n, m)
        for m in range(N - n):
            transitions[(n, m)] = ModuleMap(
                stages[(n, m)], stages[(n, m + 1)], insertion_map(F, m, n).mat)
    iso = {key: is_isomorphism(t) for key, t in transitions.items()}
    certified = []
    first_stable = []
    for n in range(N + 1):
        top = N - n
        certified.append(top >= margin and all(
            iso[(n, m)] for m in range(top - margin, top)))
        stable = None
        for m in range(top, -1, -1):
            if m < top and not iso[(n, m)]:
                break
            stable = m
        first_stable.append(stable)
    cert_N = -1
    for n in range(N + 1):
        if certified[n]:
            cert_N = n
        else:
            break
    if cert_N < 0:
        raise WindowError(
            "no level of alpha stabilizes within the window; "
            f"margin {margin}, truncation {N}")
    levels = [stages[(n, N - n)] for n in range(cert_N + 1)]
    incl = []
    for n in range(cert_N):
        back = invert_iso(transitions[(n, N - n - 1)])
        step = ModuleMap(stages[(n, N - n - 1)], stages[(n + 1, N - n - 1)],
                         F.incl[N - 1].mat)
        incl.append(back.then(step))
    proj = []
    for n in range(cert_N):
        # reclassify the last alpha point as colimit material: the cycle
        # sending position N to position N-n, shifting N-n..N-1 up by one
        rho = list(range(1, N + 1))
        for k in range(N - n, N):
            rho[k - 1] = k + 1
        rho[N - 1] = N - n
        mat = F.perm_matrix(N, tuple(rho))
        proj.append(ModuleMap(levels[n + 1], levels[n], mat))
    sym = []
    for n in range(cert_N + 1):
        mats = [F.sym[N][N - n + i] for i in range(max(n - 1, 0))]
        sym.append(mats)
    module = FISharpModule(F.coeff, levels, incl, sym, proj)
    # the adjunction unit: F(n) is stage (n, 0); compose the transitions
    unit_maps = []
    for n in range(cert_N + 1):
        f = ModuleMap.identity(stages[(n, 0)])
        for m in range(N - n):
            f = f.then(transitions[(n, m)])
        unit_maps.append(ModuleMap(F.levels[n], levels[n], f.mat))
    unit = NatMap(truncate(F, cert_N), eta_restrict(module), unit_maps)
    stage_profiles = {
        n: [stages[(n, m)].invariant_factors() for m in range(N - n + 1)]
        for n in range(N + 1)
    }
    return AlphaResult(module, certified, stage_profiles, first_stable, unit)


def unit_alpha(F: TruncFIModule, margin: int = 2) -> NatMap:
    """The unit F -> eta_restrict(alpha(F)) on the certified window."""
    return alpha(F, margin).unit


def colimit_over_injections(F: TruncFIModule) -> PresentedModule:
    """Brute-force colimit of F over its whole window: one generator block
    per level, coequalizing every injection between any two levels.

    Reference oracle for the chain-of-coinvariants strategy in alpha; only
    usable for small windows (it enumerates all injections).
    """
    from itertools import permutations
    coeff = F.coeff
    offsets = []
    total = 0
    for m in F.levels:
        offsets.append(total)
        total += m.gens
    rel_rows = []
    zero = coeff.zero()
    for n, m in enumerate(F.levels):
        for row in m.rels.rows:
            out = [zero] * total
            out[offsets[n]:offsets[n] + m.gens] = row
            rel_rows.append(out)
    # enough to coequalize all injections n -> n+1: they generate
    for n in range(F.N):
        src, dst = F.levels[n], F.levels[n + 1]
        for image in permutations(range(1, n + 2), n):
            # the injection k -> image[k-1]: standard inclusion followed by
            # the permutation with that one-line image
            missing = next(x for x in range(1, n + 2) if x not in image)
            perm = tuple(image) + (missing,)
            mat = F.incl[n].mat @ F.perm_matrix(n + 1, perm)
            for g in range(src.gens):
                out = [zero] * total
                out[offsets[n] + g] = coeff.one()
                row = mat.rows[g]
                for j, x in enumerate(row):
                    out[offsets[n + 1] + j] = coeff.normalize(
                        out[offsets[n + 1] + j] - x)
                rel_rows.append(out)
    rels = Mat(coeff, len(rel_rows), total, tuple(tuple(r) for r in rel_rows)) \
        if rel_rows else Mat(coeff, 0, total, ())
    return PresentedModule(coeff, total, rels)
