"""Worked-example functors with machine-checkable expected facts.

Each entry builds a truncated functor (FI or FI#) and carries oracles:
degree values, dimension patterns, isomorphism targets.  ``run_oracles``
evaluates every fact and reports pass/fail with the certified windows.

Free functors are linearizations of set-valued basis functors (injections
from a fixed set, unordered pairs, partial injections), so all structure
matrices are permutation-like and exact over any coefficient ring.
"""
from __future__ import annotations

from itertools import combinations, permutations
from math import comb, factorial

from .exactlin import Coeff, Mat, ModuleMap, PresentedModule
from .fimod import (
    NatMap, NOT_CERTIFIED, NEG_INF, TruncFIModule,
    FunctorError, diff, dim_profile, direct_sum, generation_degree,
    is_stably_null, kappa, kernel_nat, cokernel_nat, shift, strong_degree,
    verify_six_term, weak_degree,
)
from . import fimod
from .fisharp import (
    FISharpModule, alpha, dold_kan_decompose, eta_restrict, moebius_idem,
)


# -- free functors on set-valued bases -------------------------------------

def _injection_basis(d: int, n: int) -> list[tuple[int, ...]]:
    """Injections of {1..d} into {1..n} as value tuples."""
    return list(permutations(range(1, n + 1), d))


def _pair_basis(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(1, n + 1), 2))


def _partial_basis(d: int, n: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Partial injections {1..d} -> {1..n}: (sorted domain, value tuple)."""
    out = []
    for k in range(d + 1):
        for dom in combinations(range(1, d + 1), k):
            for vals in permutations(range(1, n + 1), k):
                out.append((dom, vals))
    return out


def _basis_matrix(coeff: Coeff, src_basis, dst_index, image) -> Mat:
    """Matrix of a map sending each source basis element to a basis element
    of the target (or to zero when image returns None)."""
    zero = coeff.zero()
    one = coeff.one()
    rows = []
    width = len(dst_index)
    for b in src_basis:
        row = [zero] * width
        img = image(b)
        if img is not None:
            row[dst_index[img]] = one
        rows.append(tuple(row))
    return Mat(coeff, len(rows), width, tuple(rows))


def _transposition(i: int):
    def phi(x: int) -> int:
        if x == i:
            return i + 1
        if x == i + 1:
            return i
        return x
    return phi


def build_injections_functor(coeff: Coeff, d: int, N: int) -> TruncFIModule:
    """The free functor on injections from a d-element set (P_d)."""
    bases = [_injection_basis(d, n) for n in range(N + 1)]
    index = [{b: i for i, b in enumerate(bs)} for bs in bases]
    levels = [PresentedModule.free(coeff, len(bs)) for bs in bases]
    incl = []
    for n in range(N):
        mat = _basis_matrix(coeff, bases[n], index[n + 1], lambda u: u)
        incl.append(ModuleMap(levels[n], levels[n + 1], mat))
    sym = []
    for n in range(N + 1):
        mats = []
        for i in range(1, n):
            phi = _transposition(i)
            mats.append(_basis_matrix(
                coeff, bases[n], index[n],
                lambda u, phi=phi: tuple(phi(x) for x in u)))
        sym.append(mats)
    return TruncFIModule(coeff, levels, incl, sym)


def build_pair_orbit_functor(coeff: Coeff, N: int) -> TruncFIModule:
    """The free functor on unordered pairs (injections from 2 modulo swap)."""
    bases = [_pair_basis(n) for n in range(N + 1)]
    index = [{b: i for i, b in enumerate(bs)} for bs in bases]
    levels = [PresentedModule.free(coeff, len(bs)) for bs in bases]
    incl = [ModuleMap(levels[n], levels[n + 1],
                      _basis_matrix(coeff, bases[n], index[n + 1], lambda p: p))
            for n in range(N)]
    sym = []
    for n in range(N + 1):
        mats = []
        for i in range(1, n):
            phi = _transposition(i)
            mats.append(_basis_matrix(
                coeff, bases[n], index[n],
                lambda p, phi=phi: tuple(sorted((phi(p[0]), phi(p[1]))))))
        sym.append(mats)
    return TruncFIModule(coeff, levels, incl, sym)


def build_partial_functor(coeff: Coeff, d: int, N: int) -> FISharpModule:
    """The free FI#-functor on partial injections from a d-element set."""
    bases = [_partial_basis(d, n) for n in range(N + 1)]
    index = [{b: i for i, b in enumerate(bs)} for bs in bases]
    levels = [PresentedModule.free(coeff, len(bs)) for bs in bases]
    incl = [ModuleMap(levels[n], levels[n + 1],
                      _basis_matrix(coeff, bases[n], index[n + 1], lambda b: b))
            for n in range(N)]
    proj = []
    for n in range(N):
        def drop(b, n=n):
            dom, vals = b
            keep = [(x, v) for x, v in zip(dom, vals) if v != n + 1]
            return (tuple(x for x, _ in keep), tuple(v for _, v in keep))
        proj.append(ModuleMap(levels[n + 1], levels[n],
                              _basis_matrix(coeff, bases[n + 1], index[n], drop)))
    sym = []
    for n in range(N + 1):
        mats = []
        for i in range(1, n):
            phi = _transposition(i)
            mats.append(_basis_matrix(
                coeff, bases[n], index[n],
                lambda b, phi=phi: (b[0], tuple(phi(v) for v in b[1]))))
        sym.append(mats)
    return FISharpModule(coeff, levels, incl, sym, proj)


def build_atomic(coeff: Coeff, i: int, N: int) -> TruncFIModule:
    """The functor with one copy of the coefficients at level i, else zero."""
    levels = [PresentedModule.free(coeff, 1 if n == i else 0)
              for n in range(N + 1)]
    incl = [ModuleMap.zero_map(levels[n], levels[n + 1]) for n in range(N)]
    sym = [[Mat.identity(coeff, levels[n].gens)] * max(n - 1, 0)
           for n in range(N + 1)]
    return TruncFIModule(coeff, levels, incl, sym)


def build_zgeq(coeff: Coeff, k: int, N: int) -> TruncFIModule:
    """The subfunctor of the constants supported on sets of size >= k."""
    levels = [PresentedModule.free(coeff, 1 if n >= k else 0)
              for n in range(N + 1)]
    incl = []
    for n in range(N):
        if levels[n].gens and levels[n + 1].gens:
            mat = Mat.identity(coeff, 1)
        else:
            mat = Mat.zero(coeff, levels[n].gens, levels[n + 1].gens)
        incl.append(ModuleMap(levels[n], levels[n + 1], mat))
    sym = [[Mat.identity(coeff, levels[n].gens)] * max(n - 1, 0)
           for n in range(N + 1)]
    return TruncFIModule(coeff, levels, incl, sym)


def augmentation_map(coeff: Coeff, N: int) -> NatMap:
    """The summing map from the free rank functor to the constants."""
    P1 = build_injections_functor(coeff, 1, N)
    C = build_injections_functor(coeff, 0, N)
    one = coeff.one()
    maps = []
    for n in range(N + 1):
        mat = Mat(coeff, n, 1, tuple((one,) for _ in range(n)))
        maps.append(ModuleMap(P1.levels[n], C.levels[n], mat))
    return NatMap(P1, C, maps)


def build_augmentation_kernel(coeff: Coeff, N: int) -> TruncFIModule:
    K, _ = kernel_nat(augmentation_map(coeff, N))
    return K


def augmentation_sequence(coeff: Coeff, N: int) -> tuple[NatMap, NatMap]:
    """The short exact sequence kernel >-> P_1 ->> (constants on nonempty
    sets), as two natural maps."""
    aug = augmentation_map(coeff, N)
    K, incl = kernel_nat(aug)
    Zgeq1 = build_zgeq(coeff, 1, N)
    maps = [ModuleMap(aug.src.levels[n], Zgeq1.levels[n], aug.maps[n].mat
                      if n >= 1 else Mat.zero(coeff, 0, 0))
            for n in range(N + 1)]
    proj = NatMap(aug.src, Zgeq1, maps)
    return incl, proj


def norm_map(coeff: Coeff, N: int) -> NatMap:
    """Unordered pairs into ordered pairs: {a,b} -> (a,b) + (b,a)."""
    A = build_pair_orbit_functor(coeff, N)
    P2 = build_injections_functor(coeff, 2, N)
    zero, one = coeff.zero(), coeff.one()
    maps = []
    for n in range(N + 1):
        pairs = _pair_basis(n)
        inj = _injection_basis(2, n)
        idx = {u: i for i, u in enumerate(inj)}
        rows = []
        for (a, b) in pairs:
            row = [zero] * len(inj)
            row[idx[(a, b)]] = one
            row[idx[(b, a)]] = one
            rows.append(tuple(row))
        mat = Mat(coeff, len(pairs), len(inj), tuple(rows))
        maps.append(ModuleMap(A.levels[n], P2.levels[n], mat))
    return NatMap(A, P2, maps)


def pair_augmentation(coeff: Coeff, N: int) -> NatMap:
    A = build_pair_orbit_functor(coeff, N)
    C = build_injections_functor(coeff, 0, N)
    one = coeff.one()
    maps = [ModuleMap(A.levels[n], C.levels[n],
                      Mat(coeff, A.levels[n].gens, 1,
                          tuple((one,) for _ in range(A.levels[n].gens))))
            for n in range(N + 1)]
    return NatMap(A, C, maps)


def build_ex_upm_F(coeff: Coeff, N: int) -> TruncFIModule:
    """Pushout of the norm inclusion (pairs into ordered pairs) and the
    augmentation to the constants: the amalgamated sum functor."""
    nu = norm_map(coeff, N)
    aug = pair_augmentation(coeff, N)
    P2, C = nu.dst, aug.dst
    target = direct_sum(P2, C)
    maps = []
    for n in range(N + 1):
        maps.append(ModuleMap(
            nu.src.levels[n], target.levels[n],
            nu.maps[n].mat.hjoin(aug.maps[n].mat.scale(-1))))
    glue = NatMap(nu.src, target, maps)
    F, _ = cokernel_nat(glue)
    return F


def ex_upm_sequence(coeff: Coeff, N: int) -> tuple[NatMap, NatMap]:
    """Constants >-> pushout ->> pairs: the defining extension."""
    F = build_ex_upm_F(coeff, N)
    C = build_injections_functor(coeff, 0, N)
    A = build_pair_orbit_functor(coeff, N)
    zero, one = coeff.zero(), coeff.one()
    incl_maps = []
    proj_maps = []
    for n in range(N + 1):
        g = F.levels[n].gens           # = |pairs ordered| + 1
        row = [zero] * g
        row[g - 1] = one
        incl_maps.append(ModuleMap(C.levels[n], F.levels[n],
                                   Mat(coeff, 1, g, (tuple(row),))))
        pairs = _pair_basis(n)
        idx = {p: i for i, p in enumerate(pairs)}
        inj = _injection_basis(2, n)
        rows = []
        for u in inj:
            row = [zero] * len(pairs)
            row[idx[tuple(sorted(u))]] = one
            rows.append(tuple(row))
        rows.append(tuple([zero] * len(pairs)))  # the constant generator dies
        proj_maps.append(ModuleMap(F.levels[n], A.levels[n],
                                   Mat(coeff, g, len(pairs), tuple(rows))))
    return NatMap(C, F, incl_maps), NatMap(F, A, proj_maps)


# -- name parsing and the registry -----------------------------------------

def _parse_call(token: str) -> tuple[str, list[int]]:
    token = token.strip()
    if "(" in token:
        head, rest = token.split("(", 1)
        if not rest.endswith(")"):
            raise FunctorError(f"malformed corpus name {token!r}")
        args = [int(x) for x in rest[:-1].split(",") if x.strip()]
        return head.strip(), args
    return token, []


def build(name: str, coeff, N: int) -> TruncFIModule:
    """Build a corpus FI-module by name; '+' forms direct sums.

    >>> dim_profile(build("P(1)", "Q", 4)).dims
    [0, 1, 2, 3, 4]
    """
    if isinstance(coeff, str):
        coeff = Coeff.parse(coeff)
    parts = [p for p in name.split("+")]
    out = None
    for part in parts:
        head, args = _parse_call(part)
        if head == "const":
            F = build_injections_functor(coeff, 0, N)
        elif head == "atomic":
            F = build_atomic(coeff, args[0], N)
        elif head == "zgeq":
            F = build_zgeq(coeff, args[0], N)
        elif head == "P":
            F = build_injections_functor(coeff, args[0], N)
        elif head == "augmentation_kernel":
            F = build_augmentation_kernel(coeff, N)
        elif head == "ex_upm_A":
            F = build_pair_orbit_functor(coeff, N)
        elif head == "ex_upm_F":
            F = build_ex_upm_F(coeff, N)
        elif head == "atomics_upto":
            F = build_atomic(coeff, 0, N)
            for i in range(1, args[0] + 1):
                F = direct_sum(F, build_atomic(coeff, i, N))
        elif head == "sum_zgeq":
            F = build_zgeq(coeff, 0, N)
            for i in range(1, N + 1):
                F = direct_sum(F, build_zgeq(coeff, i, N))
        else:
            raise FunctorError(f"unknown corpus entry {head!r}")
        out = F if out is None else direct_sum(out, F)
    return out


def build_sharp(name: str, coeff, N: int) -> FISharpModule:
    """Build a corpus FI#-module by name.

    >>> build_sharp("free_sharp(1)", "F2", 3).levels[3].dimension()
    4
    """
    if isinstance(coeff, str):
        coeff = Coeff.parse(coeff)
    head, args = _parse_call(name)
    if head == "free_sharp":
        return build_partial_functor(coeff, args[0], N)
    raise FunctorError(f"unknown FI# corpus entry {head!r}")


FI_NAMES = ["const", "atomic(i)", "zgeq(n)", "P(d)", "augmentation_kernel",
            "ex_upm_A", "ex_upm_F", "atomics_upto(k)", "sum_zgeq"]
SHARP_NAMES = ["free_sharp(d)"]


# -- oracles ----------------------------------------------------------------

class OracleReport:
    def __init__(self, name: str, results):
        self.name = name
        self.results = results  # list of (label, ok, detail)

    @property
    def ok(self) -> bool:
        return all(r[1] for r in self.results)

    def lines(self):
        for label, ok, detail in self.results:
            yield f"{'PASS' if ok else 'FAIL'}  {self.name}: {label}  [{detail}]"


def _deg_fact(fn, expected, label):
    def check(ctx):
        rep = fn(ctx)
        ok = rep.value == expected
        return ok, f"{label} -> {rep}"
    return check


def run_oracles(name: str, coeff: str | None = None, N: int | None = None) -> OracleReport:
    """Evaluate the stated facts for a corpus entry."""
    spec = ORACLES.get(name)
    if spec is None:
        raise FunctorError(f"no oracles registered for {name!r}; "
                           f"known: {sorted(ORACLES)}")
    coeff = coeff or spec["coeff"]
    N = N or spec["N"]
    builder = spec.get("builder", build)
    module = builder(spec.get("expr", name), coeff, N)
    results = []
    for label, fact in spec["facts"]:
        try:
            ok, detail = fact(module)
        except Exception as exc:  # an oracle crash is a failure, not an abort
            ok, detail = False, f"error: {exc}"
        results.append((label, ok, detail))
    return OracleReport(name, results)


def _expect_strong(expected):
    def fact(F):
        rep = strong_degree(F)
        return rep.value == expected, str(rep)
    return fact


def _expect_weak(expected, margin):
    def fact(F):
        rep = weak_degree(F, margin)
        return rep.value == expected, str(rep)
    return fact


def _expect_generation(expected):
    def fact(F):
        rep = generation_degree(F)
        return rep.value == expected, str(rep)
    return fact


def _expect_stably_null(expected, margin=1):
    def fact(F):
        got = is_stably_null(F, margin)
        return got == expected, f"stably null = {got} at margin {margin}"
    return fact


def _expect_diff_profile(target_name):
    def fact(F):
        d = diff(F)
        target = build(target_name, F.coeff, d.N)
        ok = d.profile_eq(target)
        return ok, f"diff profiles {[m.invariant_factors() for m in d.levels]}"
    return fact


def _expect_dims(dim_fn):
    def fact(F):
        dims = dim_profile(F).dims
        want = [dim_fn(n) for n in range(F.N + 1)]
        return dims == want, f"dims {dims} vs {want}"
    return fact


def _expect_six_term(F):
    return verify_six_term(F), "six-term exactness"


def shift_kernel_witness(F: TruncFIModule) -> NatMap:
    """The classical isomorphism from the rank functor onto the shifted
    augmentation kernel: e_x maps to e_x - e_(added last point).

    F must be the stored augmentation kernel (same construction route, so
    the kernel generator presentations line up).
    """
    from .exactlin import factor_through
    S = shift(F, 1)
    aug = augmentation_map(F.coeff, F.N)
    K, incl = kernel_nat(aug)
    if not K.structurally_equal(F):
        raise FunctorError("witness needs the stored augmentation kernel")
    P1 = fimod.truncate(build_injections_functor(F.coeff, 1, F.N), S.N)
    one, zero = F.coeff.one(), F.coeff.zero()
    maps = []
    for n in range(S.N + 1):
        rows = []
        for x in range(1, n + 1):
            row = [zero] * (n + 1)
            row[x - 1] = one
            row[n] = F.coeff.normalize(row[n] - one)
            rows.append(tuple(row))
        h = ModuleMap(P1.levels[n], aug.src.levels[n + 1],
                      Mat(F.coeff, n, n + 1, tuple(rows)))
        maps.append(factor_through(h, incl.maps[n + 1]))
    return NatMap(P1, S, maps)


def _shift_is_P1(F):
    w = shift_kernel_witness(F)
    ok = w.is_natural() and w.is_levelwise_iso()
    return ok, f"witness natural iso on [0,{w.src.N}]"


def _alpha_dims(dim_fn, margin=2):
    def fact(F):
        res = alpha(F, margin)
        dims = [m.dimension() for m in res.module.levels]
        want = [dim_fn(n) for n in range(res.module.N + 1)]
        return dims == want, f"alpha dims {dims} vs {want} on [0,{res.module.N}]"
    return fact


def _unit_alpha_kills_constants(F):
    res = alpha(F, 2)
    unit = res.unit
    # the constant subfunctor sits on the last generator of each level
    coeff = F.coeff
    nonzero_kernel = False
    for n in range(res.module.N + 1):
        g = F.levels[n].gens
        row = [coeff.zero()] * g
        row[g - 1] = coeff.one()
        emb = ModuleMap(PresentedModule.free(coeff, 1), F.levels[n],
                        Mat(coeff, 1, g, (tuple(row),)))
        if not emb.then(unit.maps[n]).is_zero_map():
            return False, f"constant class survives at level {n}"
        from .exactlin import kernel as _kernel
        k, _ = _kernel(unit.maps[n])
        if not k.is_zero():
            nonzero_kernel = True
    return nonzero_kernel, "unit kills the constant subfunctor; kernel nonzero"


def _sharp_idempotents_complete(F):
    for n in range(min(F.N, 3) + 1):
        lvl = F.levels[n]
        idems = {}
        subsets = []
        for k in range(n + 1):
            subsets.extend(combinations(range(1, n + 1), k))
        total = Mat.zero(F.coeff, lvl.gens, lvl.gens)
        for S in subsets:
            e = moebius_idem(F, n, S)
            idems[S] = e
            total = total + e.mat
        ident = ModuleMap.identity(lvl)
        if not ModuleMap(lvl, lvl, total).equals(ident):
            return False, f"sum of idempotents is not the identity at level {n}"
        for S in subsets:
            if not idems[S].then(idems[S]).equals(idems[S]):
                return False, f"e_{S} not idempotent at level {n}"
        for S in subsets:
            for T in subsets:
                if S != T and not idems[S].then(idems[T]).is_zero_map():
                    return False, f"e_{S} e_{T} nonzero at level {n}"
    return True, "complete orthogonal idempotent family up to level 3"


def _sharp_binomial_identity(F):
    reps = dold_kan_decompose(F)
    cr_dims = [r.module.dimension() for r in reps.reps]
    for n in range(F.N + 1):
        want = sum(comb(n, k) * cr_dims[k] for k in range(n + 1))
        got = F.levels[n].dimension()
        if got != want:
            return False, f"level {n}: dim {got} vs binomial sum {want}"
    return True, f"cross-effect dims {cr_dims}"


def _sharp_eta_strong(expected):
    def fact(F):
        rep = strong_degree(eta_restrict(F))
        return rep.value == expected, str(rep)
    return fact


ORACLES = {
    "const": {
        "coeff": "Z", "N": 10,
        "facts": [
            ("strong degree 0", _expect_strong(0)),
            ("weak degree 0", _expect_weak(0, 1)),
            ("not stably null", _expect_stably_null(False)),
            ("generation degree 0", _expect_generation(0)),
        ],
    },
    "atomic(2)": {
        "coeff": "Z", "N": 10,
        "facts": [
            ("stably null", _expect_stably_null(True)),
            ("strong degree 2", _expect_strong(2)),
            ("weak degree -inf", _expect_weak(NEG_INF, 1)),
        ],
    },
    "zgeq(3)": {
        "coeff": "Z", "N": 10,
        "facts": [
            ("strong degree 3", _expect_strong(3)),
            ("weak degree 0", _expect_weak(0, 1)),
            ("difference is the atomic functor", _expect_diff_profile("atomic(2)")),
            ("generation degree 3", _expect_generation(3)),
            ("not stably null", _expect_stably_null(False)),
            ("dims 0,0,0,1,...", _expect_dims(lambda n: 1 if n >= 3 else 0)),
        ],
    },
    "P(1)": {
        "coeff": "Z", "N": 10,
        "facts": [
            ("strong degree 1", _expect_strong(1)),
            ("generation degree 1", _expect_generation(1)),
            ("difference is constant", _expect_diff_profile("const")),
            ("kappa vanishes", lambda F: (kappa(F).is_zero_functor(), "kappa = 0")),
            ("dims n", _expect_dims(lambda n: n)),
        ],
    },
    "P(2)": {
        "coeff": "Z", "N": 8,
        "facts": [
            ("strong degree 2", _expect_strong(2)),
            ("generation degree 2", _expect_generation(2)),
            ("six-term exact", _expect_six_term),
            ("dims n(n-1)", _expect_dims(lambda n: n * (n - 1))),
        ],
    },
    "augmentation_kernel": {
        "coeff": "Z", "N": 10,
        "facts": [
            ("strong degree 2", _expect_strong(2)),
            ("weak degree 1", _expect_weak(1, 2)),
            ("difference is zgeq(1)", _expect_diff_profile("zgeq(1)")),
            ("shift is the rank functor", _shift_is_P1),
            ("six-term exact", _expect_six_term),
        ],
    },
    "atomics_upto(6)": {
        "coeff": "Z", "N": 10,
        "facts": [
            ("stably null", _expect_stably_null(True)),
            ("weak degree -inf", _expect_weak(NEG_INF, 1)),
        ],
    },
    "sum_zgeq": {
        "coeff": "Z", "N": 6,
        "facts": [
            ("strong degree not certified",
             lambda F: (strong_degree(F).value == NOT_CERTIFIED,
                        str(strong_degree(F)))),
            ("weak degree 0", _expect_weak(0, 1)),
        ],
    },
    "ex_upm_A": {
        "coeff": "F2", "N": 8,
        "facts": [
            ("strong degree 2", _expect_strong(2)),
            ("alpha dims C(n,2)+n+1",
             _alpha_dims(lambda n: comb(n, 2) + n + 1)),
        ],
    },
    "ex_upm_F": {
        "coeff": "F2", "N": 8,
        "facts": [
            ("strong degree 2", _expect_strong(2)),
            ("alpha dims C(n,2)+n+1",
             _alpha_dims(lambda n: comb(n, 2) + n + 1)),
            ("unit of alpha kills the constants", _unit_alpha_kills_constants),
        ],
    },
    "P(2)@F2-alpha": {
        "coeff": "F2", "N": 8, "expr": "P(2)",
        "facts": [
            ("alpha dims n(n-1)+2n+1",
             _alpha_dims(lambda n: n * (n - 1) + 2 * n + 1)),
        ],
    },
    "P(1)@F2-alpha": {
        "coeff": "F2", "N": 8, "expr": "P(1)",
        "facts": [
            ("alpha dims n+1", _alpha_dims(lambda n: n + 1)),
        ],
    },
    "free_sharp(1)": {
        "coeff": "F2", "N": 5, "builder": build_sharp,
        "facts": [
            ("structure verifies", lambda F: (not F.verify(), "invariants")),
            ("idempotents complete and orthogonal", _sharp_idempotents_complete),
            ("binomial dimension identity", _sharp_binomial_identity),
            ("restriction has strong degree 1", _sharp_eta_strong(1)),
            ("dims n+1", _expect_dims(lambda n: n + 1)),
        ],
    },
    "free_sharp(2)": {
        "coeff": "F2", "N": 4, "builder": build_sharp,
        "facts": [
            ("structure verifies", lambda F: (not F.verify(), "invariants")),
            ("idempotents complete and orthogonal", _sharp_idempotents_complete),
            ("binomial dimension identity", _sharp_binomial_identity),
            ("restriction has strong degree 2", _sharp_eta_strong(2)),
            ("dims sum C(2,k)C(n,k)k!",
             _expect_dims(lambda n: sum(comb(2, k) * comb(n, k) * factorial(k)
                                        for k in (0, 1, 2)))),
        ],
    },
}


def list_entries() -> list[str]:
    return sorted(ORACLES)
