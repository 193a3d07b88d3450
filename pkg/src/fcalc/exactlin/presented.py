"""Finitely presented modules over Z, Q or F_p, and their maps.

A ``PresentedModule`` with g generators and relation matrix R (rows are
relations, width g) stands for the quotient of the free row-vector module
by the row span of R.  A ``ModuleMap`` src -> dst is a (src.gens x
dst.gens) matrix acting on row vectors; it is well defined when every
relation of src lands in the relation span of dst.

Presentations are never normalized eagerly; profile queries (invariant
factors / dimension) normalize on demand and cache.
"""
from __future__ import annotations

from .coeff import Coeff
from .matrix import Mat
from .smith import RowBasis, left_kernel, snf_diagonal


class ExactLinError(Exception):
    pass


class PresentedModule:
    """A finitely presented module: gens generators, rels relations.

    >>> from .coeff import Z
    >>> m = PresentedModule.from_rel_rows(Z, 2, [[2, 0]])
    >>> m.invariant_factors()
    [1, 2]
    """

    __slots__ = ("coeff", "gens", "rels", "_rel_span", "_profile")

    def __init__(self, coeff: Coeff, gens: int, rels: Mat):
        if rels.ncols != gens:
            raise ExactLinError(
                f"relations have width {rels.ncols}, expected {gens}"
            )
        if rels.coeff != coeff:
            raise ExactLinError("relation matrix over the wrong ring")
        object.__setattr__(self, "coeff", coeff)
        object.__setattr__(self, "gens", gens)
        object.__setattr__(self, "rels", rels)
        object.__setattr__(self, "_rel_span", None)
        object.__setattr__(self, "_profile", None)

    def __setattr__(self, name, value):
        raise AttributeError("PresentedModule is immutable")

    @classmethod
    def from_rel_rows(cls, coeff: Coeff, gens: int, rel_rows) -> "PresentedModule":
        return cls(coeff, gens, Mat.from_rows(coeff, rel_rows)
                   if rel_rows else Mat(coeff, 0, gens, ()))

    @classmethod
    def free(cls, coeff: Coeff, rank: int) -> "PresentedModule":
        return cls(coeff, rank, Mat(coeff, 0, rank, ()))

    @classmethod
    def zero(cls, coeff: Coeff) -> "PresentedModule":
        return cls.free(coeff, 0)

    def rel_span(self) -> RowBasis:
        span = self._rel_span
        if span is None:
            span = RowBasis(self.coeff, self.gens)
            span.add_mat(self.rels)
            object.__setattr__(self, "_rel_span", span)
        return span

    def invariant_factors(self) -> list[int]:
        """Isomorphism profile.

        Over a field: ``[dimension]``.  Over Z: ``[free_rank, d1, d2, ...]``
        with the torsion invariant factors > 1 in divisibility order.
        """
        prof = self._profile
        if prof is None:
            if self.coeff.is_field:
                prof = [self.gens - self.rel_span().rank]
            else:
                d = snf_diagonal(self.rel_span().basis_mat())
                prof = [self.gens - len(d)] + [x for x in d if x > 1]
            object.__setattr__(self, "_profile", prof)
        return list(prof)

    def dimension(self) -> int:
        if not self.coeff.is_field:
            raise ExactLinError("dimension is a field-coefficient notion")
        return self.invariant_factors()[0]

    def is_zero(self) -> bool:
        if self.gens == 0:
            return True
        span = self.rel_span()
        return span.is_full()

    def same_presentation(self, other: "PresentedModule") -> bool:
        return (
            self.coeff == other.coeff
            and self.gens == other.gens
            and self.rels == other.rels
        )

    def profile_eq(self, other: "PresentedModule") -> bool:
        return (
            self.coeff == other.coeff
            and self.invariant_factors() == other.invariant_factors()
        )

    def contains_element(self, vec) -> bool:
        """True iff vec is zero in the quotient (lies in the relation span)."""
        return self.rel_span().contains(vec)

    def __repr__(self):
        return (
            f"PresentedModule({self.coeff.code}, gens={self.gens}, "
            f"rels={self.rels.nrows})"
        )

    def to_json(self) -> dict:
        return {
            "coeff": self.coeff.code,
            "gens": self.gens,
            "rels": self.rels.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict, coeff: Coeff | None = None) -> "PresentedModule":
        c = coeff if coeff is not None else Coeff.parse(data["coeff"])
        gens = int(data["gens"])
        rels = Mat.from_json(c, data.get("rels", []), ncols=gens)
        return cls(c, gens, rels)


class ModuleMap:
    """A map of presented modules given by its action on generators."""

    __slots__ = ("src", "dst", "mat")

    def __init__(self, src: PresentedModule, dst: PresentedModule, mat: Mat,
                 check: bool = False):
        if mat.shape != (src.gens, dst.gens):
            raise ExactLinError(
                f"map matrix is {mat.shape}, expected {(src.gens, dst.gens)}"
            )
        if mat.coeff != src.coeff or src.coeff != dst.coeff:
            raise ExactLinError("coefficient mismatch")
        object.__setattr__(self, "src", src)
        object.__setattr__(self, "dst", dst)
        object.__setattr__(self, "mat", mat)
        if check and not self.is_well_defined():
            raise ExactLinError("map does not respect the source relations")

    def __setattr__(self, name, value):
        raise AttributeError("ModuleMap is immutable")

    @classmethod
    def identity(cls, m: PresentedModule) -> "ModuleMap":
        return cls(m, m, Mat.identity(m.coeff, m.gens))

    @classmethod
    def zero_map(cls, src: PresentedModule, dst: PresentedModule) -> "ModuleMap":
        return cls(src, dst, Mat.zero(src.coeff, src.gens, dst.gens))

    def is_well_defined(self) -> bool:
        span = self.dst.rel_span()
        return all(
            span.contains(row)
            for row in (self.src.rels @ self.mat).rows
        )

    def then(self, other: "ModuleMap") -> "ModuleMap":
        """self followed by other."""
        if other.src is not self.dst and not other.src.same_presentation(self.dst):
            raise ExactLinError("maps not composable")
        return ModuleMap(self.src, other.dst, self.mat @ other.mat)

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.src, self.dst, self.mat + other.mat)

    def __sub__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.src, self.dst, self.mat - other.mat)

    def is_zero_map(self) -> bool:
        """Zero as a map into the presented quotient."""
        if self.mat.is_zero():
            return True
        span = self.dst.rel_span()
        if span.rank == 0:
            return False
        return all(span.contains(row) for row in self.mat.rows)

    def equals(self, other: "ModuleMap") -> bool:
        """Equality as maps into the presented quotient."""
        if self.mat.shape != other.mat.shape:
            return False
        if self.mat == other.mat:
            return True
        span = self.dst.rel_span()
        if span.rank == 0:
            return False
        return all(
            span.contains(row) for row in (self.mat - other.mat).rows
        )

    def apply(self, vec) -> tuple:
        from .matrix import mul_row_mat
        return mul_row_mat(self.mat.coeff, vec, self.mat.rows, self.mat.ncols)

    def __repr__(self):
        return f"ModuleMap({self.src!r} -> {self.dst!r})"

    def to_json(self) -> dict:
        return {"mat": self.mat.to_json()}


class AffineSolver:
    """Reusable solver for x @ mat = v modulo the row span of rels.

    Builds the tracked echelon once; each query is then a single reduction.
    """

    def __init__(self, mat: Mat, rels: Mat):
        self.mat = mat
        self.basis = RowBasis(mat.coeff, mat.ncols, track=True)
        for row in mat.rows:
            self.basis.add(row)
        for row in rels.rows:
            self.basis.add(row)

    def solve(self, vec) -> list | None:
        sol = self.basis.solve(vec)
        if sol is None:
            return None
        return sol[: self.mat.nrows]

    def solve_rows(self, rows) -> list | None:
        out = []
        for row in rows:
            sol = self.solve(row)
            if sol is None:
                return None
            out.append(tuple(sol))
        return out


def solve_mod(mat: Mat, rels: Mat, vec) -> list | None:
    """One x with x @ mat = vec modulo the row span of rels, else None."""
    return AffineSolver(mat, rels).solve(vec)


def preimage_generators(mat: Mat, rels: Mat) -> Mat:
    """Generators of {v : v @ mat lies in the row span of rels}.

    This is the projection to the first block of the left kernel of
    [mat; rels], which generates the preimage lattice (not necessarily
    independently -- presentations need not be minimal).
    """
    lk = left_kernel(mat.stack(rels))
    rows = tuple(row[: mat.nrows] for row in lk.rows)
    return Mat(mat.coeff, len(rows), mat.nrows, rows)


def kernel(f: ModuleMap) -> tuple[PresentedModule, ModuleMap]:
    """Kernel of f with its inclusion into f.src.

    >>> from .coeff import Z
    >>> two = PresentedModule.free(Z, 1)
    >>> f = ModuleMap(two, two, Mat.from_rows(Z, [[2]]))
    >>> k, incl = kernel(f)
    >>> k.is_zero()
    True
    """
    gens_mat = preimage_generators(f.mat, f.dst.rels)
    k_rels = preimage_generators(gens_mat, f.src.rels)
    k = PresentedModule(f.src.coeff, gens_mat.nrows, k_rels)
    return k, ModuleMap(k, f.src, gens_mat)


def cokernel(f: ModuleMap) -> tuple[PresentedModule, ModuleMap]:
    """Cokernel of f: dst presented with the image rows added as relations."""
    c = PresentedModule(f.dst.coeff, f.dst.gens, f.dst.rels.stack(f.mat))
    return c, ModuleMap(f.dst, c, Mat.identity(f.dst.coeff, f.dst.gens))


def image_in(dst: PresentedModule, rows: Mat) -> tuple[PresentedModule, ModuleMap]:
    """The submodule of dst generated by the given element rows.

    Redundant generators (zero in the quotient, or already generated by the
    earlier rows) are pruned, so the presentation stays small.
    """
    span = RowBasis(dst.coeff, dst.gens)
    span.add_mat(dst.rels)
    kept = []
    for row in rows.rows:
        if span.add(row):
            kept.append(row)
    gen_mat = Mat(dst.coeff, len(kept), dst.gens, tuple(kept))
    rels = preimage_generators(gen_mat, dst.rels)
    sub = PresentedModule(dst.coeff, gen_mat.nrows, rels)
    return sub, ModuleMap(sub, dst, gen_mat)


def coinvariants(m: PresentedModule, actions) -> tuple[PresentedModule, ModuleMap]:
    """Quotient of m by the spans (g - id) v over the given endomorphisms.

    >>> from .coeff import Q
    >>> reg = PresentedModule.free(Q, 2)
    >>> swap = Mat.from_rows(Q, [[0, 1], [1, 0]])
    >>> q, _ = coinvariants(reg, [swap])
    >>> q.dimension()
    1
    """
    rels = m.rels
    ident = Mat.identity(m.coeff, m.gens)
    for g in actions:
        if isinstance(g, ModuleMap):
            g = g.mat
        if g.shape != (m.gens, m.gens):
            raise ExactLinError("action matrix is not an endomorphism")
        rels = rels.stack(g - ident)
    q = PresentedModule(m.coeff, m.gens, rels)
    return q, ModuleMap(m, q, ident)


def factor_through(f: ModuleMap, incl: ModuleMap) -> ModuleMap:
    """The map g with g.then(incl) == f, for incl a monomorphism.

    Raises if some generator image does not factor.
    """
    if f.dst is not incl.dst and not f.dst.same_presentation(incl.dst):
        raise ExactLinError("factor_through: targets differ")
    rows = AffineSolver(incl.mat, incl.dst.rels).solve_rows(f.mat.rows)
    if rows is None:
        raise ExactLinError("map does not factor through the inclusion")
    mat = Mat(f.mat.coeff, f.src.gens, incl.src.gens, tuple(rows))
    return ModuleMap(f.src, incl.src, mat)


def descend_to_quotient(f: ModuleMap, proj: ModuleMap) -> ModuleMap:
    """The map g with proj.then(g) == f-descended, for proj a cokernel
    projection whose target has the same generators as its source."""
    if proj.src.gens != proj.dst.gens:
        raise ExactLinError("descend expects a generator-preserving projection")
    return ModuleMap(proj.dst, f.dst, f.mat)


def lift_through(f: ModuleMap, onto: ModuleMap) -> ModuleMap:
    """Some map g with g.then(onto) == f, for onto an epimorphism."""
    rows = AffineSolver(onto.mat, onto.dst.rels).solve_rows(f.mat.rows)
    if rows is None:
        raise ExactLinError("cannot lift through the given epimorphism")
    mat = Mat(f.mat.coeff, f.src.gens, onto.src.gens, tuple(rows))
    return ModuleMap(f.src, onto.src, mat)


def is_isomorphism(f: ModuleMap) -> bool:
    if f.src.coeff.is_field:
        # rank argument: bijective iff dim src = dim dst = rank of the map
        d_src = f.src.dimension()
        d_dst = f.dst.dimension()
        if d_src != d_dst:
            return False
        span = RowBasis(f.src.coeff, f.dst.gens)
        span.add_mat(f.dst.rels)
        base = span.rank
        span.add_mat(f.mat)
        return span.rank - base == d_dst
    k, _ = kernel(f)
    if not k.is_zero():
        return False
    c, _ = cokernel(f)
    return c.is_zero()


def invert_iso(f: ModuleMap) -> ModuleMap:
    """Inverse of an isomorphism of presented modules."""
    solver = AffineSolver(f.mat, f.dst.rels)
    rows = []
    for i in range(f.dst.gens):
        unit = [f.src.coeff.zero()] * f.dst.gens
        unit[i] = f.src.coeff.one()
        sol = solver.solve(unit)
        if sol is None:
            raise ExactLinError("map is not surjective, cannot invert")
        rows.append(tuple(sol))
    mat = Mat(f.mat.coeff, f.dst.gens, f.src.gens, tuple(rows))
    inv = ModuleMap(f.dst, f.src, mat)
    if not inv.then(f).equals(ModuleMap.identity(f.dst)):
        raise ExactLinError("inverse candidate fails on the target side")
    if not f.then(inv).equals(ModuleMap.identity(f.src)):
        raise ExactLinError("map is not injective, cannot invert")
    return inv


def check_exact(seq: list[ModuleMap]) -> bool:
    """Exactness of a composable sequence at every interior joint.

    At the joint (f, g) this demands image(f) = kernel(g) as submodules of
    the middle term: the composite is zero and every kernel generator lies
    in the span of the image rows together with the middle relations.

    >>> from .coeff import Z
    >>> z1 = PresentedModule.free(Z, 1)
    >>> z2mod = PresentedModule.from_rel_rows(Z, 1, [[2]])
    >>> zero = PresentedModule.zero(Z)
    >>> seq = [ModuleMap.zero_map(zero, z1),
    ...        ModuleMap(z1, z1, Mat.from_rows(Z, [[2]])),
    ...        ModuleMap(z1, z2mod, Mat.from_rows(Z, [[1]])),
    ...        ModuleMap.zero_map(z2mod, zero)]
    >>> check_exact(seq)
    True
    """
    for f, g in zip(seq, seq[1:]):
        if f.dst is not g.src and not f.dst.same_presentation(g.src):
            raise ExactLinError("sequence is not composable")
        if not f.then(g).is_zero_map():
            return False
        mid = f.dst
        span = RowBasis(mid.coeff, mid.gens)
        span.add_mat(f.mat)
        span.add_mat(mid.rels)
        ker_gens = preimage_generators(g.mat, g.dst.rels)
        for row in ker_gens.rows:
            if not span.contains(row):
                return False
    return True


def direct_sum_modules(a: PresentedModule, b: PresentedModule) -> PresentedModule:
    if a.coeff != b.coeff:
        raise ExactLinError("coefficient mismatch")
    return PresentedModule(a.coeff, a.gens + b.gens, a.rels.block_diag(b.rels))
