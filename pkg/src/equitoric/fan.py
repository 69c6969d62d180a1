"""Smooth simplicial fans: cones, faces, membership and stabilizer data.

A fan is stored by its maximal cones only (ray-index subsets); faces are
derived on demand.  Construction always enforces the structural rules
(primitive distinct rays, simplicial cones, ray coverage, no nesting of
maximal cones).  With ``check=True`` (the default) it additionally demands
smoothness of every maximal cone and verifies the fan axiom -- every pair
of maximal cones meets in a common face -- through an exact rational
separating-functional feasibility test (Fourier-Motzkin elimination).
Pass ``check=False`` to build a fan for diagnostic reporting only.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import InitVar, dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .lattice import (
    Vector,
    Character,
    complete_to_basis,
    det,
    dual_basis,
    invariant_factors,
    is_primitive,
    make_primitive,
    pairing,
    rank,
)
from .report import CheckReport

DEFAULT_SEED = 1729
COVERAGE_SAMPLES = 1000


class FanError(ValueError):
    """Structurally or geometrically invalid fan data."""


class NotAFanError(FanError):
    """Two cones do not intersect in a common face."""


@dataclass(frozen=True)
class Cone:
    """Simplicial rational cone spanned by primitive, independent generators.

    The zero cone is the empty generator list.
    """

    ambient_dim: int
    generators: tuple[Vector, ...]

    def __post_init__(self) -> None:
        if self.ambient_dim < 1:
            raise FanError("ambient dimension must be at least 1")
        gens = tuple(tuple(int(x) for x in g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        for g in gens:
            if len(g) != self.ambient_dim:
                raise FanError("generator dimension does not match the ambient lattice")
            if not is_primitive(g):
                raise FanError(f"generator {g} is not primitive")
        if len(set(gens)) != len(gens):
            raise FanError("duplicate generators")
        if gens and rank([list(g) for g in gens]) != len(gens):
            raise FanError("generators are linearly dependent (cone is not simplicial)")

    @property
    def dim(self) -> int:
        return len(self.generators)

    def is_smooth(self) -> bool:
        if not self.generators:
            return True
        factors = invariant_factors([list(g) for g in self.generators])
        return all(f == 1 for f in factors)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Cone":
        return cls(ambient_dim, ())


@dataclass(frozen=True)
class StabilizerSplitting:
    """Deterministic splitting of the big torus over one cone.

    The cone generators head the basis, ``complement`` holds the vectors
    extending them to a full lattice basis, and ``projection`` holds the
    characters dual to the cone generators inside that basis.  A character
    of the big torus factors through the stabilizer subtorus exactly when
    it pairs to zero with every complement vector.
    """

    cone: Cone
    complement: tuple[Vector, ...]
    projection: tuple[Character, ...]

    def factors_through(self, m: Sequence[int]) -> bool:
        return all(pairing(m, w) == 0 for w in self.complement)

    def restrict(self, m: Sequence[int]) -> tuple[int, ...]:
        """Coordinates of a character restricted to the stabilizer torus."""
        return tuple(pairing(m, v) for v in self.cone.generators)

    def extend(self, c: Sequence[int]) -> Character:
        """Pull a stabilizer-torus character back through the projection."""
        if len(c) != self.cone.dim:
            raise FanError("wrong coordinate count for the stabilizer torus")
        n = self.cone.ambient_dim
        return tuple(
            sum(c[i] * self.projection[i][k] for i in range(len(c))) for k in range(n)
        )


@dataclass(frozen=True)
class Fan:
    """Fan given by ambient dimension, primitive rays, and maximal cones.

    ``max_cones`` lists each maximal cone as a sorted tuple of 0-based ray
    indices.
    """

    dim: int
    rays: tuple[Vector, ...]
    max_cones: tuple[tuple[int, ...], ...]
    check: InitVar[bool] = True

    def __post_init__(self, check: bool) -> None:
        rays = tuple(tuple(int(x) for x in r) for r in self.rays)
        cones = tuple(tuple(sorted(int(i) for i in c)) for c in self.max_cones)
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "max_cones", cones)
        # hash caching: fans are dictionary keys on every cached geometry
        # lookup, so recomputing the tuple hash each time is wasteful
        object.__setattr__(self, "_hash", hash((self.dim, rays, cones)))
        object.__setattr__(
            self,
            "_ray_owners",
            tuple(
                tuple(i for i, c in enumerate(cones) if ray in c)
                for ray in range(len(rays))
            ),
        )
        if self.dim < 1:
            raise FanError("fan dimension must be at least 1")
        for r in rays:
            if len(r) != self.dim:
                raise FanError(f"ray {r} does not have dimension {self.dim}")
            if not is_primitive(r):
                raise FanError(f"ray {r} is not primitive")
        if len(set(rays)) != len(rays):
            raise FanError("duplicate rays")
        if not cones:
            raise FanError("a fan needs at least one maximal cone")
        used: set[int] = set()
        for c in cones:
            if len(set(c)) != len(c):
                raise FanError(f"repeated ray index in cone {c}")
            for i in c:
                if not 0 <= i < len(rays):
                    raise FanError(f"ray index {i} out of range")
            used.update(c)
        if rays and used != set(range(len(rays))):
            missing = sorted(set(range(len(rays))) - used)
            raise FanError(f"rays {missing} belong to no maximal cone")
        for a in cones:
            for b in cones:
                if a != b and set(a) <= set(b):
                    raise FanError(f"maximal cone {a} is a face of {b}")
        # build every maximal cone once; Cone construction enforces
        # simpliciality, and the cached objects serve all later queries
        object.__setattr__(
            self,
            "_cones",
            tuple(
                Cone(self.dim, tuple(rays[i] for i in c)) for c in cones
            ),
        )
        if check:
            smooth = is_smooth(self)
            if not smooth:
                raise FanError(f"fan is not smooth: {smooth.summary()}")
            valid = fan_validity(self)
            if not valid:
                raise NotAFanError(f"not a fan: {valid.summary()}")

    def __hash__(self) -> int:
        return self._hash

    def cone(self, index: int) -> Cone:
        return self._cones[index]

    @property
    def cones(self) -> list[Cone]:
        return list(self._cones)

    def cones_containing_ray(self, ray_index: int) -> tuple[int, ...]:
        return self._ray_owners[ray_index]


# ---------------------------------------------------------------------------
# membership and separation
# ---------------------------------------------------------------------------


def dual_contains(cone: Cone, m: Sequence[int]) -> bool:
    """Whether the character pairs nonnegatively with every generator.

    Membership in the dual cone is exactly regularity of the monomial with
    exponent ``m`` on the affine chart of the cone.
    """
    return all(pairing(m, v) >= 0 for v in cone.generators)


def perp_contains(cone: Cone, m: Sequence[int]) -> bool:
    """Whether the character annihilates the cone.

    Equivalent to both ``m`` and ``-m`` lying in the dual cone: the
    monomial is regular and invertible on the chart.
    """
    return all(pairing(m, v) == 0 for v in cone.generators)


def _fm_feasible(constraints: list[tuple[list[Fraction], Fraction]], nvars: int) -> bool:
    """Feasibility of {coeffs . x >= rhs} over Q by Fourier-Motzkin."""
    rows = constraints
    for var in range(nvars):
        pos, neg, rest = [], [], []
        for coeffs, rhs in rows:
            a = coeffs[var]
            if a > 0:
                pos.append((coeffs, rhs))
            elif a < 0:
                neg.append((coeffs, rhs))
            else:
                rest.append((coeffs, rhs))
        new_rows = rest
        for cp, rp in pos:
            ap = cp[var]
            for cn, rn in neg:
                an = cn[var]
                coeffs = [-an * x + ap * y for x, y in zip(cp, cn)]
                new_rows.append((coeffs, -an * rp + ap * rn))
        rows = new_rows
    return all(rhs <= 0 for _, rhs in rows)


def _separating_functional_exists(
    shared: Iterable[Vector], only_a: Iterable[Vector], only_b: Iterable[Vector], n: int
) -> bool:
    # Two-sided separation: m vanishing on the shared rays, strictly
    # negative on the rest of a, strictly positive on the rest of b.  By
    # homogeneity, strictness is encoded as margin >= 1.
    constraints: list[tuple[list[Fraction], Fraction]] = []
    zero, one = Fraction(0), Fraction(1)
    for v in shared:
        constraints.append(([Fraction(x) for x in v], zero))
        constraints.append(([Fraction(-x) for x in v], zero))
    for v in only_a:
        constraints.append(([Fraction(-x) for x in v], one))
    for v in only_b:
        constraints.append(([Fraction(x) for x in v], one))
    return _fm_feasible(constraints, n)


def intersect(a: Cone, b: Cone) -> Cone:
    """Common face of two cones, verifying the fan axiom for the pair.

    The shared generators span the candidate face; the pair is accepted
    only if some rational character vanishes on the shared generators and
    strictly separates the remaining generators of the two cones.
    """
    if a.ambient_dim != b.ambient_dim:
        raise FanError("cones live in different ambient lattices")
    shared = [g for g in a.generators if g in set(b.generators)]
    only_a = [g for g in a.generators if g not in set(shared)]
    only_b = [g for g in b.generators if g not in set(shared)]
    if not _separating_functional_exists(shared, only_a, only_b, a.ambient_dim):
        raise NotAFanError(
            f"not a fan: cones {a.generators} and {b.generators} "
            "do not meet in a common face"
        )
    return Cone(a.ambient_dim, tuple(shared))


@lru_cache(maxsize=None)
def common_face(fan: Fan, i: int, j: int) -> Cone:
    """Cached common face of two maximal cones of a fan."""
    return intersect(fan.cone(i), fan.cone(j))


@lru_cache(maxsize=None)
def all_pair_faces(fan: Fan) -> tuple[tuple[int, int, tuple[Vector, ...]], ...]:
    """Generators of the common face of every unordered maximal-cone pair."""
    m = len(fan.max_cones)
    return tuple(
        (i, j, common_face(fan, i, j).generators)
        for i in range(m)
        for j in range(i + 1, m)
    )


def fan_validity(fan: Fan) -> CheckReport:
    """Pairwise fan-axiom verification over all maximal cones."""
    findings = []
    for i in range(len(fan.max_cones)):
        for j in range(i + 1, len(fan.max_cones)):
            try:
                common_face(fan, i, j)
            except NotAFanError:
                findings.append({"kind": "not_a_fan", "cones": [i, j]})
    return CheckReport(not findings, findings)


# ---------------------------------------------------------------------------
# smoothness and completeness
# ---------------------------------------------------------------------------


def is_smooth(fan: Fan) -> CheckReport:
    """Every maximal cone's generators must extend to a lattice basis."""
    findings = []
    for idx in range(len(fan.max_cones)):
        cone = fan.cone(idx)
        if not cone.generators:
            continue
        factors = invariant_factors([list(g) for g in cone.generators])
        bad = [f for f in factors if f != 1]
        if bad:
            findings.append(
                {"kind": "singular_cone", "cone": idx, "invariant_factor": bad[0]}
            )
    return CheckReport(not findings, findings)


@lru_cache(maxsize=None)
def _membership_data(fan: Fan, index: int) -> tuple[tuple[tuple[int, ...], ...], int]:
    # For a full-dimensional smooth/simplicial cone with generator columns
    # G, x lies in the cone iff sign(det G) * adj(G) x >= 0 componentwise.
    cone = fan.cone(index)
    cols = [[g[i] for g in cone.generators] for i in range(fan.dim)]
    d = det(cols)
    if d == 0:
        raise FanError("membership solver needs a full-dimensional cone")
    inv = [[Fraction(0)] * fan.dim for _ in range(fan.dim)]
    # adjugate = det * inverse, computed exactly over Q then cast to int
    work = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(fan.dim)]
            for i, row in enumerate(cols)]
    n = fan.dim
    for col in range(n):
        piv = next(i for i in range(col, n) if work[i][col] != 0)
        work[col], work[piv] = work[piv], work[col]
        p = work[col][col]
        work[col] = [x / p for x in work[col]]
        for i in range(n):
            if i != col and work[i][col] != 0:
                f = work[i][col]
                work[i] = [x - f * y for x, y in zip(work[i], work[col])]
    adj = tuple(
        tuple(int(work[i][n + j] * d) for j in range(n)) for i in range(n)
    )
    return adj, (1 if d > 0 else -1)


def _cone_covers(fan: Fan, index: int, x: Sequence[int]) -> bool:
    adj, sign = _membership_data(fan, index)
    return all(sign * sum(row[k] * x[k] for k in range(len(x))) >= 0 for row in adj)


def cone_contains(cone: Cone, x: Sequence[int | Fraction]) -> bool:
    """Exact membership of a point in a simplicial cone of any dimension."""
    n = cone.ambient_dim
    if len(x) != n:
        raise FanError("point dimension mismatch")
    if not cone.generators:
        return all(v == 0 for v in x)
    d = cone.dim
    aug = [[Fraction(g[i]) for g in cone.generators] + [Fraction(x[i])] for i in range(n)]
    pivots = []
    r = 0
    for col in range(d):
        sel = next((i for i in range(r, n) if aug[i][col] != 0), None)
        if sel is None:
            continue
        aug[r], aug[sel] = aug[sel], aug[r]
        p = aug[r][col]
        aug[r] = [v / p for v in aug[r]]
        for i in range(n):
            if i != r and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [v - f * w for v, w in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
    for i in range(r, n):
        if aug[i][d] != 0:
            return False
    coeffs = [Fraction(0)] * d
    for row_idx, col in enumerate(pivots):
        coeffs[col] = aug[row_idx][d]
    return all(c >= 0 for c in coeffs)


@lru_cache(maxsize=None)
def _facet_pairing(fan: Fan) -> tuple[bool, tuple]:
    # (a) full-dimensional maximal cones, (b) every facet shared by exactly
    # two of them, (c) connected facet-adjacency graph.
    findings: list[dict] = []
    for idx, c in enumerate(fan.max_cones):
        if len(c) != fan.dim:
            findings.append({"kind": "not_full_dimensional", "cone": idx, "dim": len(c)})
    if findings:
        return False, tuple(findings)

    facet_owners: dict[frozenset[int], list[int]] = defaultdict(list)
    for idx, c in enumerate(fan.max_cones):
        for drop in c:
            facet_owners[frozenset(c) - {drop}].append(idx)
    for facet in sorted(facet_owners, key=lambda f: sorted(f)):
        owners = facet_owners[facet]
        if len(owners) != 2:
            findings.append(
                {
                    "kind": "unmatched_facet",
                    "facet_rays": sorted(facet),
                    "cones": owners,
                }
            )
    if findings:
        return False, tuple(findings)

    adjacency: dict[int, set[int]] = defaultdict(set)
    for owners in facet_owners.values():
        a, b = owners
        adjacency[a].add(b)
        adjacency[b].add(a)
    seen = {0}
    stack = [0]
    while stack:
        cur = stack.pop()
        for nxt in adjacency[cur]:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    if len(seen) != len(fan.max_cones):
        findings.append(
            {
                "kind": "disconnected",
                "unreached_cones": sorted(set(range(len(fan.max_cones))) - seen),
            }
        )
        return False, tuple(findings)
    return True, ()


def facet_pairing_complete(fan: Fan) -> CheckReport:
    """Structural completeness core: full-dimensional maximal cones, every
    facet matched exactly twice, connected adjacency graph.  Cached; used
    as the cheap gate wherever fan completeness is a precondition."""
    ok, findings = _facet_pairing(fan)
    return CheckReport(ok, [dict(f) for f in findings])


def is_complete(
    fan: Fan, *, seed: int = DEFAULT_SEED, samples: int = COVERAGE_SAMPLES
) -> CheckReport:
    """Completeness test: facet pairing plus a seeded coverage witness.

    On top of the facet-pairing core, ``samples`` reproducible
    pseudo-random primitive directions must each lie in some maximal cone
    (exact rational membership).
    """
    rep = facet_pairing_complete(fan)
    if not rep.ok:
        return rep
    findings = rep.findings
    rng = random.Random(seed)
    for _ in range(samples):
        while True:
            x = [rng.randint(-1000, 1000) for _ in range(fan.dim)]
            if any(x):
                break
        x = list(make_primitive(x))
        if not any(_cone_covers(fan, i, x) for i in range(len(fan.max_cones))):
            findings.append({"kind": "uncovered_direction", "direction": x})
            return CheckReport(False, findings)
    return CheckReport(True, findings)


# ---------------------------------------------------------------------------
# stabilizer splitting
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def stabilizer_splitting(cone: Cone) -> StabilizerSplitting:
    """Splitting of the big torus induced by a smooth cone.

    The complement comes from deterministic basis completion; the
    projection rows are the characters dual to the cone generators within
    the completed basis, so both restriction to the stabilizer torus and
    pullback through the projection are exact integer operations.
    """
    gens = [list(g) for g in cone.generators]
    complement = tuple(complete_to_basis(gens, cone.ambient_dim))
    full = [list(g) for g in cone.generators] + [list(w) for w in complement]
    duals = dual_basis(full)
    projection = tuple(duals[: cone.dim])
    return StabilizerSplitting(cone=cone, complement=complement, projection=projection)


@lru_cache(maxsize=None)
def max_cone_dual_basis(fan: Fan, index: int) -> tuple[Character, ...]:
    """Dual basis of a full-dimensional maximal cone's generators."""
    cone = fan.cone(index)
    if cone.dim != fan.dim:
        raise FanError(
            f"fan not complete: maximal cone {index} has dimension {cone.dim} < {fan.dim}"
        )
    return tuple(dual_basis([list(g) for g in cone.generators]))


@lru_cache(maxsize=None)
def all_dual_bases(fan: Fan) -> tuple[tuple[Character, ...], ...]:
    """Dual bases of every maximal cone, one cached lookup per fan."""
    return tuple(
        max_cone_dual_basis(fan, i) for i in range(len(fan.max_cones))
    )
