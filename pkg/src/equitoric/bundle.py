"""Classification data for equivariant principal bundles with abelian group.

A bundle datum assigns to every maximal cone of the fan one character per
block of the structure group (the local torus homomorphisms after reduction
to the diagonal).  Two data glue to a bundle exactly when, for every pair
of maximal cones, the blockwise character difference annihilates their
common face -- the extension condition.  On complete fans the data are in
bijection with integer tables indexed by (ray, block): the support-function
values.  All arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .fan import (
    Cone,
    Fan,
    all_dual_bases,
    all_pair_faces,
    common_face,
    facet_pairing_complete,
    is_complete,
    is_smooth,
    stabilizer_splitting,
)
from .lattice import Character, pairing
from .report import CheckReport


class BundleError(ValueError):
    """Invalid or inconsistent bundle classification data."""


class ExtensionError(BundleError):
    """The extension condition fails for a pair of maximal cones."""


def _char_sub(a: Character, b: Character) -> Character:
    return tuple(x - y for x, y in zip(a, b))


def _char_add(a: Character, b: Character) -> Character:
    return tuple(x + y for x, y in zip(a, b))


def _char_neg(a: Character) -> Character:
    return tuple(-x for x in a)


@dataclass(frozen=True)
class BlockStructure:
    """Ordered partition (k_1, ..., k_r) of the matrix size k.

    Block i of the structure group carries one diagonal character repeated
    k_i times; r is the number of independent characters per cone.
    """

    partition: tuple[int, ...]

    def __post_init__(self) -> None:
        parts = tuple(int(p) for p in self.partition)
        object.__setattr__(self, "partition", parts)
        if not parts or any(p < 1 for p in parts):
            raise BundleError("block sizes must be positive integers")

    @property
    def r(self) -> int:
        return len(self.partition)

    @property
    def k(self) -> int:
        return sum(self.partition)

    @classmethod
    def diagonal(cls, r: int) -> "BlockStructure":
        return cls((1,) * r)


def _as_blocks(blocks: "BlockStructure | int | Sequence[int]") -> BlockStructure:
    if isinstance(blocks, BlockStructure):
        return blocks
    if isinstance(blocks, int):
        return BlockStructure.diagonal(blocks)
    return BlockStructure(tuple(blocks))


@dataclass(frozen=True)
class BundleData:
    """One character per (maximal cone, block): the classification datum.

    ``chars[i][b]`` is the exponent vector attached to maximal cone ``i``
    and block ``b``.  For maximal cones of less than full dimension, every
    character must factor through the cone's stabilizer projection (it
    pairs to zero with the stored basis complement); this is enforced at
    construction.  The extension condition is *not* enforced here -- use
    :func:`check_extension` -- so candidate data can be represented and
    diagnosed.
    """

    fan: Fan
    blocks: BlockStructure
    chars: tuple[tuple[Character, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "blocks", _as_blocks(self.blocks))
        chars = self.chars
        if isinstance(chars, Mapping):
            try:
                chars = tuple(
                    tuple(tuple(int(x) for x in c) for c in chars[i])
                    for i in range(len(self.fan.max_cones))
                )
            except KeyError as exc:
                raise BundleError(f"missing characters for maximal cone {exc}") from exc
        else:
            chars = tuple(tuple(tuple(int(x) for x in c) for c in cone) for cone in chars)
        object.__setattr__(self, "chars", chars)
        m = len(self.fan.max_cones)
        if len(chars) != m:
            raise BundleError(f"expected characters for {m} maximal cones, got {len(chars)}")
        r = self.blocks.r
        n = self.fan.dim
        for i, per_cone in enumerate(chars):
            if len(per_cone) != r:
                raise BundleError(f"cone {i}: expected {r} characters, got {len(per_cone)}")
            for c in per_cone:
                if len(c) != n:
                    raise BundleError(f"cone {i}: character {c} has wrong dimension")
        for i in range(m):
            if len(self.fan.max_cones[i]) < n:
                split = stabilizer_splitting(self.fan.cone(i))
                for b, c in enumerate(chars[i]):
                    if not split.factors_through(c):
                        raise BundleError(
                            f"cone {i}, block {b}: character {c} does not factor "
                            "through the stabilizer projection"
                        )

    @property
    def r(self) -> int:
        return self.blocks.r


@dataclass(frozen=True)
class RayValues:
    """Integer table of support-function values, one row per ray."""

    fan: Fan
    r: int
    values: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        vals = tuple(tuple(int(x) for x in row) for row in self.values)
        object.__setattr__(self, "values", vals)
        if self.r < 1:
            raise BundleError("block count must be positive")
        if len(vals) != len(self.fan.rays):
            raise BundleError(
                f"expected one value row per ray ({len(self.fan.rays)}), got {len(vals)}"
            )
        for row in vals:
            if len(row) != self.r:
                raise BundleError(f"value row {row} does not have {self.r} entries")


@dataclass
class TransitionCocycle:
    """Monomial transition exponents e[(t, s)] between cone charts.

    ``entries[(t, s)]`` holds one exponent vector per block: the monomial
    carrying the s-chart trivialization into the t-chart one.  The source
    characters, when present, let :func:`verify_cocycle` re-derive each
    exponent as a difference of local characters.
    """

    fan: Fan
    blocks: BlockStructure
    entries: dict[tuple[int, int], tuple[Character, ...]]
    source_chars: tuple[tuple[Character, ...], ...] | None = field(
        default=None, compare=False
    )


# ---------------------------------------------------------------------------
# extension condition
# ---------------------------------------------------------------------------


def check_extension(data: BundleData) -> CheckReport:
    """Pairwise extension condition on the classification datum.

    For every unordered pair of maximal cones and every block, the
    character difference must annihilate the common face; a violation is
    reported with the first offending shared ray and its pairing value.
    """
    findings = []
    chars = data.chars
    for i, j, face_gens in all_pair_faces(data.fan):
        if not face_gens:
            continue
        left, right = chars[i], chars[j]
        for b in range(data.r):
            ci, cj = left[b], right[b]
            for v in face_gens:
                p = sum((a - c) * x for a, c, x in zip(ci, cj, v))
                if p != 0:
                    findings.append(
                        {
                            "kind": "extension_violation",
                            "cones": [i, j],
                            "block": b,
                            "ray": list(v),
                            "pairing": p,
                        }
                    )
                    break
    return CheckReport(not findings, findings)


# ---------------------------------------------------------------------------
# ray-value parametrization
# ---------------------------------------------------------------------------


def from_ray_values(
    rv: RayValues, blocks: BlockStructure | None = None
) -> BundleData:
    """Bundle datum whose support function takes the prescribed ray values.

    Each maximal cone must be full-dimensional (its generators form a
    lattice basis on a smooth fan), and the character for (cone, block) is
    the unique dual solution against that basis.  The result always passes
    the extension condition: adjacent cones agree on shared rays by
    construction.
    """
    fan = rv.fan
    if blocks is None:
        blocks = BlockStructure.diagonal(rv.r)
    elif blocks.r != rv.r:
        raise BundleError("block structure does not match the value table width")
    n = fan.dim
    closed = facet_pairing_complete(fan)
    if not closed.ok:
        raise BundleError(f"fan not complete: {closed.summary()}")
    bases = all_dual_bases(fan)
    values = rv.values
    chars = []
    for idx, cone_rays in enumerate(fan.max_cones):
        duals = bases[idx]
        per_block = []
        for b in range(rv.r):
            vals = [values[ray][b] for ray in cone_rays]
            per_block.append(
                tuple(
                    sum(vals[i] * duals[i][k] for i in range(n)) for k in range(n)
                )
            )
        chars.append(tuple(per_block))
    return BundleData(fan=fan, blocks=blocks, chars=tuple(chars))


def to_ray_values(data: BundleData) -> RayValues:
    """Support-function values recovered by restriction to the rays.

    The value at a ray may be computed from any maximal cone containing
    it; agreement across all such cones is re-verified and an
    ``inconsistent`` error signals a violated extension condition.
    """
    fan = data.fan
    chars = data.chars
    rows = []
    for ray_idx, ray in enumerate(fan.rays):
        owners = fan.cones_containing_ray(ray_idx)
        row = []
        for b in range(data.r):
            first = None
            for i in owners:
                val = sum(a * x for a, x in zip(chars[i][b], ray))
                if first is None:
                    first = val
                elif val != first:
                    raise BundleError(
                        f"inconsistent: ray {ray_idx}, block {b} gets values "
                        f"{sorted({first, val})} from different maximal cones"
                    )
            row.append(first)
        rows.append(tuple(row))
    return RayValues(fan=fan, r=data.r, values=tuple(rows))


# ---------------------------------------------------------------------------
# group structure and isomorphism
# ---------------------------------------------------------------------------


def _require_comparable(a: BundleData, b: BundleData) -> None:
    if a.fan != b.fan or a.blocks != b.blocks:
        raise BundleError("incomparable: data live on different fans or block structures")


def is_isomorphic(a: BundleData, b: BundleData) -> bool:
    """Classes coincide exactly when the character collections coincide."""
    _require_comparable(a, b)
    return a.chars == b.chars


def tensor(a: BundleData, b: BundleData) -> BundleData:
    """Blockwise character sum; the abelian group law on classes."""
    _require_comparable(a, b)
    chars = tuple(
        tuple(_char_add(ca, cb) for ca, cb in zip(pa, pb))
        for pa, pb in zip(a.chars, b.chars)
    )
    return BundleData(fan=a.fan, blocks=a.blocks, chars=chars)


def inverse(a: BundleData) -> BundleData:
    chars = tuple(tuple(_char_neg(c) for c in per_cone) for per_cone in a.chars)
    return BundleData(fan=a.fan, blocks=a.blocks, chars=chars)


def trivial(fan: Fan, blocks: BlockStructure | int) -> BundleData:
    """The identity class: the zero character everywhere."""
    bs = _as_blocks(blocks)
    zero = tuple([0] * fan.dim)
    chars = tuple(tuple(zero for _ in range(bs.r)) for _ in fan.max_cones)
    return BundleData(fan=fan, blocks=bs, chars=chars)


# ---------------------------------------------------------------------------
# restriction to faces
# ---------------------------------------------------------------------------


def induced_on_face(data: BundleData, face: Cone) -> tuple[tuple[int, ...], ...]:
    """Per-block character of the face's stabilizer torus.

    The restriction is computed from every maximal cone containing the
    face and must agree across them (a consequence of the extension
    condition); disagreement raises.
    """
    fan = data.fan
    owners = [
        i
        for i in range(len(fan.max_cones))
        if set(face.generators) <= set(fan.cone(i).generators)
    ]
    if not owners:
        raise BundleError("not a face of any maximal cone")
    results = set()
    for i in owners:
        results.add(
            tuple(
                tuple(pairing(data.chars[i][b], v) for v in face.generators)
                for b in range(data.r)
            )
        )
    if len(results) != 1:
        raise BundleError(
            "inconsistent restriction across maximal cones; extension condition violated"
        )
    return results.pop()


# ---------------------------------------------------------------------------
# transition cocycle
# ---------------------------------------------------------------------------


def transition_cocycle(data: BundleData) -> TransitionCocycle:
    """Monomial transition exponents e[(t, s)] = chars[t] - chars[s]."""
    rep = check_extension(data)
    if not rep:
        raise ExtensionError(f"extension condition fails: {rep.summary()}")
    entries: dict[tuple[int, int], tuple[Character, ...]] = {}
    m = len(data.fan.max_cones)
    for t in range(m):
        for s in range(m):
            if t == s:
                continue
            entries[(t, s)] = tuple(
                _char_sub(data.chars[t][b], data.chars[s][b]) for b in range(data.r)
            )
    return TransitionCocycle(
        fan=data.fan, blocks=data.blocks, entries=entries, source_chars=data.chars
    )


def verify_cocycle(cocycle: TransitionCocycle) -> CheckReport:
    """Exact exponent-arithmetic verification of the cocycle laws.

    Checks antisymmetry, the triple identity e[(g, s)] = e[(g, t)] +
    e[(t, s)], regular-invertibility of every exponent on the chart
    overlap (membership in the perpendicular of the common face), and --
    when source characters are attached -- that each exponent equals the
    corresponding character difference (the monomial form of the
    equivariance relation between local actions).
    """
    fan = cocycle.fan
    r = cocycle.blocks.r
    m = len(fan.max_cones)
    findings: list[dict] = []
    entries = cocycle.entries

    for (t, s), chars in entries.items():
        rev = entries.get((s, t))
        if rev is None:
            findings.append({"kind": "missing_pair", "pair": [s, t]})
            continue
        for b in range(r):
            if chars[b] != _char_neg(rev[b]):
                findings.append(
                    {"kind": "antisymmetry", "pair": [t, s], "block": b}
                )

    for g in range(m):
        for t in range(m):
            if t == g:
                continue
            for s in range(m):
                if s == g or s == t:
                    continue
                e_gs = entries.get((g, s))
                e_gt = entries.get((g, t))
                e_ts = entries.get((t, s))
                if e_gs is None or e_gt is None or e_ts is None:
                    continue
                for b in range(r):
                    if e_gs[b] != _char_add(e_gt[b], e_ts[b]):
                        findings.append(
                            {
                                "kind": "triple_identity",
                                "cones": [g, t, s],
                                "block": b,
                            }
                        )

    for (t, s), chars in entries.items():
        face_gens = common_face(fan, min(t, s), max(t, s)).generators
        for b in range(r):
            for v in face_gens:
                p = pairing(chars[b], v)
                if p != 0:
                    findings.append(
                        {
                            "kind": "not_invertible_on_overlap",
                            "pair": [t, s],
                            "block": b,
                            "ray": list(v),
                            "pairing": p,
                        }
                    )
                    break

    if cocycle.source_chars is not None:
        src = cocycle.source_chars
        for (t, s), chars in entries.items():
            for b in range(r):
                if chars[b] != _char_sub(src[t][b], src[s][b]):
                    findings.append(
                        {"kind": "source_mismatch", "pair": [t, s], "block": b}
                    )
    return CheckReport(not findings, findings)


# ---------------------------------------------------------------------------
# classification descriptor
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Classification:
    """Witness that classes on the fan form a free abelian group of
    rank (number of rays) * (number of blocks), with the two ray-value
    maps as the parametrizing bijection."""

    fan: Fan
    blocks: BlockStructure
    ray_count: int
    rank: int

    def from_ray_values(self, values: Sequence[Sequence[int]]) -> BundleData:
        rv = RayValues(fan=self.fan, r=self.blocks.r, values=tuple(tuple(v) for v in values))
        return from_ray_values(rv, blocks=self.blocks)

    def to_ray_values(self, data: BundleData) -> RayValues:
        return to_ray_values(data)


def classify(
    fan: Fan,
    blocks: BlockStructure | int,
    *,
    seed: int | None = None,
) -> Classification:
    """Classification descriptor for a smooth complete fan.

    Raises ``fan not smooth`` / ``fan not complete`` when the bijectivity
    hypotheses fail; on non-complete fans only :func:`check_extension`
    applies.
    """
    bs = _as_blocks(blocks)
    smooth = is_smooth(fan)
    if not smooth:
        raise BundleError(f"fan not smooth: {smooth.summary()}")
    complete = is_complete(fan) if seed is None else is_complete(fan, seed=seed)
    if not complete:
        raise BundleError(f"fan not complete: {complete.summary()}")
    d = len(fan.rays)
    return Classification(fan=fan, blocks=bs, ray_count=d, rank=d * bs.r)
