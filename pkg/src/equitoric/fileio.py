"""Readers and writers for the fan / bundle / ray-value / matrix formats.

All integers travel as native JSON ints or exact decimal strings; rational
coefficients as "num/den" strings.  Floats are rejected everywhere.
Semantic validation failures while building core objects are re-raised as
``FileFormatError`` so malformed files never reach the core modules.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .bundle import BlockStructure, BundleData, RayValues, TransitionCocycle
from .fan import Fan
from .laurent import LaurentMatrix, LaurentPoly
from .rep import JointSplit, QMatrix


class FileFormatError(ValueError):
    pass


def _as_int(x, where: str) -> int:
    if isinstance(x, bool):
        raise FileFormatError(f"{where}: expected an integer, got a boolean")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        s = x.strip()
        body = s[1:] if s[:1] in "+-" else s
        if body.isdigit():
            return int(s)
        raise FileFormatError(f"{where}: {x!r} is not an exact integer")
    raise FileFormatError(f"{where}: expected an exact integer, got {type(x).__name__}")


def _as_fraction(x, where: str) -> Fraction:
    if isinstance(x, bool):
        raise FileFormatError(f"{where}: expected a rational, got a boolean")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise FileFormatError(f"{where}: {x!r} is not an exact rational") from exc
    raise FileFormatError(f"{where}: floats are not accepted; use 'num/den' strings")


def _fraction_str(q: Fraction) -> str | int:
    if q.denominator == 1:
        return int(q)
    return f"{q.numerator}/{q.denominator}"


def load_json(path: str | Path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FileFormatError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"parse error in {path}: {exc}") from exc


def write_json(path: str | Path, obj) -> None:
    Path(path).write_text(json.dumps(obj, indent=2) + "\n", encoding="utf-8")


# ---------------------------------------------------------------------------
# fans
# ---------------------------------------------------------------------------


def fan_from_obj(obj, *, check: bool = True) -> Fan:
    if not isinstance(obj, dict):
        raise FileFormatError("fan: expected an object")
    for key in ("dim", "rays", "max_cones"):
        if key not in obj:
            raise FileFormatError(f"fan: missing field {key!r}")
    dim = _as_int(obj["dim"], "fan.dim")
    rays = [
        tuple(_as_int(x, f"fan.rays[{i}]") for x in ray)
        for i, ray in enumerate(obj["rays"])
    ]
    cones = [
        tuple(_as_int(x, f"fan.max_cones[{i}]") for x in cone)
        for i, cone in enumerate(obj["max_cones"])
    ]
    try:
        return Fan(dim=dim, rays=tuple(rays), max_cones=tuple(cones), check=check)
    except ValueError as exc:
        if check:
            raise FileFormatError(f"invalid fan: {exc}") from exc
        raise


def fan_to_obj(fan: Fan) -> dict:
    return {
        "dim": fan.dim,
        "rays": [list(r) for r in fan.rays],
        "max_cones": [list(c) for c in fan.max_cones],
    }


def load_fan(path: str | Path, *, check: bool = True) -> Fan:
    return fan_from_obj(load_json(path), check=check)


def _resolve_fan(field, base_dir: Path, *, check: bool = True) -> Fan:
    if isinstance(field, str):
        return load_fan(base_dir / field, check=check)
    return fan_from_obj(field, check=check)


# ---------------------------------------------------------------------------
# bundle data
# ---------------------------------------------------------------------------


def bundle_from_obj(obj, base_dir: str | Path = ".") -> BundleData:
    if not isinstance(obj, dict):
        raise FileFormatError("bundle: expected an object")
    for key in ("fan", "blocks", "chars"):
        if key not in obj:
            raise FileFormatError(f"bundle: missing field {key!r}")
    fan = _resolve_fan(obj["fan"], Path(base_dir))
    blocks_field = obj["blocks"]
    if isinstance(blocks_field, list):
        blocks = BlockStructure(tuple(_as_int(x, "bundle.blocks") for x in blocks_field))
    else:
        blocks = BlockStructure.diagonal(_as_int(blocks_field, "bundle.blocks"))
    chars_field = obj["chars"]
    if not isinstance(chars_field, dict):
        raise FileFormatError("bundle.chars: expected an object keyed by cone index")
    chars = {}
    for key, per_cone in chars_field.items():
        idx = _as_int(key, "bundle.chars key")
        chars[idx] = tuple(
            tuple(_as_int(x, f"bundle.chars[{key}]") for x in c) for c in per_cone
        )
    try:
        return BundleData(fan=fan, blocks=blocks, chars=chars)
    except ValueError as exc:
        raise FileFormatError(f"invalid bundle data: {exc}") from exc


def bundle_to_obj(data: BundleData) -> dict:
    return {
        "fan": fan_to_obj(data.fan),
        "blocks": list(data.blocks.partition),
        "chars": {
            str(i): [list(c) for c in per_cone]
            for i, per_cone in enumerate(data.chars)
        },
    }


def load_bundle(path: str | Path) -> BundleData:
    path = Path(path)
    return bundle_from_obj(load_json(path), base_dir=path.parent)


# ---------------------------------------------------------------------------
# ray values
# ---------------------------------------------------------------------------


def ray_values_from_obj(obj, base_dir: str | Path = ".") -> RayValues:
    if not isinstance(obj, dict):
        raise FileFormatError("ray values: expected an object")
    for key in ("fan", "blocks", "ray_values"):
        if key not in obj:
            raise FileFormatError(f"ray values: missing field {key!r}")
    fan = _resolve_fan(obj["fan"], Path(base_dir))
    r = _as_int(obj["blocks"], "ray_values.blocks")
    values = tuple(
        tuple(_as_int(x, f"ray_values[{i}]") for x in row)
        for i, row in enumerate(obj["ray_values"])
    )
    try:
        return RayValues(fan=fan, r=r, values=values)
    except ValueError as exc:
        raise FileFormatError(f"invalid ray values: {exc}") from exc


def ray_values_to_obj(rv: RayValues) -> dict:
    return {
        "fan": fan_to_obj(rv.fan),
        "blocks": rv.r,
        "ray_values": [list(row) for row in rv.values],
    }


def load_ray_values(path: str | Path) -> RayValues:
    path = Path(path)
    return ray_values_from_obj(load_json(path), base_dir=path.parent)


# ---------------------------------------------------------------------------
# transition cocycles
# ---------------------------------------------------------------------------


def cocycle_to_obj(coc: TransitionCocycle) -> dict:
    pairs = []
    for (t, s) in sorted(coc.entries):
        pairs.append(
            {
                "target": t,
                "source": s,
                "exponents": [list(c) for c in coc.entries[(t, s)]],
            }
        )
    return {
        "fan": fan_to_obj(coc.fan),
        "blocks": list(coc.blocks.partition),
        "pairs": pairs,
    }


def cocycle_from_obj(obj, base_dir: str | Path = ".") -> TransitionCocycle:
    if not isinstance(obj, dict):
        raise FileFormatError("cocycle: expected an object")
    fan = _resolve_fan(obj["fan"], Path(base_dir))
    blocks = BlockStructure(tuple(_as_int(x, "cocycle.blocks") for x in obj["blocks"]))
    entries = {}
    for pair in obj["pairs"]:
        t = _as_int(pair["target"], "cocycle.target")
        s = _as_int(pair["source"], "cocycle.source")
        entries[(t, s)] = tuple(
            tuple(_as_int(x, "cocycle.exponents") for x in c) for c in pair["exponents"]
        )
    return TransitionCocycle(fan=fan, blocks=blocks, entries=entries)


# ---------------------------------------------------------------------------
# Laurent matrices
# ---------------------------------------------------------------------------


def laurent_matrix_from_obj(obj) -> LaurentMatrix:
    if not isinstance(obj, dict):
        raise FileFormatError("matrix: expected an object")
    for key in ("vars", "size", "entries"):
        if key not in obj:
            raise FileFormatError(f"matrix: missing field {key!r}")
    nvars = _as_int(obj["vars"], "matrix.vars")
    size = _as_int(obj["size"], "matrix.size")
    entries = obj["entries"]
    if len(entries) != size or any(len(row) != size for row in entries):
        raise FileFormatError(f"matrix.entries: expected a {size}x{size} grid")
    rows = []
    for i, row in enumerate(entries):
        out_row = []
        for j, terms in enumerate(row):
            acc: dict[tuple[int, ...], Fraction] = {}
            for term in terms:
                if not isinstance(term, list) or len(term) != 2:
                    raise FileFormatError(
                        f"matrix.entries[{i}][{j}]: each term is [[exponents], coeff]"
                    )
                exp = tuple(_as_int(x, f"matrix.entries[{i}][{j}]") for x in term[0])
                if len(exp) != nvars:
                    raise FileFormatError(
                        f"matrix.entries[{i}][{j}]: exponent {list(exp)} needs {nvars} entries"
                    )
                acc[exp] = acc.get(exp, Fraction(0)) + _as_fraction(
                    term[1], f"matrix.entries[{i}][{j}]"
                )
            try:
                out_row.append(LaurentPoly(nvars, acc))
            except ValueError as exc:
                raise FileFormatError(f"matrix.entries[{i}][{j}]: {exc}") from exc
        rows.append(out_row)
    try:
        return LaurentMatrix(nvars, rows)
    except ValueError as exc:
        raise FileFormatError(f"invalid matrix: {exc}") from exc


def laurent_matrix_to_obj(mat: LaurentMatrix) -> dict:
    return {
        "vars": mat.nvars,
        "size": mat.size,
        "entries": [
            [
                [[list(exp), _fraction_str(c)] for exp, c in sorted(p.terms.items())]
                for p in row
            ]
            for row in mat.rows
        ],
    }


def rep_from_obj(obj) -> list[LaurentMatrix]:
    """A rep file holds one matrix, a list, or {"matrices": [...]}."""
    if isinstance(obj, dict) and "matrices" in obj:
        items = obj["matrices"]
    elif isinstance(obj, list):
        items = obj
    else:
        items = [obj]
    if not items:
        raise FileFormatError("rep file contains no matrices")
    return [laurent_matrix_from_obj(item) for item in items]


def load_rep(path: str | Path) -> list[LaurentMatrix]:
    return rep_from_obj(load_json(path))


# ---------------------------------------------------------------------------
# split results
# ---------------------------------------------------------------------------


def _qmatrix_to_obj(m: QMatrix) -> list[list]:
    return [[_fraction_str(x) for x in row] for row in m]


def _qmatrix_from_obj(obj, where: str) -> QMatrix:
    return tuple(
        tuple(_as_fraction(x, where) for x in row) for row in obj
    )


def joint_split_to_obj(js: JointSplit) -> dict:
    return {
        "conjugator": _qmatrix_to_obj(js.conjugator),
        "inverse_conjugator": _qmatrix_to_obj(js.inverse_conjugator),
        "classes": [
            {"weights": [list(w) for w in wt], "multiplicity": mult}
            for wt, mult in js.classes
        ],
        "diagonals": [[list(w) for w in diag] for diag in js.diagonals],
    }


def joint_split_from_obj(obj) -> JointSplit:
    return JointSplit(
        conjugator=_qmatrix_from_obj(obj["conjugator"], "split.conjugator"),
        inverse_conjugator=_qmatrix_from_obj(
            obj["inverse_conjugator"], "split.inverse_conjugator"
        ),
        classes=tuple(
            (
                tuple(tuple(_as_int(x, "split.classes") for x in w) for w in item["weights"]),
                _as_int(item["multiplicity"], "split.classes"),
            )
            for item in obj["classes"]
        ),
        diagonals=tuple(
            tuple(tuple(_as_int(x, "split.diagonals") for x in w) for w in diag)
            for diag in obj["diagonals"]
        ),
    )
