"""Command-line front end.

Subcommands: ``fan check``, ``bundle validate``, ``bundle from-rays``,
``bundle to-rays``, ``bundle isom``, ``bundle cocycle``, ``classify``,
``rep split``.  Exit codes are stable: 0 = pass, 1 = a mathematical
condition is violated, 2 = usage, I/O or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import bundle as bundle_mod
from . import fan as fan_mod
from . import fileio
from . import rep as rep_mod
from .bundle import BlockStructure, RayValues
from .fileio import FileFormatError

_EXIT_BY_STATUS = {"pass": 0, "fail": 1, "error": 2}


@dataclass
class Report:
    """Structured command outcome; serializes losslessly to JSON."""

    status: str
    summary: str
    findings: list[dict] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return _EXIT_BY_STATUS[self.status]

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, obj: dict) -> "Report":
        return cls(
            status=obj["status"],
            summary=obj["summary"],
            findings=list(obj.get("findings", [])),
            data=dict(obj.get("data", {})),
        )


def _finding_line(f: dict) -> str:
    kind = f.get("kind", "finding")
    if kind == "singular_cone":
        return f"cone {f['cone']}: invariant factor {f['invariant_factor']}"
    if kind == "not_a_fan":
        return f"cones {tuple(f['cones'])} do not meet in a common face"
    if kind == "unmatched_facet":
        return (
            f"facet (rays {tuple(f['facet_rays'])}) unmatched: "
            f"{len(f['cones'])} incident maximal cone(s)"
        )
    if kind == "not_full_dimensional":
        return f"maximal cone {f['cone']} has dimension {f['dim']}"
    if kind == "uncovered_direction":
        return f"direction {tuple(f['direction'])} lies in no maximal cone"
    if kind == "disconnected":
        return f"facet graph disconnected; unreached cones {f['unreached_cones']}"
    if kind == "extension_violation":
        return (
            f"cones {tuple(f['cones'])} block {f['block']}: character difference "
            f"pairs to {f['pairing']} with shared ray {tuple(f['ray'])}"
        )
    return json.dumps(f)


def _emit(report: Report, args, lines: list[str] | None = None) -> int:
    if args.format == "machine":
        print(json.dumps(report.to_json(), indent=2))
    else:
        for line in lines or []:
            print(line)
        for f in report.findings:
            print("  - " + _finding_line(f))
        print(f"result: {report.status} ({report.summary})")
    return report.exit_code


def _yesno(flag: bool) -> str:
    return "yes" if flag else "no"


def _default_output(input_path: str, suffix: str) -> Path:
    p = Path(input_path)
    return p.with_name(p.stem + suffix)


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_fan_check(args) -> int:
    f = fileio.load_fan(args.path, check=False)
    smooth = fan_mod.is_smooth(f)
    valid = fan_mod.fan_validity(f)
    complete = fan_mod.is_complete(f, seed=args.seed)
    ok = smooth.ok and valid.ok
    report = Report(
        status="pass" if ok else "fail",
        summary=(
            f"smooth={_yesno(smooth.ok)} valid={_yesno(valid.ok)} "
            f"complete={_yesno(complete.ok)}"
        ),
        findings=smooth.findings + valid.findings + complete.findings,
        data={
            "smooth": smooth.ok,
            "valid": valid.ok,
            "complete": complete.ok,
            "dim": f.dim,
            "rays": len(f.rays),
            "max_cones": len(f.max_cones),
        },
    )
    lines = [
        f"fan: {args.path} (dim {f.dim}, {len(f.rays)} rays, {len(f.max_cones)} maximal cones)",
        f"smooth: {_yesno(smooth.ok)}",
        f"valid: {_yesno(valid.ok)}",
        f"complete: {_yesno(complete.ok)}",
    ]
    return _emit(report, args, lines)


def _cmd_bundle_validate(args) -> int:
    data = fileio.load_bundle(args.path)
    rep = bundle_mod.check_extension(data)
    report = Report(
        status="pass" if rep.ok else "fail",
        summary="extension condition satisfied" if rep.ok else "extension condition violated",
        findings=rep.findings,
        data={"blocks": list(data.blocks.partition), "max_cones": len(data.fan.max_cones)},
    )
    lines = [
        f"bundle: {args.path} (fan dim {data.fan.dim}, {len(data.fan.max_cones)} "
        f"maximal cones, blocks {list(data.blocks.partition)})",
        f"extension condition: {'satisfied' if rep.ok else 'violated'}",
    ]
    return _emit(report, args, lines)


def _cmd_bundle_from_rays(args) -> int:
    if args.values:
        f = fileio.load_fan(args.fan_or_values)
        d = len(f.rays)
        flat = [fileio._as_int(v, "values") for v in args.values]
        r = args.blocks
        if len(flat) != d * r:
            raise FileFormatError(
                f"expected {d * r} values ({d} rays x {r} blocks), got {len(flat)}"
            )
        rows = tuple(tuple(flat[i * r : (i + 1) * r]) for i in range(d))
        rv = RayValues(fan=f, r=r, values=rows)
    else:
        rv = fileio.load_ray_values(args.fan_or_values)
    complete = fan_mod.is_complete(rv.fan, seed=args.seed)
    if not complete:
        raise bundle_mod.BundleError(f"fan not complete: {complete.summary()}")
    data = bundle_mod.from_ray_values(rv)
    out = Path(args.output) if args.output else _default_output(args.fan_or_values, ".bundle.json")
    fileio.write_json(out, fileio.bundle_to_obj(data))
    report = Report(
        status="pass",
        summary=f"bundle data written to {out}",
        data={"output": str(out), "chars": fileio.bundle_to_obj(data)["chars"]},
    )
    return _emit(report, args, [f"wrote {out}"])


def _cmd_bundle_to_rays(args) -> int:
    data = fileio.load_bundle(args.path)
    rv = bundle_mod.to_ray_values(data)
    out = Path(args.output) if args.output else _default_output(args.path, ".rays.json")
    fileio.write_json(out, fileio.ray_values_to_obj(rv))
    report = Report(
        status="pass",
        summary=f"ray values written to {out}",
        data={"output": str(out), "ray_values": [list(row) for row in rv.values]},
    )
    return _emit(report, args, [f"wrote {out}"])


def _cmd_bundle_isom(args) -> int:
    a = fileio.load_bundle(args.path_a)
    b = fileio.load_bundle(args.path_b)
    same = bundle_mod.is_isomorphic(a, b)
    report = Report(
        status="pass" if same else "fail",
        summary="isomorphic" if same else "not isomorphic",
    )
    return _emit(report, args, ["isomorphic" if same else "not isomorphic"])


def _cmd_bundle_cocycle(args) -> int:
    data = fileio.load_bundle(args.path)
    coc = bundle_mod.transition_cocycle(data)
    rep = bundle_mod.verify_cocycle(coc)
    out = Path(args.output) if args.output else _default_output(args.path, ".cocycle.json")
    fileio.write_json(out, fileio.cocycle_to_obj(coc))
    report = Report(
        status="pass" if rep.ok else "fail",
        summary=f"cocycle written to {out}; verification {rep.summary()}",
        findings=rep.findings,
        data={"output": str(out), "pairs": len(coc.entries)},
    )
    return _emit(report, args, [f"wrote {out}", f"cocycle verification: {rep.summary()}"])


def _cmd_classify(args) -> int:
    f = fileio.load_fan(args.fan)
    c = bundle_mod.classify(f, args.blocks, seed=args.seed)
    report = Report(
        status="pass",
        summary=f"classes ≅ ℤ^{c.rank}",
        data={"rays": c.ray_count, "blocks": c.blocks.r, "rank": c.rank},
    )
    lines = [
        f"fan: {args.fan}",
        f"rays: {c.ray_count}, blocks: {c.blocks.r}",
        f"classes ≅ ℤ^{c.rank}",
    ]
    return _emit(report, args, lines)


def _parse_blocks(text: str | None, k: int) -> BlockStructure | None:
    if text is None:
        return None
    parts = tuple(int(x) for x in text.split(",") if x.strip())
    bs = BlockStructure(parts)
    if bs.k != k:
        raise FileFormatError(f"block sizes {list(parts)} do not sum to matrix size {k}")
    return bs


def _cmd_rep_split(args) -> int:
    matrices = fileio.load_rep(args.path)
    k = matrices[0].size
    blocks = _parse_blocks(args.blocks, k)
    out = Path(args.output) if args.output else _default_output(args.path, ".split.json")
    if args.fan:
        f = fileio.load_fan(args.fan)
        g, data = rep_mod.split_to_bundle(f, matrices, blocks=blocks)
        fileio.write_json(out, fileio.bundle_to_obj(data))
        report = Report(
            status="pass",
            summary=f"reduced to diagonal data; bundle written to {out}",
            data={
                "output": str(out),
                "conjugator": fileio._qmatrix_to_obj(g),
                "chars": fileio.bundle_to_obj(data)["chars"],
            },
        )
        lines = [f"conjugator: {fileio._qmatrix_to_obj(g)}", f"wrote {out}"]
        return _emit(report, args, lines)
    if len(matrices) == 1:
        dec = rep_mod.split(matrices[0])
        js = rep_mod.JointSplit(
            conjugator=dec.conjugator,
            inverse_conjugator=dec.inverse_conjugator,
            classes=tuple(((m,), mult) for m, _, mult in dec.weights),
            diagonals=(dec.diagonal,),
        )
    else:
        js = rep_mod.joint_split(matrices)
    fileio.write_json(out, fileio.joint_split_to_obj(js))
    weights = [
        {"weights": [list(w) for w in wt], "multiplicity": mult}
        for wt, mult in js.classes
    ]
    report = Report(
        status="pass",
        summary=f"split data written to {out}",
        data={
            "output": str(out),
            "conjugator": fileio._qmatrix_to_obj(js.conjugator),
            "classes": weights,
        },
    )
    lines = [
        f"conjugator: {fileio._qmatrix_to_obj(js.conjugator)}",
        f"weight classes: {weights}",
        f"wrote {out}",
    ]
    return _emit(report, args, lines)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_common(parser: argparse.ArgumentParser, *, seed: bool = False, output: bool = False) -> None:
    parser.add_argument("--format", choices=("text", "machine"), default="text")
    if seed:
        parser.add_argument("--seed", type=int, default=fan_mod.DEFAULT_SEED)
    if output:
        parser.add_argument("--output", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="equitoric",
        description="Exact checks and classification for equivariant principal "
        "bundles on smooth toric varieties.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    fan_p = sub.add_parser("fan", help="fan-level checks")
    fan_sub = fan_p.add_subparsers(dest="subcommand", required=True)
    check_p = fan_sub.add_parser("check", help="smoothness, validity, completeness")
    check_p.add_argument("path")
    _add_common(check_p, seed=True)
    check_p.set_defaults(func=_cmd_fan_check)

    bundle_p = sub.add_parser("bundle", help="bundle-data operations")
    bundle_sub = bundle_p.add_subparsers(dest="subcommand", required=True)

    validate_p = bundle_sub.add_parser("validate", help="extension-condition check")
    validate_p.add_argument("path")
    _add_common(validate_p)
    validate_p.set_defaults(func=_cmd_bundle_validate)

    fr_p = bundle_sub.add_parser(
        "from-rays",
        help="build bundle data from ray values (a ray-value file, or a fan file "
        "plus inline values, row-major by ray then block)",
    )
    fr_p.add_argument("fan_or_values")
    fr_p.add_argument("values", nargs="*")
    fr_p.add_argument("--blocks", type=int, default=1, help="block count for inline values")
    _add_common(fr_p, seed=True, output=True)
    fr_p.set_defaults(func=_cmd_bundle_from_rays)

    tr_p = bundle_sub.add_parser("to-rays", help="recover ray values from bundle data")
    tr_p.add_argument("path")
    _add_common(tr_p, output=True)
    tr_p.set_defaults(func=_cmd_bundle_to_rays)

    isom_p = bundle_sub.add_parser("isom", help="isomorphism test for two bundle files")
    isom_p.add_argument("path_a")
    isom_p.add_argument("path_b")
    _add_common(isom_p)
    isom_p.set_defaults(func=_cmd_bundle_isom)

    coc_p = bundle_sub.add_parser("cocycle", help="emit and verify the transition cocycle")
    coc_p.add_argument("path")
    _add_common(coc_p, output=True)
    coc_p.set_defaults(func=_cmd_bundle_cocycle)

    classify_p = sub.add_parser("classify", help="rank of the class group on a complete fan")
    classify_p.add_argument("fan")
    classify_p.add_argument("blocks", type=int)
    _add_common(classify_p, seed=True)
    classify_p.set_defaults(func=_cmd_classify)

    rep_p = sub.add_parser("rep", help="matrix-homomorphism operations")
    rep_sub = rep_p.add_subparsers(dest="subcommand", required=True)
    split_p = rep_sub.add_parser(
        "split", help="diagonalize homomorphisms; with --fan, emit bundle data"
    )
    split_p.add_argument("path")
    split_p.add_argument("--fan", default=None)
    split_p.add_argument("--blocks", default=None, help="comma-separated block sizes")
    _add_common(split_p, output=True)
    split_p.set_defaults(func=_cmd_rep_split)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FileFormatError, OSError) as exc:
        report = Report(status="error", summary=str(exc))
        if args.format == "machine":
            print(json.dumps(report.to_json(), indent=2))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return report.exit_code
    except ValueError as exc:
        report = Report(status="fail", summary=str(exc))
        if args.format == "machine":
            print(json.dumps(report.to_json(), indent=2))
        else:
            print(f"failed: {exc}", file=sys.stderr)
        return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
