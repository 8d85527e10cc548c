"""Command-line surface: generate, transform, inspect and verify maps.

Every verb that takes a flag file accepts ``-`` for stdin, so verbs
compose in pipelines (``mapforge gen cube | mapforge medial | mapforge
info -``).  Reports are ``key=value`` lines unless ``--json`` is given.
Exit codes: 0 success, 1 property or precondition failure, 2 parse or
validation failure on input files.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from collections import Counter

import numpy as np

from .coloring import ColorSet, ColoringGroup, coloring_group, direct_pso, find_coloring
from .construct import (
    build_map_with_group,
    connected_sum,
    double_edge,
    edge_of,
    subdivide_edge,
    triple_edge,
)
from .corpus import (
    CorpusSpec,
    PROPERTY_CHECKS,
    invoke_generator,
    run_verify,
)
from .doubles import i_double, quotient, recognize_i_double
from .errors import (
    BadParameters,
    FlagFileError,
    MapforgeError,
    ValidationError,
    VertexBipartite,
)
from .fileio import parse_flag_text, read_flag_file, write_flag_text
from .flagsys import (
    FlagSystem,
    cells,
    euler_characteristic,
    is_isomorphic,
    surface_signature,
    SurfaceSignature,
)
from .operators import dual, medial, opposite, petrie


def _read_system(path: str) -> FlagSystem:
    if path == "-":
        return parse_flag_text(sys.stdin.read())
    return read_flag_file(path)


def _write_system(system: FlagSystem, path: str | None) -> None:
    text = write_flag_text(system)
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _report(args, pairs) -> None:
    if getattr(args, "json", False):
        print(json.dumps(dict(pairs)))
    else:
        for key, value in pairs:
            if isinstance(value, bool):
                value = "true" if value else "false"
            print(f"{key}={value}")


def _sidecar_lines(args, lines) -> None:
    path = getattr(args, "sidecar", None)
    if path is None or path == "-":
        for line in lines:
            print(line, file=sys.stderr)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")


def _ints_line(values) -> str:
    return " ".join(str(int(v)) for v in values)


def _color_set(text: str, rank: int) -> ColorSet:
    return ColorSet.parse(text, rank)


def _degree_summary(cell_list) -> str:
    counts = Counter(c.degree for c in cell_list)
    return ",".join(f"{d}:{n}" for d, n in sorted(counts.items()))


# --- verbs -----------------------------------------------------------


def cmd_validate(args) -> int:
    system = _read_system(args.file)
    _report(args, [("ok", True), ("rank", system.rank), ("flags", system.flag_count)])
    return 0


def cmd_info(args) -> int:
    system = _read_system(args.file)
    group = coloring_group(system)
    if system.rank != 2:
        pairs = [("rank", system.rank), ("flags", system.flag_count)]
        pairs += [(f"cells{i}", len(cells(system, i))) for i in range(system.rank + 1)]
        pairs.append(("T", str(group)))
        _report(args, pairs)
        return 0
    vertices = cells(system, 0)
    edges = cells(system, 1)
    faces = cells(system, 2)
    chi = euler_characteristic(system)
    signature = surface_signature(system)
    if args.json:
        print(json.dumps({
            "rank": 2, "flags": system.flag_count,
            "V": len(vertices), "E": len(edges), "F": len(faces),
            "chi": chi, "surface": str(signature), "T": str(group),
            "vertex_degrees": _degree_summary(vertices),
            "face_degrees": _degree_summary(faces),
        }))
        return 0
    print("rank=2")
    print(f"flags={system.flag_count}")
    print(f"V={len(vertices)} E={len(edges)} F={len(faces)} "
          f"chi={chi} surface={signature} T={group}")
    print(f"vertex_degrees={_degree_summary(vertices)}")
    print(f"face_degrees={_degree_summary(faces)}")
    return 0


def cmd_color(args) -> int:
    system = _read_system(args.file)
    witness = find_coloring(system, _color_set(args.set, system.rank))
    if witness is None:
        _report(args, [("colorable", False)])
        return 1
    line = "".join(str(int(b)) for b in witness.assignment)
    if args.json:
        print(json.dumps({"colorable": True, "assignment": line}))
    else:
        print(line)
    return 0


def cmd_tgroup(args) -> int:
    system = _read_system(args.file)
    group = coloring_group(system)
    _report(args, [("T", str(group)), ("size", len(group.masks))])
    return 0


def cmd_pso(args) -> int:
    system = _read_system(args.file)
    witness = direct_pso(system, args.kind)
    if witness is None:
        _report(args, [("pseudo_orientable", False), ("kind", args.kind)])
        return 1
    arrows = "".join("+" if not b else "-" for b in witness.arrows)
    _report(args, [("pseudo_orientable", True), ("kind", args.kind),
                   ("cell_dimension", witness.cell_dimension), ("arrows", arrows)])
    return 0


def _transform(op):
    def cmd(args) -> int:
        _write_system(op(_read_system(args.file)), args.output)
        return 0
    return cmd


def cmd_double(args) -> int:
    system = _read_system(args.file)
    result = i_double(system, _color_set(args.set, system.rank))
    _write_system(result.system, args.output)
    _sidecar_lines(args, [
        f"split: {'true' if result.split else 'false'}",
        f"projection: {_ints_line(result.projection)}",
    ])
    return 0


def cmd_sherk(args) -> int:
    system = _read_system(args.file)
    result = i_double(system, ColorSet.of((0,), system.rank))
    if result.split:
        raise VertexBipartite()
    _write_system(result.system, args.output)
    _sidecar_lines(args, [
        "split: false",
        f"projection: {_ints_line(result.projection)}",
    ])
    return 0


def cmd_recognize_double(args) -> int:
    system = _read_system(args.file)
    found = recognize_i_double(system, _color_set(args.set, system.rank))
    if found is None:
        _sidecar_lines(args, ["found: false"])
        return 1
    deck, base, projection = found
    _write_system(base, args.output)
    _sidecar_lines(args, [
        "found: true",
        f"deck: {_ints_line(deck)}",
        f"projection: {_ints_line(projection)}",
    ])
    return 0


def cmd_quotient(args) -> int:
    system = _read_system(args.file)
    if args.u is not None:
        tokens = args.u.replace(",", " ").split()
    elif args.u_file is not None:
        try:
            with open(args.u_file, "r", encoding="utf-8") as fh:
                tokens = fh.read().split()
        except OSError as exc:
            raise BadParameters(f"cannot read {args.u_file}: {exc.strerror}") from None
    else:
        raise BadParameters("quotient needs --u or --u-file")
    try:
        deck = np.array([int(t) for t in tokens], dtype=np.intp)
    except ValueError:
        raise BadParameters("deck permutation must be a list of integers") from None
    base, projection = quotient(system, deck)
    _write_system(base, args.output)
    _sidecar_lines(args, [f"projection: {_ints_line(projection)}"])
    return 0


def cmd_sum(args) -> int:
    first = _read_system(args.file_a)
    second = _read_system(args.file_b)
    try:
        flag_a, flag_b = (int(t) for t in args.flags.split(","))
    except ValueError:
        raise BadParameters("--flags takes two comma-separated integers") from None
    _write_system(connected_sum(first, second, flag_a, flag_b), args.output)
    return 0


def _surgery(op):
    def cmd(args) -> int:
        system = _read_system(args.file)
        _write_system(op(system, edge_of(system, args.edge)), args.output)
        return 0
    return cmd


def cmd_gen(args) -> int:
    _write_system(invoke_generator(" ".join([args.name] + args.params)), args.output)
    return 0


def cmd_build_group(args) -> int:
    group = ColoringGroup.parse(args.group, 2)
    surface = SurfaceSignature.parse(args.surface)
    _write_system(build_map_with_group(group, surface), args.output)
    return 0


def cmd_iso(args) -> int:
    mapping = is_isomorphic(_read_system(args.file_a), _read_system(args.file_b))
    if mapping is None:
        _report(args, [("isomorphic", False)])
        return 1
    _report(args, [("isomorphic", True), ("mapping", _ints_line(mapping))])
    return 0


def cmd_verify(args) -> int:
    if args.corpus is not None:
        try:
            with open(args.corpus, "r", encoding="utf-8") as fh:
                spec = CorpusSpec.from_json(fh.read())
        except (OSError, BadParameters) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    else:
        spec = CorpusSpec()
    env_seed = os.environ.get("MAPFORGE_SEED")
    if env_seed is not None:
        spec = dataclasses.replace(spec, seed=int(env_seed))
    if args.seed is not None:
        spec = dataclasses.replace(spec, seed=args.seed)
    if args.operations is not None:
        spec = dataclasses.replace(
            spec, operations=tuple(args.operations.split(",")))
    try:
        ok = run_verify(spec, workers=args.workers, dump_dir=args.dump)
    except ValidationError as exc:
        print(f"FAIL corpus generation: {exc}")
        return 1
    return 0 if ok else 1


# --- parser ----------------------------------------------------------


def _add_io(sub, output=True):
    sub.add_argument("file", help="flag file, or - for stdin")
    if output:
        sub.add_argument("-o", "--output", default="-",
                         help="output flag file (default stdout)")


def _add_json(sub):
    sub.add_argument("--json", action="store_true",
                     help="machine-readable report")


def _add_sidecar(sub):
    sub.add_argument("--sidecar", default=None,
                     help="write the sidecar report to this file instead of stderr")


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mapforge",
        description="Flag-system toolkit: maps, colorings, doubles, surgery.")
    verbs = parser.add_subparsers(dest="verb", required=True)

    sub = verbs.add_parser("validate", help="check a flag file against the axioms")
    _add_io(sub, output=False)
    _add_json(sub)
    sub.set_defaults(func=cmd_validate)

    sub = verbs.add_parser("info", help="cell counts, surface, coloring group")
    _add_io(sub, output=False)
    _add_json(sub)
    sub.set_defaults(func=cmd_info)

    sub = verbs.add_parser("color", help="find an I-coloring")
    _add_io(sub, output=False)
    sub.add_argument("-I", dest="set", required=True,
                     help="color set, e.g. 02 or e")
    _add_json(sub)
    sub.set_defaults(func=cmd_color)

    sub = verbs.add_parser("tgroup", help="compute the coloring group")
    _add_io(sub, output=False)
    _add_json(sub)
    sub.set_defaults(func=cmd_tgroup)

    sub = verbs.add_parser("pso", help="direct pseudo-orientation oracle")
    _add_io(sub, output=False)
    sub.add_argument("--kind", required=True,
                     choices=("full", "face", "vertex", "edge"))
    _add_json(sub)
    sub.set_defaults(func=cmd_pso)

    for name, op in (("dual", dual), ("petrie", petrie),
                     ("opp", opposite), ("medial", medial)):
        sub = verbs.add_parser(name, help=f"apply the {name} operator")
        _add_io(sub)
        sub.set_defaults(func=_transform(op))

    sub = verbs.add_parser("double", help="two-sheet cover flipping across I")
    _add_io(sub)
    sub.add_argument("-I", dest="set", required=True)
    _add_sidecar(sub)
    sub.set_defaults(func=cmd_double)

    sub = verbs.add_parser("sherk", help="vertex double of a non-vertex-bipartite map")
    _add_io(sub)
    _add_sidecar(sub)
    sub.set_defaults(func=cmd_sherk)

    sub = verbs.add_parser("recognize-double",
                           help="find a base whose I-double this map is")
    _add_io(sub)
    sub.add_argument("-I", dest="set", required=True)
    _add_sidecar(sub)
    sub.set_defaults(func=cmd_recognize_double)

    sub = verbs.add_parser("quotient", help="quotient by a deck involution")
    _add_io(sub)
    sub.add_argument("--u", default=None,
                     help="deck permutation as whitespace/comma separated flags")
    sub.add_argument("--u-file", default=None,
                     help="file holding the deck permutation")
    _add_sidecar(sub)
    sub.set_defaults(func=cmd_quotient)

    sub = verbs.add_parser("sum", help="connected sum along same-degree faces")
    sub.add_argument("file_a")
    sub.add_argument("file_b")
    sub.add_argument("--flags", required=True,
                     help="fA,fB: one flag on the chosen face of each map")
    sub.add_argument("-o", "--output", default="-")
    sub.set_defaults(func=cmd_sum)

    for name, op in (("subdivide", subdivide_edge),
                     ("double-edge", double_edge),
                     ("triple-edge", triple_edge)):
        sub = verbs.add_parser(name, help=f"{name.replace('-', ' ')} surgery")
        _add_io(sub)
        sub.add_argument("--edge", type=int, required=True,
                         help="any flag on the target edge")
        sub.set_defaults(func=_surgery(op))

    sub = verbs.add_parser("gen", help="generate a named map")
    sub.add_argument("name")
    sub.add_argument("params", nargs="*", help="generator parameters")
    sub.add_argument("-o", "--output", default="-")
    sub.set_defaults(func=cmd_gen)

    sub = verbs.add_parser("build-group",
                           help="realize a coloring group on a surface")
    sub.add_argument("--group", required=True, help="e.g. e,0,12,012")
    sub.add_argument("--surface", required=True, help="o<g> or n<k>")
    sub.add_argument("-o", "--output", default="-")
    sub.set_defaults(func=cmd_build_group)

    sub = verbs.add_parser("iso", help="test two flag files for isomorphism")
    sub.add_argument("file_a")
    sub.add_argument("file_b")
    _add_json(sub)
    sub.set_defaults(func=cmd_iso)

    sub = verbs.add_parser("verify", help="run property checks over a corpus")
    sub.add_argument("--corpus", default=None, help="corpus spec JSON file")
    sub.add_argument("--seed", type=int, default=None)
    sub.add_argument("--workers", type=int, default=None)
    sub.add_argument("--operations", default=None,
                     help="comma-separated check ids (default: all)")
    sub.add_argument("--dump", default=None,
                     help="directory for flag files of failing cells")
    sub.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        code = args.func(args)
        sys.stdout.flush()
        return code
    except MapforgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if isinstance(exc, (FlagFileError, ValidationError)):
            return 2
        return 1
    except BrokenPipeError:
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 0


if __name__ == "__main__":
    sys.exit(main())
