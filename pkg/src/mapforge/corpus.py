"""Reproducible map corpus and the property-check registry.

The verify harness generates a deterministic family of maps from a
CorpusSpec, runs every requested check on every map, and reports
pass/fail counts per check.  Checks are pure functions of a map plus a
seeded generator, so independent (map, check) cells can be farmed out
to worker processes; output order is fixed by cell index either way.
"""

from __future__ import annotations

import concurrent.futures
import dataclasses
import json
import os
import re

import numpy as np

from .coloring import (
    PSO_KINDS,
    ColorSet,
    coloring_group,
    direct_pso,
    find_coloring,
    i_face_bipartite,
    is_pseudo_orientable,
    is_valid_coloring,
    subgroup_closure,
)
from .construct import (
    crosscap_map,
    cube_maniplex,
    double_edge,
    edge_of,
    grid_map,
    make_property,
    platonic,
    polygon_gluing,
    strip_map,
    subdivide_edge,
    tri_torus,
    triple_edge,
    MAKE_GOALS,
    PLATONIC_NAMES,
)
from .doubles import i_double, recognize_i_double
from .errors import (
    BadParameters,
    LoopEdge,
    MapforgeError,
    UnknownName,
    ValidationError,
)
from .fileio import parse_flag_text, read_flag_file, write_flag_file, write_flag_text
from .flagsys import (
    FlagSystem,
    cells,
    check_projection,
    euler_characteristic,
    is_isomorphic,
    surface_signature,
    validate,
)
from .operators import (
    dual,
    dual_color_set,
    medial,
    opposite,
    opposite_color_set,
    petrie,
    petrie_color_set,
)

DEFAULT_SEED = 1729

DEFAULT_GENERATORS = (
    "tetrahedron",
    "cube",
    "octahedron",
    "dodecahedron",
    "icosahedron",
    "polygon aA",
    "polygon aa",
    "polygon abAB",
    "polygon abABcdCD",
    "polygon aabb",
    "polygon abcaCB",
    "polygon aabcBC",
    "polygon aabbcc",
    "crosscap 1",
    "crosscap 2",
    "crosscap 3",
    "crosscap 4",
    "tri-torus 2 2",
    "tri-torus 2 3",
    "tri-torus 3 3",
    "grid 3 3 0",
    "grid 5 7 3",
    "grid 3 5 1",
    "strip 1 0",
    "strip 2 1 0",
    "cube-maniplex 3",
    "cube-maniplex 4",
)


def invoke_generator(text: str) -> FlagSystem:
    """Build a map from a one-line invocation such as ``grid 5 7 3``."""
    tokens = text.split()
    if not tokens:
        raise BadParameters("empty generator invocation")
    name, args = tokens[0], tokens[1:]

    def ints(count):
        if len(args) != count:
            raise BadParameters(f"{name} takes {count} argument(s), got {len(args)}")
        try:
            return [int(a) for a in args]
        except ValueError:
            raise BadParameters(f"{name}: arguments must be integers: {args}") from None

    if name in PLATONIC_NAMES:
        ints(0)
        return platonic(name)
    if name == "tri-torus":
        m, n = ints(2)
        return tri_torus(m, n)
    if name == "grid":
        m, n, k = ints(3)
        return grid_map(m, n, k)
    if name == "strip":
        if len(args) < 2:
            raise BadParameters("strip takes h and parity, then optional swap rows")
        try:
            nums = [int(a) for a in args]
        except ValueError:
            raise BadParameters(f"strip: arguments must be integers: {args}") from None
        return strip_map(nums[0], nums[2:], nums[1])
    if name == "polygon":
        if len(args) != 1:
            raise BadParameters("polygon takes one gluing word")
        return polygon_gluing(args[0])
    if name == "crosscap":
        return crosscap_map(ints(1)[0])
    if name == "cube-maniplex":
        return cube_maniplex(ints(1)[0])
    if name == "file":
        if len(args) != 1:
            raise BadParameters("file takes one path")
        return read_flag_file(args[0])
    options = tuple(PLATONIC_NAMES) + (
        "tri-torus", "grid", "strip", "polygon", "crosscap", "cube-maniplex", "file")
    raise UnknownName(name, options)


GENERATOR_NAMES = tuple(PLATONIC_NAMES) + (
    "tri-torus", "grid", "strip", "polygon", "crosscap", "cube-maniplex")


def random_surgery(system: FlagSystem, rng: np.random.Generator) -> FlagSystem:
    """One surgery at a random edge.  Preserves the underlying surface."""
    flag = int(rng.integers(system.flag_count))
    op = int(rng.integers(3))
    try:
        if op == 0:
            return double_edge(system, edge_of(system, flag))
        if op == 1:
            return triple_edge(system, edge_of(system, flag))
    except LoopEdge:
        pass
    return subdivide_edge(system, edge_of(system, flag))


@dataclasses.dataclass(frozen=True)
class CorpusSpec:
    """What to generate and which checks to run over it."""

    seed: int = DEFAULT_SEED
    generators: tuple[str, ...] = DEFAULT_GENERATORS
    surgery_depth: int = 3
    operations: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "operations", tuple(self.operations))
        for op in self.operations:
            if op not in PROPERTY_CHECKS:
                raise UnknownName(op, tuple(PROPERTY_CHECKS))

    def check_ids(self) -> tuple[str, ...]:
        return self.operations or tuple(PROPERTY_CHECKS)

    @classmethod
    def from_json(cls, text: str) -> "CorpusSpec":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise BadParameters(f"corpus file is not valid JSON: {exc}") from None
        if not isinstance(data, dict):
            raise BadParameters("corpus file must hold a JSON object")
        known = {"seed", "generators", "surgery_depth", "operations"}
        stray = sorted(set(data) - known)
        if stray:
            raise BadParameters(f"unknown corpus fields: {', '.join(stray)}")
        kwargs = {}
        if "seed" in data:
            kwargs["seed"] = int(data["seed"])
        if "surgery_depth" in data:
            kwargs["surgery_depth"] = int(data["surgery_depth"])
        for key in ("generators", "operations"):
            if key in data:
                value = data[key]
                if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
                    raise BadParameters(f"{key} must be a list of strings")
                kwargs[key] = tuple(value)
        return cls(**kwargs)


def build_corpus(spec: CorpusSpec) -> list[tuple[str, FlagSystem]]:
    """Generate the corpus: each base map plus one surgeried variant."""
    rng = np.random.default_rng(spec.seed)
    out = []
    for text in spec.generators:
        system = invoke_generator(text)
        out.append((text, system))
        if spec.surgery_depth > 0 and system.rank == 2:
            varied = system
            for _ in range(spec.surgery_depth):
                varied = random_surgery(varied, rng)
            out.append((f"{text} +{spec.surgery_depth}s", varied))
    return out


# --- property checks -------------------------------------------------
#
# Each check takes (system, rng) and returns None on success or a short
# failure description.  The registry key is the identifier the CLI and
# CorpusSpec.operations refer to.


def _all_color_sets(rank):
    return [ColorSet(rank, m) for m in range(1 << (rank + 1))]


def _check_axioms(system, rng):
    try:
        validate(system.rank, system.flag_count, system.connections)
    except ValidationError as exc:
        return str(exc)
    return None


def _check_roundtrip(system, rng):
    back = parse_flag_text(write_flag_text(system))
    if back != system:
        return "write/parse round-trip changed the arrays"
    return None


def _check_tgroup(system, rng):
    group = coloring_group(system)
    size = len(group.masks)
    if size & (size - 1):
        return f"group size {size} is not a power of two"
    for member in group.members:
        witness = find_coloring(system, member)
        if witness is None:
            return f"member {member} has no coloring"
        if not is_valid_coloring(system, member, witness.assignment):
            return f"witness for {member} is not a valid coloring"
    return None


def _check_bridges(system, rng):
    for i in range(system.rank + 1):
        colorable = find_coloring(system, ColorSet.of((i,), system.rank)) is not None
        bipartite = i_face_bipartite(system, i)
        if colorable != bipartite:
            return f"i={i}: colorable={colorable} but cell bipartiteness={bipartite}"
    return None


def _check_pso_oracle(system, rng):
    if system.rank != 2:
        return None
    for kind, (dim, _inner, _crossing, _flip) in PSO_KINDS.items():
        inner = {"full": (), "face": (2,), "vertex": (0,), "edge": (1,)}[kind]
        complement = ColorSet.full(2) ^ ColorSet.of(inner, 2)
        want = find_coloring(system, complement) is not None
        witness = direct_pso(system, kind)
        if (witness is not None) != want:
            return f"{kind}: arrows={'yes' if witness else 'no'} coloring={want}"
        if is_pseudo_orientable(system, inner) != want:
            return f"{kind}: is_pseudo_orientable disagrees with colorability"
        if witness is not None and len(witness.arrows) != len(cells(system, dim)):
            return f"{kind}: arrow count differs from cell count"
    return None


_NEEDS_EVEN_FACES = ((0,), (1,), (0, 2), (1, 2))
_NEEDS_EVEN_VERTICES = ((1,), (2,), (0, 1), (0, 2))


def _check_parity_necessity(system, rng):
    if system.rank != 2:
        return None
    group = coloring_group(system)
    odd_face = any(c.degree % 2 for c in cells(system, 2))
    odd_vertex = any(c.degree % 2 for c in cells(system, 0))
    if odd_face:
        for indices in _NEEDS_EVEN_FACES:
            member = ColorSet.of(indices, 2)
            if member in group:
                return f"{member} present despite an odd face"
    if odd_vertex:
        for indices in _NEEDS_EVEN_VERTICES:
            member = ColorSet.of(indices, 2)
            if member in group:
                return f"{member} present despite an odd vertex"
    return None


def _check_involutions(system, rng):
    if dual(dual(system)) != system:
        return "dual applied twice is not the identity"
    if system.rank >= 2:
        if opposite(opposite(system)) != system:
            return "opposite applied twice is not the identity"
        if petrie(petrie(system)) != system:
            return "petrie applied twice is not the identity"
    return None


def _check_transfers(system, rng):
    group = coloring_group(system)
    dual_group = coloring_group(dual(system))
    for member in _all_color_sets(system.rank):
        if (member in group) != (dual_color_set(member) in dual_group):
            return f"dual transfer fails at {member}"
    if system.rank != 2:
        return None
    opp_group = coloring_group(opposite(system))
    pet_group = coloring_group(petrie(system))
    for member in _all_color_sets(2):
        if (member in group) != (opposite_color_set(member) in opp_group):
            return f"opposite transfer fails at {member}"
        if (member in group) != (petrie_color_set(member) in pet_group):
            return f"petrie transfer fails at {member}"
    full = ColorSet.full(2)
    has_all = len(group.masks) == 8
    all_orientable = (
        full in group and full in opp_group and full in pet_group)
    if has_all != all_orientable:
        return ("full power-set group should hold exactly when the map, "
                "its opposite and its petrie are all orientable")
    return None


_MEDIAL_TABLE = (((1,), (0,)), ((0, 2), (1,)), ((0, 1, 2), (0, 1, 2)))


def _check_medial_table(system, rng):
    if system.rank != 2:
        return None
    med = medial(system)
    group = coloring_group(system)
    med_group = coloring_group(med)
    if find_coloring(med, ColorSet.of((2,), 2)) is None:
        return "medial is not face-bipartite"
    for src, dst in _MEDIAL_TABLE:
        if (ColorSet.of(src, 2) in group) != (ColorSet.of(dst, 2) in med_group):
            return f"medial table row {src} -> {dst} fails"
    if euler_characteristic(med) != euler_characteristic(system):
        return "medial changed the Euler characteristic"
    if len(cells(med, 0)) != len(cells(system, 1)):
        return "medial vertex count differs from edge count"
    return None


def _check_dubgp(system, rng):
    group = coloring_group(system)
    for member in _all_color_sets(system.rank):
        grown = coloring_group(i_double(system, member).system)
        want = subgroup_closure(system.rank, list(group.masks) + [member.mask])
        if grown.masks != want.masks:
            return f"double by {member}: group {grown} != closure {want}"
    return None


def _check_double_split(system, rng):
    group = coloring_group(system)
    for member in _all_color_sets(system.rank):
        result = i_double(system, member)
        if result.split != (member in group):
            return f"split flag wrong for {member}"
        ok, _ = check_projection(result.system, system, result.projection)
        if not ok:
            return f"projection is not a covering for {member}"
        if result.split and result.system.flag_count != system.flag_count:
            return f"split double by {member} kept the wrong component"
    return None


def _check_shift(system, rng):
    group = coloring_group(system)
    nontrivial = [m for m in group.members if m.mask]
    if not nontrivial:
        return None
    shift_by = nontrivial[int(rng.integers(len(nontrivial)))]
    member = _all_color_sets(system.rank)[
        int(rng.integers(1 << (system.rank + 1)))]
    left = i_double(system, member).system
    right = i_double(system, member ^ shift_by).system
    if is_isomorphic(left, right) is None:
        return f"doubles by {member} and {member ^ shift_by} are not isomorphic"
    return None


def _check_saturation(system, rng):
    grown = system
    for i in range(system.rank, -1, -1):
        grown = i_double(grown, ColorSet.of((i,), system.rank)).system
    if len(coloring_group(grown).masks) != 1 << (system.rank + 1):
        return "chain of singleton doubles did not reach the full power set"
    return None


def _check_minimality(system, rng):
    group = coloring_group(system)
    outside = [m for m in _all_color_sets(system.rank) if m not in group]
    if not outside:
        return None
    member = outside[int(rng.integers(len(outside)))]
    double = i_double(system, member)
    shift_by = _all_color_sets(system.rank)[
        int(rng.integers(1 << (system.rank + 1)))]
    redouble = i_double(double.system, shift_by)
    composite = double.projection[redouble.projection]
    witness = find_coloring(redouble.system, member)
    if witness is None:
        return "iterated double lost the original colorability"
    bits = witness.assignment.astype(np.intp)
    for sheet in (bits, 1 - bits):
        ok, _ = check_projection(
            redouble.system, double.system, 2 * composite + sheet)
        if ok:
            return None
    return "no sheet assignment projects the iterated double onto the double"


def _check_recognition(system, rng):
    group = coloring_group(system)
    outside = [m for m in _all_color_sets(system.rank) if m not in group]
    if not outside:
        return None
    member = outside[int(rng.integers(len(outside)))]
    cover = i_double(system, member).system
    found = recognize_i_double(cover, member)
    if found is None:
        return f"failed to recognize the {member}-double"
    _, base, projection = found
    if is_isomorphic(base, system) is None:
        return f"recognized base of the {member}-double is not isomorphic"
    ok, _ = check_projection(cover, base, projection)
    if not ok:
        return "recognized projection is not a covering"
    return None


def _check_surgery_chi(system, rng):
    if system.rank != 2:
        return None
    signature = surface_signature(system)
    flag = int(rng.integers(system.flag_count))
    edge = edge_of(system, flag)
    for name, op, added in (("subdivide", subdivide_edge, 4),
                            ("double", double_edge, 4),
                            ("triple", triple_edge, 8)):
        try:
            grown = op(system, edge)
        except LoopEdge:
            if name != "triple":
                return f"{name} refused a valid edge"
            continue
        if grown.flag_count != system.flag_count + added:
            return f"{name} added {grown.flag_count - system.flag_count} flags"
        if surface_signature(grown) != signature:
            return f"{name} changed the surface"
    return None


_GOAL_HOLDS = {
    "vertex_bipartite": lambda s: i_face_bipartite(s, 0),
    "face_bipartite": lambda s: i_face_bipartite(s, 2),
    "vpso": lambda s: direct_pso(s, "vertex") is not None,
    "fpso": lambda s: direct_pso(s, "face") is not None,
    "odd_face": lambda s: any(c.degree % 2 for c in cells(s, 2)),
    "odd_vertex": lambda s: any(c.degree % 2 for c in cells(s, 0)),
}


def _check_make_property(system, rng):
    if system.rank != 2:
        return None
    signature = surface_signature(system)
    for goal in MAKE_GOALS:
        grown = make_property(system, goal)
        if not _GOAL_HOLDS[goal](grown):
            return f"make_property({goal}) postcondition fails"
        if surface_signature(grown) != signature:
            return f"make_property({goal}) changed the surface"
    return None


def _check_relabel(system, rng):
    perm = rng.permutation(system.flag_count)
    inverse = np.empty_like(perm)
    inverse[perm] = np.arange(system.flag_count)
    shuffled = validate(
        system.rank, system.flag_count,
        [perm[conn[inverse]] for conn in system.connections])
    if is_isomorphic(system, shuffled) is None:
        return "relabeled copy not recognized as isomorphic"
    return None


PROPERTY_CHECKS = {
    "axioms": _check_axioms,
    "roundtrip": _check_roundtrip,
    "tgroup": _check_tgroup,
    "bridges": _check_bridges,
    "pso-oracle": _check_pso_oracle,
    "parity-necessity": _check_parity_necessity,
    "involutions": _check_involutions,
    "transfers": _check_transfers,
    "medial-table": _check_medial_table,
    "dubgp": _check_dubgp,
    "double-split": _check_double_split,
    "shift": _check_shift,
    "saturation": _check_saturation,
    "minimality": _check_minimality,
    "recognition": _check_recognition,
    "surgery-chi": _check_surgery_chi,
    "make-property": _check_make_property,
    "relabel": _check_relabel,
}


# --- runner ----------------------------------------------------------


def _run_cell(seed, index, system, check_id):
    rng = np.random.default_rng((seed, index))
    try:
        return PROPERTY_CHECKS[check_id](system, rng)
    except MapforgeError as exc:
        return f"{type(exc).__name__}: {exc}"


def _cell_worker(args):
    seed, index, system, check_id = args
    return index, _run_cell(seed, index, system, check_id)


def run_verify(spec: CorpusSpec, workers: int | None = None,
               dump_dir: str | None = None, emit=print) -> bool:
    """Run the harness; emit report lines; return True iff all cells pass.

    Cells are laid out map-major: all checks for corpus map 0, then map 1,
    and so on.  With workers > 1 the cells run in a process pool, but the
    report is still emitted in cell-index order.
    """
    corpus = build_corpus(spec)
    ids = spec.check_ids()
    cells_ = [(spec.seed, mi * len(ids) + ci, system, check_id)
              for mi, (_, system) in enumerate(corpus)
              for ci, check_id in enumerate(ids)]

    if workers is not None and workers > 1:
        details: list[str | None] = [None] * len(cells_)
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            for index, detail in pool.map(_cell_worker, cells_, chunksize=4):
                details[index] = detail
    else:
        details = [_run_cell(*cell) for cell in cells_]

    failures = 0
    for index, detail in enumerate(details):
        if detail is None:
            continue
        failures += 1
        map_name = corpus[index // len(ids)][0]
        check_id = ids[index % len(ids)]
        emit(f"FAIL {check_id} [{map_name}]: {detail}")
        if dump_dir is not None:
            os.makedirs(dump_dir, exist_ok=True)
            safe = re.sub(r"[^A-Za-z0-9_.-]+", "_", map_name)
            path = os.path.join(dump_dir, f"{index:04d}-{check_id}-{safe}.flags")
            write_flag_file(corpus[index // len(ids)][1], path)
            emit(f"  dumped {path}")
    for ci, check_id in enumerate(ids):
        column = details[ci::len(ids)]
        bad = sum(1 for d in column if d is not None)
        emit(f"{check_id} pass={len(column) - bad} fail={bad}")
    emit(f"maps={len(corpus)} cells={len(cells_)} failures={failures}")
    return failures == 0
