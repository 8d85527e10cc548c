import functools

import numpy as np

from mapforge import (
    ColorSet,
    CorpusSpec,
    PROPERTY_CHECKS,
    SurfaceSignature,
    all_subgroups,
    build_corpus,
    build_map_with_group,
    cells,
    check_projection,
    coloring_group,
    coloring_group_excluding_cell,
    connected_sum,
    crosscap_map,
    cube_maniplex,
    find_coloring,
    grid_map,
    i_double,
    is_isomorphic,
    is_valid_coloring,
    platonic,
    polygon_gluing,
    random_surgery,
    recognize_i_double,
    sherk_double,
    subgroup_closure,
    surface_signature,
    tri_torus,
)
from mapforge.errors import ExceptionalPair, OrientabilityMismatch


@functools.lru_cache(maxsize=1)
def corpus():
    return build_corpus(CorpusSpec())


def run_check(check_id, system, salt=0):
    rng = np.random.default_rng((1729, salt))
    return PROPERTY_CHECKS[check_id](system, rng)


def test_criterion_01_cube_group_and_witnesses(criterion):
    with criterion(1, "cube coloring group with three colorings", 1):
        cube = platonic("cube")
        group = coloring_group(cube)
        assert str(group) == "e,0,12,012"
        for member in group.members:
            if not member.mask:
                continue
            witness = find_coloring(cube, member)
            assert witness is not None
            assert is_valid_coloring(cube, member, witness.assignment)
            assert witness.assignment.any()


def test_criterion_02_twisted_grid(criterion):
    with criterion(2, "5x7 grid with three twists", 1):
        system = grid_map(5, 7, 3)
        assert len(cells(system, 0)) == 32
        assert len(cells(system, 1)) == 70
        assert len(cells(system, 2)) == 35
        assert surface_signature(system) == SurfaceSignature(False, 5)
        assert coloring_group(system).masks == frozenset({0, 2})


def test_criterion_03_hexagonal_vertex_doubles(criterion):
    with criterion(3, "vertex doubles of triangulated tori", 1):
        for m, n in ((2, 2), (2, 3), (3, 3)):
            d = m * n
            cover = sherk_double(tri_torus(m, n))
            assert len(cells(cover, 0)) == 2 * d
            assert len(cells(cover, 1)) == 6 * d
            assert len(cells(cover, 2)) == 2 * d
            assert all(f.degree == 6 for f in cells(cover, 2))
            signature = surface_signature(cover)
            assert signature.orientable
            assert signature.euler_characteristic == -2 * d
            assert signature.genus == d + 1


def test_criterion_04_equivalent_doubles_of_tetrahedron(criterion):
    with criterion(4, "shifted doubles of the tetrahedron coincide", 1):
        tetra = platonic("tetrahedron")
        by_02 = i_double(tetra, (0, 2)).system
        by_1 = i_double(tetra, (1,)).system
        assert is_isomorphic(by_02, by_1) is not None


def test_criterion_05_group_growth_across_corpus(criterion):
    with criterion(5, "double grows the group by one generator, corpus-wide", 30):
        maps = corpus()
        assert len(maps) >= 50
        for salt, (_, system) in enumerate(maps):
            assert run_check("dubgp", system, salt) is None


def test_criterion_06_saturation_across_corpus(criterion):
    with criterion(6, "iterated doubles reach the full group, corpus-wide", 30):
        for salt, (_, system) in enumerate(corpus()):
            assert run_check("saturation", system, salt) is None


def test_criterion_07_operator_transfers_across_corpus(criterion):
    with criterion(7, "operators transfer coloring groups, corpus-wide", 30):
        for salt, (_, system) in enumerate(corpus()):
            assert run_check("transfers", system, salt) is None
            assert run_check("medial-table", system, salt) is None


def test_criterion_08_arrow_oracle_across_corpus(criterion):
    with criterion(8, "direct arrow oracle matches colorability, corpus-wide", 30):
        for salt, (_, system) in enumerate(corpus()):
            assert run_check("pso-oracle", system, salt) is None


def test_criterion_09_realization_grid(criterion):
    with criterion(9, "every group appears on every compatible surface", 300):
        surfaces = [SurfaceSignature(False, g) for g in range(1, 7)] \
            + [SurfaceSignature(True, g) for g in range(4)]
        built = exceptional = 0
        for group in all_subgroups(2):
            for surface in surfaces:
                try:
                    system = build_map_with_group(group, surface)
                except ExceptionalPair:
                    exceptional += 1
                    continue
                except OrientabilityMismatch:
                    continue
                built += 1
                assert coloring_group(system).masks == group.masks
                assert surface_signature(system) == surface
        assert built == 83
        assert exceptional == 3


def test_criterion_10_exceptional_pairs_never_occur(criterion):
    with criterion(10, "forbidden group/surface pairs resist 2000 searches", 120):
        rng = np.random.default_rng(2026)
        sphere_seeds = [platonic(name) for name in
                        ("tetrahedron", "cube", "octahedron",
                         "dodecahedron", "icosahedron")]
        sphere_seeds.append(polygon_gluing("aA"))
        torus_group = frozenset({0, 2, 5, 7})
        for i in range(1000):
            system = sphere_seeds[i % len(sphere_seeds)]
            for _ in range(1 + i % 3):
                system = random_surgery(system, rng)
            assert surface_signature(system) == SurfaceSignature(True, 0)
            assert coloring_group(system).masks != torus_group

        forbidden = ({0, 2}, {0, 5})
        for i in range(1000):
            system = crosscap_map(1)
            for _ in range(1 + i % 4):
                system = random_surgery(system, rng)
            assert surface_signature(system) == SurfaceSignature(False, 1)
            assert set(coloring_group(system).masks) not in forbidden


def test_criterion_11_recognition_round_trips(criterion):
    with criterion(11, "doubles are recognized and projected back", 60):
        rng = np.random.default_rng(41)
        trips = 0
        for _, system in corpus():
            group = coloring_group(system)
            outside = [m for m in range(1 << (system.rank + 1))
                       if m not in group.masks]
            if not outside:
                continue
            member = ColorSet(system.rank,
                              outside[int(rng.integers(len(outside)))])
            cover = i_double(system, member).system
            found = recognize_i_double(cover, member)
            assert found is not None
            deck, base, projection = found
            assert is_isomorphic(base, system) is not None
            ok, sheets = check_projection(cover, base, projection)
            assert ok and sheets == 2
            n = cover.flag_count
            assert (deck[deck] == np.arange(n)).all()
            trips += 1
        assert trips >= 50


def test_criterion_12_four_dimensional_cube(criterion):
    with criterion(12, "4-cube flag system behaves at rank 3", 10):
        system = cube_maniplex(4)
        assert system.rank == 3
        assert system.flag_count == 384
        assert find_coloring(system, ColorSet.of((0,), 3)) is not None
        assert find_coloring(system, ColorSet.full(3)) is not None
        group = coloring_group(system)
        member = ColorSet.of((1,), 3)
        grown = coloring_group(i_double(system, member).system)
        assert grown.masks == subgroup_closure(
            3, list(group.masks) + [member.mask]).masks


def test_criterion_13_connected_sums_meet_groups(criterion):
    with criterion(13, "connected sums intersect coloring groups", 30):
        pool = [platonic(name) for name in
                ("tetrahedron", "cube", "octahedron",
                 "dodecahedron", "icosahedron")]
        pool += [grid_map(3, 3, 0), grid_map(3, 5, 1), grid_map(5, 7, 3),
                 tri_torus(2, 2), tri_torus(2, 3), tri_torus(3, 3)]

        def splice_face(system, degree=None):
            r2 = system.connections[2]
            group = coloring_group(system)
            for face in cells(system, 2):
                if degree is not None and face.degree != degree:
                    continue
                if any(int(r2[x]) in face.flags for x in face.flags):
                    continue
                if coloring_group_excluding_cell(system, face).masks \
                        == group.masks:
                    return face
            return None

        checked = 0
        for i, left in enumerate(pool):
            for right in pool[i:]:
                fa = splice_face(left)
                if fa is None:
                    continue
                fb = splice_face(right, fa.degree)
                if fb is None:
                    continue
                joined = connected_sum(left, right, fa.flags[0], fb.flags[0])
                want = frozenset(coloring_group(left).masks) \
                    & frozenset(coloring_group(right).masks)
                assert frozenset(coloring_group(joined).masks) == want
                checked += 1
        assert checked >= 20
