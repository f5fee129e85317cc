"""Acceptance suite.

One test per criterion; each prints a single PASS line on success (visible
with ``pytest -s``) and fails loudly otherwise. Tolerances are pinned in
the assertions: exact rational equality wherever the arithmetic is exact,
1e-8 maximum entry error for the double-precision schemes. Criteria with a
runtime budget are timed around their whole body.
"""
import itertools
import random
import time
from collections import deque
from fractions import Fraction

import numpy as np
import pytest

import schemelab as sl
from schemelab.cli import main as cli_main
from schemelab.poly import char_poly, poly_divides
from schemelab.ratmat import RationalMatrix

from conftest import PAIR_CELLS, PETERSEN_EDGES

RANDOM_SEED = 20250808


def _report(number: int, message: str) -> None:
    print(f"criterion {number}: PASS — {message}")


# -- shared catalog helpers --------------------------------------------------

def equitable_partition_catalog():
    """Every equitable partition named by the multiplicity-identity suite.

    Yields (scheme, spectral data, partition, description).
    """
    petersen = sl.named_scheme("petersen")
    hamming = sl.named_scheme("hamming", 3, 2)
    johnson4 = sl.named_scheme("johnson", 4, 2)
    johnson5 = sl.named_scheme("johnson", 5, 2)
    specs = {id(s): sl.spectral_data(s)
             for s in (petersen, hamming, johnson4, johnson5)}

    for label in petersen.labels:
        part, _ = sl.distance_partition(petersen, 1, [label])
        yield petersen, specs[id(petersen)], part, f"petersen vertex {label}"
    for a, b in PETERSEN_EDGES:
        part, _ = sl.distance_partition(petersen, 1, [a, b])
        yield petersen, specs[id(petersen)], part, f"petersen edge {a},{b}"

    antipodal = [["000", "111"], ["001", "110"], ["010", "101"], ["011", "100"]]
    yield (hamming, specs[id(hamming)],
           sl.make_partition(hamming, antipodal), "hamming(3,2) antipodal")

    for s, name in ((hamming, "hamming(3,2)"), (johnson4, "johnson(4,2)"),
                    (johnson5, "johnson(5,2)")):
        part, _ = sl.distance_partition(s, 1, [s.labels[0]])
        yield s, specs[id(s)], part, f"{name} vertex"

    for s, name in ((petersen, "petersen"), (hamming, "hamming(3,2)"),
                    (johnson4, "johnson(4,2)"), (johnson5, "johnson(5,2)")):
        yield s, specs[id(s)], sl.singleton_partition(s), f"{name} singletons"
        yield s, specs[id(s)], sl.one_cell_partition(s), f"{name} one cell"


def test_criterion_1_pair_partition_end_to_end():
    start = time.perf_counter()
    petersen = sl.from_distance_regular_graph(sl.petersen_graph())
    spec = sl.spectral_data(petersen)
    assert spec.mode == "exact"
    part = sl.make_partition(petersen, PAIR_CELLS)

    eq = sl.is_equitable(petersen, part)
    assert not eq.equitable
    w = eq.witness
    assert w.relation == 1
    assert {petersen.labels[w.vertex], petersen.labels[w.vertex_ref]} == {"2'", "1"}
    # w.r.t. C_4: the vertex 2' has one neighbour there, the vertex 1 none
    assert 3 in w.target_cells
    counts = {petersen.labels[w.vertex]: w.counts[3],
              petersen.labels[w.vertex_ref]: w.counts_ref[3]}
    assert counts == {"2'": 1, "1": 0}

    profile = sl.trace_profile(petersen, part)
    assert profile == (Fraction(5), Fraction(1), Fraction(4))
    godsil = sl.godsil_condition(petersen, spec, part)
    assert godsil.values == (Fraction(1), Fraction(2), Fraction(2))
    assert godsil.all_pass  # the condition accepts this non-equitable partition

    elapsed = time.perf_counter() - start
    assert elapsed < 1.0, f"took {elapsed:.3f}s, budget 1s"
    _report(1, f"pair partition: not equitable (witness 2' vs 1 w.r.t. C_4), "
               f"trace profile (5, 1, 4), projection values (1, 2, 2) "
               f"[{elapsed:.3f}s]")


def test_criterion_2_multiplicity_identity_suite():
    start = time.perf_counter()
    checked = 0
    for s, spec, part, desc in equitable_partition_catalog():
        eq = sl.is_equitable(s, part)
        assert eq.equitable, desc
        godsil = sl.godsil_condition(s, spec, part)
        subduced = sl.subduced_multiplicities(s, spec, part)
        for j in range(s.d + 1):
            value = godsil.values[j]
            assert value.denominator == 1 and int(value) == subduced[j], \
                f"{desc}: <F,E_{j}> = {value} but dim(W_{j} H) = {subduced[j]}"
        checked += 1
    elapsed = time.perf_counter() - start
    assert elapsed < 30.0, f"took {elapsed:.1f}s, budget 30s"
    _report(2, f"<F,E_j> = dim(W_j H) exactly on {checked} equitable "
               f"partitions [{elapsed:.2f}s]")


def test_criterion_3_duality_identities():
    exact_schemes = [sl.named_scheme("petersen"), sl.named_scheme("hamming", 3, 2),
                     sl.named_scheme("johnson", 4, 2), sl.named_scheme("johnson", 5, 2),
                     sl.named_scheme("hamming", 1, 4)]
    for s in exact_schemes:
        spec = sl.spectral_data(s)
        assert spec.mode == "exact"
        assert spec.p_matrix @ spec.q_matrix == s.v * RationalMatrix.identity(s.d + 1)
        for i in range(s.d + 1):
            for j in range(s.d + 1):
                assert spec.q_matrix[i][j] * s.valencies[i] == \
                    spec.p_matrix[j][i] * spec.multiplicities[j]
        total = RationalMatrix.zeros(s.v)
        for j, e in enumerate(spec.idempotents):
            total = total + e
            for k, other in enumerate(spec.idempotents):
                expected = e if j == k else RationalMatrix.zeros(s.v)
                assert e @ other == expected
        assert total == RationalMatrix.identity(s.v)

    worst = 0.0
    for s in (sl.named_scheme("cycle", 5), sl.named_scheme("cycle", 7)):
        spec = sl.spectral_data(s)
        assert spec.mode == "float"
        p, q = spec.p_matrix, spec.q_matrix
        worst = max(worst, float(np.abs(p @ q - s.v * np.eye(s.d + 1)).max()))
        for i in range(s.d + 1):
            for j in range(s.d + 1):
                worst = max(worst, abs(q[i][j] * s.valencies[i]
                                       - p[j][i] * spec.multiplicities[j]))
        es = [np.asarray(e) for e in spec.idempotents]
        worst = max(worst, float(np.abs(sum(es) - np.eye(s.v)).max()))
        for j, e in enumerate(es):
            for k, other in enumerate(es):
                expected = e if j == k else np.zeros_like(e)
                worst = max(worst, float(np.abs(e @ other - expected).max()))
    assert worst < 1e-8, f"float-mode max entry error {worst:.3e}"
    _report(3, f"PQ = vI, duality, idempotent laws: exact on 5 schemes; "
               f"float error {worst:.2e} < 1e-8 on cycle(5), cycle(7)")


def test_criterion_4_lloyd_divisibility():
    checked = 0
    for s, spec, part, desc in equitable_partition_catalog():
        result = sl.lloyd_check(s, part)
        assert result.all_pass, desc
        checked += 1
    petersen = sl.named_scheme("petersen")
    adversarial = char_poly(RationalMatrix([[2]]))
    assert not poly_divides(adversarial, char_poly(petersen.relations[1]))
    _report(4, f"char(N_i) | char(A_i) on {checked} equitable partitions; "
               f"adversarial quotient [[2]] rejected")


def random_petersen_partitions(count: int):
    rng = random.Random(RANDOM_SEED)
    petersen = sl.named_scheme("petersen")
    out = []
    while len(out) < count:
        t = rng.randint(2, 5)
        assignment = [rng.randrange(t) for _ in range(petersen.v)]
        cells = [tuple(x for x in range(petersen.v) if assignment[x] == k)
                 for k in range(t)]
        cells = tuple(c for c in cells if c)
        if len(cells) < 2:
            continue
        out.append(sl.Partition(petersen.labels, cells))
    return petersen, out


def test_criterion_5_equitable_iff_commuting():
    petersen, partitions = random_petersen_partitions(100)
    agreements = 0
    equitable_seen = 0
    for part in partitions:
        combinatorial = sl.is_equitable(petersen, part).equitable
        algebraic, _ = sl.commutes_with_scheme(
            sl.partition_projector(part), petersen)
        assert combinatorial == algebraic
        agreements += 1
        equitable_seen += combinatorial
    assert agreements == 100
    _report(5, f"count test and exact commutation agree on 100/100 seeded "
               f"random partitions ({equitable_seen} equitable)")


def test_criterion_6_higman_condition():
    petersen = sl.named_scheme("petersen")
    spec = sl.spectral_data(petersen)

    identity = sl.higman_condition(petersen, spec, list(range(10)))
    assert identity.values == (1, 5, 4) and identity.all_pass

    rotation = {str(i): str((i + 1) % 5) for i in range(5)}
    rotation.update({f"{i}'": f"{(i + 1) % 5}'" for i in range(5)})
    rot = sl.higman_condition(petersen, spec, rotation)
    assert rot.alpha == (0, 5, 5)
    assert rot.values == (1, 0, -1)
    assert rot.all_pass

    swapped = list(range(10))
    swapped[0], swapped[1] = 1, 0
    with pytest.raises(sl.NotAutomorphismError):
        sl.higman_condition(petersen, spec, swapped)
    _report(6, "identity gives (1, 5, 4); rotation gives alpha (0, 5, 5) and "
               "(1, 0, -1); adjacent transposition rejected by the pre-check")


# -- criterion 7: independent completely-regular oracle ----------------------

def _oracle_neighbor_sets():
    """Petersen adjacency rebuilt from the literal edge list."""
    labels = [str(i) for i in range(5)] + [f"{i}'" for i in range(5)]
    index = {lab: i for i, lab in enumerate(labels)}
    neigh = [set() for _ in labels]
    for a, b in PETERSEN_EDGES:
        neigh[index[a]].add(index[b])
        neigh[index[b]].add(index[a])
    return neigh


def _oracle_distances(neigh, sources):
    dist = [-1] * len(neigh)
    queue = deque()
    for s in sources:
        dist[s] = 0
        queue.append(s)
    while queue:
        x = queue.popleft()
        for y in neigh[x]:
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def oracle_completely_regular(neigh, code) -> bool:
    """Direct definition: every vertex of every distance layer must see the
    same number of vertices of every other layer at every graph distance.

    Uses only breadth-first searches and counting; no quotient matrices, no
    scheme machinery.
    """
    n = len(neigh)
    pair_dist = [_oracle_distances(neigh, [x]) for x in range(n)]
    layer_of = _oracle_distances(neigh, code)
    rho = max(layer_of)
    layers = [[x for x in range(n) if layer_of[x] == k] for k in range(rho + 1)]
    diameter = max(max(row) for row in pair_dist)
    for layer in layers:
        profiles = set()
        for x in layer:
            profile = tuple(
                sum(1 for y in layers[k] if pair_dist[x][y] == dd)
                for k in range(rho + 1) for dd in range(diameter + 1))
            profiles.add(profile)
        if len(profiles) != 1:
            return False
    return True


def test_criterion_7_search_matches_oracle():
    start = time.perf_counter()
    petersen = sl.named_scheme("petersen")
    neigh = _oracle_neighbor_sets()

    result = sl.search_completely_regular(petersen, 1, (1, 2))
    assert result.exhaustive and result.tested == 55

    by_subset = {rec.vertices: rec.completely_regular for rec in result.records}
    assert len(by_subset) == 55
    for size in (1, 2):
        for code in itertools.combinations(range(10), size):
            assert by_subset[code] == oracle_completely_regular(neigh, code), \
                f"disagreement on {code}"

    singles = [rec for rec in result.records if len(rec.vertices) == 1]
    assert len(singles) == 10 and all(r.completely_regular for r in singles)
    edge_set = {frozenset((a, b)) for a, b in sl.petersen_graph().edges}
    cr_pairs = {frozenset(rec.vertices) for rec in result.records
                if len(rec.vertices) == 2 and rec.completely_regular}
    assert cr_pairs == edge_set and len(cr_pairs) == 15

    elapsed = time.perf_counter() - start
    assert elapsed < 5.0, f"took {elapsed:.2f}s, budget 5s"
    _report(7, f"search agrees with the independent checker on all 55 "
               f"subsets; 10 singletons and 15 edges completely regular "
               f"[{elapsed:.2f}s]")


# -- criterion 8: determinism -------------------------------------------------

def _run_cli_capture(capsys, argv):
    code = cli_main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def _criterion_summaries() -> str:
    """Re-run the computations behind criteria 1-7 into one report string."""
    chunks = []
    petersen = sl.named_scheme("petersen")
    spec = sl.spectral_data(petersen)
    part = sl.make_partition(petersen, PAIR_CELLS)
    eq = sl.is_equitable(petersen, part)
    chunks.append(eq.witness.describe(petersen.labels))
    chunks.append(repr(sl.trace_profile(petersen, part)))
    chunks.append(repr(sl.godsil_condition(petersen, spec, part).values))
    for s, sp, pt, desc in equitable_partition_catalog():
        chunks.append(desc)
        chunks.append(repr(sl.godsil_condition(s, sp, pt).values))
        chunks.append(repr(sl.subduced_multiplicities(s, sp, pt)))
        chunks.append(repr(sl.lloyd_check(s, pt).divides))
    _, partitions = random_petersen_partitions(100)
    for pt in partitions:
        chunks.append(repr(sl.is_equitable(petersen, pt).equitable))
    rotation = {str(i): str((i + 1) % 5) for i in range(5)}
    rotation.update({f"{i}'": f"{(i + 1) % 5}'" for i in range(5)})
    chunks.append(repr(sl.higman_condition(petersen, spec, rotation).values))
    search = sl.search_completely_regular(petersen, 1, (1, 2), workers=4)
    for rec in search.records:
        chunks.append(f"{rec.vertices} {rec.completely_regular} "
                      f"{rec.partition.cell_sizes}")
    return "\n".join(chunks)


def test_criterion_8_determinism(capsys, tmp_path):
    pair_file = tmp_path / "pairs.cells"
    pair_file.write_text("\n".join(" ".join(c) for c in PAIR_CELLS) + "\n")
    commands = [
        ("verify", "--family", "petersen"),
        ("spectra", "--family", "petersen", "--json"),
        ("spectra", "--family", "cycle,5"),
        ("spectra", "--family", "cycle,7", "--json"),
        ("partition", "--family", "petersen", "--partition", str(pair_file),
         "--feasibility"),
        ("search", "--family", "petersen", "--sizes", "1..2"),
        ("search", "--family", "petersen", "--sizes", "1..2", "--workers", "4"),
    ]
    for argv in commands:
        first = _run_cli_capture(capsys, argv)
        second = _run_cli_capture(capsys, argv)
        assert first[1].encode() == second[1].encode(), f"{argv} not stable"
        assert first[0] == second[0]

    # parallel evaluation must not change the records either
    serial = _criterion_summaries()
    again = _criterion_summaries()
    assert serial.encode() == again.encode()
    _report(8, f"two consecutive runs byte-identical for {len(commands)} "
               f"CLI commands and the criterion computations "
               f"(workers 1 and 4)")
