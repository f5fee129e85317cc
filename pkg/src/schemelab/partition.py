"""Vertex partitions: characteristic matrices, equitability, quotients.

A partition is equitable when every vertex of a cell sees the same number
of R_i-neighbours in every cell, for every relation; equivalently, when its
projector commutes with every relation matrix. Both routes are implemented
and kept independent so they can cross-check each other.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import InputError, InternalConsistencyError
from .ratmat import RationalMatrix, column_space_projector
from .scheme import AssociationScheme


@dataclass(frozen=True)
class Partition:
    """Partition of a labeled vertex set into ordered, nonempty cells.

    Cell order is the input order; vertices inside a cell are stored in
    ascending index order. Validation happens here, so downstream code may
    assume disjoint nonempty cells covering every vertex.
    """

    labels: tuple[str, ...]
    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen: set[int] = set()
        for cell in self.cells:
            if not cell:
                raise InputError("empty cell")
            for x in cell:
                if not (0 <= x < len(self.labels)):
                    raise InputError(f"vertex index {x} out of range")
                if x in seen:
                    raise InputError(
                        f"vertex {self.labels[x]!r} appears in two cells")
                seen.add(x)
            if tuple(sorted(cell)) != cell:
                raise InputError("cell vertices must be sorted ascending")
        if len(seen) != len(self.labels):
            missing = next(i for i in range(len(self.labels)) if i not in seen)
            raise InputError(f"vertex {self.labels[missing]!r} is in no cell")

    @property
    def v(self) -> int:
        return len(self.labels)

    @property
    def t(self) -> int:
        return len(self.cells)

    @property
    def cell_sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.cells)

    @cached_property
    def cell_of(self) -> tuple[int, ...]:
        out = [0] * self.v
        for k, cell in enumerate(self.cells):
            for x in cell:
                out[x] = k
        return tuple(out)

    @cached_property
    def cell_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(c) for c in self.cells)

    def characteristic_matrix(self) -> RationalMatrix:
        """v x t 0/1 matrix H whose columns are the cell indicators."""
        return RationalMatrix([[int(self.cell_of[x] == k) for k in range(self.t)]
                               for x in range(self.v)])

    def cell_size_diagonal(self) -> RationalMatrix:
        """D = H^T H, the diagonal matrix of cell sizes."""
        return RationalMatrix.diagonal(self.cell_sizes)


def make_partition(scheme_or_labels, cells) -> Partition:
    """Validated partition from cells given as vertex labels or indices."""
    if isinstance(scheme_or_labels, AssociationScheme):
        labels = scheme_or_labels.labels
    else:
        labels = tuple(scheme_or_labels)
    index = {label: i for i, label in enumerate(labels)}
    resolved = []
    for cell in cells:
        members = []
        for x in cell:
            if isinstance(x, int):
                if not (0 <= x < len(labels)):
                    raise InputError(f"vertex index {x} out of range")
                members.append(x)
            else:
                try:
                    members.append(index[str(x)])
                except KeyError:
                    raise InputError(f"unknown vertex label {x!r}") from None
        resolved.append(tuple(sorted(members)))
    return Partition(labels, tuple(resolved))


def singleton_partition(s: AssociationScheme) -> Partition:
    return Partition(s.labels, tuple((x,) for x in range(s.v)))


def one_cell_partition(s: AssociationScheme) -> Partition:
    return Partition(s.labels, (tuple(range(s.v)),))


@dataclass(frozen=True)
class EquitabilityWitness:
    """First violating pair found by the deterministic scan.

    The scan runs lexicographically over (relation, cell, vertex); the
    reference vertex is the first vertex of the cell and ``vertex`` is the
    first cell-mate whose neighbour-count profile differs. ``target_cells``
    lists every cell against which the two profiles disagree, with the full
    profiles alongside, so any single disagreement can be read off.
    """

    relation: int
    cell: int  # 0-based index of the cell containing the pair
    vertex_ref: int
    vertex: int
    target_cells: tuple[int, ...]
    counts_ref: tuple[int, ...]
    counts: tuple[int, ...]

    def describe(self, labels: tuple[str, ...]) -> str:
        diffs = ", ".join(
            f"C_{j + 1} ({self.counts[j]} vs {self.counts_ref[j]})"
            for j in self.target_cells)
        return (f"relation {self.relation}, cell C_{self.cell + 1}: vertex "
                f"{labels[self.vertex]!r} vs {labels[self.vertex_ref]!r} "
                f"disagree on {diffs}")


@dataclass(frozen=True)
class EquitabilityResult:
    equitable: bool
    quotients: tuple[RationalMatrix, ...] | None = None
    witness: EquitabilityWitness | None = None


def _count_profile(s: AssociationScheme, part: Partition, i: int, x: int
                   ) -> tuple[int, ...]:
    neigh = s.relation_neighbors[i][x]
    return tuple(len(neigh & cell) for cell in part.cell_sets)


def is_equitable(s: AssociationScheme, part: Partition) -> EquitabilityResult:
    """Combinatorial equitability test with quotient matrices or a witness.

    On success the quotients N_i satisfy A_i H = H N_i, which is asserted
    exactly before returning.
    """
    if part.labels != s.labels:
        raise InputError("partition is over a different vertex set")
    quotients = []
    for i in range(s.d + 1):
        rows = []
        for k, cell in enumerate(part.cells):
            ref = _count_profile(s, part, i, cell[0])
            for x in cell[1:]:
                profile = _count_profile(s, part, i, x)
                if profile != ref:
                    diffs = tuple(j for j in range(part.t)
                                  if profile[j] != ref[j])
                    return EquitabilityResult(False, witness=EquitabilityWitness(
                        relation=i, cell=k, vertex_ref=cell[0], vertex=x,
                        target_cells=diffs, counts_ref=ref, counts=profile))
            rows.append(ref)
        quotients.append(RationalMatrix(rows))
    h = part.characteristic_matrix()
    for i, n_i in enumerate(quotients):
        if s.relations[i] @ h != h @ n_i:
            raise InternalConsistencyError(
                f"quotient identity A_{i} H = H N_{i} failed after "
                "a positive count test")
    return EquitabilityResult(True, quotients=tuple(quotients))


def partition_projector(part: Partition) -> RationalMatrix:
    """Orthogonal projector onto the column space of H.

    Entry (x, y) is 1/|C| when x and y share the cell C, else 0.
    """
    f = column_space_projector(part.characteristic_matrix())
    for x in range(part.v):
        for y in range(part.v):
            same = part.cell_of[x] == part.cell_of[y]
            want = Fraction(1, len(part.cells[part.cell_of[x]])) if same else 0
            if f[x][y] != want:
                raise InternalConsistencyError("projector lost its block form")
    return f


def commutes_with_scheme(f: RationalMatrix, s: AssociationScheme
                         ) -> tuple[bool, Fraction]:
    """Exact commutation test of f against every relation matrix.

    Returns (commutes, largest absolute entry of any commutator).
    """
    if f.shape != (s.v, s.v):
        raise InputError(f"projector shape {f.shape} does not match v={s.v}")
    worst = Fraction(0)
    for a in s.relations:
        worst = max(worst, (f @ a - a @ f).max_abs())
    return worst == 0, worst


def distance_partition(s: AssociationScheme, i: int, code
                       ) -> tuple[Partition, int]:
    """Distance partition of the graph (V, R_i) around a vertex subset.

    Cells are ordered by distance 0..rho; returns (partition, covering
    radius rho). Requires (V, R_i) connected and the code nonempty.
    """
    if not (0 <= i <= s.d):
        raise InputError(f"relation index {i} out of range 0..{s.d}")
    start = sorted(s.vertex(x) if not isinstance(x, int) else x for x in code)
    if not start:
        raise InputError("code must be nonempty")
    for x in start:
        if not (0 <= x < s.v):
            raise InputError(f"vertex index {x} out of range")
    dist = [-1] * s.v
    frontier = list(dict.fromkeys(start))
    for x in frontier:
        dist[x] = 0
    neigh = s.relation_neighbors[i]
    level = 0
    cells = [tuple(sorted(frontier))]
    while True:
        nxt = sorted({y for x in frontier for y in neigh[x] if dist[y] < 0})
        if not nxt:
            break
        level += 1
        for y in nxt:
            dist[y] = level
        cells.append(tuple(nxt))
        frontier = nxt
    if any(x < 0 for x in dist):
        raise InputError(f"the graph (V, R_{i}) is disconnected")
    return Partition(s.labels, tuple(cells)), level
