"""Completely regular codes: direct testing and bounded brute-force search.

A vertex subset is a completely regular code in the graph (V, R_i) when its
distance partition is equitable. The search enumerates subsets in
lexicographic order and always classifies each candidate by the direct
test; feasibility data can be attached for reporting but never replaces it.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .errors import InputError
from .feasibility import FeasibilityReport, feasibility_report
from .partition import EquitabilityResult, Partition, distance_partition, is_equitable
from .scheme import AssociationScheme
from .spectra import SpectralData

DEFAULT_BUDGET = 10 ** 6


@dataclass(frozen=True)
class CodeRecord:
    """Classification of one candidate code."""

    vertices: tuple[int, ...]
    relation: int
    covering_radius: int
    partition: Partition
    equitability: EquitabilityResult
    completely_regular: bool
    feasibility: FeasibilityReport | None = None


def is_completely_regular(s: AssociationScheme, i: int, code,
                          spec: SpectralData | None = None,
                          include_feasibility: bool = False) -> CodeRecord:
    """Test one code: build its distance partition and check equitability."""
    part, rho = distance_partition(s, i, code)
    eq = is_equitable(s, part)
    feas = None
    if include_feasibility:
        if spec is None:
            raise InputError("feasibility data requires spectral data")
        feas = feasibility_report(s, spec, part)
    return CodeRecord(vertices=tuple(sorted(
        s.vertex(x) if not isinstance(x, int) else x for x in code)),
        relation=i, covering_radius=rho, partition=part,
        equitability=eq, completely_regular=eq.equitable, feasibility=feas)


@dataclass(frozen=True)
class SearchResult:
    records: tuple[CodeRecord, ...]
    tested: int
    skipped_duplicates: int
    exhaustive: bool


def _pair_signature(s: AssociationScheme, code: tuple[int, ...]) -> tuple[int, ...]:
    rel = s.relation_of
    return tuple(sorted(rel[a][b] for a, b in itertools.combinations(code, 2)))


def search_completely_regular(s: AssociationScheme, i: int,
                              sizes: tuple[int, int],
                              budget: int = DEFAULT_BUDGET,
                              dedup_by_signature: bool = False,
                              spec: SpectralData | None = None,
                              include_feasibility: bool = False,
                              workers: int = 1) -> SearchResult:
    """Classify all vertex subsets with sizes in [lo, hi], up to a budget.

    Candidates are enumerated in lexicographic order (smaller sizes first)
    and every record comes from the direct distance-partition test. With
    ``dedup_by_signature`` only the first subset per inner-relation
    multiset signature is tested. ``budget`` caps how many candidates are
    tested; when it is hit the result is marked non-exhaustive. Worker
    threads only parallelize candidate evaluation; output order is the
    enumeration order regardless of worker count.
    """
    lo, hi = sizes
    if not (1 <= lo <= hi <= s.v):
        raise InputError(f"size range {lo}..{hi} must sit inside 1..{s.v}")
    if budget < 0:
        raise InputError("budget must be non-negative")

    candidates: list[tuple[int, ...]] = []
    seen_signatures: set[tuple[int, ...]] = set()
    skipped = 0
    exhausted_budget = False
    for size in range(lo, hi + 1):
        for code in itertools.combinations(range(s.v), size):
            if dedup_by_signature:
                sig = (size,) + _pair_signature(s, code)
                if sig in seen_signatures:
                    skipped += 1
                    continue
                seen_signatures.add(sig)
            if len(candidates) >= budget:
                exhausted_budget = True
                break
            candidates.append(code)
        if exhausted_budget:
            break

    def classify(code: tuple[int, ...]) -> CodeRecord:
        return is_completely_regular(s, i, code, spec=spec,
                                     include_feasibility=include_feasibility)

    if workers > 1 and candidates:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = tuple(pool.map(classify, candidates))
    else:
        records = tuple(classify(code) for code in candidates)
    return SearchResult(records=records, tested=len(candidates),
                        skipped_duplicates=skipped,
                        exhaustive=not exhausted_budget)
