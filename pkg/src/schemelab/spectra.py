"""Spectral decomposition of a scheme: eigenspaces, idempotents, P and Q.

The vertex space splits into d+1 maximal common eigenspaces W_0..W_d of the
relation matrices. When every relation has a fully rational spectrum the
whole decomposition is carried out in exact rational arithmetic; otherwise
a double-precision path with explicit tolerances takes over and the result
is flagged accordingly. W_0 is always the constants; the remaining spaces
are ordered by decreasing eigenvalue tuple for reproducible reports.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np

from .errors import (InputError, InternalConsistencyError,
                     IrrationalSpectrumError)
from .floatlin import symmetric_eigen
from .poly import char_poly, integer_roots
from .ratmat import RationalMatrix, inner_product, inverse, nullspace
from .scheme import AssociationScheme

DEFAULT_EIGEN_TOL = 1e-9
# Gate for float-mode self checks (PQ = vI and friends); looser than the
# grouping tolerance, far tighter than anything a report asserts.
_FLOAT_CHECK_TOL = 1e-8


@dataclass(frozen=True)
class SpectralData:
    """Spectral decomposition of a scheme, exact or floating point.

    ``bases[j]`` holds rows spanning W_j (a RationalMatrix in exact mode, an
    ndarray with orthonormal rows in float mode). ``p_matrix[j][i]`` is the
    eigenvalue of A_i on W_j; ``q_matrix`` is its dual with P Q = v I.
    """

    mode: str  # "exact" | "float"
    eigen_tol: float | None
    bases: tuple
    multiplicities: tuple[int, ...]
    idempotents: tuple | None = None
    p_matrix: object | None = None
    q_matrix: object | None = None
    warnings: tuple[str, ...] = ()

    @property
    def exact(self) -> bool:
        return self.mode == "exact"


def rational_spectrum_roots(s: AssociationScheme) -> list[dict[int, int]] | None:
    """Integer eigenvalues (with multiplicity) of A_1..A_d, or None.

    None signals that some relation has an irrational eigenvalue, i.e. its
    characteristic polynomial does not split over the rationals, so exact
    mode is unavailable.
    """
    out = []
    for i in range(1, s.d + 1):
        roots, rest = integer_roots(char_poly(s.relations[i]),
                                    bound=s.valencies[i])
        if rest.degree > 0:
            return None
        out.append(roots)
    return out


def _left_eigen_split(basis: RationalMatrix, a: RationalMatrix,
                      eigenvalues) -> list[tuple[int, RationalMatrix]]:
    """Split a basis of an a-invariant subspace by the eigenvalues of a.

    Works on row vectors: returns (eigenvalue, rows spanning the matching
    slice) for every eigenvalue that actually occurs.
    """
    v = a.nrows
    shifted = {lam: basis @ (a - lam * RationalMatrix.identity(v))
               for lam in eigenvalues}
    pieces = []
    total = 0
    for lam in eigenvalues:
        kernel = nullspace(shifted[lam].transpose())
        if not kernel:
            continue
        coords = RationalMatrix(kernel)
        pieces.append((lam, coords @ basis))
        total += coords.nrows
    if total != basis.nrows:
        raise InternalConsistencyError(
            "eigen refinement lost dimensions; subspace was not invariant")
    return pieces


def _exact_eigenspaces(s: AssociationScheme,
                       roots: list[dict[int, int]] | None = None
                       ) -> list[tuple[dict[int, int], RationalMatrix]]:
    if roots is None:
        roots = rational_spectrum_roots(s)
    if roots is None:
        raise IrrationalSpectrumError(
            "some relation has an irrational eigenvalue; use float mode")
    spaces = [({}, RationalMatrix.identity(s.v))]
    for i in range(1, s.d + 1):
        eigenvalues = sorted(roots[i - 1], reverse=True)
        refined = []
        for tags, basis in spaces:
            for lam, sub in _left_eigen_split(basis, s.relations[i], eigenvalues):
                refined.append(({**tags, i: lam}, sub))
        spaces = refined
    return spaces


def _float_eigenspaces(s: AssociationScheme, tol: float
                       ) -> list[tuple[dict[int, float], np.ndarray]]:
    spaces = [({}, np.eye(s.v))]  # column bases, orthonormal
    mats = [np.array(a.rows, dtype=float) for a in s.relations]
    for i in range(1, s.d + 1):
        refined = []
        for tags, basis in spaces:
            restricted = basis.T @ mats[i] @ basis
            restricted = (restricted + restricted.T) / 2.0
            for lam, cols in symmetric_eigen(restricted, tol=tol):
                refined.append(({**tags, i: lam}, basis @ cols))
        spaces = refined
    return [(tags, basis.T.copy()) for tags, basis in spaces]


def _order_spaces(s: AssociationScheme, spaces, exact: bool):
    """Constants first, then decreasing eigenvalue tuples."""
    def tag_tuple(tags):
        return tuple(tags[i] for i in range(1, s.d + 1))

    if exact:
        constants = [sp for sp in spaces
                     if tag_tuple(sp[0]) == tuple(s.valencies[1:])]
    else:
        def dist(sp):
            return max(abs(tag_tuple(sp[0])[i - 1] - s.valencies[i])
                       for i in range(1, s.d + 1)) if s.d else 0.0
        constants = [min(spaces, key=dist)] if spaces else []
        if constants and s.d and dist(constants[0]) > 1e-6 * max(s.valencies):
            constants = []
    if len(constants) != 1:
        raise InternalConsistencyError(
            "could not identify the all-ones eigenspace")
    w0 = constants[0]
    rest = sorted((sp for sp in spaces if sp is not w0),
                  key=lambda sp: tag_tuple(sp[0]), reverse=True)
    return [w0] + rest


def common_eigenspaces(s: AssociationScheme, mode: str = "auto",
                       eigen_tol: float = DEFAULT_EIGEN_TOL) -> SpectralData:
    """Maximal common eigenspaces of all relation matrices.

    ``mode`` is "exact", "float", or "auto" (exact whenever every relation
    has a rational spectrum, else float with a warning recorded). Exactly
    d+1 spaces must emerge; anything else raises InternalConsistencyError.
    """
    warnings: tuple[str, ...] = ()
    roots = None
    if mode == "auto":
        roots = rational_spectrum_roots(s)
        if roots is not None:
            mode = "exact"
        else:
            mode = "float"
            warnings = ("irrational spectrum: falling back to double "
                        f"precision with eigenvalue tolerance {eigen_tol}",)
    if mode == "exact":
        spaces = _exact_eigenspaces(s, roots)
    elif mode == "float":
        spaces = _float_eigenspaces(s, eigen_tol)
    else:
        raise InputError(f"unknown mode {mode!r}")
    if len(spaces) != s.d + 1:
        raise InternalConsistencyError(
            f"eigenspace refinement produced {len(spaces)} spaces, "
            f"expected {s.d + 1}; input may not be a commutative scheme "
            "or the tolerance merged distinct eigenvalues")
    ordered = _order_spaces(s, spaces, exact=(mode == "exact"))
    bases = tuple(basis for _, basis in ordered)
    mult = tuple(b.nrows if isinstance(b, RationalMatrix) else b.shape[0]
                 for b in bases)
    if sum(mult) != s.v:
        raise InternalConsistencyError("eigenspace dimensions do not sum to v")
    return SpectralData(mode=mode, eigen_tol=None if mode == "exact" else eigen_tol,
                        bases=bases, multiplicities=mult, warnings=warnings)


def idempotents(spec: SpectralData) -> SpectralData:
    """Fill in the primitive idempotents E_j (projectors onto each W_j)."""
    if spec.exact:
        es = []
        for basis in spec.bases:
            bt = basis.transpose()
            gram_inv = inverse(basis @ bt)
            es.append(bt @ gram_inv @ basis)
        return replace(spec, idempotents=tuple(es))
    es = tuple(basis.T @ basis for basis in spec.bases)
    return replace(spec, idempotents=es)


def _rayleigh_exact(basis: RationalMatrix, a: RationalMatrix) -> Fraction:
    results = []
    for r in range(min(2, basis.nrows)):
        w = RationalMatrix([basis[r]])
        image = w @ a
        k = next(j for j in range(basis.ncols) if w[0][j] != 0)
        lam = image[0][k] / w[0][k]
        if image != lam * w:
            raise InternalConsistencyError(
                "basis vector is not an eigenvector of a relation matrix")
        results.append(lam)
    if len(set(results)) != 1:
        raise InternalConsistencyError(
            "two basis vectors of one eigenspace disagree on an eigenvalue")
    return results[0]


def _rayleigh_float(basis: np.ndarray, a: np.ndarray, tol: float) -> float:
    vals = []
    for r in range(min(2, basis.shape[0])):
        w = basis[r]
        vals.append(float(w @ a @ w))
    if len(vals) == 2 and abs(vals[0] - vals[1]) > max(tol * 1e3, _FLOAT_CHECK_TOL):
        raise InternalConsistencyError(
            "eigenvalue disagreement inside one float-mode eigenspace; "
            "tolerance likely merged distinct spaces")
    return vals[0]


def eigenmatrices(s: AssociationScheme, spec: SpectralData) -> SpectralData:
    """Compute P and Q and verify P Q = v I and Q_ij v_i = P_ji f_j.

    P_ji is read off as the eigenvalue of A_i on W_j (first basis vector,
    cross-checked against a second when the space has dimension > 1);
    Q = v P^{-1}.
    """
    d, v = s.d, s.v
    if spec.exact:
        p_rows = [[_rayleigh_exact(spec.bases[j], s.relations[i])
                   for i in range(d + 1)] for j in range(d + 1)]
        p = RationalMatrix(p_rows)
        q = v * inverse(p)
        if p @ q != v * RationalMatrix.identity(d + 1):
            raise InternalConsistencyError("P Q = vI failed in exact mode")
        for i in range(d + 1):
            for j in range(d + 1):
                if q[i][j] * s.valencies[i] != p[j][i] * spec.multiplicities[j]:
                    raise InternalConsistencyError(
                        "duality relation Q_ij v_i = P_ji f_j failed")
        return replace(spec, p_matrix=p, q_matrix=q)

    mats = [np.array(a.rows, dtype=float) for a in s.relations]
    tol = spec.eigen_tol or DEFAULT_EIGEN_TOL
    # column 0 is the eigenvalue of A_0 = I, exactly 1
    p = np.array([[1.0 if i == 0 else _rayleigh_float(spec.bases[j], mats[i], tol)
                   for i in range(d + 1)] for j in range(d + 1)])
    q = v * np.linalg.inv(p)
    if np.abs(p @ q - v * np.eye(d + 1)).max() > _FLOAT_CHECK_TOL * v:
        raise InternalConsistencyError("P Q = vI failed in float mode")
    val = np.array(s.valencies, dtype=float)
    mult = np.array(spec.multiplicities, dtype=float)
    duality = np.abs(q * val[:, None] - (p * mult[:, None]).T)
    if duality.max() > _FLOAT_CHECK_TOL * v:
        raise InternalConsistencyError(
            "duality relation Q_ij v_i = P_ji f_j failed in float mode")
    return replace(spec, p_matrix=p, q_matrix=q)


def spectral_data(s: AssociationScheme, mode: str = "auto",
                  eigen_tol: float = DEFAULT_EIGEN_TOL) -> SpectralData:
    """Full decomposition: eigenspaces, idempotents, eigenmatrices."""
    return eigenmatrices(s, idempotents(common_eigenspaces(s, mode, eigen_tol)))


def project_onto_algebra(m, s: AssociationScheme, spec: SpectralData):
    """Orthogonal projection of a matrix onto the span of A_0..A_d.

    Computed as sum_i <A_i, m>/(v v_i) A_i and cross-checked against the
    idempotent-basis form sum_j <E_j, m>/<E_j, E_j> E_j.
    """
    if spec.idempotents is None:
        raise InputError("spectral data lacks idempotents")
    if spec.exact and isinstance(m, RationalMatrix):
        if m.shape != (s.v, s.v):
            raise InputError(f"matrix shape {m.shape} does not match v={s.v}")
        out = RationalMatrix.zeros(s.v)
        for i, a in enumerate(s.relations):
            out = out + (inner_product(a, m) / Fraction(s.v * s.valencies[i])) * a
        alt = RationalMatrix.zeros(s.v)
        for j, e in enumerate(spec.idempotents):
            alt = alt + (inner_product(e, m) / Fraction(spec.multiplicities[j])) * e
        if out != alt:
            raise InternalConsistencyError(
                "the two routes of the algebra projection disagree")
        return out
    mf = np.array(m.rows, dtype=float) if isinstance(m, RationalMatrix) \
        else np.asarray(m, dtype=float)
    if mf.shape != (s.v, s.v):
        raise InputError(f"matrix shape {mf.shape} does not match v={s.v}")
    mats = [np.array(a.rows, dtype=float) for a in s.relations]
    out = np.zeros_like(mf)
    for i, a in enumerate(mats):
        out += (float((a * mf).sum()) / (s.v * s.valencies[i])) * a
    alt = np.zeros_like(mf)
    for j, e in enumerate(spec.idempotents):
        ef = np.asarray(e, dtype=float)
        alt += (float((ef * mf).sum()) / spec.multiplicities[j]) * ef
    if np.abs(out - alt).max() > _FLOAT_CHECK_TOL * max(1.0, np.abs(mf).max()):
        raise InternalConsistencyError(
            "the two routes of the algebra projection disagree in float mode")
    return out
