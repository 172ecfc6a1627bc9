"""Symmetric-matrix foundation: parsing, DN checks, spectral decomposition,
real matrix powers, irreducibility and primitivity.

A matrix is doubly nonnegative (DN) when it is symmetric positive
semi-definite and entry-wise nonnegative.  Real powers A^t are taken in the
spectral sense, sum(lambda_k^t x_k x_k^T), which is the object all other
modules analyze.

Everything here is immutable and side-effect free; values can be shared
freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Default tolerances.  All relative thresholds are scaled as documented at
# the point of use; tests pin behavior at exactly these values.
SYM_TOL = 1e-12          # relative asymmetry accepted on input
JACOBI_TOL = 1e-14       # off-diagonal Frobenius mass / Frobenius norm
MAX_SWEEPS = 50
ORTHO_TOL = 1e-12        # |U^T U - I| bound
RECON_TOL = 1e-10        # |U diag(lam) U^T - A| bound, relative to max |a_ij|
PSD_TOL = 1e-10          # eigenvalue >= -PSD_TOL * max(1, lam_1) counts as nonnegative
INVERT_TOL = 1e-10       # lam_n > INVERT_TOL * max(1, lam_1) counts as invertible
SIGN_TOL = 1e-8          # eigenvector sign canonicalization threshold
MERGE_TOL = 1e-8         # eigenvalues closer than MERGE_TOL * max(1, lam_1) coincide
EIG_SNAP_TOL = 1e-13     # |lam| <= EIG_SNAP_TOL * max |lam| is snapped to exact zero


class MatrixFormatError(ValueError):
    """Matrix text is malformed (wrong counts, non-numeric token)."""


class NotSymmetricError(ValueError):
    """Asymmetry of the input exceeds the symmetry tolerance."""


class NoConvergenceError(RuntimeError):
    """The Jacobi sweep limit was exceeded."""


class NegativeEigenvalueError(ValueError):
    """An eigenvalue lies below the PSD tolerance band."""


class ZeroToNegativePowerError(ValueError):
    """A zero eigenvalue (or dropped zero base) cannot be raised to t < 0."""


class NotIrreducibleError(ValueError):
    """The matrix graph is disconnected where irreducibility is required."""


class NotDoublyNonnegativeError(ValueError):
    """The matrix fails the DN check where DN is required."""


class NotPrimitiveError(RuntimeError):
    """No power up to the guaranteed index became entry-wise positive."""


@dataclass(frozen=True)
class SymMatrix:
    """Dense real symmetric matrix.  ``entries`` is read-only, shape (n, n)."""

    n: int
    entries: np.ndarray

    @classmethod
    def from_array(cls, a, sym_tol: float = SYM_TOL) -> "SymMatrix":
        """Validate and symmetrize an array-like.

        Asymmetry up to ``sym_tol * max_abs_entry`` is averaged away; anything
        larger raises NotSymmetricError.
        """
        arr = np.array(a, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise MatrixFormatError(f"expected a nonempty square matrix, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise MatrixFormatError("matrix entries must be finite")
        scale = np.abs(arr).max()
        asym = np.abs(arr - arr.T).max()
        if asym > sym_tol * max(scale, 1e-300):
            raise NotSymmetricError(f"asymmetry {asym:.3e} exceeds {sym_tol:.1e} * {scale:.3e}")
        sym = (arr + arr.T) / 2.0
        sym.setflags(write=False)
        return cls(n=sym.shape[0], entries=sym)

    def max_abs(self) -> float:
        return float(np.abs(self.entries).max())

    def __array__(self, dtype=None, copy=None):
        return np.array(self.entries, dtype=dtype)


@dataclass(frozen=True)
class DnReport:
    """Outcome of the doubly-nonnegative check; always returned, never raised."""

    is_nonnegative: bool
    is_psd: bool
    is_dn: bool
    min_entry: float
    min_eigenvalue: float
    is_invertible: bool
    is_irreducible: bool
    num_distinct_eigenvalues: int


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues sorted non-increasing; eigenvectors as orthonormal columns.

    Column signs are canonical: the first coordinate with magnitude above
    SIGN_TOL is positive.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def n(self) -> int:
        return self.eigenvalues.shape[0]


def parse_matrix(text: str, sym_tol: float = SYM_TOL) -> SymMatrix:
    """Read a matrix from text: '#' comment lines, then n, then n rows of n numbers."""
    rows = _read_numeric_rows(text)
    if not rows:
        raise MatrixFormatError("empty input")
    if len(rows[0]) != 1:
        raise MatrixFormatError("first data line must hold the dimension only")
    nf = rows[0][0]
    n = int(nf)
    if n != nf or n < 1:
        raise MatrixFormatError(f"bad dimension {nf!r}")
    if len(rows) - 1 != n:
        raise MatrixFormatError(f"expected {n} matrix rows, found {len(rows) - 1}")
    for idx, row in enumerate(rows[1:], start=1):
        if len(row) != n:
            raise MatrixFormatError(f"row {idx} has {len(row)} entries, expected {n}")
    return SymMatrix.from_array(rows[1:], sym_tol=sym_tol)


def format_matrix(A: SymMatrix) -> str:
    """Serialize in the matrix text format at full (round-trip) precision."""
    lines = [str(A.n)]
    for row in A.entries:
        lines.append(" ".join(format(v, ".17g") for v in row))
    return "\n".join(lines) + "\n"


def _read_numeric_rows(text: str) -> list[list[float]]:
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            rows.append([float(tok) for tok in stripped.split()])
        except ValueError as exc:
            raise MatrixFormatError(f"line {lineno}: non-numeric token ({exc})") from None
    return rows


def spectral_decompose(
    A: SymMatrix,
    tol: float = JACOBI_TOL,
    max_sweeps: int = MAX_SWEEPS,
    sign_tol: float = SIGN_TOL,
) -> SpectralDecomposition:
    """Cyclic Jacobi eigendecomposition.

    Sweeps rows in order, rotating every off-diagonal pair, until the
    off-diagonal Frobenius mass drops to ``tol`` times the (rotation-invariant)
    Frobenius norm.  Bit-reproducible across runs, ample accuracy at the
    dimensions this project works at (n <= 10 or so).
    """
    n = A.n
    work = np.array(A.entries, dtype=float)
    vecs = np.eye(n)
    fro = np.linalg.norm(work)
    if fro == 0.0:
        return _finish_decomposition(np.zeros(n), vecs, sign_tol)
    for _ in range(max_sweeps):
        off = np.linalg.norm(work - np.diag(np.diag(work)))
        if off <= tol * fro:
            return _finish_decomposition(np.diag(work).copy(), vecs, sign_tol)
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = work[p, q]
                if apq == 0.0:
                    continue
                tau = (work[q, q] - work[p, p]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                _rotate(work, vecs, p, q, c, s)
    off = np.linalg.norm(work - np.diag(np.diag(work)))
    if off <= tol * fro:
        return _finish_decomposition(np.diag(work).copy(), vecs, sign_tol)
    raise NoConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps (off={off:.3e})")


def _rotate(a: np.ndarray, v: np.ndarray, p: int, q: int, c: float, s: float) -> None:
    """Apply the similarity J^T a J and accumulate v <- v J, J the (p,q) rotation."""
    col_p = a[:, p].copy()
    col_q = a[:, q].copy()
    a[:, p] = c * col_p - s * col_q
    a[:, q] = s * col_p + c * col_q
    row_p = a[p, :].copy()
    row_q = a[q, :].copy()
    a[p, :] = c * row_p - s * row_q
    a[q, :] = s * row_p + c * row_q
    a[p, q] = 0.0
    a[q, p] = 0.0
    vec_p = v[:, p].copy()
    vec_q = v[:, q].copy()
    v[:, p] = c * vec_p - s * vec_q
    v[:, q] = s * vec_p + c * vec_q


def _finish_decomposition(diag: np.ndarray, vecs: np.ndarray, sign_tol: float) -> SpectralDecomposition:
    order = np.argsort(-diag, kind="stable")
    lam = diag[order]
    # Snap iteration-noise eigenvalues to exact zero.  Rank-deficient input
    # leaves residues around 1e-16 * scale; raised to a small power t those
    # residues would contribute O(1) phantom terms (e.g. (1e-16)^0.01 ~ 0.7),
    # so downstream consumers need true zeros here.
    scale = float(np.abs(lam).max()) if lam.size else 0.0
    lam[np.abs(lam) <= EIG_SNAP_TOL * scale] = 0.0
    u = vecs[:, order].copy()
    for k in range(u.shape[1]):
        col = u[:, k]
        big = np.nonzero(np.abs(col) > sign_tol)[0]
        if big.size and col[big[0]] < 0:
            u[:, k] = -col
    lam.setflags(write=False)
    u.setflags(write=False)
    return SpectralDecomposition(eigenvalues=lam, eigenvectors=u)


def check_dn(
    A: SymMatrix,
    psd_tol: float = PSD_TOL,
    invert_tol: float = INVERT_TOL,
    merge_tol: float = MERGE_TOL,
    nonneg_tol: float = 0.0,
) -> DnReport:
    """Report nonnegativity, positive semi-definiteness, invertibility,
    irreducibility, and the distinct-eigenvalue count."""
    dec = spectral_decompose(A)
    lam = dec.eigenvalues
    scale = max(1.0, float(lam[0]))
    min_entry = float(A.entries.min())
    min_eig = float(lam[-1])
    is_nonneg = min_entry >= -nonneg_tol
    is_psd = min_eig >= -psd_tol * scale
    return DnReport(
        is_nonnegative=is_nonneg,
        is_psd=is_psd,
        is_dn=is_nonneg and is_psd,
        min_entry=min_entry,
        min_eigenvalue=min_eig,
        is_invertible=min_eig > invert_tol * scale,
        is_irreducible=is_irreducible(A),
        num_distinct_eigenvalues=count_distinct_eigenvalues(lam, merge_tol),
    )


def count_distinct_eigenvalues(eigenvalues: np.ndarray, merge_tol: float = MERGE_TOL) -> int:
    """Count eigenvalue groups after merging values closer than the tolerance."""
    lam = np.sort(np.asarray(eigenvalues, dtype=float))[::-1]
    scale = max(1.0, abs(float(lam[0])))
    count = 1
    for a, b in zip(lam, lam[1:]):
        if a - b > merge_tol * scale:
            count += 1
    return count


def fractional_power(dec: SpectralDecomposition, t: float, psd_tol: float = PSD_TOL) -> SymMatrix:
    """Real power sum(lambda_k^t x_k x_k^T).

    Eigenvalues within the PSD tolerance band below zero are clamped to 0;
    anything lower raises NegativeEigenvalueError.  Conventions: 0^t = 0 for
    t > 0 and 0^0 = 1, so A^0 = I even for singular A.
    """
    lam = clamp_psd(dec.eigenvalues, psd_tol)
    if t < 0 and np.any(lam == 0.0):
        raise ZeroToNegativePowerError(f"t={t} < 0 with a zero eigenvalue")
    powered = np.power(lam, t)
    u = dec.eigenvectors
    result = (u * powered) @ u.T
    return SymMatrix.from_array((result + result.T) / 2.0, sym_tol=np.inf)


def clamp_psd(eigenvalues: np.ndarray, psd_tol: float = PSD_TOL) -> np.ndarray:
    """Zero out tiny negative eigenvalues; reject genuinely negative ones."""
    lam = np.asarray(eigenvalues, dtype=float)
    scale = max(1.0, float(lam.max(initial=0.0)))
    if lam.min() < -psd_tol * scale:
        raise NegativeEigenvalueError(
            f"eigenvalue {lam.min():.6e} below -{psd_tol:.1e} * {scale:.3e}"
        )
    return np.where(lam < 0.0, 0.0, lam)


def matrix_power_t(A: SymMatrix, t: float, psd_tol: float = PSD_TOL) -> SymMatrix:
    """Convenience: decompose A and return A^t."""
    return fractional_power(spectral_decompose(A), t, psd_tol=psd_tol)


def is_irreducible(A: SymMatrix) -> bool:
    """True iff the graph with edges |a_ij| > 0 (i != j) is connected; n=1 is true."""
    n = A.n
    if n == 1:
        return True
    adj = np.abs(A.entries) > 0.0
    seen = np.zeros(n, dtype=bool)
    stack = [0]
    seen[0] = True
    while stack:
        i = stack.pop()
        for j in np.nonzero(adj[i])[0]:
            if i != j and not seen[j]:
                seen[j] = True
                stack.append(j)
    return bool(seen.all())


def primitivity_index(A: SymMatrix) -> int:
    """Least k >= 1 with A^k entry-wise positive.

    Requires a DN irreducible input; the result is guaranteed to be at most
    n-1 for n >= 2 (positive diagonal plus connectivity).
    """
    report = check_dn(A)
    if not report.is_dn:
        raise NotDoublyNonnegativeError("primitivity index needs a DN matrix")
    if not report.is_irreducible:
        raise NotIrreducibleError("primitivity index needs an irreducible matrix")
    positive = A.entries > 0.0
    if positive.all():
        return 1
    reach = positive
    for k in range(2, max(2, A.n)):
        reach = reach @ positive
        if reach.all():
            return k
    raise NotPrimitiveError("no power up to n-1 is entry-wise positive")
