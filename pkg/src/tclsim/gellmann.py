"""Generalized Gell-Mann bases for SU(N) and the characteristic function
of windowed unitaries exp(-i Lambda . r).

The basis is ordered as: symmetric off-diagonal matrices, antisymmetric
off-diagonal matrices, diagonal matrices.  Off-diagonal blocks run over
index pairs (j, k) with j < k in lexicographic order; the diagonal block
is indexed by l = 1 .. N-1.
"""

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

# Eigenvalue-gap threshold (relative) below which the implicit-derivative /
# Hellmann-Feynman gradient formulas are abandoned for finite differences.
DEGENERACY_RTOL = 1e-8

# |r| below which the gradient of K is evaluated by Taylor expansion.
SMALL_R = 1e-5


@dataclass(frozen=True)
class GellMannBasis:
    """Ordered set of N^2 - 1 traceless Hermitian generators of SU(N)."""

    dim: int
    matrices: np.ndarray = field(repr=False)  # (N^2-1, N, N) complex
    # diagonal entries of the diagonal-block matrices, shape (N-1, N) real
    diag_entries: np.ndarray = field(repr=False)

    @property
    def size(self):
        return self.dim * self.dim - 1

    @property
    def n_offdiag(self):
        """Number of symmetric (equally, antisymmetric) matrices."""
        return self.dim * (self.dim - 1) // 2

    def sym_index(self, j, k):
        """Basis index of the symmetric matrix |j><k| + |k><j| (j < k)."""
        return _pair_index(self.dim, j, k)

    def asym_index(self, j, k):
        """Basis index of -i(|j><k| - |k><j|) (j < k)."""
        return self.n_offdiag + _pair_index(self.dim, j, k)

    def diag_index(self, l):
        """Basis index of the l-th diagonal matrix, 1 <= l <= N-1."""
        return 2 * self.n_offdiag + (l - 1)

    @property
    def offdiag_indices(self):
        return np.arange(2 * self.n_offdiag)

    @property
    def diag_indices(self):
        return np.arange(2 * self.n_offdiag, self.size)


def _pair_index(n, j, k):
    if not 0 <= j < k < n:
        raise ValueError(f"need 0 <= j < k < {n}, got ({j}, {k})")
    # pairs (0,1), (0,2), ..., (0,n-1), (1,2), ...
    return j * n - j * (j + 1) // 2 + (k - j - 1)


@lru_cache(maxsize=None)
def build_basis(n):
    """Construct the generalized Gell-Mann basis for an n-level system.

    Returns a GellMannBasis whose matrices are Hermitian, traceless and
    mutually orthogonal with Tr(L_i L_j) = 2 delta_ij.
    """
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise ValueError(f"basis dimension must be an integer >= 2, got {n!r}")
    n = int(n)
    mats = []
    for j in range(n):
        for k in range(j + 1, n):
            m = np.zeros((n, n), dtype=complex)
            m[j, k] = m[k, j] = 1.0
            mats.append(m)
    for j in range(n):
        for k in range(j + 1, n):
            m = np.zeros((n, n), dtype=complex)
            m[j, k] = -1.0j
            m[k, j] = 1.0j
            mats.append(m)
    diag_entries = np.zeros((n - 1, n))
    for l in range(1, n):
        d = np.zeros(n)
        d[:l] = 1.0
        d[l] = -l
        d *= np.sqrt(2.0 / (l * (l + 1)))
        diag_entries[l - 1] = d
        mats.append(np.diag(d).astype(complex))
    mats = np.array(mats)
    mats.setflags(write=False)
    diag_entries.setflags(write=False)
    return GellMannBasis(dim=n, matrices=mats, diag_entries=diag_entries)


def decompose(h, basis, rtol=1e-10):
    """Coefficients c_k = Tr(L_k h) / 2 of a traceless Hermitian matrix.

    Rejects matrices that are not Hermitian or not traceless within
    `rtol` relative to the matrix norm.
    """
    h = np.asarray(h, dtype=complex)
    scale = max(np.linalg.norm(h), 1.0)
    if np.linalg.norm(h - h.conj().T) > rtol * scale:
        raise ValueError("matrix is not Hermitian within tolerance")
    if abs(np.trace(h)) > rtol * scale:
        raise ValueError("matrix is not traceless within tolerance")
    coeffs = np.einsum("kij,ji->k", basis.matrices, h).real / 2.0
    return coeffs


def assemble(coeffs, basis):
    """Inverse of decompose: Lambda . r as an (N, N) matrix."""
    return np.tensordot(np.asarray(coeffs), basis.matrices, axes=(-1, 0))


def eigenvalues_mu(r, basis):
    """Eigenvalues of Lambda . r in descending order.

    Uses closed forms for N = 2 (|r| spectrum) and N = 3 (the
    trigonometric solution of the cubic secular equation); a Hermitian
    eigensolver otherwise.
    """
    r = np.asarray(r, dtype=float)
    n = basis.dim
    if n == 2:
        rad = np.linalg.norm(r)
        return np.array([rad, -rad])
    if n == 3:
        return _mu3(r[None, :], basis)[0]
    mu = np.linalg.eigvalsh(assemble(r, basis))
    return mu[::-1]


def _mu3(rs, basis):
    """Vectorized N=3 eigenvalues via Vieta's trigonometric formula.

    rs has shape (M, 8); returns (M, 3) in descending order.
    """
    rad = np.linalg.norm(rs, axis=-1)
    eps = _det3(rs, basis)
    out = np.zeros(rs.shape[:-1] + (3,))
    nz = rad > 0.0
    if np.any(nz):
        rn = rad[nz]
        # clamp absorbs floating-point overshoot at |arg| = 1
        arg = np.clip(3.0 * np.sqrt(3.0) * eps[nz] / (2.0 * rn**3), -1.0, 1.0)
        phi = np.arccos(arg) / 3.0
        js = np.arange(3)
        mu = (2.0 * rn[:, None] / np.sqrt(3.0)) * np.cos(
            phi[:, None] - 2.0 * np.pi * js / 3.0
        )
        out[nz] = np.sort(mu, axis=-1)[:, ::-1]
    return out


def _det3(rs, basis):
    """det(Lambda . r) = Tr((Lambda . r)^3) / 3, vectorized over rows of rs."""
    x = np.tensordot(rs, basis.matrices, axes=(-1, 0))
    return np.linalg.det(x).real


def _grad_eps3(rs, basis):
    """Gradient of det(Lambda . r): d eps / d r_k = Tr((Lambda.r)^2 L_k)."""
    x = np.tensordot(rs, basis.matrices, axes=(-1, 0))
    x2 = x @ x
    return np.einsum("...ij,kji->...k", x2, basis.matrices).real


@dataclass(frozen=True)
class CharacteristicFunction:
    """Value, gradient and eigenvalue phases of K(r) = sum_j exp(-i mu_j)."""

    value: complex
    gradient: np.ndarray
    eigenvalues: np.ndarray


def characteristic_fn(r, basis):
    """Evaluate K(r) = sum_j exp(-i mu_j(r)) and its gradient.

    The gradient uses Hellmann-Feynman (d mu_j / d r_k = <v_j|L_k|v_j>)
    away from eigenvalue degeneracies and 5-point central finite
    differences of K across them.
    """
    r = np.asarray(r, dtype=float)
    k, g = characteristic_fn_many(r[None, :], basis)
    mu = eigenvalues_mu(r, basis)
    return CharacteristicFunction(value=complex(k[0]), gradient=g[0], eigenvalues=mu)


def characteristic_fn_many(rs, basis):
    """Vectorized K and grad K over an (M, N^2-1) array of r vectors.

    Returns (K, gradK) with shapes (M,) complex and (M, N^2-1) complex.
    """
    rs = np.asarray(rs, dtype=float)
    n = basis.dim
    if n == 2:
        return _char2(rs)
    if n == 3:
        return _char3(rs, basis)
    kvals = np.empty(rs.shape[0], dtype=complex)
    grads = np.empty(rs.shape, dtype=complex)
    for i, r in enumerate(rs):
        kvals[i], grads[i] = _char_generic(r, basis)
    return kvals, grads


def _char2(rs):
    rad = np.linalg.norm(rs, axis=-1)
    k = 2.0 * np.cos(rad) + 0.0j
    with np.errstate(invalid="ignore", divide="ignore"):
        unit = np.where(rad[:, None] > 0.0, rs / np.where(rad == 0, 1.0, rad)[:, None], 0.0)
    g = (-2.0 * np.sin(rad))[:, None] * unit + 0.0j
    return k, g


def _char3(rs, basis):
    rad = np.linalg.norm(rs, axis=-1)
    mu = _mu3(rs, basis)                      # (M, 3)
    k = np.exp(-1.0j * mu).sum(axis=-1)
    grads = np.empty(rs.shape, dtype=complex)

    small = rad < SMALL_R
    # implicit differentiation of the secular polynomial:
    # d mu_j = (2 mu_j r_k + d eps_k) / (3 mu_j^2 - r^2)
    denom = 3.0 * mu**2 - rad[:, None] ** 2   # (M, 3)
    scale = np.maximum(rad**2, 1.0)
    degen = np.any(np.abs(denom) < DEGENERACY_RTOL * scale[:, None], axis=-1) & ~small
    ok = ~small & ~degen
    if np.any(ok):
        geps = _grad_eps3(rs[ok], basis)      # (m, 8)
        dmu = (
            2.0 * mu[ok][:, :, None] * rs[ok][:, None, :] + geps[:, None, :]
        ) / denom[ok][:, :, None]             # (m, 3, 8)
        grads[ok] = np.einsum("mj,mjk->mk", -1.0j * np.exp(-1.0j * mu[ok]), dmu)
    if np.any(small):
        grads[small] = _char3_taylor_grad(rs[small], basis)
    if np.any(degen):
        for idx in np.nonzero(degen)[0]:
            grads[idx] = _grad_fd(rs[idx], basis)
    return k, grads


def _char3_taylor_grad(rs, basis):
    # K = N - i*sum mu - sum mu^2/2 + i*sum mu^3/6 + sum mu^4/24 + ...
    #   = N - r^2 + i*eps/2 + grad terms of Tr X^4 / 24 + O(r^5)
    geps = _grad_eps3(rs, basis)
    x = np.tensordot(rs, basis.matrices, axes=(-1, 0))
    x2 = x @ x
    # d Tr X^4 / d r_k = 4 Tr(X^3 L_k)
    gq = 4.0 * np.einsum("...ij,...jl,kli->...k", x2, x, basis.matrices).real
    return -2.0 * rs + 0.5j * geps + gq / 24.0


def _char_generic(r, basis):
    """K and grad K for arbitrary N via eigendecomposition."""
    x = assemble(r, basis)
    mu, vecs = np.linalg.eigh(x)
    k = np.exp(-1.0j * mu).sum()
    gaps = np.abs(mu[:, None] - mu[None, :]) + np.eye(len(mu))
    scale = max(np.max(np.abs(mu)), 1.0)
    if np.linalg.norm(r) < SMALL_R or np.min(gaps) < DEGENERACY_RTOL * scale:
        return k, _grad_fd(r, basis)
    # Hellmann-Feynman: d mu_j / d r_k = <v_j| L_k |v_j>
    dmu = np.einsum("ij,kil,lj->jk", vecs.conj(), basis.matrices, vecs).real
    grad = np.einsum("j,jk->k", -1.0j * np.exp(-1.0j * mu), dmu)
    return k, grad


def _grad_fd(r, basis, step=1e-4):
    """5-point central finite difference of K, component by component."""
    grad = np.empty(basis.size, dtype=complex)

    def kval(rv):
        mu = np.linalg.eigvalsh(assemble(rv, basis))
        return np.exp(-1.0j * mu).sum()

    for k in range(basis.size):
        e = np.zeros(basis.size)
        e[k] = step
        grad[k] = (
            -kval(r + 2 * e) + 8 * kval(r + e) - 8 * kval(r - e) + kval(r - 2 * e)
        ) / (12 * step)
    return grad


def expand_unitary(r, basis):
    """The windowed unitary exp(-i Lambda . r) via its SU(N) expansion,
    (K/N) 1 + (i/2) grad K . Lambda."""
    r = np.asarray(r, dtype=float)
    u = expand_unitary_many(r[None, :], basis)
    return u[0]


def expand_unitary_many(rs, basis):
    """Vectorized expand_unitary over an (M, N^2-1) array."""
    k, g = characteristic_fn_many(rs, basis)
    n = basis.dim
    eye = np.eye(n)
    return (k[:, None, None] / n) * eye + 0.5j * np.tensordot(
        g, basis.matrices, axes=(1, 0)
    )
