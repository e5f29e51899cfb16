"""Dense non-symmetric eigendecomposition.

Pipeline: optional Osborne balancing, Householder reduction to upper
Hessenberg form, Francis implicit double-shift QR to real Schur form,
unitary complexification of the 2x2 blocks, then eigenvectors by
back-substitution on the triangular factor, mapped back through the Schur
vectors and the balancing scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import ConvergenceError, NearDefectiveError
from ..variation import frequency_order
from .balance import balance as _balance
from .svd import svd_values

EIG_TOL = 1e-9
SIGMA_MIN_FLOOR = 1e-14
ITERATIONS_PER_EIGENVALUE = 30

_EPS = np.finfo(float).eps
_TINY = np.finfo(float).tiny
_BIG = 1.0 / (_EPS * _EPS)


def _freeze(a):
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class EigenSystem:
    """Eigenpairs of a real square matrix in canonical frequency order.

    ``vectors[:, k]`` is the unit-norm right eigenvector for ``values[k]``.
    Its largest-modulus entry (lowest index on ties) is real and positive.
    """

    values: np.ndarray
    vectors: np.ndarray
    sigma_min: float
    sigma_max: float
    kappa: float
    residual: float
    balanced: bool = False
    accepted: bool = True

    @property
    def n(self) -> int:
        return self.values.shape[0]


def _reflector(x: np.ndarray):
    """Real Householder pair ``(v, tau)`` with ``(I - tau v v^T) x = -sign(x0) ||x|| e1``."""
    norm = math.sqrt(float(x @ x))
    if norm == 0.0:
        return None, 0.0
    v = x.astype(float, copy=True)
    v[0] += math.copysign(norm, x[0])
    return v, 2.0 / float(v @ v)


def hessenberg(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(H, Q)`` with ``Q`` orthogonal and ``A = Q H Q^T``."""
    h = np.array(a, dtype=float)
    n = h.shape[0]
    q = np.eye(n)
    for k in range(n - 2):
        v, tau = _reflector(h[k + 1 :, k])
        if tau == 0.0:
            continue
        h[k + 1 :, k:] -= tau * np.outer(v, v @ h[k + 1 :, k:])
        h[:, k + 1 :] -= tau * np.outer(h[:, k + 1 :] @ v, v)
        q[:, k + 1 :] -= tau * np.outer(q[:, k + 1 :] @ v, v)
        h[k + 2 :, k] = 0.0
    return h, q


def _francis(h: np.ndarray, z: np.ndarray, max_iter: int) -> None:
    """Reduce Hessenberg ``h`` to real Schur form in place, accumulating into ``z``."""
    n = h.shape[0]
    norm = np.linalg.norm(h)
    hi = n - 1
    total = 0
    its = 0
    while hi >= 1:
        l = hi
        while l > 0:
            s = abs(h[l - 1, l - 1]) + abs(h[l, l])
            if s == 0.0:
                s = norm
            if abs(h[l, l - 1]) <= _EPS * s:
                h[l, l - 1] = 0.0
                break
            l -= 1
        if l >= hi - 1:
            # a 1x1 or 2x2 block has split off
            hi = l - 1
            its = 0
            continue
        if total >= max_iter:
            raise ConvergenceError(
                f"Francis QR did not converge within {max_iter} iterations "
                f"({hi + 1} eigenvalues outstanding)"
            )
        total += 1
        its += 1

        if its % 10 == 0:
            # exceptional shift to break symmetric stalls (e.g. permutation-like blocks)
            s = abs(h[hi, hi - 1]) + abs(h[hi - 1, hi - 2])
            h11 = 0.75 * s + h[hi, hi]
            h12, h21, h22 = -0.4375 * s, s, h11
        else:
            h11, h12 = h[hi - 1, hi - 1], h[hi - 1, hi]
            h21, h22 = h[hi, hi - 1], h[hi, hi]
        tr = h11 + h22
        det = h11 * h22 - h12 * h21

        x = h[l, l] * h[l, l] + h[l, l + 1] * h[l + 1, l] - tr * h[l, l] + det
        y = h[l + 1, l] * (h[l, l] + h[l + 1, l + 1] - tr)
        w = h[l + 1, l] * h[l + 2, l + 1]
        for k in range(l, hi - 1):
            v, tau = _reflector(np.array([x, y, w]))
            if tau != 0.0:
                r = max(l, k - 1)
                h[k : k + 3, r:] -= tau * np.outer(v, v @ h[k : k + 3, r:])
                rr = min(k + 3, hi) + 1
                h[:rr, k : k + 3] -= tau * np.outer(h[:rr, k : k + 3] @ v, v)
                z[:, k : k + 3] -= tau * np.outer(z[:, k : k + 3] @ v, v)
                if k > l:
                    h[k + 1 : k + 3, k - 1] = 0.0
            x = h[k + 1, k]
            y = h[k + 2, k]
            if k < hi - 2:
                w = h[k + 3, k]
        v, tau = _reflector(np.array([x, y]))
        if tau != 0.0:
            k = hi - 1
            h[k : k + 2, k - 1 :] -= tau * np.outer(v, v @ h[k : k + 2, k - 1 :])
            h[: hi + 1, k : k + 2] -= tau * np.outer(h[: hi + 1, k : k + 2] @ v, v)
            z[:, k : k + 2] -= tau * np.outer(z[:, k : k + 2] @ v, v)
            h[hi, hi - 2] = 0.0


def real_schur(a: np.ndarray, max_iter: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(T, Z)``: ``T`` quasi-upper-triangular, ``Z`` orthogonal, ``A = Z T Z^T``."""
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    h, z = hessenberg(a)
    if max_iter is None:
        max_iter = ITERATIONS_PER_EIGENVALUE * max(n, 1)
    _francis(h, z, max_iter)
    return h, z


def block_eigenvalues(a: float, b: float, c: float, d: float) -> tuple[complex, complex]:
    """Eigenvalues of ``[[a, b], [c, d]]``; a complex pair is returned exactly conjugate."""
    hd = 0.5 * (a - d)
    disc = hd * hd + b * c
    if disc >= 0.0:
        zeta = hd + math.copysign(math.sqrt(disc), hd)
        if zeta == 0.0:
            return complex(d), complex(d)
        return complex(d + zeta), complex(d - (b * c) / zeta)
    re = 0.5 * (a + d)
    im = math.sqrt(-disc)
    return complex(re, im), complex(re, -im)


def complex_schur(t: np.ndarray, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Triangularize each 2x2 block of a real Schur form with a complex rotation."""
    tc = np.array(t, dtype=complex)
    zc = np.array(z, dtype=complex)
    n = tc.shape[0]
    for m in range(n - 1, 0, -1):
        sub = t[m, m - 1]
        if sub == 0.0:
            continue
        l1, l2 = block_eigenvalues(t[m - 1, m - 1], t[m - 1, m], sub, t[m, m])
        mu = l1 - tc[m, m]
        r = math.hypot(abs(mu), abs(sub))
        cs = mu / r
        sn = sub / r
        g = np.array([[cs.conjugate(), sn], [-sn, cs]])
        gh = g.conj().T
        tc[m - 1 : m + 1, m - 1 :] = g @ tc[m - 1 : m + 1, m - 1 :]
        tc[: m + 1, m - 1 : m + 1] = tc[: m + 1, m - 1 : m + 1] @ gh
        zc[:, m - 1 : m + 1] = zc[:, m - 1 : m + 1] @ gh
        tc[m, m - 1] = 0.0
        tc[m - 1, m - 1] = l1
        tc[m, m] = l2
    return tc, zc


def triangular_eigenvectors(t: np.ndarray) -> np.ndarray:
    """Right eigenvectors of an upper-triangular ``t`` by back-substitution.

    Column ``k`` solves ``(T - t_kk I) y = 0`` with ``y_k = 1``. Tiny diagonal
    differences are replaced by a floor so that repeated eigenvalues give
    nearly parallel columns instead of overflow.
    """
    n = t.shape[0]
    y = np.zeros((n, n), dtype=complex)
    tnorm = np.linalg.norm(t)
    for k in range(n):
        lam = t[k, k]
        smin = max(_EPS * max(abs(lam), tnorm), _TINY)
        col = np.zeros(k + 1, dtype=complex)
        col[k] = 1.0
        for j in range(k - 1, -1, -1):
            denom = t[j, j] - lam
            if abs(denom) < smin:
                denom = smin
            col[j] = -(t[j, j + 1 : k + 1] @ col[j + 1 : k + 1]) / denom
            big = abs(col[j])
            if big > _BIG:
                col /= big
        y[: k + 1, k] = col
    return y


def normalize_columns(v: np.ndarray) -> np.ndarray:
    """Unit 2-norm columns; largest-modulus entry (first on ties) made real positive."""
    v = np.array(v, dtype=complex)
    norms = np.linalg.norm(v, axis=0)
    norms[norms == 0.0] = 1.0
    v /= norms
    for k in range(v.shape[1]):
        col = v[:, k]
        i = int(np.argmax(np.abs(col)))
        pivot = col[i]
        if pivot != 0:
            col *= abs(pivot) / pivot
            col[i] = abs(col[i])
    return v


def eig(
    a: np.ndarray,
    balance: bool = False,
    eig_tol: float = EIG_TOL,
    accept_defective: bool = False,
    max_iter: int | None = None,
) -> EigenSystem:
    """Eigendecomposition ``A V = V diag(values)`` of a real square matrix.

    Raises ``NearDefectiveError`` when the relative residual
    ``||AV - V Lambda||_F / ||A||_F`` exceeds ``eig_tol`` or when
    ``sigma_min(V)`` drops below 1e-14. With ``accept_defective=True`` the
    decomposition is returned instead, marked ``accepted=False``.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"eig needs a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    n = a.shape[0]
    if balance:
        d, work = _balance(a)
    else:
        d, work = np.ones(n), a
    t, z = real_schur(work, max_iter=max_iter)
    tc, zc = complex_schur(t, z)
    values = np.diag(tc).copy()
    vectors = zc @ triangular_eigenvectors(tc)
    vectors = d[:, None] * vectors
    vectors = normalize_columns(vectors)

    order = frequency_order(values).permutation
    values = values[order]
    vectors = vectors[:, order]

    sv = svd_values(vectors)
    sigma_max, sigma_min = float(sv[0]), float(sv[-1])
    kappa = sigma_max / sigma_min if sigma_min > 0 else math.inf
    anorm = np.linalg.norm(a)
    resid = np.linalg.norm(a @ vectors - vectors * values)
    residual = float(resid / anorm) if anorm > 0 else float(resid)

    ok = residual <= eig_tol and sigma_min >= SIGMA_MIN_FLOOR
    es = EigenSystem(
        _freeze(values),
        _freeze(vectors),
        sigma_min,
        sigma_max,
        kappa,
        residual,
        balanced=balance,
        accepted=ok,
    )
    if not ok and not accept_defective:
        raise NearDefectiveError(
            f"eigendecomposition is near-defective: kappa(V)={kappa:.3e}, "
            f"residual={residual:.3e} (tolerance {eig_tol:.1e})",
            kappa=kappa,
            residual=residual,
            eigensystem=es,
        )
    return es
