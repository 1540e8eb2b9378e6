"""Polar and QR decompositions of GL(n, C) as common transversals of U(n).

g = u·p (p = sqrt(g*g)) picks the positive matrix representing the right
coset U(n)·g, and g = p'·u (p' = sqrt(g g*)) picks the one representing the
left coset g·U(n). QR and RQ with positive diagonal do the same with
upper triangular matrices.

The unitary polar factor comes from a scaled Newton iteration. Hermitian
square roots come from a cyclic Jacobi eigensolver. These are two separate
routes to p, and they are cross-checked against each other.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConditioningError, InputError, VerificationError

DEFAULT_TOL = 1e-10
MAX_CONDITION = 1e6
NEWTON_TOL = 1e-14
NEWTON_MAX_ITER = 100


def as_complex_matrix(g) -> np.ndarray:
    try:
        a = np.array(g, dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise InputError(f"matrix entries must be numeric: {exc}") from None
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise InputError(f"expected a nonempty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InputError("matrix has non-finite entries")
    return a


def condition_estimate(g: np.ndarray) -> float:
    """‖g‖₁·‖g⁻¹‖₁; infinite for singular input."""
    try:
        ginv = np.linalg.inv(g)
    except np.linalg.LinAlgError:
        return float("inf")
    return float(np.linalg.norm(g, 1) * np.linalg.norm(ginv, 1))


def _require_invertible(g: np.ndarray, max_cond: float = MAX_CONDITION) -> float:
    cond = condition_estimate(g)
    if not cond <= max_cond:
        raise ConditioningError(f"condition estimate {cond:.3g} exceeds {max_cond:.3g}")
    return cond


def _norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a, 2))


def _adj(a: np.ndarray) -> np.ndarray:
    return a.conj().T


# Hermitian eigensolver


def jacobi_eigh(a, max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns ascending eigenvalues ``w`` and unitary ``v`` with a ≈ v·diag(w)·v*.
    """
    a = as_complex_matrix(a)
    a = (a + _adj(a)) / 2
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    scale = np.linalg.norm(a)
    if scale == 0:
        return np.zeros(n), v
    thresh = np.finfo(float).eps * scale
    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= thresh:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                phase = apq / mag
                tau = (a[q, q].real - a[p, p].real) / (2 * mag)
                if abs(tau) > 1e150:
                    t = 1 / (2 * tau)
                else:
                    t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1 + tau * tau))
                c = 1 / np.sqrt(1 + t * t)
                s = t * c
                # diag(1, conj(phase)) makes the pivot real; then a real rotation kills it
                rot = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ rot
                a[idx, :] = _adj(rot) @ a[idx, :]
                v[:, idx] = v[:, idx] @ rot
                a[p, q] = a[q, p] = 0
        np.fill_diagonal(a, np.diag(a).real)
    else:
        raise VerificationError("Jacobi iteration did not converge")
    w = np.diag(a).real.copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def hermitian_sqrt(a) -> np.ndarray:
    """Positive square root of a Hermitian positive definite matrix."""
    w, v = jacobi_eigh(a)
    if w[0] <= 0:
        raise ConditioningError(f"matrix is not positive definite (min eigenvalue {w[0]:.3g})")
    return (v * np.sqrt(w)) @ _adj(v)


def min_eigenvalue(a) -> float:
    return float(jacobi_eigh(a)[0][0])


# Newton iteration for the unitary polar factor


def newton_unitary_factor(g, tol: float = NEWTON_TOL, max_iter: int = NEWTON_MAX_ITER) -> tuple[np.ndarray, int]:
    """Unitary polar factor via u <- (γu + (γu)^-*)/2 with Frobenius-norm scaling γ.

    Scaling is dropped once successive iterates agree to 1e-2, after which
    convergence is quadratic. Returns the factor and the iteration count.
    """
    x = as_complex_matrix(g)
    scaled = True
    for it in range(1, max_iter + 1):
        xinv = np.linalg.inv(x)
        if scaled:
            gamma = np.sqrt(np.linalg.norm(xinv) / np.linalg.norm(x))
        else:
            gamma = 1.0
        x_new = (gamma * x + _adj(xinv) / gamma) / 2
        diff = np.linalg.norm(x_new - x) / np.linalg.norm(x_new)
        x = x_new
        if diff <= tol:
            return x, it
        if diff < 1e-2:
            scaled = False
    raise VerificationError(f"Newton polar iteration did not reach {tol:g} in {max_iter} steps")


# Results


@dataclass
class DecompositionResult:
    factor1: np.ndarray
    factor2: np.ndarray
    residual: float
    certs: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)  # name -> bool

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def failed(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]


def _unitarity_defect(u: np.ndarray) -> float:
    return _norm(_adj(u) @ u - np.eye(u.shape[0]))


def _positive_factor_certs(p_raw: np.ndarray) -> tuple[np.ndarray, dict]:
    scale = _norm(p_raw)
    herm_defect = _norm(p_raw - _adj(p_raw)) / scale
    p = (p_raw + _adj(p_raw)) / 2
    lam = min_eigenvalue(p)
    return p, {"hermitian_defect": herm_defect, "min_eigenvalue": lam, "positivity_margin": lam / scale}


def polar_decompose(g, tol: float = DEFAULT_TOL) -> DecompositionResult:
    """g = u·p with u unitary and p positive definite (factor1 = u, factor2 = p)."""
    g = as_complex_matrix(g)
    cond = _require_invertible(g)
    u, iters = newton_unitary_factor(g)
    p, certs = _positive_factor_certs(_adj(u) @ g)
    gn = _norm(g)
    residual = _norm(g - u @ p) / gn
    certs.update(
        condition=cond,
        newton_iterations=iters,
        unitarity_defect=_unitarity_defect(u),
        uniqueness_gap=_norm(p - hermitian_sqrt(_adj(g) @ g)) / _norm(p),
    )
    checks = {
        "residual": residual <= tol,
        "unitarity": certs["unitarity_defect"] <= tol,
        "hermitian": certs["hermitian_defect"] <= tol,
        "positive": certs["min_eigenvalue"] > 0,
        "uniqueness": certs["uniqueness_gap"] <= 10 * tol,
    }
    return DecompositionResult(u, p, residual, certs, checks)


def polar_decompose_right(g, tol: float = DEFAULT_TOL) -> DecompositionResult:
    """g = p'·u' with p' = sqrt(g g*) (factor1 = p', factor2 = u')."""
    g = as_complex_matrix(g)
    left = polar_decompose(g, tol)
    u, p = left.factor1, left.factor2
    p_right, certs = _positive_factor_certs(g @ _adj(u))
    u_right = u
    gn = _norm(g)
    residual = _norm(g - p_right @ u_right) / gn
    pn = _norm(p_right)
    certs.update(
        condition=left.certs["condition"],
        unitarity_defect=_unitarity_defect(u_right),
        uniqueness_gap=_norm(p_right - hermitian_sqrt(g @ _adj(g))) / pn,
        unitary_consistency=_norm(u_right - u),
        conjugation_consistency=_norm(p_right - u @ p @ _adj(u)) / pn,
    )
    checks = {
        "residual": residual <= tol,
        "unitarity": certs["unitarity_defect"] <= tol,
        "hermitian": certs["hermitian_defect"] <= tol,
        "positive": certs["min_eigenvalue"] > 0,
        "uniqueness": certs["uniqueness_gap"] <= 10 * tol,
        "unitary_consistency": certs["unitary_consistency"] <= 10 * tol,
        "conjugation_consistency": certs["conjugation_consistency"] <= 10 * tol,
    }
    return DecompositionResult(p_right, u_right, residual, certs, checks)


def householder_qr(g) -> tuple[np.ndarray, np.ndarray, float]:
    """Raw Householder QR. Returns (q, r, triangularity defect before zeroing)."""
    r = as_complex_matrix(g).copy()
    n = r.shape[0]
    q = np.eye(n, dtype=np.complex128)
    for k in range(n - 1):
        x = r[k:, k]
        normx = np.linalg.norm(x)
        if normx == 0:
            continue
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        v = x.copy()
        v[0] += phase * normx
        v /= np.linalg.norm(v)
        r[k:, :] -= 2 * np.outer(v, v.conj() @ r[k:, :])
        q[:, k:] -= 2 * np.outer(q[:, k:] @ v, v.conj())
    lower = np.tril(r, -1)
    defect = _norm(lower) / _norm(r)
    return q, r - lower, defect


def _positive_diagonal(q: np.ndarray, r: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    d = np.diag(r)
    phases = np.where(d != 0, d / np.where(d != 0, np.abs(d), 1), 1)
    r = phases.conj()[:, None] * r
    q = q * phases[None, :]
    np.fill_diagonal(r, np.abs(np.diag(r)))
    return q, r


def _triangular_certs(r: np.ndarray) -> dict:
    d = np.diag(r)
    return {
        "min_diagonal": float(np.min(d.real)),
        "diagonal_imag": float(np.max(np.abs(d.imag))),
    }


def qr_positive(g, tol: float = DEFAULT_TOL) -> DecompositionResult:
    """g = q·r, q unitary, r upper triangular with positive real diagonal."""
    g = as_complex_matrix(g)
    cond = _require_invertible(g)
    q, r, tri = householder_qr(g)
    q, r = _positive_diagonal(q, r)
    residual = _norm(g - q @ r) / _norm(g)
    certs = {"condition": cond, "unitarity_defect": _unitarity_defect(q), "triangularity_defect": tri}
    certs.update(_triangular_certs(r))
    checks = {
        "residual": residual <= tol,
        "unitarity": certs["unitarity_defect"] <= tol,
        "triangular": tri <= tol,
        "positive_diagonal": certs["min_diagonal"] > 0 and certs["diagonal_imag"] == 0,
    }
    return DecompositionResult(q, r, residual, certs, checks)


def rq_positive(g, tol: float = DEFAULT_TOL) -> DecompositionResult:
    """g = r·u with r upper triangular (positive diagonal) and u unitary.

    With J the exchange matrix, QR of (J g)* = Q R gives g = (J R* J)(J Q*).
    """
    g = as_complex_matrix(g)
    n = g.shape[0]
    J = np.eye(n)[::-1]
    inner = qr_positive(_adj(J @ g), tol)
    r = J @ _adj(inner.factor2) @ J
    u = J @ _adj(inner.factor1)
    residual = _norm(g - r @ u) / _norm(g)
    certs = {
        "condition": inner.certs["condition"],
        "unitarity_defect": _unitarity_defect(u),
        "triangularity_defect": inner.certs["triangularity_defect"],
    }
    certs.update(_triangular_certs(r))
    checks = {
        "residual": residual <= tol,
        "unitarity": certs["unitarity_defect"] <= tol,
        "triangular": certs["triangularity_defect"] <= tol and not np.any(np.tril(r, -1)),
        "positive_diagonal": certs["min_diagonal"] > 0 and certs["diagonal_imag"] == 0,
    }
    return DecompositionResult(r, u, residual, certs, checks)


@dataclass
class TransversalCertificate:
    mode: str
    left_element: np.ndarray   # representative of g·U(n)
    right_element: np.ndarray  # representative of U(n)·g
    certs: dict
    checks: dict

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def transversal_certificate(g, mode: str = "polar", tol: float = DEFAULT_TOL) -> TransversalCertificate:
    """The transversal elements of the left and right U(n)-cosets of g.

    Each element is certified to lie in the transversal set (positive
    definite, or upper triangular with positive diagonal) and to reproduce
    the coset through an explicit unitary witness w: g = element·w for the
    left coset, g = w·element for the right one.
    """
    g = as_complex_matrix(g)
    if mode == "polar":
        right = polar_decompose(g, tol)   # g = u p
        left = polar_decompose_right(g, tol)  # g = p' u
        right_el, right_w = right.factor2, right.factor1
        left_el, left_w = left.factor1, left.factor2
    elif mode == "iwasawa":
        right = qr_positive(g, tol)   # g = q r
        left = rq_positive(g, tol)    # g = r' u
        right_el, right_w = right.factor2, right.factor1
        left_el, left_w = left.factor1, left.factor2
    else:
        raise InputError(f"unknown mode {mode!r}; expected 'polar' or 'iwasawa'")
    gn = _norm(g)
    certs = {
        "left_coset_residual": _norm(g - left_el @ left_w) / gn,
        "right_coset_residual": _norm(g - right_w @ right_el) / gn,
        "left_witness_unitarity": _unitarity_defect(left_w),
        "right_witness_unitarity": _unitarity_defect(right_w),
    }
    checks = {
        "left_in_coset": certs["left_coset_residual"] <= tol and certs["left_witness_unitarity"] <= tol,
        "right_in_coset": certs["right_coset_residual"] <= tol and certs["right_witness_unitarity"] <= tol,
    }
    for side, res in (("left", left), ("right", right)):
        for name, passed in res.checks.items():
            checks[f"{side}_{name}"] = passed
    return TransversalCertificate(mode, left_el, right_el, certs, checks)


def random_complex_matrix(n: int, rng: np.random.Generator, max_cond: float = MAX_CONDITION) -> np.ndarray:
    """Standard complex Gaussian matrix, redrawn until its condition estimate is <= max_cond."""
    for _ in range(1000):
        g = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
        if condition_estimate(g) <= max_cond:
            return g
    raise ConditioningError("could not draw a well-conditioned matrix")


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary from the positive-diagonal QR of a Gaussian matrix."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r, _ = householder_qr(z)
    q, _ = _positive_diagonal(q, r)
    return q
