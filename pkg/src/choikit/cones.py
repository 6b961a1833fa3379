"""Membership oracles for the cones

    SP_1 < SP_k < CP < P_k < P_1      (maps M_m -> M_n)
    S_1  < S_k  < PSD < BP_k < BP_1   (their Choi matrices)

Verdicts are sound by construction: ``MEMBER`` is only returned with an
exact certificate (eigen-decomposition, explicit decomposition, or a
cited external theorem recorded in ``detail``), ``NON_MEMBER`` always
carries a witness that can be re-checked from scratch, and everything
else is ``UNKNOWN``.
"""
import enum
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from . import maps as M
from .errors import InvalidK, NotPSD, SingularS
from .forms import form_from_isomorphism, is_symmetric
from .linalg import (
    TOL_PSD,
    BipartiteOperator,
    check_hermitian,
    hermiticity_gap,
    hermitian_eig,
    norm,
    partial_trace,
    partial_transpose,
    rank,
    relative_gap,
    schmidt_rank,
)
from . import sampling

WITNESS_TOL = 1e-8
DEFAULT_BUDGET = 64
MAX_ALTERNATIONS = 200
CONVERGENCE_TOL = 1e-12
DECOMPOSITION_TOL = 1e-7


class Status(str, enum.Enum):
    MEMBER = "Member"
    NON_MEMBER = "NonMember"
    UNKNOWN = "Unknown"


@dataclass
class ConeVerdict:
    status: Status
    cone: str
    k: int = None
    witness: np.ndarray = None
    value: float = None
    detail: str = ""
    certificate: dict = field(default_factory=dict)

    @property
    def is_member(self):
        return self.status is Status.MEMBER

    @property
    def is_non_member(self):
        return self.status is Status.NON_MEMBER


def _check_k(k, m, n):
    if not isinstance(k, (int, np.integer)) or k < 1 or k > min(m, n):
        raise InvalidK(f"k must be an integer in [1, {min(m, n)}], got {k!r}")


def _min_eig(h):
    w, v = hermitian_eig(h)
    return float(w[-1]), v[:, -1]


def _psd_floor(h):
    return -TOL_PSD * max(1.0, norm(h))


def quadratic_value(c, xi):
    xi = np.asarray(xi)
    return complex(xi.conj() @ c @ xi) / float(np.real(xi.conj() @ xi))


# see-saw

def _orthonormal_columns(x):
    q, _ = np.linalg.qr(x)
    return q


def see_saw_min(c, m, n, k, budget=DEFAULT_BUDGET, seed=0,
                max_iter=MAX_ALTERNATIONS, tol=CONVERGENCE_TOL):
    """Minimise <xi|C|xi> over unit xi of Schmidt rank <= k.

    Writes xi = vec(A B^T) with A (m x k), B (n x k) and alternately
    solves the exact eigenproblem in A and in B.  Starts are seeded from
    ``(seed, start_index)`` and run in order; the best value wins, ties go
    to the lowest start index.

    Returns ``(value, xi, start_index)``.
    """
    c = np.ascontiguousarray(c, dtype=np.complex128)
    scale = max(1.0, norm(c))
    best = (np.inf, None, -1)
    for start in range(budget):
        rng = np.random.default_rng([seed, start])
        b = _orthonormal_columns(sampling.complex_normal(rng, (n, k)))
        prev = np.inf
        for _ in range(max_iter):
            w, v = np.linalg.eigh(_kernels.reduce_second(c, b, m, n))
            a = v[:, 0].reshape(m, k)
            q = _orthonormal_columns(a)
            w, v = np.linalg.eigh(_kernels.reduce_first(c, q, m, n))
            val = float(w[0])
            b = v[:, 0].reshape(n, k)
            a = q
            if prev - val < tol * scale:
                break
            prev = val
            b_q, b_r = np.linalg.qr(b)
            # keep xi = A B^T fixed while making B orthonormal
            a = a @ b_r.T
            b = b_q
        xi = (a @ b.T).reshape(-1)
        xi /= np.linalg.norm(xi)
        val = float(np.real(xi.conj() @ c @ xi))
        if val < best[0]:
            best = (val, xi, start)
    return best


def is_k_blockpositive(c, k, budget=DEFAULT_BUDGET, seed=0):
    """Is the Hermitian bipartite operator ``c`` k-block-positive?"""
    m, n = c.dims
    _check_k(k, m, n)
    h = check_hermitian(c.matrix)
    cone = f"BP_{k}"
    lam, vec_min = _min_eig(h)
    if lam >= _psd_floor(h):
        return ConeVerdict(Status.MEMBER, cone, k, value=lam,
                           detail="positive semi-definite, hence k-block-positive",
                           certificate={"kind": "psd", "min_eigenvalue": lam})
    if k == min(m, n):
        return ConeVerdict(Status.NON_MEMBER, cone, k, witness=vec_min, value=lam,
                           detail="negative eigenvalue; Schmidt rank is unconstrained at this k",
                           certificate={"kind": "eigenvector"})
    val, xi, start = see_saw_min(h, m, n, k, budget, seed)
    if val < -WITNESS_TOL * max(1.0, norm(h)):
        return ConeVerdict(Status.NON_MEMBER, cone, k, witness=xi, value=val,
                           detail=f"see-saw witness of Schmidt rank <= {k} (start {start})",
                           certificate={"kind": "see_saw", "start": start})
    return ConeVerdict(Status.UNKNOWN, cone, k, value=val,
                       detail=f"no violation found in {budget} see-saw starts")


def verify_witness(c, xi, k, tol=WITNESS_TOL):
    """Independent re-check of a block-positivity witness."""
    m, n = c.dims
    val = quadratic_value(c.matrix, xi)
    return bool(val.real < -tol * max(1.0, norm(c.matrix)) and schmidt_rank(xi, m, n) <= k)


def _hermiticity_witness(c, budget, seed):
    """Product vector with non-real <xi|C|xi> for a non-Hermitian C."""
    m, n = c.dims
    anti = (c.matrix - c.matrix.conj().T) / 2j
    best = None
    for sign in (1.0, -1.0):
        val, xi, _ = see_saw_min(sign * anti, m, n, 1, budget, seed)
        if best is None or val < best[0]:
            best = (val, xi)
    return best[1], quadratic_value(c.matrix, best[1])


def _is_hermitian(c):
    return hermiticity_gap(c) <= 1e-10 * max(1.0, norm(c))


def _non_hermitian_verdict(c, cone):
    """NonMember with a vector xi for which <xi|C|xi> is not real."""
    anti = (c - c.conj().T) / 2j
    w, v = np.linalg.eigh(anti)
    xi = v[:, 0 if abs(w[0]) > abs(w[-1]) else -1]
    q = quadratic_value(c, xi)
    return ConeVerdict(Status.NON_MEMBER, cone, witness=xi, value=q.real,
                       detail="operator is not Hermitian; <xi|C|xi> is not real",
                       certificate={"kind": "non_hermitian", "imag": q.imag})


def is_cp(phi):
    """Choi's criterion: CP iff the Choi matrix is PSD."""
    c = M.choi(phi).matrix
    if not _is_hermitian(c):
        return _non_hermitian_verdict(c, "CP")
    lam, v = _min_eig(c)
    if lam >= _psd_floor(c):
        return ConeVerdict(Status.MEMBER, "CP", value=lam, detail="Choi matrix is PSD",
                           certificate={"kind": "psd", "min_eigenvalue": lam})
    return ConeVerdict(Status.NON_MEMBER, "CP", witness=v, value=lam,
                       detail="Choi matrix has a negative eigenvalue",
                       certificate={"kind": "eigenvector"})


def is_k_positive(phi, k, budget=DEFAULT_BUDGET, seed=0):
    m, n = phi.dim_in, phi.dim_out
    _check_k(k, m, n)
    c = M.choi(phi)
    if hermiticity_gap(c.matrix) > 1e-10 * max(1.0, norm(c.matrix)):
        xi, val = _hermiticity_witness(c, min(budget, 8), seed)
        return ConeVerdict(Status.NON_MEMBER, f"P_{k}", k, witness=xi, value=val.real,
                           detail="map does not preserve Hermiticity; product witness has "
                                  f"<xi|C|xi> with imaginary part {val.imag:.3e}",
                           certificate={"kind": "non_hermitian", "imag": val.imag})
    v = is_k_blockpositive(c, k, budget, seed)
    v.cone = f"P_{k}"
    return v


def is_copositive_cp(phi):
    """Is phi o t completely positive?"""
    v = is_cp(M.compose(phi, M.transpose_map(phi.dim_in)))
    v.cone = "coCP"
    return v


def is_ppt(c):
    """PSD with PSD partial transpose."""
    if not _is_hermitian(c.matrix):
        return _non_hermitian_verdict(c.matrix, "PPT")
    h = c.matrix
    lam, v = _min_eig(h)
    if lam < _psd_floor(h):
        return ConeVerdict(Status.NON_MEMBER, "PPT", witness=v, value=lam,
                           detail="operator is not PSD", certificate={"kind": "eigenvector"})
    pt = partial_transpose(c, "second").matrix
    lam, v = _min_eig(pt)
    if lam < _psd_floor(pt):
        return ConeVerdict(Status.NON_MEMBER, "PPT", witness=v, value=lam,
                           detail="partial transpose has a negative eigenvalue",
                           certificate={"kind": "partial_transpose_eigenvector"})
    return ConeVerdict(Status.MEMBER, "PPT", value=lam, detail="PSD with PSD partial transpose",
                       certificate={"kind": "psd_pair", "min_pt_eigenvalue": lam})


# Schmidt number

def _reduction_witness(c, k, slot):
    """Eigenpair showing (id (x) R_k)(C) or (R_k (x) id)(C) is not PSD, or None."""
    m, n = c.dims
    if slot == "second":
        out = k * np.kron(partial_trace(c, "second"), np.eye(n)) - c.matrix
    else:
        out = k * np.kron(np.eye(m), partial_trace(c, "first")) - c.matrix
    lam, v = _min_eig(out)
    if lam < -WITNESS_TOL * max(1.0, norm(c.matrix)):
        return lam, v
    return None


def _truncate_schmidt(cols, m, n, k):
    """Best Schmidt-rank-k approximation of every column."""
    blocks = cols.T.reshape(-1, m, n)
    u, s, vh = np.linalg.svd(blocks, full_matrices=False)
    out = np.einsum("rik,rk,rkj->rij", u[:, :, :k], s[:, :k], vh[:, :k, :])
    return out.reshape(-1, m * n).T


def _split_factors(t, m, n, k):
    """Write each column t_p as vec(A_p B_p^T) with A_p: m x k, B_p: n x k."""
    u, s, vh = np.linalg.svd(t.T.reshape(-1, m, n), full_matrices=False)
    r = np.sqrt(s[:, :k])
    return u[:, :, :k] * r[:, None, :], np.swapaxes(vh[:, :k, :], 1, 2) * r[:, None, :]


def _join_factors(a, b):
    return np.einsum("pik,pjk->pij", a, b).reshape(a.shape[0], -1).T


def _polish_factors(h, a, b, max_iter, tol):
    """Levenberg-Marquardt on sum_p t_p t_p^* = H over the factors of t_p.

    The residual is only real-linear in the factors, so the Jacobian is
    taken over real and imaginary parts separately.  Returns the columns
    t_p on success, else None.
    """
    r, m, k = a.shape
    n = b.shape[1]
    d = m * n
    scale = max(1.0, norm(h))
    eye_m, eye_n = np.eye(m), np.eye(n)

    def residual(a, b):
        t = _join_factors(a, b)
        return t @ t.conj().T - h

    f = residual(a, b)
    cost = np.sum(np.abs(f) ** 2)
    mu = 1e-3
    for _ in range(max_iter):
        if norm(f) < tol * scale:
            return _join_factors(a, b)
        t = _join_factors(a, b).T
        # d t_p / d A_p[i, l] = e_i (x) B_p[:, l],  d t_p / d B_p[j, l] = A_p[:, l] (x) e_j
        da = np.einsum("ix,pjl->pilxj", eye_m, b).reshape(r, m * k, d)
        db = np.einsum("pil,jy->pjliy", a, eye_n).reshape(r, n * k, d)
        x = np.einsum("pqa,pb->pqab", np.concatenate([da, db], axis=1), t.conj())
        xh = np.conj(np.swapaxes(x, 2, 3))
        cols = np.concatenate([(x + xh).reshape(-1, d * d), (1j * (x - xh)).reshape(-1, d * d)])
        jac = np.concatenate([cols.real, cols.imag], axis=1).T
        grad = jac.T @ np.concatenate([f.real.ravel(), f.imag.ravel()])
        normal = jac.T @ jac
        while True:
            step = -np.linalg.solve(normal + mu * np.eye(normal.shape[0]), grad)
            half = step.size // 2
            dz = (step[:half] + 1j * step[half:]).reshape(r, -1)
            a2 = a + dz[:, : m * k].reshape(r, m, k)
            b2 = b + dz[:, m * k:].reshape(r, n, k)
            f2 = residual(a2, b2)
            c2 = np.sum(np.abs(f2) ** 2)
            if c2 < cost:
                a, b, f, cost = a2, b2, f2, c2
                mu = max(mu / 3, 1e-12)
                break
            mu *= 4
            if mu > 1e8:
                return None
    return _join_factors(a, b) if norm(f) < tol * scale else None


def decompose_schmidt(c, k, terms=None, max_iter=300, polish_iter=200, restarts=2, seed=0,
                      tol=DECOMPOSITION_TOL):
    """Search for C = sum_p t_p t_p^* with every t_p of Schmidt rank <= k.

    Every decomposition of C into r vectors is L U with L L^* = C and U an
    (rank x r) co-isometry.  Alternates between projecting the columns of
    L U onto Schmidt rank <= k and re-fitting U by a polar decomposition,
    then finishes with a Levenberg-Marquardt polish of the factors, since
    the alternation alone tends to stall close to a solution.
    Returns the vectors as columns, or None if no fit reached ``tol``.
    """
    m, n = c.dims
    h = c.matrix
    w, v = hermitian_eig(h)
    keep = w > 1e-12 * max(1.0, w[0])
    lmat = v[:, keep] * np.sqrt(w[keep])
    rho = lmat.shape[1]
    if rho == 0:
        return np.zeros((m * n, 0), dtype=np.complex128)
    scale = max(1.0, norm(h))
    sizes = [terms] if terms else [rho, 2 * rho, 3 * rho]
    for r in sizes:
        for attempt in range(restarts):
            rng = np.random.default_rng([seed, r, attempt])
            u = np.linalg.qr(sampling.complex_normal(rng, (r, rho)))[0].conj().T
            for it in range(max_iter):
                t = _truncate_schmidt(lmat @ u, m, n, k)
                if it % 10 == 0 and norm(h - t @ t.conj().T) < tol * scale:
                    return t
                p_, _, qh = np.linalg.svd(lmat.conj().T @ t, full_matrices=False)
                u = p_ @ qh
            a, b = _split_factors(t, m, n, k)
            t = _polish_factors(h, a, b, polish_iter, tol)
            if t is not None:
                return t
    return None


def verify_decomposition(c, t, k, tol=DECOMPOSITION_TOL):
    m, n = c.dims
    if t.shape[1] and max(schmidt_rank(t[:, p], m, n) for p in range(t.shape[1])) > k:
        return False
    return norm(c.matrix - t @ t.conj().T) < tol * max(1.0, norm(c.matrix))


@dataclass
class SchmidtBounds:
    lower: int
    upper: int
    lower_certificate: dict
    upper_certificate: dict
    decomposition: np.ndarray = None
    lower_witness: np.ndarray = None


def schmidt_number_bounds(c, budget=DEFAULT_BUDGET, seed=0):
    """Certified bounds lower <= SN(C) <= upper for a PSD operator."""
    m, n = c.dims
    h = check_hermitian(c.matrix)
    w, vecs = hermitian_eig(h)
    if w[-1] < _psd_floor(h):
        raise NotPSD(f"minimum eigenvalue {w[-1]:.3e}")
    dmax = min(m, n)
    lower, lower_cert, lower_witness = 1, {"kind": "trivial"}, None
    upper, upper_cert, decomposition = dmax, {"kind": "trivial", "detail": "SN <= min(m, n)"}, None

    if rank(h, 1e-10) == 1:
        sr = schmidt_rank(vecs[:, 0], m, n)
        cert = {"kind": "rank_one", "schmidt_rank": sr}
        t = (vecs[:, 0] * np.sqrt(w[0]))[:, None]
        return SchmidtBounds(sr, sr, cert, cert, t, vecs[:, 0])

    lam, v = _min_eig(partial_transpose(c, "second").matrix)
    if lam < -WITNESS_TOL * max(1.0, norm(h)):
        lower, lower_witness = 2, v
        lower_cert = {"kind": "partial_transpose", "min_eigenvalue": lam}
    for k in range(1, dmax):
        for slot in ("second", "first"):
            hit = _reduction_witness(c, k, slot)
            if hit is not None and k + 1 > lower:
                lower, lower_witness = k + 1, hit[1]
                lower_cert = {"kind": "reduction_map", "level": k, "slot": slot,
                              "min_eigenvalue": hit[0]}
    for k in range(lower, dmax):
        t = decompose_schmidt(c, k, seed=seed)
        if t is not None and verify_decomposition(c, t, k):
            upper, decomposition = k, t
            upper_cert = {"kind": "decomposition", "terms": int(t.shape[1]), "level": k}
            break
    return SchmidtBounds(lower, upper, lower_cert, upper_cert, decomposition, lower_witness)


def _witness_operator(c, certificate):
    m, n = c.dims
    if certificate["kind"] == "partial_transpose":
        return partial_transpose(c, "second").matrix
    k = certificate["level"]
    if certificate["slot"] == "second":
        return k * np.kron(partial_trace(c, "second"), np.eye(n)) - c.matrix
    return k * np.kron(np.eye(m), partial_trace(c, "first")) - c.matrix


def verify_schmidt_witness(c, xi, certificate, tol=WITNESS_TOL):
    """Re-check a Schmidt-number lower bound and return the bound it certifies.

    For a test-map certificate W (partial transpose, which is positive, or
    R_k, which is k-positive), <xi| W(C) |xi> < 0 shows SN(C) > 1,
    respectively SN(C) > k.  For a rank-one C = c xi xi^*, the bound is the
    Schmidt rank of xi.  Returns 1 when nothing is certified.
    """
    m, n = c.dims
    kind = certificate.get("kind")
    scale = max(1.0, norm(c.matrix))
    if kind == "rank_one":
        xi = np.asarray(xi) / np.linalg.norm(xi)
        lam = quadratic_value(c.matrix, xi).real
        if norm(c.matrix - lam * np.outer(xi, xi.conj())) > 1e-8 * scale:
            return 1
        return schmidt_rank(xi, m, n)
    if kind not in ("partial_transpose", "reduction_map"):
        return 1
    if quadratic_value(_witness_operator(c, certificate), xi).real >= -tol * scale:
        return 1
    return 2 if kind == "partial_transpose" else certificate["level"] + 1


def _ppt_regime(m, n):
    return sorted((m, n)) in ([1, 1], [1, 2], [2, 2], [2, 3]) or min(m, n) == 1


def is_k_superpositive(phi, k, budget=DEFAULT_BUDGET, seed=0):
    m, n = phi.dim_in, phi.dim_out
    _check_k(k, m, n)
    cone = f"SP_{k}"
    cp = is_cp(phi)
    if cp.is_non_member:
        return ConeVerdict(Status.NON_MEMBER, cone, k, witness=cp.witness, value=cp.value,
                           detail="not completely positive: " + cp.detail,
                           certificate=cp.certificate)
    if k == min(m, n):
        return ConeVerdict(Status.MEMBER, cone, k, value=cp.value,
                           detail="k = min(m, n), where SP_k = CP", certificate=cp.certificate)
    c = M.choi(phi)
    bounds = schmidt_number_bounds(c, budget, seed)
    if bounds.lower > k:
        return ConeVerdict(Status.NON_MEMBER, cone, k, witness=bounds.lower_witness,
                           value=float(bounds.lower), detail=f"Schmidt number >= {bounds.lower}",
                           certificate=bounds.lower_certificate)
    if bounds.upper <= k:
        return ConeVerdict(Status.MEMBER, cone, k, value=float(bounds.upper),
                           detail=f"Schmidt number <= {bounds.upper}",
                           certificate=bounds.upper_certificate)
    if k == 1 and _ppt_regime(m, n):
        # lower == 1 here, so the partial transpose is PSD
        return ConeVerdict(Status.MEMBER, cone, k, value=1.0,
                           detail="PPT in dimensions 2x2 / 2x3, separable by the Horodecki theorem "
                                  "(external result)",
                           certificate={"kind": "ppt_external_theorem"})
    return ConeVerdict(Status.UNKNOWN, cone, k, value=float(bounds.upper),
                       detail=f"Schmidt number in [{bounds.lower}, {bounds.upper}]")


# structural checks

def detect_ad(sigma, tol=1e-8):
    """Return s with sigma = Ad_s, or None."""
    if not sigma.is_square:
        return None
    m = sigma.dim_in
    c = M.choi(sigma).matrix
    scale = max(1.0, norm(c))
    if hermiticity_gap(c) > tol * scale:
        return None
    w, v = np.linalg.eigh(0.5 * (c + c.conj().T))
    top = w[-1]
    if top <= tol * scale or w[0] < -tol * scale or (m > 1 and w[-2] > tol * scale):
        return None
    # C_{Ad_s} = x x^* with x = vec(conj(s))
    s = np.conj(np.sqrt(top) * v[:, -1]).reshape(m, m)
    if rank(s, 1e-10) != m:
        return None
    big = np.unravel_index(np.argmax(np.abs(s)), s.shape)
    s = s * (np.abs(s[big]) / s[big])
    if relative_gap(M.ad_map(s).transfer, sigma.transfer) > tol:
        return None
    return s


def _certified_samples(rng, m, n, k, trials):
    samples = []
    if m == n:
        # id is k-positive and C^sigma_id = C_sigma
        samples.append(("P", M.identity_map(m), {"kind": "identity"}))
    for _ in range(trials):
        phi, cert = sampling.random_cp(rng, m, n)
        samples.append(("P", phi, cert))
        phi, cert = sampling.random_k_positive(rng, m, n, k)
        samples.append(("P", phi, cert))
        phi, cert = sampling.random_spk(rng, m, n, k)
        samples.append(("SP", phi, cert))
    return samples


def check_theorem43(sigma, k, trials=10, budget=DEFAULT_BUDGET, seed=0, n=None):
    """Compare k-positivity of sigma, sigma^{-1} with the behaviour of phi -> C^sigma_phi.

    When both are k-positive, no certified P_k sample may have a
    C^sigma_phi outside BP_k and no SP_k sample may have Schmidt number
    above k; any such sample is an inconsistency.  Otherwise a violating
    sample is expected and its presence is reported.
    """
    M.as_isomorphism(sigma)
    m = sigma.dim_in
    n = m if n is None else n
    _check_k(k, m, n)
    inv = M.inverse(sigma)
    v_sigma = is_k_positive(sigma, k, budget, seed)
    v_inv = is_k_positive(inv, k, budget, seed)
    iso_ok = not (v_sigma.is_non_member or v_inv.is_non_member)
    rng = np.random.default_rng(seed)
    violations = []
    checked = 0
    for family, phi, cert in _certified_samples(rng, m, n, k, trials):
        c = M.choi_sigma(phi, sigma)
        checked += 1
        if family == "P":
            herm = _is_hermitian(c.matrix)
            if not herm:
                violations.append({"family": "P", "certificate": cert, "reason": "non-Hermitian C^sigma"})
                continue
            v = is_k_blockpositive(c, k, budget, seed)
            if v.is_non_member and verify_witness(c, v.witness, k):
                violations.append({"family": "P", "certificate": cert,
                                   "reason": "C^sigma not k-block-positive", "value": v.value})
        else:
            herm = _is_hermitian(c.matrix)
            if not herm:
                violations.append({"family": "SP", "certificate": cert, "reason": "non-Hermitian C^sigma"})
                continue
            lam, _ = _min_eig(c.matrix)
            if lam < _psd_floor(c.matrix):
                violations.append({"family": "SP", "certificate": cert,
                                   "reason": "C^sigma not PSD", "value": lam})
                continue
            b = schmidt_number_bounds(c, budget, seed)
            if b.lower > k:
                violations.append({"family": "SP", "certificate": cert,
                                   "reason": f"Schmidt number >= {b.lower}"})
    if iso_ok:
        status = "consistent" if not violations else "inconsistent"
    else:
        status = "predicted_failure_found" if violations else "predicted_failure_not_found"
    return {
        "k": int(k),
        "sigma_k_positive": v_sigma.status.value,
        "sigma_inverse_k_positive": v_inv.status.value,
        "condition_holds": iso_ok,
        "samples": checked,
        "violations": violations,
        "status": status,
        "passed": status in ("consistent", "predicted_failure_found"),
    }


def _is_symmetric_matrix(s, sign, tol):
    return bool(np.max(np.abs(s - sign * s.T)) <= tol * max(1.0, float(np.max(np.abs(s)))))


def check_prop46(s, tol=1e-10):
    """s = +-s^T  <=>  the form of Ad_s is symmetric  <=>  (Ad_s)^T = Ad_s."""
    s = np.asarray(s, dtype=np.complex128)
    if s.ndim != 2 or s.shape[0] != s.shape[1] or rank(s, 1e-10) != s.shape[0]:
        raise SingularS("s must be a nonsingular square matrix")
    ad = M.ad_map(s)
    sym = _is_symmetric_matrix(s, 1, tol)
    anti = _is_symmetric_matrix(s, -1, tol)
    form_sym = is_symmetric(form_from_isomorphism(ad.transfer), tol)
    ad_sym = relative_gap(M.sigma_transpose(ad).transfer, ad.transfer) <= tol
    expected = sym or anti
    return {
        "s_symmetric": sym,
        "s_antisymmetric": anti,
        "form_symmetric": form_sym,
        "ad_transpose_symmetric": ad_sym,
        "passed": form_sym == expected and ad_sym == expected,
    }
