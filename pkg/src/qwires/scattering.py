"""Multi-lead S-matrix solver for piecewise-constant 1D networks.

The stationary wavefunction on an edge with potential V is

    psi(x) = A e^{ikx} + B e^{-ikx},        k = sqrt(E - V),

with the branch Im(k) >= 0 (and Re(k) > 0 when k is real), so evanescent
segments decay through the same ansatz with k = i*kappa.  On a lead
attached at x = 0 and pointing away from the network the ansatz is

    psi_l(x) = delta_{l,gamma} e^{-ikx} + s_{l,gamma} e^{+ikx}.

Matching conditions at every vertex: a single common value psi_v across
all incident branches, and the Kirchhoff current rule

    sum of outward derivatives = delta_strength * psi_v.

Unknowns {psi_v} + {A_e, B_e} + {s_l} give one dense complex system; it is
factorized once per energy and solved for all incident leads at once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import lu_factor, lu_solve
from scipy.linalg import lapack

from .errors import QwiresError
from .network import Network
from .units import E0, H

EPS_THRESHOLD = 1e-9
COND_LIMIT = 1e12


def wavenumber(E: float, V: float, eps_threshold: float = EPS_THRESHOLD) -> complex:
    """k = sqrt(E - V) on the branch Im(k) >= 0, Re(k) > 0 when real.

    Raises NEAR_THRESHOLD when |E - V| < eps_threshold: the exponential
    ansatz degenerates at a band edge, so the caller must shift E instead.
    """
    d = E - V
    if abs(d) < eps_threshold:
        raise QwiresError("NEAR_THRESHOLD",
                          f"|E - V| = {abs(d):.3e} below {eps_threshold:.1e}; "
                          "shift the energy away from the band edge")
    if d > 0.0:
        return complex(math.sqrt(d), 0.0)
    return complex(0.0, math.sqrt(-d))


@dataclass(frozen=True)
class SMatrix:
    energy: float
    channel_order: tuple[str, ...]
    elements: np.ndarray  # complex, [alpha_index, gamma_index]

    def index(self, lead_id: str) -> int:
        try:
            return self.channel_order.index(lead_id)
        except ValueError:
            raise QwiresError("UNKNOWN_CHANNEL",
                              f"lead {lead_id!r} not in channel order "
                              f"{self.channel_order}") from None

    def element(self, alpha: str, gamma: str) -> complex:
        """s_{alpha,gamma}: amplitude from incident lead gamma to lead alpha."""
        return complex(self.elements[self.index(alpha), self.index(gamma)])


@dataclass(frozen=True)
class ScatteringSolution:
    network: Network
    smatrix: SMatrix
    edge_wavenumbers: dict
    # gamma -> edge id -> (A, B); amplitude pair of A e^{ikx} + B e^{-ikx}
    edge_amplitudes: dict
    # gamma -> vertex id -> psi at the vertex
    vertex_values: dict


def solve_scattering(net: Network, E: float,
                     eps_threshold: float = EPS_THRESHOLD,
                     cond_limit: float = COND_LIMIT) -> ScatteringSolution:
    """Solve the matching system of ``net`` at energy E for every incident
    lead, returning the full S-matrix and the interior amplitudes.

    E must lie above the lead band bottom (E > 0) and away from every edge
    potential by ``eps_threshold``.  A reciprocal condition number below
    1/cond_limit raises SINGULAR_SYSTEM rather than returning inaccurate
    amplitudes (extremely opaque evanescent segments can do this).
    """
    if E < 0.0:
        raise QwiresError("ENERGY_BELOW_LEAD_BAND",
                          f"E = {E} is below the lead band bottom (0)")
    k_lead = wavenumber(E, 0.0, eps_threshold)
    edge_k = {e.id: wavenumber(E, e.potential, eps_threshold) for e in net.edges}

    n_v, n_e, n_l = len(net.vertices), len(net.edges), len(net.leads)
    n = n_v + 2 * n_e + n_l
    vidx = {v.id: i for i, v in enumerate(net.vertices)}
    eidx = {e.id: n_v + 2 * i for i, e in enumerate(net.edges)}  # A at eidx, B at eidx+1
    lidx = {l.id: n_v + 2 * n_e + i for i, l in enumerate(net.leads)}

    M = np.zeros((n, n), dtype=complex)
    rhs = np.zeros((n, n_l), dtype=complex)

    row = 0
    # psi continuity at both edge endpoints
    for e in net.edges:
        k = edge_k[e.id]
        a, b = eidx[e.id], eidx[e.id] + 1
        u, w = e.endpoints
        M[row, a] = 1.0
        M[row, b] = 1.0
        M[row, vidx[u]] = -1.0
        row += 1
        ekl = np.exp(1j * k * e.length)
        M[row, a] = ekl
        M[row, b] = 1.0 / ekl
        M[row, vidx[w]] = -1.0
        row += 1
    # psi continuity at each lead attachment
    for gi, l in enumerate(net.leads):
        M[row, lidx[l.id]] = 1.0
        M[row, vidx[l.attached_vertex]] = -1.0
        rhs[row, gi] = -1.0
        row += 1
    # Kirchhoff current rule per vertex
    for v in net.vertices:
        r = row + vidx[v.id]
        M[r, vidx[v.id]] = -v.delta_strength
        for e in net.edges:
            k = edge_k[e.id]
            a, b = eidx[e.id], eidx[e.id] + 1
            if e.endpoints[0] == v.id:
                M[r, a] += 1j * k
                M[r, b] += -1j * k
            if e.endpoints[1] == v.id:
                ekl = np.exp(1j * k * e.length)
                M[r, a] += -1j * k * ekl
                M[r, b] += 1j * k / ekl
        for gi, l in enumerate(net.leads):
            if l.attached_vertex == v.id:
                M[r, lidx[l.id]] += 1j * k_lead
                rhs[r, gi] += 1j * k_lead

    anorm = np.linalg.norm(M, 1)
    lu, piv = lu_factor(M)
    rcond, info = lapack.zgecon(lu, anorm, norm="1")
    if info != 0 or not np.isfinite(rcond) or rcond < 1.0 / cond_limit:
        raise QwiresError(
            "SINGULAR_SYSTEM",
            f"matching system at E = {E} has condition estimate "
            f"{(1.0 / rcond if rcond > 0 else math.inf):.3e} "
            f"(limit {cond_limit:.1e}); shift E or shorten evanescent segments")
    x = lu_solve((lu, piv), rhs)

    order = tuple(l.id for l in net.leads)
    elements = np.empty((n_l, n_l), dtype=complex)
    for ai, l in enumerate(net.leads):
        elements[ai, :] = x[lidx[l.id], :]
    elements.setflags(write=False)
    smat = SMatrix(float(E), order, elements)

    edge_amplitudes = {}
    vertex_values = {}
    for gi, lg in enumerate(net.leads):
        edge_amplitudes[lg.id] = {
            e.id: (complex(x[eidx[e.id], gi]), complex(x[eidx[e.id] + 1, gi]))
            for e in net.edges}
        vertex_values[lg.id] = {
            v.id: complex(x[vidx[v.id], gi]) for v in net.vertices}

    return ScatteringSolution(net, smat, edge_k, edge_amplitudes, vertex_values)


def wavefunction_at(sol: ScatteringSolution, gamma: str, edge: str, x):
    """psi_gamma at position x (scalar or array) along an edge, measured
    from the edge's first endpoint."""
    e = sol.network.edge(edge)
    xs = np.asarray(x, dtype=float)
    if np.any(xs < 0.0) or np.any(xs > e.length):
        raise QwiresError("POSITION_OUT_OF_RANGE",
                          f"x outside [0, {e.length}] on edge {edge!r}")
    if gamma not in sol.smatrix.channel_order:
        raise QwiresError("UNKNOWN_CHANNEL", f"no incident lead {gamma!r}")
    a, b = sol.edge_amplitudes[gamma][edge]
    k = sol.edge_wavenumbers[edge]
    val = a * np.exp(1j * k * xs) + b * np.exp(-1j * k * xs)
    return complex(val) if np.isscalar(x) or xs.ndim == 0 else val


def unitarity_defect(S: SMatrix) -> float:
    """Max-norm of S^dagger S - I; ~1e-14 for real potentials, all open."""
    m = S.elements
    d = m.conj().T @ m - np.eye(m.shape[0])
    return float(np.max(np.abs(d)))


def reciprocity_defect(S: SMatrix) -> float:
    """Max-norm of S - S^T (time-reversal symmetry, no magnetic field)."""
    return float(np.max(np.abs(S.elements - S.elements.T)))


def coherent_current(S: SMatrix, alpha: str, gamma: str) -> float:
    """Coherent current from gamma to alpha per energy window:
    (e0/h) |s_{alpha,gamma}|**2 = |s|**2 / (2*pi) in fixed units."""
    s = S.element(alpha, gamma)
    return E0 / H * (s.real ** 2 + s.imag ** 2)
