"""Quantum-network data model: edges, vertices, leads, presets, probes.

A network is a connected graph of finite 1D segments ("edges"), each with
a length and a constant potential, joined at vertices that may carry a
delta potential, plus semi-infinite leads (zero potential) attached to
vertices.  Lead declaration order fixes the S-matrix channel order.

Networks are immutable; every mutating operation returns a fresh value,
so they can be shared read-only across scan workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import QwiresError


@dataclass(frozen=True)
class Edge:
    id: str
    endpoints: tuple[str, str]
    length: float
    potential: float = 0.0


@dataclass(frozen=True)
class Vertex:
    id: str
    delta_strength: float = 0.0


@dataclass(frozen=True)
class Lead:
    id: str
    attached_vertex: str


@dataclass(frozen=True)
class Network:
    edges: tuple[Edge, ...]
    vertices: tuple[Vertex, ...]
    leads: tuple[Lead, ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "leads", tuple(self.leads))

    @property
    def channel_order(self) -> tuple[str, ...]:
        """Lead ids in declaration order; this is the S-matrix ordering."""
        return tuple(l.id for l in self.leads)

    def edge(self, edge_id: str) -> Edge:
        for e in self.edges:
            if e.id == edge_id:
                return e
        raise QwiresError("UNKNOWN_EDGE", f"no edge with id {edge_id!r}")

    def vertex(self, vertex_id: str) -> Vertex:
        for v in self.vertices:
            if v.id == vertex_id:
                return v
        raise QwiresError("UNKNOWN_VERTEX", f"no vertex with id {vertex_id!r}")

    def lead(self, lead_id: str) -> Lead:
        for l in self.leads:
            if l.id == lead_id:
                return l
        raise QwiresError("UNKNOWN_CHANNEL", f"no lead with id {lead_id!r}")


@dataclass(frozen=True)
class Diagnostic:
    """One violated network invariant; ``code`` is machine-readable."""
    code: str
    subject: str
    message: str


def validate_network(net: Network) -> list[Diagnostic]:
    """Check every structural invariant; an empty list means valid.

    Violations are reported as diagnostics rather than raised, so a caller
    can show all of them at once.
    """
    out = []

    def bad(code, subject, message):
        out.append(Diagnostic(code, subject, message))

    seen = set()
    for v in net.vertices:
        if v.id in seen:
            bad("DUPLICATE_VERTEX_ID", v.id, "vertex id declared twice")
        seen.add(v.id)
    vertex_ids = {v.id for v in net.vertices}

    seen = set()
    endpoint_sets = set()
    for e in net.edges:
        if e.id in seen:
            bad("DUPLICATE_EDGE_ID", e.id, "edge id declared twice")
        seen.add(e.id)
        if not (e.length > 0.0) or not math.isfinite(e.length):
            bad("EDGE_LENGTH_NONPOSITIVE", e.id,
                f"edge length must be positive, got {e.length}")
        for vid in e.endpoints:
            if vid not in vertex_ids:
                bad("EDGE_ENDPOINT_UNKNOWN", e.id, f"endpoint {vid!r} undeclared")
        if e.endpoints[0] == e.endpoints[1]:
            bad("EDGE_LOOP", e.id, "loop edges are not supported")
        key = frozenset(e.endpoints)
        if key in endpoint_sets and len(key) == 2:
            bad("EDGE_PARALLEL", e.id, "parallel edges are not supported")
        endpoint_sets.add(key)

    seen = set()
    for l in net.leads:
        if l.id in seen:
            bad("DUPLICATE_LEAD_ID", l.id, "lead id declared twice")
        seen.add(l.id)
        if l.attached_vertex not in vertex_ids:
            bad("LEAD_VERTEX_UNKNOWN", l.id,
                f"attached vertex {l.attached_vertex!r} undeclared")

    if len(net.leads) < 2:
        bad("TOO_FEW_LEADS", "network", "a scattering network needs >= 2 leads")

    # degree counts edges and leads
    degree = {vid: 0 for vid in vertex_ids}
    for e in net.edges:
        for vid in e.endpoints:
            if vid in degree:
                degree[vid] += 1
    for l in net.leads:
        if l.attached_vertex in degree:
            degree[l.attached_vertex] += 1
    for vid, d in degree.items():
        if d == 0:
            bad("VERTEX_ISOLATED", vid, "vertex has no edge or lead attached")

    if vertex_ids and not out:
        # connectivity over the edge graph (leads hang off vertices and
        # cannot join components)
        adj = {vid: set() for vid in vertex_ids}
        for e in net.edges:
            a, b = e.endpoints
            adj[a].add(b)
            adj[b].add(a)
        stack = [next(iter(sorted(vertex_ids)))]
        reached = set()
        while stack:
            v = stack.pop()
            if v in reached:
                continue
            reached.add(v)
            stack.extend(adj[v] - reached)
        if reached != vertex_ids:
            missing = ",".join(sorted(vertex_ids - reached))
            bad("NOT_CONNECTED", "network", f"unreachable vertices: {missing}")

    return out


# Three-prong sample defaults.  The geometry follows the sketch of a star
# junction with two transport arms and a side branch closed by a barrier
# segment; the numbers themselves are tuned (see README, "Preset defaults")
# so that the barrier sweep produces several cleanly closed Argand
# sub-loops and the energy scan crosses deep transmission zeros.
THREE_PRONG_DEFAULTS = {
    "l2": 1.0,    # arm between lead 1 and the junction (region II)
    "l3": 0.75,   # arm between junction and lead 3 (region III)
    "l5": 1.8,    # side branch from the junction to the barrier (region V)
    "l6": 0.35,   # barrier segment in front of lead 2 (region VI)
    "v2": 0.0,
    "v3": 0.0,
    "v5": 0.0,
    "u1": -5000.0,  # barrier-segment potential; the swept coupling knob
}

BARRIER_EDGE = "VI"


def three_prong_preset(l2: float = THREE_PRONG_DEFAULTS["l2"],
                       l3: float = THREE_PRONG_DEFAULTS["l3"],
                       l5: float = THREE_PRONG_DEFAULTS["l5"],
                       l6: float = THREE_PRONG_DEFAULTS["l6"],
                       v2: float = THREE_PRONG_DEFAULTS["v2"],
                       v3: float = THREE_PRONG_DEFAULTS["v3"],
                       v5: float = THREE_PRONG_DEFAULTS["v5"],
                       u1: float = THREE_PRONG_DEFAULTS["u1"]) -> Network:
    """Star network: lead 1 - II - junction - III - lead 3, with a side
    branch junction - V - VI(barrier, potential u1) - lead 2.

    Channel order is (1, 2, 3).  u1 may take any sign; strongly negative
    values act as a nearly opaque coupling barrier exactly like strongly
    positive ones, but keep every channel propagating.
    """
    for name, val in (("l2", l2), ("l3", l3), ("l5", l5), ("l6", l6)):
        if not (val > 0.0) or not math.isfinite(val):
            raise QwiresError("NONPOSITIVE_LENGTH",
                              f"{name} must be positive, got {val}")
    vertices = [Vertex("n1"), Vertex("nc"), Vertex("n3"),
                Vertex("nb"), Vertex("n2")]
    edges = [
        Edge("II", ("n1", "nc"), l2, v2),
        Edge("III", ("nc", "n3"), l3, v3),
        Edge("V", ("nc", "nb"), l5, v5),
        Edge(BARRIER_EDGE, ("nb", "n2"), l6, u1),
    ]
    leads = [Lead("1", "n1"), Lead("2", "n2"), Lead("3", "n3")]
    return Network(tuple(edges), tuple(vertices), tuple(leads))


def with_edge_potential(net: Network, edge_id: str, potential: float) -> Network:
    """Copy of ``net`` with one edge potential replaced (sweep helper)."""
    net.edge(edge_id)  # raises UNKNOWN_EDGE
    edges = tuple(
        Edge(e.id, e.endpoints, e.length, potential) if e.id == edge_id else e
        for e in net.edges)
    return Network(edges, net.vertices, net.leads)


@dataclass(frozen=True)
class PerturbationSpec:
    """Rectangular potential probe of width ``width`` centred at ``center``
    on edge ``edge``, shifting the potential there by ``delta_u``.

    This is the discretization of a local potential variation at a point:
    the probed interval must sit strictly inside the edge and be narrow
    relative to it (width <= length/10).
    """
    edge: str
    center: float
    width: float
    delta_u: float


def apply_perturbation(net: Network, p: PerturbationSpec) -> Network:
    """Split the target edge into (left, probe, right) segments, raising the
    probe segment's potential by ``p.delta_u``.

    The returned network adds two transparent vertices and leaves every
    length and every potential outside the probe unchanged; ``net`` itself
    is not modified.
    """
    e = net.edge(p.edge)
    if not (p.width > 0.0) or not math.isfinite(p.width):
        raise QwiresError("PROBE_OUT_OF_RANGE",
                          f"probe width must be positive, got {p.width}")
    if p.width > e.length / 10.0:
        raise QwiresError("PROBE_TOO_WIDE",
                          f"probe width {p.width} exceeds {e.id} length/10")
    lo = p.center - p.width / 2.0
    hi = p.center + p.width / 2.0
    if not (lo > 0.0 and hi < e.length):
        raise QwiresError("PROBE_OUT_OF_RANGE",
                          f"probe [{lo}, {hi}] not strictly inside edge "
                          f"{e.id} of length {e.length}")

    va, vb = f"{e.id}.pa", f"{e.id}.pb"
    new_edge_ids = (f"{e.id}.l", f"{e.id}.probe", f"{e.id}.r")
    taken = {v.id for v in net.vertices} | {x.id for x in net.edges}
    for name in (va, vb) + new_edge_ids:
        if name in taken:
            raise QwiresError("ID_COLLISION", f"generated id {name!r} already used")

    u, w = e.endpoints
    pieces = (
        Edge(new_edge_ids[0], (u, va), lo, e.potential),
        Edge(new_edge_ids[1], (va, vb), p.width, e.potential + p.delta_u),
        Edge(new_edge_ids[2], (vb, w), e.length - hi, e.potential),
    )
    edges = []
    for other in net.edges:
        if other.id == e.id:
            edges.extend(pieces)
        else:
            edges.append(other)
    vertices = net.vertices + (Vertex(va), Vertex(vb))
    return Network(tuple(edges), vertices, net.leads)
