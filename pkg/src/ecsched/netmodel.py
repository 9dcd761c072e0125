"""Link-level network model with binary (on/off) interference.

A network is a set of directed or undirected links 0..L-1 together with a
symmetric conflict relation: if k is in I_l then l and k can never transmit
in the same slot.  Conflict sets can be derived from a vertex-edge graph
(one-hop / k-hop interference) or given explicitly.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass


class EnumerationCapError(RuntimeError):
    """An exhaustive enumeration would exceed its configured cap."""


@dataclass(frozen=True)
class ConflictNetwork:
    """Immutable conflict structure over links 0..num_links-1.

    conflict_sets[l] holds the link ids that cannot be active in the same
    slot as l.  The relation must be irreflexive and symmetric; both are
    checked at construction time.  endpoints is retained when the network
    was built from a vertex-edge graph, purely for reporting.
    """

    num_links: int
    conflict_sets: tuple[frozenset[int], ...]
    endpoints: tuple[tuple[int, int], ...] | None = None

    def __post_init__(self):
        if self.num_links <= 0:
            raise ValueError("network needs at least one link")
        if len(self.conflict_sets) != self.num_links:
            raise ValueError(
                f"expected {self.num_links} conflict sets, got {len(self.conflict_sets)}"
            )
        if self.endpoints is not None and len(self.endpoints) != self.num_links:
            raise ValueError("endpoints length does not match num_links")
        for l, conf in enumerate(self.conflict_sets):
            if l in conf:
                raise ValueError(f"link {l} conflicts with itself")
            for k in conf:
                if not 0 <= k < self.num_links:
                    raise ValueError(f"link {l}: conflicting id {k} out of range")
                if l not in self.conflict_sets[k]:
                    raise ValueError(f"conflict sets are asymmetric for pair ({l}, {k})")

    def links(self) -> range:
        return range(self.num_links)


def _vertex_distances(adjacency: dict, source) -> dict:
    # plain BFS; graphs here are tiny
    dist = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in adjacency[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def build_conflict_sets(
    edges=None,
    model: str = "one-hop",
    k: int | None = None,
    conflicts=None,
    vertices=None,
) -> ConflictNetwork:
    """Build a ConflictNetwork from a graph or from explicit conflict lists.

    model "one-hop"   links conflict iff they share a vertex (node-exclusive
                      spectrum reuse).
    model "k-hop"     links conflict iff the vertex distance between their
                      endpoint sets is < k; k=1 reduces to one-hop.
    model "explicit"  `conflicts` is a per-link list of conflicting link ids.
                      Asymmetric or self-referencing input is rejected, never
                      silently repaired.

    `vertices`, when given, is the authoritative vertex set: edges naming a
    vertex outside it are rejected.
    """
    if model == "explicit":
        if conflicts is None:
            raise ValueError("explicit model requires conflict lists")
        sets = tuple(frozenset(int(i) for i in c) for c in conflicts)
        return ConflictNetwork(num_links=len(sets), conflict_sets=sets)

    if edges is None:
        raise ValueError(f"model {model!r} requires a vertex-edge list")
    norm_edges = []
    for e in edges:
        if len(e) != 2:
            raise ValueError(f"edge {e!r} is not a vertex pair")
        a, b = e
        if a == b:
            raise ValueError(f"edge {e!r} is a self-loop")
        norm_edges.append((a, b))
    if vertices is not None:
        known = set(vertices)
        for a, b in norm_edges:
            for v in (a, b):
                if v not in known:
                    raise ValueError(f"edge vertex {v!r} not in the vertex list")

    n = len(norm_edges)
    if model == "one-hop":
        khop = 1
    elif model == "k-hop":
        if k is None or int(k) < 1:
            raise ValueError("k-hop model requires k >= 1")
        khop = int(k)
    else:
        raise ValueError(f"unknown interference model {model!r}")

    if khop == 1:
        sets = []
        for i, (a, b) in enumerate(norm_edges):
            own = {a, b}
            sets.append(
                frozenset(
                    j for j, (c, d) in enumerate(norm_edges) if j != i and (c in own or d in own)
                )
            )
    else:
        adjacency: dict = {}
        for a, b in norm_edges:
            adjacency.setdefault(a, set()).add(b)
            adjacency.setdefault(b, set()).add(a)
        dist = {v: _vertex_distances(adjacency, v) for v in adjacency}
        sets = []
        for i, (a, b) in enumerate(norm_edges):
            conf = set()
            for j, (c, d) in enumerate(norm_edges):
                if j == i:
                    continue
                gap = min(
                    dist[x].get(y, float("inf")) for x in (a, b) for y in (c, d)
                )
                if gap < khop:
                    conf.add(j)
            sets.append(frozenset(conf))

    return ConflictNetwork(
        num_links=n, conflict_sets=tuple(sets), endpoints=tuple(norm_edges)
    )


def _maximal_independent_sets(allowed: list[int], neighbors: dict) -> list[frozenset]:
    """Bron-Kerbosch with pivoting on the conflict-complement graph."""
    comp = {v: (set(allowed) - neighbors[v]) - {v} for v in allowed}
    out: list[frozenset] = []

    def expand(chosen: set, cand: set, done: set):
        if not cand and not done:
            out.append(frozenset(chosen))
            return
        pivot = max(cand | done, key=lambda v: len(comp[v] & cand))
        for v in sorted(cand - comp[pivot]):
            expand(chosen | {v}, cand & comp[v], done & comp[v])
            cand = cand - {v}
            done = done | {v}

    expand(set(), set(allowed), set())
    return out


def enumerate_maximal_activations(net: ConflictNetwork, subset, cap: int = 20):
    """All maximal feasible activation vectors within `subset`.

    Feasibility and maximality consider only conflicts between subset
    members; links outside the subset neither block nor appear.  Each
    result is a full-length 0/1 tuple (zeros outside the subset).  The
    list is exhaustive, duplicate-free and lexicographically sorted.

    Raises EnumerationCapError when |subset| exceeds `cap`.
    """
    members = sorted(set(int(l) for l in subset))
    if not members:
        raise ValueError("subset must be nonempty")
    for l in members:
        if not 0 <= l < net.num_links:
            raise ValueError(f"subset link {l} out of range")
    if len(members) > cap:
        raise EnumerationCapError(
            f"subset of {len(members)} links exceeds the enumeration cap of {cap}"
        )

    inside = set(members)
    neigh = {l: set(net.conflict_sets[l]) & inside for l in members}
    vectors = []
    for s in _maximal_independent_sets(members, neigh):
        vec = [0] * net.num_links
        for l in s:
            vec[l] = 1
        vectors.append(tuple(vec))
    vectors.sort()
    return vectors


def is_feasible_power_vector(net: ConflictNetwork, p) -> bool:
    """True iff the positive-power links form an independent set."""
    if len(p) != net.num_links:
        raise ValueError(f"power vector has length {len(p)}, expected {net.num_links}")
    for l, val in enumerate(p):
        if val < 0:
            raise ValueError(f"negative power {val} on link {l}")
    for l, val in enumerate(p):
        if val > 0:
            for m in net.conflict_sets[l]:
                if p[m] > 0:
                    return False
    return True
