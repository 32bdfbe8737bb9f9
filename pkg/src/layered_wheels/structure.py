"""Structural analysis of wheel prefixes: holes, cliques, the layer clique
minor, chordal transversals, vertical/augmenting paths and the fair /
balanced separation machinery.

All operations are read-only; vertices are global ids of the prefix unless
a function explicitly deals in (layer, pos) pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import kernels

CLIQUE_BUDGET = 5_000
INDEP_BUDGET = 200


class BudgetExceeded(RuntimeError):
    pass


class ProgressError(RuntimeError):
    """The balanced-separation loop failed to make progress (a bug)."""


@dataclass
class Certificate:
    """A machine-checkable witness with an independent verdict."""

    kind: str                  # clique | minor | peo | separation | stable
    data: dict
    verdict: bool
    bound: int | float | None = None

    def to_dict(self):
        return {
            "kind": self.kind,
            "data": self.data,
            "verdict": "pass" if self.verdict else "fail",
            "bound": None if self.bound is None
                     else (self.bound if self.bound != math.inf else "inf"),
        }


@dataclass(frozen=True)
class TargetSet:
    """A finite target set X with its size and exact clique number."""

    vertices: frozenset
    n: int
    k: int

    @classmethod
    def from_globals(cls, prefix, it, budget=CLIQUE_BUDGET):
        vs = frozenset(it)
        if vs:
            k = len(induced_max_clique(prefix, vs, budget=budget))
        else:
            k = 0
        return cls(vs, len(vs), k)

    @classmethod
    def full(cls, prefix, budget=None):
        return cls.from_globals(prefix, range(prefix.n_vertices),
                                budget=budget or max(CLIQUE_BUDGET,
                                                     prefix.n_vertices))

    @classmethod
    def from_locs(cls, prefix, locs, budget=CLIQUE_BUDGET):
        return cls.from_globals(prefix, (prefix.vid(*v) for v in locs),
                                budget=budget)


@dataclass
class VerticalPath:
    """A parent-to-descendant chain p_i, p_{i+1}, ..., one vertex per layer.

    ``arc_augmenting[j]`` records whether the arc out of vertices[j] was
    augmenting with respect to the target set it was built for.
    """

    start_layer: int
    vertices: list
    arc_augmenting: list = field(default_factory=list)

    @property
    def truncation_layer(self):
        return self.start_layer + len(self.vertices) - 1

    def drop_first(self):
        return VerticalPath(self.start_layer + 1, self.vertices[1:],
                            self.arc_augmenting[1:])

    def tail_augmenting(self):
        """True when the path minus its first vertex is fully augmenting."""
        return all(self.arc_augmenting[1:])


@dataclass(frozen=True)
class Separation:
    A: frozenset
    B: frozenset

    @property
    def order(self):
        return len(self.A & self.B)

    def restrict(self, X):
        return Separation(self.A & X, self.B & X)

    def stats(self, X):
        AX, BX = self.A & X, self.B & X
        return {
            "A_cap_X": len(AX),
            "B_cap_X": len(BX),
            "A_only": len(AX - BX),
            "B_only": len(BX - AX),
            "order": len(AX & BX),
        }

    def to_dict(self, loc=None):
        conv = loc if loc is not None else (lambda g: g)
        return {
            "A": sorted(map(conv, self.A)),
            "B": sorted(map(conv, self.B)),
            "order": self.order,
        }


# -- induced subgraphs and exact invariants -------------------------------

def induced_adjacency(prefix, X):
    """(vertex list, local adjacency) of the subgraph induced by X."""
    order = sorted(X)
    index = {g: i for i, g in enumerate(order)}
    adj = prefix.adjacency()
    local = [[index[u] for u in adj[g] if u in index] for g in order]
    return order, local


def induced_max_clique(prefix, X, budget=CLIQUE_BUDGET):
    if len(X) > budget:
        raise BudgetExceeded(
            "clique search refused: %d vertices > budget %d" % (len(X), budget))
    order, local = induced_adjacency(prefix, X)
    return [order[i] for i in kernels.max_clique(len(order), local)]


def clique_number_exact(prefix, X=None, budget=None):
    """Exact clique number with a maximum clique witness certificate."""
    if X is None:
        X = frozenset(range(prefix.n_vertices))
    budget = budget or max(CLIQUE_BUDGET, prefix.n_vertices)
    clique = induced_max_clique(prefix, X, budget=budget)
    adj = prefix.adjacency()
    ok = all(v in adj[u] for i, u in enumerate(clique) for v in clique[i + 1:])
    cert = Certificate(
        kind="clique",
        data={"clique": sorted(prefix.loc(g) for g in clique)},
        verdict=ok,
        bound=len(clique),
    )
    return len(clique), cert


def max_independent_set_exact(prefix, X, budget=INDEP_BUDGET):
    """Exact independence number of G[X] with a witness."""
    if len(X) > budget:
        raise BudgetExceeded(
            "independent-set search refused: %d vertices > budget %d"
            % (len(X), budget))
    order, local = induced_adjacency(prefix, X)
    mis = [order[i] for i in kernels.max_independent_set(len(order), local)]
    adj = prefix.adjacency()
    ok = all(v not in adj[u] for i, u in enumerate(mis) for v in mis[i + 1:])
    cert = Certificate(
        kind="stable",
        data={"stable": sorted(prefix.loc(g) for g in mis)},
        verdict=ok,
        bound=len(mis),
    )
    return len(mis), cert


def shortest_hole_up_to(prefix, bound):
    """Shortest chordless cycle of length <= bound, or None (exhaustive)."""
    if bound < 4:
        raise ValueError("hole bound must be >= 4, got %d" % bound)
    adj = prefix.adjacency()
    return kernels.shortest_hole(prefix.n_vertices, adj, bound)


def layer_minor_check(prefix):
    """Certify that the layers form a clique minor (tw >= t-1).

    Each layer induces a cycle (connected); the certificate lists one
    witness edge for every pair of layers.
    """
    t = prefix.num_layers
    witness = {}
    for v in range(prefix.n_vertices):
        lv = prefix.layer_of(v)
        for w in prefix.up[v]:
            pair = (prefix.layer_of(w), lv)
            if pair not in witness:
                witness[pair] = (w, v)
    missing = [(i, j) for i in range(1, t + 1) for j in range(i + 1, t + 1)
               if (i, j) not in witness]
    data = {
        "num_layers": t,
        "edges": {"%d,%d" % p: [list(prefix.loc(witness[p][0])),
                                list(prefix.loc(witness[p][1]))]
                  for p in sorted(witness) if p[0] < p[1]},
    }
    if missing:
        data["first_missing_pair"] = list(missing[0])
    return Certificate(kind="minor", data=data, verdict=not missing,
                       bound=t - 1)


def transversal_chordality_check(prefix, X):
    """Perfect elimination ordering of a one-per-layer transversal.

    Removes the highest-layer vertex first and verifies it is simplicial
    at each step; the resulting order certifies chordality of G[X].
    """
    layers = {}
    for g in X:
        l = prefix.layer_of(g)
        if l in layers:
            raise ValueError(
                "transversal has two vertices in layer %d" % l)
        layers[l] = g
    adj = prefix.adjacency()
    remaining = set(X)
    order = []
    ok = True
    for l in sorted(layers, reverse=True):
        v = layers[l]
        nb = [u for u in adj[v] if u in remaining and u != v]
        if any(b not in adj[a] for i, a in enumerate(nb) for b in nb[i + 1:]):
            ok = False
            break
        order.append(v)
        remaining.discard(v)
    return Certificate(
        kind="peo",
        data={"order": [list(prefix.loc(g)) for g in order]},
        verdict=ok and not remaining,
        bound=None,
    )


def transversal_coloring(prefix, X, peo_cert=None):
    """Greedy coloring along the reverse of the elimination ordering.

    On a chordal graph this uses exactly omega colors, so the largest
    color class is a stable set of size >= |X| / omega.
    """
    cert = peo_cert or transversal_chordality_check(prefix, X)
    if not cert.verdict:
        raise ValueError("transversal is not chordal; no coloring certificate")
    order = [prefix.vid(*v) for v in cert.data["order"]]
    adj = prefix.adjacency()
    color = {}
    for v in reversed(order):
        used = {color[u] for u in adj[v] if u in color}
        c = 0
        while c in used:
            c += 1
        color[v] = c
    classes = {}
    for v, c in color.items():
        classes.setdefault(c, []).append(v)
    return classes


# -- vertical and augmenting paths ----------------------------------------

def augmenting_child(prefix, v, X):
    """The smallest-position child u of v with an augmenting arc vu,
    falling back to the first child; returns (u, is_augmenting)."""
    kids = prefix.children(v)
    if not kids:
        raise ValueError("vertex %s has no children" % (prefix.loc(v),))
    xset = X.vertices if isinstance(X, TargetSet) else X
    want = ({v} | set(prefix.up[v])) & xset
    for u in kids:
        if set(prefix.up[u]) & xset == want:
            return u, True
    return kids[0], False


def augmenting_path(prefix, v, X, chooser_cache=None):
    """The augmenting path out of v, truncated at the highest layer that
    meets X (and at the top of the prefix)."""
    xset = X.vertices if isinstance(X, TargetSet) else X
    t_max = min(prefix.num_layers,
                max((prefix.layer_of(g) for g in xset),
                    default=prefix.layer_of(v)))
    return _chain(prefix, v, X, t_max, chooser_cache)


def _chain(prefix, v, X, t_max, cache=None):
    verts = [v]
    flags = []
    cur = v
    layer = prefix.layer_of(v)
    while layer < t_max:
        if cache is not None and cur in cache:
            nxt, aug = cache[cur]
        else:
            nxt, aug = augmenting_child(prefix, cur, X)
            if cache is not None:
                cache[cur] = (nxt, aug)
        verts.append(nxt)
        flags.append(aug)
        cur = nxt
        layer += 1
    return VerticalPath(prefix.layer_of(v), verts, flags)


def vertical_path_first_child(prefix, v, end_layer):
    """The plain vertical path taking the first child at every step."""
    verts = [v]
    cur = v
    for _ in range(prefix.layer_of(v), end_layer):
        kids = prefix.children(cur)
        cur = kids[0]
        verts.append(cur)
    return VerticalPath(prefix.layer_of(v), verts)


# -- separations ----------------------------------------------------------

def _forward_segment(prefix, a, b):
    """Vertex set of the directed path from a to b on their layer cycle."""
    layer = prefix.layer_of(a)
    start = prefix.offsets[layer - 1]
    size = prefix.layer_sizes[layer - 1]
    pa, pb = a - start, b - start
    length = (pb - pa) % size + 1
    return [start + (pa + d) % size for d in range(length)]


def build_AB(prefix, P, Q):
    """The separation (A(P,Q), B(P,Q)) over layers 1..m, where m is the
    common truncation layer of the two paths."""
    if P.start_layer != Q.start_layer:
        raise ValueError("paths start in different layers (%d vs %d)"
                         % (P.start_layer, Q.start_layer))
    if P.truncation_layer != Q.truncation_layer:
        raise ValueError("paths end in different layers (%d vs %d)"
                         % (P.truncation_layer, Q.truncation_layer))
    i = P.start_layer
    m = P.truncation_layer
    A = set()
    B = set()
    for u in _forward_segment(prefix, P.vertices[0], Q.vertices[0]):
        A.add(u)
        A.update(prefix.up[u])
    for j in range(1, i + 1):
        B.update(prefix.layer_range(j))
    for j in range(i + 1, m + 1):
        pj = P.vertices[j - i]
        qj = Q.vertices[j - i]
        fw = set(_forward_segment(prefix, pj, qj))
        A.update(fw)
        B.update({pj, qj} | (set(prefix.layer_range(j)) - fw))
    return Separation(frozenset(A), frozenset(B))


def expected_intersection(prefix, P, Q):
    """V(P) ∪ V(Q) ∪ the up-closures along the base segment -- the exact
    value of A ∩ B proved for this construction."""
    out = set(P.vertices) | set(Q.vertices)
    for u in _forward_segment(prefix, P.vertices[0], Q.vertices[0]):
        out.add(u)
        out.update(prefix.up[u])
    return out


def verify_separation(vertices, edges, sep):
    """Independent separation check: A and B cover the vertex set and no
    edge joins A-only to B-only.  Usable on separations from files."""
    vs = set(vertices)
    if not vs <= (sep.A | sep.B):
        return False
    a_only = sep.A - sep.B
    b_only = sep.B - sep.A
    for (u, v) in edges:
        if u not in vs or v not in vs:
            continue
        if (u in a_only and v in b_only) or (v in a_only and u in b_only):
            return False
    return True


def verify_separation_on_prefix(prefix, sep, vertices=None):
    if vertices is None:
        vertices = sep.A | sep.B
    vs = set(vertices)
    adj = prefix.adjacency()
    edges = ((u, v) for u in vs for v in adj[u] if v in vs and u < v)
    return verify_separation(vs, edges, sep)


@dataclass
class FairSeparation:
    sep: Separation
    P: VerticalPath
    Q: VerticalPath
    base_layer: int


def fair_separation_initial(prefix, X, cache=None):
    """A fair separation from the augmenting paths out of two fixed
    non-adjacent first-layer vertices (positions 0 and 2)."""
    if prefix.ell < 4:
        raise ValueError("ell >= 4 required")
    xset = X.vertices if isinstance(X, TargetSet) else X
    n = len(xset)
    cache = {} if cache is None else cache
    p = prefix.vid(1, 0)
    q = prefix.vid(1, 2)
    P = augmenting_path(prefix, p, X, cache)
    Q = augmenting_path(prefix, q, X, cache)
    for (first, second) in ((P, Q), (Q, P)):
        sep = build_AB(prefix, first, second)
        if 3 * len(sep.A & xset) >= n:
            return FairSeparation(sep, first, second, 1)
    raise ProgressError("neither orientation is fair; impossible for "
                        "disjoint paths")


@dataclass
class BalancedSeparationResult:
    sep: Separation          # restricted to X
    n: int
    k: int
    order: int
    order_bound: float       # 2F(k+1) + (ell+1)k - 2, possibly inf
    bound_applies: bool      # both maintained tails fully augmenting
    balanced: bool
    iterations: int

    def to_dict(self, loc=None):
        d = self.sep.to_dict(loc)
        d.update(n=self.n, k=self.k, order=self.order,
                 order_bound=(self.order_bound if self.order_bound != math.inf
                              else "inf"),
                 bound_applies=self.bound_applies, balanced=self.balanced,
                 iterations=self.iterations)
        return d


def balanced_separation(prefix, X):
    """A balanced separation of G[X], following the local-improvement loop:
    keep a fair separation, and while the A-side is too big either drop the
    base layer or reroute through a parented interior vertex.

    The order bound 2F(k+1) + (ell+1)k - 2 is recorded; it is guaranteed
    (and asserted by callers) only when both maintained path tails are
    fully augmenting.
    """
    xset = X.vertices if isinstance(X, TargetSet) else X
    if not xset:
        raise ValueError("target set is empty")
    n = len(xset)
    k = X.k if isinstance(X, TargetSet) else \
        len(induced_max_clique(prefix, xset,
                               budget=max(CLIQUE_BUDGET, len(xset))))
    F = prefix.f.cumulative()
    bound = 2 * F(k + 1) + (prefix.ell + 1) * k - 2 \
        if F(k + 1) != math.inf else math.inf

    if n <= 5:
        sep = Separation(frozenset(xset), frozenset(xset))
        return BalancedSeparationResult(sep, n, k, sep.order, bound,
                                        True, True, 0)

    cache = {}
    fair = fair_separation_initial(prefix, X, cache)
    P, Q, i = fair.P, fair.Q, fair.base_layer
    sep = fair.sep
    iterations = 0
    monitor = None
    while True:
        AX = sep.A & xset
        BX = sep.B & xset
        if 3 * len(AX - BX) <= 2 * n:
            break
        iterations += 1
        p1 = P.vertices[1]
        q1 = Q.vertices[1]
        seg = _forward_segment(prefix, p1, q1)
        interior = seg[1:-1] if len(seg) >= 2 else []
        state = (i, len(seg))
        if monitor is not None and not (state[0] > monitor[0] or
                                        (state[0] == monitor[0] and
                                         state[1] < monitor[1])):
            raise ProgressError("no progress at layer %d, segment %d"
                                % state)
        monitor = state
        parented = [u for u in interior if prefix.parent[u] >= 0]
        if not parented:
            P, Q = P.drop_first(), Q.drop_first()
            i += 1
            sep = build_AB(prefix, P, Q)
            continue
        u = parented[0]
        v = prefix.parent[u]
        tail = _chain(prefix, u, X, P.truncation_layer, cache)
        first_aug = (set(prefix.up[u]) & xset) == \
                    (({v} | set(prefix.up[v])) & xset)
        R = VerticalPath(i, [v] + tail.vertices,
                         [first_aug] + tail.arc_augmenting)
        chosen = None
        for (first, second) in ((P, R), (R, Q)):
            cand = build_AB(prefix, first, second)
            if 3 * len(cand.A & xset) >= n:
                chosen = (first, second, cand)
                break
        if chosen is None:
            raise ProgressError("reroute produced no fair candidate")
        P, Q, sep = chosen
    aug_ok = P.tail_augmenting() and Q.tail_augmenting()
    rsep = sep.restrict(frozenset(xset))
    st = rsep.stats(frozenset(xset))
    balanced = 3 * st["A_only"] <= 2 * n and 3 * st["B_only"] <= 2 * n
    return BalancedSeparationResult(rsep, n, k, rsep.order, bound, aug_ok,
                                    balanced, iterations)
