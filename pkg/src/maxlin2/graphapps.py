"""Graph colorings guaranteed by the pseudo-boolean lower bound.

For a connected graph with n vertices and m edges the count of satisfied edges
``1/2 sum_e (1 - s_e x_u x_v)`` is a degree-2 pseudo-boolean function whose
term matrix is the incidence matrix (rank n - 1), so some 2-coloring satisfies
at least m/2 + (n-1)/4 edges.  ``s_e = +1`` for ``!=`` edges, ``-1`` for ``=``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Sequence

from . import gf2
from .errors import ParseError, PreconditionError
from .linsystem import _content_lines
from .pseudobool import FourierPolynomial, lower_bound

EQ = "="
NEQ = "!="


@dataclass(frozen=True)
class LabeledGraph:
    n_vertices: int
    edges: tuple[tuple[int, int, str], ...]

    def __post_init__(self):
        norm = []
        for u, v, lab in self.edges:
            if u == v:
                raise PreconditionError("no self-loops", f"self-loop at vertex {u}")
            if u > v:
                u, v = v, u
            if u < 1 or v > self.n_vertices:
                raise PreconditionError("1 <= u < v <= n", f"edge ({u}, {v}) outside 1..{self.n_vertices}")
            if lab not in (EQ, NEQ):
                raise ValueError(f"edge label must be '=' or '!=', got {lab!r}")
            norm.append((u, v, lab))
        object.__setattr__(self, "edges", tuple(norm))

    @classmethod
    def cut_graph(cls, n: int, edges: Sequence[tuple[int, int]]) -> "LabeledGraph":
        return cls(n, tuple((u, v, NEQ) for u, v in edges))

    @property
    def m(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class CutResult:
    coloring: tuple[int, ...]
    satisfied: int
    guarantee: Fraction
    certified: Fraction


def is_satisfied(edge: tuple[int, int, str], coloring: Sequence[int]) -> bool:
    u, v, lab = edge
    same = coloring[u - 1] == coloring[v - 1]
    return same if lab == EQ else not same


def count_satisfied(g: LabeledGraph, coloring: Sequence[int]) -> int:
    return sum(is_satisfied(e, coloring) for e in g.edges)


def components(n: int, pairs: Sequence[tuple[int, int]]) -> list[list[int]]:
    """Connected components (sorted vertex lists, ordered by smallest vertex)."""
    parent = list(range(n + 1))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u, v in pairs:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    groups: dict[int, list[int]] = {}
    for v in range(1, n + 1):
        groups.setdefault(find(v), []).append(v)
    return [groups[k] for k in sorted(groups)]


def incidence_rank(g: LabeledGraph) -> int:
    """GF(2) rank of the edge-vertex incidence matrix."""
    return gf2.rank([(1 << (u - 1)) | (1 << (v - 1)) for u, v, _ in g.edges])


def _effective_pairs(g: LabeledGraph) -> list[tuple[int, int]]:
    """Vertex pairs whose parallel edges do not cancel out."""
    net: dict[tuple[int, int], int] = {}
    for u, v, lab in g.edges:
        net[(u, v)] = net.get((u, v), 0) + (1 if lab == NEQ else -1)
    return [p for p, c in net.items() if c]


def balanced_subgraph_assignment(g: LabeledGraph) -> CutResult:
    """2-coloring satisfying at least m/2 + (n-1)/4 edges per connected component.

    Components are taken over vertex pairs whose parallel ``=``/``!=`` edges do
    not cancel; a cancelling pair always contributes exactly half its edges.
    """
    if g.m == 0:
        raise PreconditionError("m >= 1", "graph has no edges")
    coloring = [1] * g.n_vertices
    certified = Fraction(0)
    comps = components(g.n_vertices, _effective_pairs(g))
    where = {}
    for ci, comp in enumerate(comps):
        for local, v in enumerate(comp, 1):
            where[v] = (ci, local)
    per_comp: list[list[tuple[int, int, str]]] = [[] for _ in comps]
    loose_edges = 0
    for u, v, lab in g.edges:
        cu, lu = where[u]
        cv, lv = where[v]
        if cu != cv:
            loose_edges += 1  # only cancelling parallel edges cross components
            continue
        per_comp[cu].append((lu, lv, lab))
    for comp, edges in zip(comps, per_comp):
        if not edges:
            continue
        f = FourierPolynomial.from_terms(
            len(comp),
            [((a, b), Fraction(-1 if lab == NEQ else 1, 2)) for a, b, lab in edges],
            Fraction(len(edges), 2),
        )
        res = lower_bound(f)
        certified += res.bound
        for local, v in enumerate(comp):
            coloring[v - 1] = res.witness[local]
    certified += Fraction(loose_edges, 2)
    satisfied = count_satisfied(g, coloring)
    guarantee = Fraction(g.m, 2) + Fraction(g.n_vertices - len(comps), 4)
    assert satisfied >= certified >= guarantee
    assert satisfied >= ceil(guarantee)
    return CutResult(tuple(coloring), satisfied, guarantee, certified)


def max_cut_assignment(g: LabeledGraph) -> CutResult:
    """Bipartition cutting at least m/2 + (n-1)/4 edges of each component."""
    if any(lab != NEQ for _, _, lab in g.edges):
        raise PreconditionError("all edges !=", "max cut graphs carry only '!=' edges")
    return balanced_subgraph_assignment(g)


# -- .bsg / .cut text formats ----------------------------------------------

def parse_graph(text: str) -> LabeledGraph:
    """Parse ``p bsg n m`` (lines ``u v =|!=``) or ``p cut n m`` (lines ``u v``)."""
    kind = None
    n = m = 0
    edges = []
    for lineno, toks in _content_lines(text):
        if kind is None:
            if len(toks) != 4 or toks[0] != "p" or toks[1] not in ("bsg", "cut"):
                raise ParseError("expected header 'p bsg <n> <m>' or 'p cut <n> <m>'", lineno)
            kind = toks[1]
            try:
                n, m = int(toks[2]), int(toks[3])
            except ValueError:
                raise ParseError("header counts must be integers", lineno) from None
            continue
        want = 3 if kind == "bsg" else 2
        if len(toks) != want:
            raise ParseError(f"expected {want} fields per edge line", lineno)
        try:
            u, v = int(toks[0]), int(toks[1])
        except ValueError:
            raise ParseError("vertex ids must be integers", lineno) from None
        lab = toks[2] if kind == "bsg" else NEQ
        if lab not in (EQ, NEQ):
            raise ParseError(f"label must be '=' or '!=', got {lab!r}", lineno)
        if u == v or not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(f"bad edge ({u}, {v})", lineno)
        edges.append((u, v, lab))
    if kind is None:
        raise ParseError("missing header")
    if len(edges) != m:
        raise ParseError(f"header declares {m} edges, found {len(edges)}")
    return LabeledGraph(n, tuple(edges))


def format_graph(g: LabeledGraph, cut: bool = False) -> str:
    if cut:
        lines = [f"p cut {g.n_vertices} {g.m}"] + [f"{u} {v}" for u, v, _ in g.edges]
    else:
        lines = [f"p bsg {g.n_vertices} {g.m}"] + [f"{u} {v} {lab}" for u, v, lab in g.edges]
    return "\n".join(lines) + "\n"
