"""Decorated dual graphs of the fully resolved surface.

Expands every singular point of the partial resolution into its bamboo
chain, assembles the integer plumbing graph with the corrected strict
transform self-intersections, locates the strict transform of the curve
(the arrow) on the resolved chain toric-style, and derives the first
homology of the link from the Smith normal form of the intersection matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction

from . import _linalg
from .detcalc import LinkClass, LinkKind
from .qres import QResolutionData, strict_self_intersection
from .quotient import PlanarLattice


class NonIntegralSelfIntersection(ArithmeticError):
    """A strict transform came out with a fractional self-intersection."""


class NotNegativeDefinite(ValueError):
    pass


@dataclass(frozen=True)
class Vertex:
    vid: int
    genus: int
    self_int: int
    label: str


@dataclass(frozen=True)
class PlumbingGraph:
    """Dual graph of a good resolution: decorated vertices plus an arrow.

    strict[k-1] holds the vertex ids of the level-k strict transforms.  The
    arrow records (vertex id, intersection number) pairs for the strict
    transform of the curve; it is empty for graphs assembled without one.
    """

    vertices: tuple[Vertex, ...]
    edges: tuple[tuple[int, int], ...]
    strict: tuple[tuple[int, ...], ...]
    arrow: tuple[tuple[int, int], ...] = ()

    @property
    def n(self) -> int:
        return len(self.vertices)

    def adjacency(self) -> dict[int, list[int]]:
        adj = {v.vid: [] for v in self.vertices}
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return adj

    def degree(self, vid: int) -> int:
        return sum(1 for i, j in self.edges if vid in (i, j))

    def component_count(self) -> int:
        adj = self.adjacency()
        seen = set()
        count = 0
        for v in adj:
            if v in seen:
                continue
            count += 1
            stack = [v]
            while stack:
                u = stack.pop()
                if u in seen:
                    continue
                seen.add(u)
                stack.extend(adj[u])
        return count

    def is_tree(self) -> bool:
        return len(self.edges) == self.n - 1 and self.component_count() == 1

    def loop_count(self) -> int:
        return len(self.edges) - self.n + self.component_count()


def assemble_full_resolution(qr: QResolutionData) -> PlumbingGraph:
    """Expand the census chains into the full decorated dual graph.

    Chain orientation follows the quotient-module convention: at each point
    the curve sitting on coordinate slot 1 meets the kappas[-1] end of the
    chain, the slot-2 curve meets kappas[0].  Integral strict-transform
    self-intersections are a consequence of that convention being the right
    one; a fractional value raises NonIntegralSelfIntersection.
    """
    g = qr.g
    vertices: list[Vertex] = []
    edges: list[tuple[int, int]] = []

    def add_vertex(genus, self_int, label) -> int:
        vid = len(vertices)
        vertices.append(Vertex(vid=vid, genus=genus, self_int=self_int, label=label))
        return vid

    strict: list[list[int]] = []
    for k in range(1, g):
        e2 = strict_self_intersection(qr, k)
        if e2.denominator != 1:
            raise NonIntegralSelfIntersection(
                f"level {k} strict transform has self-intersection {e2}"
            )
        strict.append(
            [add_vertex(qr.genus[k], int(e2), f"E{k}.{j + 1}") for j in range(qr.r[k])]
        )

    def add_chain(chain, label, head_vid=None, tail_vid=None) -> list[int]:
        """Vertices of one bamboo, kappas order; link the given ends."""
        vids = [
            add_vertex(0, -kappa, f"{label}.{idx + 1}")
            for idx, kappa in enumerate(chain.kappas)
        ]
        for u, v in zip(vids, vids[1:]):
            edges.append((u, v))
        if vids:
            if head_vid is not None:
                edges.append((head_vid, vids[0]))
            if tail_vid is not None:
                edges.append((vids[-1], tail_vid))
        elif head_vid is not None and tail_vid is not None:
            edges.append((head_vid, tail_vid))
        return vids

    p_chain_vids: list[int] = []
    for pt in qr.census:
        if pt.kind == "Q0":
            # the level-1 curve is on slot 2: it meets the chain head
            for j in range(qr.r[1]):
                for c in range(pt.per_component):
                    if pt.is_smooth:
                        continue
                    add_chain(pt.chain, f"Q0[{j + 1}.{c + 1}]", head_vid=strict[0][j])
        elif pt.kind == "Q":
            k = pt.level
            for j in range(qr.r[k]):
                for c in range(pt.per_component):
                    if pt.is_smooth:
                        continue
                    add_chain(
                        pt.chain, f"Q{k}[{j + 1}.{c + 1}]", tail_vid=strict[k - 1][j]
                    )
        elif pt.kind == "edge":
            k = pt.level
            for j2 in range(qr.r[k + 1]):
                for t in range(qr.p[k]):
                    j1 = j2 * qr.p[k] + t
                    add_chain(
                        pt.chain,
                        f"Q{k}{k + 1}[{j1 + 1}]",
                        head_vid=strict[k][j2],
                        tail_vid=strict[k - 1][j1],
                    )
        elif pt.kind == "P":
            if not pt.is_smooth:
                p_chain_vids = add_chain(pt.chain, "P", tail_vid=strict[g - 2][0])
        else:  # pragma: no cover
            raise AssertionError(f"unknown census kind {pt.kind}")

    arrow = _locate_arrow(qr, strict[g - 2][0], p_chain_vids)
    return PlumbingGraph(
        vertices=tuple(vertices),
        edges=tuple(edges),
        strict=tuple(tuple(vs) for vs in strict),
        arrow=arrow,
    )


def _locate_arrow(qr, last_strict_vid, p_chain_vids) -> tuple[tuple[int, int], ...]:
    """Where the strict transform of the curve meets the resolved graph.

    At the last singular point the curve is the binomial germ
    {x_g^{n_g} = x_0^D}; its intersections with the resolved boundary come
    from the planar-lattice fan walk.  Index 0 of the walk is the last
    strict transform, indices 1..r are the chain read from that side, and
    the final index is the coordinate axis that never enters the graph.
    """
    cd, g = qr.cd, qr.g
    p_pt = next(pt for pt in qr.census if pt.kind == "P")
    lat = PlanarLattice.of(p_pt.raw)
    walked = lat.chain_kappas_from_first_axis()
    assert walked == tuple(reversed(p_pt.chain.kappas)), "fan walk disagrees with chain"
    delta = cd.n[g] * cd.beta[g] - cd.n[g - 1] * cd.beta[g - 1]
    hits = lat.curve_boundary_intersections(exp_second=cd.n[g], exp_first=delta)
    r = len(p_pt.chain.kappas)
    arrow = []
    for idx, mult in hits:
        if idx == 0:
            arrow.append((last_strict_vid, mult))
        elif idx <= r:
            arrow.append((p_chain_vids[r - idx], mult))
        # idx == r + 1 is the strict transform of the last coordinate axis
    assert arrow, "curve does not meet the exceptional locus"
    return tuple(arrow)


def integer_intersection_matrix(pg: PlumbingGraph) -> list[list[int]]:
    n = pg.n
    m = [[0] * n for _ in range(n)]
    for v in pg.vertices:
        m[v.vid][v.vid] = v.self_int
    for i, j in pg.edges:
        m[i][j] += 1
        m[j][i] += 1
    return m


def sparse_intersection(pg: PlumbingGraph) -> dict[int, dict[int, Fraction]]:
    """Intersection matrix as sparse symmetric rows (for large graphs)."""
    rows = {v.vid: {v.vid: Fraction(v.self_int)} for v in pg.vertices}
    for i, j in pg.edges:
        rows[i][j] = rows[i].get(j, Fraction(0)) + 1
        rows[j][i] = rows[j].get(i, Fraction(0)) + 1
    return rows


def graph_determinant(pg: PlumbingGraph) -> int:
    """|det| of the integer intersection matrix."""
    det = _linalg.det_exact(sparse_intersection(pg))
    assert det.denominator == 1
    return abs(int(det))


def is_negative_definite(pg: PlumbingGraph) -> bool:
    try:
        return all(p < 0 for p in _linalg.sym_pivots(sparse_intersection(pg)))
    except _linalg.ZeroPivot:
        return False


@dataclass(frozen=True)
class H1Decomposition:
    """H_1 of the link: free rank and torsion invariant factors (> 1, each
    dividing the next); the torsion order equals |det| of the matrix."""

    free_rank: int
    torsion: tuple[int, ...]

    @property
    def torsion_order(self) -> int:
        return math.prod(self.torsion)

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion


def h1_link(pg: PlumbingGraph) -> H1Decomposition:
    """First homology of the link from the plumbing graph.

    Torsion is the cokernel of the intersection matrix (Smith normal form);
    the free rank is twice the total genus plus the number of independent
    loops in the graph.
    """
    try:
        if not all(p < 0 for p in _linalg.sym_pivots(sparse_intersection(pg))):
            raise NotNegativeDefinite("intersection matrix is not negative definite")
    except _linalg.ZeroPivot as exc:
        raise NotNegativeDefinite("intersection matrix is singular") from exc
    factors = _linalg.invariant_factors(integer_intersection_matrix(pg))
    assert len(factors) == pg.n
    assert math.prod(factors) == graph_determinant(pg)
    free_rank = 2 * sum(v.genus for v in pg.vertices) + pg.loop_count()
    return H1Decomposition(
        free_rank=free_rank, torsion=tuple(f for f in factors if f > 1)
    )


def classify_topologically(pg: PlumbingGraph) -> LinkClass:
    """Link classification read off the resolved graph itself.

    Rational homology sphere iff the graph is a tree with only rational
    curves; integral additionally needs |det| = 1.  Independent of the gcd
    criterion, which it must always agree with.
    """
    tree = pg.is_tree()
    rational = all(v.genus == 0 for v in pg.vertices)
    if not (tree and rational):
        kind = LinkKind.NOT_QHS
    elif graph_determinant(pg) == 1:
        kind = LinkKind.ZHS
    else:
        kind = LinkKind.QHS
    return LinkClass(kind=kind, witnesses=(), noncoprime_pairs=())


def pullback_on_full_resolution(pg: PlumbingGraph, qr: QResolutionData) -> dict[int, int]:
    """Multiplicities of the total transform of the curve, per vertex.

    Solves (pullback . E_i) = 0 for every exceptional vertex, with the
    strict transform of the curve entering through the arrow.  The solution
    must be a positive integer vector whose strict-transform entries are the
    multiplicities N_k.
    """
    rhs = [Fraction(0)] * pg.n
    for vid, mult in pg.arrow:
        rhs[vid] -= mult
    sol = _linalg.solve_symmetric(sparse_intersection(pg), rhs)
    out = {}
    for vid, value in enumerate(sol):
        assert value.denominator == 1 and value > 0, f"bad multiplicity at {vid}"
        out[vid] = int(value)
    for k in range(1, qr.g):
        for vid in pg.strict[k - 1]:
            assert out[vid] == qr.N[k], f"level {k} multiplicity is not N_k"
    return out


def minimize(pg: PlumbingGraph) -> tuple[PlumbingGraph, list[str]]:
    """Blow down (-1)-rational vertices of valency <= 2 until none remain.

    Returns the reduced graph and the labels contracted, in order.  The
    input graph is left untouched; |det| is invariant under the pass.  The
    arrow is dropped: the minimal model is a statement about the surface
    only, and the curve data does not survive contractions unchanged.
    """
    vertices = {v.vid: v for v in pg.vertices}
    edges = set(tuple(sorted(e)) for e in pg.edges)
    contracted = []
    while True:
        target = None
        for v in vertices.values():
            if v.genus != 0 or v.self_int != -1:
                continue
            nbrs = [j for e in edges if v.vid in e for j in e if j != v.vid]
            if len(nbrs) <= 2:
                target = (v, nbrs)
                break
        if target is None:
            break
        v, nbrs = target
        contracted.append(v.label)
        del vertices[v.vid]
        edges = {e for e in edges if v.vid not in e}
        for u in nbrs:
            vertices[u] = replace(vertices[u], self_int=vertices[u].self_int + 1)
        if len(nbrs) == 2:
            edges.add(tuple(sorted(nbrs)))
    keep = sorted(vertices)
    relabel = {old: new for new, old in enumerate(keep)}
    new_vertices = tuple(
        replace(vertices[old], vid=relabel[old]) for old in keep
    )
    new_edges = tuple(sorted((relabel[i], relabel[j]) for i, j in edges))
    new_strict = tuple(
        tuple(relabel[vid] for vid in level if vid in relabel) for level in pg.strict
    )
    return (
        PlumbingGraph(
            vertices=new_vertices, edges=new_edges, strict=new_strict, arrow=()
        ),
        contracted,
    )


def to_dot(pg: PlumbingGraph) -> str:
    """Graphviz source; vertices are labelled "[genus, self-intersection]"."""
    lines = ["graph plumbing {"]
    for v in pg.vertices:
        lines.append(f'  v{v.vid} [label="[{v.genus}, {v.self_int}]"];')
    for i, j in pg.edges:
        lines.append(f"  v{i} -- v{j};")
    if pg.arrow:
        lines.append('  arrow [shape=plaintext, label="curve"];')
        for vid, mult in pg.arrow:
            lines.append(f'  arrow -- v{vid} [style=dashed, label="{mult}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json_dict(pg: PlumbingGraph) -> dict:
    return {
        "vertices": [
            {"id": v.vid, "genus": v.genus, "selfint": v.self_int, "label": v.label}
            for v in pg.vertices
        ],
        "edges": [[i, j] for i, j in pg.edges],
        "arrow": [[vid, mult] for vid, mult in pg.arrow],
    }
