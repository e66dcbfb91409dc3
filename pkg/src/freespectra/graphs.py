"""Colored and precolored graphs, their symmetry groups, and the structural
pipeline computing spectral measures of their quantum symmetry algebras.

A precolored graph is a vertex count plus named, pairwise-disjoint sets of
ordered vertex pairs ("color classes"); it is colored when the classes
partition all off-diagonal pairs.  Vertices are 1-based.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import (
    DuplicateColorValue,
    InvalidParameter,
    LoopEdge,
    NotConnected,
    OverlappingColorClasses,
    SchemaError,
    TooManyVertices,
    UnsupportedGraph,
)
from .freeconv import free_mul_conv
from .measures import (
    CatalogMeasure,
    MomentSequence,
    SignedAtomicMeasure,
    catalog_measure,
    moments_of,
)
from .series import DEFAULT_ORDER, ONE, ZERO, RationalLike, as_fraction

AUT_VERTEX_LIMIT = 10

UNCOLORED_CLASS_NAME = "uncolored"

STATUS_PROVEN = "proven"
STATUS_CONJECTURAL = "conjectural"


# ---------------------------------------------------------------------------
# graph data types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ColorClass:
    name: str
    pairs: frozenset[tuple[int, int]]


@dataclass(frozen=True)
class PrecoloredGraph:
    n: int
    classes: tuple[ColorClass, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise SchemaError("graph needs at least one vertex")
        names = [c.name for c in self.classes]
        if len(set(names)) != len(names):
            raise SchemaError(f"duplicate color class names in {names}")
        seen: dict[tuple[int, int], str] = {}
        for cls in self.classes:
            for (i, j) in cls.pairs:
                if not (1 <= i <= self.n and 1 <= j <= self.n):
                    raise SchemaError(f"vertex out of range in pair ({i},{j})")
                if i == j:
                    raise LoopEdge(f"loop at vertex {i} in class {cls.name!r}")
                if (i, j) in seen:
                    raise OverlappingColorClasses(
                        f"pair ({i},{j}) in classes {seen[(i, j)]!r} "
                        f"and {cls.name!r}")
                seen[(i, j)] = cls.name

    def is_colored(self) -> bool:
        covered = sum(len(c.pairs) for c in self.classes)
        return covered == self.n * (self.n - 1)

    def class_names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.classes)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "oriented": True,
            "classes": [{"name": c.name,
                         "pairs": [[i, j] for i, j in sorted(c.pairs)]}
                        for c in self.classes],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


@lru_cache(maxsize=None)
def _pair_class(x: PrecoloredGraph) -> dict[tuple[int, int], str]:
    out: dict[tuple[int, int], str] = {}
    for cls in x.classes:
        for pair in cls.pairs:
            out[pair] = cls.name
    return out


# ---------------------------------------------------------------------------
# construction and parsing
# ---------------------------------------------------------------------------

def _expand_pairs(pairs: Iterable[Sequence[int]], oriented: bool) -> frozenset:
    out = set()
    for pair in pairs:
        if len(pair) != 2:
            raise SchemaError(f"pair must have two entries, got {pair!r}")
        i, j = int(pair[0]), int(pair[1])
        out.add((i, j))
        if not oriented:
            out.add((j, i))
    return frozenset(out)


def parse_graph(text: str) -> PrecoloredGraph:
    """Parse the JSON graph document, or a built-in name like 'simplex:4'."""
    text = text.strip()
    if not text.startswith("{"):
        return builtin_graph(text)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "n" not in doc or "classes" not in doc:
        raise SchemaError("graph document needs 'n' and 'classes'")
    oriented = bool(doc.get("oriented", False))
    classes = []
    for entry in doc["classes"]:
        if "name" not in entry or "pairs" not in entry:
            raise SchemaError("each class needs 'name' and 'pairs'")
        classes.append(ColorClass(str(entry["name"]),
                                  _expand_pairs(entry["pairs"], oriented)))
    return PrecoloredGraph(int(doc["n"]), tuple(classes))


def builtin_graph(name: str) -> PrecoloredGraph:
    """Named graphs: simplex:n, edgeless:n, ngon:m, cube, rectangle,
    two_rectangles."""
    base, _, raw = name.partition(":")
    base = base.strip()
    if base == "simplex":
        n = int(raw)
        pairs = frozenset((i, j) for i in range(1, n + 1)
                          for j in range(1, n + 1) if i != j)
        classes = (ColorClass("edges", pairs),) if n > 1 else ()
        return PrecoloredGraph(n, classes)
    if base == "edgeless":
        return PrecoloredGraph(int(raw), ())
    if base == "ngon":
        m = int(raw)
        if m < 3:
            raise InvalidParameter("ngon needs m >= 3")
        pairs = set()
        for i in range(1, m + 1):
            j = i % m + 1
            pairs.add((i, j))
            pairs.add((j, i))
        return PrecoloredGraph(m, (ColorClass("adjacent", frozenset(pairs)),))
    if base == "rectangle":
        # vertices 1..4 in cyclic order; opposite sides share a color
        def sym(pairs):
            return frozenset(p for i, j in pairs for p in [(i, j), (j, i)])
        return PrecoloredGraph(4, (
            ColorClass("side_a", sym([(1, 2), (3, 4)])),
            ColorClass("side_b", sym([(2, 3), (4, 1)])),
            ColorClass("diagonal", sym([(1, 3), (2, 4)])),
        ))
    if base == "cube":
        # vertices 1..8 as binary triples, edges between Hamming-1 neighbors
        pairs = set()
        for v in range(8):
            for bit in (1, 2, 4):
                w = v ^ bit
                pairs.add((v + 1, w + 1))
        return PrecoloredGraph(8, (ColorClass("edges", frozenset(pairs)),))
    if base == "two_rectangles":
        return disjoint_union(builtin_graph("rectangle"), 2)
    raise SchemaError(f"unknown built-in graph {name!r}")


def complete_to_colored(x: PrecoloredGraph) -> PrecoloredGraph:
    """Add one class holding every uncovered off-diagonal pair (omitted when
    nothing is missing); the result is colored."""
    covered = set(_pair_class(x))
    missing = {(i, j) for i in range(1, x.n + 1) for j in range(1, x.n + 1)
               if i != j and (i, j) not in covered}
    if not missing:
        return x
    name = UNCOLORED_CLASS_NAME
    while name in x.class_names():
        name = name + "+"
    return PrecoloredGraph(x.n, x.classes + (ColorClass(name, frozenset(missing)),))


def laplacian(x: PrecoloredGraph, values: Sequence[RationalLike] | None = None
              ) -> tuple[tuple[Fraction, ...], ...]:
    """Matrix with a fixed value per color class, zero diagonal, and zero on
    uncovered pairs.  Defaults to values 1..p; the choice is immaterial for
    everything downstream, only distinctness matters."""
    if values is None:
        values = list(range(1, len(x.classes) + 1))
    vals = [as_fraction(v) for v in values]
    if len(vals) != len(x.classes):
        raise InvalidParameter(
            f"need {len(x.classes)} values, got {len(vals)}")
    if len(set(vals)) != len(vals):
        raise DuplicateColorValue(f"class values must be distinct: {vals}")
    by_class = dict(zip(x.class_names(), vals))
    lookup = _pair_class(x)
    return tuple(
        tuple(by_class[lookup[(i, j)]] if (i, j) in lookup else ZERO
              for j in range(1, x.n + 1))
        for i in range(1, x.n + 1))


# ---------------------------------------------------------------------------
# free products and disjoint unions
# ---------------------------------------------------------------------------

def free_product(x: PrecoloredGraph, y: PrecoloredGraph) -> PrecoloredGraph:
    """A copy of x at each vertex of y: within-copy pairs keep x's classes,
    cross-copy pairs get y's classes.  Vertex (i, alpha) gets linear index
    (alpha-1)*|x| + i, so the x index varies fastest."""
    t = x.n

    def vid(i: int, alpha: int) -> int:
        return (alpha - 1) * t + i

    classes = []
    taken = set()
    for cls in x.classes:
        pairs = frozenset((vid(i, a), vid(j, a))
                          for (i, j) in cls.pairs
                          for a in range(1, y.n + 1))
        classes.append(ColorClass(cls.name, pairs))
        taken.add(cls.name)
    for cls in y.classes:
        pairs = frozenset((vid(i, a), vid(j, b))
                          for i in range(1, t + 1)
                          for j in range(1, t + 1)
                          for (a, b) in cls.pairs)
        name = "outer:" + cls.name
        while name in taken:
            name = "outer:" + name
        taken.add(name)
        classes.append(ColorClass(name, pairs))
    return PrecoloredGraph(t * y.n, tuple(classes))


def disjoint_union(x: PrecoloredGraph, n: int) -> PrecoloredGraph:
    """n side-by-side copies of x (free product with the edgeless graph)."""
    if n < 1:
        raise InvalidParameter("disjoint union needs n >= 1")
    return free_product(x, builtin_graph(f"edgeless:{n}"))


# ---------------------------------------------------------------------------
# connectivity
# ---------------------------------------------------------------------------

def _undirected_adjacency(x: PrecoloredGraph) -> dict[int, set[int]]:
    adj: dict[int, set[int]] = {v: set() for v in range(1, x.n + 1)}
    for cls in x.classes:
        for (i, j) in cls.pairs:
            adj[i].add(j)
            adj[j].add(i)
    return adj


def components(x: PrecoloredGraph) -> list[list[int]]:
    """Connected components over the union of all classes, ignoring
    orientation, sorted by least vertex."""
    adj = _undirected_adjacency(x)
    seen: set[int] = set()
    out = []
    for start in range(1, x.n + 1):
        if start in seen:
            continue
        stack, comp = [start], []
        seen.add(start)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        out.append(sorted(comp))
    return out


def is_connected(x: PrecoloredGraph) -> bool:
    return len(components(x)) == 1


def induced_subgraph(x: PrecoloredGraph, vertices: Sequence[int]) -> PrecoloredGraph:
    """Relabel the given vertices 1..m (in sorted order) and restrict every
    class; empty restrictions are dropped."""
    ordered = sorted(vertices)
    index = {v: k + 1 for k, v in enumerate(ordered)}
    keep = set(ordered)
    classes = []
    for cls in x.classes:
        pairs = frozenset((index[i], index[j]) for (i, j) in cls.pairs
                          if i in keep and j in keep)
        if pairs:
            classes.append(ColorClass(cls.name, pairs))
    return PrecoloredGraph(len(ordered), tuple(classes))


@dataclass(frozen=True)
class WitnessWord:
    source: int
    target: int
    path: tuple[int, ...]
    word: tuple[str, ...]  # entries "d" (forward) or "d*" (reversed edge)


@dataclass(frozen=True)
class WitnessReport:
    words: tuple[WitnessWord, ...]
    verified: bool

    def to_json_dict(self) -> dict:
        return {
            "verified": self.verified,
            "words": [{"from": w.source, "to": w.target,
                       "path": list(w.path), "word": list(w.word)}
                      for w in self.words],
        }


def connectivity_witness(x: PrecoloredGraph) -> WitnessReport:
    """For every ordered vertex pair, a word in the merged 0/1 adjacency
    matrix d and its transpose following a connecting path; the summed
    product matrices are checked to have every entry >= 1."""
    if not is_connected(x):
        raise NotConnected("witness requires a connected graph")
    n = x.n
    directed = {pair for cls in x.classes for pair in cls.pairs}
    adj = _undirected_adjacency(x)

    def bfs_paths(root: int) -> dict[int, list[int]]:
        paths = {root: [root]}
        frontier = [root]
        while frontier:
            nxt = []
            for v in frontier:
                for w in sorted(adj[v]):
                    if w not in paths:
                        paths[w] = paths[v] + [w]
                        nxt.append(w)
            frontier = nxt
        return paths

    words = []
    for i in range(1, n + 1):
        paths = bfs_paths(i)
        for j in range(1, n + 1):
            if i == j:
                path = [i, min(adj[i]), i] if adj[i] else [i]
            else:
                path = paths[j]
            word = tuple("d" if (u, v) in directed else "d*"
                         for u, v in zip(path, path[1:]))
            words.append(WitnessWord(i, j, tuple(path), word))

    d = [[1 if (i + 1, j + 1) in directed else 0 for j in range(n)]
         for i in range(n)]
    dstar = [[d[j][i] for j in range(n)] for i in range(n)]

    def matmul(a, b):
        return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)]
                for i in range(n)]

    total = [[0] * n for _ in range(n)]
    for w in words:
        prod = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        for step in w.word:
            prod = matmul(prod, d if step == "d" else dstar)
        for i in range(n):
            for j in range(n):
                total[i][j] += prod[i][j]
    verified = all(total[i][j] >= 1 for i in range(n) for j in range(n))
    return WitnessReport(tuple(words), verified)


# ---------------------------------------------------------------------------
# symmetry groups
# ---------------------------------------------------------------------------

Permutation = tuple[int, ...]  # images of 1..n at positions 0..n-1


@dataclass(frozen=True)
class PermutationGroup:
    n: int
    elements: tuple[Permutation, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def orbit(self, vertex: int) -> set[int]:
        return {g[vertex - 1] for g in self.elements}

    def is_transitive(self) -> bool:
        return len(self.orbit(1)) == self.n

    def orbits(self) -> list[set[int]]:
        seen: set[int] = set()
        out = []
        for v in range(1, self.n + 1):
            if v in seen:
                continue
            orb = self.orbit(v)
            seen |= orb
            out.append(orb)
        return out

    def fixed_point_counts(self) -> list[int]:
        return [sum(1 for v in range(self.n) if g[v] == v + 1)
                for g in self.elements]

    def is_group(self) -> bool:
        elems = set(self.elements)
        identity = tuple(range(1, self.n + 1))
        if identity not in elems:
            return False
        for g in self.elements:
            inverse = [0] * self.n
            for v in range(self.n):
                inverse[g[v] - 1] = v + 1
            if tuple(inverse) not in elems:
                return False
            for h in self.elements:
                composed = tuple(g[h[v] - 1] for v in range(self.n))
                if composed not in elems:
                    return False
        return True


def _class_signature(x: PrecoloredGraph) -> dict[int, tuple]:
    """Per-vertex invariant: out/in degree per class, used for pruning."""
    sig = {}
    for v in range(1, x.n + 1):
        rows = []
        for cls in x.classes:
            out_deg = sum(1 for (i, _) in cls.pairs if i == v)
            in_deg = sum(1 for (_, j) in cls.pairs if j == v)
            rows.append((out_deg, in_deg))
        sig[v] = tuple(rows)
    return sig


def automorphism_group(x: PrecoloredGraph) -> PermutationGroup:
    """All permutations preserving every color class (and therefore also the
    uncolored pairs), by backtracking; enumeration order is lexicographic."""
    if x.n > AUT_VERTEX_LIMIT:
        raise TooManyVertices(
            f"automorphism enumeration limited to {AUT_VERTEX_LIMIT} vertices")
    lookup = _pair_class(x)
    sig = _class_signature(x)
    n = x.n
    images = [0] * (n + 1)
    used = [False] * (n + 1)
    found: list[Permutation] = []

    def extend(v: int) -> None:
        if v > n:
            found.append(tuple(images[1:]))
            return
        for w in range(1, n + 1):
            if used[w] or sig[w] != sig[v]:
                continue
            ok = True
            for u in range(1, v):
                if (lookup.get((images[u], w)) != lookup.get((u, v)) or
                        lookup.get((w, images[u])) != lookup.get((v, u))):
                    ok = False
                    break
            if not ok:
                continue
            images[v] = w
            used[w] = True
            extend(v + 1)
            used[w] = False
        images[v] = 0

    extend(1)
    return PermutationGroup(n, tuple(found))


def is_homogeneous(x: PrecoloredGraph) -> bool:
    """True when the color-preserving symmetry group is vertex-transitive."""
    return automorphism_group(x).is_transitive()


def classical_spectral_measure(x: PrecoloredGraph) -> SignedAtomicMeasure:
    """(1/|G|) * sum over s of (#elements with s fixed points) * delta_s."""
    group = automorphism_group(x)
    atoms: dict[Fraction, Fraction] = {}
    share = Fraction(1, group.order)
    for count in group.fixed_point_counts():
        loc = Fraction(count)
        atoms[loc] = atoms.get(loc, ZERO) + share
    return SignedAtomicMeasure.from_atoms(atoms)


def color_isomorphism(x: PrecoloredGraph, y: PrecoloredGraph) -> Permutation | None:
    """A bijection of vertices carrying each class of x onto the y class of
    the same name, or None.  Classes are matched by name."""
    if x.n != y.n or set(x.class_names()) != set(y.class_names()):
        return None
    if sorted((c.name, len(c.pairs)) for c in x.classes) != \
            sorted((c.name, len(c.pairs)) for c in y.classes):
        return None
    lx, ly = _pair_class(x), _pair_class(y)
    sx, sy = _class_signature(x), _class_signature(y)
    norm_x = {v: tuple(sorted(zip(x.class_names(), sx[v]))) for v in sx}
    norm_y = {v: tuple(sorted(zip(y.class_names(), sy[v]))) for v in sy}
    n = x.n
    images = [0] * (n + 1)
    used = [False] * (n + 1)

    def extend(v: int) -> Permutation | None:
        if v > n:
            return tuple(images[1:])
        for w in range(1, n + 1):
            if used[w] or norm_y[w] != norm_x[v]:
                continue
            if all(ly.get((images[u], w)) == lx.get((u, v)) and
                   ly.get((w, images[u])) == lx.get((v, u))
                   for u in range(1, v)):
                images[v] = w
                used[w] = True
                result = extend(v + 1)
                if result is not None:
                    return result
                used[w] = False
        images[v] = 0
        return None

    return extend(1)


# ---------------------------------------------------------------------------
# magic matrices
# ---------------------------------------------------------------------------

MagicVector = tuple[Fraction, ...]
MagicMatrix = tuple[tuple[MagicVector, ...], ...]


def build_magic_matrix(group: PermutationGroup) -> MagicMatrix:
    """The n x n matrix of characteristic 0/1 functions on the group:
    entry (i, j) marks the elements sending j to i."""
    n = group.n
    return tuple(
        tuple(tuple(ONE if g[j - 1] == i else ZERO for g in group.elements)
              for j in range(1, n + 1))
        for i in range(1, n + 1))


def is_magic_biunitary(matrix: MagicMatrix) -> bool:
    """Each entry idempotent under pointwise product; each row and column a
    partition of the constant-one function with pairwise products zero."""
    n = len(matrix)
    if n == 0 or any(len(row) != n for row in matrix):
        return False
    size = len(matrix[0][0])
    ones = (ONE,) * size

    def pointwise(u: MagicVector, v: MagicVector) -> MagicVector:
        return tuple(a * b for a, b in zip(u, v))

    def vec_sum(vectors: Iterable[MagicVector]) -> MagicVector:
        total = [ZERO] * size
        for v in vectors:
            for k, a in enumerate(v):
                total[k] += a
        return tuple(total)

    zero = (ZERO,) * size
    for i in range(n):
        for j in range(n):
            entry = matrix[i][j]
            if pointwise(entry, entry) != entry:
                return False
    for i in range(n):
        row = [matrix[i][j] for j in range(n)]
        col = [matrix[j][i] for j in range(n)]
        for line in (row, col):
            if vec_sum(line) != ones:
                return False
            for a in range(n):
                for b in range(a + 1, n):
                    if pointwise(line[a], line[b]) != zero:
                        return False
    return True


def magic_biunitary_check(group: PermutationGroup) -> bool:
    return is_magic_biunitary(build_magic_matrix(group))


# ---------------------------------------------------------------------------
# quantum spectral measures
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuantumMeasure:
    moments: MomentSequence
    status: str  # "proven" or "conjectural"
    description: str


def _worse(a: str, b: str) -> str:
    return STATUS_CONJECTURAL if STATUS_CONJECTURAL in (a, b) else STATUS_PROVEN


def _eta_moments(n: int, order: int) -> MomentSequence:
    return moments_of(CatalogMeasure("eta", (Fraction(n),)), order)


def _symmetric_unoriented(pairs: frozenset[tuple[int, int]]) -> set | None:
    """The underlying unoriented edge set when the class is symmetric."""
    if any((j, i) not in pairs for (i, j) in pairs):
        return None
    return {(min(i, j), max(i, j)) for (i, j) in pairs}


def _as_spanning_cycle(x: PrecoloredGraph, cls: ColorClass) -> bool:
    edges = _symmetric_unoriented(cls.pairs)
    if edges is None or len(edges) != x.n:
        return False
    degree = {v: 0 for v in range(1, x.n + 1)}
    for (i, j) in edges:
        degree[i] += 1
        degree[j] += 1
    if any(d != 2 for d in degree.values()):
        return False
    return is_connected(PrecoloredGraph(x.n, (ColorClass("c", cls.pairs),)))


def _is_perfect_matching(x: PrecoloredGraph, cls: ColorClass) -> bool:
    edges = _symmetric_unoriented(cls.pairs)
    if edges is None or len(edges) * 2 != x.n:
        return False
    touched = [v for e in edges for v in e]
    return len(set(touched)) == x.n


def _is_cube_class(x: PrecoloredGraph, cls: ColorClass) -> bool:
    """The 3-cube skeleton is the unique connected 3-regular bipartite graph
    on 8 vertices, so invariants suffice."""
    if x.n != 8:
        return False
    edges = _symmetric_unoriented(cls.pairs)
    if edges is None or len(edges) != 12:
        return False
    adj: dict[int, set[int]] = {v: set() for v in range(1, 9)}
    for (i, j) in edges:
        adj[i].add(j)
        adj[j].add(i)
    if any(len(adj[v]) != 3 for v in adj):
        return False
    sub = PrecoloredGraph(8, (ColorClass("c", cls.pairs),))
    if not is_connected(sub):
        return False
    color = {1: 0}
    stack = [1]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in color:
                color[w] = 1 - color[v]
                stack.append(w)
            elif color[w] == color[v]:
                return False
    return True


def _peel_outer_simplex(x: PrecoloredGraph) -> tuple[PrecoloredGraph, int] | None:
    """Recognize x = inner * simplex(k): find a class that is exactly the set
    of cross pairs of a partition into k >= 2 equal groups whose induced
    colored graphs are pairwise isomorphic."""
    all_vertices = set(range(1, x.n + 1))
    for cls in x.classes:
        other = PrecoloredGraph(
            x.n, tuple(c for c in x.classes if c.name != cls.name))
        groups = components(other)
        if len(groups) < 2:
            continue
        sizes = {len(g) for g in groups}
        if len(sizes) != 1:
            continue
        member = {v: gi for gi, g in enumerate(groups) for v in g}
        cross_ok = all(
            ((u, v) in cls.pairs) == (member[u] != member[v])
            for u in all_vertices for v in all_vertices if u != v)
        if not cross_ok:
            continue
        induced = [induced_subgraph(x, g) for g in groups]
        if any(color_isomorphism(induced[0], g) is None for g in induced[1:]):
            continue
        return induced[0], len(groups)
    return None


def _quantum(x: PrecoloredGraph, order: int) -> tuple[MomentSequence, str, bool, str]:
    """Recursive evaluation; returns (moments, status, pure-product-of-
    generic-simplices flag, human description)."""
    comps = components(x)
    if len(comps) > 1:
        induced = [induced_subgraph(x, c) for c in comps]
        base = induced[0]
        for other in induced[1:]:
            if color_isomorphism(base, other) is None:
                raise UnsupportedGraph(
                    "disconnected graph whose components are not isomorphic "
                    "colored copies of one another")
        inner_m, inner_status, _, inner_desc = _quantum(base, order)
        k = len(comps)
        moments = free_mul_conv(inner_m, _eta_moments(k, order), order)
        status = inner_status if k == 2 else _worse(inner_status,
                                                    STATUS_CONJECTURAL)
        return moments, status, False, f"{k} disjoint copies of [{inner_desc}]"

    y = complete_to_colored(x)
    if x.n == 1 or len(y.classes) == 1:
        m = y.n
        return (_eta_moments(m, order), STATUS_PROVEN, m >= 4, f"simplex({m})")

    peeled = _peel_outer_simplex(y)
    if peeled is not None:
        inner, k = peeled
        inner_m, inner_status, inner_pure, inner_desc = _quantum(inner, order)
        moments = free_mul_conv(inner_m, _eta_moments(k, order), order)
        if k == 2 or (k >= 4 and inner_pure):
            status = inner_status
        else:
            status = _worse(inner_status, STATUS_CONJECTURAL)
        return (moments, status, inner_pure and k >= 4,
                f"[{inner_desc}] * simplex({k})")

    if len(y.classes) == 2:
        for cls in y.classes:
            if _as_spanning_cycle(y, cls):
                m = y.n
                if m == 4:
                    raise UnsupportedGraph(
                        "the monochrome 4-gon has no implemented closed "
                        "spectral measure")
                dm = catalog_measure(CatalogMeasure("dihedral", (Fraction(m),)))
                return (dm.moments(order), STATUS_PROVEN, False, f"{m}-gon")
            if _is_cube_class(y, cls):
                cube = catalog_measure(CatalogMeasure("cube"), order)
                return (cube.truncate(order), STATUS_PROVEN, False, "cube")

    if y.n == 4 and len(y.classes) == 3 and \
            all(_is_perfect_matching(y, c) for c in y.classes):
        group4 = catalog_measure(CatalogMeasure("uniform_group", (Fraction(4),)))
        return (group4.moments(order), STATUS_PROVEN, False, "rectangle")

    raise UnsupportedGraph(
        "graph is not recognized by the structural pipeline (not a simplex, "
        "free product of simplices, disjoint union of isomorphic copies, "
        "polygon, rectangle, or cube)")


def quantum_measure(x: PrecoloredGraph, order: int = DEFAULT_ORDER) -> QuantumMeasure:
    """Spectral measure of the quantum symmetry algebra of x, evaluated by
    structural recursion.  Raises UnsupportedGraph when the shape carries no
    implemented closed measure."""
    moments, status, _, desc = _quantum(x, order)
    return QuantumMeasure(moments, status, desc)
