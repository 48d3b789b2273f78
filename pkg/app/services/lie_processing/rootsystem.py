"""
Irreducible root systems, Cartan data and the diagram automorphism group.

Conventions (Bourbaki numbering, nodes 1..n, stored 0-based):
  cartan_matrix[i][j] = <alpha_j, alpha_i^vee> = 2(alpha_i, alpha_j)/(alpha_i, alpha_i)
  B_n: alpha_n short.  C_n: alpha_n long.  G_2: alpha_1 short.
  F_4: alpha_1, alpha_2 long.  D_n: alpha_{n-2} joined to alpha_{n-1} and alpha_n.
  E_n: chain 1-3-4-5-6(-7-8) with alpha_2 joined to alpha_4.
Roots are integer coordinate tuples over the simple roots.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Sequence, Tuple

import networkx as nx
from networkx.algorithms import isomorphism

from app.core.exceptions import InternalConsistencyError, RootSystemError

Root = Tuple[int, ...]

VALID_TYPES = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 3,
    "D": lambda n: n >= 4,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}

# classical root counts, used as a construction invariant
_ROOT_COUNTS = {
    "A": lambda n: n * (n + 1),
    "B": lambda n: 2 * n * n,
    "C": lambda n: 2 * n * n,
    "D": lambda n: 2 * n * (n - 1),
    "E": lambda n: {6: 72, 7: 126, 8: 240}[n],
    "F": lambda n: 48,
    "G": lambda n: 12,
}


def _cartan_matrix(type_label: str, rank: int) -> List[List[int]]:
    n = rank
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def join(i: int, j: int, a_ij: int = -1, a_ji: int = -1) -> None:
        A[i][j] = a_ij
        A[j][i] = a_ji

    if type_label in ("A", "B", "C"):
        for i in range(n - 1):
            join(i, i + 1)
        if type_label == "B":
            # final root is shorter
            join(n - 2, n - 1, -1, -2)
        elif type_label == "C":
            # final root is longer
            join(n - 2, n - 1, -2, -1)
    elif type_label == "D":
        for i in range(n - 2):
            join(i, i + 1)
        join(n - 3, n - 1)
    elif type_label == "E":
        for i, j in [(0, 2), (2, 3), (3, 4), (1, 3)] + [(k, k + 1) for k in range(4, n - 1)]:
            join(i, j)
    elif type_label == "F":
        join(0, 1)
        join(1, 2, -1, -2)
        join(2, 3)
    elif type_label == "G":
        join(0, 1, -3, -1)
    return A


def _simple_root_lengths(A: Sequence[Sequence[int]]) -> Tuple[int, ...]:
    """Squared lengths (alpha_i, alpha_i), scaled so the shortest is 2."""
    n = len(A)
    lengths: Dict[int, Fraction] = {0: Fraction(1)}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for j in range(n):
            if j != i and A[i][j] != 0 and j not in lengths:
                # A[i][j] L_i = A[j][i] L_j
                lengths[j] = lengths[i] * A[i][j] / A[j][i]
                queue.append(j)
    shortest = min(lengths.values())
    return tuple(int(lengths[i] / shortest * 2) for i in range(n))


@dataclass(frozen=True)
class DiagramAutomorphism:
    """Permutation rho of the simple roots; perm[i] = rho(i), 0-based."""

    perm: Tuple[int, ...]

    @property
    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.perm))

    def __call__(self, i: int) -> int:
        return self.perm[i]

    def compose(self, other: "DiagramAutomorphism") -> "DiagramAutomorphism":
        """self after other."""
        return DiagramAutomorphism(tuple(self.perm[other.perm[i]] for i in range(len(self.perm))))

    def inverse(self) -> "DiagramAutomorphism":
        inv = [0] * len(self.perm)
        for i, j in enumerate(self.perm):
            inv[j] = i
        return DiagramAutomorphism(tuple(inv))

    def orbits(self) -> List[Tuple[int, ...]]:
        seen, result = set(), []
        for start in range(len(self.perm)):
            if start in seen:
                continue
            orbit, i = [], start
            while i not in seen:
                seen.add(i)
                orbit.append(i)
                i = self.perm[i]
            result.append(tuple(orbit))
        return result

    def cycles(self) -> str:
        """1-based cycle notation, fixed points omitted; identity is '()'."""
        parts = [
            "(" + " ".join(str(i + 1) for i in orbit) + ")"
            for orbit in self.orbits() if len(orbit) > 1
        ]
        return "".join(parts) or "()"

    @classmethod
    def identity(cls, rank: int) -> "DiagramAutomorphism":
        return cls(tuple(range(rank)))

    @classmethod
    def from_cycles(cls, text: str, rank: int) -> "DiagramAutomorphism":
        """Parse '(1 3 4)(2 5)' (1-based); '()' or '' is the identity."""
        perm = list(range(rank))
        body = text.replace(" ", ",").strip()
        for chunk in body.replace(")", "").split("("):
            entries = [e for e in chunk.split(",") if e]
            if not entries:
                continue
            try:
                nodes = [int(e) - 1 for e in entries]
            except ValueError as e:
                raise RootSystemError(f"bad cycle notation {text!r}") from e
            if any(not 0 <= k < rank for k in nodes) or len(set(nodes)) != len(nodes):
                raise RootSystemError(f"bad cycle {chunk!r} for rank {rank}")
            for a, b in zip(nodes, nodes[1:] + nodes[:1]):
                perm[a] = b
        if sorted(perm) != list(range(rank)):
            raise RootSystemError(f"cycles {text!r} do not define a permutation")
        return cls(tuple(perm))


@dataclass(frozen=True)
class RootSystem:
    type_label: str
    rank: int
    cartan_matrix: Tuple[Tuple[int, ...], ...]
    roots: Tuple[Root, ...]
    simple_lengths: Tuple[int, ...] = field(repr=False)

    @property
    def label(self) -> str:
        return f"{self.type_label}{self.rank}"

    @property
    def simple_roots(self) -> Tuple[Root, ...]:
        return tuple(simple_root(self.rank, i) for i in range(self.rank))

    @cached_property
    def positive_roots(self) -> Tuple[Root, ...]:
        """Positive roots ordered by height, ties by lexicographic coordinates."""
        return tuple(sorted((r for r in self.roots if is_positive(r)), key=root_order_key))

    @cached_property
    def root_set(self) -> frozenset:
        return frozenset(self.roots)

    def is_root(self, v: Root) -> bool:
        return tuple(v) in self.root_set

    def inner_product(self, a: Root, b: Root) -> int:
        """(a, b) with simple roots scaled so that short roots have length 2."""
        total = Fraction(0)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if bj:
                    total += ai * bj * Fraction(self.cartan_matrix[i][j] * self.simple_lengths[i], 2)
        if total.denominator != 1:
            raise InternalConsistencyError(f"non-integral inner product ({a}, {b})")
        return int(total)

    def pairing(self, a: Root, b: Root) -> int:
        """<a, b^vee> = 2(a, b)/(b, b) for arbitrary lattice vectors a and root b."""
        num, den = 2 * self.inner_product(a, b), self.inner_product(b, b)
        if num % den:
            raise InternalConsistencyError(f"non-integral pairing <{a}, {b}^vee>")
        return num // den

    def reflect(self, beta: Root, i: int) -> Root:
        c = sum(beta[j] * self.cartan_matrix[i][j] for j in range(self.rank))
        return tuple(b - (c if k == i else 0) for k, b in enumerate(beta))

    def chain_length_below(self, alpha: Root, beta: Root) -> int:
        """max{k : beta - k alpha in Phi}."""
        k = 0
        while self.is_root(add_roots(beta, scale_root(alpha, -(k + 1)))):
            k += 1
        return k


def simple_root(rank: int, i: int) -> Root:
    return tuple(1 if k == i else 0 for k in range(rank))


def height(r: Root) -> int:
    return sum(r)


def is_positive(r: Root) -> bool:
    return all(c >= 0 for c in r) and any(r)


def add_roots(a: Root, b: Root) -> Root:
    return tuple(x + y for x, y in zip(a, b))


def scale_root(a: Root, k: int) -> Root:
    return tuple(k * x for x in a)


def neg(a: Root) -> Root:
    return tuple(-x for x in a)


def root_order_key(r: Root) -> Tuple[int, Root]:
    return (height(r), r)


def build(type_label: str, rank: int) -> RootSystem:
    """Construct the irreducible root system of the given type."""
    type_label = str(type_label).upper()
    check = VALID_TYPES.get(type_label)
    if check is None or not isinstance(rank, int) or not check(rank):
        raise RootSystemError(f"invalid type/rank pair {type_label}{rank}")

    A = _cartan_matrix(type_label, rank)
    lengths = _simple_root_lengths(A)

    # closure of the simple roots under simple reflections
    found = {simple_root(rank, i) for i in range(rank)}
    queue = deque(sorted(found))
    while queue:
        beta = queue.popleft()
        for i in range(rank):
            c = sum(beta[j] * A[i][j] for j in range(rank))
            image = tuple(b - (c if k == i else 0) for k, b in enumerate(beta))
            if image not in found:
                found.add(image)
                queue.append(image)

    roots = tuple(sorted(found, key=lambda r: (not is_positive(r), abs(height(r)), r)))
    rs = RootSystem(
        type_label=type_label,
        rank=rank,
        cartan_matrix=tuple(tuple(row) for row in A),
        roots=roots,
        simple_lengths=lengths,
    )
    _check_invariants(rs)
    return rs


def _check_invariants(rs: RootSystem) -> None:
    expected = _ROOT_COUNTS[rs.type_label](rs.rank)
    if len(rs.roots) != expected:
        raise InternalConsistencyError(f"{rs.label}: {len(rs.roots)} roots, expected {expected}")
    for r in rs.roots:
        if not rs.is_root(neg(r)):
            raise InternalConsistencyError(f"{rs.label}: -{r} missing")
        if not (all(c >= 0 for c in r) or all(c <= 0 for c in r)):
            raise InternalConsistencyError(f"{rs.label}: mixed-sign root {r}")


def _require_root(rs: RootSystem, r: Root) -> Root:
    r = tuple(r)
    if not rs.is_root(r):
        raise RootSystemError(f"{r} is not a root of {rs.label}")
    return r


def cartan_integer(rs: RootSystem, alpha: Root, beta: Root) -> int:
    """<alpha, beta^vee> for roots alpha, beta."""
    return rs.pairing(_require_root(rs, alpha), _require_root(rs, beta))


def _is_diagram_symmetry(rs: RootSystem, perm: Sequence[int]) -> bool:
    A = rs.cartan_matrix
    return all(
        A[perm[i]][perm[j]] == A[i][j] for i in range(rs.rank) for j in range(rs.rank)
    )


def dynkin_digraph(rs: RootSystem) -> nx.DiGraph:
    """Nodes are simple roots; an arc i -> j carries the Cartan entry A[i][j]."""
    graph = nx.DiGraph()
    graph.add_nodes_from(range(rs.rank))
    for i in range(rs.rank):
        for j in range(rs.rank):
            if i != j and rs.cartan_matrix[i][j]:
                graph.add_edge(i, j, weight=rs.cartan_matrix[i][j])
    return graph


def diagram_automorphisms(rs: RootSystem) -> List[DiagramAutomorphism]:
    """The group Gamma of Cartan-matrix-preserving permutations of the simple roots."""
    graph = dynkin_digraph(rs)
    matcher = isomorphism.DiGraphMatcher(
        graph, graph, edge_match=lambda a, b: a["weight"] == b["weight"]
    )
    group = set()
    for mapping in matcher.isomorphisms_iter():
        perm = tuple(mapping[i] for i in range(rs.rank))
        if not _is_diagram_symmetry(rs, perm):
            raise InternalConsistencyError(f"{rs.label}: matcher returned non-symmetry {perm}")
        group.add(DiagramAutomorphism(perm))
    return sorted(group, key=lambda g: (not g.is_identity, g.perm))


def extend_to_roots(rs: RootSystem, rho: DiagramAutomorphism, alpha: Root) -> Root:
    """Linear extension of rho from the simple roots to all of Phi."""
    alpha = _require_root(rs, alpha)
    image = [0] * rs.rank
    for i, c in enumerate(alpha):
        image[rho(i)] += c
    image = tuple(image)
    if not rs.is_root(image):
        raise InternalConsistencyError(f"{rs.label}: rho{alpha} = {image} is not a root")
    return image


def fixed_simple_root_exists(rs: RootSystem, rho: DiagramAutomorphism) -> bool:
    return any(rho(i) == i for i in range(rs.rank))
