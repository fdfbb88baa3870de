"""Dynkin ıquivers and their root data.

Root lattice vectors are tuples of integers aligned with ``quiver.nodes``
(the node labels in increasing order). Weyl group elements are stored as
permutations of the finite set Φ⁺ ∪ −Φ⁺, which makes orders and Coxeter
matrices exact.
"""

import collections
import math
from typing import Dict, FrozenSet, Iterable, List, Mapping, NamedTuple, \
    Optional, Sequence, Tuple, Union

from . import exceptions
from . import log
from .enums import DiagramType, Labels

__all__ = [
    'IQuiver',
    'RootSystem',
    'RestrictedWeyl',
    'ITauReps',
    'RootDatum',
    'make_quiver',
    'dynkin_diagram',
    'build',
    'bs_apply',
    'reflect_quiver',
    'euler_form',
    'symmetric_form',
]

logger = log.pkg_logger.getChild('rootdata')

Vector = Tuple[int, ...]
Arrow = Tuple[int, int]
Perm = Tuple[int, ...]


class IQuiver(NamedTuple):
    """A quiver with an involution τ of its diagram preserving orientation.

    ``orientation`` contains ordered pairs (i, j), each an arrow i → j.
    ``tau`` is stored as a tuple of (i, τi) pairs, one for every node.
    """
    nodes: Tuple[int, ...]
    edges: FrozenSet[FrozenSet[int]]
    orientation: FrozenSet[Arrow]
    tau: Tuple[Tuple[int, int], ...]

    def t(self, i: int) -> int:
        return dict(self.tau)[i]

    def tau_map(self) -> Dict[int, int]:
        return dict(self.tau)

    def is_split(self) -> bool:
        return all(i == j for i, j in self.tau)

    def position(self, i: int) -> int:
        return self.nodes.index(i)

    def arrows_into(self, i: int) -> List[Arrow]:
        return sorted(a for a in self.orientation if a[1] == i)

    def arrows_out_of(self, i: int) -> List[Arrow]:
        return sorted(a for a in self.orientation if a[0] == i)

    def is_sink(self, i: int) -> bool:
        return not self.arrows_out_of(i)

    def sinks(self) -> List[int]:
        return [i for i in self.nodes if self.is_sink(i)]

    def cartan(self, i: int, j: int) -> int:
        if i == j:
            return 2
        return -1 if frozenset((i, j)) in self.edges else 0

    def plain(self) -> 'IQuiver':
        """The same quiver with τ = Id."""
        return self._replace(tau=tuple((i, i) for i in self.nodes))

    def format_orientation(self) -> str:
        return ','.join(f'{i}->{j}' for i, j in sorted(self.orientation))


def make_quiver(
        nodes: Iterable[int],
        edges: Iterable[Iterable[int]],
        orientation: Iterable[Arrow],
        tau: Optional[Mapping[int, int]] = None,
) -> IQuiver:
    """Assemble and validate an ıquiver.

    Raises:
        InvalidInvolution: if τ is not an involution of the diagram, or
            c_{i,τi} ≠ 0 for some i.
        InvalidOrientation: if the orientation does not orient each edge
            exactly once, has a cycle, or is not τ-stable.
    """
    nodes = tuple(sorted(nodes))
    node_set = set(nodes)
    edges = frozenset(frozenset(e) for e in edges)
    for e in edges:
        if len(e) != 2 or not e <= node_set:
            raise ValueError(f'Invalid edge {sorted(e)}')
    if tau is None:
        tau = {i: i for i in nodes}
    tau = dict(tau)
    if set(tau) != node_set or set(tau.values()) != node_set:
        raise exceptions.InvalidInvolution('τ must be a permutation of nodes')
    for i in nodes:
        if tau[tau[i]] != i:
            raise exceptions.InvalidInvolution(f'τ is not an involution at {i}')
        if tau[i] != i and frozenset((i, tau[i])) in edges:
            raise exceptions.InvalidInvolution(
                f'c_{{{i},{tau[i]}}} ≠ 0: τ swaps adjacent nodes')
    for e in edges:
        i, j = sorted(e)
        if frozenset((tau[i], tau[j])) not in edges:
            raise exceptions.InvalidInvolution(
                f'τ does not preserve the edge {i}-{j}')

    orientation = frozenset((int(i), int(j)) for i, j in orientation)
    oriented_edges = collections.Counter(
        frozenset(a) for a in orientation)
    if set(oriented_edges) != set(edges) or \
            any(n != 1 for n in oriented_edges.values()):
        raise exceptions.InvalidOrientation(
            'Orientation must orient every edge exactly once')
    for i, j in orientation:
        if (tau[i], tau[j]) not in orientation:
            raise exceptions.InvalidOrientation(
                f'Orientation is not τ-stable at arrow {i}->{j}')
    _check_acyclic(nodes, orientation)

    return IQuiver(nodes, edges, orientation,
                   tuple((i, tau[i]) for i in nodes))


def _check_acyclic(nodes: Sequence[int], orientation: FrozenSet[Arrow]):
    indegree = {i: 0 for i in nodes}
    for _, j in orientation:
        indegree[j] += 1
    queue = collections.deque(i for i in nodes if not indegree[i])
    seen = 0
    while queue:
        i = queue.popleft()
        seen += 1
        for a, b in orientation:
            if a == i:
                indegree[b] -= 1
                if not indegree[b]:
                    queue.append(b)
    if seen != len(nodes):
        raise exceptions.InvalidOrientation('Orientation has a cycle')


class DynkinDiagram(NamedTuple):
    nodes: Tuple[int, ...]
    edges: FrozenSet[FrozenSet[int]]
    diagram_tau: Dict[int, int]
    root_node: int


def dynkin_diagram(
        diagram_type: Union[DiagramType, str],
        rank: int,
        labels: Union[Labels, str] = Labels.STANDARD,
        twisted: bool = False,
) -> DynkinDiagram:
    """Standard labelled Dynkin diagram of type A, D or E.

    Type A_n uses nodes 1..n, or −r..r for symmetric labels (n = 2r+1).
    D_n has edges i–(i+1) for i ≤ n−2 and (n−2)–n. E_n has the chain
    1–2–3–5–6–… with 4 attached to 3.

    The returned root node is where the default orientation points to.
    """
    diagram_type = DiagramType(diagram_type)
    labels = Labels(labels)
    if labels is Labels.SYMMETRIC and (
            diagram_type is not DiagramType.A or rank % 2 == 0):
        raise ValueError('Symmetric labels exist only for A_{2r+1}')

    if diagram_type is DiagramType.A:
        if rank < 1:
            raise ValueError('A_n needs n ≥ 1')
        if labels is Labels.SYMMETRIC:
            r = rank // 2
            nodes = tuple(range(-r, r + 1))
            edges = [(j, j + 1) for j in range(-r, r)]
            diagram_tau = {j: -j for j in nodes}
            root = 0
        else:
            nodes = tuple(range(1, rank + 1))
            edges = [(i, i + 1) for i in range(1, rank)]
            diagram_tau = {i: rank + 1 - i for i in nodes}
            root = (rank + 1) // 2 if twisted else rank
    elif diagram_type is DiagramType.D:
        if rank < 4:
            raise ValueError('D_n needs n ≥ 4')
        nodes = tuple(range(1, rank + 1))
        edges = [(i, i + 1) for i in range(1, rank - 1)] + \
            [(rank - 2, rank)]
        diagram_tau = {i: i for i in nodes}
        diagram_tau[rank - 1], diagram_tau[rank] = rank, rank - 1
        root = rank - 2
    else:
        if rank not in (6, 7, 8):
            raise ValueError('E_n needs n in 6, 7, 8')
        nodes = tuple(range(1, rank + 1))
        chain = [1, 2, 3] + list(range(5, rank + 1))
        edges = list(zip(chain, chain[1:])) + [(3, 4)]
        diagram_tau = {i: i for i in nodes}
        if rank == 6:
            diagram_tau.update({1: 6, 6: 1, 2: 5, 5: 2})
        root = 3

    return DynkinDiagram(nodes, frozenset(frozenset(e) for e in edges),
                         diagram_tau, root)


def default_orientation(diagram: DynkinDiagram) -> FrozenSet[Arrow]:
    """Orient every edge towards the root node."""
    distance = {diagram.root_node: 0}
    queue = collections.deque([diagram.root_node])
    while queue:
        i = queue.popleft()
        for e in diagram.edges:
            if i in e:
                j, = e - {i}
                if j not in distance:
                    distance[j] = distance[i] + 1
                    queue.append(j)
    arrows = set()
    for e in diagram.edges:
        i, j = sorted(e)
        arrows.add((i, j) if distance[i] > distance[j] else (j, i))
    return frozenset(arrows)


class RootSystem:
    """Positive roots and the Weyl group of a simply laced diagram."""

    def __init__(self, nodes: Sequence[int], cartan: Sequence[Sequence[int]]):
        self.nodes = tuple(nodes)
        self.rank = len(self.nodes)
        self.cartan = tuple(tuple(row) for row in cartan)
        self.simple = tuple(
            tuple(int(k == i) for k in range(self.rank))
            for i in range(self.rank))
        self.positive = self._close_positive_roots()
        self.all_roots: Tuple[Vector, ...] = self.positive + tuple(
            tuple(-x for x in beta) for beta in self.positive)
        self._index = {beta: n for n, beta in enumerate(self.all_roots)}
        self.reflections: Tuple[Perm, ...] = tuple(
            self._as_perm(lambda beta, k=k: self.reflect(k, beta))
            for k in range(self.rank))

    def reflect(self, k: int, beta: Vector) -> Vector:
        """s_k(β) = β − (Σ_j β_j c_kj) α_k, k a node position."""
        pairing = sum(b * c for b, c in zip(beta, self.cartan[k]))
        return tuple(b - pairing * (n == k) for n, b in enumerate(beta))

    def _close_positive_roots(self) -> Tuple[Vector, ...]:
        found = set(self.simple)
        queue = collections.deque(self.simple)
        while queue:
            beta = queue.popleft()
            for k in range(self.rank):
                gamma = self.reflect(k, beta)
                if all(x >= 0 for x in gamma) and gamma not in found:
                    found.add(gamma)
                    queue.append(gamma)
        return tuple(sorted(found, key=lambda b: (sum(b), b[::-1])))

    def _as_perm(self, func) -> Perm:
        return tuple(self._index[func(beta)] for beta in self.all_roots)

    def index(self, beta: Vector) -> int:
        return self._index[tuple(beta)]

    def is_root(self, beta: Vector) -> bool:
        return tuple(beta) in self._index

    def is_positive(self, beta: Vector) -> bool:
        return any(beta) and all(x >= 0 for x in beta)

    def identity(self) -> Perm:
        return tuple(range(len(self.all_roots)))

    @staticmethod
    def compose(w1: Perm, w2: Perm) -> Perm:
        """The permutation of w1∘w2 (apply w2 first)."""
        return tuple(w1[k] for k in w2)

    def apply(self, w: Perm, beta: Vector) -> Vector:
        return self.all_roots[w[self._index[tuple(beta)]]]

    def word_to_perm(self, word: Iterable[int]) -> Perm:
        """Permutation of s_{k1}···s_{kt} for node positions k1..kt."""
        w = self.identity()
        for k in word:
            w = self.compose(w, self.reflections[k])
        return w

    def longest_element(self) -> Perm:
        """The element sending Φ⁺ to −Φ⁺."""
        w = self.identity()
        while True:
            for k in range(self.rank):
                if self.is_positive(self.apply(w, self.simple[k])):
                    w = self.compose(w, self.reflections[k])
                    break
            else:
                return w

    def reduced_word(self, w: Perm) -> List[int]:
        """A reduced expression of w as a list of node positions."""
        word = []
        while w != self.identity():
            for k in range(self.rank):
                if not self.is_positive(self.apply(w, self.simple[k])):
                    w = self.compose(w, self.reflections[k])
                    word.append(k)
                    break
        return word[::-1]

    @staticmethod
    def perm_order(w: Perm) -> int:
        seen = set()
        order = 1
        for start in range(len(w)):
            if start in seen:
                continue
            length = 0
            k = start
            while k not in seen:
                seen.add(k)
                k = w[k]
                length += 1
            order = order * length // math.gcd(order, length)
        return order


class ITauReps(NamedTuple):
    """Chosen representatives 𝕀_τ of the τ-orbits."""
    reps: Tuple[int, ...]
    rep_of: Tuple[Tuple[int, int], ...]

    def rep(self, i: int) -> int:
        return dict(self.rep_of)[i]


def choose_reps(quiver: IQuiver) -> ITauReps:
    """One representative per τ-orbit: the one minimizing (|j|, −j)."""
    rep_of = {}
    for i in quiver.nodes:
        rep_of[i] = min((i, quiver.t(i)), key=lambda j: (abs(j), -j))
    reps = tuple(sorted(set(rep_of.values()), key=quiver.position))
    return ITauReps(reps, tuple(sorted(rep_of.items())))


class RestrictedWeyl:
    """The restricted Weyl group W_τ generated by the bs_i, i ∈ 𝕀_τ."""

    def __init__(self, roots: RootSystem, quiver: IQuiver, reps: ITauReps):
        self.roots = roots
        self.reps = reps.reps
        self.generators: Dict[int, Perm] = {}
        for i in self.reps:
            k, kt = quiver.position(i), quiver.position(quiver.t(i))
            perm = roots.reflections[k]
            if kt != k:
                perm = roots.compose(perm, roots.reflections[kt])
            self.generators[i] = perm
        self.coxeter_matrix: Dict[Tuple[int, int], int] = {}
        for i in self.reps:
            for j in self.reps:
                self.coxeter_matrix[i, j] = roots.perm_order(
                    roots.compose(self.generators[i], self.generators[j]))
        self._order: Optional[int] = None

    def m(self, i: int, j: int) -> int:
        return self.coxeter_matrix[i, j]

    def order(self, limit: int = 200000) -> int:
        """Order of W_τ by closure of its generators.

        Raises:
            SizeCapExceeded: if more than *limit* elements are found.
        """
        if self._order is None:
            identity = self.roots.identity()
            seen = {identity}
            queue = collections.deque([identity])
            while queue:
                w = queue.popleft()
                for g in self.generators.values():
                    x = self.roots.compose(w, g)
                    if x not in seen:
                        seen.add(x)
                        if len(seen) > limit:
                            raise exceptions.SizeCapExceeded(
                                f'W_τ has more than {limit} elements')
                        queue.append(x)
            self._order = len(seen)
        return self._order

    def coxeter_type(self) -> str:
        """Type label (A, B, D, E or F4, with rank) from the Coxeter matrix."""
        rank = len(self.reps)
        neighbours = {i: [j for j in self.reps
                          if j != i and self.m(i, j) > 2]
                      for i in self.reps}
        fours = [(i, j) for i in self.reps for j in self.reps
                 if i < j and self.m(i, j) == 4]
        if any(self.m(i, j) > 4 for i in self.reps for j in self.reps):
            return 'unknown'
        if fours:
            i, j = fours[0]
            if len(fours) == 1 and rank == 4 and \
                    len(neighbours[i]) == 2 and len(neighbours[j]) == 2:
                return 'F4'
            return f'B{rank}'
        if any(len(n) == 3 for n in neighbours.values()):
            branch = next(i for i, n in neighbours.items() if len(n) == 3)
            arms = sorted(_arm_length(neighbours, branch, j)
                          for j in neighbours[branch])
            if arms[0] == 1 and arms[1] == 1:
                return f'D{rank}'
            return f'E{rank}'
        return f'A{rank}'


def _arm_length(neighbours: Mapping[int, List[int]], branch: int,
                start: int) -> int:
    length, previous, current = 1, branch, start
    while True:
        onward = [k for k in neighbours[current] if k != previous]
        if not onward:
            return length
        previous, current = current, onward[0]
        length += 1


class RootDatum(NamedTuple):
    quiver: IQuiver
    roots: RootSystem
    weyl: RestrictedWeyl
    reps: ITauReps
    diagram_type: DiagramType
    rank: int

    @property
    def nodes(self) -> Tuple[int, ...]:
        return self.quiver.nodes

    def c(self, i: int, j: int) -> int:
        return self.quiver.cartan(i, j)

    def t(self, i: int) -> int:
        return self.quiver.t(i)

    def is_fixed(self, i: int) -> bool:
        return self.quiver.t(i) == i

    def rep(self, i: int) -> int:
        return self.reps.rep(i)

    def in_reps(self, i: int) -> bool:
        return i in self.reps.reps

    def simple(self, i: int) -> Vector:
        return self.roots.simple[self.quiver.position(i)]

    def vector(self, coeffs: Mapping[int, int]) -> Vector:
        return tuple(coeffs.get(i, 0) for i in self.nodes)

    def as_dict(self, beta: Vector) -> Dict[int, int]:
        return {i: b for i, b in zip(self.nodes, beta) if b}

    def tau_vector(self, beta: Vector) -> Vector:
        return tuple(beta[self.quiver.position(self.t(i))]
                     for i in self.nodes)

    def with_quiver(self, quiver: IQuiver) -> 'RootDatum':
        """Same diagram and τ, another orientation."""
        return self._replace(quiver=quiver)

    def label(self) -> str:
        return f'{self.diagram_type}{self.rank}'


def build(
        diagram_type: Union[DiagramType, str],
        rank: int,
        orientation: Optional[Iterable[Arrow]] = None,
        tau: Union[str, Mapping[int, int], None] = 'id',
        labels: Union[Labels, str] = Labels.STANDARD,
) -> RootDatum:
    """Build the ıquiver, root system, restricted Weyl group and 𝕀_τ.

    Args:
        diagram_type: ``A``, ``D`` or ``E``.
        rank: number of nodes.
        orientation: arrows (i, j) meaning i → j; ``None`` for the default
            orientation towards the root node.
        tau: ``'id'``, ``'diagram'`` for the nontrivial diagram
            automorphism, or an explicit mapping.
        labels: node labelling (type A only).

    Raises:
        InvalidInvolution: see :func:`make_quiver`; this includes A_{2r}
            with the diagram involution.
        InvalidOrientation: see :func:`make_quiver`.
    """
    twisted = tau not in (None, 'id')
    diagram = dynkin_diagram(diagram_type, rank, labels, twisted=twisted)
    if tau in (None, 'id'):
        tau_map = {i: i for i in diagram.nodes}
    elif tau == 'diagram':
        tau_map = diagram.diagram_tau
        if all(i == j for i, j in tau_map.items()):
            raise exceptions.InvalidInvolution(
                f'{diagram_type}{rank} has no nontrivial diagram involution')
    else:
        tau_map = dict(tau)
    if orientation is None:
        orientation = default_orientation(diagram)
    quiver = make_quiver(diagram.nodes, diagram.edges, orientation, tau_map)
    cartan = [[quiver.cartan(i, j) for j in quiver.nodes]
              for i in quiver.nodes]
    roots = RootSystem(quiver.nodes, cartan)
    reps = choose_reps(quiver)
    weyl = RestrictedWeyl(roots, quiver, reps)
    logger.debug('Built %s%d with τ=%r, %d positive roots, W_τ type %s',
                 diagram_type, rank, dict(quiver.tau), len(roots.positive),
                 weyl.coxeter_type())
    return RootDatum(quiver, roots, weyl, reps, DiagramType(diagram_type),
                     rank)


def bs_apply(datum: RootDatum, i: int, alpha: Vector) -> Vector:
    """bs_i(α): s_i if τi = i, else s_i s_{τi}; α any lattice vector."""
    k = datum.quiver.position(i)
    result = datum.roots.reflect(k, tuple(alpha))
    if not datum.is_fixed(i):
        kt = datum.quiver.position(datum.t(i))
        result = datum.roots.reflect(k, datum.roots.reflect(kt, tuple(alpha)))
    return result


def reflect_quiver(quiver: IQuiver, sink: int, plain: bool = False) -> IQuiver:
    """Reverse all arrows at the sink ℓ, and at τℓ unless *plain*.

    Raises:
        NotASink: if ℓ is not a sink.
    """
    if not quiver.is_sink(sink):
        raise exceptions.NotASink(f'{sink} is not a sink')
    targets = {sink} if plain else {sink, quiver.t(sink)}
    orientation = frozenset(
        (j, i) if j in targets else (i, j)
        for i, j in quiver.orientation)
    return quiver._replace(orientation=orientation)


def euler_form(quiver: IQuiver, alpha: Vector, beta: Vector) -> int:
    """⟨α, β⟩ = Σ α_i β_i − Σ_{i→j} α_i β_j."""
    pos = {i: k for k, i in enumerate(quiver.nodes)}
    value = sum(a * b for a, b in zip(alpha, beta))
    for i, j in quiver.orientation:
        value -= alpha[pos[i]] * beta[pos[j]]
    return value


def symmetric_form(quiver: IQuiver, alpha: Vector, beta: Vector) -> int:
    return euler_form(quiver, alpha, beta) + euler_form(quiver, beta, alpha)
