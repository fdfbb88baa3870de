"""Presentations of Ũ and of its central reductions, on top of freealg.

The universal algebra Ũ has letters F_i, E_i (in that precedence) and torus
letters K̃_i, K̃'_i. A reduced algebra at parameters ς keeps only the K̃'_i
and sets K̃_i = ς_i K̃'_i^{-1}, so that K̃_iK̃'_i = ς_i.
"""

import threading
from typing import Dict, Hashable, List, Mapping, Optional, Tuple

from . import exceptions
from . import log
from .freealg import Alphabet, NCPoly, RewriteSystem, complete
from .rootdata import RootDatum
from .scalars import FieldElem, ONE, V, qbinom

__all__ = [
    'AmbientAlgebra',
    'build_ambient',
    'equal',
    'validate_parameters',
]

logger = log.pkg_logger.getChild('qgroup')

DEFAULT_CAP = 12


def validate_parameters(datum: RootDatum,
                        params: Mapping[int, FieldElem]) -> Dict[int, FieldElem]:
    """Check that every ς_i is ±v^m and ς_i = ς_{τi}.

    Raises:
        InvalidParameter: otherwise.
    """
    params = {i: FieldElem(params[i]) for i in params}
    if set(params) != set(datum.nodes):
        raise exceptions.InvalidParameter(
            f'Parameters must be given for nodes {list(datum.nodes)}')
    for i, s in params.items():
        mono = s.monomial()
        if mono is None or mono[0] not in (1, -1) or mono[1] % 2:
            raise exceptions.InvalidParameter(
                f'ς_{i} = {s} is not of the form ±v^m')
        if params[datum.t(i)] != s:
            raise exceptions.InvalidParameter(
                f'ς_{i} ≠ ς_{datum.t(i)}')
    return params


class AmbientAlgebra:
    """Ũ, or its reduction at ς, with a completed rewriting system."""

    def __init__(self, datum: RootDatum,
                 params: Optional[Mapping[int, FieldElem]], cap: int):
        self.datum = datum
        self.cap = cap
        self.reduced = params is not None
        self.params = dict(params) if params is not None else None
        nodes = datum.nodes
        n = len(nodes)
        names = [f'F{i}' for i in nodes] + [f'E{i}' for i in nodes]
        weights = [tuple(-x for x in datum.simple(i)) for i in nodes] + \
            [datum.simple(i) for i in nodes]
        cartan = [[datum.c(i, j) for j in nodes] for i in nodes]
        k_pairing = [[-c for c in row] + list(row) for row in cartan]
        kp_pairing = [list(row) + [-c for c in row] for row in cartan]
        if self.reduced:
            torus = [f"K'{i}" for i in nodes]
            pairing = kp_pairing
        else:
            torus = [f'K{i}' for i in nodes] + [f"K'{i}" for i in nodes]
            pairing = k_pairing + kp_pairing
        self.alphabet = Alphabet(names, weights, torus, pairing)
        self._n = n
        self.system: RewriteSystem = complete(
            self.alphabet, self.relations(), cap)

    def __repr__(self):
        kind = 'reduced' if self.reduced else 'universal'
        return f'<AmbientAlgebra {self.datum.label()} {kind} {self.system!r}>'

    def E(self, i: int) -> NCPoly:
        return self.alphabet.gen(f'E{i}')

    def F(self, i: int) -> NCPoly:
        return self.alphabet.gen(f'F{i}')

    def K(self, i: int, power: int = 1) -> NCPoly:
        """K̃_i^power; in a reduced algebra this is ς_i^power K̃'_i^-power."""
        if self.reduced:
            return self.alphabet.torus_element({f"K'{i}": -power}) \
                .scale(self.params[i] ** power)
        return self.alphabet.torus_element({f'K{i}': power})

    def Kp(self, i: int, power: int = 1) -> NCPoly:
        return self.alphabet.torus_element({f"K'{i}": power})

    def relations(self) -> List[NCPoly]:
        nodes = self.datum.nodes
        v_diff = V - V.inv()
        rels = []
        for i in nodes:
            for j in nodes:
                rel = self.E(i) * self.F(j) - self.F(j) * self.E(i)
                if i == j:
                    rel = rel - (self.K(i) - self.Kp(i)).scale(v_diff.inv())
                rels.append(rel)
        for i in nodes:
            for j in nodes:
                if i == j:
                    continue
                n = 1 - self.datum.c(i, j)
                for gen in (self.E, self.F):
                    rel = self.alphabet.zero()
                    for r in range(n + 1):
                        term = gen(i) ** r * gen(j) * gen(i) ** (n - r)
                        rel = rel + term.scale(qbinom(n, r) * (-1) ** r)
                    rels.append(rel)
        return rels

    def normal_form(self, x: NCPoly) -> NCPoly:
        return self.system.normal_form(x)

    def is_zero(self, x: NCPoly) -> bool:
        return self.system.is_zero(x)

    def equal(self, x: NCPoly, y: NCPoly) -> bool:
        return self.system.is_zero(x - y)

    def reduce_map(self, x: NCPoly) -> NCPoly:
        """Send an element of the universal algebra to this reduced one."""
        if not self.reduced:
            raise ValueError('reduce_map needs a reduced algebra')
        nodes = self.datum.nodes
        n = self._n
        result = self.alphabet.zero()
        for (word, kappa), c in x.terms.items():
            scalar = FieldElem(c)
            torus = [0] * n
            for k, i in enumerate(nodes):
                a, b = kappa[k], kappa[n + k]
                if a:
                    scalar = scalar * self.params[i] ** a
                torus[k] = b - a
            result = result + self.alphabet.word(word, tuple(torus)) \
                .scale(scalar)
        return self.normal_form(result)


_cache: Dict[Hashable, AmbientAlgebra] = {}
_cache_lock = threading.Lock()


def _cache_key(datum: RootDatum, params: Optional[Mapping[int, FieldElem]],
               cap: int) -> Tuple:
    param_key = None if params is None else tuple(
        (i, params[i]) for i in sorted(params))
    return datum.quiver.nodes, datum.quiver.edges, param_key, cap


def build_ambient(datum: RootDatum, reduced: bool = False,
                  params: Optional[Mapping[int, FieldElem]] = None,
                  cap: int = DEFAULT_CAP) -> AmbientAlgebra:
    """Build (or fetch) the ambient algebra of *datum*.

    The result depends only on the diagram, never on the orientation.

    Raises:
        InvalidParameter: if reduced and *params* are not admissible.
        CapExceeded: if a defining relation exceeds *cap*.
    """
    if reduced:
        if params is None:
            raise exceptions.InvalidParameter(
                'A reduced algebra needs parameters')
        params = validate_parameters(datum, params)
    else:
        params = None
    key = _cache_key(datum, params, cap)
    with _cache_lock:
        algebra = _cache.get(key)
        if algebra is None:
            logger.info('Completing %s ambient algebra of %s at cap %d',
                        'reduced' if reduced else 'universal',
                        datum.label(), cap)
            algebra = _cache[key] = AmbientAlgebra(datum, params, cap)
    return algebra


def equal(x: NCPoly, y: NCPoly, algebra: AmbientAlgebra) -> bool:
    """Whether x = y in the algebra (decided up to its cap)."""
    return algebra.equal(x, y)
