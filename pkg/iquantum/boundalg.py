"""ıquiver algebras as bound quivers, and their representations over F_p.

The bound quiver of an ıquiver Q has the arrows of Q plus one arrow
ε_i : i → τi per node (a loop when τi = i), subject to ε_τi ε_i = 0 and
ε_j a = τ(a) ε_i for every arrow a : i → j of Q.

Matrices are numpy integer arrays reduced mod p; ranks, nullspaces and
inverses go through sympy's DomainMatrix over GF(p).
"""

import functools
import itertools
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, \
    Tuple

import numpy as np
from sympy.polys.domains import GF
from sympy.polys.matrices import DomainMatrix

from . import exceptions
from . import log
from .rootdata import IQuiver

__all__ = [
    'QArrow',
    'BoundAlgebra',
    'FqRep',
    'build_bound_algebra',
    'hom_basis',
    'hom_ext_dims',
    'ext_classes',
    'extension',
    'gl_order',
]

logger = log.pkg_logger.getChild('boundalg')

DEFAULT_RANK_CAP = 3

Path = Tuple[int, ...]
Relation = Tuple[Tuple[int, Path], ...]


# Linear algebra over F_p

@functools.lru_cache(maxsize=None)
def _field(p: int):
    return GF(p)


def _to_dm(a: np.ndarray, p: int) -> DomainMatrix:
    K = _field(p)
    rows, cols = a.shape
    return DomainMatrix([[K(int(x) % p) for x in row] for row in a.tolist()],
                        (rows, cols), K)


def _from_rows(rows: Sequence[Sequence], cols: int, p: int) -> np.ndarray:
    if not rows:
        return np.zeros((0, cols), dtype=np.int64)
    return np.array([[int(x) % p for x in row] for row in rows],
                    dtype=np.int64)


def rank_mod(a: np.ndarray, p: int) -> int:
    if 0 in a.shape:
        return 0
    return _to_dm(a, p).rank()


def nullspace_mod(a: np.ndarray, p: int) -> np.ndarray:
    """Columns form a basis of {x : a x = 0}."""
    cols = a.shape[1]
    if cols == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if a.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    basis = _to_dm(a, p).nullspace().to_list()
    return _from_rows(basis, cols, p).T.reshape(cols, len(basis))


def inverse_mod(a: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[0]
    if n == 0:
        return a.copy()
    return _from_rows(_to_dm(a, p).inv().to_list(), n, p)


def solve_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """The X with a X = b, for a of full column rank."""
    n, k = a.shape[1], b.shape[1]
    if n == 0:
        return np.zeros((0, k), dtype=np.int64)
    augmented = np.concatenate([a, b], axis=1)
    reduced, pivots = _to_dm(augmented, p).rref()
    if any(c >= n for c in pivots) or len(pivots) < n:
        raise ValueError('System has no unique solution')
    rows = reduced.to_list()
    return _from_rows([rows[r][n:] for r in range(n)], k, p) \
        .reshape(n, k)


def complement_columns(basis: np.ndarray, size: int, p: int) -> np.ndarray:
    """Standard basis vectors completing the columns of *basis* to F_p^size."""
    current = basis
    chosen = []
    rank = rank_mod(current, p)
    for e in range(size):
        vector = np.zeros((size, 1), dtype=np.int64)
        vector[e, 0] = 1
        trial = np.concatenate([current, vector], axis=1)
        if rank_mod(trial, p) > rank:
            current, rank = trial, rank + 1
            chosen.append(e)
    result = np.zeros((size, len(chosen)), dtype=np.int64)
    for k, e in enumerate(chosen):
        result[e, k] = 1
    return result


def combinations(basis: Sequence, p: int, projective: bool = False) \
        -> Iterator[Tuple[int, ...]]:
    """Coefficient tuples over F_p of the given length.

    With *projective*, only nonzero tuples whose first nonzero entry is 1.
    """
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        if projective:
            nonzero = [c for c in coeffs if c]
            if not nonzero or nonzero[0] != 1:
                continue
        yield coeffs


def gl_order(n: int, q: int) -> int:
    result = 1
    for k in range(n):
        result *= q ** n - q ** k
    return result


# Algebras and representations

class QArrow(NamedTuple):
    name: str
    source: int
    target: int
    epsilon: bool


class BoundAlgebra:
    """The bound quiver (Q̄, Ī) of an ıquiver."""

    def __init__(self, quiver: IQuiver):
        self.quiver = quiver
        self.nodes = quiver.nodes
        arrows = [QArrow(f'{i}->{j}', i, j, False)
                  for i, j in sorted(quiver.orientation)]
        arrows += [QArrow(f'e{i}', i, quiver.t(i), True) for i in self.nodes]
        self.arrows: Tuple[QArrow, ...] = tuple(arrows)
        self._index = {a.name: k for k, a in enumerate(arrows)}
        self.relations: Tuple[Relation, ...] = tuple(self._relations())

    def __repr__(self):
        return (f'<BoundAlgebra {self.quiver.format_orientation()} '
                f'{len(self.arrows)} arrows, {len(self.relations)} relations>')

    def arrow(self, name: str) -> int:
        return self._index[name]

    def epsilon(self, i: int) -> int:
        return self._index[f'e{i}']

    def position(self, i: int) -> int:
        return self.quiver.position(i)

    def _relations(self) -> Iterator[Relation]:
        t = self.quiver.t
        for i in self.nodes:
            yield ((1, (self.epsilon(i), self.epsilon(t(i)))),)
        for i, j in sorted(self.quiver.orientation):
            a = self.arrow(f'{i}->{j}')
            ta = self.arrow(f'{t(i)}->{t(j)}')
            yield ((1, (a, self.epsilon(j))), (-1, (self.epsilon(i), ta)))

    def format_relations(self) -> List[str]:
        lines = []
        for rel in self.relations:
            terms = []
            for c, path in rel:
                word = '*'.join(self.arrows[a].name for a in reversed(path))
                terms.append(word if c == 1 else f'-{word}')
            lines.append(' + '.join(terms) + ' = 0')
        return lines


def build_bound_algebra(quiver: IQuiver,
                        rank_cap: int = DEFAULT_RANK_CAP) -> BoundAlgebra:
    """
    Raises:
        RankCapExceeded: if Q has more than *rank_cap* nodes.
    """
    if len(quiver.nodes) > rank_cap:
        raise exceptions.RankCapExceeded(
            f'Rank {len(quiver.nodes)} exceeds the cap {rank_cap}')
    return BoundAlgebra(quiver)


class FqRep(NamedTuple):
    """A representation of a bound quiver over F_p.

    ``maps[a]`` has shape ``(dims[target], dims[source])``.
    """
    algebra: BoundAlgebra
    p: int
    dims: Tuple[int, ...]
    maps: Tuple[np.ndarray, ...]

    @classmethod
    def zero(cls, algebra: BoundAlgebra, p: int) -> 'FqRep':
        return cls.from_maps(algebra, p, (0,) * len(algebra.nodes), {})

    @classmethod
    def from_maps(cls, algebra: BoundAlgebra, p: int, dims: Sequence[int],
                  maps: Dict[str, Sequence[Sequence[int]]]) -> 'FqRep':
        """Build from arrow name → matrix; missing arrows are zero."""
        dims = tuple(dims)
        arrays = []
        for a in algebra.arrows:
            shape = (dims[algebra.position(a.target)],
                     dims[algebra.position(a.source)])
            if a.name in maps:
                m = np.array(maps[a.name], dtype=np.int64).reshape(shape) % p
            else:
                m = np.zeros(shape, dtype=np.int64)
            arrays.append(m)
        return cls(algebra, p, dims, tuple(arrays))

    @classmethod
    def simple(cls, algebra: BoundAlgebra, p: int, i: int) -> 'FqRep':
        dims = [0] * len(algebra.nodes)
        dims[algebra.position(i)] = 1
        return cls.from_maps(algebra, p, dims, {})

    @classmethod
    def generalized_simple(cls, algebra: BoundAlgebra, p: int,
                           i: int) -> 'FqRep':
        """𝔼_i: k[ε]/(ε²) at i, or k at i and τi joined by ε_i."""
        dims = [0] * len(algebra.nodes)
        ti = algebra.quiver.t(i)
        if ti == i:
            dims[algebra.position(i)] = 2
            return cls.from_maps(algebra, p, dims, {f'e{i}': [[0, 0],
                                                              [1, 0]]})
        dims[algebra.position(i)] = 1
        dims[algebra.position(ti)] = 1
        return cls.from_maps(algebra, p, dims, {f'e{i}': [[1]]})

    def dim(self, i: int) -> int:
        return self.dims[self.algebra.position(i)]

    @property
    def total(self) -> int:
        return sum(self.dims)

    def restriction(self) -> Tuple[int, ...]:
        """Dimension vector of res(M), the underlying kQ-module."""
        return self.dims

    def is_kq(self) -> bool:
        """Whether every ε acts by zero."""
        return not any(self.maps[k].any()
                       for k, a in enumerate(self.algebra.arrows)
                       if a.epsilon)

    def path(self, path: Path) -> np.ndarray:
        arrows = self.algebra.arrows
        first = arrows[path[0]]
        size = self.dims[self.algebra.position(first.source)]
        result = np.eye(size, dtype=np.int64)
        for a in path:
            result = self.maps[a] @ result % self.p
        return result

    def satisfies_relations(self) -> bool:
        for rel in self.algebra.relations:
            total = sum(c * self.path(path) for c, path in rel) % self.p
            if total.any():
                return False
        return True

    def has_finite_pd(self) -> bool:
        """ker ε_i = im ε_τi at every node (ε acts freely)."""
        t = self.algebra.quiver.t
        for i in self.algebra.nodes:
            eps = self.maps[self.algebra.epsilon(i)]
            back = self.maps[self.algebra.epsilon(t(i))]
            if self.dim(i) - rank_mod(eps, self.p) != rank_mod(back, self.p):
                return False
        return True

    def direct_sum(self, other: 'FqRep') -> 'FqRep':
        dims = tuple(a + b for a, b in zip(self.dims, other.dims))
        maps = []
        for m, n in zip(self.maps, other.maps):
            block = np.zeros((m.shape[0] + n.shape[0], m.shape[1] + n.shape[1]),
                             dtype=np.int64)
            block[:m.shape[0], :m.shape[1]] = m
            block[m.shape[0]:, m.shape[1]:] = n
            maps.append(block)
        return FqRep(self.algebra, self.p, dims, tuple(maps))

    def to_json(self) -> Dict:
        return {
            'dims': list(self.dims),
            'maps': {a.name: self.maps[k].tolist()
                     for k, a in enumerate(self.algebra.arrows)
                     if self.maps[k].size},
        }


def direct_sum(reps: Sequence[FqRep], algebra: BoundAlgebra,
               p: int) -> FqRep:
    result = FqRep.zero(algebra, p)
    for rep in reps:
        result = result.direct_sum(rep)
    return result


# Hom and Ext

Morphism = Tuple[np.ndarray, ...]


def _blocks(m: FqRep, n: FqRep) -> List[Tuple[int, int]]:
    """Offset and size of the block of node i in the vector of (f_i)."""
    blocks, offset = [], 0
    for dm, dn in zip(m.dims, n.dims):
        blocks.append((offset, dn * dm))
        offset += dn * dm
    return blocks


def _hom_equations(m: FqRep, n: FqRep) -> np.ndarray:
    """Rows: N_a f_s − f_t M_a for every arrow a, as a linear map of (f_i)."""
    algebra = m.algebra
    blocks = _blocks(m, n)
    width = sum(size for _, size in blocks)
    rows = []
    for k, a in enumerate(algebra.arrows):
        s, t = algebra.position(a.source), algebra.position(a.target)
        height = n.dims[t] * m.dims[s]
        part = np.zeros((height, width), dtype=np.int64)
        off, size = blocks[s]
        part[:, off:off + size] += np.kron(n.maps[k],
                                           np.eye(m.dims[s], dtype=np.int64))
        off, size = blocks[t]
        part[:, off:off + size] -= np.kron(np.eye(n.dims[t], dtype=np.int64),
                                           m.maps[k].T)
        rows.append(part)
    if not rows:
        return np.zeros((0, width), dtype=np.int64)
    return np.concatenate(rows, axis=0) % m.p


def _unflatten(vector: np.ndarray, m: FqRep, n: FqRep) -> Morphism:
    result = []
    for (off, size), dm, dn in zip(_blocks(m, n), m.dims, n.dims):
        result.append(vector[off:off + size].reshape(dn, dm) % m.p)
    return tuple(result)


def hom_basis(m: FqRep, n: FqRep) -> List[Morphism]:
    """A basis of Hom(M, N), each morphism a tuple (f_i) per node."""
    kernel = nullspace_mod(_hom_equations(m, n), m.p)
    return [_unflatten(kernel[:, k], m, n) for k in range(kernel.shape[1])]


def hom_elements(m: FqRep, n: FqRep,
                 basis: Optional[List[Morphism]] = None) -> Iterator[Morphism]:
    """Every element of Hom(M, N); there are p^dim of them."""
    if basis is None:
        basis = hom_basis(m, n)
    for coeffs in combinations(basis, m.p):
        yield tuple(sum((c * f[k] for c, f in zip(coeffs, basis)),
                        np.zeros((n.dims[k], m.dims[k]), dtype=np.int64))
                    % m.p for k in range(len(m.dims)))


def compose(g: Morphism, f: Morphism, p: int) -> Morphism:
    """g ∘ f."""
    return tuple(gi @ fi % p for gi, fi in zip(g, f))


def _cocycle_blocks(m: FqRep, n: FqRep) -> List[Tuple[int, int]]:
    algebra = m.algebra
    blocks, offset = [], 0
    for a in algebra.arrows:
        s, t = algebra.position(a.source), algebra.position(a.target)
        size = n.dims[t] * m.dims[s]
        blocks.append((offset, size))
        offset += size
    return blocks


def _cocycle_equations(m: FqRep, n: FqRep) -> np.ndarray:
    """Upper-right block of every relation in [[N, Z], [0, M]], linear in Z."""
    algebra, p = m.algebra, m.p
    blocks = _cocycle_blocks(m, n)
    width = sum(size for _, size in blocks)
    rows = []
    for rel in algebra.relations:
        first = algebra.arrows[rel[0][1][0]]
        last = algebra.arrows[rel[0][1][-1]]
        s, t = algebra.position(first.source), algebra.position(last.target)
        part = np.zeros((n.dims[t] * m.dims[s], width), dtype=np.int64)
        for c, path in rel:
            for pos, a in enumerate(path):
                left = n.path(path[pos + 1:]) if pos + 1 < len(path) else \
                    np.eye(n.dims[t], dtype=np.int64)
                right = m.path(path[:pos]) if pos else \
                    np.eye(m.dims[s], dtype=np.int64)
                off, size = blocks[a]
                part[:, off:off + size] += c * np.kron(left, right.T)
        rows.append(part % p)
    if not rows:
        return np.zeros((0, width), dtype=np.int64)
    return np.concatenate(rows, axis=0)


class ExtSpace(NamedTuple):
    """Ext¹(M, N) as cocycles modulo coboundaries."""
    m: FqRep
    n: FqRep
    hom_dim: int
    cocycle_dim: int
    classes: np.ndarray

    @property
    def dim(self) -> int:
        return self.classes.shape[1]


def ext_classes(m: FqRep, n: FqRep) -> ExtSpace:
    """Cocycles Z whose classes form a basis of Ext¹(M, N)."""
    p = m.p
    width = sum(size for _, size in _cocycle_blocks(m, n))
    cocycles = nullspace_mod(_cocycle_equations(m, n), p)
    coboundary = _hom_equations(m, n)
    hom_dim = coboundary.shape[1] - rank_mod(coboundary, p)
    current = coboundary
    rank = rank_mod(current, p)
    chosen = []
    for k in range(cocycles.shape[1]):
        trial = np.concatenate([current, cocycles[:, k:k + 1]], axis=1)
        if rank_mod(trial, p) > rank:
            current, rank = trial, rank + 1
            chosen.append(cocycles[:, k])
    classes = np.stack(chosen, axis=1) if chosen else \
        np.zeros((width, 0), dtype=np.int64)
    return ExtSpace(m, n, hom_dim, cocycles.shape[1], classes)


def extension(ext: ExtSpace, coeffs: Sequence[int]) -> FqRep:
    """Middle term L of 0 → N → L → M → 0 for the class Σ coeffs·basis."""
    m, n, p = ext.m, ext.n, ext.m.p
    z = (ext.classes @ np.array(coeffs, dtype=np.int64).reshape(-1, 1)) % p \
        if ext.dim else np.zeros((ext.classes.shape[0], 1), dtype=np.int64)
    z = z.reshape(-1)
    algebra = m.algebra
    maps = []
    for (off, size), a, mm, nm in zip(_cocycle_blocks(m, n), algebra.arrows,
                                      m.maps, n.maps):
        s, t = algebra.position(a.source), algebra.position(a.target)
        block = np.zeros((n.dims[t] + m.dims[t], n.dims[s] + m.dims[s]),
                         dtype=np.int64)
        block[:n.dims[t], :n.dims[s]] = nm
        block[:n.dims[t], n.dims[s]:] = z[off:off + size] \
            .reshape(n.dims[t], m.dims[s])
        block[n.dims[t]:, n.dims[s]:] = mm
        maps.append(block % p)
    dims = tuple(a + b for a, b in zip(n.dims, m.dims))
    return FqRep(algebra, p, dims, tuple(maps))


def hom_ext_dims(m: FqRep, n: FqRep) -> Tuple[int, int]:
    """(dim Hom(M, N), dim Ext¹(M, N))."""
    ext = ext_classes(m, n)
    return ext.hom_dim, ext.dim


# Sub- and quotient modules

def is_injective(f: Morphism, source: FqRep) -> bool:
    return all(rank_mod(fi, source.p) == d for fi, d in zip(f, source.dims))


def is_surjective(f: Morphism, target: FqRep) -> bool:
    return all(rank_mod(fi, target.p) == d for fi, d in zip(f, target.dims))


def cokernel(f: Morphism, target: FqRep) -> FqRep:
    """L / f(N) for an injective morphism f : N → L."""
    p, algebra = target.p, target.algebra
    bases, inverses, splits = [], [], []
    for fi, d in zip(f, target.dims):
        comp = complement_columns(fi, d, p)
        basis = np.concatenate([fi, comp], axis=1)
        bases.append(comp)
        inverses.append(inverse_mod(basis, p))
        splits.append(fi.shape[1])
    maps = []
    for k, a in enumerate(algebra.arrows):
        s, t = algebra.position(a.source), algebra.position(a.target)
        image = inverses[t] @ target.maps[k] @ bases[s] % p
        maps.append(image[splits[t]:, :])
    dims = tuple(b.shape[1] for b in bases)
    return FqRep(algebra, p, dims, tuple(maps))


def kernel(g: Morphism, source: FqRep) -> FqRep:
    """ker g as a subrepresentation of the source."""
    p, algebra = source.p, source.algebra
    bases = [nullspace_mod(gi, p) if d else np.zeros((0, 0), dtype=np.int64)
             for gi, d in zip(g, source.dims)]
    maps = []
    for k, a in enumerate(algebra.arrows):
        s, t = algebra.position(a.source), algebra.position(a.target)
        maps.append(solve_mod(bases[t], source.maps[k] @ bases[s] % p, p))
    dims = tuple(b.shape[1] for b in bases)
    return FqRep(algebra, p, dims, tuple(maps))


# Brute force

def all_representations(algebra: BoundAlgebra, p: int,
                        dims: Sequence[int]) -> Iterator[FqRep]:
    """Every matrix tuple of dimension vector *dims* satisfying Ī."""
    dims = tuple(dims)
    shapes = [(dims[algebra.position(a.target)],
               dims[algebra.position(a.source)]) for a in algebra.arrows]
    sizes = [r * c for r, c in shapes]
    for entries in itertools.product(range(p), repeat=sum(sizes)):
        maps, offset = [], 0
        for (r, c), size in zip(shapes, sizes):
            maps.append(np.array(entries[offset:offset + size],
                                 dtype=np.int64).reshape(r, c))
            offset += size
        rep = FqRep(algebra, p, dims, tuple(maps))
        if rep.satisfies_relations():
            yield rep
