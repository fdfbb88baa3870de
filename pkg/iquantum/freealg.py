"""Noncommutative polynomials, truncated completion and normal forms.

A monomial is a pair ``(word, kappa)``: *word* is a tuple of weighted
letters (E, F or B generators) and *kappa* an exponent vector over the torus
letters (the Cartan generators), which are kept to the right of the word.
A torus letter t moves right past a weighted letter x as
``t·x = v^{pairing[t][x]} x·t``, so torus letters never enter rewrite rules
and their invertibility is built in.

Words are ordered by length, then lexicographically by letter index (the
declaration order of the alphabet is the precedence).
"""

import hashlib
import heapq
import itertools
import threading
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, \
    Tuple, Union

from sympy.polys.matrices import DomainMatrix

from . import exceptions
from . import log
from .scalars import DOMAIN, FieldElem, ONE, ZERO

__all__ = [
    'Alphabet',
    'NCPoly',
    'RewriteSystem',
    'v_comm',
    'complete',
    'normal_form',
    'linear_solve',
    'rank',
    'nullspace',
    'combine',
    'echelon_relations',
]

logger = log.pkg_logger.getChild('freealg')

Word = Tuple[int, ...]
Kappa = Tuple[int, ...]
Monomial = Tuple[Word, Kappa]
Scalar = Union[FieldElem, int, Fraction]


def word_key(word: Word) -> Tuple[int, Word]:
    return len(word), word


def monomial_key(mono: Monomial) -> Tuple[int, Word, Kappa]:
    return len(mono[0]), mono[0], mono[1]


class Alphabet:
    """Generators of a free algebra extended by a Laurent torus.

    Args:
        names: names of the weighted letters, in precedence order.
        weights: weight vector of each weighted letter.
        torus: names of the torus coordinates.
        pairing: ``pairing[t][x]``, the v-exponent picked up when torus
            letter t moves right past weighted letter x.
    """

    def __init__(self, names: Sequence[str], weights: Sequence[Sequence[int]],
                 torus: Sequence[str] = (),
                 pairing: Optional[Sequence[Sequence[int]]] = None):
        if len(names) != len(weights):
            raise ValueError('One weight per letter is needed')
        self.names = tuple(names)
        self.weights = tuple(tuple(w) for w in weights)
        self.torus = tuple(torus)
        if pairing is None:
            pairing = [[0] * len(self.names) for _ in self.torus]
        self.pairing = tuple(tuple(row) for row in pairing)
        self._letter_index = {n: k for k, n in enumerate(self.names)}
        self._torus_index = {n: k for k, n in enumerate(self.torus)}
        self.zero_kappa: Kappa = (0,) * len(self.torus)
        self._v_powers: Dict[int, FieldElem] = {}

    def __repr__(self):
        return f'Alphabet({self.names!r}, torus={self.torus!r})'

    def letter(self, name: str) -> int:
        return self._letter_index[name]

    def torus_coordinate(self, name: str) -> int:
        return self._torus_index[name]

    def v_power(self, e: int) -> FieldElem:
        value = self._v_powers.get(e)
        if value is None:
            value = self._v_powers[e] = FieldElem.v_power(e)
        return value

    def word_pairing(self, kappa: Kappa, word: Word) -> int:
        """Exponent of v from moving the torus element kappa past word."""
        if not any(kappa):
            return 0
        return sum(k * self.pairing[t][x]
                   for t, k in enumerate(kappa) if k for x in word)

    def weight(self, word: Word) -> Tuple[int, ...]:
        if not word:
            return (0,) * (len(self.weights[0]) if self.weights else 0)
        return tuple(map(sum, zip(*(self.weights[x] for x in word))))

    # Constructors of elements

    def one(self) -> 'NCPoly':
        return NCPoly(self, {((), self.zero_kappa): ONE})

    def zero(self) -> 'NCPoly':
        return NCPoly(self)

    def scalar(self, c: Scalar) -> 'NCPoly':
        return NCPoly(self, {((), self.zero_kappa): FieldElem(c)})

    def word(self, word: Iterable[Union[int, str]],
             kappa: Optional[Kappa] = None) -> 'NCPoly':
        letters = tuple(self.letter(x) if isinstance(x, str) else x
                        for x in word)
        return NCPoly(self, {(letters, kappa or self.zero_kappa): ONE})

    def gen(self, name: str) -> 'NCPoly':
        return self.word((name,))

    def torus_element(self, powers: Mapping[str, int]) -> 'NCPoly':
        kappa = [0] * len(self.torus)
        for name, e in powers.items():
            kappa[self.torus_coordinate(name)] += e
        return NCPoly(self, {((), tuple(kappa)): ONE})

    def format_monomial(self, mono: Monomial) -> str:
        word, kappa = mono
        parts = [self.names[x] for x in word]
        for t, e in enumerate(kappa):
            if e == 1:
                parts.append(self.torus[t])
            elif e:
                parts.append(f'{self.torus[t]}^{e}')
        return '*'.join(parts) or '1'


class NCPoly:
    """Finite linear combination of monomials with FieldElem coefficients."""

    __slots__ = ('alphabet', 'terms')

    def __init__(self, alphabet: Alphabet,
                 terms: Optional[Mapping[Monomial, FieldElem]] = None):
        self.alphabet = alphabet
        self.terms: Dict[Monomial, FieldElem] = {
            m: c for m, c in (terms or {}).items() if c}

    def _new(self, terms: Dict[Monomial, FieldElem]) -> 'NCPoly':
        result = NCPoly.__new__(NCPoly)
        result.alphabet = self.alphabet
        result.terms = {m: c for m, c in terms.items() if c}
        return result

    def _lift(self, other) -> 'NCPoly':
        if isinstance(other, NCPoly):
            if other.alphabet is not self.alphabet:
                raise ValueError('Mixing elements of different alphabets')
            return other
        return self.alphabet.scalar(other)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other) -> 'NCPoly':
        other = self._lift(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms[m] + c if m in terms else c
        return self._new(terms)

    __radd__ = __add__

    def __neg__(self) -> 'NCPoly':
        return self._new({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> 'NCPoly':
        return self + (-self._lift(other))

    def __rsub__(self, other) -> 'NCPoly':
        return self._lift(other) - self

    def scale(self, c: Scalar) -> 'NCPoly':
        c = FieldElem(c)
        if not c:
            return self._new({})
        return self._new({m: c * d for m, d in self.terms.items()})

    def __mul__(self, other) -> 'NCPoly':
        if not isinstance(other, NCPoly):
            return self.scale(other)
        other = self._lift(other)
        alphabet = self.alphabet
        terms: Dict[Monomial, FieldElem] = {}
        for (w1, k1), c1 in self.terms.items():
            for (w2, k2), c2 in other.terms.items():
                c = c1 * c2
                e = alphabet.word_pairing(k1, w2)
                if e:
                    c = c * alphabet.v_power(e)
                mono = (w1 + w2, tuple(a + b for a, b in zip(k1, k2)))
                terms[mono] = terms[mono] + c if mono in terms else c
        return self._new(terms)

    def __rmul__(self, other) -> 'NCPoly':
        return self.scale(other)

    def __pow__(self, n: int) -> 'NCPoly':
        if n < 0:
            raise ValueError('Negative powers of polynomials are undefined')
        result = self.alphabet.one()
        for _ in range(n):
            result = result * self
        return result

    def times_torus(self, kappa: Kappa) -> 'NCPoly':
        """Right multiplication by a torus monomial (no scalar arises)."""
        return self._new({(w, tuple(a + b for a, b in zip(k, kappa))): c
                          for (w, k), c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.alphabet is other.alphabet and self.terms == other.terms

    __hash__ = None

    def degree(self) -> int:
        return max((len(w) for w, _ in self.terms), default=-1)

    def leading(self) -> Monomial:
        return max(self.terms, key=monomial_key)

    def weights(self) -> set:
        return {self.alphabet.weight(w) for w, _ in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.weights()) <= 1

    def coefficient(self, mono: Monomial) -> FieldElem:
        return self.terms.get(mono, ZERO)

    def sorted_terms(self) -> List[Tuple[Monomial, FieldElem]]:
        return sorted(self.terms.items(), key=lambda t: monomial_key(t[0]),
                      reverse=True)

    def __str__(self):
        if not self.terms:
            return '0'
        parts = []
        for mono, c in self.sorted_terms():
            name = self.alphabet.format_monomial(mono)
            if c == ONE:
                parts.append(name)
            elif c == -ONE:
                parts.append(f'-{name}')
            elif name == '1':
                parts.append(f'({c})')
            else:
                parts.append(f'({c})*{name}')
        return ' + '.join(parts)

    def __repr__(self):
        return f'NCPoly({self})'

    def digest(self) -> str:
        """Short stable fingerprint of the terms, for reports."""
        return hashlib.sha256(str(self).encode()).hexdigest()[:16]


def v_comm(x: NCPoly, y: NCPoly, s: Scalar) -> NCPoly:
    """[x, y]_s = xy − s·yx."""
    return x * y - (y * x).scale(s)


class RewriteSystem:
    """Oriented rules ``lhs word → rhs`` on weighted words, with a cap.

    Built by :func:`complete`. Once built it is only read; normal forms are
    memoized per word under a lock.
    """

    def __init__(self, alphabet: Alphabet, cap: int):
        self.alphabet = alphabet
        self.cap = cap
        self.rules: Dict[Word, NCPoly] = {}
        self.relations: List[NCPoly] = []
        self.certificate: List[Tuple[Word, Word, Word]] = []
        self._by_last: Dict[int, List[Word]] = {}
        self._cache: Dict[Word, NCPoly] = {}
        self._lock = threading.RLock()

    def __repr__(self):
        return (f'<RewriteSystem {len(self.rules)} rules, cap {self.cap}, '
                f'{len(self.certificate)} overlaps>')

    # Rule bookkeeping

    def _add_rule(self, lhs: Word, rhs: NCPoly):
        self.rules[lhs] = rhs
        self._by_last.setdefault(lhs[-1], []).append(lhs)
        self._cache.clear()

    def _remove_rule(self, lhs: Word) -> NCPoly:
        self._by_last[lhs[-1]].remove(lhs)
        self._cache.clear()
        return self.rules.pop(lhs)

    def _suffix_rule(self, word: Word) -> Optional[Word]:
        for lhs in self._by_last.get(word[-1], ()):
            if len(lhs) <= len(word) and word[len(word) - len(lhs):] == lhs:
                return lhs
        return None

    # Normal forms

    def _nf_word(self, word: Word) -> NCPoly:
        cached = self._cache.get(word)
        if cached is not None:
            return cached
        alphabet = self.alphabet
        if len(word) <= 1:
            result = self._nf_append(word) if word else alphabet.one()
        else:
            x = word[-1]
            prefix = self._nf_word(word[:-1])
            terms: Dict[Monomial, FieldElem] = {}
            for (w, k), c in prefix.terms.items():
                e = alphabet.word_pairing(k, (x,))
                if e:
                    c = c * alphabet.v_power(e)
                for (w2, k2), c2 in self._nf_append(w + (x,)).terms.items():
                    mono = (w2, tuple(a + b for a, b in zip(k, k2)))
                    cc = c * c2
                    terms[mono] = terms[mono] + cc if mono in terms else cc
            result = NCPoly(alphabet, terms)
        self._cache[word] = result
        return result

    def _nf_append(self, word: Word) -> NCPoly:
        """Normal form of a word whose proper prefix is already normal."""
        cached = self._cache.get(word)
        if cached is not None:
            return cached
        lhs = self._suffix_rule(word)
        if lhs is None:
            result = self.alphabet.word(word)
        else:
            head = word[:len(word) - len(lhs)]
            result = self.alphabet.zero()
            for (w, k), c in self.rules[lhs].terms.items():
                result = result + self._nf_word(head + w).times_torus(k) \
                    .scale(c)
        self._cache[word] = result
        return result

    def _reduce(self, x: NCPoly) -> NCPoly:
        terms: Dict[Monomial, FieldElem] = {}
        for (w, k), c in x.terms.items():
            for (w2, k2), c2 in self._nf_word(w).terms.items():
                mono = (w2, tuple(a + b for a, b in zip(k2, k)))
                cc = c * c2
                terms[mono] = terms[mono] + cc if mono in terms else cc
        return NCPoly(self.alphabet, terms)

    def reduce(self, x: NCPoly) -> NCPoly:
        """Rewrite without the cap check; unique only up to the cap."""
        with self._lock:
            return self._reduce(x)

    def normal_form(self, x: NCPoly) -> NCPoly:
        """Fixed point of rewriting.

        Raises:
            CapExceeded: if a word of *x* is longer than the cap.
        """
        if x.alphabet is not self.alphabet:
            raise ValueError('Element belongs to another alphabet')
        degree = x.degree()
        if degree > self.cap:
            raise exceptions.CapExceeded(
                f'Degree {degree} exceeds completion cap {self.cap}')
        with self._lock:
            return self._reduce(x)

    def is_zero(self, x: NCPoly) -> bool:
        return self.normal_form(x).is_zero()

    def is_normal(self, word: Word) -> bool:
        return not any(word[k:k + len(lhs)] == lhs
                       for lhs in self.rules
                       for k in range(len(word) - len(lhs) + 1))

    # Completion

    def _orient(self, p: NCPoly) -> Tuple[Word, NCPoly]:
        word, kappa = p.leading()
        if sum(1 for w, _ in p.terms if w == word) > 1:
            raise exceptions.IQuantumError(
                f'Cannot orient relation {p}: leading word carries several '
                f'torus parts')
        c = p.terms[(word, kappa)]
        rest = p - self.alphabet.word(word, kappa).scale(c)
        inverse = tuple(-k for k in kappa)
        return word, (-rest).scale(c.inv()).times_torus(inverse)

    def _overlaps(self, a: Word, b: Word) -> Iterable[Tuple[Word, int]]:
        """Proper overlaps: a suffix of *a* equal to a prefix of *b*."""
        for k in range(1, min(len(a), len(b))):
            if a[len(a) - k:] == b[:k] and len(a) + len(b) - k <= self.cap:
                yield a + b[k:], k

    def _s_poly(self, a: Word, b: Word, k: int) -> NCPoly:
        alphabet = self.alphabet
        return self.rules[a] * alphabet.word(b[k:]) - \
            alphabet.word(a[:len(a) - k]) * self.rules[b]

    def _complete(self, relations: Iterable[NCPoly]):
        counter = itertools.count()
        heap = []

        def push(p: NCPoly):
            if p:
                heapq.heappush(heap, (monomial_key(p.leading()),
                                      next(counter), p))

        for r in relations:
            push(r)
        processed: List[Tuple[Word, Word, Word]] = []
        while heap:
            _, _, p = heapq.heappop(heap)
            p = self._reduce(p)
            if not p:
                continue
            lhs, rhs = self._orient(p)
            for old in [w for w in self.rules
                        if len(w) > len(lhs) and _contains(w, lhs)]:
                old_rhs = self._remove_rule(old)
                push(self.alphabet.word(old) - old_rhs)
            self._add_rule(lhs, rhs)
            logger.debug('New rule %s -> %s',
                         self.alphabet.format_monomial(
                             (lhs, self.alphabet.zero_kappa)), rhs)
            for other in list(self.rules):
                pairs = {(lhs, other), (other, lhs)}
                for a, b in pairs:
                    for word, k in self._overlaps(a, b):
                        processed.append((word, a, b))
                        push(self._s_poly(a, b, k))

        for lhs in list(self.rules):
            self.rules[lhs] = self._reduce(self.rules[lhs])
        self._cache.clear()
        self.certificate = [(w, a, b) for w, a, b in processed
                            if a in self.rules and b in self.rules]

    def recheck(self) -> List[Tuple[Word, Word, Word]]:
        """Re-resolve every overlap up to the cap; returns the failures."""
        failures = []
        with self._lock:
            for a in self.rules:
                for b in self.rules:
                    for word, k in self._overlaps(a, b):
                        if self._reduce(self._s_poly(a, b, k)):
                            failures.append((word, a, b))
            for r in self.relations:
                if self._reduce(r):
                    failures.append(((), (), ()))
        return failures

    def dump(self) -> str:
        """Plain text listing of the rules."""
        zero = self.alphabet.zero_kappa
        lines = [f'# cap {self.cap}, {len(self.rules)} rules']
        for lhs in sorted(self.rules, key=word_key):
            lines.append(f'{self.alphabet.format_monomial((lhs, zero))} -> '
                         f'{self.rules[lhs]}')
        return '\n'.join(lines)


def _contains(word: Word, sub: Word) -> bool:
    n = len(sub)
    return any(word[k:k + n] == sub for k in range(len(word) - n + 1))


def complete(alphabet: Alphabet, relations: Sequence[NCPoly],
             cap: int) -> RewriteSystem:
    """Truncated completion of the two-sided ideal spanned by *relations*.

    All overlaps of combined length at most *cap* are resolved, so normal
    forms of elements of degree at most *cap* are unique.

    Raises:
        CapExceeded: if a relation is longer than *cap*.
    """
    for r in relations:
        if r.degree() > cap:
            raise exceptions.CapExceeded(
                f'Relation of degree {r.degree()} exceeds cap {cap}')
    system = RewriteSystem(alphabet, cap)
    system.relations = [r for r in relations if r]
    system._complete(system.relations)
    logger.info('Completion finished: %d rules, %d overlaps, cap %d',
                len(system.rules), len(system.certificate), cap)
    return system


def normal_form(x: NCPoly, system: RewriteSystem) -> NCPoly:
    return system.normal_form(x)


def _matrix(columns: Sequence[NCPoly]) -> Tuple[List[Monomial], DomainMatrix]:
    monos = sorted({m for p in columns for m in p.terms}, key=monomial_key)
    index = {m: r for r, m in enumerate(monos)}
    rows = [[DOMAIN.zero] * len(columns) for _ in monos]
    for j, p in enumerate(columns):
        for m, c in p.terms.items():
            rows[index[m]][j] = c.frac
    return monos, DomainMatrix(rows, (len(monos), len(columns)), DOMAIN)


def rank(polys: Sequence[NCPoly], system: Optional[RewriteSystem] = None) \
        -> int:
    """Rank of *polys* modulo the ideal of *system* (free algebra if None)."""
    if system is not None:
        polys = [system.normal_form(p) for p in polys]
    monos, matrix = _matrix(polys)
    if not monos:
        return 0
    return matrix.rank()


def nullspace(polys: Sequence[NCPoly],
              system: Optional[RewriteSystem] = None) -> List[List[FieldElem]]:
    """Basis of the linear relations Σ c_k polys[k] ≡ 0."""
    if system is not None:
        polys = [system.normal_form(p) for p in polys]
    monos, matrix = _matrix(polys)
    if not monos:
        return [[ONE if j == k else ZERO for j in range(len(polys))]
                for k in range(len(polys))]
    basis = matrix.nullspace().to_list()
    return [[FieldElem(c) for c in row] for row in basis]


def linear_solve(targets: Sequence[NCPoly], candidates: Sequence[NCPoly],
                 system: Optional[RewriteSystem] = None) \
        -> List[List[FieldElem]]:
    """Express each target as a combination of the candidates.

    Returns one coefficient list per target. When the candidates are
    linearly dependent, free coefficients are set to zero.

    Raises:
        Unsolvable: if a target lies outside the span of the candidates.
        CapExceeded: from the normal forms.
    """
    if system is not None:
        targets = [system.normal_form(t) for t in targets]
        candidates = [system.normal_form(c) for c in candidates]
    n = len(candidates)
    solutions = []
    for t_index, target in enumerate(targets):
        monos, matrix = _matrix(list(candidates) + [target])
        if not monos:
            solutions.append([ZERO] * n)
            continue
        reduced, pivots = matrix.rref()
        if n in pivots:
            raise exceptions.Unsolvable(
                f'Target {t_index} is not in the span of {n} candidates')
        entries = reduced.to_list()
        solution = [ZERO] * n
        for row, col in enumerate(pivots):
            solution[col] = FieldElem(entries[row][n])
        solutions.append(solution)
    return solutions


def combine(coefficients: Sequence[FieldElem],
            polys: Sequence[NCPoly]) -> NCPoly:
    """Σ coefficients[k] · polys[k]."""
    if not polys:
        raise ValueError('Nothing to combine')
    result = polys[0].alphabet.zero()
    for c, p in zip(coefficients, polys):
        if c:
            result = result + p.scale(c)
    return result


def echelon_relations(polys: Sequence[NCPoly],
                      system: Optional[RewriteSystem] = None) \
        -> List[Tuple[int, List[FieldElem]]]:
    """Linear relations among *polys* in reduced echelon form.

    Each entry is ``(pivot, coefficients)``, the pivot being the index of
    the first nonzero coefficient.
    """
    basis = nullspace(polys, system)
    if not basis:
        return []
    rows = [[c.frac for c in row] for row in basis]
    matrix = DomainMatrix(rows, (len(rows), len(polys)), DOMAIN)
    reduced, pivots = matrix.rref()
    entries = reduced.to_list()
    return [(pivot, [FieldElem(c) for c in entries[k]])
            for k, pivot in enumerate(pivots)]
