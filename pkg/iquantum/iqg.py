"""The ıquantum group layer.

Elements are :class:`~iquantum.freealg.NCPoly` over an alphabet of B letters
(one per node) and Cartan torus letters. At the universal level the torus
letters are k̃_i for every node; at the parameter level they are k_j for the
representatives j with τj ≠ j. Every identity is decided in the ambient
algebra after embedding; the relations found among B words are only used to
keep intermediate results short.
"""

import asyncio
import concurrent.futures
import itertools
import logging
import threading
from typing import Any, Dict, Iterable, List, Mapping, NamedTuple, \
    Optional, Sequence, Tuple, Union

from . import contexts
from . import exceptions
from . import log
from .enums import Level
from .freealg import Alphabet, NCPoly, RewriteSystem, combine, complete, \
    echelon_relations, linear_solve, rank, v_comm
from .iseq import IAdmissibleSeq
from .qgroup import AmbientAlgebra, DEFAULT_CAP, build_ambient, \
    validate_parameters
from .rootdata import RootDatum, Vector, bs_apply
from .scalars import FieldElem, ONE, V, format_scalar, sqrt_unit

__all__ = [
    'Caps',
    'IQuantumGroup',
    'BraidOp',
    'RootVector',
    'distinguished_parameters',
    'base_change_factors',
    'verify_braid_pair',
    'verify_braid_pair_async',
    'verify_braid_group',
    'q_root_vectors',
    'pbw_check',
    'pbw_expansion',
    'phi_param_change',
    'check_conjugation',
    'reduced_ideal_stability',
]

logger = log.pkg_logger.getChild('iqg')

Word = Tuple[int, ...]
Kappa = Tuple[int, ...]


class Caps(NamedTuple):
    completion: int = DEFAULT_CAP
    iota: int = 8
    inverse: int = 3
    inverse_max: int = 5


def distinguished_parameters(datum: RootDatum) -> Dict[int, FieldElem]:
    """ς_⋄: −v^-2 at fixed nodes, 1 elsewhere."""
    return {i: -FieldElem.v_power(-2) if datum.is_fixed(i) else ONE
            for i in datum.nodes}


def base_change_factors(datum: RootDatum,
                        params: Mapping[int, FieldElem]) \
        -> Dict[int, FieldElem]:
    """a_i = √(ς_⋄,i / ς_i).

    Raises:
        NotASquare: if some ratio is not +v^(2m).
    """
    dist = distinguished_parameters(datum)
    return {i: sqrt_unit(dist[i] / FieldElem(params[i])) for i in datum.nodes}


class IQuantumGroup:
    """Ũ^ı (universal level) or U^ı at parameters ς (parameter level)."""

    def __init__(self, datum: RootDatum,
                 level: Union[Level, str] = Level.UNIVERSAL,
                 params: Optional[Mapping[int, FieldElem]] = None,
                 caps: Caps = Caps()):
        self.datum = datum
        self.level = Level(level)
        self.caps = caps
        nodes = datum.nodes
        if self.level is Level.PARAMETER:
            if params is None:
                params = distinguished_parameters(datum)
            self.params: Optional[Dict[int, FieldElem]] = \
                validate_parameters(datum, params)
            self.ambient: AmbientAlgebra = build_ambient(
                datum, reduced=True, params=self.params,
                cap=caps.completion)
            self.cartan_nodes = tuple(j for j in datum.reps.reps
                                      if not datum.is_fixed(j))
        else:
            self.params = None
            self.ambient = build_ambient(datum, cap=caps.completion)
            self.cartan_nodes = tuple(nodes)
        self._orbits = [(r, datum.t(r)) for r in datum.reps.reps]
        self._fixed_coords = tuple(r == tr for r, tr in self._orbits)

        names = [f'B{i}' for i in nodes]
        weights = [self.root_weight(datum.simple(i)) for i in nodes]
        torus = [f'k{j}' for j in self.cartan_nodes]
        pairing = [[datum.c(datum.t(j), l) - datum.c(j, l) for l in nodes]
                   for j in self.cartan_nodes]
        self.alphabet = Alphabet(names, weights, torus, pairing)

        amb = self.ambient
        self._letter_images = [amb.F(i) + amb.E(datum.t(i)) * amb.Kp(i)
                               for i in nodes]
        self._torus_images = [self._torus_image(j) for j in self.cartan_nodes]
        self._embedded: Dict[Word, NCPoly] = {(): amb.alphabet.one()}
        self._ops: Dict[int, 'BraidOp'] = {}
        self._ops_lock = threading.Lock()
        self._distinguished: Optional['IQuantumGroup'] = None
        self.iota: RewriteSystem = self._discover_relations()

    def __repr__(self):
        return f'<IQuantumGroup {self.label()} {self.level}>'

    def label(self) -> str:
        kind = 'split' if self.datum.quiver.is_split() else 'quasi-split'
        return f'{self.datum.label()} {kind}'

    def params_json(self) -> Optional[Dict[str, str]]:
        if self.params is None:
            return None
        return {f's{i}': format_scalar(s) for i, s in self.params.items()}

    # Weights

    def quotient(self, alpha: Sequence[int]) -> Tuple[int, ...]:
        """Class of a lattice vector modulo ⟨α_i + α_τi⟩."""
        pos = self.datum.quiver.position
        coords = []
        for r, tr in self._orbits:
            x = alpha[pos(r)]
            coords.append(x % 2 if r == tr else x - alpha[pos(tr)])
        return tuple(coords)

    def normalize(self, weight: Sequence[int]) -> Tuple[int, ...]:
        return tuple(x % 2 if fixed else x
                     for x, fixed in zip(weight, self._fixed_coords))

    def root_weight(self, beta: Vector) -> Tuple[int, ...]:
        """Weight of B_β, the class of −β."""
        return self.quotient(tuple(-b for b in beta))

    def weight(self, word: Word) -> Tuple[int, ...]:
        return self.normalize(self.alphabet.weight(word))

    # Generators

    def B(self, i: int) -> NCPoly:
        return self.alphabet.gen(f'B{i}')

    def k(self, j: int, power: int = 1) -> NCPoly:
        return self.alphabet.torus_element({f'k{j}': power})

    def word(self, nodes: Iterable[int]) -> NCPoly:
        return self.alphabet.word([f'B{i}' for i in nodes])

    def generators(self) -> List[Tuple[str, NCPoly]]:
        gens = [(f'B{i}', self.B(i)) for i in self.datum.nodes]
        gens += [(f'k{j}', self.k(j)) for j in self.cartan_nodes]
        return gens

    def cartan_kappa(self, alpha: Sequence[int]) -> Kappa:
        """Torus exponents of k̃_α (universal) or k_α (parameter)."""
        if self.level is Level.UNIVERSAL:
            return tuple(alpha)
        datum = self.datum
        pos = datum.quiver.position
        kappa = [0] * len(self.cartan_nodes)
        index = {j: t for t, j in enumerate(self.cartan_nodes)}
        for l in datum.nodes:
            m = alpha[pos(l)]
            if not m or datum.is_fixed(l):
                continue
            if l in index:
                kappa[index[l]] += m
            else:
                kappa[index[datum.t(l)]] -= m
        return tuple(kappa)

    def kappa_lattice(self, kappa: Kappa) -> Vector:
        """A lattice vector α with the torus monomial equal to k_α."""
        if self.level is Level.UNIVERSAL:
            return tuple(kappa)
        coeffs = dict(zip(self.cartan_nodes, kappa))
        return self.datum.vector(coeffs)

    def b(self, alpha: Sequence[int]) -> FieldElem:
        """b_α = Π b_l^α_l, with b_l = −v² at fixed nodes and 1 otherwise."""
        result = ONE
        for l, m in zip(self.datum.nodes, alpha):
            if m and self.datum.is_fixed(l):
                result = result * (-FieldElem.v_power(2)) ** m
        return result

    def cartan_box(self, radius: int) -> List[Kappa]:
        """Torus exponent vectors with Σ|κ_t| ≤ radius."""
        size = len(self.cartan_nodes)
        box = [kappa for kappa in itertools.product(
            range(-radius, radius + 1), repeat=size)
            if sum(map(abs, kappa)) <= radius]
        return sorted(box, key=lambda k: (sum(map(abs, k)), k))

    # Embedding

    def _torus_image(self, j: int) -> Kappa:
        amb = self.ambient.alphabet
        if self.level is Level.UNIVERSAL:
            powers = {f'K{j}': 1, f"K'{self.datum.t(j)}": 1}
        else:
            powers = {f"K'{j}": -1, f"K'{self.datum.t(j)}": 1}
        (mono,) = amb.torus_element(powers).terms
        return mono[1]

    def embed_word(self, word: Word) -> NCPoly:
        cached = self._embedded.get(word)
        if cached is None:
            cached = self.ambient.normal_form(
                self.embed_word(word[:-1]) * self._letter_images[word[-1]])
            self._embedded[word] = cached
        return cached

    def embed(self, x: NCPoly) -> NCPoly:
        """Ambient normal form of x.

        Raises:
            CapExceeded: if a word of x is longer than the completion cap.
        """
        if x.alphabet is not self.alphabet:
            raise ValueError('Element belongs to another ıquantum group')
        amb = self.ambient.alphabet
        size = len(amb.torus)
        result = amb.zero()
        for (word, kappa), c in x.terms.items():
            torus = [0] * size
            for e, image in zip(kappa, self._torus_images):
                if e:
                    for p, a in enumerate(image):
                        torus[p] += e * a
            result = result + \
                self.embed_word(word).times_torus(tuple(torus)).scale(c)
        return result

    def equal(self, x: NCPoly, y: NCPoly) -> bool:
        return self.embed(x) == self.embed(y)

    def reduce(self, x: NCPoly) -> NCPoly:
        return self.iota.reduce(x)

    def from_universal(self, x: NCPoly) -> NCPoly:
        """Image of a universal element under k̃_l ↦ ς_l k_{α_l}."""
        if self.level is not Level.PARAMETER:
            raise ValueError('from_universal needs a parameter-level group')
        nodes = self.datum.nodes
        terms: Dict[Tuple[Word, Kappa], FieldElem] = {}
        for (word, kappa), c in x.terms.items():
            scalar = FieldElem(c)
            for l, e in zip(nodes, kappa):
                if e:
                    scalar = scalar * self.params[l] ** e
            mono = (word, self.cartan_kappa(kappa))
            terms[mono] = terms[mono] + scalar if mono in terms else scalar
        return NCPoly(self.alphabet, terms)

    def distinguished(self) -> 'IQuantumGroup':
        """The parameter-level group at ς_⋄ with the same caps."""
        if self._distinguished is None:
            dist = distinguished_parameters(self.datum)
            if self.level is Level.PARAMETER and self.params == dist:
                self._distinguished = self
            else:
                self._distinguished = IQuantumGroup(
                    self.datum, Level.PARAMETER, dist, self.caps)
        return self._distinguished

    # Relations among B words

    def _words(self, length: int) -> Iterable[Word]:
        return itertools.product(range(len(self.alphabet.names)),
                                 repeat=length)

    def _discover_relations(self) -> RewriteSystem:
        """Complete the linear relations found among short B words."""
        size = len(self.cartan_nodes)
        units = []
        for t in range(size):
            for s in ((1,) if self.level is Level.UNIVERSAL else (1, -1)):
                kappa = [0] * size
                kappa[t] = s
                units.append(tuple(kappa))
        kappas = [self.alphabet.zero_kappa] + units

        by_weight: Dict[Tuple[int, Tuple[int, ...]], List[Word]] = {}
        for length in range(4):
            for word in self._words(length):
                by_weight.setdefault((length, self.weight(word)), []) \
                    .append(word)

        relations = []
        with contexts.log_duration(logger, 'Searching ı-relations'):
            for degree in range(1, 4):
                for (length, weight), top in sorted(by_weight.items()):
                    if length != degree:
                        continue
                    candidates = [self.alphabet.word(w) for w in top]
                    for lower in range(degree):
                        for w in by_weight.get((lower, weight), ()):
                            candidates.extend(self.alphabet.word(w, kappa)
                                              for kappa in kappas)
                    images = [self.embed(c) for c in candidates]
                    for pivot, coeffs in echelon_relations(images):
                        if pivot < len(top):
                            rel = combine(coeffs, candidates)
                            logger.debug('ı-relation: %s', rel)
                            relations.append(rel)
        return complete(self.alphabet, relations, self.caps.iota)

    def normal_words(self, weight: Tuple[int, ...],
                     max_degree: int) -> List[Word]:
        """ı-irreducible words of degree ≤ max_degree with this weight."""
        result = []
        letters = range(len(self.alphabet.names))

        def extend(word: Word):
            if self.weight(word) == weight:
                result.append(word)
            if len(word) == max_degree:
                return
            for x in letters:
                longer = word + (x,)
                if self.iota.is_normal(longer):
                    extend(longer)

        extend(())
        return result

    # Braid operators

    def braid_op(self, i: int) -> 'BraidOp':
        i = self.datum.rep(i)
        with self._ops_lock:
            op = self._ops.get(i)
            if op is None:
                op = self._ops[i] = BraidOp(self, i)
        return op


class BraidOp:
    """T_i on an ıquantum group, i normalized to its representative."""

    def __init__(self, group: IQuantumGroup, i: int):
        datum = group.datum
        self.group = group
        self.node = datum.rep(i)
        if group.level is Level.UNIVERSAL:
            image = self._universal_image
        else:
            image = self._parameter_image
        self.images: List[NCPoly] = [image(j) for j in datum.nodes]
        self._word_images: Dict[Word, NCPoly] = {
            (): group.alphabet.one()}
        self._inverses: Dict[int, NCPoly] = {}

    def __repr__(self):
        return f'<BraidOp T_{self.node} on {self.group!r}>'

    def _universal_image(self, j: int) -> NCPoly:
        g, datum, i = self.group, self.group.datum, self.node
        B = g.B
        ti = datum.t(i)
        if datum.is_fixed(i):
            if j == i:
                return (g.k(i, -1) * B(i)).scale(-V ** -2)
            if datum.c(i, j) == -1:
                return B(j) * B(i) - (B(i) * B(j)).scale(V)
            return B(j)
        if j == i:
            return -(g.k(i, -1) * B(ti))
        if j == ti:
            return (g.k(ti, -1) * B(i)).scale(-V ** 2)
        pair = datum.c(i, j), datum.c(ti, j)
        if pair == (-1, 0):
            return B(j) * B(i) - (B(i) * B(j)).scale(V)
        if pair == (0, -1):
            return B(ti) * B(j) - (B(j) * B(ti)).scale(V.inv())
        if pair == (-1, -1):
            return v_comm(v_comm(B(j), B(i), V), B(ti), V).scale(-V.inv()) \
                + B(j) * g.k(i)
        return B(j)

    def _parameter_image(self, j: int) -> NCPoly:
        g, datum, i = self.group, self.group.datum, self.node
        B, params = g.B, g.params
        ti = datum.t(i)
        if datum.is_fixed(i):
            if datum.c(i, j) == -1:
                root = sqrt_unit(-(V ** 2) * params[i]).inv()
                return (B(j) * B(i) - (B(i) * B(j)).scale(V)).scale(root)
            return B(j)
        if j == i:
            return -(g.k(i, -1) * B(ti))
        if j == ti:
            return (g.k(i) * B(i)).scale(-V ** 2)
        pair = datum.c(i, j), datum.c(ti, j)
        if pair == (-1, 0):
            root = sqrt_unit(params[i]).inv()
            return (B(j) * B(i) - (B(i) * B(j)).scale(V)).scale(root)
        if pair == (0, -1):
            root = sqrt_unit(params[ti]).inv()
            return (B(ti) * B(j) - (B(j) * B(ti)).scale(V.inv())) \
                .scale(root)
        if pair == (-1, -1):
            coeff = -(V * params[i]).inv()
            return v_comm(v_comm(B(j), B(i), V), B(ti), V).scale(coeff) \
                + B(j) * g.k(i)
        return B(j)

    def cartan_image(self, kappa: Kappa) -> NCPoly:
        """T_i on a torus monomial; T_i^-1 acts by the same formula."""
        g = self.group
        alpha = g.kappa_lattice(kappa)
        beta = bs_apply(g.datum, self.node, alpha)
        torus = g.alphabet.word((), g.cartan_kappa(beta))
        if g.level is Level.UNIVERSAL:
            return torus.scale(g.b(beta) / g.b(alpha))
        return torus

    def word_image(self, word: Word) -> NCPoly:
        cached = self._word_images.get(word)
        if cached is None:
            cached = self.group.reduce(
                self.word_image(word[:-1]) * self.images[word[-1]])
            self._word_images[word] = cached
        return cached

    def apply(self, x: NCPoly) -> NCPoly:
        """T_i(x), reduced by the ı-relations."""
        g = self.group
        result = g.alphabet.zero()
        for (word, kappa), c in x.terms.items():
            result = result + \
                (self.word_image(word) * self.cartan_image(kappa)).scale(c)
        return g.reduce(result)

    def inverse_letter(self, letter: int) -> NCPoly:
        """T_i^-1(B_l), found by solving T_i(X) = B_l.

        Raises:
            Unsolvable: if no X exists up to the largest inversion degree.
        """
        cached = self._inverses.get(letter)
        if cached is not None:
            return cached
        g = self.group
        datum = g.datum
        target = g.alphabet.word((letter,))
        if self.images[letter] == target:
            self._inverses[letter] = target
            return target

        node = datum.nodes[letter]
        lattice = bs_apply(datum, self.node,
                           tuple(-x for x in datum.simple(node)))
        weight = g.quotient(lattice)
        # Cartan factors of the preimage: those of T_i(B_l) and k̃_i, k̃_τi,
        # closed under bs_i and sign.
        lattice_vectors = [g.kappa_lattice(kappa)
                           for _, kappa in self.images[letter].terms]
        lattice_vectors.append(datum.simple(self.node))
        lattice_vectors.append(datum.simple(datum.t(self.node)))
        kappas = {g.alphabet.zero_kappa}
        for alpha in lattice_vectors:
            for gamma in (alpha, bs_apply(datum, self.node, alpha)):
                for sign in (1, -1):
                    kappas.add(g.cartan_kappa(tuple(sign * a for a in gamma)))
        kappas = sorted(kappas)

        target_image = g.embed(target)
        name = g.alphabet.names[letter]
        for degree in range(g.caps.inverse, g.caps.inverse_max + 1):
            candidates = [g.alphabet.word(w, kappa)
                          for w in g.normal_words(weight, degree)
                          for kappa in kappas]
            try:
                images = [g.embed(self.apply(c)) for c in candidates]
                coeffs, = linear_solve([target_image], images)
            except exceptions.Unsolvable:
                logger.warning('T_%d^-1(%s) not found up to degree %d',
                               self.node, name, degree)
                continue
            except exceptions.CapExceeded:
                logger.warning('T_%d^-1(%s): degree %d exceeds the '
                               'completion cap', self.node, name, degree)
                break
            x = g.reduce(combine(coeffs, candidates))
            if g.embed(self.apply(x)) != target_image:
                continue
            logger.debug('T_%d^-1(%s) = %s', self.node, name, x)
            self._inverses[letter] = x
            return x
        raise exceptions.Unsolvable(
            f'No preimage of {name} under T_{self.node} up to degree '
            f'{g.caps.inverse_max}')

    def apply_inverse(self, x: NCPoly) -> NCPoly:
        """T_i^-1(x)."""
        g = self.group
        result = g.alphabet.zero()
        for (word, kappa), c in x.terms.items():
            image = g.alphabet.one()
            for letter in word:
                image = g.reduce(image * self.inverse_letter(letter))
            result = result + (image * self.cartan_image(kappa)).scale(c)
        return g.reduce(result)


def alternating(i: int, j: int, m: int) -> List[int]:
    return [(i, j)[k % 2] for k in range(m)]


def apply_word(group: IQuantumGroup, word: Sequence[int],
               x: NCPoly) -> NCPoly:
    """T_{w_1}···T_{w_n}(x), innermost operator first."""
    for i in reversed(word):
        x = group.braid_op(i).apply(x)
    return x


def _check_generator(group: IQuantumGroup, i: int, j: int, m: int,
                     name: str, gen: NCPoly) -> Dict[str, Any]:
    record: Dict[str, Any] = {'gen': name, 'cap': group.caps.completion}
    try:
        lhs = group.embed(apply_word(group, alternating(i, j, m), gen))
        rhs = group.embed(apply_word(group, alternating(j, i, m), gen))
    except exceptions.CapExceeded as e:
        logger.warning('Braid check of %s on %s undecided: %s',
                       (i, j), name, e)
        record.update(lhs_nf_hash=None, rhs_nf_hash=None, equal=None,
                      error='CapExceeded')
        return record
    record.update(lhs_nf_hash=lhs.digest(), rhs_nf_hash=rhs.digest(),
                  equal=lhs == rhs)
    return record


def _braid_header(group: IQuantumGroup, i: int, j: int) -> Dict[str, Any]:
    datum = group.datum
    i, j = datum.rep(i), datum.rep(j)
    return {
        'diagram': datum.label(),
        'tau': {str(k): v for k, v in datum.quiver.tau_map().items()},
        'level': str(group.level),
        'params': group.params_json(),
        'pair': [i, j],
        'm': datum.weyl.m(i, j),
    }


def _finish(report: Dict[str, Any]) -> Dict[str, Any]:
    report['passed'] = not report.get('errors') and \
        all(r['equal'] for r in report['per_generator'])
    level = logging.INFO if report['passed'] else logging.WARNING
    logger.log(level, 'Braid relation %s (m=%d, %s): %s', report['pair'],
               report['m'], report['level'],
               'holds' if report['passed'] else 'FAILED')
    return report


def verify_braid_pair(group: IQuantumGroup, i: int, j: int) \
        -> Dict[str, Any]:
    """Check the m_ij-alternating braid relation on every generator."""
    report = _braid_header(group, i, j)
    i, j = report['pair']
    report['per_generator'] = [
        _check_generator(group, i, j, report['m'], name, gen)
        for name, gen in group.generators()]
    return _finish(report)


async def verify_braid_pair_async(
        group: IQuantumGroup, i: int, j: int,
        executor: Optional[concurrent.futures.Executor] = None,
) -> Dict[str, Any]:
    """Same as :func:`verify_braid_pair`, one executor job per generator."""
    loop = asyncio.get_running_loop()
    report = _braid_header(group, i, j)
    i, j = report['pair']
    errors: List[Dict[str, str]] = []

    async def check(name: str, gen: NCPoly) -> Optional[Dict[str, Any]]:
        async with contexts.log_unhandled_exc(logger, errors):
            return await loop.run_in_executor(
                executor, _check_generator, group, i, j, report['m'],
                name, gen)
        return None

    results = await asyncio.gather(
        *(check(name, gen) for name, gen in group.generators()))
    report['per_generator'] = [r for r in results if r is not None]
    report['errors'] = errors
    return _finish(report)


async def verify_braid_group(
        group: IQuantumGroup,
        pairs: Optional[Sequence[Tuple[int, int]]] = None,
        workers: Optional[int] = None,
) -> List[Dict[str, Any]]:
    """Verify every pair i < j of representatives (or the given pairs)."""
    reps = group.datum.reps.reps
    if pairs is None:
        pairs = list(itertools.combinations(reps, 2))
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) \
            as executor:
        reports = []
        for i, j in pairs:
            reports.append(
                await verify_braid_pair_async(group, i, j, executor))
    return reports


class RootVector(NamedTuple):
    root: Vector
    position: int
    node: int
    tau: bool
    prefactor: FieldElem
    element: NCPoly
    ambiguous: bool = False

    def to_json(self) -> Dict[str, Any]:
        return {
            'root': list(self.root),
            'position': self.position,
            'node': self.node,
            'tau': self.tau,
            'prefactor': format_scalar(self.prefactor),
            'element': str(self.element),
            'ambiguous_prefactor': self.ambiguous,
        }


def _a_monomial(a: Mapping[int, FieldElem], nodes: Sequence[int],
                i: int, root: Vector) -> FieldElem:
    result = a[i]
    for l, d in zip(nodes, root):
        if d:
            result = result * a[l] ** (-d)
    return result


def q_root_vectors(group: IQuantumGroup,
                   seq: IAdmissibleSeq) -> List[RootVector]:
    """B_β_j and B_τβ_j for a complete ı-admissible sequence.

    B_β_j = a_ij Π a_l^-d_l · T_i1^-1···T_ij-1^-1(B_ij), with the a-factor
    only at the parameter level; B_τβ_j uses B_τij.
    """
    datum = group.datum
    nodes = datum.nodes
    a = None
    if group.level is Level.PARAMETER:
        a = base_change_factors(datum, group.params)
    vectors = []
    for j, (i, beta, tau_beta) in enumerate(
            zip(seq.indices, seq.betas, seq.tau_betas), start=1):
        chain = seq.indices[:j - 1]
        entries = [(i, beta, False)]
        if tau_beta != beta:
            entries.append((datum.t(i), tau_beta, True))
        for node, root, is_tau in entries:
            x = group.B(node)
            for k in reversed(chain):
                x = group.braid_op(k).apply_inverse(x)
            prefactor, ambiguous = ONE, False
            if a is not None:
                prefactor = _a_monomial(a, nodes, i, root)
                if is_tau and prefactor != _a_monomial(a, nodes, i, beta):
                    ambiguous = True
                    logger.warning('Prefactor of B_%r differs from the '
                                   'one read from %r', root, beta)
                x = x.scale(prefactor)
            vectors.append(RootVector(root, j, node, is_tau, prefactor, x,
                                      ambiguous))
    return vectors


def _ordered_monomials(count: int, degree: int) \
        -> Iterable[Tuple[int, ...]]:
    for total in range(degree + 1):
        yield from itertools.combinations_with_replacement(range(count),
                                                           total)


class _Products:
    """Ordered products of root vectors, memoized by prefix."""

    def __init__(self, group: IQuantumGroup, vectors: Sequence[RootVector]):
        self.group = group
        self.vectors = vectors
        self._cache: Dict[Tuple[int, ...], NCPoly] = {
            (): group.alphabet.one()}

    def __call__(self, multiset: Tuple[int, ...]) -> NCPoly:
        cached = self._cache.get(multiset)
        if cached is None:
            cached = self.group.reduce(
                self(multiset[:-1]) * self.vectors[multiset[-1]].element)
            self._cache[multiset] = cached
        return cached

    def weight(self, multiset: Tuple[int, ...]) -> Tuple[int, ...]:
        g = self.group
        total = [0] * len(g.alphabet.weights[0])
        for k in multiset:
            for p, x in enumerate(g.root_weight(self.vectors[k].root)):
                total[p] += x
        return g.normalize(total)


def pbw_expansion(group: IQuantumGroup, vectors: Sequence[RootVector],
                  x: NCPoly, cartan_radius: Optional[int] = None) \
        -> List[Tuple[Tuple[int, ...], Kappa, FieldElem]]:
    """Coefficients of a homogeneous x in the ordered PBW-Cartan monomials.

    Returns ``(multiset of root vector positions, κ, coefficient)`` for the
    nonzero coefficients.

    Raises:
        Unsolvable: if x is outside the span up to its degree.
    """
    products = _Products(group, vectors)
    degree = max(x.degree(), 0)
    if cartan_radius is None:
        cartan_radius = degree // 2 + max(
            (sum(map(abs, k)) for _, k in x.terms), default=0)
    weights = {group.weight(w) for w, _ in x.terms}
    box = group.cartan_box(cartan_radius)
    basis = [(m, kappa)
             for m in _ordered_monomials(len(vectors), degree)
             if products.weight(m) in weights
             for kappa in box]
    candidates = [products(m).times_torus(kappa) for m, kappa in basis]
    coeffs, = linear_solve([group.embed(x)],
                           [group.embed(c) for c in candidates])
    return [(m, kappa, c) for (m, kappa), c in zip(basis, coeffs) if c]


def pbw_check(group: IQuantumGroup, seq: IAdmissibleSeq, degree: int,
              cartan_radius: int = 0, spanning_degree: int = 3,
              vectors: Optional[Sequence[RootVector]] = None) \
        -> Dict[str, Any]:
    """Independence of ordered PBW monomials and a spanning spot check."""
    if vectors is None:
        vectors = q_root_vectors(group, seq)
    products = _Products(group, vectors)
    box = group.cartan_box(cartan_radius)
    monomials = list(_ordered_monomials(len(vectors), degree))
    with contexts.log_duration(logger, f'PBW rank at degree {degree}'):
        images = [group.embed(products(m).times_torus(kappa))
                  for m in monomials for kappa in box]
        found = rank(images)
    independence = {
        'degree': degree,
        'cartan_radius': cartan_radius,
        'count': len(images),
        'rank': found,
        'passed': found == len(images),
    }

    spanning = []
    for length in range(1, spanning_degree + 1):
        for word in itertools.product(group.datum.nodes, repeat=length):
            record: Dict[str, Any] = {'word': [f'B{i}' for i in word]}
            target = group.word(word)
            weight = group.weight(next(iter(target.terms))[0])
            basis = [(m, kappa)
                     for m in _ordered_monomials(len(vectors), length)
                     if products.weight(m) == weight
                     for kappa in group.cartan_box(length // 2)]
            columns = [group.embed(products(m).times_torus(kappa))
                       for m, kappa in basis]
            try:
                linear_solve([group.embed(target)], columns)
            except exceptions.Unsolvable:
                record.update(passed=False, unique=False)
            else:
                record.update(passed=True,
                              unique=rank(columns) == len(columns))
            spanning.append(record)

    passed = independence['passed'] and \
        all(r['passed'] and r['unique'] for r in spanning)
    logger.info('PBW check (%s, degree %d): %s', group.label(), degree,
                'passed' if passed else 'FAILED')
    return {
        'diagram': group.datum.label(),
        'level': str(group.level),
        'params': group.params_json(),
        'ordering': [list(v.root) for v in vectors],
        'independence': independence,
        'spanning': spanning,
        'passed': passed,
    }


def phi_param_change(x: NCPoly, group: IQuantumGroup,
                     inverse: bool = False) -> NCPoly:
    """φ: U^ı at ς_⋄ → U^ı at the parameters of *group*, B_i ↦ a_iB_i.

    With *inverse*, x lives in *group* and is sent back to ς_⋄.
    """
    if group.level is not Level.PARAMETER:
        raise ValueError('φ relates parameter-level groups')
    a = base_change_factors(group.datum, group.params)
    factors = [a[i].inv() if inverse else a[i] for i in group.datum.nodes]
    source, target = group.distinguished(), group
    if inverse:
        source, target = target, source
    if x.alphabet is not source.alphabet:
        raise ValueError('Element belongs to another ıquantum group')
    terms = {}
    for (word, kappa), c in x.terms.items():
        scalar = FieldElem(c)
        for letter in word:
            scalar = scalar * factors[letter]
        terms[word, kappa] = scalar
    return NCPoly(target.alphabet, terms)


def check_conjugation(group: IQuantumGroup) -> Dict[str, Any]:
    """T_i = φ T_⋄,i φ^-1 on every generator, for every representative."""
    dist = group.distinguished()
    checks = []
    for i in group.datum.reps.reps:
        op, op_dist = group.braid_op(i), dist.braid_op(i)
        for name, gen in group.generators():
            lhs = op.apply(gen)
            rhs = phi_param_change(
                op_dist.apply(phi_param_change(gen, group, inverse=True)),
                group)
            checks.append({'node': i, 'gen': name,
                           'equal': group.equal(lhs, rhs)})
    return {
        'diagram': group.datum.label(),
        'params': group.params_json(),
        'checks': checks,
        'passed': all(c['equal'] for c in checks),
    }


def reduced_ideal_stability(group: IQuantumGroup, i: int) -> Dict[str, Any]:
    """T_i keeps the ideal of k̃_l − ς_⋄,l and k̃_lk̃_τl − ς_⋄,l² stable.

    Each image is embedded, sent to the reduced ambient algebra at ς_⋄ and
    must vanish there.
    """
    if group.level is not Level.UNIVERSAL:
        raise ValueError('Ideal stability is a universal-level check')
    datum = group.datum
    dist = distinguished_parameters(datum)
    reduced = build_ambient(datum, reduced=True, params=dist,
                            cap=group.caps.completion)
    op = group.braid_op(i)
    checks = []
    for l in datum.reps.reps:
        if datum.is_fixed(l):
            name = f'k{l} - s{l}'
            gen = group.k(l) - dist[l]
        else:
            name = f'k{l}*k{datum.t(l)} - s{l}^2'
            gen = group.k(l) * group.k(datum.t(l)) - dist[l] ** 2
        image = op.apply(gen)
        vanishes = reduced.reduce_map(group.embed(image)).is_zero()
        checks.append({'generator': name, 'image': str(image),
                       'vanishes': vanishes})
    passed = all(c['vanishes'] for c in checks)
    logger.info('Ideal stability under T_%d: %s', op.node,
                'holds' if passed else 'FAILED')
    return {'node': op.node, 'checks': checks, 'passed': passed}
