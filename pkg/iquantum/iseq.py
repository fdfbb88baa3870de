"""Q-admissible orderings and complete ı-admissible sequences."""

from typing import Any, Dict, List, NamedTuple, Sequence, Tuple

from . import log
from .rootdata import IQuiver, RootDatum, Vector, bs_apply, reflect_quiver

__all__ = [
    'QOrdering',
    'IAdmissibleSeq',
    'q_admissible_ordering',
    'i_admissible_complete',
    'verify_i_admissible',
    'expand_word',
]

logger = log.pkg_logger.getChild('iseq')


class QOrdering(NamedTuple):
    """A Q-admissible ordering γ_1..γ_N with its (+)-admissible sinks."""
    sinks: Tuple[int, ...]
    roots: Tuple[Vector, ...]


class IAdmissibleSeq(NamedTuple):
    indices: Tuple[int, ...]
    betas: Tuple[Vector, ...]
    tau_betas: Tuple[Vector, ...]
    t_indices: Tuple[int, ...]
    ordering: QOrdering

    def interleaved(self) -> List[Vector]:
        """β_1, τβ_1, β_2, … with the redundant τβ_j omitted."""
        result = []
        for beta, tau_beta in zip(self.betas, self.tau_betas):
            result.append(beta)
            if tau_beta != beta:
                result.append(tau_beta)
        return result

    def to_json(self, datum: RootDatum) -> Dict[str, Any]:
        return {
            'nodes': list(datum.nodes),
            'orientation': datum.quiver.format_orientation(),
            'indices': list(self.indices),
            'betas': [list(b) for b in self.betas],
            'tau_betas': [list(b) for b in self.tau_betas],
            't_indices': list(self.t_indices),
            'q_ordering': {
                'sinks': list(self.ordering.sinks),
                'roots': [list(g) for g in self.ordering.roots],
            },
            'w0_reduced_word': expand_word(datum, self.indices),
        }


def expand_word(datum: RootDatum, indices: Sequence[int]) -> List[int]:
    """Replace each bs_i by s_i, or by s_i s_{τi} when τi ≠ i."""
    word = []
    for i in indices:
        word.append(i)
        if not datum.is_fixed(i):
            word.append(datum.t(i))
    return word


def q_admissible_ordering(datum: RootDatum) -> QOrdering:
    """Q-admissible ordering from a greedy (+)-admissible sink sequence.

    At each step the smallest sink i of the current quiver whose image
    w(α_i) is still positive is taken; γ = w(α_i) is emitted and the quiver
    is reflected at i alone.
    """
    roots = datum.roots
    quiver = datum.quiver.plain()
    w = roots.identity()
    sinks, gammas = [], []
    for _ in range(len(roots.positive)):
        for i in quiver.sinks():
            gamma = roots.apply(w, datum.simple(i))
            if roots.is_positive(gamma):
                break
        else:
            raise RuntimeError('No admissible sink; quiver is not Dynkin?')
        sinks.append(i)
        gammas.append(gamma)
        w = roots.compose(w, roots.reflections[datum.quiver.position(i)])
        quiver = reflect_quiver(quiver, i, plain=True)
    return QOrdering(tuple(sinks), tuple(gammas))


def _realize(datum: RootDatum, gammas: Sequence[Vector]) -> List[int]:
    """The (+)-admissible sequence i_1..i_N with γ_j = s_{i_1}…(α_{i_j})."""
    roots = datum.roots
    quiver = datum.quiver.plain()
    w = roots.identity()
    inverse = {v: k for k, v in enumerate(w)}
    sinks = []
    for gamma in gammas:
        preimage = roots.all_roots[inverse[roots.index(gamma)]]
        candidates = [i for i in datum.nodes if datum.simple(i) == preimage]
        if not candidates or not quiver.is_sink(candidates[0]):
            raise RuntimeError(f'Ordering is not Q-admissible at {gamma}')
        i, = candidates
        sinks.append(i)
        w = roots.compose(w, roots.reflections[datum.quiver.position(i)])
        inverse = {v: k for k, v in enumerate(w)}
        quiver = reflect_quiver(quiver, i, plain=True)
    return sinks


def i_admissible_complete(datum: RootDatum) -> IAdmissibleSeq:
    """A complete ı-admissible sequence by subsequence extraction.

    β_1 = γ_1, then β_j is the γ_k of minimal k not yet among the earlier
    β's and their τ-images. The interleaved list β_1, τβ_1, … is realized
    by a (+)-admissible sequence i_1..i_N, and the ı-indices are the
    i_{t_j} with β_j = γ_{t_j}. When i_{t_j} is not a representative, β_j
    and τβ_j trade places so that all indices lie in 𝕀_τ.
    """
    ordering = q_admissible_ordering(datum)
    chosen: List[Vector] = []
    covered = set()
    for gamma in ordering.roots:
        if gamma not in covered:
            chosen.append(gamma)
            covered.update((gamma, datum.tau_vector(gamma)))

    interleaved = []
    for beta in chosen:
        interleaved.append(beta)
        if datum.tau_vector(beta) != beta:
            interleaved.append(datum.tau_vector(beta))
    sinks = _realize(datum, interleaved)

    indices, betas, tau_betas, t_indices = [], [], [], []
    position = 0
    for beta in chosen:
        i = sinks[position]
        tau_beta = datum.tau_vector(beta)
        if not datum.in_reps(i):
            i = datum.rep(i)
            beta, tau_beta = tau_beta, beta
        indices.append(i)
        betas.append(beta)
        tau_betas.append(tau_beta)
        t_indices.append(position + 1)
        position += 1 if tau_beta == beta else 2

    seq = IAdmissibleSeq(tuple(indices), tuple(betas), tuple(tau_betas),
                         tuple(t_indices),
                         QOrdering(tuple(sinks), tuple(interleaved)))
    logger.debug('Complete ı-admissible sequence for %s: %r',
                 datum.quiver.format_orientation(), seq.indices)
    return seq


def verify_i_admissible(indices: Sequence[int],
                        datum: RootDatum) -> Dict[str, Any]:
    """Check an index sequence against the ı-admissibility conditions.

    Failures are reported as records ``{'step', 'condition', ...}``; the
    function never raises on a violated condition. Steps are 1-based.
    """
    roots = datum.roots
    failures = []
    quiver: IQuiver = datum.quiver
    w = roots.identity()
    betas: List[Vector] = []
    seen = set()
    for step, i in enumerate(indices, start=1):
        if i not in datum.nodes or not datum.in_reps(i):
            failures.append({'step': step, 'condition': 'representative',
                             'index': i})
            break
        if not quiver.is_sink(i):
            failures.append({'step': step, 'condition': 'sink',
                             'index': i,
                             'orientation': quiver.format_orientation()})
            break
        beta = roots.apply(w, datum.simple(i))
        if not roots.is_positive(beta):
            failures.append({'step': step, 'condition': 'positive',
                             'index': i, 'beta': list(beta)})
            break
        if beta in seen:
            failures.append({'step': step, 'condition': 'distinct',
                             'index': i, 'beta': list(beta)})
            break
        betas.append(beta)
        seen.update((beta, datum.tau_vector(beta)))
        for k in ([i] if datum.is_fixed(i) else [i, datum.t(i)]):
            w = roots.compose(w, roots.reflections[datum.quiver.position(k)])
        quiver = reflect_quiver(quiver, i)

    if not failures:
        missing = [list(b) for b in roots.positive if b not in seen]
        if missing:
            failures.append({'step': len(indices) + 1,
                             'condition': 'coverage', 'missing': missing})
        elif w != roots.longest_element():
            failures.append({'step': len(indices) + 1,
                             'condition': 'longest_element'})

    report = {
        'indices': list(indices),
        'betas': [list(b) for b in betas],
        'passed': not failures,
        'failures': failures,
    }
    if failures:
        logger.info('ı-admissibility check failed: %r', failures[0])
    return report


def betas_from_indices(datum: RootDatum,
                       indices: Sequence[int]) -> List[Vector]:
    """β_j = bs_{i_1}···bs_{i_{j−1}}(α_{i_j})."""
    result = []
    for j, i in enumerate(indices):
        beta = datum.simple(i)
        for k in reversed(indices[:j]):
            beta = bs_apply(datum, k, beta)
        result.append(beta)
    return result


def count_orbits(datum: RootDatum) -> int:
    """N_ı, the number of τ-orbits on Φ⁺."""
    return len({frozenset((b, datum.tau_vector(b)))
                for b in datum.roots.positive})

