import argparse
import asyncio
import itertools
import json
import logging
import random
import sys
from typing import Any, Dict, List

from . import config
from . import contexts
from . import exceptions
from . import hallfq
from . import iqg
from . import iseq
from . import str_utils
from .boundalg import build_bound_algebra
from .enums import Command, DiagramType, Level
from .rootdata import bs_apply
from .scalars import format_scalar

rootlogger = logging.getLogger()
command_logger = logging.getLogger('command')


def _group(cfg: config.RunConfig) -> iqg.IQuantumGroup:
    return iqg.IQuantumGroup(cfg.datum, cfg.level, cfg.params, cfg.caps)


def _catalog(cfg: config.RunConfig) -> hallfq.Catalog:
    algebra = build_bound_algebra(cfg.datum.quiver, cfg.rank_cap)
    return hallfq.Catalog(algebra, cfg.q, cfg.module_dim)


def _distinguished(cfg: config.RunConfig) -> iqg.IQuantumGroup:
    return iqg.IQuantumGroup(cfg.datum, Level.PARAMETER, None, cfg.caps)


async def run_verify_braid(cfg: config.RunConfig,
                           args: argparse.Namespace) -> Dict[str, Any]:
    if cfg.diagram_type is DiagramType.E and not cfg.extended:
        raise exceptions.ConfigError(
            'Braid verification in type E needs --extended')
    group = _group(cfg)
    pairs = [str_utils.parse_pair(p) for p in args.pair] \
        if args.pair else None
    with contexts.log_duration(command_logger, 'Braid verification'):
        reports = await iqg.verify_braid_group(group, pairs, cfg.workers)
    report: Dict[str, Any] = {'pairs': reports}
    verdicts = [r['passed'] for r in reports]
    if args.conjugation:
        if cfg.level is not Level.PARAMETER:
            raise exceptions.ConfigError(
                '--conjugation needs --level parameter')
        report['conjugation'] = iqg.check_conjugation(group)
        verdicts.append(report['conjugation']['passed'])
    if args.ideal:
        if cfg.level is not Level.UNIVERSAL:
            raise exceptions.ConfigError('--ideal needs --level universal')
        report['ideal'] = [iqg.reduced_ideal_stability(group, i)
                           for i in cfg.datum.reps.reps]
        verdicts.extend(r['passed'] for r in report['ideal'])
    report['passed'] = all(verdicts)
    return report


def run_iseq(cfg: config.RunConfig,
             args: argparse.Namespace) -> Dict[str, Any]:
    datum = cfg.datum
    if args.indices:
        indices = str_utils.parse_int_list(args.indices)
        report: Dict[str, Any] = {
            'betas': [list(b) for b in
                      iseq.betas_from_indices(datum, indices)]}
    else:
        seq = iseq.i_admissible_complete(datum)
        indices = list(seq.indices)
        report = seq.to_json(datum)
    report['orbits'] = iseq.count_orbits(datum)
    report['verification'] = iseq.verify_i_admissible(indices, datum)
    report['passed'] = report['verification']['passed']
    return report


def run_root_vectors(cfg: config.RunConfig,
                     args: argparse.Namespace) -> Dict[str, Any]:
    group = _group(cfg)
    seq = iseq.i_admissible_complete(cfg.datum)
    vectors = iqg.q_root_vectors(group, seq)
    report: Dict[str, Any] = {
        'indices': list(seq.indices),
        'vectors': [v.to_json() for v in vectors],
        'passed': True,
    }
    if args.hall_check:
        dist = _distinguished(cfg)
        check = hallfq.root_vector_check(
            iqg.q_root_vectors(dist, seq), dist, _catalog(cfg))
        report['hall_check'] = check
        report['passed'] = check['passed']
    return report


def run_pbw(cfg: config.RunConfig,
            args: argparse.Namespace) -> Dict[str, Any]:
    group = _group(cfg)
    seq = iseq.i_admissible_complete(cfg.datum)
    return iqg.pbw_check(group, seq, args.degree, args.cartan_radius,
                         args.spanning_degree)


def run_hall(cfg: config.RunConfig,
             args: argparse.Namespace) -> Dict[str, Any]:
    catalog = _catalog(cfg)
    twisted = not args.untwisted
    report: Dict[str, Any] = {'q': cfg.q, 'twisted': twisted}
    verdicts = []
    if args.product:
        factors = [hallfq.element(catalog, catalog.class_of(labels))
                   for labels in str_utils.parse_product(args.product)]
        result = factors[0]
        for factor in factors[1:]:
            result = hallfq.hall_product(result, factor, catalog, twisted,
                                         cfg.method)
        report['product'] = {'expression': args.product,
                             'result': hallfq.format_element(result,
                                                             catalog)}
    if args.validate:
        validation = {
            'conversion': hallfq.validate_conversion(catalog),
            'associativity': hallfq.check_associativity(
                catalog, samples=args.samples, seed=cfg.seed),
            'enumeration': [
                hallfq.validate_enumeration(catalog, dims)
                for dims in itertools.product(
                    range(3), repeat=len(cfg.datum.nodes))
                if 0 < sum(dims) <= 2],
        }
        verdicts.append(validation['conversion']['passed'])
        verdicts.append(validation['associativity']['passed'])
        verdicts.extend(r['passed'] for r in validation['enumeration'])
        report['validation'] = validation
    if args.generic:
        m, n, l = (labels.split('+') for labels in args.generic)
        coefficient = hallfq.hall_generic_coefficient(
            cfg.datum.quiver, m, n, l, cfg.primes, args.degree,
            twisted=twisted, dim_cap=cfg.module_dim)
        report['generic'] = {'classes': args.generic,
                             'primes': cfg.primes,
                             'coefficient': format_scalar(coefficient)}
    report['passed'] = all(verdicts)
    return report


def run_cross_check(cfg: config.RunConfig,
                    args: argparse.Namespace) -> Dict[str, Any]:
    group = _group(cfg)
    catalog = _catalog(cfg)
    words: List[List[int]] = [str_utils.parse_word(w) for w in args.word]
    rng = random.Random(cfg.seed)
    nodes = list(cfg.datum.nodes)
    for _ in range(args.random):
        words.append([rng.choice(nodes)
                      for _ in range(rng.randint(1, args.max_length))])
    checks = [hallfq.psi_cross_check(word, group, catalog) for word in words]
    report: Dict[str, Any] = {'q': cfg.q, 'level': str(cfg.level),
                              'words': checks}
    verdicts = [c['equal'] for c in checks]
    if args.root_vectors:
        dist = _distinguished(cfg)
        seq = iseq.i_admissible_complete(cfg.datum)
        check = hallfq.root_vector_check(iqg.q_root_vectors(dist, seq),
                                         dist, catalog)
        report['root_vectors'] = check
        verdicts.append(check['passed'])
    report['passed'] = all(verdicts)
    return report


def run_reflect(cfg: config.RunConfig,
                args: argparse.Namespace) -> Dict[str, Any]:
    datum = cfg.datum
    catalog = _catalog(cfg)
    module = catalog.indecomposables[catalog.find(args.module)].rep
    reflected = hallfq.reflect_module(module, args.sink)
    killed = module.total == 1 and \
        bool(module.dim(args.sink) or module.dim(datum.t(args.sink)))
    expected = (0,) * len(module.dims) if killed else \
        bs_apply(datum, args.sink, module.dims)
    report: Dict[str, Any] = {
        'module': args.module,
        'sink': args.sink,
        'dims': list(module.dims),
        'reflected': reflected.to_json(),
        'expected_dims': list(expected),
    }
    passed = reflected.dims == tuple(expected)
    if reflected.total:
        target = hallfq.Catalog(reflected.algebra, cfg.q, cfg.module_dim)
        key = target.classify(reflected)
        report['class'] = target.label(key)
        report['indecomposable'] = len(key) == 1 and key[0][1] == 1
        passed = passed and report['indecomposable']
    report['passed'] = passed
    return report


def run_count_indec(cfg: config.RunConfig,
                    args: argparse.Namespace) -> Dict[str, Any]:
    catalog = _catalog(cfg)
    total = args.total or cfg.module_dim
    count = hallfq.count_indecomposables(catalog, total)
    by_total: Dict[str, int] = {}
    for x in catalog.indecomposables:
        if x.rep.total <= total:
            by_total[str(x.rep.total)] = by_total.get(str(x.rep.total), 0) + 1
    return {'q': cfg.q, 'total': total, 'count': count,
            'by_total_dimension': by_total,
            'labels': [x.label for x in catalog.indecomposables
                       if x.rep.total <= total],
            'passed': True}


def run_classes(cfg: config.RunConfig,
                args: argparse.Namespace) -> Dict[str, Any]:
    catalog = _catalog(cfg)
    total = args.total or cfg.module_dim
    classes = []
    for t in range(1, total + 1):
        for key in catalog.classes_of_total(t):
            classes.append({
                'label': catalog.label(key),
                'dims': list(catalog.dims(key)),
                'aut': catalog.aut(key),
                'indecomposable': len(key) == 1 and key[0][1] == 1,
                'multiplicities': {catalog.indecomposables[i].label: m
                                   for i, m in key},
            })
    return {'q': cfg.q, 'indecomposables': catalog.inventory(total),
            'classes': classes, 'passed': True}


HANDLERS = {
    Command.VERIFY_BRAID: run_verify_braid,
    Command.ISEQ: run_iseq,
    Command.ROOT_VECTORS: run_root_vectors,
    Command.PBW: run_pbw,
    Command.HALL: run_hall,
    Command.CROSS_CHECK: run_cross_check,
    Command.REFLECT: run_reflect,
    Command.COUNT_INDEC: run_count_indec,
    Command.CLASSES: run_classes,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description='''Verify braid group actions, PBW bases and Hall algebra
        identities of quasi-split ıquantum groups.''',
        epilog='''The JSON report is written to standard output (or --out),
        a one-line summary to standard error. The exit status is 0 if all
        selected checks pass, 1 if some fail and 2 on errors.'''
    )
    parser.add_argument(
        'configfile', type=argparse.FileType('rt'), nargs='?',
        help='''Optional configuration file. Command line options take
        precedence over its values.'''
    )
    parser.add_argument(
        '-v', '--verbose', action='count',
        help='''Increase verbosity level. Specify once to see INFO logs, twice
        to see DEBUG.'''
    )
    parser.add_argument(
        '-t', '--log-no-time', action='store_true',
        help='''Suppress timestamps in logging output.'''
    )

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--diagram', help='''Dynkin diagram, e.g. A3.''')
    common.add_argument('--tau', help='''id, diagram, or pairs like 1:3,
                        2:2, 3:1.''')
    common.add_argument('--labels', choices=['standard', 'symmetric'])
    common.add_argument('--orientation', help='''Arrows like "1->2, 3->2".
                        Defaults to all edges pointing to a root node.''')
    common.add_argument('--level', choices=['universal', 'parameter'])
    common.add_argument('--param', help='''"distinguished" or s1=-v^-4,...
                        (parameter level).''')
    common.add_argument('--cap', type=int, help='''Completion cap.''')
    common.add_argument('--q', type=int, help='''Prime field size.''')
    common.add_argument('--workers', type=int)
    common.add_argument('--seed', type=int)
    common.add_argument('--extended', action='store_true', default=False,
                        help='''Allow slow runs such as type E.''')
    common.add_argument('--out', type=argparse.FileType('wt'),
                        help='''Write the JSON report to this file.''')

    commands = parser.add_subparsers(dest='command', required=True)

    sub = commands.add_parser(Command.VERIFY_BRAID, parents=[common],
                              help='''Check the braid relations of T_i.''')
    sub.add_argument('--pair', action='append', default=[],
                     help='''Check only this pair, e.g. 1,2.''')
    sub.add_argument('--conjugation', action='store_true',
                     help='''Also check T_i = φ T_⋄,i φ^-1.''')
    sub.add_argument('--ideal', action='store_true',
                     help='''Also check stability of the reduction ideal at
                     the distinguished parameter.''')

    sub = commands.add_parser(Command.ISEQ, parents=[common],
                              help='''Complete ı-admissible sequence.''')
    sub.add_argument('--indices', help='''Verify this sequence instead.''')

    sub = commands.add_parser(Command.ROOT_VECTORS, parents=[common],
                              help='''q-root vectors B_β.''')
    sub.add_argument('--hall-check', action='store_true',
                     help='''Compare Hall images at the distinguished
                     parameter.''')

    sub = commands.add_parser(Command.PBW, parents=[common],
                              help='''PBW independence and spanning.''')
    sub.add_argument('--degree', type=int, default=2)
    sub.add_argument('--cartan-radius', type=int, default=0)
    sub.add_argument('--spanning-degree', type=int, default=3)

    sub = commands.add_parser(Command.HALL, parents=[common],
                              help='''Hall products over F_q.''')
    sub.add_argument('--product', help='''Classes like "S1*S2+S3*E1".''')
    sub.add_argument('--untwisted', action='store_true')
    sub.add_argument('--method', choices=['filtration', 'extension'])
    sub.add_argument('--validate', action='store_true',
                     help='''Validate counting, associativity and
                     enumeration on small classes.''')
    sub.add_argument('--samples', type=int, default=50)
    sub.add_argument('--generic', nargs=3, metavar=('M', 'N', 'L'),
                     help='''Interpolate the coefficient of [L] in [M][N].''')
    sub.add_argument('--degree', type=int, default=2)

    sub = commands.add_parser(Command.CROSS_CHECK, parents=[common],
                              help='''Compare ψ with the symbolic layer.''')
    sub.add_argument('--word', action='append', default=[],
                     help='''Word like B1*B2*B1.''')
    sub.add_argument('--random', type=int, default=0,
                     help='''Number of additional random words.''')
    sub.add_argument('--max-length', type=int, default=3)
    sub.add_argument('--root-vectors', action='store_true')

    sub = commands.add_parser(Command.REFLECT, parents=[common],
                              help='''Reflect a kQ-module at a sink.''')
    sub.add_argument('--module', required=True, help='''e.g. M(1,1).''')
    sub.add_argument('--sink', type=int, required=True)

    sub = commands.add_parser(Command.COUNT_INDEC, parents=[common],
                              help='''Count indecomposables.''')
    sub.add_argument('--total', type=int)

    sub = commands.add_parser(Command.CLASSES, parents=[common],
                              help='''Dump the class inventory.''')
    sub.add_argument('--total', type=int)

    return parser


async def amain(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.verbose:
        loglevel = logging.WARNING
    elif args.verbose == 1:
        loglevel = logging.INFO
    else:
        loglevel = logging.DEBUG

    rootlogger.setLevel(loglevel)

    if args.log_no_time:
        formatter = logging.Formatter('%(levelname)-8s %(name)s %(message)s')
    else:
        formatter = logging.Formatter(
            '[%(asctime)s] %(levelname)-8s %(name)s %(message)s')
    stream_handler = logging.StreamHandler()
    stream_handler.setFormatter(formatter)
    rootlogger.addHandler(stream_handler)

    rootlogger.debug('Command line arguments: %r', args)

    command = Command(args.command)
    report: Dict[str, Any] = {'command': str(command)}
    try:
        cfg = config.load(args)
        report['config'] = cfg.to_json()
        handler = HANDLERS[command]
        if asyncio.iscoroutinefunction(handler):
            result = await handler(cfg, args)
        else:
            result = handler(cfg, args)
        report.update(result)
        status = 0 if report['passed'] else 1
    except (exceptions.IQuantumError, KeyError, ValueError) as e:
        # KeyError and ValueError come from unknown labels and bad syntax
        command_logger.error('%s: %s', type(e).__name__, e)
        report.update(error=type(e).__name__, message=str(e), passed=False)
        status = 2

    out = args.out or sys.stdout
    json.dump(report, out, indent=2, default=str)
    out.write('\n')
    if args.out:
        args.out.close()
    summary = 'error' if status == 2 else \
        'passed' if status == 0 else 'FAILED'
    print(f'{command}: {summary}', file=sys.stderr)
    return status


def main():
    try:
        status = asyncio.run(amain())
    except KeyboardInterrupt as e:
        rootlogger.info('Received %r', e)
        status = 130
    sys.exit(status)
