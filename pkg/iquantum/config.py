"""Run configuration: INI file values overridden by command-line flags."""

import argparse
import configparser
import os
from typing import Any, Dict, List, NamedTuple, Optional, Tuple, Union

from . import exceptions
from . import log
from . import rootdata
from . import str_utils
from .boundalg import DEFAULT_RANK_CAP
from .enums import DiagramType, HallMethod, Labels, Level
from .hallfq import DEFAULT_DIM_CAP
from .iqg import Caps
from .scalars import FieldElem, format_scalar

__all__ = ['RunConfig', 'load', 'WORKERS_ENV']

logger = log.pkg_logger.getChild('config')

WORKERS_ENV = 'IQUANTUM_WORKERS'


class RunConfig(NamedTuple):
    diagram_type: DiagramType
    rank: int
    tau: Union[str, Dict[int, int]]
    labels: Labels
    orientation: Optional[List[Tuple[int, int]]]
    level: Level
    params: Optional[Dict[int, FieldElem]]
    caps: Caps
    module_dim: int
    rank_cap: int
    q: int
    primes: List[int]
    method: HallMethod
    workers: Optional[int]
    extended: bool
    seed: int
    datum: rootdata.RootDatum

    def to_json(self) -> Dict[str, Any]:
        return {
            'diagram': f'{self.diagram_type}{self.rank}',
            'tau': self.tau if isinstance(self.tau, str) else
            {str(k): v for k, v in self.tau.items()},
            'labels': str(self.labels),
            'orientation': self.datum.quiver.format_orientation(),
            'level': str(self.level),
            'params': 'distinguished' if self.params is None else
            {f's{i}': format_scalar(s) for i, s in self.params.items()},
            'caps': dict(self.caps._asdict(), module_dim=self.module_dim,
                         rank=self.rank_cap),
            'q': self.q,
            'primes': self.primes,
            'method': str(self.method),
            'workers': self.workers,
            'extended': self.extended,
            'seed': self.seed,
        }


def _pick(arg, section: configparser.SectionProxy, key: str, fallback=None):
    if arg is not None:
        return arg
    return section.get(key, fallback) or fallback


def _workers(configured: Optional[str]) -> Optional[int]:
    workers = int(configured) if configured else None
    env = os.environ.get(WORKERS_ENV)
    if env:
        workers = int(env) if workers is None else min(workers, int(env))
    if workers is not None and workers < 1:
        raise exceptions.ConfigError('Worker count must be positive')
    return workers


def load(args: argparse.Namespace) -> RunConfig:
    """Combine the optional config file in *args* with its flags.

    Raises:
        ConfigError: on unparsable or inconsistent values, including root
            data that :func:`rootdata.build` rejects.
    """
    conf = configparser.ConfigParser(empty_lines_in_values=False)
    for section in ('diagram', 'parameters', 'caps', 'hall', 'run'):
        conf.add_section(section)
    if getattr(args, 'configfile', None) is not None:
        conf.read_file(args.configfile)
        args.configfile.close()
        logger.debug('Read config file')

    diagram, parameters, caps_section, hall, run = (
        conf[s] for s in ('diagram', 'parameters', 'caps', 'hall', 'run'))
    try:
        if args.diagram is not None:
            diagram_type, rank = str_utils.parse_diagram(args.diagram)
        else:
            diagram_type = DiagramType(diagram.get('type', 'A').upper())
            rank = diagram.getint('rank', 2)
        tau = str_utils.parse_tau(_pick(args.tau, diagram, 'tau', 'id'))
        labels = Labels(_pick(args.labels, diagram, 'labels', 'standard'))
        orientation_text = _pick(args.orientation, diagram, 'orientation')
        orientation = str_utils.parse_orientation(orientation_text) \
            if orientation_text else None

        level = Level(_pick(args.level, run, 'level', 'universal'))
        if args.param is not None:
            params = str_utils.parse_params(args.param)
        elif parameters.get('kind', 'distinguished') == 'custom':
            params = str_utils.parse_params(', '.join(
                f'{k}={v}' for k, v in parameters.items() if k != 'kind'))
        else:
            params = None

        default = Caps()
        caps = Caps(
            completion=int(_pick(args.cap, caps_section, 'completion',
                                 default.completion)),
            iota=caps_section.getint('iota', default.iota),
            inverse=caps_section.getint('inverse', default.inverse),
            inverse_max=caps_section.getint('inverse_max',
                                            default.inverse_max),
        )
        module_dim = caps_section.getint('module_dim', DEFAULT_DIM_CAP)
        rank_cap = caps_section.getint('rank', DEFAULT_RANK_CAP)

        q = int(_pick(args.q, hall, 'q', 2))
        primes = str_utils.parse_int_list(hall.get('primes', '2 3 5'))
        method = HallMethod(_pick(getattr(args, 'method', None), hall,
                                  'method', 'filtration'))

        workers = _workers(_pick(args.workers, run, 'workers'))
        extended = args.extended or run.getboolean('extended', False)
        seed = int(_pick(getattr(args, 'seed', None), run, 'seed', 0))
    except ValueError as e:
        raise exceptions.ConfigError(str(e)) from e

    if params is not None and level is not Level.PARAMETER:
        raise exceptions.ConfigError(
            'Custom parameters need --level parameter')
    if diagram_type is DiagramType.E and rank == 6 and not extended:
        logger.warning('E6 runs are slow; pass --extended to '
                       'acknowledge')

    # Root data are validated before any computation.
    try:
        datum = rootdata.build(diagram_type, rank, orientation, tau, labels)
    except ValueError as e:
        raise exceptions.ConfigError(str(e)) from e

    config = RunConfig(diagram_type, rank, tau, labels, orientation, level,
                       params, caps, module_dim, rank_cap, q, primes, method,
                       workers, extended, seed, datum)
    logger.debug('Run configuration: %r', config.to_json())
    return config
