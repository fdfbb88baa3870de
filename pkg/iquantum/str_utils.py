import re
from typing import Dict, List, Optional, Tuple, Union

from .enums import DiagramType
from .scalars import FieldElem, parse_scalar

RE_ARROW = re.compile(r'^\s*(-?\d+)\s*(->|<-)\s*(-?\d+)\s*$')
RE_DIAGRAM = re.compile(r'^\s*([ADE])\s*(\d+)\s*$', re.IGNORECASE)
RE_TAU_ITEM = re.compile(r'^\s*(-?\d+)\s*:\s*(-?\d+)\s*$')
RE_PARAM_ITEM = re.compile(r'^\s*s(-?\d+)\s*=\s*(.+?)\s*$')
RE_LETTER = re.compile(r'^\s*B(-?\d+)\s*$')
RE_PAIR = re.compile(r'^\s*(-?\d+)\s*,\s*(-?\d+)\s*$')


def _items(text: str) -> List[str]:
    return [item for item in text.split(',') if item.strip()]


def parse_diagram(text: str) -> Tuple[DiagramType, int]:
    """Parse a diagram name like ``A3`` or ``e6``.

    Raises:
        ValueError: if the name is not a type letter followed by a rank.
    """
    m = RE_DIAGRAM.match(text)
    if not m:
        raise ValueError(f'Invalid diagram {text!r}')
    return DiagramType(m.group(1).upper()), int(m.group(2))


def parse_orientation(text: str) -> List[Tuple[int, int]]:
    """Parse arrows like ``1->2, 3->2`` or ``1<-2,2->3``.

    Each arrow is returned as (source, target).

    Raises:
        ValueError: if an item is not an arrow.
    """
    arrows = []
    for item in _items(text):
        m = RE_ARROW.match(item)
        if not m:
            raise ValueError(f'Invalid arrow {item!r}')
        a, direction, b = int(m.group(1)), m.group(2), int(m.group(3))
        arrows.append((a, b) if direction == '->' else (b, a))
    return arrows


def parse_tau(text: str) -> Union[str, Dict[int, int]]:
    """``id``, ``diagram``, or explicit pairs ``1:3, 2:2, 3:1``."""
    text = text.strip().lower()
    if text in ('id', 'diagram'):
        return text
    tau = {}
    for item in _items(text):
        m = RE_TAU_ITEM.match(item)
        if not m:
            raise ValueError(f'Invalid involution entry {item!r}')
        tau[int(m.group(1))] = int(m.group(2))
    return tau


def parse_params(text: str) -> Optional[Dict[int, FieldElem]]:
    """Parse ``distinguished`` (None) or ``s1=-v^-4, s2=1``.

    Raises:
        ValueError: if an entry or scalar cannot be parsed.
    """
    if text.strip().lower() == 'distinguished':
        return None
    params = {}
    for item in _items(text):
        m = RE_PARAM_ITEM.match(item)
        if not m:
            raise ValueError(f'Invalid parameter entry {item!r}')
        params[int(m.group(1))] = parse_scalar(m.group(2))
    return params


def parse_word(text: str) -> List[int]:
    """Parse a word of generators like ``B1*B2*B1`` into node labels."""
    nodes = []
    for letter in text.split('*'):
        m = RE_LETTER.match(letter)
        if not m:
            raise ValueError(f'Invalid generator {letter!r} in {text!r}')
        nodes.append(int(m.group(1)))
    return nodes


def parse_product(text: str) -> List[List[str]]:
    """Parse a product of module classes like ``S1*S2+S3*E1``.

    Factors are separated by ``*``; a factor is a direct sum of
    indecomposable labels separated by ``+``.
    """
    factors = []
    for factor in text.split('*'):
        labels = [label.strip() for label in factor.split('+')]
        if not all(labels):
            raise ValueError(f'Empty summand in {text!r}')
        factors.append(labels)
    return factors


def parse_pair(text: str) -> Tuple[int, int]:
    m = RE_PAIR.match(text)
    if not m:
        raise ValueError(f'Invalid pair {text!r}')
    return int(m.group(1)), int(m.group(2))


def parse_int_list(text: str) -> List[int]:
    """Integers separated by whitespace and/or commas."""
    return [int(x) for x in re.split(r'[\s,]+', text.strip()) if x]
