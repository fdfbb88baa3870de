"""Verification toolkit for quasi-split ıquantum groups of Dynkin type.

The package builds ıquantum groups symbolically, implements their relative
braid group symmetries and PBW bases, and cross-checks them against
ıHall algebras of ıquiver algebras over finite fields.
"""

from .exceptions import *
from .rootdata import build, RootDatum, IQuiver
from .iseq import i_admissible_complete, verify_i_admissible
from .iqg import IQuantumGroup, Caps, q_root_vectors, pbw_check, \
    verify_braid_pair
from .hallfq import Catalog, hall_product, psi_cross_check

__all__ = exceptions.__all__ + [
    'build', 'RootDatum', 'IQuiver',
    'i_admissible_complete', 'verify_i_admissible',
    'IQuantumGroup', 'Caps', 'q_root_vectors', 'pbw_check',
    'verify_braid_pair',
    'Catalog', 'hall_product', 'psi_cross_check',
]

__version__ = '0.1.0'
# Note: setup.py reads this line as text, since importing the package would
# import sympy and numpy.
