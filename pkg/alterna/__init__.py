"""Numerical laboratory for waveguides with frequently alternating Dirichlet and Robin conditions."""

import typing

__title__: typing.Final[str] = "alterna"
__author__: typing.Final[str] = "Chromosomologist"
__license__: typing.Final[str] = "MIT"
__copyright__: typing.Final[str] = "© 2022-present Chromosomologist"
__version__: typing.Final[str] = "0.1.0"


from alterna import discretize as discretize
from alterna import experiments as experiments
from alterna import geometry as geometry
from alterna import model1d as model1d
from alterna import observables as observables
from alterna import specfun as specfun
from alterna import traits as traits
from alterna.errors import *
from alterna.impl.config_factory import ConfigFactory as ConfigFactory
from alterna.impl.record_sink import CSVRecordSink as CSVRecordSink
from alterna.impl.runner import SweepRunner as SweepRunner
from alterna.impl.solvers import SparseDirectSolver as SparseDirectSolver
from alterna.internal.data_binding import JSONImpl as JSONImpl
from alterna.internal.data_binding import set_json_impl as set_json_impl
from alterna.models import *
