"""Exact flat-band analysis for maximal abelian covers of finite multigraphs."""

__version__ = "0.1.0"

from .flatband import FlatBandReport, flatband_polynomial, is_flatband
from .generators import named_fixture
from .graph import Multigraph, SchrodingerWeights, graph_from_json, graph_to_json
from .kernels import BACKEND
from .poly import RationalPolynomial
from .rational import GaussianRational, parse_rational

__all__ = [
    "BACKEND", "FlatBandReport", "GaussianRational", "Multigraph", "RationalPolynomial",
    "SchrodingerWeights", "flatband_polynomial", "graph_from_json", "graph_to_json",
    "is_flatband", "named_fixture", "parse_rational",
]
