"""Critical ideals of digraphs over the integers."""
from .polyring import MonomialOrder, Polynomial, canonical_string, parse_polynomial
from .digraph import Digraph, family, parse_graph
from .grobner import Budget, BudgetExceeded, GroebnerBasis, Ideal, buchberger, groebner, ideal_equal
from .critical import critical_group, critical_ideal, gamma, smith_normal_form
from .symlaplace import det, generalized_laplacian, minor_generators

__version__ = "0.1.0"
