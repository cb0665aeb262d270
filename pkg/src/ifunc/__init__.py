"""I-function numerics: contour evaluation, I-function distributions,
their product/quotient algebra, I-FIG distributions and independent oracles."""

from .errors import *  # noqa: F401,F403
from .kernel import BACKEND
from .params import GammaTriple, IFunctionParams, chi, convergence_report, pole_strip
from .contour import EvalConfig, EvalResult, evaluate, evaluate_info, evaluate_log
from .transforms import laplace_ifunction, mellin_ifunction, product_mellin_params
from .distribution import IDistribution, make_distribution
from .catalog import catalog, catalog_names
from .algebra import (
    bessel_gamma,
    confluent_gamma,
    make_product_form,
    noncentral_chi_square,
    power,
    product,
    quotient,
    scale,
)
from .ifig import IFIGDistribution, gig, ifig_catalog, inverse_gamma, inverse_gaussian, make_ifig

__version__ = "0.1.0"
