"""Random graph models whose sufficient statistics are counts of small
induced subgraphs (2-5 nodes) and per-node orbit degrees."""

from .catalog import Catalog, build_catalog, classify_induced, get_catalog
from .census import CensusResult, count_statistic, full_census
from .gof import GofReport, gof, holdout_quantile_test, quantile_test
from .graphs import (
    CategoricalAttribute,
    Graph,
    GraphError,
    NumericAttribute,
    load_attributes,
    load_edge_list,
)
from .inference import (
    FitConfig,
    FittedModel,
    estimate_loglik,
    mcmc_mle,
    mple,
    summarize_fit,
)
from .model import ModelSpec, load_model, save_model
from .sampler import SamplerConfig, SimulationResult, bernoulli_graph, simulate
from .terms import (
    ChangeScorePlan,
    GdvCache,
    TermSpec,
    affected_sets,
    change_scores,
    commit_toggle,
    parse_term,
    toggle_deltas,
)

__version__ = "0.1.0"
