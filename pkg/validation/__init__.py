"""Oracles, rf experiments, the results store and the command line"""

from .oracles import collect_word, relation_matrix, snf_rank_mod_p, support_violations
from .rf_harness import ExperimentConfig, RfTableRow, rf_lower_probe, rf_upper_table
from .results_store import ResultsStore

__all__ = [
    'collect_word',
    'relation_matrix',
    'snf_rank_mod_p',
    'support_violations',
    'ExperimentConfig',
    'RfTableRow',
    'rf_lower_probe',
    'rf_upper_table',
    'ResultsStore',
]
