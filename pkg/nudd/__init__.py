from nudd.exceptions import *
from nudd.constants import *
from nudd.mpcore import CMatrix, Precision, hermitian_eig, kron, matmul, \
        partial_trace_system
from nudd.schedule import NuddSpec, Timeline, build_timeline, nudd_timing, \
        modulation, min_pulse_interval, udd_fractions
from nudd.errortypes import ErrorVector, MIXED, Moos, validate_moos, \
        partition, classify, generator_table, pauli_string
from nudd.presets import build_moos, build_generators
from nudd.coefficients import ErrorWord, coefficient, oracle_coefficient, \
        vanishing_order, vanishing_profile, outer_decomposition
from nudd.predictor import predict_order, predict_overall, naive_order, \
        lemma_checks, optimal_arrangement
from nudd.fourier import G1, fourier_profile
from nudd.counter import EvaluationCounter
from nudd.simulator import BathSpec, ModelHamiltonian, \
        assemble_hamiltonian, build_bath_operator, evolve, distance_D, \
        error_measure_E
from nudd.config import SweepConfig, load_config
from nudd.sweep import run_sweep, fit_orders
from nudd.tables import emit_tables
from nudd.cache import PointCache

# Attempt to import optional sql point cache
try:
    from nudd.sql_cache import SQLPointCache
    from nudd.database import connect_database
except SQLEngineNotAvailable:
    pass
