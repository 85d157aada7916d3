DEFAULT_DIGITS = 120
MIN_DIGITS = 30

# Tolerances are 10**(-digits + k) for the listed k.
HERMITIAN_TOL_K = 8
EIG_OFFDIAG_TOL_K = 4
EIG_RESIDUAL_TOL_K = 12
UNITARY_TOL_K = 14
PARTITION_TOL_K = 10
COEFFICIENT_ZERO_K = 15
FIT_FLOOR_K = 20

JACOBI_MAX_SWEEPS = 100

EVALUATION_BUDGET = 10 ** 7

HARMONIC_POPULATED = 1e-12
HARMONIC_FORBIDDEN = 1e-10

LOG10_JTAU_MIN = -10
LOG10_JTAU_MAX = -2
SWEEP_POINTS = 9
FIT_MIN = -8
FIT_MAX = -4
REALIZATIONS = 15
FAST_REALIZATIONS = 3
FIT_SLOPE_SLACK = 0.2
FIT_RESIDUAL_MAX = 0.05

J_HZ = 1e6
J00_HZ = 1e3
N_BATH_SPINS = 4
SYSTEM_QUBITS = 2

PAULI_LABELS = ('I', 'X', 'Y', 'Z')

SINGLE_QUBIT_4LAYER = 'single-qubit-4layer'
TWO_BODY_4LAYER = 'two-body-4layer'

SWEEP_CSV_SCHEMA = 'nudd-sweep/1'
COEFFS_CSV_SCHEMA = 'nudd-coeffs/1'

D_NORM = 'frobenius'
E_NORM = 'nuclear'

EXIT_OK = 0
EXIT_INVARIANT = 2
EXIT_CONFIG = 3

BELOW_FLOOR = 'below floor'
