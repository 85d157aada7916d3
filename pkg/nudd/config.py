"""Sweep configuration: documented defaults, a plain ``key = value`` file and
command line overrides, applied in that order."""
from nudd.exceptions import *
from nudd.constants import *
from nudd.presets import parse_moos
from nudd.schedule import NuddSpec
import hashlib
import json
from mpmath import mpf

_TRUE = ('1', 'true', 'yes', 'on')
_FALSE = ('0', 'false', 'no', 'off')


def _parse_orders(value):
    if isinstance(value, str):
        items = [item for item in value.replace(' ', '').strip('()').split(',')
                if item]
    else:
        items = list(value)
    try:
        return tuple(int(item) for item in items)
    except (TypeError, ValueError):
        raise ConfigError('orders must be comma separated integers, got %r.' %
                (value,))


def _parse_bool(value):
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in _TRUE:
        return True
    if text in _FALSE:
        return False
    raise ConfigError('Expected a boolean, got %r.' % (value,))


def _parse_optional(value):
    if value is None:
        return None
    text = str(value).strip()
    return text or None


def _parse_seed(value):
    try:
        seed = int(value)
    except (TypeError, ValueError):
        raise ConfigError('seed must be an integer, got %r.' % (value,))
    if not 0 <= seed < 2 ** 64:
        raise ConfigError('seed must fit in 64 unsigned bits.')
    return seed


def _typed(kind):
    def parse(value):
        try:
            return kind(value)
        except (TypeError, ValueError):
            raise ConfigError('Expected %s, got %r.' % (kind.__name__, value))
    return parse


_PARSERS = {
    'orders': _parse_orders,
    'moos': lambda value: str(value).strip(),
    'log10_jtau_min': _typed(float),
    'log10_jtau_max': _typed(float),
    'points': _typed(int),
    'realizations': _typed(int),
    'digits': _typed(int),
    'seed': _parse_seed,
    'fit_min': _typed(float),
    'fit_max': _typed(float),
    'j_hz': _typed(float),
    'j00_hz': _typed(float),
    'n_bath_spins': _typed(int),
    'normalize_bath': _parse_bool,
    'workers': _typed(int),
    'output_dir': lambda value: str(value).strip(),
    'cache_url': _parse_optional,
}

REQUIRED_KEYS = ('orders', 'seed')
"""Keys without a default."""

RESULT_KEYS = ('orders', 'moos', 'log10_jtau_min', 'log10_jtau_max',
        'points', 'realizations', 'digits', 'seed', 'j_hz', 'j00_hz',
        'n_bath_spins', 'normalize_bath')
"""Keys that change computed points, hashed into :meth:`SweepConfig.digest`."""


class SweepConfig(object):
    """Settings of one simulation sweep. Keyword arguments are parsed like
    file values, so ``SweepConfig(orders='2,4,1,6', seed='7')`` works.

    Raises:

    :attr:`UnknownConfigKey` for unrecognized keys, :attr:`ConfigError` for
    unparsable values.
    """
    orders = None
    """Sequence orders, innermost layer first. Required."""
    moos = SINGLE_QUBIT_4LAYER
    """Control set selector: preset name, ``pauli:...`` or ``file:PATH``."""
    log10_jtau_min = LOG10_JTAU_MIN
    """Smallest ``log10(J tau)`` of the sweep."""
    log10_jtau_max = LOG10_JTAU_MAX
    """Largest ``log10(J tau)`` of the sweep."""
    points = SWEEP_POINTS
    """Number of equally spaced ``log10(J tau)`` points."""
    realizations = REALIZATIONS
    """Random bath realizations averaged per point."""
    digits = DEFAULT_DIGITS
    """Working precision in decimal digits."""
    seed = None
    """Master seed. Required."""
    fit_min = FIT_MIN
    """Lower end of the fit window in ``log10(J tau)``."""
    fit_max = FIT_MAX
    """Upper end of the fit window in ``log10(J tau)``."""
    j_hz = J_HZ
    """System-bath coupling in Hz, also the reference scale of ``tau``."""
    j00_hz = J00_HZ
    """Pure-bath strength in Hz."""
    n_bath_spins = N_BATH_SPINS
    """Number of bath qubits."""
    normalize_bath = True
    """Rescale every bath operator to unit spectral norm."""
    workers = 1
    """Worker processes, realizations are spread over them."""
    output_dir = '.'
    """Directory for CSV, tables and the manifest."""
    cache_url = None
    """SQLAlchemy URL of a resumable point cache."""

    def __init__(self, **values):
        self.update(values)

    def update(self, values):
        """Apply ``key -> value`` pairs on top of the current settings."""
        for key, value in values.items():
            key = key.strip().lower()
            if key not in _PARSERS:
                raise UnknownConfigKey('Unknown config key %r.' % key)
            setattr(self, key, _PARSERS[key](value))
        return self

    def missing_keys(self):
        return [key for key in REQUIRED_KEYS if getattr(self, key) is None]

    def validate(self):
        """Check the settings before any compute starts.

        Raises:

        :attr:`MissingConfigKey` listing every missing key,
        :attr:`ConfigError` for inconsistent values.
        """
        missing = self.missing_keys()
        if missing:
            raise MissingConfigKey(missing)
        strings = parse_moos(self.moos)
        if len(strings) != len(self.orders):
            raise ConfigError('Control set %r has %d operators, orders have '
                    '%d layers.' % (self.moos, len(strings), len(self.orders)))
        try:
            self.spec
        except InvalidSpec as exception:
            raise ConfigError(str(exception))
        if len(strings[0]) != SYSTEM_QUBITS:
            raise ConfigError('Control set must act on %d qubits.' %
                    SYSTEM_QUBITS)
        if not self.log10_jtau_min < self.log10_jtau_max:
            raise ConfigError('log10_jtau_min must be below log10_jtau_max.')
        if self.points < 4:
            raise ConfigError('A sweep needs at least 4 points.')
        if not (self.log10_jtau_min <= self.fit_min < self.fit_max <=
                self.log10_jtau_max):
            raise ConfigError('Fit window [%s, %s] is not inside the sweep '
                    'range.' % (self.fit_min, self.fit_max))
        if self.realizations < 1:
            raise ConfigError('Need at least one realization.')
        if self.digits < MIN_DIGITS:
            raise ConfigError('Precision must be at least %d digits.' %
                    MIN_DIGITS)
        if self.j_hz < 0 or self.j00_hz < 0:
            raise ConfigError('Coupling strengths must be non negative.')
        if self.n_bath_spins < 1:
            raise ConfigError('Need at least one bath spin.')
        if self.workers < 1:
            raise ConfigError('Need at least one worker.')
        return self

    @property
    def spec(self):
        if self.orders is None:
            raise MissingConfigKey(['orders'])
        return NuddSpec(self.orders, parse_moos(self.moos))

    def reference_hz(self):
        """Scale that makes ``tau`` dimensionless, ``j_hz`` unless it is
        zero."""
        return self.j_hz or J_HZ

    def couplings(self):
        """``(J, J00)`` in units of :meth:`reference_hz`."""
        reference = mpf(self.reference_hz())
        return mpf(self.j_hz) / reference, mpf(self.j00_hz) / reference

    def grid(self):
        """``(log10_jtau, tau)`` pairs of the sweep at the ambient
        precision."""
        low = mpf(self.log10_jtau_min)
        step = (mpf(self.log10_jtau_max) - low) / (self.points - 1)
        return [(low + k * step, mpf(10) ** (low + k * step))
                for k in range(self.points)]

    def as_dict(self):
        return dict((key, getattr(self, key)) for key in sorted(_PARSERS))

    def digest(self):
        """Hash of every setting that changes computed points. The control
        set enters as its resolved Pauli strings, so editing a control file
        changes the digest."""
        echo = dict((key, getattr(self, key)) for key in RESULT_KEYS)
        echo['orders'] = list(echo['orders'] or ())
        echo['moos'] = list(parse_moos(self.moos))
        text = json.dumps(echo, sort_keys=True)
        return hashlib.sha256(text.encode('utf-8')).hexdigest()

    def __repr__(self):
        return 'SweepConfig(orders=%r, moos=%r, seed=%r)' % (self.orders,
                self.moos, self.seed)


def read_config_file(path):
    """Read ``key = value`` lines. Blank lines and ``#`` comments are
    ignored.

    Returns:

    Dict of raw string values.

    Raises:

    :attr:`ConfigError` for unreadable files or malformed lines.
    """
    values = {}
    try:
        with open(path) as stream:
            lines = stream.readlines()
    except IOError as exception:
        raise ConfigError('Cannot read config file: %s' % exception)
    for number, line in enumerate(lines, 1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        if '=' not in line:
            raise ConfigError('%s:%d: expected key = value.' % (path, number))
        key, value = line.split('=', 1)
        values[key.strip()] = value.strip()
    return values


def parse_overrides(items):
    """Turn ``key=value`` command line items into a dict."""
    values = {}
    for item in items or ():
        if '=' not in item:
            raise ConfigError('Override %r is not key=value.' % item)
        key, value = item.split('=', 1)
        values[key.strip()] = value.strip()
    return values


def load_config(path=None, overrides=None):
    """Defaults, then the file at ``path``, then ``overrides``.

    Returns:

    Unvalidated :attr:`SweepConfig`.
    """
    config = SweepConfig()
    if path:
        config.update(read_config_file(path))
    if overrides:
        config.update(overrides)
    return config
