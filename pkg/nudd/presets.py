"""Named two-qubit control sets for four-layer sequences and the pure-type
generators used to build their error tables.

Pauli strings name the first (slowest) qubit first, so ``IZ`` is
``I (x) sigma_z``.
"""
from nudd.exceptions import *
from nudd.constants import *
from nudd.errortypes import ErrorVector, pauli_string, validate_moos

MOOS_PRESETS = {
    SINGLE_QUBIT_4LAYER: ('IZ', 'IX', 'ZI', 'XI'),
    TWO_BODY_4LAYER: ('ZZ', 'IX', 'ZI', 'XI'),
}
"""Control Pauli strings per preset, layer 1 first."""

GENERATOR_PRESETS = {
    SINGLE_QUBIT_4LAYER: ('IX', 'IZ', 'XI', 'ZI'),
    TWO_BODY_4LAYER: ('IX', 'IZ', 'XX', 'ZI'),
}
"""Generator Pauli strings per preset, one per unit error vector."""


def parse_moos(selector):
    """Resolve a control set selector to Pauli strings.

    Accepts a preset name, ``pauli:IZ,IX,ZI,XI`` or ``file:PATH`` where the
    file holds one Pauli string per line.

    Raises:

    :attr:`ConfigError` for unknown presets or unreadable files.
    """
    selector = selector.strip()
    if selector in MOOS_PRESETS:
        return MOOS_PRESETS[selector]
    if selector.startswith('pauli:'):
        strings = [s.strip().upper() for s in selector[6:].split(',') if s.strip()]
    elif selector.startswith('file:'):
        try:
            with open(selector[5:]) as stream:
                strings = [line.strip().upper() for line in stream
                        if line.strip() and not line.startswith('#')]
        except IOError as exception:
            raise ConfigError('Cannot read control set file: %s' % exception)
    else:
        raise ConfigError('Unknown control set %r; presets are %s.' %
                (selector, ', '.join(sorted(MOOS_PRESETS))))

    if not strings:
        raise ConfigError('Control set %r is empty.' % selector)
    widths = set(len(s) for s in strings)
    if len(widths) != 1 or any(c not in PAULI_LABELS for s in strings for c in s):
        raise ConfigError('Control set %r must hold Pauli strings of equal '
                'length.' % selector)
    return tuple(strings)


def build_moos(selector):
    """Validated :attr:`Moos` on the system space for ``selector``."""
    strings = parse_moos(selector)
    return validate_moos([pauli_string(s) for s in strings], labels=strings)


def build_generators(selector):
    """Generators keyed by unit error vector for a named preset."""
    if selector not in GENERATOR_PRESETS:
        raise ConfigError('No generator preset for %r.' % selector)
    strings = GENERATOR_PRESETS[selector]
    ell = len(strings)
    return dict((ErrorVector.unit(ell, layer), pauli_string(s))
            for layer, s in enumerate(strings, 1))
