from nudd.exceptions import *
from nudd.constants import *
from nudd.errortypes import ErrorVector, all_vectors
from nudd.fourier import G1, angle_pieces, fourier_profile, harmonic_class
from nudd.schedule import NuddSpec
import mpmath
import pytest

SPECS = [(2, 3), (3, 3), (3, 2), (2, 2, 3)]


def selectors(spec):
    return list(range(1, spec.ell + 1)) + [G1] + all_vectors(spec.ell)


@pytest.mark.parametrize('orders', SPECS)
def test_harmonic_classes_hold(orders):
    spec = NuddSpec(orders)
    for selector in selectors(spec):
        report = fourier_profile(spec, selector)
        assert report.passed, (selector, report.forbidden_weight)


def test_outer_layer_is_square_wave():
    spec = NuddSpec((2, 3))
    report = fourier_profile(spec, 2)
    assert report.populated
    assert all(kind == 'sin' and m % 4 == 0 and (m // 4) % 2 == 1
            for kind, m in report.populated)


def test_stretch_factor_fundamental():
    spec = NuddSpec((2, 3))
    report = fourier_profile(spec, G1)
    assert ('sin', 1) in report.populated
    assert ('sin', 7) in report.populated
    assert ('sin', 9) in report.populated


def test_pieces_cover_half_turn():
    spec = NuddSpec((2, 2, 3))
    for selector in (1, 3, G1, ErrorVector('101')):
        pieces, _ = angle_pieces(spec, selector)
        assert pieces[0][0] == 0
        assert abs(pieces[-1][1] - mpmath.pi) < 1e-40
        for before, after in zip(pieces, pieces[1:]):
            assert abs(before[1] - after[0]) < 1e-40


def test_class_names():
    spec = NuddSpec((2, 3))
    assert harmonic_class(spec, (0, 0)).allows('cos', 0)
    assert harmonic_class(spec, (0, 1)).allows('sin', 12)
    assert not harmonic_class(spec, (0, 1)).allows('sin', 8)
    assert harmonic_class(NuddSpec((3, 3)), (1, 0)).allows('sin', 8)


def test_bad_selectors():
    spec = NuddSpec((2, 3))
    with pytest.raises(InvalidIndex):
        harmonic_class(spec, 3)
    with pytest.raises(LengthMismatch):
        harmonic_class(spec, (1, 0, 1))
