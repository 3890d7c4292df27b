import cmath
import math

import numpy as np
import pytest

from decaykit.core import (
    ConstantPermittivity,
    DipoleConfig,
    InvalidArgumentError,
    LorentzPermittivity,
    TablePermittivity,
    lorentz_permittivity,
    refractive_index,
)


class TestLorentz:
    def test_resonance_value(self):
        # 0.2116 / (1j * 0.05) = -4.232j, so eps = 1 + 4.232j
        assert lorentz_permittivity(1.0) == pytest.approx(1 + 4.232j, abs=1e-12)

    def test_static_limit(self):
        eps = lorentz_permittivity(0.01)
        assert eps.real == pytest.approx(1.2116, rel=1e-3)
        assert 0 < eps.imag < 1e-3

    def test_high_frequency_limit(self):
        assert abs(lorentz_permittivity(1e6) - 1) < 1e-12

    def test_array_input_matches_scalar(self):
        w = np.array([0.5, 1.0, 1.5])
        out = lorentz_permittivity(w, 0.3, 0.1)
        assert out.shape == (3,)
        for wi, ei in zip(w, out):
            assert ei == lorentz_permittivity(float(wi), 0.3, 0.1)

    @pytest.mark.parametrize("kwargs", [
        dict(omega=float("nan")), dict(omega=1.0, gamma=float("inf")),
        dict(omega=1.0, coupling_sq=float("nan")), dict(omega=0.0), dict(omega=-1.0),
        dict(omega=1.0, gamma=-0.1), dict(omega=1.0, coupling_sq=0.0),
    ])
    def test_rejects_bad_input(self, kwargs):
        with pytest.raises(InvalidArgumentError):
            lorentz_permittivity(**kwargs)

    def test_model_object(self):
        m = LorentzPermittivity(gamma=0.2)
        assert m(1.0) == pytest.approx(1 + 0.2116 / 0.2 * 1j)
        assert m.describe()["kind"] == "lorentz"
        with pytest.raises(InvalidArgumentError):
            LorentzPermittivity(gamma=-1)


class TestRefractiveIndex:
    def test_trivial_values(self):
        assert refractive_index(1).n == 1
        assert refractive_index(2.25).n == 1.5

    def test_resonance_kappa(self):
        idx = refractive_index(1 + 4.232j)
        expected = cmath.sqrt(1 + 4.232j)
        assert idx.n == pytest.approx(expected, rel=1e-14)
        assert idx.eta == pytest.approx(1.6353, abs=1e-4)
        assert round(idx.kappa, 2) == 1.29

    def test_negative_real_eps(self):
        idx = refractive_index(-4.0)
        assert idx.n == 2j

    def test_negative_zero_imaginary_part(self):
        # -0.0 must not select the lower branch
        assert refractive_index(complex(-4.0, -0.0)).n == 2j

    def test_rejects_nonfinite(self):
        with pytest.raises(InvalidArgumentError):
            refractive_index(complex("nan"))


class TestDipole:
    def test_default_is_normal(self):
        d = DipoleConfig()
        assert d.normal == 1 and d.in_plane == 0

    def test_from_vector(self):
        d = DipoleConfig.from_vector([1, 1, 0])
        assert d.weights == pytest.approx((0.5, 0.5, 0.0))
        assert sum(d.weights) == pytest.approx(1, abs=1e-15)

    def test_wavelength(self):
        assert DipoleConfig(omega_a=2.0).wavelength == pytest.approx(math.pi)

    @pytest.mark.parametrize("w", [(0.5, 0.5, 0.5), (-0.1, 0.1, 1.0), (0.0, 1.0), (float("nan"), 0, 1)])
    def test_rejects_bad_weights(self, w):
        with pytest.raises(InvalidArgumentError):
            DipoleConfig(1.0, w)

    def test_rejects_zero_vector(self):
        with pytest.raises(InvalidArgumentError):
            DipoleConfig.from_vector([0, 0, 0])


class TestConstantAndTable:
    def test_constant(self):
        m = ConstantPermittivity(2 + 1j)
        assert m(3.0) == 2 + 1j
        assert np.all(m(np.ones(4)) == 2 + 1j)
        with pytest.raises(InvalidArgumentError):
            ConstantPermittivity(2 - 1j)

    def test_table_interpolation(self, tmp_path):
        path = tmp_path / "eps.txt"
        path.write_text("# omega re im\n0.5 2.0 0.0\n1.0 3.0 1.0  # peak\n\n1.5 2.0 0.5\n")
        t = TablePermittivity.from_file(path)
        assert t.omega_range == (0.5, 1.5)
        assert t(0.75) == pytest.approx(2.5 + 0.5j)
        assert t(1.25) == pytest.approx(2.5 + 0.75j)
        assert t(1.0) == 3 + 1j

    def test_table_refuses_extrapolation(self):
        t = TablePermittivity([0.5, 1.0], [2.0, 3.0])
        with pytest.raises(InvalidArgumentError):
            t(1.01)
        with pytest.raises(InvalidArgumentError):
            t(0.4)

    @pytest.mark.parametrize("text", ["1 2\n", "1 2 x\n", "# only comment\n"])
    def test_table_parse_errors(self, tmp_path, text):
        path = tmp_path / "bad.txt"
        path.write_text(text)
        with pytest.raises(InvalidArgumentError):
            TablePermittivity.from_file(path)

    @pytest.mark.parametrize("omega, eps", [
        ([1.0, 0.5], [1, 1]), ([0.5, 1.0], [1, 1 - 1j]), ([1.0], [1.0]),
    ])
    def test_table_validation(self, omega, eps):
        with pytest.raises(InvalidArgumentError):
            TablePermittivity(omega, eps)
