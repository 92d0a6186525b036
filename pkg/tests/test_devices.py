"""设备库测试"""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.devices import (
    CustomTF, Droop, SGHydro, SGNonReheat, SGReheat, SecondOrderDroop, VOC, VSM,
    FilteredQDroop, build_device, device_defaults, list_devices, pf_transfer, prime_mover,
    qv_fleet, qv_transfer,
)
from src.exceptions import DeviceParamsError
from src.tf_core import RationalTF, dc_gain, eval_response, is_stable, poles, zeros


def test_droop_and_voc_identical():
    assert Droop(d_p=0.05).transfer() == VOC(d_p=0.05).transfer()
    assert eval_response(Droop(d_p=0.05).transfer(), 3.0) == pytest.approx(0.05)


def test_vsm_pole():
    tf = VSM(M=10.0, D_d=30.0).transfer()
    assert_allclose(poles(tf), [-3.0])
    assert dc_gain(tf) == pytest.approx(1 / 30)


def test_second_order_droop():
    tf = SecondOrderDroop(d_p=0.03, omega_n=100.0, zeta=0.7).transfer()
    assert dc_gain(tf) == pytest.approx(0.03)
    p = poles(tf)
    assert_allclose(np.abs(p), [100.0, 100.0])
    assert_allclose(-p.real / np.abs(p), [0.7, 0.7])


@pytest.mark.parametrize("label", ["DUT 5", "DUT 6", "DUT 7"])
def test_synchronous_dc_gain(fleet, label):
    device = fleet[label]
    # G(0) = 1 ⇒ D(0) = 1/(K_D + 1/R)
    assert dc_gain(device.transfer()) == pytest.approx(1 / (device.K_D + 1 / device.R))
    assert dc_gain(prime_mover(device)) == pytest.approx(1.0)


def test_reference_sgs_stable(fleet):
    for label in ("DUT 5", "DUT 6", "DUT 7"):
        assert is_stable(fleet[label].transfer()).stable


def test_hydro_water_hammer_zero():
    hydro = SGHydro(H=5.0, K_D=3.0, R=0.02, T_g=0.2, T_w=2.0, R_t=0.38, T_r=5.0)
    z = zeros(prime_mover(hydro))
    rhp = z[z.real > 0]
    assert len(rhp) == 1
    assert rhp[0].real == pytest.approx(0.5)


def test_reheat_fraction_bounds():
    with pytest.raises(DeviceParamsError):
        SGReheat(H=5.0, K_D=3.0, R=0.02, T_g=0.2, T_ch=0.3, T_rh=7.0, F_hp=1.5)


@pytest.mark.parametrize("cls, params", [
    (Droop, {'d_p': 0.0}),
    (VSM, {'M': -1.0, 'D_d': 30.0}),
    (SecondOrderDroop, {'d_p': 0.03, 'omega_n': 100.0, 'zeta': 0.0}),
    (SGNonReheat, {'H': 5.0, 'K_D': -1.0, 'R': 0.02, 'T_g': 0.2, 'T_ch': 0.3}),
    (FilteredQDroop, {'d_q': 0.05, 'T_v': 0.0}),
])
def test_invalid_parameters(cls, params):
    with pytest.raises(DeviceParamsError):
        cls(**params)


def test_registry():
    assert set(list_devices()) >= {'droop', 'voc', 'vsm', 'sodroop', 'sg_nonreheat',
                                   'sg_reheat', 'sg_hydro', 'qdroop_static', 'qdroop_filtered'}
    device = build_device('vsm', {'M': 8, 'D_d': 25})
    assert isinstance(device, VSM)
    assert device.M == 8.0
    with pytest.raises(DeviceParamsError):
        build_device('pll', {})
    with pytest.raises(DeviceParamsError):
        build_device('vsm', {'M': 8.0})
    with pytest.raises(DeviceParamsError):
        build_device('vsm', {'M': 8.0, 'D_d': 25.0, 'H': 1.0})
    with pytest.raises(DeviceParamsError):
        build_device('vsm', {'M': "8", 'D_d': 25.0})


def test_filtered_q_droop_voltage_time_constant():
    device = build_device('qdroop_filtered', {'d_q': 0.1, 'T_v': 0.05})
    assert device.transfer() == RationalTF([0.1], [1.0, 0.05])
    with pytest.raises(DeviceParamsError):
        build_device('qdroop_filtered', {'d_q': 0.1, 'T_f': 0.05})


def test_device_defaults():
    assert device_defaults('vsm') == {'M': 10.0, 'D_d': 30.0}
    assert device_defaults('qdroop_filtered') == {'d_q': 0.05, 'T_v': 1.0}


def test_reference_fleet_labels(fleet):
    assert set(fleet) == {"ideal VSC"} | {f"DUT {k}" for k in range(1, 8)}
    assert fleet["DUT 3"].transfer() == fleet["ideal VSC"].transfer()


def test_channel_dispatch(fleet):
    q = qv_fleet()["Q-droop static"]
    assert qv_transfer(q) == q.transfer()
    with pytest.raises(DeviceParamsError):
        pf_transfer(q)
    with pytest.raises(DeviceParamsError):
        qv_transfer(fleet["DUT 3"])
    with pytest.raises(DeviceParamsError):
        prime_mover(fleet["DUT 3"])


def test_custom_tf():
    device = CustomTF([1.0], [30.0, 10.0])
    assert device.transfer() == VSM(M=10.0, D_d=30.0).transfer()
    assert device.params == {'num': [1.0], 'den': [30.0, 10.0]}
    with pytest.raises(DeviceParamsError):
        CustomTF([1.0], [0.0])
    with pytest.raises(DeviceParamsError):
        CustomTF([1.0], [1.0, 1.0], channel="dq")
