import numpy as np
import pytest

from eulerwedge.errors import MissingData
from eulerwedge.modular import AntiunitaryOp, RealSubspace, symplectic_complement
from eulerwedge.nets import NetConfig, NetData, NetEntry, bgl_net, net_property_report
from eulerwedge.verify import _random_unitary, random_bgl_data


def trivial_net(n=2):
    real = RealSubspace.real_part(n)
    rep = {"e": np.eye(n), "tau": AntiunitaryOp(np.eye(n))}
    return NetData([NetEntry("W0", real)], rep=rep, covariance=[("e", 0, 0)], order=[(0, 0)],
                   euler_generator=np.zeros((n, n)), cone_generators=[np.zeros((n, n))])


def test_trivial_net_passes_everything():
    report = net_property_report(trivial_net(), NetConfig(reg_sample=("e",)))
    for name, res in report.items():
        assert res["pass"] is not False, name


def test_bgl_net_has_covariance_and_bw(rng):
    x, j = random_bgl_data(rng, 3)
    net = bgl_net(x, j, {"g": _random_unitary(rng, 3), "k": _random_unitary(rng, 3)})
    report = net_property_report(net, NetConfig(checks=("Cov", "BW", "MRef")))
    assert all(r["pass"] for r in report.values())


def test_ctl_violation_is_reported():
    real = RealSubspace.real_part(2)
    bad = RealSubspace(2, [[1j, 0], [0, 1]])
    net = NetData([NetEntry("W0", real), NetEntry("W0'", bad)], rep={"Z": np.eye(2)},
                  twists=[{"Z": "Z", "entry": "W0'", "alpha": "Z"}])
    assert net_property_report(net, NetConfig(checks=("CTL",)))["CTL"]["pass"] is False
    good = NetData([NetEntry("W0", real), NetEntry("W0'", symplectic_complement(real))], rep={"Z": np.eye(2)},
                   twists=[{"Z": "Z", "entry": "W0'", "alpha": "Z"}])
    assert net_property_report(good, NetConfig(checks=("CTL", "CTHD", "SS")))["CTHD"]["pass"]


def test_missing_data_is_an_error():
    net = NetData([NetEntry("W0", RealSubspace.real_part(2))])
    with pytest.raises(MissingData):
        net_property_report(net, NetConfig(checks=("BW",)))
    net = NetData([NetEntry("W0", RealSubspace.real_part(2))], covariance=[("g", 0, 0)])
    with pytest.raises(MissingData):
        net_property_report(net, NetConfig(checks=("Cov",)))
