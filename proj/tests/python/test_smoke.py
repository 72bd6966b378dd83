import math

import pytest

import mabench as mb


@pytest.fixture
def params():
    return mb.SystemParams()


def test_defaults(params):
    assert params.bandwidth_hz == 1e6
    assert params.payload_bits == 1000
    params.validate()
    params.payload_bits = 0
    with pytest.raises(ValueError, match="payload_bits"):
        params.validate()


def test_channel_and_snr():
    assert mb.channel_gain(0.5, 4.0) == pytest.approx(16.0)
    assert mb.received_snr(1.0, 1.0, 2.5, 1.0) == 2.5
    with pytest.raises(ValueError):
        mb.channel_gain(0.0, 4.0)


def test_coordinated(params):
    params.payload_bits = 1e6
    assert mb.fdma_min_bandwidth(1.5, params) == pytest.approx(5e5)
    params.payload_bits = 2e6
    assert mb.fdma_min_bandwidth(1.0, params) is None
    assert mb.tdma_min_time(1.0, mb.SystemParams()) == pytest.approx(1e-3)
    alloc = mb.coordinated_kmax(mb.Scheme.TDMA, [1e9] * 1500, mb.SystemParams(), True)
    assert alloc.admitted == 1000
    assert len(alloc.resources) == 1000
    assert mb.noma_power_allocation([1.0], mb.SystemParams())[0] == pytest.approx(2 ** 1e-3 - 1)


def test_uncoordinated(params):
    assert mb.collision_probability(1000, 1000) == pytest.approx(0.63194, abs=1e-5)
    assert mb.noma_device_cap(params) == pytest.approx(1442.195, abs=1e-3)
    design = mb.optimize_design(mb.Scheme.FDMA, params, 1000.0)
    result = mb.uncoordinated_throughput(design, params, 1000.0)
    assert 0 < result.expected_success <= design.partitions
    assert 0 <= mb.tx_probability(design, params) <= 1
    noma = mb.design_noma(params, 1e4)
    assert noma.target_snr > 0
    with pytest.raises(mb.InfeasibleError):
        mb.noma_required_snr(1500, params)
    assert mb.noma_required_snr(1.0, params, mb.TargetSnrForm.REDERIVED) == pytest.approx(2 ** 1e-3 - 1)


def test_sweeps_are_reproducible(params):
    args = (mb.Coordination.UNCOORDINATED, mb.Scheme.TDMA, params, [100.0, 1000.0])
    a = mb.run_sweep(*args, trials=200, seed=5)
    b = mb.run_sweep(*args, trials=200, seed=5, threads=3)
    assert [r.mean_throughput for r in a] == [r.mean_throughput for r in b]
    assert a[0].scheme == "uncoordinated-tdma"
    assert a[1].lambda_ == 1000.0
    analytic = mb.analytic_sweep(*args)
    assert analytic[1].scheme.endswith("/analytic")
    assert math.isclose(analytic[1].mean_throughput, a[1].mean_throughput, rel_tol=0.05)
