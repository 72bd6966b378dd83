"""Uplink multiple-access throughput models for M2M traffic."""

from ._core import (  # noqa: F401
    Coordination,
    CoordinatedAllocation,
    InfeasibleError,
    Scheme,
    SweepRow,
    SystemParams,
    TargetSnrForm,
    UncoordinatedAnalysis,
    UncoordinatedDesign,
    analytic_sweep,
    channel_gain,
    collision_probability,
    coordinated_kmax,
    design_noma,
    fdma_min_bandwidth,
    noma_device_cap,
    noma_feasibility_probability,
    noma_power_allocation,
    noma_required_snr,
    optimize_design,
    received_snr,
    run_sweep,
    tdma_min_time,
    tx_probability,
    uncoordinated_throughput,
)

__version__ = "0.1.0"
