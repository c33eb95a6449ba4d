"""Performance analysis for an RF energy-harvesting dual-HAPS relay link.

Closed-form outage probability, an ergodic-capacity upper bound, throughput
and harvested-power budgets, each cross-validated against an independent
quadrature oracle and a seeded Monte-Carlo engine.
"""

__version__ = "0.1.0"

from ._kernels import BACKEND as KERNEL_BACKEND
from .analytic import (
    PerfPoint,
    PerfQuery,
    effective_snr_db,
    ergodic_capacity_upper,
    gamma_threshold,
    mean_gamma0,
    outage_probability,
    perf_point,
    throughput,
)
from .channel import (
    NakagamiPowerParams,
    ShadowedRicianParams,
    SrDerived,
    nakagami_power_pdf,
    sample_nakagami_power,
    sample_shadowed_rician_power,
    shadowed_rician_pdf,
    sr_derived,
)
from .errors import ConvergenceError, NumericalInstabilityError, ParameterError
from .linkbudget import (
    AntennaGains,
    EhTimeSwitchConfig,
    Geometry,
    LossBreakdown,
    NoiseParams,
    PowerBudget,
    RainParams,
    avg_snr_db,
    free_space_loss_ground,
    free_space_loss_interhaps,
    harvested_power,
    noise_psd_db,
    rain_attenuation,
    required_power,
    slant_distance,
    total_path_loss,
)
from .montecarlo import McConfig, McEstimate, mc_ergodic_capacity, mc_outage, mc_throughput
from .oracle import (
    QuadratureConfig,
    cdf_z_quadrature,
    ec_quadrature,
    mean_z_quadrature,
    sr_cdf_quadrature,
)
from .presets import Scenario, get_preset, preset_names
from .budget import BudgetReport, run_budget
from .streams import SubStream
from .sweep import SweepResult, run_eta_sweep, run_sweep
from .validate import run_validate
