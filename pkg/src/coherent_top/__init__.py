"""Verification lab for the spinning-top picture of 2D harmonic-oscillator
coherent states: closed forms, spin-augmented currents, a split-step spectral
oracle, tracer transport, quadrature moments, and the hydrogen 1s analogue.
"""

__version__ = "0.1.0"

from .analytic import (
    ClassicalState,
    PolarForm,
    classical_trajectory,
    coherent_state,
    energy_field,
    phase_integral,
    polar_form,
    sample_coherent_state,
)
from .core import (
    Check,
    CoherentStateSpec,
    ComplexField,
    Grid2D,
    PhysParams,
    ScalarField,
    VectorField,
    VerificationReport,
    default_half_extent,
    make_grid,
    sigma,
)
from .currents import (
    CurrentDecomposition,
    RigidBodyFit,
    convection_current,
    picture_velocity,
    rigid_body_fit,
    sample_velocity_field,
    spin_current,
    total_current,
    velocity_field,
)
from .evolve import (
    EvolveConfig,
    continuity_residual,
    energy_expectation,
    run_state_comparison,
    split_step_evolve,
    state_distance,
)
from .flow import (
    ComovingDiagnostics,
    TracerPath,
    comoving_diagnostics,
    comoving_reference,
    integrate_tracer,
    transport_points,
)
from .hydrogen import (
    HydrogenParams,
    hydrogen_density,
    hydrogen_energy_picture,
    hydrogen_report,
    hydrogen_uncertainties,
    hydrogen_velocity,
)
from .stats import (
    MomentReport,
    energy_expectation_picture,
    moment_report,
    momentum_spread_operator,
    momentum_spread_picture,
    position_spread,
)
