"""Two-classical-bits-per-qubit simulation of Shor's algorithm for N = 15.

Implements the Quantum Simulation Logic (QSL) gate set, a deterministic
Monte Carlo sampling engine, the N=15 order-finding circuit with its
semiclassical inverse Fourier schedule, an exact state-vector reference,
and the square-statistical-overlap fidelity statistic.
"""

from .circuit import Circuit, CircuitError, GateKind, Operation, validate
from .engine import Histogram, merge, run_shot, sample
from .oracle import Distribution, ideal_distribution
from .qsl import PhasedBit
from .rng import RandomSource
from .shor import (
    BASES,
    FactorReport,
    ShorParams,
    build_subroutine,
    continued_fraction_order,
    factor_from_order,
    multiplier_circuit,
    power_schedule,
    run_subroutine,
    shor_driver,
)
from .sso import SsoResult, sso

__all__ = [
    "BASES",
    "Circuit",
    "CircuitError",
    "Distribution",
    "FactorReport",
    "GateKind",
    "Histogram",
    "Operation",
    "PhasedBit",
    "RandomSource",
    "ShorParams",
    "SsoResult",
    "build_subroutine",
    "continued_fraction_order",
    "factor_from_order",
    "ideal_distribution",
    "merge",
    "multiplier_circuit",
    "power_schedule",
    "run_shot",
    "run_subroutine",
    "sample",
    "shor_driver",
    "sso",
    "validate",
]

__version__ = "0.1.0"
