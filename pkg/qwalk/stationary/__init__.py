from .spectral import (
    eigen_lambdas, gamma_of, match_eigenvalue, solve, build_stationary_full, closed_form_measure,
    u_theta_state, hadamard_real_measure, FullSupportStateGenerator, QuadraticMeasureGenerator,
)
from .azero import AZeroSpec, azero_lambda, build_stationary_azero, azero_measure
from .bzero import (
    DiagonalWalkState, diag_evolve_measure, uniformity_certificate, counterexample_unbounded,
    counterexample_bounded, diagonal_coin, lift_to_generator, COUNTEREXAMPLES,
)

__all__ = [
    'eigen_lambdas', 'gamma_of', 'match_eigenvalue', 'solve', 'build_stationary_full',
    'closed_form_measure', 'u_theta_state', 'hadamard_real_measure',
    'FullSupportStateGenerator', 'QuadraticMeasureGenerator',
    'AZeroSpec', 'azero_lambda', 'build_stationary_azero', 'azero_measure',
    'DiagonalWalkState', 'diag_evolve_measure', 'uniformity_certificate', 'counterexample_unbounded',
    'counterexample_bounded', 'diagonal_coin', 'lift_to_generator', 'COUNTEREXAMPLES',
]
