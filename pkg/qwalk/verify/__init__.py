from .residuals import eigen_residual, algebraic_checks, recurrence_residual, identity_residuals
from .membership import membership_check
from .decay import decay_classify, DecayClassifier

__all__ = [
    'eigen_residual', 'algebraic_checks', 'recurrence_residual', 'identity_residuals',
    'membership_check', 'decay_classify', 'DecayClassifier',
]
