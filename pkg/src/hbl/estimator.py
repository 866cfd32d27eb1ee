"""scikit-learn adapter: map a batch of instances to one norm value each."""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from ._validation import DomainError
from .disc_core import BlaschkeProduct
from .norms import KINDS, I_integral, a1_seminorm, bergman_norm, besov_seminorm, bloch_norm, bmoa_upper
from .rational_fn import RationalFunction


def _coerce(item):
    if isinstance(item, (BlaschkeProduct, RationalFunction)):
        return item
    if isinstance(item, dict):
        if "zeros" in item:
            return BlaschkeProduct.from_dict(item)
        if "numerator" in item:
            return RationalFunction.from_dict(item)
    raise DomainError(f"cannot interpret {type(item).__name__} as an instance")


class NormTransformer(TransformerMixin, BaseEstimator):
    """Stateless transformer returning a column of norms.

    ``X`` is a sequence of ``BlaschkeProduct``/``RationalFunction`` objects or
    their JSON dicts.  ``fit`` only validates the hyper-parameters.
    """

    def __init__(self, space="a1", p=2.0, alpha=0.0, tol=1e-9):
        self.space = space
        self.p = p
        self.alpha = alpha
        self.tol = tol

    def fit(self, X, y=None):
        if self.space not in KINDS or self.space == "garsia":
            raise DomainError(f"unsupported space {self.space!r}")
        self.n_features_in_ = 1
        return self

    def _one(self, f):
        s, p, a, tol = self.space, self.p, self.alpha, self.tol
        if s == "bergman":
            return bergman_norm(f, p, a, tol=tol).value
        if s == "a1":
            return a1_seminorm(f, p, a, tol=tol).value
        if s == "besov":
            return besov_seminorm(f, p, tol=tol).value
        if s == "bloch":
            return bloch_norm(f).value
        if s == "bmoa":
            return bmoa_upper(f).value
        return I_integral(f, p, a, tol=tol).value

    def transform(self, X):
        if not hasattr(self, "n_features_in_"):
            self.fit(X)
        return np.array([[self._one(_coerce(item))] for item in X], dtype=float)
