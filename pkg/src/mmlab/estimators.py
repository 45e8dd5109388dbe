"""scikit-learn style wrappers.

``fit`` takes the generators of an ideal; ``transform`` / ``predict`` take
polynomials (or strings, parsed in the fitted ring).
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .certificates import Restriction, min_certificate_degree
from .groebner import buchberger
from .ideal import Ideal, radical_member
from .ring import order_from_name
from .validation import check_polynomials


class GroebnerReducer(TransformerMixin, BaseEstimator):
    """Reduce polynomials modulo an ideal.

    Parameters
    ----------
    order : {"grevlex", "lex"}
    strategy : {"normal", "fifo", "lifo"}
        S-pair selection; the reduced basis does not depend on it.
    ring : RingSpec or str, optional
        Needed only when polynomials are passed as strings.

    Attributes
    ----------
    basis_ : GroebnerBasis
    ideal_ : Ideal
    ring_ : RingSpec
    n_generators_ : int
    """

    def __init__(self, order="grevlex", strategy="normal", ring=None):
        self.order = order
        self.strategy = strategy
        self.ring = ring

    def fit(self, X, y=None):
        gens, ring = check_polynomials(X, self.ring)
        self.ring_ = ring
        self.ideal_ = Ideal(ring, gens)
        self.basis_ = buchberger(gens, order_from_name(self.order), strategy=self.strategy, ring=ring)
        self.n_generators_ = len(gens)
        return self

    def _inputs(self, X):
        check_is_fitted(self, "basis_")
        polys, _ = check_polynomials(X, self.ring_, allow_empty=True)
        return polys

    def transform(self, X):
        """Normal forms, one per input polynomial."""
        return [self.basis_.normal_form(p) for p in self._inputs(X)]

    def predict(self, X):
        """Ideal membership as a boolean array."""
        return np.array([nf.is_zero for nf in self.transform(X)], dtype=bool)

    def predict_radical(self, X):
        return np.array([radical_member(self.ideal_, p) for p in self._inputs(X)], dtype=bool)


class CertificateDegree(BaseEstimator):
    """Least coefficient degree of a membership certificate, per target.

    ``predict`` returns ``-1`` for targets with no certificate up to
    ``max_degree``; the certificates themselves land in ``certificates_``.
    """

    def __init__(self, max_degree=10, restriction=None, method="gauss", ring=None):
        self.max_degree = max_degree
        self.restriction = restriction
        self.method = method
        self.ring = ring

    def fit(self, X, y=None):
        if self.max_degree < 0:
            raise ValueError("max_degree must be non-negative")
        self.generators_, self.ring_ = check_polynomials(X, self.ring)
        return self

    def predict(self, X):
        check_is_fitted(self, "generators_")
        targets, _ = check_polynomials(X, self.ring_, allow_empty=True)
        restriction = self.restriction or Restriction.full_ring()
        out, certs = [], []
        for t in targets:
            res = min_certificate_degree(t, self.generators_, self.max_degree, restriction, method=self.method)
            out.append(res.degree if res.found else -1)
            certs.append(res.certificate)
        self.certificates_ = certs
        return np.array(out, dtype=int)
