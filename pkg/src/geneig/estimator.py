"""Estimator-style front end so the decomposition composes with pipelines
that expect the fit/get_params protocol.

The class is duck-typed against scikit-learn's conventions (constructor
params stored verbatim, ``fit`` returns self, learned attributes carry a
trailing underscore, ``get_params``/``set_params`` round-trip) without
importing sklearn: the input here is one square exact-rational matrix, not
a float sample array, so none of sklearn's numeric validation applies.
"""

from __future__ import annotations

import inspect

from .matrix import as_matrix, check_square
from .pipeline import PipelineOptions, factor_eigenspace_json, report_to_json, run_full
from .poly import PolyQ, parse_poly


class GeneralizedEigenspaceDecomposition:
    """Compute all generalized eigenspaces of a square rational matrix.

    Parameters
    ----------
    use_reduction : bool, default=True
        Apply the generating-set reduction heuristic during elimination.
    verify : bool, default=False
        Symbolically verify every emitted chain; ``verified_`` records the
        outcome.
    factor : PolyQ, str or None, default=None
        Restrict to one irreducible factor, given as a polynomial or as
        comma-separated ascending coefficients (e.g. ``"5,1,1"``).
    jobs : int, default=1
        Number of factors processed concurrently.

    Attributes
    ----------
    n_features_in_ : int
        Order of the fitted matrix.
    factorization_ : Factorization
        Characteristic polynomial, factored.
    report_ : EigenstructureReport
        Full structured result.
    chains_ : dict[PolyQ, list[JordanChain]]
        Jordan chains per irreducible factor.
    verified_ : bool or None
        Result of chain verification when ``verify=True``.

    Examples
    --------
    >>> est = GeneralizedEigenspaceDecomposition(verify=True)
    >>> est.fit([[1, 1], [0, 1]])
    GeneralizedEigenspaceDecomposition(verify=True)
    >>> [(str(f), m) for f, m in est.factorization_]
    [('x - 1', 2)]
    """

    def __init__(self, use_reduction: bool = True, verify: bool = False,
                 factor=None, jobs: int = 1):
        self.use_reduction = use_reduction
        self.verify = verify
        self.factor = factor
        self.jobs = jobs

    # -- sklearn-compatible parameter protocol -------------------------

    @classmethod
    def _param_names(cls):
        sig = inspect.signature(cls.__init__)
        return [name for name in sig.parameters if name != "self"]

    def get_params(self, deep: bool = True) -> dict:
        return {name: getattr(self, name) for name in self._param_names()}

    def set_params(self, **params):
        valid = set(self._param_names())
        for name, value in params.items():
            if name not in valid:
                raise ValueError(
                    f"invalid parameter {name!r} for {type(self).__name__}; "
                    f"valid parameters are {sorted(valid)}"
                )
            setattr(self, name, value)
        return self

    def __repr__(self):
        defaults = {
            name: param.default
            for name, param in inspect.signature(type(self).__init__).parameters.items()
            if name != "self"
        }
        args = ", ".join(
            f"{name}={getattr(self, name)!r}"
            for name in self._param_names()
            if getattr(self, name) != defaults[name]
        )
        return f"{type(self).__name__}({args})"

    # -- fitting --------------------------------------------------------

    def _factor_poly(self) -> PolyQ | None:
        if self.factor is None:
            return None
        if isinstance(self.factor, PolyQ):
            return self.factor
        if isinstance(self.factor, str):
            return parse_poly(self.factor)
        return PolyQ(self.factor)

    def fit(self, X, y=None):
        """Compute the eigenstructure of the square exact matrix X.

        X may be a nested sequence or object ndarray whose entries are
        ints, Fractions, or "p/q" strings; floats are rejected.
        """
        a = as_matrix(X)
        check_square(a)
        options = PipelineOptions(
            use_reduction=self.use_reduction,
            verify=self.verify,
            jobs=self.jobs,
            factor=self._factor_poly(),
        )
        report = run_full(a, options)
        self.n_features_in_ = report.n
        self.report_ = report
        self.factorization_ = report.char_factorization
        self.char_polynomial_ = report.char_factorization.expand()
        self.minimal_polynomial_ = report.table.min_poly
        self.chains_ = {fr.factor: fr.chains for fr in report.factor_reports}
        self.verified_ = report.verified
        return self

    def fit_report(self, X) -> dict:
        """Fit and return the JSON-ready report dictionary."""
        self.fit(X)
        return report_to_json(self.report_)

    def eigenspace_json(self, f: PolyQ) -> dict:
        """Wire-format eigenspace for one fitted factor."""
        self._check_fitted()
        return factor_eigenspace_json(self.report_.factor_report(f))

    def _check_fitted(self):
        if not hasattr(self, "report_"):
            raise RuntimeError("this estimator is not fitted yet; call fit first")
