"""Scikit-learn style wrapper around the completion pipeline.

The completer behaves like an imputer for finite-field tables: ``fit``
learns the sparse generator behind the known cells, ``transform`` fills the
unknown ones.  Parameters follow the usual get_params/set_params contract,
so the estimator clones and composes like any other transformer.
"""

from __future__ import annotations

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .inference import STATUS_COMPLETED, resolve
from .tables import complete_table
from .validation import as_incomplete_table, resolve_point


class CompletionError(ValueError):
    """fit() finished without a verified completion."""


class HyperbolicTableCompleter(BaseEstimator, TransformerMixin):
    """Fill unknown cells of a table afforded by a sparse bivariate generator.

    Parameters
    ----------
    order : {"auto", "lex", "graded"}
        Monomial ordering driving the iteration; "auto" picks from the data.
    t : int or None
        Sparsity bound (window amplitude 2t+1); None detects the largest fit.
    tau : pair of int or None
        Force a window offset instead of detecting one.
    branch_budget : int or None
        Cap on branch leaves while estimating missing window values;
        defaults to the squared field order.
    alpha_exps : pair of int or None
        Generator exponents of the evaluation roots; None uses the table
        header or the canonical roots.

    Attributes
    ----------
    report_ : CompletionReport
        Full outcome of the pipeline run by fit().
    status_ : str
        One of the report statuses ("completed", "not_syndrome", ...).
    generator_ : BivariatePolynomial or None
        Recovered offset-absorbed generator when status_ == "completed".
    support_, footprint_, tau_, t_, order_ : recovered run parameters.
    """

    def __init__(self, order="auto", t=None, tau=None, branch_budget=None,
                 alpha_exps=None):
        self.order = order
        self.t = t
        self.tau = tau
        self.branch_budget = branch_budget
        self.alpha_exps = alpha_exps

    def fit(self, X, y=None):
        table = as_incomplete_table(X)
        point = resolve_point(table, alpha_exps=self.alpha_exps)
        report = resolve(table, point=point, order=self.order, t=self.t,
                         tau=self.tau, branch_budget=self.branch_budget)
        self.report_ = report
        self.status_ = report.status
        self.generator_ = report.generator
        self.support_ = [tuple(m) for m in report.support]
        self.footprint_ = [tuple(p) for p in report.footprint]
        self.tau_ = tuple(report.tau) if report.tau is not None else None
        self.t_ = report.t
        self.order_ = report.order
        self.point_ = point
        return self

    def transform(self, X):
        if not hasattr(self, "report_"):
            raise NotFittedError("this completer is not fitted yet; call fit first")
        if self.status_ != STATUS_COMPLETED:
            raise CompletionError(f"completion did not succeed (status "
                                  f"{self.status_!r}); cannot transform")
        table = as_incomplete_table(X)
        if table.shape != self.report_.completed.shape:
            raise ValueError(f"table shape {table.shape} differs from the "
                             f"fitted shape {self.report_.completed.shape}")
        return complete_table(table, self.generator_, self.tau_, self.point_)
