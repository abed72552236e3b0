"""Driver for the verification registry.

``run_case`` and ``run_all`` execute the catalog entries in
:mod:`projstruct.cases` and return :class:`~projstruct.reports.CaseReport`
objects; rendering lives in :mod:`projstruct.reports`.  The standalone
verification ops are re-exported here so one import serves both uses.
"""

from .cases import (CASES, CaseRecord, affine_family_checks, alpha_ode_solve,
                    cubic_curve_residual, exotic_sl2_check,
                    flat_criteria_checks, ib_flattening_germ)
from .errors import InadmissibleParameters, UnknownCase
from .jets import DEFAULT_ORDER
from .reports import CaseReport, render_json, render_text

__all__ = [
    "CASES",
    "CaseRecord",
    "affine_family_checks",
    "alpha_ode_solve",
    "cubic_curve_residual",
    "exotic_sl2_check",
    "flat_criteria_checks",
    "ib_flattening_germ",
    "list_cases",
    "run_case",
    "run_all",
    "render_json",
    "render_text",
]


def list_cases():
    """(id, title, parameter names) for every case, sorted by id."""
    return [(cid, CASES[cid].title, tuple(sorted(CASES[cid].samples[0])))
            for cid in sorted(CASES)]


def run_case(case_id, params=None, order=DEFAULT_ORDER):
    """Reports for one case.

    Without ``params`` every sanctioned sample runs; with ``params``
    the given values (strings, rationals or expression text) are merged
    over the default sample and that single environment runs.
    Inadmissible parameter values raise
    :class:`~projstruct.errors.InadmissibleParameters`.
    """
    record = CASES.get(case_id)
    if record is None:
        raise UnknownCase("unknown case id %r; known ids: %s"
                          % (case_id, ", ".join(sorted(CASES))))
    if params is None:
        envs = [dict(sample) for sample in record.samples]
    else:
        env = dict(record.samples[0])
        unknown = sorted(set(params) - set(env))
        if unknown:
            raise InadmissibleParameters(
                "%s does not take parameter(s) %s; it takes %s"
                % (case_id, ", ".join(unknown),
                   ", ".join(sorted(env)) or "none"))
        env.update({key: str(value) for key, value in params.items()})
        envs = [env]
    reports = []
    for env in envs:
        record.check_admissible(env, order)
        checks = record.runner(env, order)
        reports.append(CaseReport(case_id, record.title, dict(env), order,
                                  tuple(checks)))
    return reports


def run_all(order=DEFAULT_ORDER):
    """Reports for every case at every sanctioned sample, ordered by id."""
    reports = []
    for case_id in sorted(CASES):
        reports.extend(run_case(case_id, None, order))
    return reports
