"""Horospherical nets from circle patterns."""
import json

from . import _horonet
from ._horonet import HoronetError, cross_ratio, minimal_points, schwarzian_limit, version  # noqa: F401

__all__ = [
    "HoronetError", "version", "cross_ratio", "schwarzian_limit", "lattice_pattern", "check_pattern",
    "cmc1_report", "equidistant_report", "net_obj", "sample", "toda", "converge", "minimal_points",
]


def _text(p):
    return p if isinstance(p, str) else json.dumps(p)


def lattice_pattern(eps, xmin=0.0, xmax=1.0, ymin=0.0, ymax=1.0):
    return json.loads(_horonet.lattice_pattern(eps, xmin, xmax, ymin, ymax))


def check_pattern(pattern, tol=1e-10):
    return json.loads(_horonet.check_pattern(_text(pattern), tol))


def cmc1_report(a, b):
    return json.loads(_horonet.cmc1_report(_text(a), _text(b)))


def equidistant_report(a, b):
    return json.loads(_horonet.equidistant_report(_text(a), _text(b)))


def net_obj(a, b, arcs=16):
    return _horonet.net_obj(_text(a), _text(b), arcs)


def sample(case, eps, pipeline="solved", **angles):
    return json.loads(_horonet.sample(case, eps, pipeline, **angles))


def toda(n, m, t, mode="cmc1"):
    return json.loads(_horonet.toda(n, m, t, mode))


def converge(case, eps, pipeline="solved", **angles):
    return json.loads(_horonet.converge(case, list(eps), pipeline, **angles))
