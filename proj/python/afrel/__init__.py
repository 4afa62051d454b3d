"""Exact verification of relations among annihilating fields of affine vacuum modules."""

import json

from ._afrel import ConfigError, Engine, dual_coxeter, pbw_dimensions
from . import _afrel

__all__ = ["ConfigError", "Engine", "dual_coxeter", "list_claims", "pbw_dimensions", "verify"]


def list_claims():
    """Return the claim registry as a list of dicts with ``claim`` and ``anchor``."""
    return json.loads(_afrel.claims_json())


def verify(claim, type, level, degree, sign="standard", with_timing=True):
    """Run one claim and return its report as a dict."""
    return json.loads(_afrel.verify_json(claim, type, level, degree, sign, with_timing))
