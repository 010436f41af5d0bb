"""Exact q-series, q-de Rham and cyclic ku fixed point computations.

Thin wrapper over the compiled _qderham module.  Structured results cross
the boundary as canonical JSON (all numbers as decimal strings) and are
parsed into plain dicts and lists here; *_raw variants return the canonical
byte string itself, which is stable across runs and platforms.
"""

import json

try:
    from . import _qderham as _c  # wheel layout
except ImportError:
    import _qderham as _c  # build-tree layout

__all__ = [
    "context_roundtrip",
    "cyclotomic",
    "q_integer",
    "sha256_hex",
    "qdr_cohomology",
    "qpd_verify",
    "pi_genuine",
    "pi_homotopy_fixed",
    "pi_geometric",
    "pi_geometric_localized",
    "pi_geometric_p_complete",
    "tc_minus_zpzeta",
    "fracture",
    "pullback",
    "inflation",
    "run_checks",
    "run_checks_raw",
]

context_roundtrip = _c.context_roundtrip
cyclotomic = _c.cyclotomic_str
q_integer = _c.q_integer_str
sha256_hex = _c.sha256_hex


def _parsed(fn):
    def call(*args, **kwargs):
        return json.loads(fn(*args, **kwargs))

    call.__name__ = fn.__name__
    call.__doc__ = fn.__doc__
    return call


qdr_cohomology = _parsed(_c.qdr_cohomology)
qpd_verify = _parsed(_c.qpd_verify)
pi_genuine = _parsed(_c.pi_genuine)
pi_homotopy_fixed = _parsed(_c.pi_homotopy_fixed)
pi_geometric = _parsed(_c.pi_geometric)
pi_geometric_localized = _parsed(_c.pi_geometric_localized)
pi_geometric_p_complete = _parsed(_c.pi_geometric_p_complete)
tc_minus_zpzeta = _parsed(_c.tc_minus_zpzeta)
fracture = _parsed(_c.fracture)
pullback = _parsed(_c.pullback)
inflation = _parsed(_c.inflation)
run_checks = _parsed(_c.run_checks)
run_checks_raw = _c.run_checks
