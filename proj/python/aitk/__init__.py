"""Time-bounded algorithmic randomness toolkit: Python surface.

Thin re-export of the native module.  Strings of '0'/'1' characters stand
in for bit strings throughout; exact dyadic capitals are rendered as
"num/2^exp" text.
"""

from ._aitk import (
    __version__,
    build_pair,
    complexity,
    deinterleave,
    interleave,
    kc_allocate,
    kraft_sum,
    martingale_run,
    run_program,
    run_suite,
)

__all__ = [
    "__version__",
    "build_pair",
    "complexity",
    "deinterleave",
    "interleave",
    "kc_allocate",
    "kraft_sum",
    "martingale_run",
    "run_program",
    "run_suite",
]
