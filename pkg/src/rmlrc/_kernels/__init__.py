"""Hot arithmetic kernels.

The numba implementation is used by default. Setting ``RMLRC_BACKEND=numpy``
selects the pure-numpy fallback; it is also used when numba cannot be
imported.
"""
import os

from . import numpy_impl

if os.environ.get("RMLRC_BACKEND", "numba").strip().lower() == "numpy":
    impl = numpy_impl
else:
    try:
        from . import numba_impl as impl
    except ImportError:  # pragma: no cover
        impl = numpy_impl

BACKEND = impl.NAME

ext_mul = impl.ext_mul
ext_inv = impl.ext_inv
frob = impl.frob
moore = impl.moore
lin_eval = impl.lin_eval
rank_fq = impl.rank_fq
independent_rows = impl.independent_rows
solve_ext = impl.solve_ext
fq_combine = impl.fq_combine

__all__ = [
    "BACKEND", "impl", "ext_mul", "ext_inv", "frob", "moore", "lin_eval",
    "rank_fq", "independent_rows", "solve_ext", "fq_combine",
]
