import os

from multipledispatch import dispatch as _dispatch

# Largest carrier searched by `isomorphic` without a warning (8! bijections).
ISOMORPHISM_MAX_SIZE = 9
# Orders accepted by the enumeration; 5 requires an explicit opt-in.
ENUM_MAX_ORDER = 4
ENUM_LARGE_ORDER = 5
HYPERSYM_ENUM_WORKERS = int(os.getenv("HYPERSYM_ENUM_WORKERS", 1))

NEG_SIGN = "-"
POS_SIGN = "+"
ZERO_LABEL = "0"

# Private multipledispatch namespace for hypersym multimethods.
DISPATCH_NAMESPACE = dict()


def dispatch(*types):
    return _dispatch(*types, namespace=DISPATCH_NAMESPACE)
