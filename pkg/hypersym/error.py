import logging
from abc import ABC, abstractmethod
from typing import Optional, Tuple


class InternalError(Exception):
    """Fatal unexpected internal errors in hypersym that should shut down the program immediately."""

    pass


class AlgebraError(Exception):
    """Expected failure of an algebraic precondition. Carries a witness when one exists."""

    def __init__(self, msg: str, witness: Optional[Tuple] = None):
        super().__init__(msg)
        self.witness = witness


class InputError(AlgebraError, ValueError):
    """Unparsable builtin spec, decomposition string or file."""

    pass


class MalformedTable(InputError):
    pass


class NotCommutative(AlgebraError):
    def __init__(self, x: int, y: int):
        super().__init__(f"{x} + {y} != {y} + {x}", (x, y))


class NotAssociative(AlgebraError):
    def __init__(self, x: int, y: int, z: int):
        super().__init__(f"({x} + {y}) + {z} != {x} + ({y} + {z})", (x, y, z))


class NoIdentity(AlgebraError):
    def __init__(self):
        super().__init__("No element e with e + x = x for all x")


class NotAGroup(AlgebraError):
    def __init__(self, x: int):
        super().__init__(f"Element {x} has no inverse", (x,))


class WindowOverflow(AlgebraError):
    """A sum left the window of a windowed monoid. Never truncated."""

    def __init__(self, a, b, bound: int):
        super().__init__(f"{a} + {b} leaves the window [0, {bound}]", (a, b))
        self.bound = bound


class NotBalanced(AlgebraError):
    def __init__(self, x: int, y: int, u: int, v: int):
        super().__init__(f"{x} + {y} != {u} + {v}", (x, y, u, v))


class ShareFailed(AlgebraError):
    def __init__(self, counterexample):
        super().__init__(
            f"No splitting element for {counterexample}", counterexample.as_tuple()
        )
        self.counterexample = counterexample


class NotTotal(AlgebraError):
    def __init__(self, x: int, y: int):
        super().__init__(f"{x} and {y} are incomparable in the divisibility order", (x, y))


class NotAdditive(AlgebraError):
    def __init__(self, witness: Tuple, reason: str):
        super().__init__(f"Map is not additive at {witness}: {reason}", witness)


class NotAHypergroup(AlgebraError):
    pass


class SizeMismatch(AlgebraError):
    def __init__(self, lhs: int, rhs: int):
        super().__init__(f"Carriers differ in size: {lhs} != {rhs}", (lhs, rhs))


class TargetMismatch(InputError):
    def __init__(self, lhs: int, rhs: int):
        super().__init__(f"Decompositions of different elements: {lhs} != {rhs}", (lhs, rhs))


class InvalidCertificate(AlgebraError):
    pass


class OrderTooLarge(InputError):
    def __init__(self, order: int, limit: int):
        super().__init__(f"Cannot enumerate monoids of order {order} (limit: {limit})", (order,))


class BaseChecker(ABC):
    @classmethod
    @abstractmethod
    def handler(cls, msg):
        pass

    @classmethod
    def eq(cls, lhs, rhs, msg=""):
        if lhs != rhs:
            cls.handler(f"Failed asertion :: {msg} | {lhs} != {rhs}")

    @classmethod
    def ge(cls, lhs, rhs, msg=""):
        if lhs < rhs:
            cls.handler(f"Failed asertion :: {msg} | {lhs} < {rhs}")

    @classmethod
    def le(cls, lhs, rhs, msg=""):
        if lhs > rhs:
            cls.handler(f"Failed asertion :: {msg} | {lhs} > {rhs}")

    @classmethod
    def not_none(cls, obj, msg=""):
        if obj is None:
            cls.handler(f"Failed asertion :: {msg} | expr is None")

    @classmethod
    def true(cls, cond, msg=""):
        if not cond:
            cls.handler(f"Failed asertion :: {msg} | condition is not True")


class SanityCheck(BaseChecker):
    @classmethod
    def handler(cls, msg):
        logging.critical(msg)
        raise InternalError(msg)


class InputCheck(BaseChecker):
    @classmethod
    def handler(cls, msg):
        raise InputError(msg)
