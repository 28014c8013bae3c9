import functools
from enum import IntEnum
from typing import Callable

from omegaconf import DictConfig
from omegaconf.errors import MissingMandatoryValue

from hypersym.abstract.monoid import SolvableMonoid
from hypersym.builders import load_input
from hypersym.error import AlgebraError, InputError
from hypersym.logging import CLI_LOG


class ExitCode(IntEnum):
    SUCCESS = 0
    # A required property or certificate does not hold.
    PROPERTY_FAILURE = 1
    # Unparsable input or misuse.
    INPUT_ERROR = 2


def load_monoid(text: str) -> SolvableMonoid:
    """`load_input`, reporting tables that are not commutative monoids as input errors."""
    try:
        return load_input(str(text))
    except InputError:
        raise
    except AlgebraError as e:
        raise InputError(f"`{text}` is not a commutative monoid: {e}", e.witness) from e


def exit_on_input_error(
    run: Callable[[DictConfig], int]
) -> Callable[[DictConfig], int]:
    @functools.wraps(run)
    def wrapper(cfg: DictConfig) -> int:
        try:
            return int(run(cfg))
        except MissingMandatoryValue as e:
            CLI_LOG.error(f"Missing option: {e}")
        except InputError as e:
            CLI_LOG.error(f"{e}")
        except OSError as e:
            CLI_LOG.error(f"Cannot access {e.filename}: {e.strerror}")
        return int(ExitCode.INPUT_ERROR)

    return wrapper
