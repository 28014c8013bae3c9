"""Report the monoid axioms and the order-theoretic properties of a monoid.
Example usage:
# all properties of the 3-element max-chain
 hypersym.check input=chain:3
# fail (exit 1) unless the splitting property and totality hold
 hypersym.check input="'prod:chain:2,chain:2'" check.require="[share,total]"
"""

import sys
from typing import Dict

import hydra
from omegaconf import DictConfig

from hypersym.abstract.monoid import (
    FiniteCommutativeMonoid,
    is_cancellative,
    is_idempotent,
    is_total,
)
from hypersym.cli import ExitCode, exit_on_input_error, load_monoid
from hypersym.error import InputCheck
from hypersym.logging import CLI_LOG
from hypersym.symmetrize import check_share

PROPERTIES = ("total", "share", "cancellative", "idempotent")


@exit_on_input_error
def run(cfg: DictConfig) -> int:
    M = load_monoid(cfg["input"])
    require = list(cfg["check"]["require"] or [])
    for flag in require:
        InputCheck.true(
            flag in PROPERTIES, f"Unknown property `{flag}`; choose from {PROPERTIES}"
        )

    if isinstance(M, FiniteCommutativeMonoid):
        print(f"monoid {M}: order {M.order}, identity {M.identity}")
    else:
        print(f"monoid {M}: window of {len(M.elements())} elements, identity {M.zero}")
    print("commutative: ok\nassociative: ok\nidentity: ok")

    holds: Dict[str, bool] = {}

    total = is_total(M)
    holds["total"] = total.total
    print(
        "total: ok"
        if total
        else "total: FAIL, {} and {} are incomparable".format(*total.counterexample)
    )

    cex = check_share(M)
    holds["share"] = cex is None
    if cex is None:
        print("share: ok")
    else:
        print(f"share: FAIL, no splitting element for {cex}")

    cancel = is_cancellative(M)
    holds["cancellative"] = cancel.holds
    if cancel:
        print("cancellative: ok")
    else:
        x, y, a = cancel.witness
        print(f"cancellative: FAIL, {x} + {a} = {y} + {a}")

    idem = is_idempotent(M)
    holds["idempotent"] = idem.holds
    if idem:
        print("idempotent: ok")
    else:
        (x,) = idem.witness
        print(f"idempotent: FAIL, {x} + {x} != {x}")

    missing = [flag for flag in require if not holds[flag]]
    if missing:
        CLI_LOG.warning(f"Required properties do not hold: {missing}")
        return ExitCode.PROPERTY_FAILURE
    return ExitCode.SUCCESS


@hydra.main(version_base=None, config_path="../config", config_name="main")
def main(cfg: DictConfig):
    sys.exit(run(cfg))


if __name__ == "__main__":
    main()
