"""Common refinement of two decompositions of the same element.
Example usage:
# 2 + 3 = 4 + 1 in the naturals: prints 2,2,1 with both certificates
 hypersym.refine input=nat:10 refine.d='["2,3","4,1"]'
# 200 random pairs over the 6-chain
 hypersym.refine input=chain:6 refine.trials=200 refine.seed=0
"""

import random
import sys

import hydra
from omegaconf import DictConfig

from hypersym.cli import ExitCode, exit_on_input_error, load_monoid
from hypersym.decompose import (
    common_refinement,
    parse_decomposition,
    random_decomposition_pair,
    refines,
    witness_from_refinement,
)
from hypersym.error import InputCheck, ShareFailed
from hypersym.logging import CLI_LOG


@exit_on_input_error
def run(cfg: DictConfig) -> int:
    r_cfg = cfg["refine"]
    M = load_monoid(cfg["input"])
    given = list(r_cfg["d"] or [])
    InputCheck.true(
        len(given) == 2 or (len(given) == 0 and r_cfg["trials"] > 0),
        f"Expect exactly two decompositions, got {len(given)}",
    )

    if given:
        d1, d2 = (parse_decomposition(M, d) for d in given)
        try:
            common = common_refinement(M, d1, d2)
        except ShareFailed as e:
            print(f"no common refinement in {M}: no splitting element for {e.counterexample}")
            return ExitCode.PROPERTY_FAILURE
        print(f"common refinement: {common.decomposition}")
        print(f"refines {d1}: {common.fine_of_first}")
        print(f"refines {d2}: {common.fine_of_second}")
        if len(d1) == 2 and len(d2) == 2:
            w = witness_from_refinement(M, d1, d2, common)
            print(f"splitting witness: case {w.case.value}, z = {w.z}")

    if r_cfg["trials"] > 0:
        seed = random.getrandbits(32) if r_cfg["seed"] is None else r_cfg["seed"]
        CLI_LOG.info(f"Using seed {seed}")
        rng = random.Random(seed)
        passed = 0
        for _ in range(r_cfg["trials"]):
            d1, d2 = random_decomposition_pair(
                M, rng, max_len=r_cfg["max_len"], max_part=r_cfg["max_part"]
            )
            try:
                common = common_refinement(M, d1, d2)
            except ShareFailed as e:
                print(f"trial {d1} vs {d2}: no splitting element for {e.counterexample}")
                continue
            fine = common.decomposition
            if refines(M, fine, d1) is None or refines(M, fine, d2) is None:
                print(f"trial {d1} vs {d2}: {fine} is not a common refinement")
                continue
            if len(d1) == 2 and len(d2) == 2:
                witness_from_refinement(M, d1, d2, common)
            passed += 1
        print(f"random trials: {passed}/{r_cfg['trials']} passed")
        if passed != r_cfg["trials"]:
            return ExitCode.PROPERTY_FAILURE
    return ExitCode.SUCCESS


@hydra.main(version_base=None, config_path="../config", config_name="main")
def main(cfg: DictConfig):
    sys.exit(run(cfg))


if __name__ == "__main__":
    main()
