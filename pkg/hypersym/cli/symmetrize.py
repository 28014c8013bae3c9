"""Build the symmetrization s(B) and print its hypersum table.
Example usage:
# 5-element table of the symmetrized 3-chain, saved as JSON
 hypersym.symmetrize input=chain:3 sym.out=chain3.json
# a total but non-splitting monoid: build anyway and report the broken axioms
 hypersym.symmetrize input=monoid.json sym.force=true
# windowed naturals: sums of magnitude <= 5
 hypersym.symmetrize input=nat:10 sym.window=5
"""

import sys

import hydra
from omegaconf import DictConfig

from hypersym.abstract.hypergroup import check_axioms
from hypersym.abstract.monoid import FiniteCommutativeMonoid
from hypersym.cli import ExitCode, exit_on_input_error, load_monoid
from hypersym.error import NotTotal, ShareFailed, WindowOverflow
from hypersym.logging import CLI_LOG
from hypersym.symmetrize import WindowedSymmetrization, symmetrize


def print_windowed(sym: WindowedSymmetrization, bound: int):
    elems = sym.elements(bound)
    for i, x in enumerate(elems):
        for y in elems[i:]:
            try:
                members = ", ".join(sym.label(s) for s in sym.hypersum(x, y))
                print(f"{sym.label(x)} + {sym.label(y)} = {{{members}}}")
            except WindowOverflow:
                print(f"{sym.label(x)} + {sym.label(y)} = (leaves the window)")


@exit_on_input_error
def run(cfg: DictConfig) -> int:
    sym_cfg = cfg["sym"]
    M = load_monoid(cfg["input"])

    if not isinstance(M, FiniteCommutativeMonoid):
        print_windowed(symmetrize(M), sym_cfg["window"])
        return ExitCode.SUCCESS

    try:
        res = symmetrize(M, force=sym_cfg["force"])
    except ShareFailed as e:
        print(f"s({M}) is not a hypergroup: no splitting element for {e.counterexample}")
        return ExitCode.PROPERTY_FAILURE
    except NotTotal as e:
        x, y = e.witness
        print(f"s({M}) has empty hypersums: {x} and {y} are incomparable")
        return ExitCode.PROPERTY_FAILURE

    H = res.hypergroup
    print(H.pretty(), end="")
    if sym_cfg["out"] is not None:
        res.dump(sym_cfg["out"])
        CLI_LOG.info(f"Saved s({M}) to {sym_cfg['out']}")

    if sym_cfg["force"]:
        report = check_axioms(H)
        print(report.pretty(H), end="")
        if not report.passed:
            return ExitCode.PROPERTY_FAILURE
    return ExitCode.SUCCESS


@hydra.main(version_base=None, config_path="../config", config_name="main")
def main(cfg: DictConfig):
    sys.exit(run(cfg))


if __name__ == "__main__":
    main()
