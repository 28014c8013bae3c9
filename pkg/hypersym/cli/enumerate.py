"""Enumerate commutative monoids of a given order and classify them.
Example usage:
 hypersym.enumerate enum.order=3
# classification with per-class certificates as CSV
 hypersym.enumerate enum.order=4 enum.classify=true enum.csv=order4.csv
# symbolic search with z3; reuse the per-version cache afterwards
 hypersym.enumerate enum.order=4 enum.method=smt cache.enumeration=true
"""

import sys

import hydra
from omegaconf import DictConfig

from hypersym.cli import ExitCode, exit_on_input_error
from hypersym.enumeration import enumerate_monoids, survey, theorem_violations
from hypersym.error import InputCheck
from hypersym.logging import CLI_LOG


@exit_on_input_error
def run(cfg: DictConfig) -> int:
    e_cfg = cfg["enum"]
    InputCheck.true(
        e_cfg["method"] in ("backtrack", "smt"),
        f"Unknown enumeration method `{e_cfg['method']}`; use backtrack or smt",
    )
    kwargs = dict(
        allow_order5=e_cfg["allow_order5"],
        method=e_cfg["method"],
        cache=cfg["cache"]["enumeration"],
    )
    if e_cfg["workers"] is not None:
        kwargs["workers"] = e_cfg["workers"]
    order = e_cfg["order"]

    if not e_cfg["classify"]:
        monoids = enumerate_monoids(order, **kwargs)
        print(f"order {order}: {len(monoids)} classes")
        for M in monoids:
            print(f"{M}: {M.table.tolist()}")
        return ExitCode.SUCCESS

    report = survey(order, **kwargs)
    print(report.pretty(), end="")
    if e_cfg["csv"] is not None:
        report.write_csv(e_cfg["csv"])
        CLI_LOG.info(f"Saved classification of order {order} to {e_cfg['csv']}")
    violations = theorem_violations(report.records)
    for v in violations:
        print(v)
    return ExitCode.PROPERTY_FAILURE if violations else ExitCode.SUCCESS


@hydra.main(version_base=None, config_path="../config", config_name="main")
def main(cfg: DictConfig):
    sys.exit(run(cfg))


if __name__ == "__main__":
    main()
