"""Grothendieck group of a monoid, compared against its symmetrization.
Example usage:
 hypersym.grothendieck input=z:3
# idempotent monoids collapse to the trivial group
 hypersym.grothendieck input=chain:4 grothendieck.out=g.json
"""

import sys

import hydra
from omegaconf import DictConfig

from hypersym.abstract.monoid import FiniteCommutativeMonoid
from hypersym.cli import ExitCode, exit_on_input_error, load_monoid
from hypersym.logging import CLI_LOG
from hypersym.symmetrize import check_share, compare_grothendieck, grothendieck


@exit_on_input_error
def run(cfg: DictConfig) -> int:
    g_cfg = cfg["grothendieck"]
    M = load_monoid(cfg["input"])
    G = grothendieck(M, bound=g_cfg["bound"])

    labels = G.labels()
    print(f"K({M}) has {G.size} element{'s' if G.size != 1 else ''}: {', '.join(labels)}")
    if G.is_trivial:
        print("K(B) is trivial")
    for i in range(G.size):
        for j in range(i, G.size):
            k = int(G.table[i, j])
            rhs = labels[k] if k >= 0 else "(leaves the window)"
            print(f"{labels[i]} + {labels[j]} = {rhs}")
    if g_cfg["out"] is not None:
        G.dump(g_cfg["out"])
        CLI_LOG.info(f"Saved K({M}) to {g_cfg['out']}")

    if not isinstance(M, FiniteCommutativeMonoid):
        return ExitCode.SUCCESS
    if check_share(M) is not None:
        print("s(B) is not a hypergroup: no comparison")
        return ExitCode.SUCCESS

    cmp = compare_grothendieck(M)
    if cmp.s_is_group:
        print("s(B) is a group: matches Grothendieck")
    else:
        x, y, a = cmp.cancellation_witness
        print(f"s(B) is not a group: B is not cancellative ({x} + {a} = {y} + {a})")
    return ExitCode.SUCCESS


@hydra.main(version_base=None, config_path="../config", config_name="main")
def main(cfg: DictConfig):
    sys.exit(run(cfg))


if __name__ == "__main__":
    main()
