#!/usr/bin/env python3
"""Show the effect of subsumption pruning on abstract exploration.

Explores the bundled firewall grammars with and without subsumption and
prints the state counts side by side.  Without pruning every
non-isomorphic shape is kept; with pruning a shape that is covered by an
already-stored shape is dropped (or retroactively marks the stored one
as redundant), which shrinks the explored space dramatically as the
grammars grow.
"""

import time

from shapespace import ExploreConfig, explore, load_bundled


def main():
    print(f"{'grammar':<12} {'off: maximum':>13} {'on: generated':>14} "
          f"{'relevant':>9} {'ratio':>7} {'time':>8}")
    for name in ("firewall-2", "firewall-3", "firewall-4"):
        g = load_bundled(name)
        _, off = explore(g, ExploreConfig(engine="abstract", strategy="dfs",
                                          subsumption=False))
        t0 = time.perf_counter()
        _, on = explore(g, ExploreConfig(engine="abstract", strategy="dfs",
                                         subsumption=True))
        dt = time.perf_counter() - t0
        print(f"{name:<12} {off.maximum:>13} {on.generated:>14} "
              f"{on.relevant:>9} {on.generated / off.maximum:>7.3f} "
              f"{dt:>7.2f}s")
    print()
    print("the ratio falls as the system grows: pruning pays off most")
    print("exactly where plain isomorphism collapsing stops scaling")


if __name__ == "__main__":
    main()
