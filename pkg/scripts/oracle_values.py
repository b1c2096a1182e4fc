"""Recompute the frozen oracle values used by the tests (needs networkx)."""
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from oracles import chi_f_bruteforce, chi_f_vertex_transitive  # noqa: E402

from chroma.graph import complete, cycle, grotzsch  # noqa: E402
from chroma.kneser import kneser  # noqa: E402


def main() -> None:
    for name, g in [("K4", complete(4)), ("C5", cycle(5)), ("C7", cycle(7)), ("KG(5,2)", kneser(5, 2)),
                    ("Grotzsch", grotzsch())]:
        print(f"{name:>9}: {chi_f_bruteforce(g.n, list(g.edges()))}")
    for n, k in [(7, 3), (8, 3)]:
        g = kneser(n, k)
        print(f"  KG({n},{k}): {chi_f_vertex_transitive(g.n, list(g.edges()))}")


if __name__ == "__main__":
    main()
