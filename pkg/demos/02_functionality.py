"""Deciding whether a transducer realizes a partial function."""

from bimc import FreeWords, make_transducer, test_functionality

FREE = FreeWords(("x", "y"))

# two paths for "ab", both emitting "xxy": functional despite the fork
diamond = make_transducer(
    ("a", "b"), FREE, 4, {0}, {3},
    [(0, "a", "x", 1), (0, "a", "xx", 2), (1, "b", "xy", 3), (2, "b", "y", 3)],
)

# same shape but the outputs disagree
broken = make_transducer(
    ("a", "b"), FREE, 4, {0}, {3},
    [(0, "a", "x", 1), (0, "a", "xx", 2), (1, "b", "y", 3), (2, "b", "y", 3)],
)

# an epsilon loop that pumps output on an accepting path
pump = make_transducer(
    ("a",), FREE, 2, {0}, {1},
    [(0, None, "x", 0), (0, "a", "y", 1)],
)

for name, t in (("diamond", diamond), ("broken", broken), ("pump", pump)):
    verdict = test_functionality(t)
    if verdict.functional:
        print(f"{name}: functional")
    else:
        w = verdict.witness
        print(f"{name}: not functional ({w.kind}: {w.detail})")
