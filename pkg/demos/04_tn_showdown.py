"""State counts of both constructions on the T_n family.

The equalizer-based compiler stays at 3 + (2^n + n) states while the
classical route through the unambiguous expansion grows factorially on
the left.  Build times are wall clock, measured per row.
"""

from bimc import compile, evaluate, make_tn, run_bench

print(run_bench(6).to_table())

t = make_tn(3)
b = compile(t)
print()
print("T_3 compiled:", b.left.n_states, "left states,", b.right.n_states, "right states")
for word in (("a1", "a2"), ("a3", "a3", "a1")):
    print("".join(word), "->", evaluate(b, word))
