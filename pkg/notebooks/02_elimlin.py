# ---
# jupyter:
#   jupytext:
#     text_representation:
#       extension: .py
#       format_name: light
#       format_version: '1.5'
#       jupytext_version: 1.16.3
#   kernelspec:
#     display_name: Python 3
#     language: python
#     name: python3
# ---

# # ElimLin: harvest linear equations, substitute, repeat
# Start with x1 + x2 + x3 = 0 and x1*x2 + x2*x3 + 1 = 0.

# +
from anfbridge import AnfSystem, Polynomial
from anfbridge.elimlin import elimlin

system = [Polynomial([(0,), (1,), (2,)]), Polynomial([(0, 1), (1, 2), ()])]
res = elimlin(system)
[str(f) for f in res.facts]
# -

# The linear equation eliminated x1 (it has the fewest occurrences, lowest index wins ties);
# substituting x1 := x2 + x3 into the quadratic gives x2 + 1.

[(f"x{v + 1}", str(r)) for v, r in res.record]

# Feeding the facts back and propagating leaves x2 = 1 and x1 = not x3.

s = AnfSystem(3, system)
s.add_facts(res.facts)
s.value(1), s.find(2)

# Both completions solve the original pair.

from anfbridge.pipeline import reconstruct_model, satisfies
[(m, satisfies(system, m)) for m in (reconstruct_model({0: b}, states=s) for b in (0, 1))]
