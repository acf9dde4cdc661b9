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

# # The learning loop on a five-variable system
# Each iteration runs XL, then ElimLin, then a conflict-bounded CDCL solve
# on the CNF translation; every new fact is added to the master system,
# which is propagated after each addition.

# +
from anfbridge import AnfSystem, PipelineConfig, run
from anfbridge.formats import parse_anf

text = """
x1*x2 + x3 + x4 + 1
x1*x2*x3 + x1 + x3 + 1
x1*x3 + x3*x4*x5 + x3
x2*x3 + x3*x5 + 1
x2*x3 + x5 + 1
"""
system = parse_anf(text)
res = run(system, PipelineConfig())
res.status, res.model
# -

# The trace lists what each phase emitted and what was new to the master.

for rec in res.trace:
    print(rec.iteration, rec.phase, [str(f) for f in rec.facts], "new:", [str(p) for p in rec.new])

# The processed system now holds only values.

from anfbridge.formats import write_anf
print(write_anf(res.system))

# A contradiction anywhere ends the run.

run(AnfSystem(2, parse_anf("x1 + x2\nx1 + x2 + 1\n").polynomials())).status
