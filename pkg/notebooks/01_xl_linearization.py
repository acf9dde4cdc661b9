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

# # Extended linearization on a two-equation system
# Polynomials are XOR-sums of monomials, each implicitly set to zero.
# XL multiplies every equation by every monomial up to degree `D`,
# treats each monomial as a column and row-reduces.

# +
from anfbridge import Polynomial, XlParams
from anfbridge.gf2 import gauss_jordan
from anfbridge.xl import linearize, xl, xl_expand

system = [Polynomial([(0, 1), (0,), ()]), Polynomial([(1, 2), (2,)])]
[str(p) for p in system]
# -

# Expanding with `D = 1` gives 2 * (1 + 3) = 8 products; one of them
# (x2 times the second equation) cancels to zero.

rows = xl_expand(system, XlParams(D=1))
[str(p) for p in rows]

# Linearize.  Columns run from the highest-degree monomial down to the
# constant, so the constant column is always last.

m, lmap = linearize(rows)
print("  ".join(str(Polynomial([c])) for c in lmap.col_to_mono))
print(m)

# Gauss-Jordan elimination.  The last three rows are the facts.

red, rank, pivots = gauss_jordan(m)
print(red)
rank, pivots

# `xl` does all of the above and keeps the linear rows and rows of the form `m + 1`.

[str(f) for f in xl(system, XlParams(D=1))]
