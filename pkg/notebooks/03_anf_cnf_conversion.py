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

# # Between polynomials and clauses
# Short polynomials (at most `K` variables) become a minimal CNF through
# exact two-level minimization; longer ones get an auxiliary variable per
# nonlinear monomial and a parity encoding of the XOR.

# +
from anfbridge import ConvParams, Polynomial
from anfbridge.convert import MonomialVarMap, cnf_to_anf, encode_polynomial
from anfbridge.formats import write_dimacs, write_map

p = Polynomial([(0, 2), (0,), (1,), (3,), ()])
str(p)
# -

# Minimized: six clauses.

vm = MonomialVarMap.for_anf(4)
print(write_dimacs(encode_polynomial(p, ConvParams(), vm), vm.num_vars))

# With `K = 3` the polynomial is too wide; x5 stands for x1*x3 (3 clauses)
# and the four-term XOR costs 2^3 = 8 clauses.

vm = MonomialVarMap.for_anf(4)
print(write_dimacs(encode_polynomial(p, ConvParams(K=3), vm), vm.num_vars))
print(write_map(vm))

# Long XORs are cut into chained pieces of at most `L` terms.

long_xor = Polynomial([(i,) for i in range(9)] + [()])
vm = MonomialVarMap.for_anf(9)
clauses = encode_polynomial(long_xor, ConvParams(K=2, L=4), vm)
len(clauses), sorted(vm.aux)

# The other direction: a clause becomes the product of its negated literals.
# Clauses with many positive literals are first split so the product stays short.

s = cnf_to_anf([[-1, 2], [1, 2, 3, 4]], ConvParams(Lp=2))
[str(q) for q in s.polynomials()]
