"""Reduction script for the ffm1 corpus presentation (f(f-1) = 0, f = y^2 - x^3).

Rows are (a1, a2, g), columns the three relators.  With u = g^-1 - 1 and
v = a2^-1 - 1 the first block of moves rewrites the Fox matrix into
compact form; the rest diagonalizes it.  At level 0 u vanishes, so the
script must stop at the first row scaling.
"""

FFM1_FACTS = """\
commute g a2 | relator 1
commute A1*g*a1 a2 | relator 2
nontrivial g from=1 | g survives in every solvable quotient past the abelianization
"""

FFM1_SCRIPT = """\
let u = g^-1 - 1
let v = a2^-1 - 1
colscale 1 right "-1"
colscale 3 right "g^-1"
set 1 2 "-u*a1*v"
set 1 3 "u*a1 + a1^-1*u*a1 - u"
set 2 1 "-u"
set 2 2 "a1^-1*u*a1"
set 3 1 "v"
set 3 2 "-a1*v"
commute u a2
commute a1^-1*u*a1 a2
# u is a unit only past level 0
rowscale 1 left "-u^-1"
let w = u^-1*a1^-1*u*a1
set 1 3 "1 - w - a1"
rowaddmul 3 1 "1"
rowaddmul 3 2 "v*u^-1"
pivot 2 1
rowaddmul 2 1 "-w*a1^-1"
# v commutes with w because a2 commutes with u and with a1^-1*u*a1
set 2 1 "0"
rankzero rows=1 cols=1
coladdmul 2 1 "-1"
# 1 - w - a1*a2^-1 is a unit of level 0
pivot 1 2
"""

FIRST_ROWSCALE = 13
