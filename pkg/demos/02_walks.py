"""
Walks and their affine forms
============================

Every unmarked node starts finitely many simple paths to a marked node
and monocycles (a simple path into a cycle that is then repeated forever).
Each walk carries an affine form ``sigma``, and on a gainy network the
inverse transfer map is the maximum of these forms.
"""

from fractions import Fraction

from markednet import certificate_walk, enumerate_mw, paper_example, partial_sigma_series, phi, sigma

net = paper_example("quad")

for v in net.unmarked:
    for walk in enumerate_mw(net, v):
        print(v, walk.key(), "->", sigma(net, walk))

# The form of a monocycle is the limit of a geometric series. Partial sums
# approach it, and the error shrinks by the cycle weight per lap.
walk = enumerate_mw(net, "v")[0]
x = {"v": Fraction(1), "w": Fraction(1)}
limit = sigma(net, walk)(x)
for terms in (2, 4, 8, 16, 32):
    print(terms, "terms: error", float(limit - partial_sigma_series(net, walk, terms, x)))

# For a point y, the walk that attains the maximum is the certificate for
# the inverse image of y.
y = phi(net, {"v": Fraction(2), "w": Fraction(1)})
for v in net.unmarked:
    w = certificate_walk(net, y, v)
    print("certificate at", v, w.key(), "value", sigma(net, w)(y))
