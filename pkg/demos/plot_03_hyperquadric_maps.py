"""
Monomial maps between hyperquadrics
===================================

Substituting ``x -> -(X1 + ... + X_{2p+1})`` and ``y -> Y1 + Y2`` into
``f_{2p,2}`` gives a polynomial W that equals 1 on the real hyperplane
``-sum X + sum Y = 1`` and has exactly 2p + 1 negative coefficients.
Reading each coefficient as a squared monomial gives a map from Q(2, 2p+1)
into Q(N(p), 2p+1).
"""

# %%
from invariantcr import build_gp, build_W, verify_quadmap

W = build_W(1)
print(W)
print(W.n_positive, W.n_negative)

# %%
# The map for p = 1, in the ``sqrt`` notation used for its components.  The
# negative coordinates of the source are z1, z2, z3.

g = build_gp(1)
print(g.format())

# %%
# Verification reduces ``||F||^2 - ||G||^2 - 1`` modulo the quadric equation
# of the source.  A zero remainder means the map sends the source quadric
# into the target.

rep = verify_quadmap(g, (2, 3))
print(rep.to_json())

# %%
# The target dimension grows quickly with p.

for p in (1, 2, 3):
    g = build_gp(p)
    rep = verify_quadmap(g, (2, 2 * p + 1))
    print(p, rep.target_signature, g.degree(), rep.ok)
