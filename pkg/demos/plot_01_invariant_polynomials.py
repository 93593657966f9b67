"""
Invariant polynomials of small unitary groups
=============================================

Every finite group G in U(n) gives a polynomial

    Phi_G(z, wb) = 1 - prod_{g in G} (1 - <g z, w>)

that is G-invariant and identically 1 on the unit sphere.  Here we build a
few of them, look at their coefficients and read off the hyperquadric the
associated map lands in.
"""

# %%
# A scalar cyclic group
# ---------------------
# Multiplying both coordinates by a sixth root of unity collapses the
# product to ``1 - <z, w>^6``, so Phi is the sixth power of the inner
# product.  On the diagonal ``w = z`` with ``x = |z1|^2``, ``y = |z2|^2``
# this is ``(x + y)^6``.

from invariantcr import (
    decompose,
    inertia,
    coeff_matrix,
    make_example_3_3,
    make_gamma_pq,
    make_scalar_cyclic,
    phi_gamma,
    verify_invariant,
)

G = make_scalar_cyclic(6, 2)
phi = phi_gamma(G).diagonal()
print(phi.to_moment().format())

# %%
# All coefficients are positive, so the map is a proper map between balls.
# The squared coefficients of its components are the binomial numbers.

qm = decompose(phi)
print(qm.signature)
print(qm.format())

# %%
# A group with a negative coefficient
# -----------------------------------
# ``Gamma(6, 5)`` is generated by ``diag(w, wbar)`` with ``w = exp(2 pi i/6)``.
# One coefficient of Phi is negative, and the map goes to Q(4, 1) instead of
# a sphere.

G = make_gamma_pq(6, 5)
phi = phi_gamma(G).diagonal()
print(phi.to_moment().format())
print(inertia(coeff_matrix(phi)))

# %%
# The defining properties are checked exactly: zero constant term, degree
# equal to the group order, value 1 on the sphere (remainder of Phi - 1
# modulo ``|z|^2 - 1``) and invariance under every element.

print(verify_invariant(G).to_json())

# %%
# A non-diagonal group
# --------------------
# The cyclic group of order 6 generated by ``[[0, 1], [eta, 0]]`` with
# ``eta`` a primitive cube root of unity is not diagonal, so Phi has mixed
# terms ``z1 zb2`` and the coefficient matrix is not diagonal either.  Its
# inertia is computed by an exact congruence over the cyclotomic field, with
# signs certified by interval arithmetic.

G = make_example_3_3()
phi = phi_gamma(G).diagonal()
M = coeff_matrix(phi)
print(M, inertia(M))

qm = decompose(phi)
print(qm.signature)
assert qm.hermitian_form() == phi
