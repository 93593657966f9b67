"""
Primes and the golden ratio from f_{p,q}
========================================

For the diagonal group generated by ``diag(w, w^q)``, ``w = exp(2 pi i/p)``,
the invariant polynomial depends only on ``x = |z1|^2`` and ``y = |z2|^2``.
Call it ``f_{p,q}(x, y)``.  It has integer coefficients and equals 1 on the
line ``x + y = 1``.
"""

# %%
from invariantcr import fp2_recurrence, fpq_compute, golden_ratio_scalar, prime_test
from invariantcr.fpq import fp_pm1_structure

for p in range(4, 8):
    print(p, fpq_compute(p, p - 1).format())

# %%
# A primality test
# ----------------
# Apart from ``x^p + y^p``, every coefficient of ``f_{p,q}`` is divisible
# by p exactly when p is prime.  A composite p comes with a witness term.

for p in (7, 9, 11, 15):
    print(prime_test(p, 2).to_json())

# %%
# Closed form for q = 2
# ---------------------
# ``f_{p,2}`` follows a Lucas-type recurrence, which is much cheaper than
# expanding the group product.

assert all(fp2_recurrence(p) == fpq_compute(p, 2) for p in range(3, 20))

# %%
# Setting ``x = y = 1`` gives an integer ``S_p``.  Its p-th root tends to the
# golden ratio 1.6180339887...

for p in (10, 50, 100, 200):
    g = golden_ratio_scalar(p)
    print(p, g.to_json()["root"][0])

# %%
# Sign pattern for q = p - 1
# --------------------------
# ``f_{p,p-1} = x^p + y^p + sum_j n_j (xy)^j`` with ``n_j`` alternating in
# sign and vanishing once ``2j > p``.  The numbers of positive and negative
# coefficients follow a rule in ``p mod 4``.

rep = fp_pm1_structure(13)
print(rep.n, rep.counts, rep.expected_counts)
