# ---
# jupyter:
#   jupytext:
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # Gauss valuations on K[X]
#
# A Gauss valuation is fixed by a centre `alpha` and a radius `gamma`.
# Expand `f` around `alpha`; the value is the smallest `v(a_i) + i*gamma`.

# %%
from fractions import Fraction

from vlab import GaussPoint, compare_rings, gauss_val, parse_field, parse_poly

Q5 = parse_field("qp:5")
f = parse_poly(Q5, "X^2+5")
for g in (0, Fraction(1, 2), 1, 2):
    print(f"gamma={g}: v(X^2+5) = {gauss_val(GaussPoint(Q5, 0, g), f)}")

# %% [markdown]
# The value rises with gamma until the constant term 5 takes over at
# gamma = 1/2.
#
# ## Two extensions of the 5-adic valuation
#
# Over Q(i), the prime 5 splits. The two extensions see `-X+2` differently
# at the point `(i, 1)`, because `i - 2` is small in one of them and a unit
# in the other.

# %%
for r0 in (2, 3):
    W = parse_field(f"quad:d=-1,p=5,r0={r0}")
    P = GaussPoint(W, W.generator(), 1)
    print(W.spec, "->", gauss_val(P, parse_poly(Q5, "-X+2")))

# %% [markdown]
# ## Comparing valuation rings
#
# The valuation ring of `(alpha1, gamma1)` sits inside that of
# `(alpha2, gamma2)` exactly when the ball `B(alpha1, gamma1)` contains
# `B(alpha2, gamma2)`.

# %%
pairs = [((0, 1), (5, 2)), ((0, 1), (5, 1)), ((0, 1), (1, 2)), ((5, 2), (0, 1))]
for (a1, g1), (a2, g2) in pairs:
    order = compare_rings(GaussPoint(Q5, a1, g1), GaussPoint(Q5, a2, g2))
    print(f"V({a1},{g1}) vs V({a2},{g2}): {order.value}")

# %% [markdown]
# Hahn series have a divisible value group, so any rational radius is a
# value. `t^(1/3)` is exactly on the boundary of the radius-1/3 ball.

# %%
H = parse_field("hahn")
P = GaussPoint(H, 0, Fraction(1, 3))
for text in ("X", "X^3-t^(1)", "X^2+t^(1)", "X-t^(1/3)"):
    print(text, "->", gauss_val(P, parse_poly(H, text)))
