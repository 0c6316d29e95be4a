# ---
# jupyter:
#   jupytext:
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # Polynomial closure and integer-valued polynomials
#
# `Int(S, V)` is the set of polynomials in K[X] that map S into V. It
# depends on S only through its polynomial closure, which for balls and
# spheres has a short closed form.

# %%
from vlab import GaussPoint, closure, gauss_val, int_member, parse_desc, parse_field, parse_poly

for spec, text in [
    ("qp:5", "oball(0;1)"),
    ("hahn", "oball(0;1)"),
    ("qp:5", "sphere(0;0)"),
    ("tadic", "sphere(0;0)"),
    ("hahn", "union(sphere(1;1/3);finite{2})"),
]:
    S = parse_desc(parse_field(spec), text)
    print(f"{spec:6} {text:32} -> {closure(S).render()}")

# %% [markdown]
# Over Q_5, an open ball is already a closed ball of the next radius up.
# Over the Hahn field there is no next radius, so the boundary gets added
# instead. A sphere over Q_5 is a finite union of balls and stays closed.
# Over `tadic` the residue field is infinite, so a sphere is dense in its
# ball.
#
# ## The binomial polynomial
#
# `(X^2-X)/2` takes integer values on the 2-adic integers. Its Gauss value
# on the unit ball is still negative. Over a DVR with a finite residue
# field, the Gauss test is only sufficient.

# %%
Q2 = parse_field("qp:2")
f = parse_poly(Q2, "(X^2-X)/2")
print("member:", int_member(parse_desc(Q2, "cball(0;0)"), f))
print("gauss value:", gauss_val(GaussPoint(Q2, 0, 0), f))

# %% [markdown]
# Over the Hahn field the Gauss test is exact. A failing polynomial comes
# with a point of the ball where it leaves V.

# %%
H = parse_field("hahn")
v = int_member(parse_desc(H, "cball(0;1)"), parse_poly(H, "X/t^(2)"))
print(v.member, v.criterion, [str(x) for x in v.witness])

# %% [markdown]
# Fermat's little theorem separates the 5-adic unit sphere from the unit
# ball.

# %%
Q5 = parse_field("qp:5")
g = parse_poly(Q5, "(X^4-1)/5")
for text in ("sphere(0;0)", "cball(0;0)"):
    print(text, int_member(parse_desc(Q5, text), g).member)
