# ---
# jupyter:
#   jupytext:
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # Pseudo-monotone sequences and Prüfer verdicts
#
# A family is a closed-form sequence plus declared metadata. Everything is
# checked on a finite window n = 0..N, so verdicts depend on N.

# %%
from vlab import breadth_ideal, classify_window, decide_prufer, parse_desc, parse_family, parse_field

H = parse_field("hahn")
for text in (
    "seq:hahn_partial(e_k=1-1/k)",
    "seq:hahn_pow(e_n=1/(n+1))",
    "seq:geom(r=t^(1/2))",
    "seq:enum()",
):
    fam = parse_family(H, text)
    rep = classify_window(fam, 8)
    gaps = " ".join(str(g) for g in rep.gaps[:5])
    print(f"{text:32} {rep.kind.short:11} breadth={fam.breadth}  gaps: {gaps} ...")

# %% [markdown]
# The gaps of the partial sums `sum t^(1-1/k)` climb towards 1 without
# reaching it. An element b lies in the breadth ideal when v(b) beats
# every gap, so the ideal is `{v >= 1}`, which is principal.

# %%
B = breadth_ideal(parse_family(H, "seq:hahn_partial(e_k=1-1/k)"))
print(B.threshold, B.principal, B.contains(H.monomial(1)), B.contains(H.monomial("99/100")))

# %% [markdown]
# ## Deciding Prüfer
#
# A negative verdict names a sequence inside S with an algebraic
# pseudo-limit, and that witness can be replayed at a larger window. A
# positive verdict names the reason no such sequence exists.

# %%
cases = [
    ("qp:5", "finite{0,1,2}"),
    ("qp:5", "cball(0;0)"),
    ("tadic", "cball(0;0)"),
    ("hahn", "seq:geom(r=t^(1/2))"),
    ("hahn", "seq:hahn_partial(e_k=1-1/k)[type=transcendental]"),
    ("hahn", "seq:hahn_pow(a=t^(1/3),e_n=1-1/(n+2))"),
]
for spec, text in cases:
    v = decide_prufer(parse_desc(parse_field(spec), text), 12)
    print(f"{spec:6} {text:52} prufer={v.prufer!s:5} {v.rule}")

# %%
v = decide_prufer(parse_desc(H, "seq:hahn_pow(a=t^(1/3),e_n=1-1/(n+2))"), 12)
w = v.witness
print(w.as_dict())
print("replays at N=24:", w.replay(24))
for note in v.caveats:
    print(" -", note)
