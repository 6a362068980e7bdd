"""Branching so(n+2) modules to the Levi factor, level by level."""
# %%
from ahsquant import branch_to_levels, build_graded_setup, format_display, weyl_dimension

s = build_graded_setup("conformal", 8)
print(s.describe())


def show(top):
    print("branching", format_display(s, top), "dim", weyl_dimension(s.g, top))
    for level, dec in branch_to_levels(s, top).items():
        parts = " + ".join(("%dx" % m if m > 1 else "") + format_display(s, lam) for lam, m in dec)
        print(f"  level {level:+d}: {parts}")


# %% the adjoint splits into g_{-1} + g_0 + g_1
show((1, 1, 0, 0, 0))

# %% the Cartan square of g, the module behind second order tracefree symbols
show((2, 2, 0, 0, 0))

# %% S^2_0 of the standard representation, the one behind the trace part
show((2, 0, 0, 0, 0))
