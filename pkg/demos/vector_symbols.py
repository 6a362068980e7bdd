"""Operators from the tangent bundle to densities: candidates, gamma and thresholds."""
# %%
from ahsquant import build_graded_setup, critical_report, format_display, gamma_value
from ahsquant.quant import coarse_candidates, refine_candidates

s = build_graded_setup("conformal", 6)
U = (1, 1, 0, 0)  # label of R^n
rep = critical_report(s, U, 1)
print("dominance threshold", rep.dominance_threshold)
for comp in rep.components:
    print(format_display(s, comp.component.label), "n_i =", comp.n_i)
    for f in comp.candidates:
        print(f"    ell={f.ell} {format_display(s, f.label):<14} delta {f.delta_critical}")

# %% gamma vanishes exactly at the critical weights
R = (2, 1, 1, 0)
cands = refine_candidates(s, R, coarse_candidates(s, R, 1), [U], U, 1)
for delta in (-6, -5, -4, -1, 0, 1):
    print(f"gamma({delta:+d}) = {gamma_value(s, R, cands, delta)}")

# %% second order: the two copies of (3|1,0,0) come from different g-modules
rep = critical_report(s, U, 2)
for comp in rep.components:
    src = ", ".join(format_display(s, t) for t in comp.component.matched)
    print(f"{format_display(s, comp.component.label):<12} from {src:<12} {[str(d) for d in comp.gamma_zero_deltas]}")
