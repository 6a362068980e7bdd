"""Critical weights of operators between density bundles, orders one to three."""
# %%
from fractions import Fraction

from ahsquant import build_graded_setup, critical_report, format_display, prop35_set

def fmt(xs):
    return "{" + ", ".join(str(Fraction(x)) for x in xs) + "}"


# %% sweep n to see the affine dependence on n
for k in (1, 2, 3):
    print(f"order {k}")
    for n in (6, 8, 10):
        s = build_graded_setup("conformal", n)
        rep = critical_report(s, s.g.zero(), k)
        for comp in rep.components:
            label = comp.component.label
            line = f"  n={n:<3} {format_display(s, label):<18} {fmt(comp.gamma_zero_deltas)}"
            if not any(label[1:]):
                # pure densities R[w] are covered by the closed form
                line += f"  closed form {fmt(prop35_set(n, label[0], k))}"
            print(line)

# %% the coarse method only knows S^l g_1 (x) R and overshoots
s = build_graded_setup("conformal", 8)
fine = critical_report(s, s.g.zero(), 2)
rough = critical_report(s, s.g.zero(), 2, refine=False)
print("refined", fmt(fine.critical_set))
print("coarse ", fmt(rough.critical_set))
