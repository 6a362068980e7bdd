"""Weight multiplicities, tensor products and symmetric powers for so(8)."""
# %%
from ahsquant import build_root_system, decompose, irreducible_character, weyl_dimension
from ahsquant.charalg import adjoint_character, symmetric_power_character, tensor_character

D4 = build_root_system("D", 4)
print(D4.name, "positive roots:", len(D4.positive_roots), "rho:", D4.rho)

# %% the adjoint: roots with multiplicity one, the zero weight with multiplicity = rank
adj = irreducible_character(D4, (1, 1, 0, 0))
print("adjoint dim", adj.dim, "zero weight multiplicity", adj[(0, 0, 0, 0)])

# %% standard (x) standard = S^2_0 + Lambda^2 + trivial
std = irreducible_character(D4, (1, 0, 0, 0))
for lam, m in decompose(D4, None, tensor_character(std, std)):
    print(f"  {m} x {lam}  dim {weyl_dimension(D4, lam)}")

# %% S^2 of the adjoint: 406 = 300 + 35 + 35 + 35 + 1
# for D4 the Lambda^4 piece splits into two halves
s2 = symmetric_power_character(adjoint_character(D4), 2)
print("S^2 adj dim", s2.dim)
for lam, m in decompose(D4, None, s2):
    print(f"  {m} x {lam}  dim {weyl_dimension(D4, lam)}")
