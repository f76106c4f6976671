# %% The Van Kampen obstruction on the classical examples
from obstrukt import vk_class
from obstrukt.generators import complete_bipartite, complete_graph, complex_Cbar, cycle_graph, skeleton_of_simplex
from obstrukt.vk import generic_map, vk_cochain

# graphs in the plane (n = 1)
for name, K in [("K5", complete_graph(5)), ("K3,3", complete_bipartite(3, 3)),
                ("K4", complete_graph(4)), ("C4", cycle_graph(4))]:
    rep = vk_class(K, 1, "Z")
    print(f"{name:5s} {rep.verdict:8s} ({rep.certified_by})")

# %% 2-complexes in R^4 (n = 2)
skel = skeleton_of_simplex(6, 2)
f = generic_map(skel, 2, seed=1)
oc = vk_cochain(skel, 2, f)
print("generic map found after", f.attempts, "attempt(s)")
print("orbits of top cells:", len(oc.values), " nonzero values:", len(oc.support()))

for coeff in ("Z", "Z2", "Q"):
    print("skel(6,2) over", coeff, "->", vk_class(skel, 2, coeff).verdict)

# the class is 2-torsion: zero over Q, nonzero over Z and Z/2

# %%
rep = vk_class(complex_Cbar(), 2, "Z")
print("C-bar:", rep.verdict, "witness support", sum(1 for x in rep.witness if x), "cells")
