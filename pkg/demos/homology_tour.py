# %% Smith normal form and simplicial homology over Z, Q and Z/2
import numpy as np

from obstrukt import build_complex, homology, smith_normal_form
from obstrukt.generators import complex_Cbar, skeleton_of_simplex

A = np.array([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], dtype=object)
snf = smith_normal_form(A)
print("diagonal:", snf.diagonal)
print("U A V == D:", snf.verify(A))

# %% the 6-vertex projective plane has 2-torsion in H_1
rp2 = build_complex([(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
                     (2, 3, 5), (3, 4, 6), (2, 4, 5), (3, 5, 6), (2, 4, 6)])
for ring in ("Z", "Q", "Z2"):
    print(ring, [str(homology(rp2, d, ring)) for d in range(3)])

# %% skeleta of simplices: H_k is free of rank C(n, k+1)
for n in range(2, 7):
    K = skeleton_of_simplex(n, 2)
    print(f"skel({n},2)", K.f_vector, homology(K, 2, "Z"))

# %% C-bar is rationally acyclic in degree 1
Cb = complex_Cbar()
print("C-bar f-vector", Cb.f_vector, "H1 =", homology(Cb, 1, "Q"))
