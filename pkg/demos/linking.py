# %% Linking numbers of polygons and intrinsic linking of K6
from obstrukt.links import PolygonalCycle, conway_gordon_report, linking_number, random_embedding

square = PolygonalCycle(((-1, -1, 0), (1, -1, 0), (1, 1, 0), (-1, 1, 0)))
thread = PolygonalCycle(((0, 0, -1), (0, 2, -1), (0, 2, 1), (0, 0, 1)))
print("lk(square, thread) =", linking_number(square, thread))
print("reversed thread   =", linking_number(square, thread.reversed()))

# %% every straight-line K6 has an odd number of linked triangle pairs
for seed in range(1, 6):
    rep = conway_gordon_report(random_embedding("K6", seed))
    print(f"seed {seed}: omega={rep.value}  linked pairs={len(rep.linked_pairs)}")

# %%
e = random_embedding("K6", 1)
for (s, t), v in conway_gordon_report(e).linking_numbers.items():
    if v:
        print("-".join(s), "|", "-".join(t), "lk =", v)
