# %% K_alpha: vanishing Van Kampen class, nonvanishing higher obstruction
from obstrukt import k_alpha, vk_class
from obstrukt.complex import disk_chain
from obstrukt.generators import one_relator_complex
from obstrukt.magnus import expand, higher_obstruction_certificate, lcs_class
from obstrukt.massey import massey_product, meridian_classes

for word in ("[x,y]", "[[x,y],y]"):
    K = k_alpha(word)
    print(word, "f-vector", K.f_vector, "vk:", vk_class(K, 2, "Z").verdict)
    cert = higher_obstruction_certificate(word)
    print("   ", cert.statement)

# %% Magnus expansions
print(expand("[x,y]", 2))
print(expand("[[x,y],y]", 3))
print("classes:", [lcs_class(w) for w in ("x", "[x,y]", "[[x,y],y]", "[x,[x,y]]")])

# %% Massey products on presentation complexes agree with Magnus coefficients
for relator, index in [("[x,y]", "xy"), ("[[x,y],y]", "xyy"), ("[x,[x,y]]", "xxy")]:
    P = one_relator_complex(relator)
    mer = meridian_classes(P)
    rep = massey_product([mer[g] for g in index], disk_chain(P))
    print(f"<{','.join(index)}> on {relator}: {rep.evaluation}  magnus: {expand(relator, len(index))[index]}")
