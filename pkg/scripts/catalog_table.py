"""Pinch number, class and excess for every catalog surface, plus the ruled grid."""

from pinchscheme.catalog import catalog_models, ruled_model
from pinchscheme.chowlattice import class_degree, classify, pinch_number, ruled_pinch

print(f"{'surface':<10} {'N':>2} {'deg':>3} {'pinch':>5} {'class':>5} {'i':>2}  kind")
for S in catalog_models(9):
    c = classify(S)
    print(f"{S.name:<10} {S.ambient:>2} {S.degree:>3} {pinch_number(S):>5} "
          f"{class_degree(S):>5} {c.i:>2}  {c.kind}")

print("\nruled: pinch by (g, d); lattice value == 2d + 4g - 4 everywhere")
print("g\\d " + "".join(f"{d:>4}" for d in range(3, 13)))
for g in range(4):
    vals = [pinch_number(ruled_model(g, d)) for d in range(3, 13)]
    assert vals == [ruled_pinch(d, g) for d in range(3, 13)]
    print(f"{g:<3} " + "".join(f"{v:>4}" for v in vals))
