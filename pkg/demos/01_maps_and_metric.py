"""Tour of the phase spaces and the map library.

Points live on the circle or the 2-torus with wrap-around distance, and every
map in the library preserves area exactly.  This script shows both facts and
iterates the cat map a few steps.
"""

from shadowlab import TorusPoint, cat_map, library_maps, orbit_segment, torus_dist, volume_defect

p = TorusPoint((0.95, 0.10))
q = TorusPoint((0.05, 0.90))
print("wrap-around metric")
print(f"  d({p.coords}, {q.coords}) = {torus_dist(p, q):.6f}   (not ~1.2: each axis wraps)")
print()

print("map library: label, dimension, measured volume defect at 128 samples per axis")
for f in library_maps():
    print(f"  {f.label:32s} dim={f.dim}   defect={volume_defect(f):.3e}")
print()

f = cat_map()
seg = orbit_segment(f, (0.125, 0.25), 3)
print("cat map orbit segment around (0.125, 0.25), k = -3..3")
for k in range(-3, 4):
    x, y = seg.point(k).coords
    print(f"  k={k:+d}   ({x:.6f}, {y:.6f})")
print()
print("k = -3 and k = +3 coincide: the integer matrix permutes every lattice of")
print("rational points, so this denominator-8 anchor is periodic (period 6).")
print("the backward leg uses the exact integer inverse [[1,-1],[-1,2]], so the")
print("fractions stay exact in floating point.")
