"""Dev scratch: validate the two catalog arrays before freezing them."""
import time

from dtakit.core import Interaction, MixedArray, rho
from dtakit.verify import coverage_index, is_detecting, is_detecting_brute, is_super_simple, lower_bound

TABLE1_ROWS = (
    (0, 0, 0, 0),
    (0, 1, 0, 1),
    (1, 0, 1, 1),
    (1, 1, 2, 1),
    (1, 2, 0, 1),
    (1, 2, 2, 2),
    (0, 0, 1, 2),
    (1, 1, 0, 0),
    (0, 1, 1, 0),
    (1, 2, 1, 0),
    (0, 0, 2, 1),
    (0, 2, 2, 0),
    (1, 0, 0, 2),
    (1, 0, 2, 0),
    (0, 2, 1, 1),
    (0, 2, 0, 2),
    (1, 1, 1, 2),
    (0, 1, 2, 2),
)

M1 = [
    [1,2,0,0,2,0,2,2,1,0,0,1,1,2,1,2,0,2,0,0,1,0,1,2],
    [2,1,2,0,0,2,2,1,0,1,1,2,0,1,1,2,2,2,0,1,0,2,1,2],
    [1,0,0,2,1,2,2,1,2,1,1,1,1,2,0,2,0,0,1,0,0,0,0,1],
    [2,3,1,2,1,3,3,0,1,1,2,3,0,2,0,1,3,0,2,1,3,2,0,0],
    [1,2,1,1,1,0,1,2,0,2,3,2,3,0,1,2,3,3,0,0,1,2,0,0],
]
M2 = [
    [0,0,2,1,2,2,1,2,1,1,2,0,1,2,2,0,1,1,1,0,0,0,2,1],
    [1,0,0,2,2,1,1,0,0,1,1,0,2,0,2,1,0,1,2,0,0,2,0,1],
    [1,2,2,0,2,0,2,1,0,1,0,2,2,1,1,2,0,2,1,2,0,1,0,2],
    [3,0,0,2,2,1,2,2,1,3,2,3,0,3,1,0,2,3,1,1,0,0,3,1],
    [1,0,1,0,3,3,2,2,2,0,1,2,2,3,0,3,3,3,3,3,2,1,0,1],
]

table1 = MixedArray((2, 3, 3, 3), TABLE1_ROWS)
rows34 = tuple(tuple(m[f][c] for f in range(5)) for m in (M1, M2) for c in range(24))
ex34 = MixedArray((3, 3, 3, 4, 4), rows34)

print("table1 rho((1,0),(3,0)) =", rho(table1, Interaction.of((1, 0), (3, 0))))
print("table1 coverage_index t=2:", coverage_index(table1, 2))
print("table1 lower_bound:", lower_bound(1, 2, table1.types))
t0 = time.perf_counter()
r = is_detecting(table1, 1, 2)
print("table1 is_detecting(1,2):", r.verdict, r.stats, f"{time.perf_counter()-t0:.3f}s")
t0 = time.perf_counter()
rb = is_detecting_brute(table1, 1, 2)
print("table1 brute:", rb.verdict, f"{time.perf_counter()-t0:.3f}s")
print("table1 super-simple t=2:", is_super_simple(table1, 2).verdict)

print("ex34 N,k:", ex34.n, ex34.k)
print("ex34 coverage_index t=2:", coverage_index(ex34, 2))
print("ex34 lower_bound d=2:", lower_bound(2, 2, ex34.types))
t0 = time.perf_counter()
r = is_detecting(ex34, 2, 2)
print("ex34 is_detecting(2,2):", r.verdict, r.stats, f"{time.perf_counter()-t0:.3f}s")
print("ex34 super-simple t=2:", is_super_simple(ex34, 2).verdict)
t0 = time.perf_counter()
rb = is_detecting_brute(ex34, 2, 2)
print("ex34 brute:", rb.verdict, f"{time.perf_counter()-t0:.3f}s")
