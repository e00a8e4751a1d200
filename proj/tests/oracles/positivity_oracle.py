"""Reference values for transport, diffusion and the Lax-Wendroff counterexample,
computed in exact rational arithmetic.
"""
from fractions import Fraction as Fr

# Lax-Wendroff on a unit spike: new values at i-1, i, i+1.
for nu in (Fr(1, 2), Fr(1, 4), Fr(9, 10)):
    print(f"LW nu={nu}: left={(nu * nu - nu) / 2} centre={1 - nu * nu} right={(nu * nu + nu) / 2}")

# Transport on 8 cells of [-1, 1], v = x on edges, dt = 1/8 (dx = 1/4), 3 steps.
M = 8
dx = Fr(2, M)
dt = Fr(1, 8)
v = [Fr(-1) + i * dx for i in range(M + 1)]
rho = [Fr(0), Fr(0), Fr(1), Fr(2), Fr(3), Fr(1), Fr(0), Fr(0)]
left = Fr(0)
for _ in range(3):
    flux = []
    for i in range(M + 1):
        nu = v[i] * dt / dx
        l = rho[i - 1] if i > 0 else 0
        r = rho[i] if i < M else 0
        flux.append(max(nu, 0) * l + min(nu, 0) * r)
    rho = [rho[c] + flux[c] - flux[c + 1] for c in range(M)]
    left += (max(flux[M], 0) + max(-flux[0], 0)) * dx
print("transport v=x 3 steps:", [str(r) for r in rho], "left_domain =", left)

# Diffusion on 7 cells, dx = 1/2, D = 1 on every edge, dt = 1/16, 2 steps.
M, dx, dt = 7, Fr(1, 2), Fr(1, 16)
r = dt / dx ** 2
rho = [Fr(0)] * M
rho[3] = Fr(1)
left = Fr(0)
for _ in range(2):
    ext = [Fr(0)] + rho + [Fr(0)]
    left += r * (rho[0] + rho[-1]) * dx
    rho = [ext[c + 1] + r * (ext[c + 2] - 2 * ext[c + 1] + ext[c]) for c in range(M)]
print("diffusion 2 steps:", [str(x) for x in rho], "left_domain =", left)
