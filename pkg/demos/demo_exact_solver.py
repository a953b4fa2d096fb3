#!/usr/bin/env python3
"""Solve the continuous Lyapunov equation exactly and recover the drift.

Walks the smallest interesting example: a stable drift matrix supported on
the directed 3-cycle, its equilibrium covariance, and the inverse problem
that recovers the drift uniquely from that covariance.
"""

from lyapid import (
    DriftMatrix,
    RatMatrix,
    VolatilityMatrix,
    fiber,
    format_matrix_csv,
    solve_for_sigma,
)
from lyapid.catalog import three_cycle

g = three_cycle()
print("graph:", g)

# edge i -> j carries drift entry m_ji, so the 3-cycle allows m_21, m_32, m_13
m = RatMatrix.from_rows(
    [
        [-4, 0, 1],
        [2, -5, 0],
        [0, 3, -6],
    ]
)
drift = DriftMatrix(g, m)
print("drift stable:", drift.stable)

vol = VolatilityMatrix.identity(3)
sigma = solve_for_sigma(drift, vol)
print("\nequilibrium covariance (exact rationals):")
print(format_matrix_csv(sigma.matrix))

residual = m @ sigma.matrix + sigma.matrix @ m.transpose() + vol.matrix
print("\nresidual of M Sigma + Sigma M^T + C:", set(residual.entries))

result = fiber(sigma, g, vol)
print("\nfiber kind:", result.kind)
print("recovered drift equals the original:", result.drift.matrix == m)
