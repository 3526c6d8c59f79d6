"""Centralized numeric constants.

All transcendental constants live here, stored to 30 decimal digits where
irrational. Table-reproduction work is sensitive to constant drift, so there
is exactly one source of truth for each.
"""
import math

# Euler-Mascheroni constant, 30 decimal digits.
GAMMA = 0.577215664901532860606512090082

E_GAMMA = math.exp(GAMMA)  # 1.7810724179901979...

PI = math.pi
PI_OVER_4 = math.pi / 4.0

# Upper limit of the long verified scan for the product envelope; the upper
# envelope constant on (2, M_MID_LIMIT] evaluates the closed form here rather
# than re-running a 10^8-prime computation.
M_MID_LIMIT = 2 * 10 ** 9
M_BIG = 1.0 + 1.0 / (2.0 * math.log(M_MID_LIMIT) ** 2)  # 1.0010901255961504

# The classical lower product bound needs x above this.
RS_LOWER_MIN_X = 285

# Machine epsilon, used by the rounding-budget model (k * eps * terms).
EPS = math.ulp(1.0)
ROUNDING_BUDGET_K = 4.0
