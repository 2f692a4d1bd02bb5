"""Frozen reference values for the regression sets.

Computed independently with mpmath at 50-digit working precision (tanh-sinh
quadrature with explicit error control, bracketed bisection for every root,
damped Newton for the centers), then cross-checked against closed forms where
those exist.  Printed literature values are truncated/rounded and therefore
only good to their displayed digits; these carry full double precision.
"""

import math

TWO_INTERVAL = {
    "pairs": [[-1.0, -0.3], [0.1, 1.0]],
    "z1": -0.102095451178535484,
    "m": (0.467109181246905884, 0.532890818753094116),
    "alpha": 0.00209545117853548366,
    "green_at_z1": 0.203838164528579247,
    "capacity": 0.4897898949251606,
    "beta": 1.19846479993386514,
    "a": (-0.636555437304985048, 0.561909362628880095),
    "w1": -0.0767415258546404365,
}

THREE_INTERVAL = {
    "pairs": [[-2.0, -0.9], [-0.7, 0.2], [0.5, 2.2]],
    "coeffs": (-0.280862776335245931, 0.450612418664958192, 1.0),
    "z": (-0.801175694805547742, 0.350563276140589551),
    "m": (0.3600798973579461, 0.1772355400727119, 0.462684562569341999),
    "green_at_z": (0.053262478759355198, 0.0724265932333270617),
    "capacity": 1.04579552892534756,
    "alpha": 0.100612418664958192,
    "a": (-1.41012299062107886, -0.195023006417053677, 1.38957384851683029),
}

SYMMETRIC_PAIR = {
    "pairs": [[-2.0, -1.0], [1.0, 2.0]],
    "m": (0.5, 0.5),
    "a": (-1.5, 1.5),
    "capacity": math.sqrt(3.0) / 2.0,
    "green_at_z1": 0.549306144334054846,  # log sqrt(3)
}

CANTOR2 = {
    "capacity": 0.228430704425425268,
    "a": (0.0567587571100652098, 0.278581475832093376,
          0.721418524167906624, 0.94324124288993479),
    "steps": 2,
}

CANTOR3 = {
    "capacity": 0.224752818755435493,
    "a": (0.0192618341512977869, 0.0931976855176645796, 0.24083802611103849,
          0.314797535368453276, 0.685202464631546724, 0.75916197388896151,
          0.90680231448233542, 0.980738165848702213),
    "m": (0.172127872350408997, 0.11614447240914607, 0.0991084737285020486,
          0.112619181511942884, 0.112619181511942884, 0.0991084737285020486,
          0.11614447240914607, 0.172127872350408997),
    "steps": 3,
}

TOUCHING = {
    "pairs": [[-1.0, 1.0], [1.2, 1.4]],
    "z1": 1.10742328730619726,
    "m": (0.774443516355981787, 0.225556483644018213),
    "green_at_z1": 0.128395210343099492,
    "capacity": 0.595101568622742475,
    "alpha": 0.192576712693802738,
    "a": (-0.0677126190642331757, 1.08627474389197604),
}

ARCCOSH_2 = math.log(2.0 + math.sqrt(3.0))  # 1.3169578969248167...


def cantor_pairs(k: int) -> list[list[float]]:
    iv = [(0.0, 1.0)]
    for _ in range(k):
        iv = [t for (lo, hi) in iv
              for t in ((lo, lo + (hi - lo) / 3), (hi - (hi - lo) / 3, hi))]
    return [list(p) for p in iv]
