"""Published case-study numbers: plants, controllers, LQR weights and Riccati solutions.

Every value below is transcribed once, here, so a typo shows up in exactly
one place.  Names follow the two case studies: G1 is the oscillatory plant
(alpha = 1.7), G2 the sluggish one (alpha = 0.7).
"""
import numpy as np

from .closed_loop import Fopid
from .lqr import WeightMatrices
from .plant import FoPlant

# G1(s) = 5 / (1.11 s^1.7 + 1)
G1 = FoPlant(gain=5.0, tau=1.11, alpha=1.7)
# G2(s) = 5 / (1.11 s^0.7 + 1)
G2 = FoPlant(gain=5.0, tau=1.11, alpha=0.7)

# LQR-weighted design for G1
C1_LQR = Fopid(kp=0.726453, ki=0.692674, kd=0.582319, lam=0.998773, mu=0.386624)
W1 = WeightMatrices(q1=0.474582, q2=0.011476, q3=0.01637, r=0.989131)
P1 = np.array(
    [
        [0.634755, 0.398973, 0.152102],
        [0.398973, 0.381525, 0.15952],
        [0.152102, 0.15952, 0.12787],
    ]
)
# direct ITAE + ISCO design for G1
C1_ITAE_ISCO = Fopid(kp=0.100718, ki=0.93109, kd=0.834496, lam=0.997477, mu=0.357018)

# LQR-weighted design for G2
C2_LQR = Fopid(kp=1.900408, ki=2.302821, kd=0.940017, lam=0.948591, mu=0.017093)
W2 = WeightMatrices(q1=1.599235, q2=0.012767, q3=0.012018, r=0.301573)
P2 = np.array(
    [
        [1.458666, 0.652811, 0.154172],
        [0.652811, 0.441259, 0.127231],
        [0.154172, 0.127231, 0.062933],
    ]
)
# direct ITAE + ISCO design for G2
C2_ITAE_ISCO = Fopid(kp=0.937303, ki=4.636422, kd=0.030218, lam=0.949254, mu=0.043881)


def lqr_vector(weights: WeightMatrices, controller: Fopid) -> list:
    """GA decision vector ``[q1, q2, q3, r, lam, mu]`` of a published LQR design."""
    return [weights.q1, weights.q2, weights.q3, weights.r, controller.lam, controller.mu]


def direct_vector(controller: Fopid) -> list:
    c = controller
    return [c.kp, c.ki, c.kd, c.lam, c.mu]


CASES = {
    "g1": {"plant": G1, "lqr": C1_LQR, "direct": C1_ITAE_ISCO, "weights": W1, "p": P1},
    "g2": {"plant": G2, "lqr": C2_LQR, "direct": C2_ITAE_ISCO, "weights": W2, "p": P2},
}

CONTROLLERS = {
    "c1_lqr": C1_LQR,
    "c1_itae_isco": C1_ITAE_ISCO,
    "c2_lqr": C2_LQR,
    "c2_itae_isco": C2_ITAE_ISCO,
}

PLANTS = {"g1": G1, "g2": G2}
