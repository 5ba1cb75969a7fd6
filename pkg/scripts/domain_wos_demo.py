#!/usr/bin/env python3
"""Compare the walk-on-spheres harmonic-measure estimate against the
Carleman upper bound on a ray-divided disk.

Example:
    python scripts/domain_wos_demo.py --rays 2 --R 8 --walks 100000 --seed 7
"""

import argparse
import cmath
import math

from asymlab.geometry import (
    PathSystem,
    angular_measure,
    carleman_integral,
    carleman_report,
    check_sector_inequality,
)
from asymlab.wos import WosConfig, estimate_harmonic_measure


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rays", type=int, default=2, help="number of dividing rays")
    ap.add_argument("--R", type=float, default=8.0, help="outer radius")
    ap.add_argument("--R1", type=float, default=1.0, help="inner radius for the bound")
    ap.add_argument("--walks", type=int, default=100_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    sysm = PathSystem.equally_spaced_rays(args.rays)
    j = 1
    # start point: middle of domain j at radius R1/2
    sl = angular_measure(sysm, j, args.R1 / 2)
    theta = sl.arcs[0][0] + sl.phi / 2.0
    z1 = (args.R1 / 2) * cmath.exp(1j * theta)

    rep = carleman_report(sysm, j, args.R1, args.R)
    bound = (8.0 / math.pi) * math.exp(
        -math.pi * carleman_integral(sysm, j, abs(z1), args.R, tol=1e-8)
    )
    est = estimate_harmonic_measure(
        sysm, j, args.R, z1, WosConfig(args.walks, seed=args.seed)
    )

    print("domain %d of %d, start z1 = %.4f + %.4fi" % (j, args.rays, z1.real, z1.imag))
    print("angular measure phi(R1/2)     = %.6f rad" % sl.phi)
    lhs, rhs, holds = check_sector_inequality(sysm, args.R1)
    print("sector inequality             = %.6f >= %.6f  (%s)" % (lhs, rhs, holds))
    print("Carleman integral I(R1, R)    = %.6f" % rep.integral_I)
    print("omega upper bound at z1       = %.6g" % bound)
    print("WoS estimate                  = %.6g +/- %.2g (95%%)" % (est.omega_hat, est.ci95_halfwidth))
    print("log M lower bound (R1, R)     = %.6f" % rep.logM_lower)
    ok = est.omega_hat <= bound + 3.0 * est.ci95_halfwidth
    print("bound dominates estimate      =", ok)
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
