"""Published polynomial data for the finite-monodromy strata of H^4.

Everything here is plain text in the invariants ``J2 .. J10`` (weight ``k``
for ``Jk``) or in slice parameters.  Slice parameters: ``d`` is delta, ``s``
is sigma, and ``s1, s2, s3`` are the elementary symmetric functions of the
orthotropic eigen-parameters.  Parsing happens once at import.
"""

from __future__ import annotations

from ._poly import Poly

J_WEIGHTS = {f"J{k}": k for k in range(2, 11)}
SIGMA_WEIGHTS = {"s1": 1, "s2": 2, "s3": 3}

CUBIC_SYZYGIES = [
    "3 J4 = J2^2",
    "J5 = 0",
    "30 J3^2 = J2^3",
    "9 J6 = J2^3",
    "J7 = 0",
    "J8 = 0",
    "J9 = 0",
    "J10 = 0",
]

TRANSVERSE_SYZYGIES = [
    "98 J4 = 41 J2^2",
    "63 J5 = 25 J3 J2",
    "3430 J3^2 = 81 J2^3",
    "1372 J6 = 283 J2^3",
    "882 J7 = 275 J2^2 J3",
    "4802 J8 = 165 J2^4",
    "12348 J9 = 3025 J2^3 J3",
    "67228 J10 = 1815 J2^5",
]

TRIGONAL_SYZYGIES = [
    "192 J6 = -51 J2^3 + 216 J2 J4 + 10 J3^2",
    "36 J7 = -2 J2^2 J3 + 6 J3 J4 + 27 J2 J5",
    "768 J4^2 = -99 J2^4 + 552 J2^2 J4 + 10 J2 J3^2 + 240 J3 J5",
    "240 J8 = -33 J2^4 + 96 J2^2 J4 + 30 J2 J3^2 + 40 J3 J5",
    "576 J4 J5 = -41 J2^3 J3 + 120 J2 J3 J4 + 216 J2^2 J5 + 30 J3^3",
    "1152 J9 = -99 J2^3 J3 + 296 J2 J3 J4 + 648 J2^2 J5 + 10 J3^3",
    "1440 J5^2 = -11 J2^5 + 32 J2^3 J4 - 70 J2^2 J3^2 + 240 J2 J3 J5 + 240 J3^2 J4",
    "8640 J10 = -891 J2^5 + 2592 J2^3 J4 + 730 J2^2 J3^2 + 2160 J2 J3 J5 + 240 J3^2 J4",
]

TETRAGONAL_SYZYGIES = [
    "6 J6 = -3 J2^3 + 9 J2 J4 + 20 J3^2",
    "3 J7 = J2^2 J3 - 3 J3 J4 + 3 J2 J5",
    "6 J4^2 = -3 J2^4 + 9 J2^2 J4 + 20 J2 J3^2 - 20 J3 J5",
    "5 J8 = -3 J2^4 + 6 J2^2 J4 + 30 J2 J3^2 - 5 J3 J5",
    "3 J4 J5 = 7 J2^3 J3 - 15 J2 J3 J4 + 3 J2^2 J5 - 60 J3^3",
    "6 J9 = 5 J2^3 J3 - 13 J2 J3 J4 + 6 J2^2 J5 - 20 J3^3",
    "5 J5^2 = -2 J2^5 + 4 J2^3 J4 + 10 J2^2 J3^2 - 20 J2 J3 J5 + 30 J3^2 J4",
    "15 J10 = -9 J2^5 + 18 J2^3 J4 + 85 J2^2 J3^2 - 30 J2 J3 J5 + 15 J3^2 J4",
]

ORTHOTROPIC_SYZYGIES = [
    # (a)
    "- 1350 J3 J7 - 840 J4 J6 + 465 J2^2 J6 + 270 J5^2 + 720 J2 J3 J5 + 747 J2 J4^2"
    " - 170 J3^2 J4 - 564 J2^3 J4 + 70 J2^2 J3^2 + 84 J2^5",
    # (b)
    "- 1620 J4 J7 + 810 J2^2 J7 + 360 J5 J6 - 1110 J2 J3 J6 + 999 J2 J4 J5 + 960 J3^2 J5"
    " - 549 J2^3 J5 - 972 J3 J4^2 + 1638 J2^2 J3 J4 - 80 J2 J3^3 - 312 J2^4 J3",
    # (c)
    "4050 J5 J7 - 25650 J2 J3 J7 - 14310 J2 J4 J6 + 9600 J3^2 J6 + 7965 J2^3 J6"
    " + 9450 J3 J4 J5 + 10530 J2^2 J3 J5 + 1134 J4^3 + 11259 J2^2 J4^2"
    " - 12330 J2 J3^2 J4 - 9018 J2^4 J4 + 400 J3^4 + 3270 J2^3 J3^2 + 1350 J2^6",
    # (d)
    "- 12150 J2 J3 J7 + 3600 J6^2 - 11610 J2 J4 J6 + 9750 J3^2 J6 + 4410 J2^3 J6"
    " + 8505 J3 J4 J5 + 3645 J2^2 J3 J5 + 1458 J4^3 + 5670 J2^2 J4^2"
    " - 10710 J2 J3^2 J4 - 4104 J2^4 J4 + 400 J3^4 + 2580 J2^3 J3^2 + 576 J2^6",
    # (e)
    "1800 J6 J7 - 10800 J2 J4 J7 + 4800 J3^2 J7 + 4950 J2^3 J7 + 4020 J3 J4 J6"
    " - 8370 J2^2 J3 J6 + 162 J4^2 J5 + 7371 J2^2 J4 J5 + 2880 J2 J3^2 J5"
    " - 3483 J2^4 J5 - 9216 J2 J3 J4^2 + 640 J3^3 J4 + 11946 J2^3 J3 J4"
    " - 720 J2^2 J3^3 - 2160 J2^5 J3",
    # (f)
    "60750 J7^2 + 178200 J3 J4 J7 - 546750 J2^2 J3 J7 + 3780 J4^2 J6 - 246780 J2^2 J4 J6"
    " + 348000 J2 J3^2 J6 + 137025 J2^4 J6 + 116640 J2 J3 J4 J5 - 75600 J3^3 J5"
    " + 223560 J2^3 J3 J5 + 29808 J2 J4^3 + 82170 J3^2 J4^2 + 177660 J2^3 J4^2"
    " - 438390 J2^2 J3^2 J4 - 148014 J2^5 J4 + 17200 J2 J3^4 + 102000 J2^4 J3^2 + 22221 J2^7",
]

# reality of sigma for the D3 and D4 slices (same polynomial for both)
SIGMA_REALITY = "2 J2^5 - 12 J2^3 J4 + 18 J2 J4^2 - 35 J5^2"

# 432 times the discriminant of the orthotropic eigen-parameter cubic
ORTHO_DISCRIMINANT = "6 J6 - 9 J2 J4 - 20 J3^2 + 3 J2^3"

# numerator of the second Hermite minor: Delta2 = N2 / (14 disc^2), with
# N2 = 6 J2 disc^2 - 405 (3 J7 - 3 J2 J5 + 3 J3 J4 - J2^2 J3)^2 expanded
ORTHO_N2 = (
    "54 J2^7 - 324 J2^5 J4 - 1125 J2^4 J3^2 + 216 J2^4 J6 - 2430 J2^3 J3 J5"
    " + 486 J2^3 J4^2 + 4590 J2^2 J3^2 J4 + 2430 J2^2 J3 J7 - 648 J2^2 J4 J6"
    " - 3645 J2^2 J5^2 + 2400 J2 J3^4 - 1440 J2 J3^2 J6 + 7290 J2 J3 J4 J5"
    " + 7290 J2 J5 J7 + 216 J2 J6^2 - 3645 J3^2 J4^2 - 7290 J3 J4 J7 - 3645 J7^2"
)

# strictness polynomials separating an open stratum from its boundary
NOT_CUBIC_POINT = "3 J4 - J2^2"
NOT_TRANSVERSE_D3 = "98 J4 - 41 J2^2"
NOT_TRANSVERSE_D4 = "5 J2^3 - 8 J2 J4 - 70 J3^2"
ORTHO_SIGMA1_NUM = "3 J7 - 3 J2 J5 + 3 J3 J4 - J2^2 J3"

# Invariants along each slice, keyed by k in Jk.
CUBIC_PARAMETRIC = {
    2: "480 d^2", 3: "1920 d^3", 4: "76800 d^4", 5: "0", 6: "12288000 d^6",
    7: "0", 8: "0", 9: "0", 10: "0",
}

TRANSVERSE_PARAMETRIC = {
    2: "280 d^2", 3: "720 d^3", 4: "32800 d^4", 5: "80000 d^5", 6: "4528000 d^6",
    7: "17600000 d^7", 8: "211200000 d^8", 9: "3872000000 d^9", 10: "46464000000 d^10",
}

ORTHOTROPIC_PARAMETRIC = {
    2: "-14 s2 + 8 s1^2",
    3: "-6 s1 s2 + 24 s3",
    4: "40 s1 s3 - 112 s1^2 s2 + 68 s2^2 + 32 s1^4",
    5: "64 s1^2 s3 - 12 s2 s3 - 16 s1^3 s2 + 28 s1 s2^2",
    6: "-344 s2^3 + 192 s1^3 s3 - 24 s3^2 - 672 s1^4 s2 + 1008 s1^2 s2^2 + 128 s1^6"
       " - 504 s1 s2 s3",
    7: "-432 s1^2 s2 s3 + 384 s1^4 s3 + 104 s2^2 s3 - 96 s1 s3^2 - 64 s1^5 s2"
       " + 192 s1^3 s2^2 - 248 s1 s2^3",
    8: "608 s1^3 s2 s3 + 80 s2^4 - 768 s1^5 s3 + 192 s1^2 s3^2 + 72 s2 s3^2"
       " + 288 s1^4 s2^2 - 416 s1^2 s2^3 + 744 s1 s2^2 s3",
    9: "-5248 s1^4 s2 s3 + 2880 s1^2 s2^2 s3 + 1328 s1 s2 s3^2 + 144 s3^3 + 2304 s1^6 s3"
       " - 1152 s1^3 s3^2 - 880 s2^3 s3 - 256 s1^7 s2 + 1024 s1^5 s2^2"
       " - 2304 s1^3 s2^3 + 2160 s1 s2^4",
    10: "10752 s1^5 s2 s3 - 1280 s1^3 s2^2 s3 - 5664 s1 s2^3 s3 - 2688 s1^2 s2 s3^2"
        " - 800 s2^5 - 4608 s1^7 s3 + 2304 s1^4 s3^2 - 1344 s2^2 s3^2 - 288 s1 s3^3"
        " + 1536 s1^6 s2^2 - 4224 s1^4 s2^3 + 3104 s1^2 s2^4",
}


def _parsed(items):
    return [Poly.parse(t) for t in items]


CUBIC = _parsed(CUBIC_SYZYGIES)
TRANSVERSE = _parsed(TRANSVERSE_SYZYGIES)
TRIGONAL = _parsed(TRIGONAL_SYZYGIES)
TETRAGONAL = _parsed(TETRAGONAL_SYZYGIES)
ORTHOTROPIC = _parsed(ORTHOTROPIC_SYZYGIES)
ORTHO_P = {k: Poly.parse(v) for k, v in ORTHOTROPIC_PARAMETRIC.items()}


def trigonal_parametric(d: float, s: float) -> list[float]:
    """``J2 .. J10`` along the D3 slice."""
    a = 50.0 * d**2 - s**2
    b = 22.0 * d**2 + s**2
    return [
        280.0 * d**2 + 16.0 * s**2,
        144.0 * d * (5.0 * d**2 - s**2),
        32800.0 * d**4 + 2720.0 * s**2 * d**2 + 88.0 * s**4,
        32.0 * d * a**2,
        4528000.0 * d**6 + 436800.0 * s**2 * d**4 + 20640.0 * s**4 * d**2 + 496.0 * s**6,
        320.0 * d * b * a**2,
        3840.0 * d**2 * b * a**2,
        3200.0 * d * a**2 * b**2,
        38400.0 * d**2 * a**2 * b**2,
    ]


def tetragonal_parametric(d: float, s: float) -> list[float]:
    """``J2 .. J10`` along the D4 slice."""
    a = (5.0 * d - s) ** 2 * (5.0 * d + s) ** 2
    b = 55.0 * d**2 + s**2
    return [
        8.0 * s**2 + 280.0 * d**2,
        48.0 * d * (s**2 + 15.0 * d**2),
        32.0 * s**4 + 960.0 * d**2 * s**2 + 32800.0 * d**4,
        128.0 * d * a,
        128.0 * s**6 + 5760.0 * s**4 * d**2 + 86400.0 * s**2 * d**4 + 4528000.0 * d**6,
        512.0 * d * b * a,
        6144.0 * d**2 * b * a,
        2048.0 * d * a * b**2,
        24576.0 * d**2 * a * b**2,
    ]
