"""Writes data/fixtures/scenario_ssp126.csv, a stylized low-emission trajectory.

E follows a half-cosine from 11.1 GtC/yr in 2023, first negative in 2077.
G is 0.46 E minus a smooth sink-strengthening ramp that starts in 2045 and is
scaled so that G first turns negative in 2060.
"""
import csv
import math
import pathlib

YEARS = range(2023, 2101)
SPAN = 2100 - 2023
RATIO = 0.575
B = 11.1 / (1.0 + RATIO)
A = RATIO * B
AF = 0.46


def emissions(t):
    return A + B * math.cos(math.pi * (t - 2023) / SPAN)


def ramp(t):
    x = min(max((t - 2045) / 30.0, 0.0), 1.0)
    return x * x * (3.0 - 2.0 * x)


# Scale the ramp so that G(2059.5) = 0.
H = AF * emissions(2059.5) / ramp(2059.5)


def growth(t):
    return AF * emissions(t) - H * ramp(t)


def main():
    out = pathlib.Path(__file__).resolve().parent / "fixtures" / "scenario_ssp126.csv"
    with out.open("w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["year", "g", "e"])
        for t in YEARS:
            w.writerow([t, f"{growth(t):.6f}", f"{emissions(t):.6f}"])
    first_neg_e = next(t for t in YEARS if emissions(t) < 0)
    first_neg_g = next(t for t in YEARS if growth(t) < 0)
    print(f"wrote {out}: E < 0 from {first_neg_e}, G < 0 from {first_neg_g}")


if __name__ == "__main__":
    main()
