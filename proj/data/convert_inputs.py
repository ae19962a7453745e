"""Convert upstream downloads into the CSV inputs read by afcli.

  python convert_inputs.py carbon --budget Global_Carbon_Budget_2023_v1.1.xlsx \
      --lulcc-hc hc.csv --lulcc-vma vma.csv --out carbon.csv
  python convert_inputs.py enso --nino3 nino3.long.anom.data --out enso_monthly.csv
  python convert_inputs.py covariates --enso-monthly enso_monthly.csv --vai vai.csv --out covariates.csv

All carbon quantities must already be in GtC/yr. Side files for the alternative
land-use datasets and the volcanic index are two-column CSVs (year,value).
"""
import argparse
import sys

import pandas as pd


def budget_table(path, sheet):
    raw = pd.read_excel(path, sheet_name=sheet, header=None)
    header = raw.index[raw.iloc[:, 0].astype(str).str.strip().str.lower() == "year"]
    if len(header) == 0:
        sys.exit(f"{path}: no 'Year' header row in sheet '{sheet}'")
    table = raw.iloc[header[0] + 1 :].copy()
    table.columns = [str(c).strip().lower() for c in raw.iloc[header[0]]]
    table = table.dropna(subset=["year"])
    table["year"] = table["year"].astype(int)
    return table.set_index("year")


def column(table, name):
    matches = [c for c in table.columns if c.startswith(name.lower())]
    if not matches:
        sys.exit(f"column '{name}' not found; have: {', '.join(table.columns)}")
    return pd.to_numeric(table[matches[0]])


def side_file(path):
    df = pd.read_csv(path)
    df.columns = ["year", "value"]
    return df.set_index("year")["value"]


def carbon(args):
    t = budget_table(args.budget, args.sheet)
    out = pd.DataFrame(index=t.index)
    out["g"] = column(t, args.growth)
    out["e_ff"] = column(t, args.fossil) - column(t, args.carbonation)
    out["e_lulcc_gcp"] = column(t, args.lulcc)
    out["e_lulcc_hc"] = side_file(args.lulcc_hc) if args.lulcc_hc else float("nan")
    out["e_lulcc_vma"] = side_file(args.lulcc_vma) if args.lulcc_vma else float("nan")
    out = out.loc[args.first : args.last]
    if out[["g", "e_ff", "e_lulcc_gcp"]].isna().any().any():
        sys.exit("missing values in the selected years")
    out.index.name = "year"
    out.to_csv(args.out, float_format="%.6g", na_rep="")


def enso(args):
    rows = []
    with open(args.nino3) as f:
        next(f)
        for line in f:
            parts = line.split()
            if len(parts) != 13 or not parts[0].isdigit():
                break
            for month, value in enumerate(parts[1:], start=1):
                v = float(value)
                if v > args.missing:
                    rows.append((int(parts[0]), month, v))
    pd.DataFrame(rows, columns=["year", "month", "value"]).to_csv(args.out, index=False)


def covariates(args):
    m = pd.read_csv(args.enso_monthly)
    # September..August means, labelled by the year containing August.
    m["season"] = m["year"] + (m["month"] >= 9).astype(int)
    counts = m.groupby("season")["value"].count()
    annual = m.groupby("season")["value"].mean()[counts == 12]
    vai = side_file(args.vai)
    out = pd.DataFrame({"enso": annual, "vai": vai}).dropna()
    out.index.name = "year"
    out.to_csv(args.out, float_format="%.6g")


def main():
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("carbon")
    c.add_argument("--budget", required=True)
    c.add_argument("--sheet", default="Global Carbon Budget")
    c.add_argument("--growth", default="atmospheric growth")
    c.add_argument("--fossil", default="fossil emissions excluding carbonation")
    c.add_argument("--carbonation", default="cement carbonation sink")
    c.add_argument("--lulcc", default="land-use change emissions")
    c.add_argument("--lulcc-hc")
    c.add_argument("--lulcc-vma")
    c.add_argument("--first", type=int, default=1959)
    c.add_argument("--last", type=int, default=2022)
    c.add_argument("--out", default="carbon.csv")
    c.set_defaults(fn=carbon)

    e = sub.add_parser("enso")
    e.add_argument("--nino3", required=True)
    e.add_argument("--missing", type=float, default=-99.0)
    e.add_argument("--out", default="enso_monthly.csv")
    e.set_defaults(fn=enso)

    v = sub.add_parser("covariates")
    v.add_argument("--enso-monthly", required=True)
    v.add_argument("--vai", required=True)
    v.add_argument("--out", default="covariates.csv")
    v.set_defaults(fn=covariates)

    args = p.parse_args()
    args.fn(args)


if __name__ == "__main__":
    main()
