"""
Reads every table file of a directory, builds its invariant report and
writes one CSV row per file.

Usage example:

python -m kloops.processing.sweep \
    --base_dir /path/to/fixtures \
    --output /path/to/summary.csv
"""
import argparse
from pathlib import Path

from ..constants import DEFAULT_CAP, DEFAULT_FIXTURE_DIR, TABLE_SUFFIX
from ..errors import AlgebraError
from ..loops import make_loop
from ..report import loop_report, symetron_report
from ..symetron import make_symetron
from ..tables import read_table


def sweep_row(path, cap=DEFAULT_CAP) -> dict:
    """
    Builds a flat report for one table file. Files whose name ends in
    "_symetron" are read as symétrons, the others as loops.

    Parameters
    ----------
    path : str or Path
        A table file.
    cap : int, optional
        Cap for group closures and enumerations.

    Returns
    -------
    dict
        "file", "kind", "order", then one column per flag, group size, count
        and identity item. A file that fails validation gets kind "invalid"
        and the error in "error".
    """
    path = Path(path)
    row = {"file": path.name}
    try:
        table = read_table(path)
        if path.stem.endswith("_symetron"):
            report = symetron_report(make_symetron(table), cap)
        else:
            report = loop_report(make_loop(table), cap)
    except AlgebraError as e:
        row.update(kind="invalid", error=f"{type(e).__name__}: {e}")
        return row

    row.update(kind=report.kind, order=report.order)
    row.update(report.flags)
    row.update(report.group_sizes)
    row.update(report.counts)
    row.update({f"identity_{k}": v for k, v in report.identities.items()})
    return row


def sweep(base_dir, cap=DEFAULT_CAP):
    """
    Returns
    -------
    pandas.DataFrame
        One row per table file of `base_dir`, sorted by file name.
    """
    import pandas as pd

    base_dir = Path(base_dir).expanduser()
    if not base_dir.exists():
        raise ValueError(f"Directory {base_dir} does not exist. Run generate_fixtures first.")

    rows = []
    for path in sorted(base_dir.glob(f"*{TABLE_SUFFIX}")):
        print(f"Processing {path.name}...")
        rows.append(sweep_row(path, cap))
    return pd.DataFrame(rows)


def main(base_dir, output, cap):
    df = sweep(base_dir, cap)
    if output is None:
        output = Path(base_dir).expanduser() / "summary.csv"
    df.to_csv(Path(output).expanduser(), index=False)
    print(f"Wrote {len(df)} rows to {output}")


def parse_args():
    parser = argparse.ArgumentParser(
        description="""
        Builds the invariant report of every table file in a directory and
        writes them as a CSV summary.
        """,
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument(
        "--base_dir",
        type=str,
        help="Directory holding the table files",
        default=str(DEFAULT_FIXTURE_DIR),
    )
    parser.add_argument(
        "--output",
        type=str,
        help="CSV file to write; defaults to summary.csv inside base_dir",
        default=None,
    )
    parser.add_argument(
        "--cap",
        type=int,
        help="Cap for group closures and enumerations",
        default=DEFAULT_CAP,
    )

    return parser.parse_args()


if __name__ == "__main__":
    args = parse_args()
    main(**vars(args))
