"""
Writes every standard fixture K-loop, and the symétron of each, as table
files into a directory.

Usage example:

python -m kloops.processing.generate_fixtures \
    --base_dir /path/to/fixtures
"""
import argparse
from pathlib import Path

from ..constants import DEFAULT_FIXTURE_DIR, TABLE_SUFFIX
from ..constructions import standard_fixtures
from ..interp import kloop_to_symetron
from ..tables import write_table


def generate_fixtures(base_dir, symetrons=True, ignore_existing=False) -> list:
    """
    Writes the fixtures returned by `standard_fixtures`.

    Parameters
    ----------
    base_dir : str or Path
        Output directory; created if missing.
    symetrons : bool, optional
        Also write `<name>_symetron.tbl` for every fixture, by default True.
    ignore_existing : bool, optional
        Overwrite files that already exist, by default False.

    Returns
    -------
    list of Path
        The files written.
    """
    base_dir = Path(base_dir).expanduser()
    base_dir.mkdir(parents=True, exist_ok=True)

    written = []
    for name, L in standard_fixtures().items():
        tables = {name: L.table}
        if symetrons:
            tables[f"{name}_symetron"] = kloop_to_symetron(L).table

        for stem, table in tables.items():
            path = base_dir / f"{stem}{TABLE_SUFFIX}"
            if path.exists() and not ignore_existing:
                print(f"{path} already exists, skipping.")
                continue
            write_table(table, path)
            written.append(path)
            print(f"Wrote {path} (order {table.order})")

    return written


def main(base_dir, no_symetrons, ignore_existing):
    generate_fixtures(base_dir, symetrons=not no_symetrons, ignore_existing=ignore_existing)


def parse_args():
    parser = argparse.ArgumentParser(
        description="""
        Writes the standard fixture K-loops (cyclic, products, half-sandwich
        loops of the Frobenius group of order 21 and of the Heisenberg group of
        order 27) and their symétrons as table files.
        """,
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument(
        "--base_dir",
        type=str,
        help="Directory where the table files are written",
        default=str(DEFAULT_FIXTURE_DIR),
    )
    parser.add_argument(
        "--no_symetrons",
        action="store_true",
        help="Only write the K-loop tables",
    )
    parser.add_argument(
        "--ignore_existing",
        action="store_true",
        help="Overwrite table files that already exist.",
    )

    return parser.parse_args()


if __name__ == "__main__":
    args = parse_args()
    main(**vars(args))
