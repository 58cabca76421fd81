from pathlib import Path

DEFAULT_CAP = 1_000_000

ENUMERATION_ORDER_BOUND = 8
CANONICAL_FORM_ORDER_BOUND = 9
INDECOMPOSABLE_SEARCH_BOUND = 7

# integer parameters of the identity suite range over [-f * order, f * order]
POWER_WINDOW_FACTOR = 2

STRUCTURE_KINDS = ("loop", "bol", "kloop", "symetron")
OUTPUT_FORMATS = ("text", "json")

DEFAULT_FIXTURE_DIR = Path("~/.kloops_data/fixtures")
TABLE_SUFFIX = ".tbl"
