import argparse
import ast
import glob
import json
from pathlib import Path
from textwrap import dedent

# sections whose entries are "name : type" lines followed by an indented description
TABLE_SECTIONS = ("Parameters", "Attributes")
LISTING_SECTIONS = ("Returns", "Raises")
CODE_SECTIONS = ("Examples",)


def render_default(node: ast.expr) -> str:
    if isinstance(node, ast.Constant) and isinstance(node.value, str):
        return f'"{node.value}"'
    return ast.unparse(node)


def is_underline(lines, i):
    if i >= len(lines):
        return False
    line = lines[i].strip()
    return len(line) >= 3 and set(line) == {"-"}


def signature_of(node: ast.FunctionDef, drop_self=False) -> dict:
    """
    Reads the arguments of a function definition, keyword-only ones included.

    Returns
    -------
    dict
        Maps each argument name to a dict with the keys `type`, `default`
        and `kind` ("positional", "keyword" or "star").
    """
    arguments = node.args
    positional = arguments.posonlyargs + arguments.args
    defaults = [None] * (len(positional) - len(arguments.defaults)) + list(arguments.defaults)

    args = {}
    for arg, default in zip(positional, defaults):
        args[arg.arg] = _argument(arg, default, "positional")
    if arguments.vararg is not None:
        args[arguments.vararg.arg] = _argument(arguments.vararg, None, "star")
    for arg, default in zip(arguments.kwonlyargs, arguments.kw_defaults):
        args[arg.arg] = _argument(arg, default, "keyword")

    if drop_self:
        args.pop("self", None)
    return args


def _argument(arg: ast.arg, default, kind):
    return {
        "type": None if arg.annotation is None else ast.unparse(arg.annotation),
        "default": None if default is None else render_default(default),
        "kind": kind,
    }


def dataclass_fields(node: ast.ClassDef) -> dict:
    """Annotated class-level names, the way a dataclass declares its fields."""
    fields = {}
    for item in node.body:
        if isinstance(item, ast.AnnAssign) and isinstance(item.target, ast.Name):
            if item.target.id.startswith("_"):
                continue
            fields[item.target.id] = {
                "type": ast.unparse(item.annotation),
                "default": None if item.value is None else render_default(item.value),
                "kind": "positional",
            }
    return fields


def split_type_and_default(text: str):
    """
    Splits "int, default 3" or "int, optional" into the type and the default.
    """
    text = text.replace(",optional", ", optional").replace(",default", ", default")
    if text.endswith(", optional"):
        return text[: -len(", optional")].strip(), None
    if ", default" in text:
        type_, default = text.split(", default", maxsplit=1)
        return type_.strip(), default.strip().lstrip("=").strip()
    return text.strip(), None


def parse_entries(lines: "list[str]") -> dict:
    """
    Parses the entries of a numpy-style section into
    `{name: {"type", "default", "description"}}`.
    """
    entries = {}
    current = None

    for line in lines:
        if not line.strip():
            continue
        if line.startswith(" "):
            if current is None:
                raise ValueError(f"Description without an entry: {line!r}")
            entries[current]["description"].append(line)
            continue

        if ":" in line:
            name, rest = line.split(":", maxsplit=1)
            type_, default = split_type_and_default(rest)
        else:
            name, type_, default = line, None, None
        current = name.strip()
        entries[current] = {"type": type_ or None, "default": default, "description": []}

    for entry in entries.values():
        entry["description"] = dedent("\n".join(entry["description"])).strip()
    return entries


def parse_docstring(content: str) -> dict:
    """
    Splits a docstring into its numpy-style sections. Text before the first
    underlined header lands in "Description"; table and listing sections are
    parsed into entries, the others stay lists of lines.
    """
    lines = content.splitlines()
    sections = {"Description": []}
    key = "Description"

    for i, line in enumerate(lines):
        if is_underline(lines, i + 1):
            key = line.strip()
            sections[key] = []
        elif not is_underline(lines, i):
            sections[key].append(line)

    for key in TABLE_SECTIONS + LISTING_SECTIONS:
        if key in sections:
            sections[key] = parse_entries(sections[key])
    return sections


def md_header(text, level):
    return "#" * level + f" {text}\n\n"


def entries_to_table(entries: dict, signature: dict = None) -> str:
    """
    Renders parsed entries as a markdown table. Types and defaults missing
    from the docstring are taken from the signature; when both exist and
    disagree, the signature value is shown in parentheses.
    """
    signature = signature or {}
    rows = ["| Name | Type | Default | Description |", "| ---- | ---- | ------- | ----------- |"]

    for name, entry in entries.items():
        declared = signature.get(name, {})
        cells = []
        for field in ("type", "default"):
            documented, actual = entry[field], declared.get(field)
            if documented is None:
                documented = actual
            elif actual is not None and documented != actual:
                documented = f"{documented} ({actual})"
            cells.append("" if documented is None else f"`{documented}`")
        description = entry["description"].replace("\n", " ")
        rows.append(f"| `{name}` | {cells[0]} | {cells[1]} | {description} |")

    return "\n".join(rows) + "\n"


def entries_to_listing(entries: dict) -> str:
    parts = []
    for name, entry in entries.items():
        label = name if entry["type"] is None else f"{name} : {entry['type']}"
        parts.append(f"`{label}`\n: {entry['description']}".rstrip())
    return "\n\n".join(parts) + "\n"


def format_signature(qualified_name, signature: dict) -> str:
    pieces, starred = [], False
    for name, arg in signature.items():
        if arg["kind"] == "star":
            pieces.append(f"*{name}")
            starred = True
            continue
        if arg["kind"] == "keyword" and not starred:
            pieces.append("*")
            starred = True
        pieces.append(name if arg["default"] is None else f"{name}={arg['default']}")
    return f"```python\n{qualified_name}({', '.join(pieces)})\n```\n\n"


def format_node(name, node: dict, module_prefix, level=2) -> str:
    """
    Renders one documented function, class or method: a header, the call
    signature, then every docstring section in order.
    """
    qualified = f"{module_prefix}.{name}" if module_prefix else name
    markdown = md_header(f"`{name}`", level)
    markdown += format_signature(qualified, node["args"])

    sections = node["docstring"]
    if sections is None:
        if node.get("fields"):
            markdown += md_header("Attributes", max(4, level + 1))
            markdown += entries_to_table(
                {k: {"type": None, "default": None, "description": ""} for k in node["fields"]},
                node["fields"],
            )
        return markdown

    for key, value in sections.items():
        if key == "Description":
            text = "\n".join(value).strip()
            if text:
                markdown += text + "\n\n"
            continue

        markdown += md_header(key, max(4, level + 1))
        if key in TABLE_SECTIONS:
            lookup = node["fields"] if key == "Attributes" else node["args"]
            markdown += entries_to_table(value, lookup)
        elif key in LISTING_SECTIONS:
            markdown += entries_to_listing(value)
        elif key in CODE_SECTIONS:
            markdown += "```python\n" + dedent("\n".join(value)).strip() + "\n```\n"
        else:
            markdown += "\n".join(value).strip() + "\n"
        markdown += "\n"

    return markdown


def collect_nodes(tree: ast.Module) -> dict:
    """
    Collects the public functions and classes of a module, and the public
    methods of each class. A class without `__init__` (a dataclass, an
    exception) is documented by its own docstring and annotated fields.
    """
    nodes = {}

    for node in tree.body:
        if not isinstance(node, (ast.FunctionDef, ast.ClassDef)) or node.name.startswith("_"):
            continue

        if isinstance(node, ast.FunctionDef):
            nodes[node.name] = {"args": signature_of(node), "fields": {}, "docstring": ast.get_docstring(node)}
            continue

        methods = [m for m in node.body if isinstance(m, ast.FunctionDef)]
        fields = dataclass_fields(node)
        if not any(m.name == "__init__" for m in methods):
            nodes[node.name] = {
                "args": fields,
                "fields": fields,
                "docstring": ast.get_docstring(node),
                "class": node.name,
            }

        for method in methods:
            if method.name.startswith("_") and method.name != "__init__":
                continue
            key = node.name if method.name == "__init__" else f"{node.name}.{method.name}"
            nodes[key] = {
                "args": signature_of(method, drop_self=True),
                "fields": fields,
                "docstring": ast.get_docstring(method) or (
                    ast.get_docstring(node) if method.name == "__init__" else None
                ),
                "class": node.name,
            }

    return nodes


def format_module(tree: ast.Module, module_prefix: str) -> str:
    nodes = collect_nodes(tree)
    if not nodes:
        return ""

    page = md_header(f"Reference for `{module_prefix}`", 1)
    intro = ast.get_docstring(tree)
    if intro:
        for key, value in parse_docstring(intro).items():
            if key != "Description":
                page += md_header(key, 3)
            if isinstance(value, dict):
                page += entries_to_table(value) + "\n"
            else:
                page += "\n".join(value).strip() + "\n\n"

    for name, node in nodes.items():
        if node["docstring"] is not None:
            node = {**node, "docstring": parse_docstring(node["docstring"])}
        level = 3 if node.get("class") not in (None, name) else 2
        page += format_node(name, node, module_prefix, level=level)

    return page


def module_prefix_of(source) -> str:
    return ".".join(Path(source).with_suffix("").parts).replace(".__init__", "")


def build_globed_sources(sources):
    return sorted(path for pattern in sources for path in glob.glob(pattern))


def build_docs(sources_globed):
    page = ""
    for source in sources_globed:
        with open(source, "r", encoding="utf-8") as f:
            tree = ast.parse(f.read())
        page += format_module(tree, module_prefix_of(source))
    return page


def write_docs(render_paths: dict, root=".", verbose=True) -> list:
    """
    Renders every page of `render_paths` (target page -> list of source globs)
    below `root` and returns the paths written. A page whose rendering matches
    the file on disk is left untouched, so `mkdocs serve` does not rebuild in
    a loop.
    """
    written = []
    for target, source_lst in render_paths.items():
        target = Path(root) / target
        target.parent.mkdir(parents=True, exist_ok=True)
        sources_globed = build_globed_sources(source_lst)

        if verbose:
            print("Target doc file:", target)
            print("Parsing python files:", sources_globed)
            print("-" * 50)

        page = build_docs(sources_globed)
        if target.exists() and target.read_text(encoding="utf-8") == page:
            continue
        target.write_text(page, encoding="utf-8")
        written.append(target)

    return written


def parse_args():
    parser = argparse.ArgumentParser(
        description="Render the API reference pages from the module docstrings.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument(
        "--render_paths",
        default="scripts/docs/render_paths.json",
        help="JSON file mapping each target page to its source globs.",
    )
    parser.add_argument("--root", default=".", help="Directory the pages are written below.")
    return parser.parse_args()


def main(render_paths, root):
    with open(render_paths, "r") as f:
        write_docs(json.load(f), root=root)


if __name__ == "__main__":
    args = parse_args()
    main(**vars(args))
