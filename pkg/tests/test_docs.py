import ast
import json
from pathlib import Path
import re
import tempfile
import unittest

from scripts.docs import build as doc_build
from scripts.docs import hooks


def public_names(source):
    with open(source, "r", encoding="utf-8") as f:
        tree = ast.parse(f.read())
    names = []
    for node in tree.body:
        if isinstance(node, (ast.FunctionDef, ast.ClassDef)) and not node.name.startswith("_"):
            names.append(node.name)
    return names


class TestDocs(unittest.TestCase):
    def setUp(self):
        with open("scripts/docs/render_paths.json", "r") as f:
            self.render_paths = json.load(f)

    def test_build(self):
        for target, source_lst in self.render_paths.items():
            sources_globed = doc_build.build_globed_sources(source_lst)
            self.assertTrue(sources_globed, f"no sources found for {target}")

            doc_page = doc_build.build_docs(sources_globed)

            for source in sources_globed:
                prefix = ".".join(Path(source).parts).replace(".py", "").replace(".__init__", "")
                if public_names(source):
                    self.assertIn(f"# Reference for `{prefix}`", doc_page)
                for name in public_names(source):
                    self.assertIn(f"`{name}`", doc_page, f"{name} from {source} is not rendered")

    def test_every_module_is_routed(self):
        routed = set()
        for source_lst in self.render_paths.values():
            routed.update(doc_build.build_globed_sources(source_lst))

        for path in Path("kloops").rglob("*.py"):
            if path.name.startswith("_") or path.name in ("constants.py", "version.py", "errors.py"):
                continue
            self.assertIn(str(path), routed)

    def test_write_docs(self):
        with tempfile.TemporaryDirectory() as root:
            written = doc_build.write_docs(self.render_paths, root=root, verbose=False)
            self.assertEqual(len(written), len(self.render_paths))
            for path in written:
                self.assertGreater(path.stat().st_size, 0)
            self.assertEqual(doc_build.write_docs(self.render_paths, root=root, verbose=False), [])

    def test_nav_matches_render_paths(self):
        with open("mkdocs.yml", "r", encoding="utf-8") as f:
            nav = re.findall(r"- kloops[\w.]*: '(kloops/\w+\.md)'", f.read())
        self.assertEqual(sorted(f"docs/{page}" for page in nav), sorted(self.render_paths))

    def test_pre_build_hook(self):
        with tempfile.TemporaryDirectory() as root:
            hooks.on_pre_build({"docs_dir": str(Path(root) / "docs")})
            for target in self.render_paths:
                self.assertTrue((Path(root) / target).exists(), target)

    def test_docstring_sections(self):
        parsed = doc_build.parse_docstring(
            "Summary.\n\nParameters\n----------\nn : int, default 3\n    The order.\n\n"
            "Returns\n-------\nbool\n    Whether it holds."
        )
        self.assertEqual(parsed["Parameters"]["n"]["type"], "int")
        self.assertEqual(parsed["Parameters"]["n"]["default"], "3")
        self.assertEqual(list(parsed["Returns"]), ["bool"])

    def test_signature_and_fields(self):
        tree = ast.parse(
            "from dataclasses import dataclass\n\n"
            "@dataclass(frozen=True)\nclass Pair:\n    left: int\n    right: int = 0\n\n"
            "def closure(generators, *, cap: int = 10):\n    pass\n"
        )
        page = doc_build.format_module(tree, "kloops.demo")
        self.assertIn("kloops.demo.Pair(left, right=0)", page)
        self.assertIn("| `right` | `int` | `0` |", page)
        self.assertIn("kloops.demo.closure(generators, *, cap=10)", page)
