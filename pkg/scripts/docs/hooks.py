"""
mkdocs hook that renders the API reference pages before every build, so the
`API Reference` entries of `mkdocs.yml` never point at missing files. Run
`mkdocs` from the repository root: the globs of `render_paths.json` are
relative to it.
"""
import importlib.util
import json
from pathlib import Path

HERE = Path(__file__).resolve().parent


def _load_build():
    # mkdocs loads hooks by path, so `scripts.docs` is not importable here
    spec = importlib.util.spec_from_file_location("kloops_docs_build", HERE / "build.py")
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def on_pre_build(config, **kwargs):
    with open(HERE / "render_paths.json", "r") as f:
        render_paths = json.load(f)
    root = Path(config["docs_dir"]).parent
    _load_build().write_docs(render_paths, root=root, verbose=False)
