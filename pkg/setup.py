import ast
from setuptools import setup, find_packages


def get_version(path, var="__version__"):
    with open(path) as f:
        body = ast.parse(f.read()).body

    for node in body:
        if isinstance(node, ast.Assign) and node.targets[0].id == var:
            return node.value.value

    return None


with open("README.md", "r") as f:
    long_description = f.read()

with open("kloops/processing/requirements.txt") as f:
    processing_requirements = f.read().splitlines()

with open("docs/requirements.txt") as f:
    docs_requirements = f.read().splitlines()

version = get_version("kloops/version.py")


setup(
    name="kloops",
    version=version,
    description="Finite loops, Bol loops, K-loops and symétrons given by Cayley tables",
    long_description=long_description,
    long_description_content_type="text/markdown",
    license="MIT",
    python_requires=">=3.9",
    packages=find_packages(
        include=["kloops*"],
        exclude=["tests*", "scripts*"],
    ),
    install_requires=["numpy"],
    extras_require={
        "dev": ["black==23.*", "wheel", "hypothesis"],
        "processing": processing_requirements,
        "docs": docs_requirements,
        "json": ["orjson"],
    },
    entry_points={
        "console_scripts": ["kloops=kloops.cli:run"],
    },
)
