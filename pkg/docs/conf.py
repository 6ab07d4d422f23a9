#!/usr/bin/env python
# mypy: ignore-errors
# cfkinv documentation build configuration file
import os
import sys

sys.path.insert(0, os.path.abspath(".."))

# -- General configuration ---------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.viewcode",
    "sphinx.ext.napoleon",
    "sphinx_click",
    "sphinx_rtd_dark_mode",
    "sphinx.ext.autosummary",
    "sphinx.ext.coverage",
    "myst_parser",
]

coverage_show_missing_items = True
default_dark_mode = True

templates_path = ["_templates"]

source_suffix = {
    ".rst": "restructuredtext",
    ".md": "markdown",
}

master_doc = "index"

project = "cfkinv"
copyright = "2024, Semjon Geist"
author = "Semjon Geist"

version = "0.1.0"
release = "0.1.0"

exclude_patterns = ["_build", "Thumbs.db", ".DS_Store", ".*click.*"]

pygments_style = "sphinx"

todo_include_todos = False

# -- Options for HTML output -------------------------------------------

html_theme = "sphinx_rtd_theme"
html_static_path = ["_static"]
html_extra_path = ["coverage"]
htmlhelp_basename = "cfkinvdoc"

# -- Options for manual page output ------------------------------------

man_pages = [
    (
        master_doc,
        "cfkinv",
        "cfkinv Documentation",
        [author],
        1,
    )
]

autodoc_typehints = "description"

html_css_files = [
    "custom.css",
    "basic.css",
]
