# -*- coding: utf-8 -*-
import os
import sys

sys.path.insert(0, os.path.abspath("../../"))

from aspconf import __package__, __version__

#
# aspconf documentation build configuration file.
#
# This file is execfile()d with the current directory set to its
# containing dir.

# -- General configuration ------------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.intersphinx",
    "sphinx_copybutton",
]

templates_path = ["_templates"]

source_suffix = ".rst"

master_doc = "index"

project = __package__
copyright = "2024, aspconf developers"

version = __version__
release = __version__

exclude_patterns = []

pygments_style = "sphinx"

# -- Options for HTML output ----------------------------------------------

html_theme = "alabaster"

html_theme_options = {
    "description": "Confidentiality-preserving publishing of logic programs",
}

html_static_path = []

html_sidebars = {"**": ["about.html", "navigation.html", "searchbox.html"]}

html_show_sourcelink = False

htmlhelp_basename = "aspconfdoc"

# -- Options for manual page output ---------------------------------------

man_pages = [("cli", "aspconf", "aspconf command-line interface", ["aspconf developers"], 1)]

intersphinx_mapping = {
    "py3": ("https://docs.python.org/3", None),
    "pydantic": ("https://docs.pydantic.dev/latest", None),
}
