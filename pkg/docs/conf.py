# Configuration file for the Sphinx documentation builder.
# http://www.sphinx-doc.org/en/master/config

import os
import sys
sys.path.insert(0, os.path.abspath('..'))

from iquantum import __version__


project = 'iquantum'
copyright = '2024, iquantum developers'
author = 'iquantum developers'

version = __version__
release = version

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.napoleon',
    'sphinx.ext.intersphinx',
    'sphinx_autodoc_typehints',
    'sphinxcontrib_trio',
]

autodoc_member_order = 'bysource'
# Setting 'member-order' below in default options does not seem to work

autodoc_default_options = {
    'member-order': 'bysource',
    'special-members': '__init__',
}

intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
}

source_suffix = '.rst'
master_doc = 'index'
exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']

html_theme = 'sphinx_rtd_theme'
htmlhelp_basename = 'iquantumdoc'

man_pages = [
    (master_doc, 'iquantum', 'iquantum Documentation', [author], 1)
]
