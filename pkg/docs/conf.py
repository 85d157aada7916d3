# -*- coding: utf-8 -*-
#
# nudd documentation build configuration file.
import sys, os

sys.path.insert(0, os.path.abspath('..'))

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.viewcode']

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'nudd'
copyright = u'2026, nudd developers'

version = open(os.path.join(os.path.dirname(__file__), '..',
        'VERSION')).read().strip()
release = version

exclude_patterns = ['_build']
pygments_style = 'sphinx'

html_theme = 'default'
html_static_path = ['_static']
htmlhelp_basename = 'nudddoc'

latex_documents = [
  ('index', 'nudd.tex', u'nudd Documentation', u'nudd developers', 'manual'),
]

man_pages = [
    ('index', 'nudd', u'nudd Documentation', [u'nudd developers'], 1)
]

autodoc_member_order = 'bysource'
