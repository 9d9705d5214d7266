#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# Pellwalls documentation build configuration file.

import validate
from configobj import ConfigObj

import pellwalls

# -- Generate confspec.tmp ------------------------------------------------

specpath = '../../pellwalls/confspec.ini'
config = ConfigObj(
    None,
    configspec=specpath,
    stringify=False,
    list_values=False,
)
validator = validate.Validator()
spec = config.configspec


def describe_check(check):
    fun_name, fun_args, fun_kwargs, default = validator._parse_check(check)
    if fun_name == 'option':
        allowed = ['*{}*'.format(arg) for arg in fun_args]
        return 'option, allowed values are {}'.format(', '.join(allowed)), \
            default
    if fun_name == 'integer':
        bounds = []
        if 'min' in fun_kwargs:
            bounds.append('at least {}'.format(fun_kwargs['min']))
        if 'max' in fun_kwargs:
            bounds.append('at most {}'.format(fun_kwargs['max']))
        if bounds:
            fun_name += ', ' + ' and '.join(bounds)
    if fun_name == 'jobs':
        fun_name = 'integer, at least 0'
    return fun_name, default


def write_key(secname, key, comment, file_):
    fun_name, default = describe_check(spec[secname][key])
    file_.write('\n.. _{}-{}:\n'.format(secname, key))
    file_.write('\n.. object:: {}\n\n'.format(key))
    file_.write('    ' + '\n    '.join(line.strip('# ') for line in comment))
    file_.write('\n\n')
    file_.write('      :type: {}\n'.format(fun_name))
    file_.write('      :default: {}\n'.format(default))


with open('confspec.tmp', 'w') as file_:
    for secname in sorted(spec):
        heading = 'The [{}] section'.format(secname)
        file_.write('\n{}\n{}\n'.format(heading, len(heading) * '~'))
        for key, comment in spec[secname].comments.items():
            write_key(secname, key, [c for c in comment if c], file_)

# -- General configuration ------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx_autorun',
    'sphinx.ext.viewcode',
]

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = 'Pellwalls'
copyright = '2020, The pellwalls contributors'
author = 'The pellwalls contributors'

version = pellwalls.__version__
release = pellwalls.__version__

language = None
exclude_patterns = ['build']
pygments_style = 'sphinx'

# -- Options for HTML output ----------------------------------------------

html_theme = 'alabaster'
html_static_path = []
htmlhelp_basename = 'Pellwallsdoc'

# -- Options for manual page output ---------------------------------------

man_pages = [(
    master_doc,
    'pellwalls',
    'Pellwalls Documentation',
    [author],
    1,
)]
