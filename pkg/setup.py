#!/usr/bin/env python3

from setuptools import setup

setup(
    name='pellwalls',
    description=(
        'Exact Pell walls, cohomological rank function candidates and '
        'syzygy verdicts for (1, d)-polarized abelian surfaces.'
    ),
    author='The pellwalls contributors',
    license='ISC',
    packages=['pellwalls'],
    include_package_data=True,
    package_data={
        'pellwalls': ['confspec.ini', 'report.schema.json'],
    },
    entry_points={
        'console_scripts': [
            'pellwalls = pellwalls.cli:cli',
        ],
    },
    install_requires=[
        'atomicwrites',
        'click>=7.0,<8.0',
        'click-log>=0.2.1',
        'configobj',
        'humanize',
        'jsonschema>=3.0',
        'pyxdg',
        'sympy>=1.5',
        'tabulate',
    ],
    long_description=open('README.rst').read(),
    use_scm_version={
        'version_scheme': 'post-release',
        'write_to': 'pellwalls/version.py',
        'fallback_version': '0.1.0',
    },
    setup_requires=['setuptools_scm'],
    tests_require=open('requirements-dev.txt').readlines(),
    extras_require={
        'docs': open('requirements-docs.txt').readlines(),
    },
    python_requires='>=3.8',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Environment :: Console',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: ISC License (ISCL)',
        'Operating System :: POSIX',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: Implementation :: CPython',
        'Topic :: Scientific/Engineering :: Mathematics',
    ]
)
