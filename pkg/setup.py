#!/usr/bin/env python

import setuptools

# Read version number into a dictionary
version = {}
with open('scsgap/version.py') as fp:
    exec(fp.read(), version)

scsgap_description = 'Gap-preserving reduction from E3-LIN to the Shortest Superstring problem'
scsgap_entry_points = {'console_scripts': ['scsgap = scsgap.scsgap_main:main']}

setuptools.setup(name='scsgap',
                 version=version['__version__'],
                 packages=setuptools.find_packages(exclude=['tests']),
                 description=scsgap_description,
                 keywords='shortest superstring, inapproximability, E3-LIN, gadget reduction',
                 python_requires='>=3.8',
                 install_requires=['numpy>=1.20',
                                   'progressbar2>=3.50'],
                 extras_require={'test': ['pytest>=6']},
                 entry_points=scsgap_entry_points)
