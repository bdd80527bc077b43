# -*- coding: utf-8 -*-
#
# Copyright (c) 2026 The rbf-wavelets authors
#
# This software's license gives you freedom; you can copy, convey,
# propagate, redistribute and/or modify this program under the terms of
# the GNU Affero General Public License (AGPL) as published by the Free
# Software Foundation (FSF), either version 3 of the License, or (at your
# option) any later version of the AGPL published by the FSF.
#
# This program is distributed in the hope that it will be useful, but
# WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the GNU Affero
# General Public License for more details.
#
# You should have received a copy of the GNU Affero General Public License
# along with this program in a file in the toplevel directory called
# "AGPLv3".  If not, see <http://www.gnu.org/licenses/>.
#

# Imports ###########################################################

import os
import sys
from setuptools import setup, find_packages
from setuptools.command.install import install


# Constants #########################################################

VERSION = '0.3.0'

# Functions #########################################################


def package_data(pkg, patterns):
    """ List the files of `pkg` whose names end with one of `patterns` """
    data = []
    for dirname, _, files in os.walk(pkg):
        for fname in files:
            if fname.endswith(tuple(patterns)):
                data.append(os.path.relpath(os.path.join(dirname, fname), pkg))
    return {pkg: data}


class VerifyTagCommand(install):
    """Custom command to verify that the git tag matches the current version."""
    description = 'verify that the git tag matches the current version'

    def run(self):
        tag = os.getenv('CIRCLE_TAG')

        if tag != 'v{}'.format(VERSION):
            info = "Git tag: {0} does not match the version of this package: {1}".format(
                tag, VERSION
            )
            sys.exit(info)


# Main ##############################################################

setup(
    name='rbf-wavelets',
    version=VERSION,
    description='Orthonormal RBF wavelet transforms: Bessel series, B/K transforms, convection-diffusion kernels',
    packages=find_packages(exclude=['examples', 'examples.*']),
    python_requires='>=3.7',
    install_requires=[
        'numpy>=1.17',
        'scipy>=1.4',
        'Django>=2.2',
        'PyYAML>=5.1',
        'lazy>=1.1',
    ],
    entry_points={
        'console_scripts': [
            'rbf-wavelets = rbf_wavelets.cli:main',
        ],
    },
    package_data=package_data("rbf_wavelets", [".yaml"]),
    cmdclass={
        'verify_tag': VerifyTagCommand,
    },
)
