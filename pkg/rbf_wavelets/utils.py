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
"""
Small helpers shared by the numerical modules.
"""
# Imports ###########################################################

import os

import numpy as np
import yaml

# Globals ###########################################################

DEFAULTS_PATH = os.path.join(os.path.dirname(__file__), 'defaults.yaml')

with open(DEFAULTS_PATH, 'r') as defaults_file:
    DEFAULTS = yaml.safe_load(defaults_file)

# Functions #########################################################


def as_number(value):
    """ PyYAML reads 1e-10 (no decimal point or exponent sign) as a string; accept it as a float """
    if isinstance(value, str):
        try:
            return float(value)
        except ValueError:
            return value
    return value


def default(path):
    """
    Look up a package default by dotted path, e.g. default('quadrature.panel_nodes')
    """
    value = DEFAULTS
    for key in path.split('.'):
        value = value[key]
    return as_number(value)


def as_points(points):
    """
    Coerce a point or a list of points to a 2-D float array of shape (count, dim).

    A bare number is read as a 1-D point.
    """
    array = np.asarray(points, dtype=float)
    if array.ndim == 0:
        return array.reshape(1, 1)
    if array.ndim == 1:
        return array.reshape(1, -1)
    return array


def distances(points, centers):
    """ Euclidean distance matrix between points (M, d) and centers (K, d) """
    points = as_points(points)
    centers = as_points(centers)
    return np.linalg.norm(points[:, None, :] - centers[None, :, :], axis=-1)


def sample(f, nodes):
    """
    Evaluate f on an array of nodes, one call per node when f only takes scalars.

    The result's first axis always matches `nodes`.
    """
    try:
        values = np.asarray(f(nodes))
    except (TypeError, ValueError):
        values = np.asarray(0.0)
    if values.ndim == 0 or values.shape[0] != len(nodes):
        values = np.array([f(node) for node in nodes])
    return values
