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
Exceptions raised by the rbf_wavelets package.

Everything derives from RbfWaveletError so the command line front end can turn any
library failure into an error record.
"""


class RbfWaveletError(Exception):
    """ Base class of every error raised by this package """
    module = None

    def as_record(self, operation=None):
        """
        Machine-readable description of this error, written by the CLI as error.json
        """
        return {
            "error": type(self).__name__,
            "module": self.module,
            "operation": operation,
            "message": str(self),
        }


class DomainError(RbfWaveletError, ValueError):
    """ An argument lies outside the domain of the operation, or a kernel parameter invariant is violated """
    module = "specfun"

    def __init__(self, message, module=None):
        super().__init__(message)
        if module is not None:
            self.module = module


class IntegrationError(RbfWaveletError, ArithmeticError):
    """ The integrand produced a non-finite value """
    module = "quadrature"

    def __init__(self, message, node=None):
        super().__init__(message)
        self.node = node


class DivergenceError(IntegrationError):
    """ A semi-infinite integral did not settle within its panel budget """

    def __init__(self, message, panels=None, estimate=None):
        super().__init__(message)
        self.panels = panels
        self.estimate = estimate


class CalibrationError(RbfWaveletError):
    """ Transform constants failed their round-trip verification """
    module = "transforms"

    def __init__(self, message, discrepancy=None):
        super().__init__(message)
        self.discrepancy = discrepancy

    def as_record(self, operation=None):
        record = super().as_record(operation)
        record["discrepancy"] = self.discrepancy
        return record


class FitError(RbfWaveletError):
    """ A linear system could not be solved reliably """
    module = "rbffit"

    def __init__(self, message, condition_estimate=None, module=None):
        super().__init__(message)
        self.condition_estimate = condition_estimate
        if module is not None:
            self.module = module

    def as_record(self, operation=None):
        record = super().as_record(operation)
        record["condition_estimate"] = self.condition_estimate
        return record


class ConfigError(RbfWaveletError):
    """
    A run configuration could not be parsed or validated.

    `errors` lists every problem found, not just the first one.
    """
    module = "cli"

    def __init__(self, errors, line=None):
        if isinstance(errors, str):
            errors = [errors]
        self.errors = list(errors)
        self.line = line
        message = "; ".join(self.errors)
        if line is not None:
            message = "line {}: {}".format(line, message)
        super().__init__(message)

    def as_record(self, operation=None):
        record = super().as_record(operation)
        record["errors"] = self.errors
        record["line"] = self.line
        return record
