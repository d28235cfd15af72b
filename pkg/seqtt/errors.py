#!/usr/bin/python
# vim: set tabstop=8 softtabstop=4 noexpandtab
#Copyright (c) 2026, The seqtt Authors
#All rights reserved. Distributed under the BSD 3-Clause license, see LICENSE.
""" Exception types shared by every seqtt module.

The command line tool maps these onto exit codes:
    UsageError, DomainError              -> 1
    DataFileError, DegenerateSampleError -> 2
    NumericalError, QuadratureError      -> 3
"""

class SeqttError(Exception):
    """ Base of all seqtt errors """
    exit_code = 1

class UsageError(SeqttError):
    """ Bad command line """
    exit_code = 1

class DomainError(SeqttError, ValueError):
    """ Argument outside the domain of a function """
    exit_code = 1

class DegenerateSampleError(SeqttError, ValueError):
    """ Sample carries no scale information (all values equal, V_n = 0) """
    exit_code = 2

class DataFileError(SeqttError):
    """ Unreadable or unparsable observation file """
    exit_code = 2

    def __init__(self, path, message, lineno = None):
        self.path = path
        self.lineno = lineno
        if lineno is None:
            SeqttError.__init__(self, '%s: %s' % (path, message))
        else:
            SeqttError.__init__(self, '%s:%s: %s' % (path, lineno, message))

class NumericalError(SeqttError, ArithmeticError):
    """ Iteration or root search failed to converge """
    exit_code = 3

class QuadratureError(NumericalError):
    """ Adaptive quadrature did not reach the requested tolerance """
    exit_code = 3
