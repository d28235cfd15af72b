#!/usr/bin/python
# vim: set tabstop=8 softtabstop=4 noexpandtab
#Copyright (c) 2026, The seqtt Authors
#All rights reserved. Distributed under the BSD 3-Clause license, see LICENSE.
import sys
import syslog
import os

SYSLOG_OPENED = False

def verbosity():
    """ Current verbosity level from $VERBOSE (default 3) """
    try:
        return int(os.environ.get('VERBOSE', 3))
    except ValueError:
        return 3

def vlog(level, string):
    """ Leveled log to stderr: 1 errors, 2 warnings, 3 progress, 4-5 detail """
    global SYSLOG_OPENED

    if verbosity() >= level:
        sys.stderr.write('%s\n' % (string))

    if os.environ.get('SYSLOG') == 'YES':
        if not SYSLOG_OPENED:
            syslog.openlog('seqtt')
            SYSLOG_OPENED = True
        syslog.syslog(str(string))

def elog(string):
    sys.stderr.write('%s\n' % (string))

def fmt_float(value):
    """ Stable text form of a float: repr() with inf/-inf/nan literals """
    return repr(float(value))
