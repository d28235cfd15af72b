#!/usr/bin/python
# vim: set tabstop=8 softtabstop=4 noexpandtab
#Copyright (c) 2026, The seqtt Authors
#All rights reserved. Distributed under the BSD 3-Clause license, see LICENSE.
import contextlib
import csv
import errno
import json
import math
import os
import sys
import numpy as np
from .errors import DataFileError
from .nlog import vlog, fmt_float

def read_observations(filename):
    """ Read one real per line, skipping blanks and '#' comments """
    values = []
    try:
        f = open(filename, 'r', encoding='utf-8')
    except (IOError, OSError) as err:
        raise DataFileError(filename, 'unable to open: %s' % (err.strerror or err))

    with f:
        for lineno, line in enumerate(f, 1):
            line = line.strip()
            if not line or line.startswith('#'):
                continue

            # tolerate a trailing comma from spreadsheet exports
            token = line.rstrip(',').strip()
            try:
                value = float(token)
            except ValueError:
                raise DataFileError(filename, 'not a number: %r' % (line), lineno)

            if math.isnan(value):
                raise DataFileError(filename, 'NaN observation', lineno)

            values.append(value)

    vlog(4, 'Read %s observations from %s' % (len(values), filename))
    return np.asarray(values, dtype=float)

def format_cell(value):
    """ CSV cell text for ints, floats, bools and None """
    if value is None:
        return ''
    if isinstance(value, (bool, np.bool_)):
        return 'true' if value else 'false'
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return fmt_float(value)
    return str(value)

@contextlib.contextmanager
def open_output(file_name):
    """ Yield a text stream for file_name, or stdout for None/'-' """
    if file_name is None or file_name == '-':
        yield sys.stdout
        return

    directory = os.path.dirname(file_name)
    if directory:
        mkdir_p(directory)

    with open(file_name, 'w', encoding='utf-8', newline='') as f:
        yield f

def write_csv(stream, header, rows, comments = None):
    """ Write header and rows to an open stream; returns row count """
    for comment in comments or []:
        stream.write('# %s\n' % (comment))

    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(header)
    count = 0
    for row in rows:
        writer.writerow([format_cell(cell) for cell in row])
        count += 1
    return count

def jsonable(value):
    """ Convert numpy scalars and non-finite floats into JSON-safe values """
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isfinite(value):
            return value
        return fmt_float(value)
    return value

def write_json(file_name, contents):
    """ Takes file_name and writes contents as JSON. it will clobber file_name. """
    text = json.dumps(jsonable(contents), indent=2, sort_keys=True) + '\n'
    vlog(4, 'Writing File: %s SIZE=%s' % (file_name, len(text)))
    directory = os.path.dirname(file_name)
    if directory:
        mkdir_p(directory)
    with open(file_name, 'w', encoding='utf-8') as f:
        f.write(text)

def mkdir_p(path, mode = 0o755):
    try:
        os.makedirs(path, mode)
    except OSError as exc:
        if exc.errno == errno.EEXIST and os.path.isdir(path):
            pass
        else:
            raise
