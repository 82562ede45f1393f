# This file is part of decayspectra.
#
# decayspectra is free software: you can redistribute it and/or modify it under the
# terms of the GNU General Public License as published by the Free Software
# Foundation, either version 3 of the License, or (at your option) any later
# version.
#
# decayspectra is distributed in the hope that it will be useful, but WITHOUT ANY
# WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A
# PARTICULAR PURPOSE.  See the GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License along with
# decayspectra.  If not, see <http://www.gnu.org/licenses/>.

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from multiprocessing import cpu_count

THREADS_ENV = "DECAY_SPECTRA_THREADS"


class JavascriptStyleDictAccess(dict):
    """A dict whose keys are also attributes; ``_`` in an attribute name
    matches ``-`` in a key, so ``d.omega_min`` finds ``d["omega-min"]``."""

    def __init__(self, d):
        self.update(d)

    def __getattribute__(self, name):
        try:
            return dict.__getattribute__(self, name)
        except AttributeError:
            pass
        if name in self:
            return self[name]
        name = name.replace("_", "-")
        if name in self:
            return self[name]
        raise AttributeError(name)


def setup_logging(log_level):
    """ setup the logging module with the given log_level """

    l = logging.WARNING # default
    if log_level == 1:
        l = logging.INFO
    elif log_level >= 2:
        l = logging.DEBUG

    logging.basicConfig(level=l, format="%(levelname)s: %(message)s")
    logging.getLogger().setLevel(l)


def thread_count():
    """Worker threads to use: the number of CPUs, capped by
    $DECAY_SPECTRA_THREADS when that is set."""
    value = os.environ.get(THREADS_ENV)
    if value:
        try:
            count = int(value)
        except ValueError:
            logging.warning("ignoring %s=%r, not an integer", THREADS_ENV, value)
        else:
            return min(max(1, count), cpu_count())
    return cpu_count()


def parallel_map(func, items):
    """``[func(x) for x in items]`` on a thread pool; order is kept."""
    items = list(items)
    threads = min(thread_count(), len(items))
    if threads <= 1:
        return [func(x) for x in items]
    logging.debug("mapping %d items on %d threads", len(items), threads)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(func, items))
