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

import csv
import logging
import os
import tempfile
from io import StringIO

import numpy as np

from decayspectra.core import ConfigurationError
from decayspectra.types import OutputParameter, Type


class File(OutputParameter, Type):
    """Can be used as: **output parameter**

    The File type represents the content of a single file. Its contents
    can be read and written most easily with the :attr:`value` property.

    Alternatively, the method :meth:`write` appends new content if the
    parameter `append` is set to `True`.

    NB: The content is written only on :meth:`flush`, which the
    computation calls after it finished. The file is replaced in one
    step, so a failed run never leaves a half written file behind.
    """

    def __init__(self, default_filename=""):
        OutputParameter.__init__(self)
        Type.__init__(self)
        self.__path = default_filename
        self.__value = None

    @property
    def path(self):
        """:return: string -- path to the file"""
        return os.path.abspath(self.__path)

    def set_path(self, path):
        self.__path = path

    @property
    def value(self):
        """This attribute can be read and written and represent the
        content of the specified file"""
        if self.__value is None:
            try:
                with open(self.path, "r", newline="") as fd:
                    self.__value = self.after_read(fd.read())
            except IOError:
                # File couldn't be read
                self.__value = self.after_read("")
        return self.__value

    @value.setter
    def value(self, value):
        self.__value = value

    def write(self, content, append=False):
        """Similar to the :attr:`value` property. If the parameter
        `append` is `False`, then the property :attr:`value` is reset
        (i.e., overwritten), otherwise the content is appendend"""
        if append:
            self.value += content
        else:
            self.value = content

    def flush(self):
        """Flush the cached content of the file to disk"""
        if self.__value is None:
            return
        v = self.before_write(self.value)
        if v is None:
            v = ""
        directory = os.path.dirname(self.path) or "."
        os.makedirs(directory, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=directory,
                                   prefix="." + os.path.basename(self.path),
                                   suffix=".tmp")
        try:
            with os.fdopen(fd, "w", newline="") as out:
                out.write(v)
            os.replace(tmp, self.path)
        except BaseException:
            os.unlink(tmp)
            raise
        logging.info("wrote %s", self.path)

    def after_read(self, value):
        """To provide filtering of file contents in subclasses, overrwrite this method.
        It is gets the file content as a string and returns the value()"""
        return value

    def before_write(self, value):
        """To provide filtering of file contents in subclasses, overrwrite this method.
        This method gets the value() and returns a string, when the file is written to disk"""
        return value


def format_cell(value):
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return "%d" % value
    if isinstance(value, (float, np.floating)):
        return "%.12g" % value
    return str(value)


def _parse_cell(text):
    try:
        return float(text)
    except ValueError:
        return text


class CSVTable(File):
    """Can be used as: **output parameter**

    A :class:`File` holding one table: ``# key=value`` metadata lines
    (sorted by key), a header line with the column names and one line
    per row. Reals are written with 12 significant digits and lines end
    in LF.

    >>> table = CSVTable("spectrum.csv", columns=("omega", "eta"))
    >>> table.append([1.0, 0.5])
    >>> table.flush()

    The :attr:`value` is the list of rows."""

    value = File.value

    def __init__(self, default_filename="", columns=()):
        File.__init__(self, default_filename)
        self.columns = tuple(columns)
        self.metadata = {}
        self.value = []

    @classmethod
    def read(cls, path):
        table = cls(path)
        table.value = None
        table.value
        return table

    def after_read(self, value):
        self.metadata = {}
        lines = []
        for line in value.splitlines():
            if line.startswith("#"):
                key, _, v = line[1:].strip().partition("=")
                self.metadata[key] = v
            elif line.strip():
                lines.append(line)
        if not lines:
            return []
        rows = list(csv.reader(lines))
        self.columns = tuple(rows[0])
        return [[_parse_cell(cell) for cell in row] for row in rows[1:]]

    def before_write(self, value):
        fd = StringIO()
        for key in sorted(self.metadata):
            fd.write("# %s=%s\n" % (key, self.metadata[key]))
        writer = csv.writer(fd, lineterminator="\n")
        writer.writerow(self.columns)
        for row in value:
            writer.writerow([format_cell(cell) for cell in row])
        return fd.getvalue()

    def write(self, content=None, append=False):
        raise NotImplementedError("use append() or extend()")

    def append(self, row):
        """Append a row to the table

        :param row: one value per column
        :type row: sequence"""
        row = list(row)
        if len(row) != len(self.columns):
            raise ValueError("row has %d values, table %s has %d columns"
                             % (len(row), self.columns, len(self.columns)))
        self.value.append(row)

    def extend(self, rows):
        for row in rows:
            self.append(row)

    def column(self, name):
        """All values of column ``name`` as an array."""
        if name not in self.columns:
            raise ConfigurationError("%s has no column '%s' (columns: %s)"
                                     % (self.path, name, ", ".join(self.columns)))
        index = self.columns.index(name)
        return np.array([row[index] for row in self.value], dtype=float)

    def require(self, *names):
        """Raise ConfigurationError unless all ``names`` are columns."""
        missing = [n for n in names if n not in self.columns]
        if missing:
            raise ConfigurationError("%s lacks column(s) %s (columns: %s)"
                                     % (self.path, ", ".join(missing),
                                        ", ".join(self.columns)))
