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

from optparse import OptionParser
import copy
import hashlib
import json
import logging
import os.path

from decayspectra import __version__
from decayspectra.core import ConfigurationError
from decayspectra.plotscript import emit_plotscript
from decayspectra.types import InputParameter, OutputParameter, Type
from decayspectra.tools import JavascriptStyleDictAccess, setup_logging

FORMATS = ("csv", "csv+plotscript")


class Computation(Type):
    """One command of the command line front end.

    A computation declares its typed :attr:`inputs` and its
    :attr:`outputs` (CSV tables). :meth:`execute` parses the command
    line and an optional JSON config file, records the resolved inputs
    as metadata, calls :meth:`run` and writes every output."""

    version = 1
    """Version of the computation, defaults to 1. The version is
    included in the metadata **and** used for the config hash."""

    i = None
    """Shorthand for :attr:`~.inputs`"""

    inputs = {}
    """In the input dictionary all input parameters are defined. The
    key in this ``dict`` is used as :attr:`~.name` attribute, as flag
    name (``--<key>``) and as config-file field. Accessible with the
    dot-notation, ``_`` standing for ``-``:

    >>> self.i.omega_min
    <Float omega-min '-0.25'>
    """

    o = None
    """Shorthand for :attr:`~.outputs`"""

    outputs = {}
    """The tables the computation produces. The one named
    :attr:`primary` is written to ``--out``; every other one to
    ``<stem>-<name>.csv`` beside it."""

    primary = "table"

    suffix = ".csv"
    """Extension of the default output file, '<title><suffix>'."""

    figure = None
    """Figure id of the plot script written with
    ``--format csv+plotscript``; None if there is none."""

    title = None
    """Command name, this is normally the lower-case classname"""

    def __init__(self, title=None):
        Type.__init__(self)
        self.title = title or self.title or self.__class__.__name__.lower()
        self.name = self.title

        self.inputs = JavascriptStyleDictAccess(copy.deepcopy(self.__class__.inputs))
        self.i = self.inputs
        self.outputs = JavascriptStyleDictAccess(copy.deepcopy(self.__class__.outputs))
        self.o = self.outputs

        for (name, inp) in self.inputs.items():
            if not isinstance(inp, InputParameter):
                raise ConfigurationError("%s cannot be used as an input parameter" % name)
            inp.name = name
        for (name, outp) in self.outputs.items():
            if not isinstance(outp, OutputParameter):
                raise ConfigurationError("%s cannot be used as an output parameter" % name)
            outp.name = name
        if self.outputs and self.primary not in self.outputs:
            raise ConfigurationError("%s has no output named %s" % (self.title, self.primary))

        self.args = []
        self.out = None
        self.written = []
        self.format = "csv"

    def __setup_parser(self):
        self.__parser = OptionParser("%%prog %s [options]" % self.title)
        self.__parser.add_option('-v', '--verbose', dest='verbose', action='count', default=0,
                                 help="increase verbosity (specify multiple times for more)")
        self.__parser.add_option('--config', dest='config', default=None,
                                 help="JSON file with the same field names as the flags")
        self.__parser.add_option('--out', dest='out', default=None,
                                 help="output file (default: %s%s)" % (self.title, self.suffix))
        self.__parser.add_option('--format', dest='format', default=None,
                                 help="one of %s (default: csv)" % "|".join(FORMATS))

        for name in sorted(self.inputs):
            self.inputs[name].inp_setup_cmdline_parser(self.__parser)

    def __load_config(self, path):
        try:
            with open(path, "r") as fd:
                config = json.load(fd)
        except (OSError, ValueError) as e:
            raise ConfigurationError("cannot read config file %s: %s" % (path, e)) from None
        if not isinstance(config, dict):
            raise ConfigurationError("config file %s must hold a JSON object" % path)

        for key in sorted(config):
            name = key.replace("_", "-")
            if name == "format":
                if not isinstance(config[key], str):
                    raise ConfigurationError("config entry 'format' must be a string")
                self.format = config[key]
                continue
            if name == "out":
                if not isinstance(config[key], str):
                    raise ConfigurationError("config entry 'out' must be a string")
                self.out = config[key]
                continue
            if name not in self.inputs:
                raise ConfigurationError("unknown config entry '%s' for %s" % (key, self.title))
            self.inputs[name].inp_from_config(config[key])

    def execute(self, args=[], **kwargs):
        """Calling this method will execute the computation

        :param args: The command line arguments after the command name
        :type args: list.

        :kwargs: The keyword arguments overwrite input parameters,
          without assembling a command line.

        >>> computation.execute(["--time", "2"])
        >>> computation.execute(time=2.0)

        :return: list of the written file paths
        """
        self.__setup_parser()
        (opts, args) = self.__parser.parse_args(list(args))
        setup_logging(opts.verbose)
        self.args = args

        if opts.config:
            self.__load_config(opts.config)
        self.out = opts.out or self.out or self.title + self.suffix
        if opts.format is not None:
            self.format = opts.format
        if self.format not in FORMATS:
            raise ConfigurationError("unknown format '%s' (known: %s)"
                                     % (self.format, ", ".join(FORMATS)))

        for name in sorted(self.inputs):
            self.inputs[name].inp_extract_cmdline_parser(opts, args)
        for key in kwargs:
            name = key.replace("_", "-")
            if name not in self.inputs:
                raise AttributeError("No argument called %s" % key)
            inp = self.inputs[name]
            inp.resolve(kwargs[key])
            if hasattr(inp, "optional_parameter_given"):
                inp.optional_parameter_given = True

        self.prepare()
        self.__assign_paths()

        logging.info("running %s", self.title)
        self.run()

        metadata = self.metadata
        paths = list(self.written)
        for name in sorted(self.outputs):
            table = self.outputs[name]
            table.metadata = dict(metadata)
            table.flush()
            paths.append(table.path)

        if self.format == "csv+plotscript" and self.figure is not None:
            script = os.path.splitext(self.outputs[self.primary].path)[0] + ".gp"
            paths.append(emit_plotscript(self.plot_inputs(), self.figure, script))
        return paths

    __call__ = execute
    """A computation can also executed by calling it, :attr:`execute`
    will be called.

    >>> computation(sys.argv[2:])"""

    def __assign_paths(self):
        stem, ext = os.path.splitext(self.out)
        for name, table in self.outputs.items():
            if name == self.primary:
                table.set_path(self.out)
            else:
                table.set_path("%s-%s%s" % (stem, name, ext or ".csv"))

    def output_path(self, name=None):
        return self.outputs[name or self.primary].path

    def plot_inputs(self):
        """CSV files the plot script reads; the primary output unless
        a computation says otherwise."""
        return [self.output_path()]

    def filter_metadata(self, metadata):
        """Overwrite to remove entries from the hashed metadata. The
        output format does not change any number, so it is dropped."""
        return dict((k, v) for k, v in metadata.items() if k != "format")

    def extra_metadata(self):
        """Entries recorded in the CSV header but left out of the hash."""
        return {}

    def prepare(self):
        """Called after parsing, before the config hash is taken. Derived
        defaults are filled in here with ``resolve()``."""
        pass

    @property
    def metadata(self):
        """The resolved config: one entry per input, plus ``command``,
        ``version`` and ``config-hash`` (md5 over the version and the
        sorted inputs)."""
        metadata = {}
        for name in self.inputs:
            metadata.update(self.inputs[name].inp_metadata())
        metadata["format"] = self.format

        m = hashlib.md5()
        m.update(("version %s" % str(self.version)).encode())
        calc_metadata = self.filter_metadata(metadata)
        for key in sorted(calc_metadata.keys()):
            m.update((key + " " + str(calc_metadata[key])).encode())

        metadata["command"] = self.title
        metadata["version"] = "%s/%s" % (__version__, self.version)
        metadata["config-hash"] = m.hexdigest()
        # The hash is taken, entries below do not change it
        metadata.update(self.extra_metadata())
        return metadata

    def run(self):
        """This method is the hook method you have to overwrite when
        you write a new computation"""
        raise NotImplementedError
