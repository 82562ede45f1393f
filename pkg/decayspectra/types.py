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

"""Typed input parameters of a computation.

Every parameter knows its command-line flag (``--<name>``), how to
convert the flag text, which JSON types a config file may use for it,
and how it appears in the metadata. Values are resolved in the order
built-in default, config file, command line."""

from decayspectra.core import ConfigurationError


class Type(object):
    """Base type of all input and output parameters"""

    def __init__(self):
        self.__name = None

    @property
    def name(self):
        return self.__name
    @name.setter
    def name(self, name):
        self.__name = name

    @property
    def value(self):
        """Default accessor for this kind of data"""
        raise NotImplementedError

    def __repr__(self, value=None):
        if value is not None:
            return "<%s %s '%s'>" %(self.__class__.__name__, self.__name, value)
        return "<%s %s>" %(self.__class__.__name__, self.__name)


class InputParameter:
    def inp_setup_cmdline_parser(self, parser):
        raise NotImplementedError
    def inp_extract_cmdline_parser(self, opts, args):
        raise NotImplementedError
    def inp_from_config(self, value):
        raise NotImplementedError

    def __parser_option(self, option = None):
        if option:
            return self.name + "-" + option
        return self.name

    def was_given(self):
        """Checks if an optional parameter was given"""
        if not hasattr(self, "optional_parameter_given"):
            return True
        if self.optional_parameter_given:
            return True
        return False

    def inp_parser_add(self, parser, option, default, **kwargs):
        # The parser default stays None, so a flag that was not given
        # never overrides the config file.
        option = self.__parser_option(option)
        kw = {
            "dest": option,
            "default": None,
            "help": "(default: %s)" % default,
            }
        if getattr(self, "help", None):
            kw["help"] = "%s %s" % (self.help, kw["help"])
        kw.update(kwargs)
        parser.add_option('', '--%s' % option, **kw)

    def inp_parser_extract(self, opts, option):
        a = getattr(opts, self.__parser_option(option), None)
        if a != None and hasattr(self, "optional_parameter_given"):
            self.optional_parameter_given = True
        return a

    def inp_metadata(self):
        return {}


def Optional(input_parameter):
    """Makes an input parameter optional. input_parameter.was_given()
    checks if the parameter was given on the command line or in the
    config file."""
    if not isinstance(input_parameter, InputParameter):
        raise ConfigurationError("Optional() can only be used with input parameters")
    input_parameter.optional_parameter_given = False
    return input_parameter


class OutputParameter:
    pass


class Value(InputParameter, Type):
    """A single typed value. Subclasses set ``json_types`` and
    implement :meth:`parse` for the command-line text."""

    json_types = ()

    def __init__(self, default_value=None, help=None):
        InputParameter.__init__(self)
        Type.__init__(self)
        self.__value = default_value
        self.help = help

    def parse(self, text):
        return text

    def check(self, value):
        """Validate an already converted value; returns it."""
        return value

    def inp_setup_cmdline_parser(self, parser):
        self.inp_parser_add(parser, None, self.format(self.__value))

    def inp_extract_cmdline_parser(self, opts, args):
        text = self.inp_parser_extract(opts, None)
        if text is None:
            return
        try:
            self.__value = self.check(self.parse(text))
        except ValueError:
            raise ConfigurationError("invalid value for --%s: %r" % (self.name, text)) from None

    def inp_from_config(self, value):
        if isinstance(value, bool) and bool not in self.json_types:
            ok = False
        else:
            ok = isinstance(value, self.json_types)
        if not ok:
            raise ConfigurationError("config entry '%s' has type %s, expected %s"
                                     % (self.name, type(value).__name__,
                                        " or ".join(t.__name__ for t in self.json_types)))
        if hasattr(self, "optional_parameter_given"):
            self.optional_parameter_given = True
        try:
            self.__value = self.check(self.from_json(value))
        except ValueError:
            raise ConfigurationError("invalid config value for %s: %r"
                                     % (self.name, value)) from None

    def from_json(self, value):
        return value

    def resolve(self, value):
        """Fill in a value derived at run time, so that the metadata
        records it explicitly."""
        self.__value = value

    def format(self, value):
        return str(value)

    def inp_metadata(self):
        return {self.name: self.format(self.__value)}

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return Type.__repr__(self, self.__value)

    @property
    def value(self):
        """The value of the parameter: default, config file entry or
        command-line flag, whichever comes last"""
        return self.__value


class String(Value):
    """A String is the most simple input parameter."""

    json_types = (str,)

    def __init__(self, default_value="", help=None):
        Value.__init__(self, default_value, help)


class Bool(Value):
    """A boolean flag parameter (will accept "yes" and "no" on the command line."""

    json_types = (bool,)
    yes_values = ("yes", "y", "true", "1")
    no_values  = ("no", "n", "false", "0")

    def __init__(self, default_value=False, help=None):
        Value.__init__(self, default_value, help)

    def parse(self, text):
        if text.lower() in self.yes_values:
            return True
        if text.lower() in self.no_values:
            return False
        raise ValueError(text)

    def format(self, value):
        return "yes" if value else "no"


class Integer(Value):
    json_types = (int,)

    def __init__(self, default_value=0, help=None, minimum=None):
        Value.__init__(self, default_value, help)
        self.minimum = minimum

    def parse(self, text):
        return int(text)

    def check(self, value):
        if self.minimum is not None and value < self.minimum:
            raise ConfigurationError("%s must be at least %d, got %d"
                                     % (self.name, self.minimum, value))
        return value


class Float(Value):
    json_types = (int, float)

    def parse(self, text):
        return float(text)

    def from_json(self, value):
        return float(value)

    def format(self, value):
        if value is None:
            return "none"
        return "%.12g" % value


class FloatList(Value):
    """A comma separated list of reals, e.g. ``--times 0.1,0.5,1``.
    In a config file either a JSON list or the same string."""

    json_types = (list, str)

    def __init__(self, default_value=(), help=None):
        Value.__init__(self, tuple(default_value), help)

    def parse(self, text):
        items = [item for item in text.replace(" ", "").split(",") if item]
        if not items:
            raise ValueError(text)
        return tuple(float(item) for item in items)

    def from_json(self, value):
        if isinstance(value, str):
            return self.parse(value)
        for item in value:
            if isinstance(item, bool) or not isinstance(item, (int, float)):
                raise ValueError(item)
        return tuple(float(item) for item in value)

    def format(self, value):
        return ",".join("%.12g" % item for item in value)


class Choice(String):
    """A string restricted to ``choices``."""

    def __init__(self, choices, default_value=None, help=None):
        String.__init__(self, default_value or choices[0], help)
        self.choices = tuple(choices)

    def inp_setup_cmdline_parser(self, parser):
        self.inp_parser_add(parser, None, self.value,
                            help="one of %s (default: %s)"
                            % ("|".join(self.choices), self.value))

    def check(self, value):
        if value not in self.choices:
            raise ConfigurationError("%s must be one of %s, got '%s'"
                                     % (self.name, ", ".join(self.choices), value))
        return value


class StringList(Value, list):
    """Can be given multiple times; the values are collected::

        --csv a.csv --csv b.csv
    """

    json_types = (list,)

    def __init__(self, default_value=(), help=None):
        list.__init__(self, default_value)
        Value.__init__(self, tuple(default_value), help)

    def inp_setup_cmdline_parser(self, parser):
        self.inp_parser_add(parser, None, [], action="append")

    def inp_extract_cmdline_parser(self, opts, args):
        values = self.inp_parser_extract(opts, None)
        if values:
            self.resolve(tuple(values))

    def from_json(self, value):
        for item in value:
            if not isinstance(item, str):
                raise ValueError(item)
        return tuple(value)

    def check(self, value):
        self[:] = list(value)
        return value

    def resolve(self, value):
        Value.resolve(self, tuple(value))
        self[:] = list(value)

    def format(self, value):
        return ",".join(value)

    def __repr__(self):
        return Type.__repr__(self, list.__repr__(self))
