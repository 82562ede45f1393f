#!/usr/bin/python3
import sys

from decayspectra.cli import run


def main(argv):
    return run(argv)


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
