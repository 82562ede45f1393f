"""Collect each tests/<name>/test.py script as one pytest item.

The scripts are run exactly like tests/Makefile does: from their own
directory, with the package root on PYTHONPATH, as ``__main__``.
"""

import os
import subprocess
import sys

import pytest

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def pytest_collect_file(parent, file_path):
    if file_path.name == "test.py" and file_path.parent.parent == parent.config.rootpath / "tests":
        return ScriptFile.from_parent(parent, path=file_path)


class ScriptFile(pytest.File):
    def collect(self):
        yield ScriptItem.from_parent(self, name=self.path.parent.name)


class ScriptItem(pytest.Item):
    def runtest(self):
        env = dict(os.environ)
        env["PYTHONPATH"] = os.pathsep.join(
            [ROOT] + ([env["PYTHONPATH"]] if env.get("PYTHONPATH") else []))
        proc = subprocess.run([sys.executable, "test.py"], cwd=str(self.path.parent),
                              env=env, stdout=subprocess.PIPE,
                              stderr=subprocess.STDOUT, universal_newlines=True)
        if proc.returncode != 0:
            raise ScriptFailure(proc.returncode, proc.stdout)

    def repr_failure(self, excinfo):
        if isinstance(excinfo.value, ScriptFailure):
            code, output = excinfo.value.args
            return "test.py exited with status %d\n%s" % (code, output)
        return super().repr_failure(excinfo)

    def reportinfo(self):
        return self.path, 0, "script: %s" % self.name


class ScriptFailure(Exception):
    pass
