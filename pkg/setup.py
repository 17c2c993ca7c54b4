"""Build script: compiles the optional native kernel extension.

The package works without the extension (a pure-Python twin of every
kernel is selected at import time), so a failed compile only costs speed.
"""

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build the extension if possible, fall back to pure Python otherwise."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001 - any compiler failure is fine
            print(f"warning: native kernel build skipped ({exc})")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            print(f"warning: native kernel build skipped ({exc})")


try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/patrolgame/kernels/_native.pyx"],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
