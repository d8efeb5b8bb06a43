"""Build script: compiles the optional Cython kernel.

The package works without the extension (a pure-Python kernel is selected at
import time), so a failing compile only costs speed, not functionality.
"""

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler, etc.
            print(f"warning: skipping C extension build ({exc}); "
                  "falling back to pure-Python kernels")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: could not build {ext.name} ({exc}); "
                  "falling back to pure-Python kernels")


ext_modules = []
try:
    from Cython.Build import cythonize
    ext_modules = cythonize(
        ["src/tutteval/_kernels_cy.pyx"],
        language_level=3,
    )
except ImportError:
    print("warning: Cython not available; building without the compiled kernel")

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
