"""Build script for the optional compiled trial-loop kernel.

The package is pure Python by default; if Cython and a C compiler are
available, the hot Monte Carlo kernel is compiled and picked up at import
time. A failed extension build degrades to the pure-Python fallback rather
than failing the install.
"""

import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """build_ext that downgrades compiler failures to a warning."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # no toolchain at all
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            f"WARNING: building the compiled kernel failed ({exc}); "
            "falling back to the pure-Python implementation.",
            file=sys.stderr,
        )


try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("qhubsim._speedup", ["src/qhubsim/_speedup.pyx"])],
        language_level="3",
    )
except ImportError:
    print("WARNING: Cython not available; skipping compiled kernel.", file=sys.stderr)
    ext_modules = []

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
