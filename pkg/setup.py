"""Build script: compiles the optional tree-traversal extension.

The package is fully functional without the extension (a pure-Python twin is
selected at import time), so any build failure here downgrades to a warning
instead of aborting the install.
"""

import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Build the extension if possible; fall back to pure Python otherwise."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover - exercised only on broken toolchains
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            "WARNING: building the accelerated weight-tree extension failed "
            f"({exc!r}); falling back to the pure-Python implementation.",
            file=sys.stderr,
        )


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:  # pragma: no cover
        print("WARNING: Cython unavailable; skipping the extension.", file=sys.stderr)
        return []
    from setuptools import Extension

    return cythonize(
        [Extension("boxkernel._weighttree", ["src/boxkernel/_weighttree.pyx"])],
        language_level=3,
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
