"""Build script: compiles the optional Cython search kernel.

The package is fully functional without the extension (a pure-Python
fallback is selected at import time), so any failure here downgrades to a
pure wheel instead of aborting the install.
"""

import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


def make_extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("modmaps: Cython not available, building pure-Python package",
              file=sys.stderr)
        return []
    extensions = [
        Extension(
            "modmaps._kernel",
            sources=["src/modmaps/_kernel.pyx"],
            extra_compile_args=["-O3"],
        )
    ]
    return cythonize(
        extensions,
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )


class optional_build_ext(build_ext):
    """Treat extension build failures as a downgrade, not an error."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler, broken toolchain, ...
            print(f"modmaps: extension build skipped ({exc}); "
                  "pure-Python fallback will be used", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"modmaps: building {ext.name} failed ({exc}); "
                  "pure-Python fallback will be used", file=sys.stderr)


setup(
    ext_modules=make_extensions(),
    cmdclass={"build_ext": optional_build_ext},
)
