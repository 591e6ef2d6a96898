"""Build script: compiles the optional Cython sweep kernel.

The extension is a pure accelerator.  If Cython or a C compiler is missing the
build falls through and the package runs on the pure-Python kernel instead.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class _OptionalBuildExt(build_ext):
    """Skip (rather than fail) when the accelerator cannot be compiled."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover - toolchain dependent
            print(f"warning: skipping compiled kernel ({exc}); "
                  "fdekit will use the pure-Python fallback")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover - toolchain dependent
            print(f"warning: skipping {ext.name} ({exc}); "
                  "fdekit will use the pure-Python fallback")


def _extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:  # pragma: no cover - build environment dependent
        return []
    ext = Extension("fdekit._speedups", ["src/fdekit/_speedups.pyx"])
    return cythonize([ext], language_level=3)


setup(ext_modules=_extensions(), cmdclass={"build_ext": _OptionalBuildExt})
