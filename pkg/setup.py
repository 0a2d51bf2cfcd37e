"""Build script for the optional compiled kernels.

If Cython or a C compiler is missing the package still installs; the
pure-Python kernels are selected at import time instead.
"""

import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001
            print(f"warning: compiled kernels not built ({exc}); using pure Python", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            print(f"warning: failed to build {ext.name} ({exc})", file=sys.stderr)


def get_extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension("perfmatch._ckernels", ["src/perfmatch/_ckernels.pyx"],
                    extra_compile_args=["-O3"])
    return cythonize([ext], quiet=True)


setup(ext_modules=get_extensions(), cmdclass={"build_ext": optional_build_ext})
