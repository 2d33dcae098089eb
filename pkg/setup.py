import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Build the compiled kernel when possible; the pure-Python one covers the rest."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # no compiler / no Cython
            self.warn(f"skipping compiled simplex kernel: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self.warn(f"skipping {ext.name}: {exc}")


def extensions():
    if os.environ.get("POLYSTEINER_NO_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "polysteiner._simplex_ext",
        ["src/polysteiner/_simplex_ext.pyx"],
        extra_compile_args=["-O3"],
    )
    try:
        return cythonize([ext], compiler_directives={"language_level": "3"})
    except Exception as exc:
        print(f"warning: cannot cythonize simplex kernel: {exc}")
        return []


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
