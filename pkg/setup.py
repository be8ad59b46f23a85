"""Build hook for the optional compiled kernel backend.

The package is pure Python; hermk._qkernels._fast is a Cython twin of
hermk._qkernels.pure that the import machinery prefers when present.
Any failure here (no Cython, no C compiler) must leave a working
pure-Python install, so the extension build is best-effort.
"""

from setuptools import setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Skip the extension instead of failing the whole install."""

    def run(self):
        try:
            super().run()
        except Exception as exc:
            print(f"skipping compiled kernels ({exc}); pure backend will be used")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"skipping {ext.name} ({exc}); pure backend will be used")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    from setuptools import Extension

    return cythonize(
        [Extension("hermk._qkernels._fast", ["src/hermk/_qkernels/_fast.pyx"])],
        compiler_directives={"language_level": "3"},
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
