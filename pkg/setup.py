"""Build script: compiles the Monte-Carlo trial kernel as a C extension.

The extension is optional -- if Cython or a C compiler is unavailable the
package installs anyway and falls back to the pure-numpy kernel at import.
"""
import warnings

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build extensions, but degrade to pure-python install on failure."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            warnings.warn(f"C extension build failed ({exc}); "
                          "nnoma will use the pure-python Monte-Carlo kernel")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"building {ext.name} failed ({exc}); "
                          "nnoma will use the pure-python Monte-Carlo kernel")


def extensions():
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError:
        return []
    from setuptools.extension import Extension

    ext = Extension(
        "nnoma.mc._mckernel",
        sources=["src/nnoma/mc/_mckernel.pyx"],
        include_dirs=[numpy.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        extra_compile_args=["-O3"],
        libraries=["m"],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
