import sys

from setuptools import setup
from setuptools.errors import CCompilerError, ExecError, PlatformError

# The compiled kernels are optional: if Cython or a C compiler is missing,
# install the pure-Python package and let the backend selector fall back.
ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/conelab/_speedups.pyx"],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass


def run_setup(with_ext):
    setup(ext_modules=ext_modules if with_ext else [])


try:
    run_setup(bool(ext_modules))
except (CCompilerError, ExecError, PlatformError):
    sys.stderr.write("warning: speedups failed to build, using pure Python\n")
    run_setup(False)
